#include "barmc/perm.hpp"

#include <algorithm>

#include "barmc/errors.hpp"

namespace barmc {

Perm perm_id(int n) {
    Perm p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    return p;
}

Perm perm_compose(const Perm& a, const Perm& b) {
    Perm r(b.size());
    for (size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
    return r;
}

Perm perm_inverse(const Perm& a) {
    Perm r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<int>(i);
    return r;
}

int perm_descents(const Perm& a) {
    int d = 0;
    for (size_t i = 0; i + 1 < a.size(); ++i)
        if (a[i] > a[i + 1]) ++d;
    return d;
}

std::vector<Perm> all_perms(int n) {
    std::vector<Perm> out;
    Perm p = perm_id(n);
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::vector<Perm> shuffles(int p, int q) {
    /* choose the slots the first block occupies, in order */
    std::vector<Perm> out;
    std::vector<int> pick(p);
    std::vector<bool> used(p + q, false);
    auto rec = [&](auto&& self, int i, int next) -> void {
        if (i == p) {
            Perm s(p + q);
            std::fill(used.begin(), used.end(), false);
            for (int j = 0; j < p; ++j) {
                s[j] = pick[j];
                used[pick[j]] = true;
            }
            int pos = 0;
            for (int j = 0; j < q; ++j) {
                while (used[pos]) ++pos;
                s[p + j] = pos;
                used[pos] = true;
            }
            out.push_back(std::move(s));
            return;
        }
        for (int v = next; v <= p + q - (p - i); ++v) {
            pick[i] = v;
            self(self, i + 1, v + 1);
        }
    };
    if (p == 0 || q == 0) {
        out.push_back(perm_id(p + q));
        return out;
    }
    rec(rec, 0, 0);
    return out;
}

Perm perm_block(const Perm& a, const Perm& b) {
    Perm r(a.size() + b.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[a.size() + i] = static_cast<int>(a.size()) + b[i];
    return r;
}

GroupAlgElt GroupAlgElt::identity(int n) {
    GroupAlgElt e{n, {}};
    e.c[perm_id(n)] = 1;
    return e;
}

void GroupAlgElt::add_term(const Perm& p, const Rat& v) {
    auto it = c.find(p);
    if (it == c.end()) {
        if (!barmc::is_zero(v)) c[p] = v;
        return;
    }
    it->second += v;
    if (barmc::is_zero(it->second)) c.erase(it);
}

GroupAlgElt GroupAlgElt::operator+(const GroupAlgElt& o) const {
    GroupAlgElt r = *this;
    for (const auto& [p, v] : o.c) r.add_term(p, v);
    return r;
}

GroupAlgElt GroupAlgElt::operator-(const GroupAlgElt& o) const {
    GroupAlgElt r = *this;
    for (const auto& [p, v] : o.c) r.add_term(p, -v);
    return r;
}

GroupAlgElt GroupAlgElt::scaled(const Rat& v) const {
    GroupAlgElt r{n, {}};
    if (barmc::is_zero(v)) return r;
    for (const auto& [p, w] : c) r.c[p] = v * w;
    return r;
}

GroupAlgElt GroupAlgElt::operator*(const GroupAlgElt& o) const {
    GroupAlgElt r{n, {}};
    for (const auto& [p, v] : c)
        for (const auto& [q, w] : o.c) r.add_term(perm_compose(p, q), v * w);
    return r;
}

GroupAlgElt conv(const GroupAlgElt& x, const GroupAlgElt& y) {
    GroupAlgElt r{x.n + y.n, {}};
    for (const auto& s : shuffles(x.n, y.n))
        for (const auto& [p, v] : x.c)
            for (const auto& [q, w] : y.c)
                r.add_term(perm_compose(s, perm_block(p, q)), v * w);
    return r;
}

namespace {

Rat binom(int n, int k) {
    if (k < 0 || k > n) return Rat(0);
    Int num(1), den(1);
    for (int i = 0; i < k; ++i) {
        num *= n - i;
        den *= i + 1;
    }
    Rat r(num);
    return r / Rat(den);
}

/* e^{(1)}_n = log_*(id) evaluated by descent statistics; the test suite
 * cross-checks this against the raw convolution-logarithm expansion. */
GroupAlgElt first_eulerian(int n) {
    GroupAlgElt e{n, {}};
    for (const auto& p : all_perms(n)) {
        int d = perm_descents(p);
        Rat coeff = Rat((d & 1) ? -1 : 1) / (Rat(n) * binom(n - 1, d));
        e.add_term(p, coeff);
    }
    return e;
}

}  // namespace

const GroupAlgElt& eulerian_idempotent(int n, int k) {
    if (n < 1 || k < 1 || k > n) throw InputError("eulerian_idempotent: k out of range");
    static std::map<std::pair<int, int>, GroupAlgElt> cache;
    auto it = cache.find({n, k});
    if (it != cache.end()) return it->second;
    if (k == 1) {
        return cache.emplace(std::make_pair(n, 1), first_eulerian(n)).first->second;
    }
    /* e^{(k)} = (e^{(1)})^{*k} / k!, assembled from lower arities; the inner
     * factor (e1)^{*(k-1)}|_m is (k-1)! e^{(k-1)}_m */
    GroupAlgElt acc = GroupAlgElt::zero(n);
    for (int p = 1; p <= n - 1; ++p) {
        int m = n - p;
        if (k - 1 > m) continue;
        GroupAlgElt left = eulerian_idempotent(p, 1);
        GroupAlgElt right = eulerian_idempotent(m, k - 1);
        Rat fact(1);
        for (int i = 2; i <= k - 1; ++i) fact *= i;
        acc = acc + conv(left, right.scaled(fact));
    }
    Rat kfact(1);
    for (int i = 2; i <= k; ++i) kfact *= i;
    return cache.emplace(std::make_pair(n, k), acc.scaled(Rat(1) / kfact)).first->second;
}

}  // namespace barmc
