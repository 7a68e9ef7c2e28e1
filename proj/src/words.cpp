#include "barmc/words.hpp"

#include <algorithm>
#include <sstream>

#include "barmc/errors.hpp"

namespace barmc {

int WordSpace::add(const Word& w, int deg) {
    auto it = index.find(w);
    if (it != index.end()) return it->second;
    words.push_back(w);
    degree.push_back(deg);
    index[w] = dim() - 1;
    return dim() - 1;
}

int word_degree(const std::vector<int>& letter_deg, const Word& w) {
    int d = 0;
    for (int l : w) d += letter_deg[l];
    return d;
}

WordSpace tensor_words(const std::vector<int>& letter_deg, int w) {
    WordSpace ws;
    const int n = static_cast<int>(letter_deg.size());
    Word cur(w, 0);
    if (w == 0) {
        ws.add({}, 0);
        return ws;
    }
    if (n == 0) return ws;
    while (true) {
        ws.add(cur, word_degree(letter_deg, cur));
        int i = w - 1;
        while (i >= 0 && cur[i] == n - 1) cur[i--] = 0;
        if (i < 0) break;
        ++cur[i];
    }
    return ws;
}

int koszul_sign(const std::vector<int>& letter_deg, const Word& w, const Perm& sigma) {
    int sign = 1;
    const int n = static_cast<int>(w.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (sigma[i] > sigma[j] && (letter_deg[w[i]] & 1) && (letter_deg[w[j]] & 1))
                sign = -sign;
    return sign;
}

Word apply_perm(const Word& w, const Perm& sigma) {
    Word r(w.size());
    for (size_t i = 0; i < w.size(); ++i) r[sigma[i]] = w[i];
    return r;
}

void wvec_add(WVec& a, int idx, const Rat& c) {
    auto it = a.find(idx);
    if (it == a.end()) {
        if (!is_zero(c)) a[idx] = c;
        return;
    }
    it->second += c;
    if (is_zero(it->second)) a.erase(it);
}

WVec act(const GroupAlgElt& z, const std::vector<int>& letter_deg, const WordSpace& ws,
         int word_idx) {
    WVec out;
    const Word& w = ws.words[word_idx];
    for (const auto& [sigma, coeff] : z.c) {
        Word w2 = apply_perm(w, sigma);
        int sign = koszul_sign(letter_deg, w, sigma);
        auto it = ws.index.find(w2);
        if (it == ws.index.end()) throw InputError("act: permuted word missing from space");
        wvec_add(out, it->second, coeff * sign);
    }
    return out;
}

SparseMat action_matrix(const GroupAlgElt& z, const std::vector<int>& letter_deg,
                        const WordSpace& ws) {
    SparseMat m(ws.dim(), ws.dim());
    for (int j = 0; j < ws.dim(); ++j)
        for (const auto& [i, c] : act(z, letter_deg, ws, j)) m.set(i, j, c);
    return m;
}

WVec shuffle_product(const std::vector<int>& letter_deg, const WordSpace& tu,
                     const WordSpace& tv, const WordSpace& tuv, int wi_u, int wi_v) {
    const Word& a = tu.words[wi_u];
    const Word& b = tv.words[wi_v];
    Word ab(a);
    ab.insert(ab.end(), b.begin(), b.end());
    WVec out;
    for (const auto& s : shuffles(static_cast<int>(a.size()), static_cast<int>(b.size()))) {
        Word w2 = apply_perm(ab, s);
        int sign = koszul_sign(letter_deg, ab, s);
        auto it = tuv.index.find(w2);
        if (it == tuv.index.end()) throw InputError("shuffle_product: word missing");
        wvec_add(out, it->second, Rat(sign));
    }
    return out;
}

SymWordSpace sym_words(const std::vector<int>& letter_deg, int w) {
    SymWordSpace ss;
    const int n = static_cast<int>(letter_deg.size());
    Word cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == w) {
            ss.words.push_back(cur);
            ss.degree.push_back(word_degree(letter_deg, cur));
            ss.index[cur] = static_cast<int>(ss.words.size()) - 1;
            return;
        }
        for (int l = start; l < n; ++l) {
            if (!cur.empty() && cur.back() == l && (letter_deg[l] & 1)) continue;
            cur.push_back(l);
            self(self, l);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return ss;
}

std::pair<int, int> sym_normalize(const std::vector<int>& letter_deg, const SymWordSpace& ss,
                                  const Word& w) {
    /* stable insertion sort, tracking the Koszul sign of adjacent swaps */
    Word v(w);
    int sign = 1;
    for (size_t i = 1; i < v.size(); ++i)
        for (size_t j = i; j > 0 && v[j - 1] > v[j]; --j) {
            if ((letter_deg[v[j - 1]] & 1) && (letter_deg[v[j]] & 1)) sign = -sign;
            std::swap(v[j - 1], v[j]);
        }
    for (size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i] == v[i + 1] && (letter_deg[v[i]] & 1)) return {-1, 0};
    auto it = ss.index.find(v);
    if (it == ss.index.end()) throw InputError("sym_normalize: word missing from space");
    return {it->second, sign};
}

std::string word_name(const GradedVectorSpace& alphabet, const Word& w, char open, char close) {
    std::ostringstream os;
    os << open;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) os << "|";
        os << alphabet.name(w[i]);
    }
    os << close;
    return os.str();
}

}  // namespace barmc
