#include "barmc/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace barmc {

std::string rat_str(const Rat& r) { return r.get_str(); }

Rat rat_parse(const std::string& s) {
    if (s.empty()) throw InputError("empty scalar");
    std::string t = s;
    // mpq_class accepts leading '+' poorly in some forms; normalize
    if (t[0] == '+') t = t.substr(1);
    for (char c : t) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/'))
            throw InputError("malformed scalar '" + s + "'");
    }
    mpq_class q;
    if (q.set_str(t, 10) != 0) throw InputError("malformed scalar '" + s + "'");
    if (sgn(q.get_den()) == 0) throw InputError("zero denominator in scalar '" + s + "'");
    q.canonicalize();
    return q;
}

Vec vec_zero(int n) { return Vec(n, Rat(0)); }

bool vec_is_zero(const Vec& v) {
    for (const auto& x : v)
        if (!is_zero(x)) return false;
    return true;
}

Vec vec_add(const Vec& a, const Vec& b) {
    Vec r(a);
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    Vec r(a);
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return r;
}

Vec vec_scale(const Rat& c, const Vec& v) {
    Vec r(v);
    for (auto& x : r) x *= c;
    return r;
}

std::string vec_str(const Vec& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << rat_str(v[i]);
    }
    os << ")";
    return os.str();
}

SparseMat SparseMat::identity(int n) {
    SparseMat m(n, n);
    for (int i = 0; i < n; ++i) m.rdata[i][i] = 1;
    return m;
}

const Rat& SparseMat::get(int r, int c) const {
    static const Rat zero(0);
    auto it = rdata[r].find(c);
    return it == rdata[r].end() ? zero : it->second;
}

void SparseMat::set(int r, int c, const Rat& v) {
    if (barmc::is_zero(v))
        rdata[r].erase(c);
    else
        rdata[r][c] = v;
}

void SparseMat::add_to(int r, int c, const Rat& v) {
    auto it = rdata[r].find(c);
    if (it == rdata[r].end()) {
        if (!barmc::is_zero(v)) rdata[r][c] = v;
        return;
    }
    it->second += v;
    if (barmc::is_zero(it->second)) rdata[r].erase(it);
}

bool SparseMat::is_zero() const {
    for (const auto& row : rdata)
        if (!row.empty()) return false;
    return true;
}

int SparseMat::nnz() const {
    int n = 0;
    for (const auto& row : rdata) n += static_cast<int>(row.size());
    return n;
}

SparseMat SparseMat::operator+(const SparseMat& o) const {
    if (rows != o.rows || cols != o.cols) throw InputError("matrix shape mismatch in +");
    SparseMat r(*this);
    for (int i = 0; i < rows; ++i)
        for (const auto& [c, v] : o.rdata[i]) r.add_to(i, c, v);
    return r;
}

SparseMat SparseMat::operator-(const SparseMat& o) const {
    if (rows != o.rows || cols != o.cols) throw InputError("matrix shape mismatch in -");
    SparseMat r(*this);
    for (int i = 0; i < rows; ++i)
        for (const auto& [c, v] : o.rdata[i]) r.add_to(i, c, -v);
    return r;
}

SparseMat SparseMat::operator*(const SparseMat& o) const {
    if (cols != o.rows) throw InputError("matrix shape mismatch in *");
    SparseMat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (const auto& [k, v] : rdata[i])
            for (const auto& [j, w] : o.rdata[k]) r.add_to(i, j, v * w);
    return r;
}

SparseMat SparseMat::scaled(const Rat& c) const {
    SparseMat r(rows, cols);
    if (barmc::is_zero(c)) return r;
    for (int i = 0; i < rows; ++i)
        for (const auto& [j, v] : rdata[i]) r.rdata[i][j] = c * v;
    return r;
}

SparseMat SparseMat::transpose() const {
    SparseMat r(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (const auto& [j, v] : rdata[i]) r.rdata[j][i] = v;
    return r;
}

bool SparseMat::operator==(const SparseMat& o) const {
    return rows == o.rows && cols == o.cols && rdata == o.rdata;
}

Vec SparseMat::apply(const Vec& v) const {
    if (static_cast<int>(v.size()) != cols) throw InputError("matrix/vector size mismatch");
    Vec r = vec_zero(rows);
    for (int i = 0; i < rows; ++i)
        for (const auto& [j, c] : rdata[i]) r[i] += c * v[j];
    return r;
}

SparseMat SparseMat::from_columns(const std::vector<Vec>& cols_, int rows_) {
    SparseMat m(rows_, static_cast<int>(cols_.size()));
    for (size_t j = 0; j < cols_.size(); ++j)
        for (int i = 0; i < rows_; ++i)
            if (!barmc::is_zero(cols_[j][i])) m.rdata[i][static_cast<int>(j)] = cols_[j][i];
    return m;
}

namespace {

/* Integer sparse row: sorted (col, value). */
using IRow = std::vector<std::pair<int, Int>>;

IRow to_int_row(const std::map<int, Rat>& row, const Rat& extra, int extra_col) {
    Int l(1);
    for (const auto& [c, v] : row) l = lcm(l, v.get_den());
    if (!is_zero(extra)) l = lcm(l, extra.get_den());
    IRow r;
    r.reserve(row.size() + 1);
    for (const auto& [c, v] : row) {
        Rat s = v * l;
        r.emplace_back(c, s.get_num());
    }
    if (!is_zero(extra)) {
        Rat s = extra * l;
        r.emplace_back(extra_col, s.get_num());
    }
    return r;
}

const Int* irow_get(const IRow& r, int col) {
    auto it = std::lower_bound(r.begin(), r.end(), col,
                               [](const auto& p, int c) { return p.first < c; });
    if (it != r.end() && it->first == col) return &it->second;
    return nullptr;
}

/* r := (p * r - c * pivot_row) / prev, dividing exactly (Bareiss step). */
IRow bareiss_combine(const IRow& r, const IRow& piv, const Int& p, const Int& c,
                     const Int& prev) {
    IRow out;
    out.reserve(r.size() + piv.size());
    size_t i = 0, j = 0;
    while (i < r.size() || j < piv.size()) {
        int ci = i < r.size() ? r[i].first : INT32_MAX;
        int cj = j < piv.size() ? piv[j].first : INT32_MAX;
        int col = std::min(ci, cj);
        Int val(0);
        if (ci == col) val += p * r[i++].second;
        if (cj == col) val -= c * piv[j++].second;
        if (sgn(val) != 0) {
            Int q;
            mpz_divexact(q.get_mpz_t(), val.get_mpz_t(), prev.get_mpz_t());
            out.emplace_back(col, q);
        }
    }
    return out;
}

struct Echelon {
    std::vector<IRow> rows;     // pivot rows, in elimination order
    std::vector<int> pivots;    // pivot column of each row
    int width = 0;
};

/* Forward elimination. Pivot rule: columns in increasing order, and within a
 * column the first remaining row. */
Echelon eliminate(std::vector<IRow> work, int width) {
    Echelon e;
    e.width = width;
    Int prev(1);
    size_t top = 0;
    for (int col = 0; col < width && top < work.size(); ++col) {
        size_t sel = top;
        while (sel < work.size() && irow_get(work[sel], col) == nullptr) ++sel;
        if (sel == work.size()) continue;
        std::swap(work[top], work[sel]);
        const Int p = *irow_get(work[top], col);
        for (size_t i = top + 1; i < work.size(); ++i) {
            const Int* c = irow_get(work[i], col);
            if (c == nullptr) {
                /* still rescale to keep the fraction-free invariant */
                work[i] = bareiss_combine(work[i], work[top], p, Int(0), prev);
            } else {
                work[i] = bareiss_combine(work[i], work[top], p, *c, prev);
            }
        }
        e.rows.push_back(work[top]);
        e.pivots.push_back(col);
        ++top;
        prev = p;
        /* drop rows that became empty */
        std::vector<IRow> keep;
        keep.reserve(work.size());
        for (size_t i = 0; i < work.size(); ++i)
            if (i < top || !work[i].empty()) keep.push_back(std::move(work[i]));
        work = std::move(keep);
    }
    return e;
}

/* Back-substitution over Q: solve for the pivot variables given fixed values
 * of the free variables (already placed in x). */
void back_substitute(const Echelon& e, Vec& x) {
    for (int i = static_cast<int>(e.rows.size()) - 1; i >= 0; --i) {
        Rat acc(0);
        Rat diag(0);
        for (const auto& [c, v] : e.rows[i]) {
            if (c == e.pivots[i]) {
                diag = Rat(v);
            } else {
                acc += Rat(v) * x[c];
            }
        }
        x[e.pivots[i]] = -acc / diag;
    }
}

}  // namespace

AffineSolutionSet solve_linear(const SparseMat& M, const Vec& b) {
    if (static_cast<int>(b.size()) != M.rows)
        throw InputError("solve_linear: right-hand side has wrong dimension");
    const int n = M.cols;
    const int bcol = n;  // augmented column
    std::vector<IRow> rows;
    rows.reserve(M.rows);
    for (int i = 0; i < M.rows; ++i) {
        IRow r = to_int_row(M.rdata[i], -b[i], bcol);
        if (!r.empty()) rows.push_back(std::move(r));
    }
    Echelon e = eliminate(std::move(rows), n + 1);

    AffineSolutionSet sol;
    sol.consistent = true;
    for (int p : e.pivots)
        if (p == bcol) sol.consistent = false;

    /* kernel: for the augmented system, each non-pivot column < n yields a
     * kernel vector of M (set that free var to 1, b column to 0). */
    std::vector<bool> is_pivot(n + 1, false);
    for (int p : e.pivots) is_pivot[p] = true;

    /* strip the b column for kernel computations */
    Echelon eh;
    eh.width = n;
    for (size_t i = 0; i < e.rows.size(); ++i) {
        if (e.pivots[i] == bcol) continue;
        IRow r;
        for (const auto& [c, v] : e.rows[i])
            if (c < n) r.emplace_back(c, v);
        eh.rows.push_back(std::move(r));
        eh.pivots.push_back(e.pivots[i]);
    }
    for (int f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        Vec x = vec_zero(n);
        x[f] = 1;
        back_substitute(eh, x);
        sol.kernel.push_back(std::move(x));
    }
    if (sol.consistent) {
        Vec x = vec_zero(n + 1);
        x[bcol] = 1;
        back_substitute(e, x);
        x.pop_back();
        sol.particular = std::move(x);
    }
    return sol;
}

int rank_of(const SparseMat& M) {
    std::vector<IRow> rows;
    for (int i = 0; i < M.rows; ++i) {
        IRow r = to_int_row(M.rdata[i], Rat(0), 0);
        if (!r.empty()) rows.push_back(std::move(r));
    }
    return static_cast<int>(eliminate(std::move(rows), M.cols).rows.size());
}

std::vector<Vec> kernel_basis(const SparseMat& M) {
    return solve_linear(M, vec_zero(M.rows)).kernel;
}

Vec RowBasis::reduce(const Vec& v) const {
    Vec r(v);
    for (size_t i = 0; i < rows.size(); ++i) {
        const Rat& c = r[pivots[i]];
        if (is_zero(c)) continue;
        Rat f = c;  // rows are normalized to pivot 1
        for (int j = 0; j < width; ++j)
            if (!is_zero(rows[i][j])) r[j] -= f * rows[i][j];
    }
    return r;
}

bool RowBasis::insert(const Vec& v) {
    Vec r = reduce(v);
    int p = -1;
    for (int j = 0; j < width; ++j)
        if (!is_zero(r[j])) {
            p = j;
            break;
        }
    if (p < 0) return false;
    Rat inv = Rat(1) / r[p];
    for (auto& x : r) x *= inv;
    /* keep rows mutually reduced to make reduce() single-pass */
    for (size_t i = 0; i < rows.size(); ++i) {
        const Rat c = rows[i][p];
        if (is_zero(c)) continue;
        for (int j = 0; j < width; ++j)
            if (!is_zero(r[j])) rows[i][j] -= c * r[j];
    }
    rows.push_back(std::move(r));
    pivots.push_back(p);
    return true;
}

HomologyResult homology(const SparseMat& d_in, const SparseMat& d_out) {
    if (d_in.rows != d_out.cols)
        throw InputError("homology: middle dimensions disagree");
    if (!(d_out * d_in).is_zero()) throw NotAComplex("homology: d_out * d_in != 0");

    std::vector<Vec> ker = kernel_basis(d_out);
    RowBasis image(d_in.rows);
    for (int j = 0; j < d_in.cols; ++j) {
        Vec col = vec_zero(d_in.rows);
        for (int i = 0; i < d_in.rows; ++i) col[i] = d_in.get(i, j);
        image.insert(col);
    }
    HomologyResult h;
    RowBasis reps(d_in.rows);
    for (const auto& k : ker) {
        Vec r = image.reduce(k);
        if (reps.insert(r)) h.representatives.push_back(r);
    }
    h.dimension = static_cast<int>(h.representatives.size());
    return h;
}

}  // namespace barmc
