#include "barmc/presentation.hpp"

#include <fstream>
#include <sstream>

namespace barmc {

namespace {

struct Cursor {
    int line = 0, col = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError("line " + std::to_string(line) + ", col " + std::to_string(col) +
                         ": " + msg);
    }
};

std::vector<std::string> tokenize(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

/* "3/2 x + y - 1/2 z" or "0"; returns coefficients by basis index */
std::map<int, Rat> parse_lincomb(const std::vector<std::string>& toks, size_t from,
                                 const GradedVectorSpace& V, Cursor at) {
    std::map<int, Rat> out;
    if (from >= toks.size()) at.fail("missing linear combination");
    if (toks.size() == from + 1 && toks[from] == "0") return out;
    Rat sign(1);
    std::optional<Rat> coeff;
    for (size_t i = from; i < toks.size(); ++i) {
        const std::string& t = toks[i];
        at.col = static_cast<int>(i) + 1;
        if (t == "+") {
            if (coeff) at.fail("dangling coefficient");
            sign = 1;
            continue;
        }
        if (t == "-") {
            if (coeff) at.fail("dangling coefficient");
            sign = -1;
            continue;
        }
        int idx = V.index_of(t);
        if (idx >= 0) {
            Rat c = coeff ? *coeff : Rat(1);
            out[idx] += sign * c;
            if (is_zero(out[idx])) out.erase(idx);
            coeff.reset();
            sign = 1;
            continue;
        }
        /* must be a scalar */
        if (coeff) at.fail("two coefficients in a row near '" + t + "'");
        try {
            coeff = rat_parse(t);
        } catch (const InputError& e) {
            at.fail(std::string(e.what()) + " (unknown name '" + t + "'?)");
        }
    }
    if (coeff) at.fail("trailing coefficient without a basis name");
    return out;
}

}  // namespace

Presentation parse_presentation(const std::string& text) {
    std::istringstream is(text);
    std::string raw;
    enum class Sec { None, Basis, Diff, Prod, Splitting };
    Sec sec = Sec::None;
    bool is_lie = false, seen_header = false;
    bool unital = false, commutative = false;
    std::string unit_name;
    GradedVectorSpace V;
    std::vector<std::tuple<std::string, std::string, Cursor>> diff_lines;
    std::vector<std::tuple<std::string, std::string, std::string, Cursor>> prod_lines;
    std::vector<std::pair<std::string, Cursor>> splitting_lines;
    Cursor cur;
    int lineno = 0;

    while (std::getline(is, raw)) {
        ++lineno;
        cur.line = lineno;
        cur.col = 1;
        std::string line = raw;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (!seen_header) {
            if (toks[0] == "algebra" && toks.size() == 1) {
                seen_header = true;
                continue;
            }
            if (toks[0] == "lie" && toks.size() == 1) {
                seen_header = true;
                is_lie = true;
                continue;
            }
            cur.fail("expected 'algebra' or 'lie' header");
        }
        if (toks[0] == "flags:") {
            for (size_t i = 1; i < toks.size(); ++i) {
                if (toks[i] == "unital")
                    unital = true;
                else if (toks[i] == "commutative")
                    commutative = true;
                else
                    cur.fail("unknown flag '" + toks[i] + "'");
            }
            continue;
        }
        if (toks[0] == "basis:") {
            sec = Sec::Basis;
            continue;
        }
        if (toks[0] == "differential:") {
            sec = Sec::Diff;
            continue;
        }
        if (toks[0] == "product:" || toks[0] == "bracket:") {
            if (is_lie != (toks[0] == "bracket:"))
                cur.fail(is_lie ? "lie presentations use 'bracket:'"
                                : "algebra presentations use 'product:'");
            sec = Sec::Prod;
            continue;
        }
        if (toks[0] == "splitting:") {
            sec = Sec::Splitting;
            continue;
        }
        if (toks[0] == "unit:") {
            if (toks.size() != 2) cur.fail("unit: expects one name");
            unit_name = toks[1];
            continue;
        }
        switch (sec) {
            case Sec::Basis: {
                if (toks.size() != 2) cur.fail("basis lines are 'name degree'");
                int deg = 0;
                try {
                    size_t pos = 0;
                    deg = std::stoi(toks[1], &pos);
                    if (pos != toks[1].size()) throw std::invalid_argument("");
                } catch (...) {
                    cur.fail("bad degree '" + toks[1] + "'");
                }
                if (V.index_of(toks[0]) >= 0) cur.fail("duplicate basis name '" + toks[0] + "'");
                V.add(toks[0], deg);
                break;
            }
            case Sec::Diff: {
                if (toks.size() < 3 || toks[1] != "->")
                    cur.fail("differential lines are 'name -> lincomb'");
                std::string rest;
                for (size_t i = 2; i < toks.size(); ++i) rest += toks[i] + " ";
                diff_lines.push_back({toks[0], rest, cur});
                break;
            }
            case Sec::Prod: {
                if (toks.size() < 4 || toks[2] != "->")
                    cur.fail("product/bracket lines are 'name name -> lincomb'");
                std::string rest;
                for (size_t i = 3; i < toks.size(); ++i) rest += toks[i] + " ";
                prod_lines.push_back({toks[0], toks[1], rest, cur});
                break;
            }
            case Sec::Splitting: {
                splitting_lines.push_back({line, cur});
                break;
            }
            default:
                cur.fail("content outside of a section");
        }
    }
    if (!seen_header) throw InputError("empty presentation");
    if (V.dim() == 0 && !is_lie && !unital)
        ;  // empty algebras are legal

    const int n = V.dim();
    LinMap d(-1, n, n);
    for (const auto& [name, rhs, at] : diff_lines) {
        int i = V.index_of(name);
        if (i < 0) at.fail("unknown basis name '" + name + "'");
        auto lc = parse_lincomb(tokenize(rhs), 0, V, at);
        for (const auto& [j, c] : lc) {
            if (V.degree(j) != V.degree(i) - 1)
                at.fail("differential entry violates degree -1");
            d.m.add_to(j, i, c);
        }
    }
    ProductTable P;
    for (const auto& [a, b, rhs, at] : prod_lines) {
        int i = V.index_of(a), j = V.index_of(b);
        if (i < 0) at.fail("unknown basis name '" + a + "'");
        if (j < 0) at.fail("unknown basis name '" + b + "'");
        auto lc = parse_lincomb(tokenize(rhs), 0, V, at);
        for (const auto& [k, c] : lc) {
            (void)c;
            if (V.degree(k) != V.degree(i) + V.degree(j))
                at.fail("product entry violates degree additivity");
        }
        std::map<int, Rat> cur_entry;
        if (const auto* e = P.find(i, j)) cur_entry = *e;
        for (const auto& [k, c] : lc) cur_entry[k] += c;
        P.set(i, j, std::move(cur_entry));
    }

    if (is_lie) {
        DgLieAlgebra g;
        g.V = V;
        g.d = d;
        g.br = P;
        auto rep = check_axioms(g);
        if (!rep.ok()) throw InputError("presentation fails axioms:\n" + rep.to_string());
        return g;
    }
    DgAlgebra A;
    A.V = V;
    A.d = d;
    A.mul = P;
    A.commutative = commutative;
    if (unital) {
        A.unital = true;
        if (unit_name.empty()) throw InputError("unital algebra needs 'unit: name'");
        A.unit = V.index_of(unit_name);
        if (A.unit < 0) throw InputError("unknown unit name '" + unit_name + "'");
        /* implied unit products: fill any unspecified pair with the unit */
        for (int i = 0; i < n; ++i) {
            if (!A.mul.find(A.unit, i)) A.mul.set(A.unit, i, {{i, Rat(1)}});
            if (!A.mul.find(i, A.unit)) A.mul.set(i, A.unit, {{i, Rat(1)}});
        }
    }
    if (!splitting_lines.empty()) {
        if (!unital) throw InputError("splitting: requires a unital algebra");
        std::vector<Vec> split;
        for (const auto& [line, at] : splitting_lines) {
            auto lc = parse_lincomb(tokenize(line), 0, V, at);
            Vec v = vec_zero(n);
            for (const auto& [j, c] : lc) v[j] = c;
            split.push_back(v);
        }
        A.splitting = split;
    }
    auto rep = check_axioms(A);
    if (!rep.ok()) throw InputError("presentation fails axioms:\n" + rep.to_string());
    return A;
}

Presentation load_presentation(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_presentation(ss.str());
}

namespace {

std::string lincomb_str(const GradedVectorSpace& V, const Vec& v) {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < V.dim(); ++i) {
        if (is_zero(v[i])) continue;
        if (!first) os << " + ";
        os << rat_str(v[i]) << " " << V.name(i);
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace

std::string render_presentation(const DgAlgebra& A) {
    std::ostringstream os;
    os << "algebra\n";
    if (A.unital || A.commutative) {
        os << "flags:";
        if (A.unital) os << " unital";
        if (A.commutative) os << " commutative";
        os << "\n";
    }
    os << "basis:\n";
    for (int i = 0; i < A.V.dim(); ++i)
        os << "  " << A.V.name(i) << " " << A.V.degree(i) << "\n";
    if (A.unital) os << "unit: " << A.V.name(A.unit) << "\n";
    bool any_d = !A.d.is_zero();
    if (any_d) {
        os << "differential:\n";
        for (int j = 0; j < A.V.dim(); ++j) {
            Vec col = vec_zero(A.V.dim());
            bool nz = false;
            for (int i = 0; i < A.V.dim(); ++i) {
                col[i] = A.d.m.get(i, j);
                nz |= !is_zero(col[i]);
            }
            if (nz) os << "  " << A.V.name(j) << " -> " << lincomb_str(A.V, col) << "\n";
        }
    }
    if (!A.mul.t.empty()) {
        os << "product:\n";
        for (const auto& [ij, val] : A.mul.t) {
            if (A.unital && (ij.first == A.unit || ij.second == A.unit)) continue;
            Vec v = vec_zero(A.V.dim());
            for (const auto& [k, c] : val) v[k] = c;
            os << "  " << A.V.name(ij.first) << " " << A.V.name(ij.second) << " -> "
               << lincomb_str(A.V, v) << "\n";
        }
    }
    return os.str();
}

}  // namespace barmc
