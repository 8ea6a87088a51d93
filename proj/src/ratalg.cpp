#include "masseykit/ratalg.hpp"

#include <algorithm>

namespace masseykit::ratalg {

RatMatrix RatMatrix::from_rows(const std::vector<RatVec>& rows, std::size_t cols) {
    RatMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw ContractViolation("from_rows: row length mismatch");
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

RatVec RatMatrix::row(std::size_t i) const {
    RatVec r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
}

RatVec RatMatrix::apply(const RatVec& x) const {
    if (x.size() != cols_)
        throw ContractViolation("apply: dimension mismatch");
    RatVec y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Rat acc = 0;
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != 0) acc += at(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

std::vector<std::size_t> rref(std::vector<RatVec>& rows) {
    std::vector<std::size_t> pivots;
    if (rows.empty()) return pivots;
    const std::size_t n = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[r], rows[p]);
        const Rat inv = 1 / rows[r][c];
        for (std::size_t j = c; j < n; ++j) rows[r][j] *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const Rat f = rows[i][c];
            for (std::size_t j = c; j < n; ++j)
                if (rows[r][j] != 0) rows[i][j] -= f * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(pivots.size());
    return pivots;
}

std::size_t rank(const RatMatrix& a) {
    std::vector<RatVec> rows;
    rows.reserve(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(a.row(i));
    return rref(rows).size();
}

Subspace::Subspace(std::size_t ambient_dim, const std::vector<RatVec>& spanning)
    : ambient_dim_(ambient_dim) {
    for (const auto& v : spanning)
        if (v.size() != ambient_dim)
            throw ContractViolation("Subspace: vector length != ambient_dim");
    basis_ = spanning;
    pivots_ = rref(basis_);
}

bool Subspace::contains(const RatVec& v) const {
    return coset_reduce(v, *this).is_zero;
}

std::optional<RatVec> solve(const RatMatrix& a, const RatVec& b) {
    if (b.size() != a.rows())
        throw ContractViolation("solve: b length != rows of A");
    const std::size_t n = a.cols();
    std::vector<RatVec> aug;
    aug.reserve(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        RatVec r = a.row(i);
        r.push_back(b[i]);
        aug.push_back(std::move(r));
    }
    auto pivots = rref(aug);
    RatVec x(n, Rat(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] == n) return std::nullopt;  // pivot in the rhs column
        x[pivots[i]] = aug[i][n];
    }
    return x;
}

Subspace kernel_basis(const RatMatrix& a) {
    const std::size_t n = a.cols();
    std::vector<RatVec> rows;
    rows.reserve(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(a.row(i));
    auto pivots = rref(rows);
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<RatVec> basis;
    for (std::size_t c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        RatVec v(n, Rat(0));
        v[c] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][c];
        basis.push_back(std::move(v));
    }
    return Subspace(n, basis);
}

CosetForm coset_reduce(const RatVec& v, const Subspace& s) {
    if (v.size() != s.ambient_dim())
        throw ContractViolation("coset_reduce: dimension mismatch");
    RatVec w = v;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        const std::size_t p = s.pivots()[i];
        if (w[p] == 0) continue;
        const Rat f = w[p];
        const RatVec& row = s.basis()[i];
        for (std::size_t j = p; j < w.size(); ++j)
            if (row[j] != 0) w[j] -= f * row[j];
    }
    bool zero = std::all_of(w.begin(), w.end(), [](const Rat& x) { return x == 0; });
    return {std::move(w), zero};
}

// ---------------------------------------------------------------------------
// Simplex
// ---------------------------------------------------------------------------

namespace {

// Tableau: rows of [coefficients | rhs], with basis[i] = basic column of row i.
struct Tableau {
    std::vector<RatVec> t;       // m x (ncols+1)
    std::vector<int> basis;      // size m
    std::size_t ncols;

    void pivot(std::size_t row, std::size_t col) {
        const Rat inv = 1 / t[row][col];
        for (auto& e : t[row]) e *= inv;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i == row || t[i][col] == 0) continue;
            const Rat f = t[i][col];
            for (std::size_t j = 0; j <= ncols; ++j)
                if (t[row][j] != 0) t[i][j] -= f * t[row][j];
        }
        basis[row] = static_cast<int>(col);
    }

    // Maximizes obj (length ncols) over the current feasible basis.
    // Entering columns restricted to [0, limit). Bland's rule throughout.
    // Returns false on unboundedness.
    bool run(const RatVec& obj, std::size_t limit) {
        for (;;) {
            // reduced costs r_j = obj_j - sum_i obj_basis(i) * t[i][j]
            std::size_t enter = limit;
            for (std::size_t j = 0; j < limit; ++j) {
                bool basic = false;
                for (auto b : basis)
                    if (b == static_cast<int>(j)) { basic = true; break; }
                if (basic) continue;
                Rat r = obj[j];
                for (std::size_t i = 0; i < t.size(); ++i)
                    if (t[i][j] != 0) r -= obj[basis[i]] * t[i][j];
                if (r > 0) { enter = j; break; }  // Bland: first improving index
            }
            if (enter == limit) return true;  // optimal
            std::size_t leave = t.size();
            Rat best;
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (t[i][enter] <= 0) continue;
                Rat ratio = t[i][ncols] / t[i][enter];
                if (leave == t.size() || ratio < best ||
                    (ratio == best && basis[i] < basis[leave]))
                    { leave = i; best = ratio; }
            }
            if (leave == t.size()) return false;  // unbounded
            pivot(leave, enter);
        }
    }
};

}  // namespace

LpResult simplex_maximize(const RatMatrix& e, const RatVec& g, const RatVec& c) {
    if (g.size() != e.rows() || c.size() != e.cols())
        throw ContractViolation("simplex_maximize: dimension mismatch");
    const std::size_t m = e.rows(), n = e.cols();

    Tableau tab;
    tab.ncols = n + m;  // structural + artificial
    tab.t.assign(m, RatVec(tab.ncols + 1, Rat(0)));
    tab.basis.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const bool neg = g[i] < 0;
        for (std::size_t j = 0; j < n; ++j) tab.t[i][j] = neg ? Rat(-e.at(i, j)) : e.at(i, j);
        tab.t[i][tab.ncols] = neg ? Rat(-g[i]) : g[i];
        tab.t[i][n + i] = 1;
        tab.basis[i] = static_cast<int>(n + i);
    }

    // Phase 1: maximize -sum(artificials).
    RatVec obj1(tab.ncols, Rat(0));
    for (std::size_t j = n; j < tab.ncols; ++j) obj1[j] = -1;
    tab.run(obj1, tab.ncols);
    Rat w = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (tab.basis[i] >= static_cast<int>(n)) w += tab.t[i][tab.ncols];
    if (w != 0) return {LpStatus::Infeasible, Rat(0), {}};

    // Drive remaining artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < tab.t.size();) {
        if (tab.basis[i] < static_cast<int>(n)) { ++i; continue; }
        std::size_t j = 0;
        while (j < n && tab.t[i][j] == 0) ++j;
        if (j < n) {
            tab.pivot(i, j);
            ++i;
        } else {
            tab.t.erase(tab.t.begin() + static_cast<long>(i));
            tab.basis.erase(tab.basis.begin() + static_cast<long>(i));
        }
    }

    // Phase 2: only structural columns may enter.
    RatVec obj2(tab.ncols, Rat(0));
    for (std::size_t j = 0; j < n; ++j) obj2[j] = c[j];
    if (!tab.run(obj2, n)) return {LpStatus::Unbounded, Rat(0), {}};

    RatVec x(n, Rat(0));
    for (std::size_t i = 0; i < tab.t.size(); ++i)
        if (tab.basis[i] < static_cast<int>(n))
            x[static_cast<std::size_t>(tab.basis[i])] = tab.t[i][tab.ncols];
    Rat val = 0;
    for (std::size_t j = 0; j < n; ++j)
        if (c[j] != 0) val += c[j] * x[j];
    return {LpStatus::Optimal, val, x};
}

}  // namespace masseykit::ratalg
