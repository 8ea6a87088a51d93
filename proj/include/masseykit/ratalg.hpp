#pragma once

#include <optional>
#include <vector>

#include "masseykit/rational.hpp"

namespace masseykit::ratalg {

/// Dense exact-rational matrix. Dimensions are fixed at construction;
/// entries stay canonical because mpq_class normalizes on assignment.
class RatMatrix {
  public:
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}

    static RatMatrix identity(std::size_t n) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static RatMatrix from_rows(const std::vector<RatVec>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    RatVec row(std::size_t i) const;
    RatVec apply(const RatVec& x) const;  ///< matrix-vector product

  private:
    std::size_t rows_, cols_;
    RatVec entries_;
};

/// A linear subspace of Q^ambient_dim, stored with an echelonized basis
/// (reduced row echelon, lexicographically first pivots). The echelon form
/// makes coset reduction canonical and reproducible.
class Subspace {
  public:
    /// Builds from any spanning set; dependent vectors are discarded.
    Subspace(std::size_t ambient_dim, const std::vector<RatVec>& spanning);

    static Subspace zero(std::size_t ambient_dim) { return Subspace(ambient_dim, {}); }

    std::size_t ambient_dim() const { return ambient_dim_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<RatVec>& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool contains(const RatVec& v) const;

  private:
    std::size_t ambient_dim_;
    std::vector<RatVec> basis_;         // reduced echelon rows
    std::vector<std::size_t> pivots_;   // pivot column per basis row
};

/// Reduced row echelon form in place; returns pivot column indices.
std::vector<std::size_t> rref(std::vector<RatVec>& rows);

std::size_t rank(const RatMatrix& a);

/// A particular solution of A·x = b (free variables set to zero),
/// or nullopt when the system is inconsistent.
std::optional<RatVec> solve(const RatMatrix& a, const RatVec& b);

/// Basis of { x : A·x = 0 }; dimension = cols - rank.
Subspace kernel_basis(const RatMatrix& a);

struct CosetForm {
    RatVec canonical;  ///< v minus its echelon projection onto S
    bool is_zero;      ///< true iff v lies in S
};

/// Canonical representative of the coset v + S. Two vectors reduce to the
/// same form iff they differ by an element of S.
CosetForm coset_reduce(const RatVec& v, const Subspace& s);

// ---------------------------------------------------------------------------
// Exact LP in standard form: maximize c·x subject to E·x = g, x >= 0.
// Two-phase simplex with Bland's rule; everything over the rationals, so the
// optimum (when it exists) is exact. Used by the geometric predicates.
// ---------------------------------------------------------------------------

enum class LpStatus { Infeasible, Optimal, Unbounded };

struct LpResult {
    LpStatus status;
    Rat value;  // valid when Optimal
    RatVec x;   // valid when Optimal
};

LpResult simplex_maximize(const RatMatrix& e, const RatVec& g, const RatVec& c);

}  // namespace masseykit::ratalg
