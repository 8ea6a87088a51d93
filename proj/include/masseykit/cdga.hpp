#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "masseykit/gradedlie.hpp"
#include "masseykit/ratalg.hpp"
#include "masseykit/rational.hpp"

namespace masseykit::cdga {

/// A cohomology class: exact coordinates against the chosen echelon-canonical
/// basis of H^degree of a fixed CochainAlgebra.
struct CohomologyClass {
    int degree = 0;
    RatVec coords;

    bool is_zero() const {
        return std::all_of(coords.begin(), coords.end(), [](const Rat& r) { return r == 0; });
    }
};

/// Cohomology of one degree: echelonized representative cocycles plus the
/// coboundary subspace, enough to project any cocycle to class coordinates.
struct Cohomology {
    int degree = 0;
    std::vector<RatVec> reps;       ///< representative cocycle per basis class
    std::vector<std::size_t> pivots;
    ratalg::Subspace boundaries{0, {}};

    std::size_t dim() const { return reps.size(); }
    /// Class coordinates of a cocycle; throws if the vector is not a cocycle
    /// representative of any class (i.e. not in ker d modulo the basis).
    RatVec coords_of(const RatVec& cocycle) const;
    /// A representative cochain of the class with the given coordinates.
    RatVec representative(const RatVec& coords) const;
};

/// Chevalley-Eilenberg cochain algebra of a dg Lie model: the free
/// graded-commutative algebra on duals of suspended Lie basis elements
/// (cochain degree = Lie degree + 1), truncated at `cutoff`. The
/// differential is the derivation dual to the model differential (linear
/// part) and the bracket (quadratic part); d^2 = 0 is verified on every
/// generator at construction. Degrees whose coboundary target would exceed
/// the cutoff are boundary-incomplete and refuse to answer rather than
/// approximate.
class CochainAlgebra {
  public:
    CochainAlgebra(const gradedlie::DgLieModel& model, int cutoff);
    ~CochainAlgebra();
    CochainAlgebra(CochainAlgebra&&) noexcept;
    CochainAlgebra& operator=(CochainAlgebra&&) noexcept;

    int cutoff() const;
    std::size_t dim(int degree) const;  ///< monomial-basis dimension of C^degree
    std::string monomial_name(int degree, std::size_t i) const;

    /// Differential matrix C^degree -> C^{degree+1}; requires degree+1 <= cutoff.
    const ratalg::RatMatrix& d_matrix(int degree) const;
    RatVec d(int degree, const RatVec& v) const;

    /// Graded-commutative product of cochain vectors.
    RatVec multiply(int deg_u, const RatVec& u, int deg_v, const RatVec& v) const;

    /// Cohomology of one degree (cached); requires degree+1 <= cutoff.
    const Cohomology& cohomology(int degree) const;

    /// The class of a cocycle vector in C^degree.
    CohomologyClass class_of(int degree, const RatVec& cocycle) const;

    /// The class dual to a sphere/cell generator of the model (its dual
    /// cochain generator must be a cocycle, which holds for cell models).
    CohomologyClass generator_class(const std::string& generator_name) const;

    struct Impl;
    const Impl& impl() const { return *impl_; }

  private:
    std::unique_ptr<Impl> impl_;
};

/// Spec-level constructor name.
inline CochainAlgebra chevalley_eilenberg(const gradedlie::DgLieModel& model, int cutoff) {
    return CochainAlgebra(model, cutoff);
}

/// Cup product of classes of the same algebra. Requires |u|+|v|+1 <= cutoff.
CohomologyClass cup(const CochainAlgebra& alg, const CohomologyClass& u,
                    const CohomologyClass& v);

}  // namespace masseykit::cdga
