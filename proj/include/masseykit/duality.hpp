#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "masseykit/rational.hpp"

namespace masseykit::duality {

/// Rational Betti numbers b_0..b_top of a space X.
using BettiVector = std::vector<int>;

/// Per-degree status of b_i(V): an interval [lo, hi], exact when lo == hi.
struct DegreeStatus {
    int lo = 0, hi = 0;
    bool exact() const { return lo == hi; }
};

/// A named exact-sequence fact (holds/fails plus the dimension count that
/// justifies it).
struct Diagnostic {
    bool holds = false;
    std::string justification;
};

/// Cohomology bookkeeping for the boundary V of a regular neighborhood
/// W of X in R^N. W is represented only through W ~ X and
/// H^i(W,V) = H_{N-i}(X); no geometry is constructed. The maps g = r∘i
/// are likewise never computed; all flags are dimension counts.
struct BoundaryReport {
    int ambient = 0;                     // N
    std::vector<DegreeStatus> betti_v;   // degrees 0..N-1
    std::optional<int> k;                // set when connectivity diagnostics apply
    Diagnostic indeterminacy_zero;       // H^{2k-1}(V) = 0
    Diagnostic injective_top;            // H^{3k-1}(W) -> H^{3k-1}(V) injective
    Diagnostic surjective_k;             // H^k(W) -> H^k(V) surjective
    Diagnostic iso_top;                  // H^{3k-1}(W) -> H^{3k-1}(V) iso
};

/// Walks the long exact sequence of the pair (W, V) over Q with
/// b^i(W,V) = b_{N-i}(X) and b^i(W) = b_i(X). Degrees whose connecting
/// ranks are forced give exact values; the rest give intervals. Pass k >= 2
/// to fill in the four connectivity diagnostics.
BoundaryReport boundary_report(const BettiVector& betti_x, int N, int k = -1);

enum class Requirement { IndeterminacyZero, InjectiveTop, SurjectiveK, IsoTop };

/// Ambient dimensions N >= 4k for which some required diagnostic fails,
/// derived from the cohomology support {0, k, 3k-1} of the model spaces.
std::set<int> excluded_ambient_dims(int k, const std::set<Requirement>& requirements);

/// Construction recipe for a closed (k-1)-connected d-manifold carrying a
/// nontrivial triple Massey product.
struct Recipe {
    enum class Kind { Refusal, Boundary, DoubleOfW, SphereProduct };
    Kind kind = Kind::Refusal;
    int k = 0, d = 0;
    int ambient = 0;         // N of the underlying neighborhood (0 for refusal)
    int sphere_factor = 0;   // sphere dimension, SphereProduct only
    std::string justification;
};

/// d <= 4k-2 is refused (such manifolds are formal); otherwise prefers the
/// boundary V = ∂W with N = d+1, falls back to the double of W at excluded
/// dimensions, then (k != 2 only) to a product with a sphere of dimension
/// >= k.
Recipe dimension_planner(int k, int d);

/// True iff the exact sequence forces b_i(V) = 0 for 0 < i <= k-1.
bool connectivity_report(const BettiVector& betti_x, int N, int k);

}  // namespace masseykit::duality
