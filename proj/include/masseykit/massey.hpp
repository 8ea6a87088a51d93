#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "masseykit/cdga.hpp"
#include "masseykit/ratalg.hpp"

namespace masseykit::massey {

/// A cup-product hypothesis of the triple product fails.
struct MasseyUndefined : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Triple Massey product with its full indeterminacy coset.
/// Sign convention (documented in the README): the bounding cochains
/// satisfy ds = u·v and dt = v·w, and the representative cocycle is
/// u·t − (−1)^{|u|} s·w. The canonical coset form is independent of every
/// choice made.
struct MasseyResult {
    int degree = 0;                 // |u|+|v|+|w|−1
    RatVec representative;          // class coords in H^degree
    ratalg::Subspace indeterminacy{0, {}};  // u·H^{|v|+|w|−1} + H^{|u|+|v|−1}·w
    bool zero_coset = false;        // representative ∈ indeterminacy
    RatVec canonical;               // coset_reduce(representative, indeterminacy)
};

/// Test hook: optional cocycle shifts added to the particular bounding
/// cochains (any cocycle of the right degree is a legal re-selection).
struct MasseyOptions {
    std::optional<RatVec> s_shift;  // degree |u|+|v|−1
    std::optional<RatVec> t_shift;  // degree |v|+|w|−1
};

MasseyResult massey_triple(const cdga::CochainAlgebra& alg, const cdga::CohomologyClass& u,
                           const cdga::CohomologyClass& v, const cdga::CohomologyClass& w,
                           const MasseyOptions& options = {});

/// Rank of the canonical representatives; every triple must have zero
/// indeterminacy (else ContractViolation naming the offending triple).
std::size_t massey_rank(const cdga::CochainAlgebra& alg,
                        const std::vector<std::array<cdga::CohomologyClass, 3>>& triples);

/// One nontrivial product found by the scan: degrees and basis indices of
/// the three input classes, plus the full result.
struct ScanEntry {
    std::array<int, 3> degrees;
    std::array<std::size_t, 3> indices;
    MasseyResult result;
};

/// All defined basis-class triple products of total degree ≤ max_degree
/// with nonzero coset, deduplicated under ⟨u,v,w⟩ ↔ ⟨w,v,u⟩ symmetry and
/// sorted by (degree, indices). Empty output is not a formality certificate.
std::vector<ScanEntry> formality_scan(const cdga::CochainAlgebra& alg, int max_degree);

}  // namespace masseykit::massey
