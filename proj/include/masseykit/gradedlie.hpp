#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "masseykit/rational.hpp"

namespace masseykit::gradedlie {

/// Generator of a free graded Lie algebra. `degree` is the Lie degree
/// (a sphere S^k contributes a generator of Lie degree k-1).
struct LieGenerator {
    std::string name;
    int degree = 1;
};

/// Parse tree for the bracket-word grammar
///   word := name | "[" word "," word "]"
struct BracketExpr {
    std::string name;  // nonempty iff leaf
    std::shared_ptr<const BracketExpr> left, right;
    bool is_leaf() const { return !name.empty(); }
};

BracketExpr parse_bracket_word(const std::string& text);
std::string to_string(const BracketExpr& w);

/// Element of a free graded Lie algebra, stored in normal form: exact
/// rational coordinates against the chosen degreewise basis, with
/// homogeneous components kept separately.
struct LieElement {
    std::map<int, RatVec> components;  // degree -> coords, zero degrees absent

    bool is_zero() const { return components.empty(); }
    /// Degree of a homogeneous element; throws on mixed or zero elements.
    int degree() const;
};

LieElement operator+(const LieElement& a, const LieElement& b);
LieElement operator*(const Rat& c, const LieElement& a);
bool operator==(const LieElement& a, const LieElement& b);

/// Free graded Lie algebra over Q on a finite generator set, truncated at
/// `cutoff`. A degreewise basis of bracket words is selected inductively:
/// candidates [b,c] over lower basis elements are accepted when linearly
/// independent inside the tensor algebra (the free Lie algebra embeds in
/// the tensor algebra by expanding [a,b] = ab - (-1)^{|a||b|} ba), with a
/// fixed deterministic candidate order. All arithmetic is exact.
class FreeLieAlgebra {
  public:
    FreeLieAlgebra(std::vector<LieGenerator> generators, int cutoff);
    ~FreeLieAlgebra();
    FreeLieAlgebra(FreeLieAlgebra&&) noexcept;
    FreeLieAlgebra& operator=(FreeLieAlgebra&&) noexcept;

    const std::vector<LieGenerator>& generators() const;
    int cutoff() const;

    std::size_t dim(int degree) const;             ///< basis size, degree <= cutoff
    int basis_degree_of_generator(std::size_t gen_index) const;
    std::string basis_word(int degree, std::size_t i) const;  ///< printable bracket word

    LieElement zero() const { return {}; }
    LieElement generator_element(std::size_t gen_index) const;
    LieElement basis_element(int degree, std::size_t i) const;

    /// Graded Lie bracket in normal form. Throws CutoffExceeded when a
    /// homogeneous product would land beyond the cutoff.
    LieElement bracket(const LieElement& a, const LieElement& b) const;

    /// Coordinates of [b_i, b_j] in the degree-(d1+d2) basis (sparse pairs,
    /// sorted by basis index).
    using SparsePairs = std::vector<std::pair<int, Rat>>;
    const SparsePairs& bracket_basis(int d1, std::size_t i, int d2, std::size_t j) const;

    /// Resolves a parsed bracket word against the generator names.
    LieElement element_of_word(const BracketExpr& w) const;

    /// Re-expresses an element of another algebra over a generator subset
    /// (same generators, same order, possibly fewer) in this algebra.
    LieElement import_element(const FreeLieAlgebra& from, const LieElement& e) const;

    struct Impl;
    const Impl& impl() const { return *impl_; }

  private:
    std::unique_ptr<Impl> impl_;
};

/// Per-degree lists of printable normal-form basis words, degrees 1..cutoff.
std::vector<std::vector<std::string>> free_basis(
    const std::vector<LieGenerator>& generators, int cutoff);

/// A free dg Lie algebra with differential given on generators (a cell
/// model: sphere generators have zero differential, each attached cell
/// contributes a generator whose differential is the attaching class).
/// d(d(g)) = 0 is verified on every basis element at construction.
class DgLieModel {
  public:
    /// Model with zero differential.
    DgLieModel(std::vector<LieGenerator> generators, int cutoff);

    const FreeLieAlgebra& algebra() const { return *alg_; }
    std::shared_ptr<const FreeLieAlgebra> algebra_ptr() const { return alg_; }
    int cutoff() const;

    /// Differential of a basis element, extended from generators as a
    /// derivation: d[a,b] = [da,b] + (-1)^{|a|}[a,db].
    const LieElement& d_basis(int degree, std::size_t i) const;
    LieElement d(const LieElement& e) const;

    /// New model with one extra generator `gen` and d(gen) = value (an
    /// element of the current model). Throws ContractViolation when the
    /// degree is wrong or value is not a cycle.
    DgLieModel attach_differential(const LieGenerator& gen, const LieElement& value) const;

  private:
    DgLieModel(std::shared_ptr<const FreeLieAlgebra> alg, std::vector<LieElement> d_gen);
    void build_differential_table();

    std::shared_ptr<const FreeLieAlgebra> alg_;
    std::vector<LieElement> d_gen_;                       // per generator
    std::vector<std::vector<LieElement>> d_table_;        // [degree][basis index]
};

}  // namespace masseykit::gradedlie
