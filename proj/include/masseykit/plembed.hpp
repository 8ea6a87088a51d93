#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "masseykit/rational.hpp"

namespace masseykit::plembed {

/// Finite simplicial complex with exact rational coordinates. Simplices are
/// stored as sorted vertex-index sets; faces are implied. Invariants
/// (checked by make_complex): coordinates have the ambient dimension, no
/// two vertices coincide, every simplex is affinely independent.
struct GeomComplex {
    int ambient_dim = 0;
    std::vector<RatVec> vertices;
    std::vector<std::vector<std::size_t>> simplices;
};

/// Validates and normalizes (sorts simplex vertex lists, drops duplicate
/// simplices). Throws ContractViolation on any invariant failure.
GeomComplex make_complex(int ambient_dim, std::vector<RatVec> vertices,
                         std::vector<std::vector<std::size_t>> simplices);

/// Abstract triangulation: vertex count plus simplices, no coordinates.
struct AbstractComplex {
    std::size_t vertex_count = 0;
    std::vector<std::vector<std::size_t>> simplices;
};

/// Vertex assignment from a domain complex to a codomain complex.
struct SimplicialMap {
    std::vector<std::size_t> vertex_image;
};

/// Throws unless every domain simplex maps onto (a face of) a codomain
/// simplex under the vertex assignment.
void validate_simplicial(const GeomComplex& domain, const SimplicialMap& f,
                         const GeomComplex& codomain);

long euler_characteristic(const std::vector<std::vector<std::size_t>>& simplices);
inline long euler_characteristic(const GeomComplex& c) { return euler_characteristic(c.simplices); }
inline long euler_characteristic(const AbstractComplex& c) { return euler_characteristic(c.simplices); }

/// True iff for every point s of |A| away from the origin, the segment
/// [origin, s] meets |A| \ {origin} only at s. Pairs of points lying in a
/// common simplex that has the origin as a vertex are exempt (a complex
/// with origin-incident edges can never be literally radial along those
/// edges; the construction handles them, and verify_embedding has the
/// final word). Exact: reduced to rational linear programs.
bool radial_check(const GeomComplex& a, const RatVec& origin);

/// Mapping cylinder of f: domain -> codomain as an abstract triangulation
/// via the ordered prism decomposition. Vertex ids: domain vertices first,
/// then codomain vertices.
AbstractComplex mapping_cylinder(const GeomComplex& domain, const SimplicialMap& f,
                                 const GeomComplex& codomain);

/// Double mapping cylinder Z_f = B ∪_A (A x I) ∪_f Y embedded in R^{m+n}:
/// B lands on B x {0_n}, Y on {0_m} x Y, the cylinder interpolates through
/// the graph of f. Preconditions: A is a (coordinate-wise) subcomplex of B,
/// A is radial about 0_m, no Y vertex sits at 0_n, and if 0_m is a vertex
/// of A then Y has a strictly unique nearest vertex y0 with f(0_m) = y0.
GeomComplex embed_double_cylinder(const GeomComplex& b, const GeomComplex& a,
                                  const GeomComplex& y, const SimplicialMap& f);

/// Cone of f: builds the disc wedge over a wedge of sphere boundaries
/// (one cone apex per wedge summand, at the summand's vertex barycenter)
/// and delegates to embed_double_cylinder with B = disc wedge, A = the
/// given sphere wedge.
GeomComplex embed_cone(const GeomComplex& sphere_wedge, const GeomComplex& y,
                       const SimplicialMap& f);

/// Pairwise exact verification that simplices meet exactly in their shared
/// face. On failure reports the lexicographically smallest witness pair.
struct EmbedCheck {
    bool ok = false;
    std::size_t first = 0, second = 0;  // witness simplex indices when !ok
};
EmbedCheck verify_embedding(const GeomComplex& c);

// Geometry file format: `dim D`, `v p/q ...` vertex lines, `s i j ...`
// maximal-simplex lines; `#` comments. The embedding-problem format adds
// `complex B` / `complex Y` section headers, `a i j ...` lines naming the
// simplices of A by B vertex indices, and `map i->j` lines for f.
GeomComplex parse_geometry(const std::string& text);
std::string to_text(const GeomComplex& c);

struct EmbeddingProblem {
    GeomComplex b, a, y;
    SimplicialMap f;
};
EmbeddingProblem parse_embedding_problem(const std::string& text);

}  // namespace masseykit::plembed
