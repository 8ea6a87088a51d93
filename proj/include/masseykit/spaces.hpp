#pragma once

#include <string>
#include <vector>

#include "masseykit/gradedlie.hpp"

namespace masseykit::spaces {

/// A cell attachment: cell dimension and attaching bracket word over the
/// sphere/cell generator names.
struct CellSpec {
    std::string name;
    int dimension = 0;
    std::string word;
};

struct SphereSpec {
    std::string name;
    int degree = 0;  // sphere dimension, >= 2
};

/// Declarative description of a space: a wedge of spheres with cells
/// attached along Whitehead-bracket words.
struct SpaceSpec {
    std::string name;
    std::vector<SphereSpec> spheres;
    std::vector<CellSpec> cells;

    /// Largest cell dimension, or the largest sphere dimension if no cells.
    int top_dimension() const;
};

bool operator==(const SpaceSpec& a, const SpaceSpec& b);

/// Free model of a wedge of spheres (degrees >= 2): one generator of Lie
/// degree k-1 per sphere S^k, zero differential.
gradedlie::DgLieModel wedge_of_spheres(const std::vector<int>& degrees, int lie_cutoff);

/// Build the dg Lie model of a SpaceSpec, attaching cells in order.
gradedlie::DgLieModel build_model(const SpaceSpec& spec, int lie_cutoff);

/// Wedge S^{k1} v S^{k2} v S^{k3} with one (k1+k2+k3-1)-cell attached along
/// [i1,[i2,i3]]. Default truncation covers cohomology through the top cell.
gradedlie::DgLieModel paper_space_X(int k1, int k2, int k3, int lie_cutoff = -1);

/// Four k-spheres, one (3k-1)-cell attached along [i1,[i2,i3]]; the fourth
/// sphere is untouched by the differential.
gradedlie::DgLieModel paper_space_Z(int k, int lie_cutoff = -1);

/// Four k-spheres, four (3k-1)-cells attached along the cyclic words
/// [i_m,[i_{m+1},i_{m+2}]] with indices mod 4.
gradedlie::DgLieModel paper_space_X4(int k, int lie_cutoff = -1);

/// SpaceSpec counterparts of the three constructors above (generator names
/// x1..x4, cells y1..y4), usable with build_model and the DSL printer.
SpaceSpec spec_X(int k1, int k2, int k3);
SpaceSpec spec_Z(int k);
SpaceSpec spec_X4(int k);

/// Parse the space-definition DSL:
///   space X { sphere a1 : 2 ... cell e5 = [a1,[a2,a3]] }
/// Cell dimension is the trailing integer of the cell name and must match
/// the bracket-word dictionary. Errors carry line/column.
SpaceSpec parse_space_file(const std::string& text);

/// Printer; print -> parse round-trips to an equal SpaceSpec.
std::string to_text(const SpaceSpec& spec);

}  // namespace masseykit::spaces
