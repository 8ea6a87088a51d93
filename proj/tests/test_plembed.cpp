#include <string>
#include <vector>

#include "doctest.h"
#include "masseykit/plembed.hpp"

using namespace masseykit;
using namespace masseykit::plembed;

namespace {

RatVec pt(std::vector<int> coords) {
    RatVec v;
    for (int c : coords) v.emplace_back(c);
    return v;
}

// boundary of the square [-1,1]^2, radial about the origin
GeomComplex square_boundary() {
    return make_complex(2, {pt({1, 1}), pt({-1, 1}), pt({-1, -1}), pt({1, -1})},
                        {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

// the same square coned from the origin: a disc containing its boundary
GeomComplex coned_square() {
    return make_complex(2,
                        {pt({1, 1}), pt({-1, 1}), pt({-1, -1}), pt({1, -1}), pt({0, 0})},
                        {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}});
}

// square-shaped circle with one vertex at the origin
GeomComplex square_circle_at_origin() {
    return make_complex(2, {pt({0, 0}), pt({2, 0}), pt({2, 2}), pt({0, 2})},
                        {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

// wedge of two square circles joined at the origin, in opposite quadrants
GeomComplex wedge_two_circles() {
    return make_complex(2,
                        {pt({0, 0}), pt({2, 0}), pt({2, 2}), pt({0, 2}), pt({-2, 0}),
                         pt({-2, -2}), pt({0, -2})},
                        {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {4, 5}, {5, 6}, {6, 0}});
}

// square-shaped circle away from the origin, nearest vertex strictly unique
GeomComplex square_circle_target() {
    return make_complex(2, {pt({1, 0}), pt({5, 0}), pt({5, 4}), pt({1, 4})},
                        {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

long chi(const GeomComplex& c) { return euler_characteristic(c); }

}  // namespace

TEST_CASE("make_complex validates its invariants") {
    CHECK_THROWS_AS((void)make_complex(2, {pt({0, 0}), pt({0, 0})}, {}), ContractViolation);
    CHECK_THROWS_AS((void)make_complex(2, {pt({0, 0})}, {{0, 1}}), ContractViolation);
    CHECK_THROWS_AS((void)make_complex(2, {pt({0})}, {}), ContractViolation);
    // three collinear points are not a triangle
    CHECK_THROWS_AS((void)make_complex(2, {pt({0, 0}), pt({1, 0}), pt({2, 0})}, {{0, 1, 2}}),
                    ContractViolation);
    auto c = make_complex(2, {pt({0, 0}), pt({1, 0})}, {{0, 1}, {1, 0}, {0, 1}});
    CHECK(c.simplices.size() == 1);
    CHECK(c.simplices[0] == std::vector<std::size_t>{0, 1});
}

TEST_CASE("euler_characteristic counts the face closure") {
    using Simplices = std::vector<std::vector<std::size_t>>;
    CHECK(euler_characteristic(Simplices{{0, 1, 2}}) == 1);  // solid triangle
    CHECK(chi(square_boundary()) == 0);                      // circle
    CHECK(euler_characteristic(Simplices{{0}, {1}}) == 2);   // two points
    CHECK(chi(coned_square()) == 1);                // disc
    CHECK(chi(wedge_two_circles()) == -1);
}

TEST_CASE("radial_check: point pairs") {
    auto two_rays = make_complex(2, {pt({1, 0}), pt({0, 1})}, {{0}, {1}});
    CHECK(radial_check(two_rays, pt({0, 0})));
    auto stacked = make_complex(2, {pt({1, 0}), pt({2, 0})}, {{0}, {1}});
    CHECK(!radial_check(stacked, pt({0, 0})));
    // same two points seen from elsewhere
    CHECK(radial_check(stacked, pt({0, 1})));
}

TEST_CASE("radial_check: curves") {
    CHECK(radial_check(square_boundary(), pt({0, 0})));
    // shifted square: the ray through the far edge crosses the near edge
    auto shifted = make_complex(2, {pt({4, 1}), pt({6, 1}), pt({6, -1}), pt({4, -1})},
                                {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    CHECK(!radial_check(shifted, pt({0, 0})));
    // origin in the interior of an edge
    auto through = make_complex(2, {pt({-1, 0}), pt({1, 0})}, {{0, 1}});
    CHECK(!radial_check(through, pt({0, 0})));
    // origin as a vertex: edges out of the origin are exempt
    CHECK(radial_check(square_circle_at_origin(), pt({0, 0})));
    CHECK(radial_check(wedge_two_circles(), pt({0, 0})));
    CHECK_THROWS_AS((void)radial_check(square_boundary(), pt({0, 0, 0})), ContractViolation);
}

TEST_CASE("validate_simplicial") {
    auto circle = square_boundary();
    auto point = make_complex(1, {pt({5})}, {{0}});
    validate_simplicial(circle, SimplicialMap{{0, 0, 0, 0}}, point);
    auto segment = make_complex(1, {pt({1}), pt({3})}, {{0, 1}});
    validate_simplicial(circle, SimplicialMap{{0, 1, 0, 1}}, segment);
    // adjacent boundary vertices sent to the two segment endpoints is fine,
    // but a diagonal identification needs an edge that is not there
    auto two_points = make_complex(1, {pt({1}), pt({3})}, {{0}, {1}});
    CHECK_THROWS_AS(validate_simplicial(circle, SimplicialMap{{0, 1, 0, 1}}, two_points),
                    ContractViolation);
    CHECK_THROWS_AS(validate_simplicial(circle, SimplicialMap{{0, 1}}, segment),
                    ContractViolation);
}

TEST_CASE("mapping_cylinder has the homotopy type of the codomain") {
    auto circle = square_boundary();
    auto point = make_complex(1, {pt({5})}, {{0}});
    auto cyl = mapping_cylinder(circle, SimplicialMap{{0, 0, 0, 0}}, point);
    CHECK(cyl.vertex_count == 5);
    CHECK(euler_characteristic(cyl) == 1);

    auto id_cyl = mapping_cylinder(circle, SimplicialMap{{0, 1, 2, 3}}, circle);
    CHECK(euler_characteristic(id_cyl) == 0);

    auto segment = make_complex(1, {pt({1}), pt({3})}, {{0, 1}});
    auto wrap = mapping_cylinder(circle, SimplicialMap{{0, 1, 0, 1}}, segment);
    CHECK(euler_characteristic(wrap) == 1);
}

TEST_CASE("embed_double_cylinder: square boundary onto a segment, in R^4") {
    auto b = coned_square();
    auto a = square_boundary();
    auto y = make_complex(2, {pt({1, 0}), pt({3, 0})}, {{0, 1}});
    auto z = embed_double_cylinder(b, a, y, SimplicialMap{{0, 1, 0, 1}});
    CHECK(z.ambient_dim == 4);
    CHECK(chi(z) == chi(b) + chi(y) - chi(a));
    CHECK(chi(z) == 2);
    auto check = verify_embedding(z);
    CHECK(check.ok);
}

TEST_CASE("embed_double_cylinder: disc plus cone over the boundary is a sphere") {
    auto b = coned_square();
    auto a = square_boundary();
    auto y = make_complex(1, {pt({5})}, {{0}});
    auto z = embed_double_cylinder(b, a, y, SimplicialMap{{0, 0, 0, 0}});
    CHECK(z.ambient_dim == 3);
    CHECK(chi(z) == 2);  // S^2
    CHECK(verify_embedding(z).ok);
}

TEST_CASE("embed_double_cylinder: origin as a vertex of A") {
    auto b = make_complex(2, {pt({0, 0}), pt({1, 0})}, {{0, 1}});
    auto a = make_complex(2, {pt({0, 0}), pt({1, 0})}, {{0}, {1}});
    auto y = make_complex(2, {pt({1, 0}), pt({3, 0})}, {{0, 1}});
    auto z = embed_double_cylinder(b, a, y, SimplicialMap{{0, 1}});
    CHECK(chi(z) == 0);  // a circle: segment, cylinder sides, and Y close up
    CHECK(verify_embedding(z).ok);

    // the origin must map to the strictly unique nearest vertex of Y
    CHECK_THROWS_WITH_AS((void)embed_double_cylinder(b, a, y, SimplicialMap{{1, 0}}),
                         doctest::Contains("basepoint"), ContractViolation);
    auto tie = make_complex(2, {pt({1, 0}), pt({-1, 0})}, {{0}, {1}});
    CHECK_THROWS_WITH_AS((void)embed_double_cylinder(b, a, tie, SimplicialMap{{0, 1}}),
                         doctest::Contains("basepoint"), ContractViolation);
}

TEST_CASE("embed_double_cylinder: precondition failures") {
    auto b = coned_square();
    auto a = square_boundary();
    auto segment = make_complex(2, {pt({1, 0}), pt({3, 0})}, {{0, 1}});
    auto f = SimplicialMap{{0, 1, 0, 1}};

    auto y_at_origin = make_complex(2, {pt({0, 0}), pt({3, 0})}, {{0, 1}});
    CHECK_THROWS_WITH_AS((void)embed_double_cylinder(b, a, y_at_origin, f),
                         doctest::Contains("origin"), ContractViolation);

    auto not_sub = make_complex(2, {pt({9, 9}), pt({8, 8})}, {{0, 1}});
    CHECK_THROWS_WITH_AS((void)embed_double_cylinder(b, not_sub, segment, SimplicialMap{{0, 1}}),
                         doctest::Contains("subcomplex"), ContractViolation);

    auto shifted = make_complex(2, {pt({4, 1}), pt({6, 1}), pt({6, -1}), pt({4, -1})},
                                {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    auto shifted_disc = make_complex(
        2, {pt({4, 1}), pt({6, 1}), pt({6, -1}), pt({4, -1}), pt({5, 0})},
        {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}});
    CHECK_THROWS_WITH_AS((void)embed_double_cylinder(shifted_disc, shifted, segment, f),
                         doctest::Contains("radial"), ContractViolation);
}

TEST_CASE("embed_cone: circle to a point gives a sphere") {
    auto y = make_complex(1, {pt({5})}, {{0}});
    auto z = embed_cone(square_boundary(), y, SimplicialMap{{0, 0, 0, 0}});
    CHECK(z.ambient_dim == 3);
    CHECK(chi(z) == 2);
    CHECK(verify_embedding(z).ok);
}

TEST_CASE("embed_cone: degree-one map of circles gives a disc") {
    auto a = square_circle_at_origin();
    auto y = square_circle_target();
    auto z = embed_cone(a, y, SimplicialMap{{0, 1, 2, 3}});
    CHECK(z.ambient_dim == 4);
    CHECK(chi(z) == 1);
    CHECK(verify_embedding(z).ok);
}

TEST_CASE("embed_cone: wedge of two circles, one wrapped and one collapsed") {
    auto a = wedge_two_circles();
    auto y = square_circle_target();
    auto z = embed_cone(a, y, SimplicialMap{{0, 1, 2, 3, 0, 0, 0}});
    CHECK(z.ambient_dim == 4);
    // chi(B) = 1 (two discs joined at a point), chi(Y) = 0, chi(A) = -1
    CHECK(chi(z) == 2);
    CHECK(verify_embedding(z).ok);
}

TEST_CASE("verify_embedding catches crossings") {
    auto crossing = make_complex(2,
                                 {pt({0, 0}), pt({2, 2}), pt({0, 2}), pt({2, 0})},
                                 {{0, 1}, {2, 3}});
    auto check = verify_embedding(crossing);
    CHECK(!check.ok);
    CHECK(check.first == 0);
    CHECK(check.second == 1);

    // two triangles sharing exactly an edge are fine
    auto shared_edge = make_complex(2,
                                    {pt({0, 0}), pt({2, 0}), pt({1, 2}), pt({1, -2})},
                                    {{0, 1, 2}, {0, 1, 3}});
    CHECK(verify_embedding(shared_edge).ok);

    // a shared vertex on the interior of another simplex is a crossing
    auto touch = make_complex(2, {pt({0, 0}), pt({2, 0}), pt({1, 0}), pt({1, 2})},
                              {{0, 1}, {2, 3}});
    CHECK(!verify_embedding(touch).ok);
}

TEST_CASE("verify_embedding rejects an injected crossing in a good complex") {
    auto b = coned_square();
    auto a = square_boundary();
    auto y = make_complex(1, {pt({5})}, {{0}});
    auto z = embed_double_cylinder(b, a, y, SimplicialMap{{0, 0, 0, 0}});
    REQUIRE(verify_embedding(z).ok);
    // pierce the sphere with a segment through two antipodal-ish points
    auto verts = z.vertices;
    verts.push_back(pt({0, 0, -1}));
    verts.push_back(pt({0, 0, 9}));
    auto simplices = z.simplices;
    simplices.push_back({verts.size() - 2, verts.size() - 1});
    auto pierced = make_complex(3, std::move(verts), std::move(simplices));
    CHECK(!verify_embedding(pierced).ok);
}

TEST_CASE("euler characteristic identity chi(Z) = chi(B) + chi(Y) - chi(A)") {
    struct Case {
        GeomComplex b, a, y;
        SimplicialMap f;
    };
    std::vector<Case> cases;
    cases.push_back({coned_square(), square_boundary(),
                     make_complex(2, {pt({1, 0}), pt({3, 0})}, {{0, 1}}),
                     SimplicialMap{{0, 1, 0, 1}}});
    cases.push_back({coned_square(), square_boundary(),
                     make_complex(1, {pt({5})}, {{0}}), SimplicialMap{{0, 0, 0, 0}}});
    cases.push_back({make_complex(2, {pt({0, 0}), pt({1, 0})}, {{0, 1}}),
                     make_complex(2, {pt({0, 0}), pt({1, 0})}, {{0}, {1}}),
                     make_complex(2, {pt({1, 0}), pt({3, 0})}, {{0, 1}}),
                     SimplicialMap{{0, 1}}});
    for (const auto& c : cases) {
        auto z = embed_double_cylinder(c.b, c.a, c.y, c.f);
        CHECK(chi(z) == chi(c.b) + chi(c.y) - chi(c.a));
    }
}

TEST_CASE("parse_geometry and to_text round trip") {
    std::string text =
        "# a circle\n"
        "dim 2\n"
        "v 1 1\n"
        "v -1 1\n"
        "v -1 -1\n"
        "v 1 -1\n"
        "s 0 1\n"
        "s 1 2\n"
        "s 2 3\n"
        "s 3 0\n";
    auto c = parse_geometry(text);
    CHECK(c.ambient_dim == 2);
    CHECK(c.vertices.size() == 4);
    CHECK(c.simplices.size() == 4);
    auto again = parse_geometry(to_text(c));
    CHECK(again.vertices == c.vertices);
    CHECK(again.simplices == c.simplices);

    auto rational = parse_geometry("dim 1\nv 1/2\nv -3/4\ns 0 1\n");
    CHECK(rational.vertices[0][0] == Rat(1, 2));
}

TEST_CASE("parse_geometry reports line numbers") {
    CHECK_THROWS_WITH_AS((void)parse_geometry("dim 2\nv 1\n"), doctest::Contains("line 2"),
                         ContractViolation);
    CHECK_THROWS_WITH_AS((void)parse_geometry("v 1 2\n"), doctest::Contains("before dim"),
                         ContractViolation);
    CHECK_THROWS_WITH_AS((void)parse_geometry("dim 1\ndim 1\n"),
                         doctest::Contains("duplicate"), ContractViolation);
    CHECK_THROWS_WITH_AS((void)parse_geometry("dim 1\nv 1\ns 0 5\n"),
                         doctest::Contains("out of range"), ContractViolation);
    CHECK_THROWS_WITH_AS((void)parse_geometry("dim 1\nv x\n"), doctest::Contains("line 2"),
                         ContractViolation);
    CHECK_THROWS_WITH_AS((void)parse_geometry("dim 1\nwhat 1\n"),
                         doctest::Contains("unexpected directive"), ContractViolation);
}

TEST_CASE("parse_embedding_problem drives the full construction") {
    std::string text =
        "complex B\n"
        "dim 2\n"
        "v 1 1\n"
        "v -1 1\n"
        "v -1 -1\n"
        "v 1 -1\n"
        "v 0 0\n"
        "s 0 1 4\n"
        "s 1 2 4\n"
        "s 2 3 4\n"
        "s 3 0 4\n"
        "a 0 1\n"
        "a 1 2\n"
        "a 2 3\n"
        "a 3 0\n"
        "complex Y\n"
        "dim 2\n"
        "v 1 0\n"
        "v 3 0\n"
        "s 0 1\n"
        "map 0->0\n"
        "map 1->1\n"
        "map 2->0\n"
        "map 3->1\n";
    auto problem = parse_embedding_problem(text);
    CHECK(problem.a.vertices.size() == 4);
    CHECK(problem.a.simplices.size() == 4);
    CHECK(problem.f.vertex_image == std::vector<std::size_t>{0, 1, 0, 1});
    auto z = embed_double_cylinder(problem.b, problem.a, problem.y, problem.f);
    CHECK(chi(z) == 2);
    CHECK(verify_embedding(z).ok);
}

TEST_CASE("parse_embedding_problem rejects malformed input") {
    CHECK_THROWS_WITH_AS((void)parse_embedding_problem("dim 2\n"),
                         doctest::Contains("complex"), ContractViolation);
    CHECK_THROWS_WITH_AS((void)parse_embedding_problem("complex Y\ndim 1\nv 1\ns 0\na 0\n"),
                         doctest::Contains("outside the B section"), ContractViolation);
    std::string no_map =
        "complex B\ndim 1\nv 1\nv 2\ns 0 1\na 0\na 1\n"
        "complex Y\ndim 1\nv 1\ns 0\nmap 0->0\n";
    CHECK_THROWS_WITH_AS((void)parse_embedding_problem(no_map),
                         doctest::Contains("missing 'map'"), ContractViolation);
}
