#include <random>

#include "doctest.h"
#include "masseykit/cdga.hpp"
#include "masseykit/spaces.hpp"

using namespace masseykit;
using namespace masseykit::spaces;

namespace {

std::vector<std::size_t> betti(const gradedlie::DgLieModel& model, int up_to) {
    auto alg = cdga::chevalley_eilenberg(model, up_to + 1);
    std::vector<std::size_t> dims;
    for (int n = 0; n <= up_to; ++n) dims.push_back(alg.cohomology(n).dim());
    return dims;
}

}  // namespace

TEST_CASE("wedge_of_spheres: dictionary and simple-connectivity guard") {
    auto w = wedge_of_spheres({2, 2, 2}, 4);
    CHECK(w.algebra().generators().size() == 3);
    for (const auto& g : w.algebra().generators()) CHECK(g.degree == 1);
    auto mixed = wedge_of_spheres({3, 2, 2}, 4);
    CHECK(mixed.algebra().generators()[0].degree == 2);
    CHECK(mixed.algebra().generators()[1].degree == 1);
    CHECK_THROWS_AS((void)wedge_of_spheres({2, 1}, 4), ContractViolation);
}

TEST_CASE("paper_space_X: cell dimension and Betti numbers") {
    CHECK(spec_X(2, 2, 2).cells[0].dimension == 5);
    CHECK(spec_X(3, 2, 2).cells[0].dimension == 6);
    CHECK(betti(paper_space_X(2, 2, 2), 5) == std::vector<std::size_t>{1, 0, 3, 0, 0, 1});
}

TEST_CASE("paper_space_X(k,k,k) is concentrated in degrees 0, k, 3k-1") {
    for (int k : {2, 3}) {
        int top = 3 * k - 1;
        auto dims = betti(paper_space_X(k, k, k), top);
        for (int n = 0; n <= top; ++n) {
            std::size_t expect = (n == 0) ? 1 : (n == k) ? 3 : (n == top) ? 1 : 0;
            CHECK(dims[static_cast<std::size_t>(n)] == expect);
        }
    }
}

TEST_CASE("paper_space_Z: one extra wedge summand relative to X(k,k,k)") {
    auto dims = betti(paper_space_Z(2), 5);
    CHECK(dims == std::vector<std::size_t>{1, 0, 4, 0, 0, 1});
}

TEST_CASE("paper_space_X4: four sphere classes, four cell classes, gaps in between") {
    auto dims = betti(paper_space_X4(2), 5);
    CHECK(dims == std::vector<std::size_t>{1, 0, 4, 0, 0, 4});
}

TEST_CASE("every constructed model passes d^2 = 0") {
    for (const auto& model :
         {paper_space_X(2, 2, 2), paper_space_Z(2), paper_space_X4(2)}) {
        for (int d = 1; d <= model.cutoff(); ++d)
            for (std::size_t i = 0; i < model.algebra().dim(d); ++i)
                CHECK(model.d(model.d_basis(d, i)).is_zero());
    }
}

TEST_CASE("DSL: parse the X(2,2,2) file") {
    const std::string text = R"(space X {
      sphere a1 : 2
      sphere a2 : 2
      sphere a3 : 2
      cell e5 = [a1,[a2,a3]]
    })";
    auto spec = parse_space_file(text);
    CHECK(spec.name == "X");
    CHECK(spec.spheres.size() == 3);
    REQUIRE(spec.cells.size() == 1);
    CHECK(spec.cells[0].dimension == 5);
    CHECK(spec.cells[0].word == "[a1,[a2,a3]]");
    CHECK(spec.top_dimension() == 5);
    CHECK(betti(build_model(spec, -1), 5) == std::vector<std::size_t>{1, 0, 3, 0, 0, 1});
}

TEST_CASE("DSL: semantic errors carry position and explanation") {
    auto expect_error = [](const std::string& text, const std::string& fragment) {
        try {
            (void)parse_space_file(text);
            FAIL("expected a parse error for: ", text);
        } catch (const ContractViolation& e) {
            CHECK(std::string(e.what()).find("line") != std::string::npos);
            CHECK(std::string(e.what()).find(fragment) != std::string::npos);
        }
    };
    expect_error("space X { sphere a1 : 2 sphere a2 : 2 sphere a3 : 2\n"
                 "cell e4 = [a1,[a2,a3]] }",
                 "forces 5");
    expect_error("space X { sphere a1 : 1 }", "must be >= 2");
    expect_error("space X { sphere a1 : 2 cell e4 = [a1,b9] }", "unknown generator");
    expect_error("space X { sphere a1 : 2 sphere a1 : 3 }", "duplicate");
    expect_error("space X { sphere a1 2 }", "expected ':'");
    expect_error("space X { cell nodigits = [a1,a1] }", "digits");
}

TEST_CASE("DSL: round-trip on the built-in specs and random specs") {
    for (const auto& spec : {spec_X(2, 2, 2), spec_X(3, 2, 2), spec_Z(2), spec_X4(2)})
        CHECK(parse_space_file(to_text(spec)) == spec);

    std::mt19937 rng(20240819);
    std::uniform_int_distribution<int> nsph(1, 4), deg(2, 4);
    for (int trial = 0; trial < 25; ++trial) {
        SpaceSpec spec;
        spec.name = "R" + std::to_string(trial);
        int n = nsph(rng);
        for (int i = 1; i <= n; ++i)
            spec.spheres.push_back({"a" + std::to_string(i), deg(rng)});
        // one cell along [a_i, [a_j, a_l]] with random indices
        std::uniform_int_distribution<int> pick(0, n - 1);
        const auto& s1 = spec.spheres[static_cast<std::size_t>(pick(rng))];
        const auto& s2 = spec.spheres[static_cast<std::size_t>(pick(rng))];
        const auto& s3 = spec.spheres[static_cast<std::size_t>(pick(rng))];
        int dim = (s1.degree - 1) + (s2.degree - 1) + (s3.degree - 1) + 2;
        spec.cells.push_back({"e" + std::to_string(dim), dim,
                              "[" + s1.name + ",[" + s2.name + "," + s3.name + "]]"});
        CHECK(parse_space_file(to_text(spec)) == spec);
    }
}
