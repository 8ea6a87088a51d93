#include <random>

#include "doctest.h"
#include "masseykit/ratalg.hpp"

using namespace masseykit;
using namespace masseykit::ratalg;

namespace {

RatMatrix from_ints(const std::vector<std::vector<int>>& rows) {
    RatMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
    return m;
}

RatVec vec(const std::vector<Rat>& v) { return v; }

}  // namespace

TEST_CASE("solve: identity") {
    auto a = RatMatrix::identity(2);
    auto x = solve(a, vec({Rat(3), Rat(-1, 2)}));
    REQUIRE(x.has_value());
    CHECK(*x == vec({Rat(3), Rat(-1, 2)}));
}

TEST_CASE("solve: inconsistent system") {
    auto a = from_ints({{1, 1}, {2, 2}});
    CHECK(!solve(a, vec({Rat(1), Rat(3)})).has_value());
}

TEST_CASE("solve: underdetermined, verified by substitution") {
    auto a = from_ints({{1, 2}, {2, 4}});
    RatVec b = vec({Rat(1), Rat(2)});
    auto x = solve(a, b);
    REQUIRE(x.has_value());
    CHECK(a.apply(*x) == b);
}

TEST_CASE("solve: dimension mismatch") {
    auto a = RatMatrix::identity(2);
    CHECK_THROWS_AS((void)solve(a, RatVec(3, Rat(0))), ContractViolation);
}

TEST_CASE("kernel_basis: zero and identity") {
    CHECK(kernel_basis(RatMatrix(3, 3)).dim() == 3);
    CHECK(kernel_basis(RatMatrix::identity(3)).dim() == 0);
}

TEST_CASE("kernel_basis: single row") {
    auto a = from_ints({{1, 2, 3}});
    auto k = kernel_basis(a);
    CHECK(k.dim() == 2);
    for (const auto& v : k.basis())
        CHECK(a.apply(v) == RatVec{Rat(0)});
}

TEST_CASE("rank-nullity on random small matrices") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<int> dim(1, 6), entry(-3, 3);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t r = static_cast<std::size_t>(dim(rng)), c = static_cast<std::size_t>(dim(rng));
        RatMatrix a(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) a.at(i, j) = entry(rng);
        auto k = kernel_basis(a);
        CHECK(rank(a) + k.dim() == c);
        for (const auto& v : k.basis()) {
            auto av = a.apply(v);
            CHECK(std::all_of(av.begin(), av.end(), [](const Rat& x) { return x == 0; }));
        }
    }
}

TEST_CASE("coset_reduce: zero and membership") {
    Subspace s(3, {vec({Rat(1), Rat(0), Rat(1)}), vec({Rat(0), Rat(1), Rat(2)})});
    auto z = coset_reduce(RatVec(3, Rat(0)), s);
    CHECK(z.is_zero);
    auto m = coset_reduce(s.basis()[0], s);
    CHECK(m.is_zero);
    CHECK(std::all_of(m.canonical.begin(), m.canonical.end(),
                      [](const Rat& x) { return x == 0; }));
}

TEST_CASE("coset_reduce: canonical form invariant under shifts by S") {
    Subspace s(4, {vec({Rat(1), Rat(2), Rat(0), Rat(0)}), vec({Rat(0), Rat(0), Rat(1), Rat(-1)})});
    RatVec v = vec({Rat(1), Rat(0), Rat(0), Rat(5)});
    auto base = coset_reduce(v, s);
    CHECK(!base.is_zero);
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-5, 5);
    for (int trial = 0; trial < 10; ++trial) {
        RatVec w = v;
        for (const auto& b : s.basis()) {
            int c = coef(rng);
            for (std::size_t j = 0; j < 4; ++j) w[j] += Rat(c) * b[j];
        }
        auto shifted = coset_reduce(w, s);
        CHECK(shifted.canonical == base.canonical);
    }
}

TEST_CASE("coset_reduce agrees with membership oracle") {
    Subspace s(3, {vec({Rat(1), Rat(1), Rat(0)})});
    RatVec u = vec({Rat(2), Rat(2), Rat(0)});  // in S
    RatVec v = vec({Rat(1), Rat(0), Rat(0)});  // not in S
    CHECK(coset_reduce(u, s).is_zero == s.contains(u));
    CHECK(coset_reduce(v, s).is_zero == s.contains(v));
    // equal canonical forms iff difference in S
    RatVec w = vec({Rat(3), Rat(2), Rat(0)});  // v + 2*(1,1,0)
    CHECK(coset_reduce(v, s).canonical == coset_reduce(w, s).canonical);
}

TEST_CASE("simplex: bounded optimum") {
    // maximize x0 subject to x0 + x1 = 1, x >= 0  ->  1
    auto e = from_ints({{1, 1}});
    auto res = simplex_maximize(e, vec({Rat(1)}), vec({Rat(1), Rat(0)}));
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.value == 1);
}

TEST_CASE("simplex: infeasible") {
    // x0 + x1 = -1 with x >= 0
    auto e = from_ints({{1, 1}});
    auto res = simplex_maximize(e, vec({Rat(-1)}), vec({Rat(1), Rat(0)}));
    CHECK(res.status == LpStatus::Infeasible);
}

TEST_CASE("simplex: unbounded") {
    // maximize x0 with x1 = 1 (x0 unconstrained above)
    auto e = from_ints({{0, 1}});
    auto res = simplex_maximize(e, vec({Rat(1)}), vec({Rat(1), Rat(0)}));
    CHECK(res.status == LpStatus::Unbounded);
}

TEST_CASE("simplex: exact fractional optimum") {
    // maximize x0 + x1 s.t. 2x0 + x1 + s1 = 1, x0 + 3x1 + s2 = 1
    auto e = from_ints({{2, 1, 1, 0}, {1, 3, 0, 1}});
    auto res = simplex_maximize(e, vec({Rat(1), Rat(1)}),
                                vec({Rat(1), Rat(1), Rat(0), Rat(0)}));
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.value == Rat(3, 5));  // x0 = 2/5, x1 = 1/5
}
