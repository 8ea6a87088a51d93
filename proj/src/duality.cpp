#include "masseykit/duality.hpp"

#include <algorithm>
#include <limits>

namespace masseykit::duality {

namespace {

int bx(const BettiVector& b, int i) {
    if (i < 0 || i >= static_cast<int>(b.size())) return 0;
    return b[static_cast<std::size_t>(i)];
}

int top_support(const BettiVector& b) {
    for (int i = static_cast<int>(b.size()) - 1; i >= 0; --i)
        if (b[static_cast<std::size_t>(i)] != 0) return i;
    return -1;
}

// One maximal stretch of known terms of the exact sequence, parameterized
// by the rank x entering its first term. Ranks inside alternate
// r_j = s_j + sign_j * x; all must be nonnegative.
struct Run {
    int lo = 0, hi = std::numeric_limits<int>::max();  // feasible x interval
    int exit_s = 0, exit_sign = 1;                     // exit rank = exit_s + exit_sign * x

    int exit_at(int x) const { return exit_s + exit_sign * x; }
};

Run analyze_run(const std::vector<int>& dims, bool entering_fixed_zero, bool final_run) {
    Run run;
    if (entering_fixed_zero) run.hi = 0;
    int s = 0, sign = 1;  // r_{-1} = 0 + 1*x (the entering rank)
    for (int d : dims) {
        // r_j = d - r_{j-1}
        s = d - s;
        sign = -sign;
        if (sign > 0) run.lo = std::max(run.lo, -s);
        else run.hi = std::min(run.hi, s);
    }
    run.exit_s = s;
    run.exit_sign = sign;
    if (final_run) {
        // the sequence continues with zeros, so the exit rank must vanish
        if (run.exit_sign > 0) {
            run.lo = std::max(run.lo, -run.exit_s);
            run.hi = std::min(run.hi, -run.exit_s);
        } else {
            run.lo = std::max(run.lo, run.exit_s);
            run.hi = std::min(run.hi, run.exit_s);
        }
    }
    if (run.lo > run.hi)
        throw ContractViolation("boundary_report: Betti data admit no exact sequence");
    return run;
}

std::string num(int v) { return std::to_string(v); }

}  // namespace

BoundaryReport boundary_report(const BettiVector& betti_x, int N, int k) {
    if (betti_x.empty() || betti_x[0] < 1)
        throw ContractViolation("boundary_report: b_0 must be at least 1");
    for (int b : betti_x)
        if (b < 0) throw ContractViolation("boundary_report: negative Betti number");
    if (N <= top_support(betti_x))
        throw ContractViolation("boundary_report: ambient dimension " + num(N) +
                                " does not exceed the support of the Betti vector");

    // Exact sequence ... -> A_i -> C_i -> V_i -> A_{i+1} -> ... with
    // A_i = b^i(W,V) = b_{N-i}(X), C_i = b^i(W) = b_i(X), V_i = b^i(V)
    // unknown for i < N and V_N = 0. Unknown positions split the chain
    // into runs whose ranks are affine in one entering parameter each.
    std::vector<Run> runs;
    std::vector<int> current;
    for (int i = 0; i <= N; ++i) {
        current.push_back(bx(betti_x, N - i));  // A_i
        current.push_back(bx(betti_x, i));      // C_i
        if (i == N) {
            current.push_back(0);               // V_N
            runs.push_back(analyze_run(current, runs.empty(), true));
        } else {
            runs.push_back(analyze_run(current, runs.empty(), false));
            current.clear();
        }
    }

    BoundaryReport report;
    report.ambient = N;
    // V_i sits between run i (exit) and run i+1 (entering parameter)
    for (int i = 0; i < N; ++i) {
        const Run& before = runs[static_cast<std::size_t>(i)];
        const Run& after = runs[static_cast<std::size_t>(i) + 1];
        int e_at_lo = before.exit_at(before.lo), e_at_hi = before.exit_at(before.hi);
        DegreeStatus st;
        st.lo = std::min(e_at_lo, e_at_hi) + after.lo;
        st.hi = std::max(e_at_lo, e_at_hi) + after.hi;
        report.betti_v.push_back(st);
    }

    if (k >= 2) {
        report.k = k;
        auto zero_fact = [&](int x_deg, const std::string& label) {
            return label + " = b_" + num(x_deg) + "(X) = " + num(bx(betti_x, x_deg));
        };
        {
            bool w_zero = bx(betti_x, 2 * k - 1) == 0;
            bool rel_zero = bx(betti_x, N - 2 * k) == 0;
            report.indeterminacy_zero.holds = w_zero && rel_zero;
            report.indeterminacy_zero.justification =
                "H^" + num(2 * k - 1) + "(V) forced zero iff b_" + num(2 * k - 1) +
                "(X) = " + num(bx(betti_x, 2 * k - 1)) + " and " +
                zero_fact(N - 2 * k, "b^" + num(2 * k) + "(W,V)") + " both vanish";
        }
        {
            report.injective_top.holds = bx(betti_x, N - 3 * k + 1) == 0;
            report.injective_top.justification =
                "restriction H^" + num(3 * k - 1) + "(W) -> H^" + num(3 * k - 1) +
                "(V) is injective iff " +
                zero_fact(N - 3 * k + 1, "b^" + num(3 * k - 1) + "(W,V)") + " vanishes";
        }
        {
            report.surjective_k.holds = bx(betti_x, N - k - 1) == 0;
            report.surjective_k.justification =
                "restriction H^" + num(k) + "(W) -> H^" + num(k) +
                "(V) is surjective iff " +
                zero_fact(N - k - 1, "b^" + num(k + 1) + "(W,V)") + " vanishes";
        }
        {
            report.iso_top.holds = report.injective_top.holds && bx(betti_x, N - 3 * k) == 0;
            report.iso_top.justification =
                "isomorphism additionally needs " +
                zero_fact(N - 3 * k, "b^" + num(3 * k) + "(W,V)") + " to vanish";
        }
    }
    return report;
}

std::set<int> excluded_ambient_dims(int k, const std::set<Requirement>& requirements) {
    if (k < 2) throw ContractViolation("excluded_ambient_dims: k must be >= 2");
    if (requirements.empty())
        throw ContractViolation("excluded_ambient_dims: empty requirement set");
    auto in_support = [&](int x) { return x == 0 || x == k || x == 3 * k - 1; };
    std::set<int> out;
    for (int N = 4 * k; N <= 8 * k; ++N) {
        bool fails = false;
        if (requirements.count(Requirement::IndeterminacyZero) && in_support(N - 2 * k))
            fails = true;
        if (requirements.count(Requirement::InjectiveTop) && in_support(N - 3 * k + 1))
            fails = true;
        if (requirements.count(Requirement::SurjectiveK) && in_support(N - k - 1))
            fails = true;
        if (requirements.count(Requirement::IsoTop) &&
            (in_support(N - 3 * k + 1) || in_support(N - 3 * k)))
            fails = true;
        if (fails) out.insert(N);
    }
    return out;
}

Recipe dimension_planner(int k, int d) {
    if (k < 2) throw ContractViolation("dimension_planner: k must be >= 2");
    Recipe recipe;
    recipe.k = k;
    recipe.d = d;
    if (d <= 4 * k - 2) {
        recipe.kind = Recipe::Kind::Refusal;
        recipe.justification =
            "every closed (" + std::to_string(k - 1) + ")-connected manifold of dimension <= " +
            std::to_string(4 * k - 2) + " is formal (Miller bound), so no nontrivial triple "
            "Massey product exists in dimension " + std::to_string(d);
        return recipe;
    }
    const auto excluded =
        excluded_ambient_dims(k, {Requirement::IndeterminacyZero, Requirement::InjectiveTop});
    auto excl_str = [&]() {
        std::string s = "{";
        for (int n : excluded) s += (s.size() > 1 ? "," : "") + std::to_string(n);
        return s + "}";
    };
    if (!excluded.count(d + 1)) {
        recipe.kind = Recipe::Kind::Boundary;
        recipe.ambient = d + 1;
        recipe.justification = "boundary V = dW of a regular neighborhood in R^" +
                               std::to_string(d + 1) + "; N = " + std::to_string(d + 1) +
                               " avoids the excluded set " + excl_str();
        return recipe;
    }
    if (d >= 4 * k) {
        recipe.kind = Recipe::Kind::DoubleOfW;
        recipe.ambient = d;
        recipe.justification = "N = " + std::to_string(d + 1) + " lies in the excluded set " +
                               excl_str() + "; take the double of W with N = " +
                               std::to_string(d) + " instead";
        return recipe;
    }
    if (k != 2) {
        for (int j = k; d - j >= 4 * k - 1; ++j) {
            if (!excluded.count(d - j + 1)) {
                recipe.kind = Recipe::Kind::SphereProduct;
                recipe.ambient = d - j + 1;
                recipe.sphere_factor = j;
                recipe.justification =
                    "product of the boundary construction at dimension " +
                    std::to_string(d - j) + " with S^" + std::to_string(j) +
                    " (sphere factor >= k preserves (k-1)-connectivity)";
                return recipe;
            }
        }
    }
    recipe.kind = Recipe::Kind::Refusal;
    recipe.justification = "no recipe available for k = " + std::to_string(k) +
                           ", d = " + std::to_string(d);
    return recipe;
}

bool connectivity_report(const BettiVector& betti_x, int N, int k) {
    auto report = boundary_report(betti_x, N);
    for (int i = 1; i <= k - 1 && i < N; ++i) {
        const auto& st = report.betti_v[static_cast<std::size_t>(i)];
        if (!(st.exact() && st.lo == 0)) return false;
    }
    return true;
}

}  // namespace masseykit::duality
