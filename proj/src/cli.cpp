#include "masseykit/cli.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "masseykit/cdga.hpp"
#include "masseykit/duality.hpp"
#include "masseykit/massey.hpp"
#include "masseykit/plembed.hpp"
#include "masseykit/spaces.hpp"

namespace masseykit::cli {

namespace {

using nlohmann::ordered_json;

constexpr int kOk = 0, kRefusal = 1, kInputError = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ContractViolation("cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ordered_json coords_json(const RatVec& v) {
    ordered_json j = ordered_json::array();
    for (const auto& x : v) j.push_back(rat_to_string(x));
    return j;
}

std::string coords_text(const RatVec& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += rat_to_string(v[i]);
    }
    return s + "]";
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

int parse_int_arg(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ContractViolation("expected an integer for " + what + ", found '" + s + "'");
    }
}

/// A space file loaded through the cutoff discipline: the Lie model is
/// truncated one below the cochain cutoff, which is exactly what the
/// cochain algebra needs.
struct SpaceSession {
    spaces::SpaceSpec spec;
    gradedlie::DgLieModel model;
    cdga::CochainAlgebra alg;
};

SpaceSession load_space(const std::string& path, int cutoff_flag) {
    auto spec = spaces::parse_space_file(read_file(path));
    int cutoff = cutoff_flag > 0 ? cutoff_flag : spec.top_dimension() + 1;
    if (cutoff < 2) throw ContractViolation("cutoff must be at least 2");
    auto model = spaces::build_model(spec, cutoff - 1);
    auto alg = cdga::chevalley_eilenberg(model, cutoff);
    return {std::move(spec), std::move(model), std::move(alg)};
}

void emit(bool json, const ordered_json& j, const std::string& text, std::ostream& out) {
    if (json)
        out << j.dump(2) << "\n";
    else
        out << text;
}

ordered_json massey_json(const massey::MasseyResult& r) {
    ordered_json j;
    j["degree"] = r.degree;
    j["representative"] = coords_json(r.representative);
    j["indeterminacy_dim"] = r.indeterminacy.dim();
    j["zero_coset"] = r.zero_coset;
    j["canonical"] = coords_json(r.canonical);
    return j;
}

std::string massey_text(const massey::MasseyResult& r) {
    std::ostringstream t;
    t << "degree " << r.degree << "\n"
      << "representative " << coords_text(r.representative) << "\n"
      << "indeterminacy dimension " << r.indeterminacy.dim() << "\n"
      << "canonical " << coords_text(r.canonical) << "\n"
      << "zero coset: " << (r.zero_coset ? "yes" : "no") << "\n";
    return t.str();
}

int run_checked(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return run_checked(args, out, err);
    } catch (const massey::MasseyUndefined& e) {
        err << "undefined: " << e.what() << "\n";
        return kRefusal;
    } catch (const CutoffExceeded& e) {
        err << "input error: " << e.what() << " (raise --cutoff)\n";
        return kInputError;
    } catch (const ContractViolation& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    }
}

namespace {

int run_checked(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact cohomology, Massey products, boundary bookkeeping and PL "
                 "embeddings of double mapping cylinders",
                 "masseykit"};
    app.require_subcommand(1);
    bool json = false;
    int cutoff = -1;
    app.add_flag("--json", json, "emit a machine-readable JSON report");
    app.add_option("--cutoff", cutoff, "cochain truncation degree (default: top cell + 1)");

    std::string file, out_path, betti_list, mode = "first";
    std::string gen_u, gen_v, gen_w;
    std::vector<std::string> triples;
    int max_degree = -1, ambient = 0, k_flag = -1, dim_flag = 0;

    auto* betti = app.add_subcommand("betti", "rational Betti numbers of a space file");
    betti->add_option("FILE", file)->required();
    betti->add_option("--max-degree", max_degree);

    auto* cup_cmd = app.add_subcommand("cup", "cup product of two generator classes");
    cup_cmd->add_option("FILE", file)->required();
    cup_cmd->add_option("U", gen_u)->required();
    cup_cmd->add_option("V", gen_v)->required();

    auto* massey_cmd = app.add_subcommand("massey", "triple Massey product of generator classes");
    massey_cmd->add_option("FILE", file)->required();
    massey_cmd->add_option("U", gen_u)->required();
    massey_cmd->add_option("V", gen_v)->required();
    massey_cmd->add_option("W", gen_w)->required();

    auto* scan = app.add_subcommand("scan", "scan for nonzero triple products");
    scan->add_option("FILE", file)->required();
    scan->add_option("--max-degree", max_degree);

    auto* rank = app.add_subcommand("rank", "rank of canonical Massey representatives");
    rank->add_option("FILE", file)->required();
    rank->add_option("TRIPLE", triples, "comma-separated generator triples, e.g. g1,g2,g3")
        ->required()
        ->expected(-1);

    auto* boundary = app.add_subcommand("boundary", "Betti numbers of a neighborhood boundary");
    boundary->add_option("--betti", betti_list, "comma-separated Betti numbers of X")->required();
    boundary->add_option("--ambient", ambient, "ambient dimension N")->required();
    boundary->add_option("--k", k_flag, "connectivity parameter for the diagnostics");

    auto* excluded = app.add_subcommand("excluded", "excluded ambient dimensions");
    excluded->add_option("--k", k_flag)->required();
    excluded->add_option("--mode", mode)->check(CLI::IsMember({"first", "full"}));

    auto* plan = app.add_subcommand("plan", "recipe for a (k-1)-connected d-manifold");
    plan->add_option("--k", k_flag)->required();
    plan->add_option("--dim", dim_flag, "target manifold dimension d")->required();

    auto* embed_build = app.add_subcommand("embed-build", "embed a double mapping cylinder");
    embed_build->add_option("GEOMFILE", file)->required();
    embed_build->add_option("--out", out_path)->required();

    auto* embed_check = app.add_subcommand("embed-check", "verify a geometric complex");
    embed_check->add_option("GEOMFILE", file)->required();

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    }

    if (*betti) {
        auto session = load_space(file, cutoff);
        int top = session.alg.cutoff() - 1;
        if (max_degree >= 0) top = std::min(top, max_degree);
        std::vector<std::size_t> dims;
        for (int d = 0; d <= top; ++d) dims.push_back(session.alg.cohomology(d).dim());
        ordered_json j;
        j["space"] = session.spec.name;
        j["betti"] = dims;
        std::ostringstream t;
        t << "space " << session.spec.name << "\n";
        for (int d = 0; d <= top; ++d) t << "b_" << d << " = " << dims[static_cast<std::size_t>(d)] << "\n";
        emit(json, j, t.str(), out);
        return kOk;
    }

    if (*cup_cmd) {
        auto session = load_space(file, cutoff);
        auto u = session.alg.generator_class(gen_u);
        auto v = session.alg.generator_class(gen_v);
        auto prod = cdga::cup(session.alg, u, v);
        ordered_json j;
        j["degree"] = prod.degree;
        j["coords"] = coords_json(prod.coords);
        j["zero"] = prod.is_zero();
        std::ostringstream t;
        t << "degree " << prod.degree << "\n"
          << "coords " << coords_text(prod.coords) << "\n"
          << "zero: " << (prod.is_zero() ? "yes" : "no") << "\n";
        emit(json, j, t.str(), out);
        return kOk;
    }

    if (*massey_cmd) {
        auto session = load_space(file, cutoff);
        auto result = massey::massey_triple(session.alg, session.alg.generator_class(gen_u),
                                            session.alg.generator_class(gen_v),
                                            session.alg.generator_class(gen_w));
        emit(json, massey_json(result), massey_text(result), out);
        return kOk;
    }

    if (*scan) {
        auto session = load_space(file, cutoff);
        int top = session.alg.cutoff() - 1;
        if (max_degree >= 0) top = std::min(top, max_degree);
        auto entries = massey::formality_scan(session.alg, top);
        ordered_json j = ordered_json::array();
        std::ostringstream t;
        for (const auto& e : entries) {
            ordered_json je;
            je["degrees"] = e.degrees;
            je["indices"] = e.indices;
            je["result"] = massey_json(e.result);
            j.push_back(std::move(je));
            t << "degrees (" << e.degrees[0] << "," << e.degrees[1] << "," << e.degrees[2]
              << ") indices (" << e.indices[0] << "," << e.indices[1] << "," << e.indices[2]
              << ") canonical " << coords_text(e.result.canonical) << "\n";
        }
        if (entries.empty()) t << "no nonzero triple products up to degree " << top << "\n";
        emit(json, j, t.str(), out);
        return kOk;
    }

    if (*rank) {
        auto session = load_space(file, cutoff);
        std::vector<std::array<cdga::CohomologyClass, 3>> classes;
        for (const auto& triple : triples) {
            auto names = split(triple, ',');
            if (names.size() != 3)
                throw ContractViolation("triple '" + triple + "' must name three generators");
            classes.push_back({session.alg.generator_class(names[0]),
                               session.alg.generator_class(names[1]),
                               session.alg.generator_class(names[2])});
        }
        auto r = massey::massey_rank(session.alg, classes);
        ordered_json j;
        j["triples"] = classes.size();
        j["rank"] = r;
        emit(json, j, "rank " + std::to_string(r) + " from " + std::to_string(classes.size()) +
                      " triples\n", out);
        return kOk;
    }

    if (*boundary) {
        duality::BettiVector bx;
        for (const auto& part : split(betti_list, ','))
            bx.push_back(parse_int_arg(part, "--betti"));
        auto report = duality::boundary_report(bx, ambient, k_flag);
        ordered_json j;
        j["ambient"] = report.ambient;
        ordered_json degrees = ordered_json::array();
        std::ostringstream t;
        for (std::size_t i = 0; i < report.betti_v.size(); ++i) {
            const auto& st = report.betti_v[i];
            degrees.push_back(ordered_json{{"lo", st.lo}, {"hi", st.hi}});
            if (st.exact())
                t << "b_" << i << "(V) = " << st.lo << "\n";
            else
                t << "b_" << i << "(V) in [" << st.lo << ", " << st.hi << "]\n";
        }
        j["betti_v"] = std::move(degrees);
        if (report.k) {
            auto diag = [&](const char* name, const duality::Diagnostic& d) {
                j[name] = ordered_json{{"holds", d.holds}, {"justification", d.justification}};
                t << name << ": " << (d.holds ? "holds" : "fails") << " (" << d.justification
                  << ")\n";
            };
            diag("indeterminacy_zero", report.indeterminacy_zero);
            diag("injective_top", report.injective_top);
            diag("surjective_k", report.surjective_k);
            diag("iso_top", report.iso_top);
        }
        emit(json, j, t.str(), out);
        return kOk;
    }

    if (*excluded) {
        std::set<duality::Requirement> reqs =
            mode == "first"
                ? std::set<duality::Requirement>{duality::Requirement::IndeterminacyZero,
                                                 duality::Requirement::InjectiveTop}
                : std::set<duality::Requirement>{duality::Requirement::IndeterminacyZero,
                                                 duality::Requirement::SurjectiveK,
                                                 duality::Requirement::IsoTop};
        auto dims = duality::excluded_ambient_dims(k_flag, reqs);
        ordered_json j;
        j["k"] = k_flag;
        j["mode"] = mode;
        j["excluded"] = dims;
        std::ostringstream t;
        t << "excluded ambient dimensions:";
        for (int n : dims) t << " " << n;
        t << "\n";
        emit(json, j, t.str(), out);
        return kOk;
    }

    if (*plan) {
        auto recipe = duality::dimension_planner(k_flag, dim_flag);
        const char* kind = nullptr;
        switch (recipe.kind) {
            case duality::Recipe::Kind::Refusal: kind = "refusal"; break;
            case duality::Recipe::Kind::Boundary: kind = "boundary"; break;
            case duality::Recipe::Kind::DoubleOfW: kind = "double"; break;
            case duality::Recipe::Kind::SphereProduct: kind = "sphere-product"; break;
        }
        ordered_json j;
        j["kind"] = kind;
        j["k"] = recipe.k;
        j["d"] = recipe.d;
        j["ambient"] = recipe.ambient;
        if (recipe.kind == duality::Recipe::Kind::SphereProduct)
            j["sphere_factor"] = recipe.sphere_factor;
        j["justification"] = recipe.justification;
        std::ostringstream t;
        t << "recipe: " << kind << "\n";
        if (recipe.ambient > 0) t << "ambient N = " << recipe.ambient << "\n";
        if (recipe.kind == duality::Recipe::Kind::SphereProduct)
            t << "sphere factor S^" << recipe.sphere_factor << "\n";
        t << recipe.justification << "\n";
        emit(json, j, t.str(), out);
        return recipe.kind == duality::Recipe::Kind::Refusal ? kRefusal : kOk;
    }

    if (*embed_build) {
        auto problem = plembed::parse_embedding_problem(read_file(file));
        auto z = plembed::embed_double_cylinder(problem.b, problem.a, problem.y, problem.f);
        std::ofstream dst(out_path, std::ios::binary);
        if (!dst) throw ContractViolation("cannot write file '" + out_path + "'");
        dst << plembed::to_text(z);
        ordered_json j;
        j["ambient"] = z.ambient_dim;
        j["vertices"] = z.vertices.size();
        j["simplices"] = z.simplices.size();
        j["euler_characteristic"] = plembed::euler_characteristic(z);
        j["out"] = out_path;
        std::ostringstream t;
        t << "embedded in R^" << z.ambient_dim << ": " << z.vertices.size() << " vertices, "
          << z.simplices.size() << " simplices, chi = " << plembed::euler_characteristic(z)
          << "\nwrote " << out_path << "\n";
        emit(json, j, t.str(), out);
        return kOk;
    }

    if (*embed_check) {
        auto c = plembed::parse_geometry(read_file(file));
        auto check = plembed::verify_embedding(c);
        ordered_json j;
        j["ok"] = check.ok;
        j["simplices"] = c.simplices.size();
        j["euler_characteristic"] = plembed::euler_characteristic(c);
        std::ostringstream t;
        if (check.ok) {
            t << "embedding verified: " << c.simplices.size() << " simplices, chi = "
              << plembed::euler_characteristic(c) << "\n";
        } else {
            j["witness"] = ordered_json{check.first, check.second};
            t << "crossing between simplices " << check.first << " and " << check.second << "\n";
        }
        emit(json, j, t.str(), out);
        return check.ok ? kOk : kRefusal;
    }

    err << "input error: no command given\n";
    return kInputError;
}

}  // namespace

}  // namespace masseykit::cli
