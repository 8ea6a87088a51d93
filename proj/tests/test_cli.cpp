#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "masseykit/cli.hpp"
#include "masseykit/spaces.hpp"

using masseykit::cli::run;
using nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

/// Writes `content` to a unique temp file; removed at destruction.
struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& content, const std::string& suffix = ".txt") {
        static int counter = 0;
        path = std::filesystem::temp_directory_path() /
               ("masseykit_cli_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++) + suffix);
        std::ofstream(path) << content;
    }
    ~TempFile() { std::filesystem::remove(path); }
    std::string str() const { return path.string(); }
};

TempFile x222_file() { return TempFile(masseykit::spaces::to_text(masseykit::spaces::spec_X(2, 2, 2))); }

}  // namespace

TEST_CASE("cli betti") {
    auto f = x222_file();
    auto r = invoke({"betti", f.str()});
    CHECK(r.code == 0);
    CHECK(r.out.find("b_2 = 3") != std::string::npos);
    CHECK(r.out.find("b_5 = 1") != std::string::npos);

    auto rj = invoke({"betti", f.str(), "--json"});
    CHECK(rj.code == 0);
    auto j = json::parse(rj.out);
    CHECK(j["betti"] == json::array({1, 0, 3, 0, 0, 1}));
    CHECK(j["space"] == "X");
}

TEST_CASE("cli cup and massey on the three-sphere space") {
    auto f = x222_file();
    auto cup = invoke({"cup", f.str(), "x1", "x2", "--json"});
    CHECK(cup.code == 0);
    CHECK(json::parse(cup.out)["zero"] == true);

    auto m = invoke({"massey", f.str(), "x1", "x2", "x3", "--json"});
    CHECK(m.code == 0);
    auto j = json::parse(m.out);
    CHECK(j["degree"] == 5);
    CHECK(j["indeterminacy_dim"] == 0);
    CHECK(j["zero_coset"] == false);
    REQUIRE(j["canonical"].size() == 1);
    bool pm1 = j["canonical"][0] == "1" || j["canonical"][0] == "-1";
    CHECK(pm1);
}

TEST_CASE("cli massey undefined product is a mathematical refusal") {
    // S^2 with a 4-cell attached along [a1,a1]: the cup square is nonzero
    TempFile f("space P {\n sphere a1 : 2\n cell e4 = [a1,a1]\n}\n");
    auto r = invoke({"massey", f.str(), "a1", "a1", "a1", "--cutoff", "7"});
    CHECK(r.code == 1);
    CHECK(r.err.find("undefined") != std::string::npos);
}

TEST_CASE("cli scan and rank") {
    auto f = x222_file();
    auto s = invoke({"scan", f.str(), "--json"});
    CHECK(s.code == 0);
    CHECK(!json::parse(s.out).empty());

    auto r = invoke({"rank", f.str(), "x1,x2,x3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("rank 1") != std::string::npos);

    auto bad = invoke({"rank", f.str(), "x1,x2"});
    CHECK(bad.code == 2);
}

TEST_CASE("cli boundary") {
    auto r = invoke({"boundary", "--betti", "1,0,3,0,0,1", "--ambient", "8", "--k", "2",
                     "--json"});
    CHECK(r.code == 0);
    auto j = json::parse(r.out);
    REQUIRE(j["betti_v"].size() == 8);
    CHECK(j["betti_v"][2]["lo"] == 4);
    CHECK(j["betti_v"][2]["hi"] == 4);
    CHECK(j["indeterminacy_zero"]["holds"] == true);

    auto text = invoke({"boundary", "--betti", "1,0,3,0,0,1", "--ambient", "8"});
    CHECK(text.code == 0);
    CHECK(text.out.find("b_2(V) = 4") != std::string::npos);

    CHECK(invoke({"boundary", "--betti", "1,0,x", "--ambient", "8"}).code == 2);
    CHECK(invoke({"boundary", "--betti", "1,0,3,0,0,1", "--ambient", "5"}).code == 2);
}

TEST_CASE("cli excluded") {
    auto first = invoke({"excluded", "--k", "2", "--json"});
    CHECK(first.code == 0);
    CHECK(json::parse(first.out)["excluded"] == json::array({9, 10}));

    auto full = invoke({"excluded", "--k", "2", "--mode", "full", "--json"});
    CHECK(json::parse(full.out)["excluded"] == json::array({8, 9, 10, 11}));

    CHECK(invoke({"excluded", "--k", "2", "--mode", "nonsense"}).code == 2);
}

TEST_CASE("cli plan") {
    auto refusal = invoke({"plan", "--k", "2", "--dim", "5"});
    CHECK(refusal.code == 1);
    CHECK(refusal.out.find("formal") != std::string::npos);

    auto boundary = invoke({"plan", "--k", "2", "--dim", "7", "--json"});
    CHECK(boundary.code == 0);
    auto j = json::parse(boundary.out);
    CHECK(j["kind"] == "boundary");
    CHECK(j["ambient"] == 8);
}

TEST_CASE("cli embed-check and embed-build") {
    TempFile good("dim 2\nv 1 1\nv -1 1\nv -1 -1\nv 1 -1\ns 0 1\ns 1 2\ns 2 3\ns 3 0\n", ".geom");
    auto ok = invoke({"embed-check", good.str(), "--json"});
    CHECK(ok.code == 0);
    CHECK(json::parse(ok.out)["ok"] == true);

    TempFile crossing("dim 2\nv 0 0\nv 2 2\nv 0 2\nv 2 0\ns 0 1\ns 2 3\n", ".geom");
    auto bad = invoke({"embed-check", crossing.str(), "--json"});
    CHECK(bad.code == 1);
    auto jb = json::parse(bad.out);
    CHECK(jb["ok"] == false);
    CHECK(jb["witness"] == json::array({0, 1}));

    TempFile problem(
        "complex B\ndim 2\n"
        "v 1 1\nv -1 1\nv -1 -1\nv 1 -1\nv 0 0\n"
        "s 0 1 4\ns 1 2 4\ns 2 3 4\ns 3 0 4\n"
        "a 0 1\na 1 2\na 2 3\na 3 0\n"
        "complex Y\ndim 2\nv 1 0\nv 3 0\ns 0 1\n"
        "map 0->0\nmap 1->1\nmap 2->0\nmap 3->1\n",
        ".prob");
    TempFile dest("", ".geom");
    auto built = invoke({"embed-build", problem.str(), "--out", dest.str(), "--json"});
    CHECK(built.code == 0);
    auto j = json::parse(built.out);
    CHECK(j["ambient"] == 4);
    CHECK(j["euler_characteristic"] == 2);
    auto verify = invoke({"embed-check", dest.str()});
    CHECK(verify.code == 0);
}

TEST_CASE("cli input errors and help") {
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({"betti", "/nonexistent/file.space"}).code == 2);
    auto f = x222_file();
    CHECK(invoke({"cup", f.str(), "x1", "nosuch"}).code == 2);
    CHECK(invoke({"massey", f.str(), "x1", "x2", "x3", "--cutoff", "4"}).code == 2);
    TempFile bad("space X { sphere a1 : 1 }\n");
    CHECK(invoke({"betti", bad.str()}).code == 2);
    CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("cli json output is deterministic") {
    auto f = x222_file();
    for (auto args : std::vector<std::vector<std::string>>{
             {"massey", f.str(), "x1", "x2", "x3", "--json"},
             {"boundary", "--betti", "1,0,3,0,0,1", "--ambient", "8", "--k", "2", "--json"},
             {"plan", "--k", "3", "--dim", "13", "--json"}}) {
        auto a = invoke(args);
        auto b = invoke(args);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("cli never crashes on fuzzed input") {
    std::mt19937 rng(20260823);
    const std::vector<std::string> verbs = {"betti",    "cup",  "massey",      "scan",
                                            "rank",     "boundary", "excluded", "plan",
                                            "embed-check", "embed-build", "bogus"};
    auto token = [&] {
        static const std::string alphabet =
            "abcxyz0123456789-_,./[]{}:= \t#";
        std::uniform_int_distribution<std::size_t> len(0, 12);
        std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
        std::string t;
        for (std::size_t i = 0, n = len(rng); i < n; ++i) t += alphabet[pick(rng)];
        return t;
    };
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::string> args{verbs[rng() % verbs.size()]};
        std::uniform_int_distribution<int> extra(0, 4);
        for (int i = 0, n = extra(rng); i < n; ++i) args.push_back(token());
        auto r = invoke(args);
        CHECK((r.code == 0 || r.code == 1 || r.code == 2));
    }
    // fuzzed space files: the parser must fail cleanly, never crash
    for (int trial = 0; trial < 100; ++trial) {
        std::string content = "space F {\n";
        std::uniform_int_distribution<int> lines(0, 6);
        for (int i = 0, n = lines(rng); i < n; ++i) content += token() + "\n";
        content += "}\n";
        TempFile f(content);
        auto r = invoke({"betti", f.str()});
        CHECK((r.code == 0 || r.code == 2));
    }
}
