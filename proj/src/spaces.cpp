#include "masseykit/spaces.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <tuple>

namespace masseykit::spaces {

namespace {

std::string cyclic_word(int m) {  // [x_m,[x_{m+1},x_{m+2}]] with indices mod 4, 1-based
    auto x = [](int i) { return "x" + std::to_string((i - 1) % 4 + 1); };
    return "[" + x(m) + ",[" + x(m + 1) + "," + x(m + 2) + "]]";
}

/// Declared dimension of a cell name: its first maximal digit run
/// ("e5" -> 5, "e5_2" -> 5). Missing digits -> -1.
int name_dimension(const std::string& name) {
    std::size_t i = 0;
    while (i < name.size() && !std::isdigit(static_cast<unsigned char>(name[i]))) ++i;
    if (i == name.size()) return -1;
    int value = 0;
    while (i < name.size() && std::isdigit(static_cast<unsigned char>(name[i])))
        value = value * 10 + (name[i++] - '0');
    return value;
}

int word_lie_degree(const gradedlie::BracketExpr& w, const std::map<std::string, int>& degrees) {
    if (w.is_leaf()) {
        auto it = degrees.find(w.name);
        if (it == degrees.end())
            throw ContractViolation("unknown generator '" + w.name + "' in attaching word");
        return it->second;
    }
    return word_lie_degree(*w.left, degrees) + word_lie_degree(*w.right, degrees);
}

/// Whitehead-to-bracket dictionary sign (documented in the README): each
/// bracket node [x,y] of an attaching word realizes to (−1)^{dim y}·[x,y]
/// in the Lie model, where dim y is the cell dimension of y (Lie degree
/// plus one). This is compatible with the symmetry of the Whitehead product.
int dictionary_sign(const gradedlie::BracketExpr& w, const std::map<std::string, int>& degrees) {
    if (w.is_leaf()) return 1;
    int sign = dictionary_sign(*w.left, degrees) * dictionary_sign(*w.right, degrees);
    int dim_right = word_lie_degree(*w.right, degrees) + 1;
    return dim_right % 2 == 0 ? sign : -sign;
}

}  // namespace

int SpaceSpec::top_dimension() const {
    int top = 0;
    for (const auto& s : spheres) top = std::max(top, s.degree);
    for (const auto& c : cells) top = std::max(top, c.dimension);
    return top;
}

bool operator==(const SpaceSpec& a, const SpaceSpec& b) {
    auto sph = [](const SphereSpec& s) { return std::make_pair(s.name, s.degree); };
    auto cel = [](const CellSpec& c) { return std::make_tuple(c.name, c.dimension, c.word); };
    if (a.name != b.name || a.spheres.size() != b.spheres.size() || a.cells.size() != b.cells.size())
        return false;
    for (std::size_t i = 0; i < a.spheres.size(); ++i)
        if (sph(a.spheres[i]) != sph(b.spheres[i])) return false;
    for (std::size_t i = 0; i < a.cells.size(); ++i)
        if (cel(a.cells[i]) != cel(b.cells[i])) return false;
    return true;
}

gradedlie::DgLieModel wedge_of_spheres(const std::vector<int>& degrees, int lie_cutoff) {
    std::vector<gradedlie::LieGenerator> gens;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (degrees[i] < 2)
            throw ContractViolation("wedge_of_spheres: sphere degree " +
                                    std::to_string(degrees[i]) + " is not simply connected");
        gens.push_back({"x" + std::to_string(i + 1), degrees[i] - 1});
    }
    return gradedlie::DgLieModel(std::move(gens), lie_cutoff);
}

gradedlie::DgLieModel build_model(const SpaceSpec& spec, int lie_cutoff) {
    if (spec.spheres.empty())
        throw ContractViolation("build_model: space '" + spec.name + "' has no spheres");
    if (lie_cutoff < 0) lie_cutoff = spec.top_dimension();
    std::vector<gradedlie::LieGenerator> gens;
    for (const auto& s : spec.spheres) {
        if (s.degree < 2)
            throw ContractViolation("build_model: sphere '" + s.name +
                                    "' has degree < 2 (not simply connected)");
        gens.push_back({s.name, s.degree - 1});
    }
    std::map<std::string, int> lie_degrees;
    for (const auto& s : spec.spheres) lie_degrees[s.name] = s.degree - 1;
    gradedlie::DgLieModel model(std::move(gens), lie_cutoff);
    for (const auto& c : spec.cells) {
        auto word = gradedlie::parse_bracket_word(c.word);
        auto attaching = Rat(dictionary_sign(word, lie_degrees)) *
                         model.algebra().element_of_word(word);
        model = model.attach_differential({c.name, c.dimension - 1}, attaching);
        lie_degrees[c.name] = c.dimension - 1;
    }
    return model;
}

SpaceSpec spec_X(int k1, int k2, int k3) {
    for (int k : {k1, k2, k3})
        if (k < 2) throw ContractViolation("paper_space_X: sphere degrees must be >= 2");
    const int m = k1 + k2 + k3 - 1;
    SpaceSpec spec;
    spec.name = "X";
    spec.spheres = {{"x1", k1}, {"x2", k2}, {"x3", k3}};
    spec.cells = {{"e" + std::to_string(m), m, "[x1,[x2,x3]]"}};
    return spec;
}

SpaceSpec spec_Z(int k) {
    if (k < 2) throw ContractViolation("paper_space_Z: k must be >= 2");
    const int m = 3 * k - 1;
    SpaceSpec spec;
    spec.name = "Z";
    spec.spheres = {{"x1", k}, {"x2", k}, {"x3", k}, {"x4", k}};
    spec.cells = {{"e" + std::to_string(m), m, "[x1,[x2,x3]]"}};
    return spec;
}

SpaceSpec spec_X4(int k) {
    if (k < 2) throw ContractViolation("paper_space_X4: k must be >= 2");
    const int m = 3 * k - 1;
    SpaceSpec spec;
    spec.name = "X4";
    spec.spheres = {{"x1", k}, {"x2", k}, {"x3", k}, {"x4", k}};
    for (int i = 1; i <= 4; ++i)
        spec.cells.push_back(
            {"e" + std::to_string(m) + "_" + std::to_string(i), m, cyclic_word(i)});
    return spec;
}

gradedlie::DgLieModel paper_space_X(int k1, int k2, int k3, int lie_cutoff) {
    return build_model(spec_X(k1, k2, k3), lie_cutoff);
}

gradedlie::DgLieModel paper_space_Z(int k, int lie_cutoff) {
    return build_model(spec_Z(k), lie_cutoff);
}

gradedlie::DgLieModel paper_space_X4(int k, int lie_cutoff) {
    return build_model(spec_X4(k), lie_cutoff);
}

// ---------------------------------------------------------------------------
// DSL parser
// ---------------------------------------------------------------------------

namespace {

struct Token {
    enum Kind { Ident, Integer, Punct, End } kind;
    std::string text;
    int line, column;
};

struct Lexer {
    const std::string& text;
    std::size_t pos = 0;
    int line = 1, column = 1;

    explicit Lexer(const std::string& t) : text(t) {}

    [[noreturn]] void fail(int l, int c, const std::string& msg) const {
        throw ContractViolation("line " + std::to_string(l) + ", column " + std::to_string(c) +
                                ": " + msg);
    }

    void advance() {
        if (pos < text.size() && text[pos] == '\n') { ++line; column = 1; }
        else ++column;
        ++pos;
    }

    Token next() {
        while (pos < text.size()) {
            char ch = text[pos];
            if (ch == '#') {  // comment to end of line
                while (pos < text.size() && text[pos] != '\n') advance();
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(ch))) { advance(); continue; }
            break;
        }
        if (pos >= text.size()) return {Token::End, "", line, column};
        int l = line, c = column;
        char ch = text[pos];
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::string word;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
                word += text[pos];
                advance();
            }
            return {Token::Ident, word, l, c};
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::string digits;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                digits += text[pos];
                advance();
            }
            return {Token::Integer, digits, l, c};
        }
        if (std::string("{}:=[],").find(ch) != std::string::npos) {
            advance();
            return {Token::Punct, std::string(1, ch), l, c};
        }
        fail(l, c, std::string("unexpected character '") + ch + "'");
    }
};

struct Parser {
    Lexer lex;
    Token tok;

    explicit Parser(const std::string& text) : lex(text) { tok = lex.next(); }

    [[noreturn]] void fail(const std::string& msg) const { lex.fail(tok.line, tok.column, msg); }

    void expect_punct(const std::string& p) {
        if (tok.kind != Token::Punct || tok.text != p)
            fail("expected '" + p + "', found '" + tok.text + "'");
        tok = lex.next();
    }

    std::string expect_ident(const char* what) {
        if (tok.kind != Token::Ident) fail(std::string("expected ") + what);
        std::string name = tok.text;
        tok = lex.next();
        return name;
    }

    int expect_integer() {
        if (tok.kind != Token::Integer) fail("expected integer");
        if (tok.text.size() > 6) fail("integer out of range");
        int value = std::stoi(tok.text);
        tok = lex.next();
        return value;
    }

    // bracket word, re-serialized without whitespace
    std::string parse_word() {
        if (tok.kind == Token::Ident) {
            std::string name = tok.text;
            tok = lex.next();
            return name;
        }
        if (tok.kind == Token::Punct && tok.text == "[") {
            tok = lex.next();
            std::string left = parse_word();
            expect_punct(",");
            std::string right = parse_word();
            expect_punct("]");
            return "[" + left + "," + right + "]";
        }
        fail("expected a generator name or '['");
    }

    SpaceSpec parse() {
        SpaceSpec spec;
        if (tok.kind != Token::Ident || tok.text != "space") fail("expected 'space'");
        tok = lex.next();
        spec.name = expect_ident("space name");
        expect_punct("{");
        std::map<std::string, int> lie_degrees;  // declared generator -> Lie degree
        while (!(tok.kind == Token::Punct && tok.text == "}")) {
            if (tok.kind != Token::Ident) fail("expected 'sphere', 'cell' or '}'");
            if (tok.text == "sphere") {
                int l = tok.line, c = tok.column;
                tok = lex.next();
                SphereSpec s;
                s.name = expect_ident("sphere name");
                expect_punct(":");
                s.degree = expect_integer();
                if (s.degree < 2)
                    lex.fail(l, c, "sphere '" + s.name + "' has degree " +
                                       std::to_string(s.degree) + " (must be >= 2)");
                if (lie_degrees.count(s.name))
                    lex.fail(l, c, "duplicate generator name '" + s.name + "'");
                lie_degrees[s.name] = s.degree - 1;
                spec.spheres.push_back(std::move(s));
            } else if (tok.text == "cell") {
                int l = tok.line, c = tok.column;
                tok = lex.next();
                CellSpec cell;
                cell.name = expect_ident("cell name");
                expect_punct("=");
                cell.word = parse_word();
                if (lie_degrees.count(cell.name))
                    lex.fail(l, c, "duplicate generator name '" + cell.name + "'");
                int declared = name_dimension(cell.name);
                if (declared < 0)
                    lex.fail(l, c, "cell name '" + cell.name +
                                       "' must declare its dimension as digits (e.g. e5)");
                int needed = 0;
                try {
                    needed = word_lie_degree(gradedlie::parse_bracket_word(cell.word),
                                             lie_degrees) + 2;
                } catch (const ContractViolation& e) {
                    lex.fail(l, c, e.what());
                }
                if (declared != needed)
                    lex.fail(l, c, "cell '" + cell.name + "' declares dimension " +
                                       std::to_string(declared) + " but its attaching word forces " +
                                       std::to_string(needed));
                cell.dimension = declared;
                lie_degrees[cell.name] = cell.dimension - 1;
                spec.cells.push_back(std::move(cell));
            } else {
                fail("expected 'sphere', 'cell' or '}'");
            }
        }
        tok = lex.next();
        if (tok.kind != Token::End) fail("trailing input after space definition");
        if (spec.spheres.empty()) throw ContractViolation("space '" + spec.name + "' has no spheres");
        return spec;
    }
};

}  // namespace

SpaceSpec parse_space_file(const std::string& text) { return Parser(text).parse(); }

std::string to_text(const SpaceSpec& spec) {
    std::ostringstream out;
    out << "space " << spec.name << " {\n";
    for (const auto& s : spec.spheres)
        out << "  sphere " << s.name << " : " << s.degree << "\n";
    for (const auto& c : spec.cells)
        out << "  cell " << c.name << " = " << c.word << "\n";
    out << "}\n";
    return out.str();
}

}  // namespace masseykit::spaces
