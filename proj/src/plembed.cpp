#include "masseykit/plembed.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "masseykit/ratalg.hpp"

namespace masseykit::plembed {

namespace {

bool affinely_independent(const std::vector<RatVec>& pts) {
    if (pts.size() <= 1) return true;
    std::vector<RatVec> rows;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        RatVec r(pts[0].size());
        for (std::size_t j = 0; j < r.size(); ++j) r[j] = pts[i][j] - pts[0][j];
        rows.push_back(std::move(r));
    }
    std::size_t want = rows.size();
    return ratalg::rref(rows).size() == want;
}

bool is_zero_vec(const RatVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

/// index of the vertex at `point`, if any
std::optional<std::size_t> vertex_at(const GeomComplex& c, const RatVec& point) {
    for (std::size_t i = 0; i < c.vertices.size(); ++i)
        if (c.vertices[i] == point) return i;
    return std::nullopt;
}

bool spans_face(const std::vector<std::size_t>& verts,
                const std::vector<std::vector<std::size_t>>& simplices) {
    for (const auto& s : simplices)
        if (std::includes(s.begin(), s.end(), verts.begin(), verts.end())) return true;
    return false;
}

/// Incrementally built complex with coordinate-deduplicated vertices.
struct Builder {
    int dim;
    std::vector<RatVec> vertices;
    std::map<RatVec, std::size_t> index_of;
    std::vector<std::vector<std::size_t>> simplices;

    explicit Builder(int d) : dim(d) {}

    std::size_t vertex(const RatVec& coords) {
        auto it = index_of.find(coords);
        if (it != index_of.end()) return it->second;
        std::size_t id = vertices.size();
        vertices.push_back(coords);
        index_of.emplace(coords, id);
        return id;
    }

    void simplex(std::vector<std::size_t> verts) {
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        simplices.push_back(std::move(verts));
    }

    GeomComplex finish() { return make_complex(dim, std::move(vertices), std::move(simplices)); }
};

}  // namespace

GeomComplex make_complex(int ambient_dim, std::vector<RatVec> vertices,
                         std::vector<std::vector<std::size_t>> simplices) {
    if (ambient_dim < 0) throw ContractViolation("make_complex: negative ambient dimension");
    for (const auto& v : vertices)
        if (static_cast<int>(v.size()) != ambient_dim)
            throw ContractViolation("make_complex: vertex coordinate count mismatch");
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (vertices[i] == vertices[j])
                throw ContractViolation("make_complex: duplicate vertices " + std::to_string(i) +
                                        " and " + std::to_string(j));
    for (auto& s : simplices) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        if (s.empty()) throw ContractViolation("make_complex: empty simplex");
        if (s.back() >= vertices.size())
            throw ContractViolation("make_complex: simplex vertex index out of range");
        std::vector<RatVec> pts;
        for (std::size_t v : s) pts.push_back(vertices[v]);
        if (!affinely_independent(pts))
            throw ContractViolation("make_complex: affinely dependent simplex");
    }
    std::sort(simplices.begin(), simplices.end());
    simplices.erase(std::unique(simplices.begin(), simplices.end()), simplices.end());
    GeomComplex c;
    c.ambient_dim = ambient_dim;
    c.vertices = std::move(vertices);
    c.simplices = std::move(simplices);
    return c;
}

long euler_characteristic(const std::vector<std::vector<std::size_t>>& simplices) {
    std::set<std::vector<std::size_t>> faces;
    for (const auto& s : simplices) {
        if (s.size() > 20) throw ContractViolation("euler_characteristic: simplex too large");
        for (unsigned mask = 1; mask < (1u << s.size()); ++mask) {
            std::vector<std::size_t> face;
            for (std::size_t b = 0; b < s.size(); ++b)
                if (mask & (1u << b)) face.push_back(s[b]);
            faces.insert(std::move(face));
        }
    }
    long chi = 0;
    for (const auto& f : faces) chi += (f.size() % 2 != 0) ? 1 : -1;
    return chi;
}

void validate_simplicial(const GeomComplex& domain, const SimplicialMap& f,
                         const GeomComplex& codomain) {
    if (f.vertex_image.size() != domain.vertices.size())
        throw ContractViolation("simplicial map: vertex assignment size mismatch");
    for (std::size_t img : f.vertex_image)
        if (img >= codomain.vertices.size())
            throw ContractViolation("simplicial map: image vertex out of range");
    for (const auto& s : domain.simplices) {
        std::vector<std::size_t> image;
        for (std::size_t v : s) image.push_back(f.vertex_image[v]);
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());
        if (!spans_face(image, codomain.simplices))
            throw ContractViolation("simplicial map: a simplex image spans no codomain simplex");
    }
}

// ---------------------------------------------------------------------------
// radial_check
// ---------------------------------------------------------------------------

bool radial_check(const GeomComplex& a, const RatVec& origin) {
    if (static_cast<int>(origin.size()) != a.ambient_dim)
        throw ContractViolation("radial_check: origin dimension mismatch");
    const int m = a.ambient_dim;
    // coordinates relative to the origin
    std::vector<RatVec> rel;
    for (const auto& v : a.vertices) {
        RatVec r(v.size());
        for (std::size_t j = 0; j < v.size(); ++j) r[j] = v[j] - origin[j];
        rel.push_back(std::move(r));
    }
    std::optional<std::size_t> origin_vertex;
    for (std::size_t i = 0; i < rel.size(); ++i)
        if (is_zero_vec(rel[i])) origin_vertex = i;

    // Face closure: a violating pair (x, y) is classified by the exact
    // supports of its barycentric coordinates, which are faces.
    std::set<std::vector<std::size_t>> face_set;
    for (const auto& s : a.simplices) {
        if (s.size() > 20) throw ContractViolation("radial_check: simplex too large");
        for (unsigned mask = 1; mask < (1u << s.size()); ++mask) {
            std::vector<std::size_t> face;
            for (std::size_t b = 0; b < s.size(); ++b)
                if (mask & (1u << b)) face.push_back(s[b]);
            face_set.insert(std::move(face));
        }
    }
    std::vector<std::vector<std::size_t>> faces(face_set.begin(), face_set.end());

    auto is_origin_singleton = [&](const std::vector<std::size_t>& f) {
        return origin_vertex && f.size() == 1 && f[0] == *origin_vertex;
    };
    // exempt iff sigma, tau and the origin span a common simplex of A
    auto exempt = [&](const std::vector<std::size_t>& sigma,
                      const std::vector<std::size_t>& tau) {
        if (!origin_vertex) return false;
        std::vector<std::size_t> need;
        std::set_union(sigma.begin(), sigma.end(), tau.begin(), tau.end(),
                       std::back_inserter(need));
        if (!std::binary_search(need.begin(), need.end(), *origin_vertex)) {
            need.push_back(*origin_vertex);
            std::sort(need.begin(), need.end());
        }
        return spans_face(need, a.simplices);
    };

    // A face pair (sigma, tau) violates radiality iff there are x in the
    // relative interior of sigma and y in the relative interior of tau with
    // x = t*y and 0 < t < 1 (x = origin is impossible in relative interiors,
    // except for the origin singleton which we skip). Substituting
    // nu = t*mu for y's barycentric coordinates mu makes everything linear:
    //   sum lambda = 1,  sum lambda*u - sum nu*v = 0,  sum nu + s = 1.
    // The strict conditions lambda_j > 0, nu_i > 0 (this forces t > 0),
    // s > 0 are each maximized separately; all positive means a convex
    // average satisfies them simultaneously.
    for (const auto& sigma : faces) {
        if (is_origin_singleton(sigma)) continue;  // x would be the origin
        for (const auto& tau : faces) {
            if (is_origin_singleton(tau)) continue;  // y would be the origin
            if (exempt(sigma, tau)) continue;
            const std::size_t na = sigma.size(), nb = tau.size();
            const std::size_t cols = na + nb + 1;  // lambda, nu, slack s
            ratalg::RatMatrix e(static_cast<std::size_t>(m) + 2, cols);
            RatVec rhs(static_cast<std::size_t>(m) + 2, Rat(0));
            for (std::size_t j = 0; j < na; ++j) e.at(0, j) = 1;
            rhs[0] = 1;
            for (std::size_t i = 0; i < nb; ++i) e.at(1, na + i) = 1;
            e.at(1, na + nb) = 1;
            rhs[1] = 1;
            for (int d = 0; d < m; ++d) {
                for (std::size_t j = 0; j < na; ++j)
                    e.at(static_cast<std::size_t>(d) + 2, j) =
                        rel[sigma[j]][static_cast<std::size_t>(d)];
                for (std::size_t i = 0; i < nb; ++i)
                    e.at(static_cast<std::size_t>(d) + 2, na + i) =
                        -rel[tau[i]][static_cast<std::size_t>(d)];
            }
            bool violated = true;
            for (std::size_t var = 0; var < cols && violated; ++var) {
                RatVec g(cols, Rat(0));
                g[var] = 1;
                auto res = ratalg::simplex_maximize(e, rhs, g);
                if (res.status != ratalg::LpStatus::Optimal || res.value <= 0) violated = false;
            }
            if (violated) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// cylinders
// ---------------------------------------------------------------------------

AbstractComplex mapping_cylinder(const GeomComplex& domain, const SimplicialMap& f,
                                 const GeomComplex& codomain) {
    validate_simplicial(domain, f, codomain);
    const std::size_t n = domain.vertices.size();
    AbstractComplex out;
    out.vertex_count = n + codomain.vertices.size();
    for (const auto& s : codomain.simplices) {
        std::vector<std::size_t> shifted;
        for (std::size_t v : s) shifted.push_back(n + v);
        out.simplices.push_back(std::move(shifted));
    }
    for (const auto& s : domain.simplices)
        for (std::size_t i = 0; i < s.size(); ++i) {
            std::vector<std::size_t> prism;
            for (std::size_t j = 0; j <= i; ++j) prism.push_back(s[j]);
            for (std::size_t j = i; j < s.size(); ++j) prism.push_back(n + f.vertex_image[s[j]]);
            std::sort(prism.begin(), prism.end());
            prism.erase(std::unique(prism.begin(), prism.end()), prism.end());
            out.simplices.push_back(std::move(prism));
        }
    std::sort(out.simplices.begin(), out.simplices.end());
    out.simplices.erase(std::unique(out.simplices.begin(), out.simplices.end()),
                        out.simplices.end());
    return out;
}

GeomComplex embed_double_cylinder(const GeomComplex& b, const GeomComplex& a,
                                  const GeomComplex& y, const SimplicialMap& f) {
    const int m = b.ambient_dim, n = y.ambient_dim;
    if (a.ambient_dim != m)
        throw ContractViolation("embed_double_cylinder: A and B ambient dimensions differ");

    // A is a subcomplex of B, matched by exact coordinates
    for (const auto& av : a.vertices)
        if (!vertex_at(b, av))
            throw ContractViolation("embed_double_cylinder: A is not a subcomplex of B "
                                    "(vertex missing)");
    for (const auto& s : a.simplices) {
        std::vector<std::size_t> in_b;
        for (std::size_t v : s) in_b.push_back(*vertex_at(b, a.vertices[v]));
        std::sort(in_b.begin(), in_b.end());
        if (!spans_face(in_b, b.simplices))
            throw ContractViolation("embed_double_cylinder: A is not a subcomplex of B");
    }
    validate_simplicial(a, f, y);

    const RatVec zero_m(static_cast<std::size_t>(m), Rat(0));
    const RatVec zero_n(static_cast<std::size_t>(n), Rat(0));
    if (!radial_check(a, zero_m))
        throw ContractViolation("embed_double_cylinder: not radial (A fails the radial "
                                "hypothesis about the origin of R^m)");
    if (vertex_at(y, zero_n))
        throw ContractViolation("embed_double_cylinder: Y has a vertex at the origin of R^n");

    if (auto a0 = vertex_at(a, zero_m)) {
        // unique nearest Y vertex must be the image of the origin
        auto sq = [](const RatVec& v) {
            Rat s = 0;
            for (const Rat& x : v) s += x * x;
            return s;
        };
        std::size_t best = 0;
        bool tie = false;
        for (std::size_t i = 1; i < y.vertices.size(); ++i) {
            Rat di = sq(y.vertices[i]), db = sq(y.vertices[best]);
            if (di < db) { best = i; tie = false; }
            else if (di == db) tie = true;
        }
        if (tie || f.vertex_image[*a0] != best)
            throw ContractViolation("embed_double_cylinder: basepoint condition violated "
                                    "(f(0_m) must be the strictly unique nearest vertex of Y)");
    }

    auto joined = [&](const RatVec& left, const RatVec& right) {
        RatVec c = left;
        c.insert(c.end(), right.begin(), right.end());
        return c;
    };
    Builder out(m + n);
    auto pad = [&](std::size_t bv) { return out.vertex(joined(b.vertices[bv], zero_n)); };
    auto graph = [&](std::size_t av) {
        return out.vertex(joined(a.vertices[av], y.vertices[f.vertex_image[av]]));
    };
    auto base = [&](std::size_t av) {
        return out.vertex(joined(zero_m, y.vertices[f.vertex_image[av]]));
    };
    auto yvert = [&](std::size_t yv) { return out.vertex(joined(zero_m, y.vertices[yv])); };

    for (const auto& s : b.simplices) {
        std::vector<std::size_t> verts;
        for (std::size_t v : s) verts.push_back(pad(v));
        out.simplex(std::move(verts));
    }
    for (const auto& s : a.simplices)
        for (std::size_t i = 0; i < s.size(); ++i) {
            // region 1: between A x {0_n} and the graph of f
            std::vector<std::size_t> lower;
            for (std::size_t j = 0; j <= i; ++j) lower.push_back(pad(*vertex_at(b, a.vertices[s[j]])));
            for (std::size_t j = i; j < s.size(); ++j) lower.push_back(graph(s[j]));
            out.simplex(std::move(lower));
            // region 2: between the graph and {0_m} x Y
            std::vector<std::size_t> upper;
            for (std::size_t j = 0; j <= i; ++j) upper.push_back(graph(s[j]));
            for (std::size_t j = i; j < s.size(); ++j) upper.push_back(base(s[j]));
            out.simplex(std::move(upper));
        }
    for (const auto& s : y.simplices) {
        std::vector<std::size_t> verts;
        for (std::size_t v : s) verts.push_back(yvert(v));
        out.simplex(std::move(verts));
    }
    return out.finish();
}

GeomComplex embed_cone(const GeomComplex& sphere_wedge, const GeomComplex& y,
                       const SimplicialMap& f) {
    const GeomComplex& a = sphere_wedge;
    const int m = a.ambient_dim;
    const RatVec zero_m(static_cast<std::size_t>(m), Rat(0));
    auto origin_vertex = vertex_at(a, zero_m);

    // wedge summands: connected components after removing the base point
    std::vector<std::size_t> comp(a.vertices.size());
    for (std::size_t i = 0; i < comp.size(); ++i) comp[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return comp[x] == x ? x : comp[x] = find(comp[x]);
    };
    for (const auto& s : a.simplices) {
        std::optional<std::size_t> prev;
        for (std::size_t v : s) {
            if (origin_vertex && v == *origin_vertex) continue;
            if (prev) comp[find(*prev)] = find(v);
            prev = v;
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < comp.size(); ++i)
        if (!origin_vertex || i != *origin_vertex) members[find(i)].push_back(i);

    std::vector<RatVec> b_vertices = a.vertices;
    std::map<std::size_t, std::size_t> apex_of;  // component root -> apex vertex id
    for (const auto& [root, verts] : members) {
        RatVec c(static_cast<std::size_t>(m), Rat(0));
        for (std::size_t v : verts)
            for (std::size_t j = 0; j < c.size(); ++j) c[j] += a.vertices[v][j];
        for (auto& x : c) x /= static_cast<int>(verts.size());
        for (const auto& existing : b_vertices)
            if (existing == c)
                throw ContractViolation("embed_cone: cone apex collides with a vertex");
        apex_of[root] = b_vertices.size();
        b_vertices.push_back(std::move(c));
    }

    std::vector<std::vector<std::size_t>> b_simplices = a.simplices;
    for (const auto& s : a.simplices) {
        std::optional<std::size_t> root;
        for (std::size_t v : s)
            if (!origin_vertex || v != *origin_vertex) { root = find(v); break; }
        if (!root) continue;  // the bare base point
        std::vector<std::size_t> cone = s;
        cone.push_back(apex_of.at(*root));
        b_simplices.push_back(std::move(cone));
    }
    GeomComplex b = make_complex(m, std::move(b_vertices), std::move(b_simplices));
    return embed_double_cylinder(b, a, y, f);
}

// ---------------------------------------------------------------------------
// verification
// ---------------------------------------------------------------------------

EmbedCheck verify_embedding(const GeomComplex& c) {
    const int d = c.ambient_dim;
    for (std::size_t i = 0; i < c.simplices.size(); ++i)
        for (std::size_t j = i + 1; j < c.simplices.size(); ++j) {
            const auto& sigma = c.simplices[i];
            const auto& tau = c.simplices[j];
            std::vector<std::size_t> shared;
            std::set_intersection(sigma.begin(), sigma.end(), tau.begin(), tau.end(),
                                  std::back_inserter(shared));
            const std::size_t na = sigma.size(), nb = tau.size();
            ratalg::RatMatrix e(static_cast<std::size_t>(d) + 2, na + nb);
            RatVec rhs(static_cast<std::size_t>(d) + 2, Rat(0));
            for (std::size_t k = 0; k < na; ++k) e.at(0, k) = 1;
            rhs[0] = 1;
            for (std::size_t k = 0; k < nb; ++k) e.at(1, na + k) = 1;
            rhs[1] = 1;
            for (int r = 0; r < d; ++r) {
                for (std::size_t k = 0; k < na; ++k)
                    e.at(static_cast<std::size_t>(r) + 2, k) =
                        c.vertices[sigma[k]][static_cast<std::size_t>(r)];
                for (std::size_t k = 0; k < nb; ++k)
                    e.at(static_cast<std::size_t>(r) + 2, na + k) =
                        -c.vertices[tau[k]][static_cast<std::size_t>(r)];
            }
            // barycentric coordinates are unique, so a common point lies in
            // the shared face iff all its non-shared coordinates vanish
            RatVec obj(na + nb, Rat(0));
            for (std::size_t k = 0; k < na; ++k)
                if (!std::binary_search(shared.begin(), shared.end(), sigma[k])) obj[k] = 1;
            for (std::size_t k = 0; k < nb; ++k)
                if (!std::binary_search(shared.begin(), shared.end(), tau[k])) obj[na + k] = 1;
            auto res = ratalg::simplex_maximize(e, rhs, obj);
            if (res.status == ratalg::LpStatus::Optimal && res.value > 0)
                return {false, i, j};
        }
    return {true, 0, 0};
}

// ---------------------------------------------------------------------------
// file I/O
// ---------------------------------------------------------------------------

namespace {

struct Line {
    int number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize_lines(const std::string& text) {
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.resize(hash);
        std::istringstream ls(raw);
        Line line{number, {}};
        std::string tok;
        while (ls >> tok) line.tokens.push_back(tok);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

[[noreturn]] void fail_line(int number, const std::string& msg) {
    throw ContractViolation("line " + std::to_string(number) + ": " + msg);
}

int parse_int(const Line& line, const std::string& tok) {
    try {
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        fail_line(line.number, "expected an integer, found '" + tok + "'");
    }
}

struct GeometryAccumulator {
    int dim = -1;
    std::vector<RatVec> vertices;
    std::vector<std::vector<std::size_t>> simplices;

    bool consume(const Line& line) {
        const auto& t = line.tokens;
        if (t[0] == "dim") {
            if (t.size() != 2) fail_line(line.number, "usage: dim D");
            if (dim >= 0) fail_line(line.number, "duplicate dim line");
            dim = parse_int(line, t[1]);
            if (dim < 0) fail_line(line.number, "negative dimension");
            return true;
        }
        if (t[0] == "v") {
            if (dim < 0) fail_line(line.number, "vertex before dim line");
            if (static_cast<int>(t.size()) != dim + 1)
                fail_line(line.number, "vertex needs exactly " + std::to_string(dim) +
                                           " coordinates");
            RatVec coords;
            for (std::size_t i = 1; i < t.size(); ++i) {
                try {
                    coords.push_back(parse_rat(t[i]));
                } catch (const ContractViolation& e) {
                    fail_line(line.number, e.what());
                }
            }
            vertices.push_back(std::move(coords));
            return true;
        }
        if (t[0] == "s") {
            if (t.size() < 2) fail_line(line.number, "empty simplex");
            std::vector<std::size_t> verts;
            for (std::size_t i = 1; i < t.size(); ++i) {
                int v = parse_int(line, t[i]);
                if (v < 0 || static_cast<std::size_t>(v) >= vertices.size())
                    fail_line(line.number, "vertex index out of range");
                verts.push_back(static_cast<std::size_t>(v));
            }
            simplices.push_back(std::move(verts));
            return true;
        }
        return false;
    }

    GeomComplex finish(int line_hint) const {
        if (dim < 0) fail_line(line_hint, "missing dim line");
        try {
            return make_complex(dim, vertices, simplices);
        } catch (const ContractViolation& e) {
            fail_line(line_hint, e.what());
        }
    }
};

}  // namespace

GeomComplex parse_geometry(const std::string& text) {
    GeometryAccumulator acc;
    int last = 1;
    for (const auto& line : tokenize_lines(text)) {
        last = line.number;
        if (!acc.consume(line))
            fail_line(line.number, "unexpected directive '" + line.tokens[0] + "'");
    }
    return acc.finish(last);
}

std::string to_text(const GeomComplex& c) {
    std::ostringstream out;
    out << "dim " << c.ambient_dim << "\n";
    for (const auto& v : c.vertices) {
        out << "v";
        for (const auto& x : v) out << " " << rat_to_string(x);
        out << "\n";
    }
    for (const auto& s : c.simplices) {
        out << "s";
        for (std::size_t v : s) out << " " << v;
        out << "\n";
    }
    return out.str();
}

EmbeddingProblem parse_embedding_problem(const std::string& text) {
    GeometryAccumulator b_acc, y_acc;
    std::vector<std::vector<std::size_t>> a_lines;
    std::map<std::size_t, std::size_t> map_lines;  // B vertex -> Y vertex
    enum { None, InB, InY } section = None;
    int last = 1;
    for (const auto& line : tokenize_lines(text)) {
        last = line.number;
        const auto& t = line.tokens;
        if (t[0] == "complex") {
            if (t.size() != 2 || (t[1] != "B" && t[1] != "Y"))
                fail_line(line.number, "usage: complex B | complex Y");
            section = (t[1] == "B") ? InB : InY;
            continue;
        }
        if (t[0] == "a") {
            if (section != InB) fail_line(line.number, "'a' line outside the B section");
            if (t.size() < 2) fail_line(line.number, "empty A simplex");
            std::vector<std::size_t> verts;
            for (std::size_t i = 1; i < t.size(); ++i) {
                int v = parse_int(line, t[i]);
                if (v < 0 || static_cast<std::size_t>(v) >= b_acc.vertices.size())
                    fail_line(line.number, "A vertex index out of range in B");
                verts.push_back(static_cast<std::size_t>(v));
            }
            a_lines.push_back(std::move(verts));
            continue;
        }
        if (t[0] == "map") {
            if (t.size() != 2) fail_line(line.number, "usage: map i->j");
            auto arrow = t[1].find("->");
            if (arrow == std::string::npos) fail_line(line.number, "usage: map i->j");
            int from = parse_int(line, t[1].substr(0, arrow));
            int to = parse_int(line, t[1].substr(arrow + 2));
            if (from < 0 || to < 0) fail_line(line.number, "negative map index");
            if (map_lines.count(static_cast<std::size_t>(from)))
                fail_line(line.number, "duplicate map entry");
            map_lines[static_cast<std::size_t>(from)] = static_cast<std::size_t>(to);
            continue;
        }
        GeometryAccumulator* acc =
            (section == InB) ? &b_acc : (section == InY) ? &y_acc : nullptr;
        if (!acc) fail_line(line.number, "content before any 'complex' header");
        if (!acc->consume(line))
            fail_line(line.number, "unexpected directive '" + t[0] + "'");
    }
    EmbeddingProblem problem;
    problem.b = b_acc.finish(last);
    problem.y = y_acc.finish(last);
    if (a_lines.empty()) fail_line(last, "no 'a' lines defining the subcomplex A");

    // A vertices: the referenced B vertices, in ascending B index order
    std::set<std::size_t> a_vertex_set;
    for (const auto& s : a_lines) a_vertex_set.insert(s.begin(), s.end());
    std::map<std::size_t, std::size_t> local;  // B index -> A index
    std::vector<RatVec> a_vertices;
    for (std::size_t bv : a_vertex_set) {
        local[bv] = a_vertices.size();
        a_vertices.push_back(problem.b.vertices[bv]);
    }
    std::vector<std::vector<std::size_t>> a_simplices;
    for (const auto& s : a_lines) {
        std::vector<std::size_t> verts;
        for (std::size_t v : s) verts.push_back(local.at(v));
        a_simplices.push_back(std::move(verts));
    }
    problem.a = make_complex(problem.b.ambient_dim, std::move(a_vertices), std::move(a_simplices));

    problem.f.vertex_image.resize(problem.a.vertices.size());
    for (const auto& [bv, idx] : local) {
        auto it = map_lines.find(bv);
        if (it == map_lines.end())
            fail_line(last, "missing 'map' entry for A vertex " + std::to_string(bv));
        if (it->second >= problem.y.vertices.size())
            fail_line(last, "map target out of range in Y");
        problem.f.vertex_image[idx] = it->second;
    }
    return problem;
}

}  // namespace masseykit::plembed
