#include "masseykit/gradedlie.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <set>

namespace masseykit::gradedlie {

// ---------------------------------------------------------------------------
// Bracket-word grammar
// ---------------------------------------------------------------------------

namespace {

struct WordParser {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw ContractViolation("bracket word parse error at offset " +
                                std::to_string(pos) + ": " + what);
    }
    char peek() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        return s[pos];
    }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos;
    }
    BracketExpr parse_word() {
        skip_ws();
        if (peek() == '[') {
            ++pos;
            auto l = std::make_shared<BracketExpr>(parse_word());
            expect(',');
            auto r = std::make_shared<BracketExpr>(parse_word());
            expect(']');
            return BracketExpr{"", l, r};
        }
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        if (pos == start) fail("expected identifier or '['");
        if (std::isdigit(static_cast<unsigned char>(s[start]))) fail("identifier may not start with a digit");
        return BracketExpr{s.substr(start, pos - start), nullptr, nullptr};
    }
};

}  // namespace

BracketExpr parse_bracket_word(const std::string& text) {
    WordParser p{text};
    BracketExpr w = p.parse_word();
    p.skip_ws();
    if (p.pos != text.size())
        throw ContractViolation("bracket word parse error: trailing input at offset " +
                                std::to_string(p.pos));
    return w;
}

std::string to_string(const BracketExpr& w) {
    if (w.is_leaf()) return w.name;
    return "[" + to_string(*w.left) + "," + to_string(*w.right) + "]";
}

// ---------------------------------------------------------------------------
// LieElement arithmetic
// ---------------------------------------------------------------------------

namespace {
void prune(LieElement& e) {
    for (auto it = e.components.begin(); it != e.components.end();) {
        bool zero = std::all_of(it->second.begin(), it->second.end(),
                                [](const Rat& r) { return r == 0; });
        it = zero ? e.components.erase(it) : std::next(it);
    }
}
}  // namespace

int LieElement::degree() const {
    if (components.size() != 1)
        throw ContractViolation("degree(): element is zero or inhomogeneous");
    return components.begin()->first;
}

LieElement operator+(const LieElement& a, const LieElement& b) {
    LieElement r = a;
    for (const auto& [d, coords] : b.components) {
        auto it = r.components.find(d);
        if (it == r.components.end()) {
            r.components[d] = coords;
        } else {
            for (std::size_t i = 0; i < coords.size(); ++i) it->second[i] += coords[i];
        }
    }
    prune(r);
    return r;
}

LieElement operator*(const Rat& c, const LieElement& a) {
    if (c == 0) return {};
    LieElement r = a;
    for (auto& [d, coords] : r.components)
        for (auto& x : coords) x *= c;
    return r;
}

bool operator==(const LieElement& a, const LieElement& b) {
    return (a + Rat(-1) * b).is_zero();
}

// ---------------------------------------------------------------------------
// FreeLieAlgebra internals
// ---------------------------------------------------------------------------

using Word = std::vector<int>;                          // generator indices
using SparseVec = std::vector<std::pair<int, Rat>>;     // sorted by index

struct BasisDescriptor {
    int gen = -1;          // generator index when a leaf
    int d1 = 0, d2 = 0;    // degrees of bracket factors
    std::size_t i1 = 0, i2 = 0;
};

struct DegreeData {
    std::vector<Word> words;
    std::map<Word, int> word_index;
    std::vector<BasisDescriptor> descriptors;
    std::vector<SparseVec> expansions;  // raw tensor expansion per basis element
    std::vector<SparseVec> echelon;     // triangular reductions of accepted expansions
    std::vector<int> pivots;
    std::vector<RatVec> transform;      // echelon[k] = sum_l transform[k][l] * expansions[l]
};

struct FreeLieAlgebra::Impl {
    std::vector<LieGenerator> gens;
    int cutoff;
    std::vector<DegreeData> deg;                        // index 1..cutoff
    std::vector<std::pair<int, std::size_t>> gen_pos;   // generator -> (degree, basis index)

    mutable std::recursive_mutex sc_mutex;
    mutable std::map<std::pair<int, int>,
                     std::vector<std::vector<SparseVec>>> structure;  // (d1,d2) -> [i][j]

    void enumerate_words(int d, Word& prefix, std::vector<Word>& out) const {
        for (std::size_t g = 0; g < gens.size(); ++g) {
            const int gd = gens[g].degree;
            if (gd > d) continue;
            prefix.push_back(static_cast<int>(g));
            if (gd == d)
                out.push_back(prefix);
            else
                enumerate_words(d - gd, prefix, out);
            prefix.pop_back();
        }
    }

    // Tensor-algebra expansion of the graded commutator of two expansions.
    SparseVec commutator(const SparseVec& a, int da, const SparseVec& b, int db) const {
        const DegreeData& target = deg[static_cast<std::size_t>(da + db)];
        std::map<int, Rat> acc;
        const Rat sign = (da % 2 != 0 && db % 2 != 0) ? 1 : -1;  // -(-1)^{da db}
        Word w;
        for (const auto& [ia, ca] : a) {
            const Word& wa = deg[static_cast<std::size_t>(da)].words[static_cast<std::size_t>(ia)];
            for (const auto& [ib, cb] : b) {
                const Word& wb = deg[static_cast<std::size_t>(db)].words[static_cast<std::size_t>(ib)];
                w = wa;
                w.insert(w.end(), wb.begin(), wb.end());
                acc[target.word_index.at(w)] += ca * cb;
                w = wb;
                w.insert(w.end(), wa.begin(), wa.end());
                acc[target.word_index.at(w)] += sign * ca * cb;
            }
        }
        SparseVec out;
        for (auto& [i, c] : acc)
            if (c != 0) out.emplace_back(i, std::move(c));
        return out;
    }

    // Expresses a tensor vector (dense over degree-d words) in the basis.
    // Returns false when the vector is outside the Lie subspace.
    bool normal_form(int d, RatVec& buf, std::vector<int>& touched, RatVec& coords_out) const {
        const DegreeData& dd = deg[static_cast<std::size_t>(d)];
        RatVec alphas(dd.echelon.size(), Rat(0));
        for (std::size_t k = 0; k < dd.echelon.size(); ++k) {
            const Rat& lead = buf[static_cast<std::size_t>(dd.pivots[k])];
            if (lead == 0) continue;
            alphas[k] = lead;
            for (const auto& [i, c] : dd.echelon[k]) {
                buf[static_cast<std::size_t>(i)] -= alphas[k] * c;
                touched.push_back(i);
            }
        }
        for (int i : touched)
            if (buf[static_cast<std::size_t>(i)] != 0) return false;
        coords_out.assign(dd.descriptors.size(), Rat(0));
        for (std::size_t k = 0; k < alphas.size(); ++k) {
            if (alphas[k] == 0) continue;
            const RatVec& tr = dd.transform[k];
            for (std::size_t l = 0; l < tr.size(); ++l)
                if (tr[l] != 0) coords_out[l] += alphas[k] * tr[l];
        }
        return true;
    }

    SparseVec expansion_of(int d, const RatVec& coords) const {
        const DegreeData& dd = deg[static_cast<std::size_t>(d)];
        std::map<int, Rat> acc;
        for (std::size_t l = 0; l < coords.size(); ++l) {
            if (coords[l] == 0) continue;
            for (const auto& [i, c] : dd.expansions[l]) acc[i] += coords[l] * c;
        }
        SparseVec out;
        for (auto& [i, c] : acc)
            if (c != 0) out.emplace_back(i, std::move(c));
        return out;
    }

    const std::vector<std::vector<SparseVec>>& structure_block(int d1, int d2) const {
        std::scoped_lock lk(sc_mutex);
        auto key = std::make_pair(d1, d2);
        auto it = structure.find(key);
        if (it != structure.end()) return it->second;

        const auto& b1 = deg[static_cast<std::size_t>(d1)];
        const auto& b2 = deg[static_cast<std::size_t>(d2)];
        const int dt = d1 + d2;
        std::vector<std::vector<SparseVec>> block(
            b1.descriptors.size(), std::vector<SparseVec>(b2.descriptors.size()));

        if (d1 > d2) {
            // fill from the transposed block via graded antisymmetry
            const auto& other = structure_block(d2, d1);
            const Rat sign = (d1 % 2 != 0 && d2 % 2 != 0) ? 1 : -1;
            for (std::size_t i = 0; i < b1.descriptors.size(); ++i)
                for (std::size_t j = 0; j < b2.descriptors.size(); ++j) {
                    block[i][j] = other[j][i];
                    for (auto& [idx, c] : block[i][j]) c *= sign;
                }
        } else {
            RatVec buf(deg[static_cast<std::size_t>(dt)].words.size(), Rat(0));
            std::vector<int> touched;
            RatVec coords;
            for (std::size_t i = 0; i < b1.descriptors.size(); ++i)
                for (std::size_t j = 0; j < b2.descriptors.size(); ++j) {
                    SparseVec exp = commutator(b1.expansions[i], d1, b2.expansions[j], d2);
                    touched.clear();
                    for (const auto& [idx, c] : exp) {
                        buf[static_cast<std::size_t>(idx)] = c;
                        touched.push_back(idx);
                    }
                    if (!normal_form(dt, buf, touched, coords))
                        throw std::logic_error("bracket fell outside the Lie subspace");
                    std::vector<int> reset = touched;
                    for (int t : reset) buf[static_cast<std::size_t>(t)] = 0;
                    SparseVec sc;
                    for (std::size_t l = 0; l < coords.size(); ++l)
                        if (coords[l] != 0) sc.emplace_back(static_cast<int>(l), coords[l]);
                    block[i][j] = std::move(sc);
                }
        }
        return structure.emplace(key, std::move(block)).first->second;
    }
};

FreeLieAlgebra::FreeLieAlgebra(std::vector<LieGenerator> generators, int cutoff)
    : impl_(std::make_unique<Impl>()) {
    if (cutoff < 1) throw ContractViolation("cutoff must be >= 1");
    std::set<std::string> names;
    for (const auto& g : generators) {
        if (g.degree < 1)
            throw ContractViolation("generator '" + g.name + "' has degree < 1");
        if (g.degree > cutoff)
            throw ContractViolation("cutoff " + std::to_string(cutoff) +
                                    " below degree of generator '" + g.name + "'");
        if (!names.insert(g.name).second)
            throw ContractViolation("duplicate generator name '" + g.name + "'");
    }
    impl_->gens = std::move(generators);
    impl_->cutoff = cutoff;
    impl_->deg.resize(static_cast<std::size_t>(cutoff) + 1);
    impl_->gen_pos.resize(impl_->gens.size());

    for (int d = 1; d <= cutoff; ++d) {
        DegreeData& dd = impl_->deg[static_cast<std::size_t>(d)];
        Word prefix;
        impl_->enumerate_words(d, prefix, dd.words);
        for (std::size_t i = 0; i < dd.words.size(); ++i)
            dd.word_index[dd.words[i]] = static_cast<int>(i);

        RatVec buf(dd.words.size(), Rat(0));
        std::vector<int> touched;

        auto try_accept = [&](BasisDescriptor desc, SparseVec raw) -> bool {
            touched.clear();
            for (const auto& [idx, c] : raw) {
                buf[static_cast<std::size_t>(idx)] = c;
                touched.push_back(idx);
            }
            RatVec crow(dd.descriptors.size() + 1, Rat(0));
            crow.back() = 1;
            for (std::size_t k = 0; k < dd.echelon.size(); ++k) {
                const Rat lead = buf[static_cast<std::size_t>(dd.pivots[k])];
                if (lead == 0) continue;
                for (const auto& [i, c] : dd.echelon[k]) {
                    buf[static_cast<std::size_t>(i)] -= lead * c;
                    touched.push_back(i);
                }
                const RatVec& tr = dd.transform[k];
                for (std::size_t l = 0; l < tr.size(); ++l)
                    if (tr[l] != 0) crow[l] -= lead * tr[l];
            }
            std::sort(touched.begin(), touched.end());
            touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
            int pivot = -1;
            for (int i : touched)
                if (buf[static_cast<std::size_t>(i)] != 0) { pivot = i; break; }
            if (pivot < 0) {
                for (int i : touched) buf[static_cast<std::size_t>(i)] = 0;
                return false;  // dependent; discard
            }
            const Rat inv = 1 / buf[static_cast<std::size_t>(pivot)];
            SparseVec erow;
            for (int i : touched) {
                Rat& v = buf[static_cast<std::size_t>(i)];
                if (v != 0) erow.emplace_back(i, v * inv);
                v = 0;
            }
            for (auto& x : crow) x *= inv;
            dd.descriptors.push_back(desc);
            dd.expansions.push_back(std::move(raw));
            dd.echelon.push_back(std::move(erow));
            dd.pivots.push_back(pivot);
            dd.transform.push_back(std::move(crow));
            return true;
        };

        for (std::size_t g = 0; g < impl_->gens.size(); ++g) {
            if (impl_->gens[g].degree != d) continue;
            Word w{static_cast<int>(g)};
            SparseVec raw{{dd.word_index.at(w), Rat(1)}};
            BasisDescriptor desc;
            desc.gen = static_cast<int>(g);
            try_accept(desc, std::move(raw));
            impl_->gen_pos[g] = {d, dd.descriptors.size() - 1};
        }
        for (int d1 = 1; 2 * d1 <= d; ++d1) {
            const int d2 = d - d1;
            const auto& lo = impl_->deg[static_cast<std::size_t>(d1)];
            const auto& hi = impl_->deg[static_cast<std::size_t>(d2)];
            for (std::size_t i = 0; i < lo.descriptors.size(); ++i) {
                const std::size_t jstart = (d1 == d2) ? i : 0;
                for (std::size_t j = jstart; j < hi.descriptors.size(); ++j) {
                    SparseVec raw =
                        impl_->commutator(lo.expansions[i], d1, hi.expansions[j], d2);
                    if (raw.empty()) continue;
                    BasisDescriptor desc;
                    desc.d1 = d1; desc.i1 = i; desc.d2 = d2; desc.i2 = j;
                    try_accept(desc, std::move(raw));
                }
            }
        }
    }
}

FreeLieAlgebra::~FreeLieAlgebra() = default;
FreeLieAlgebra::FreeLieAlgebra(FreeLieAlgebra&&) noexcept = default;
FreeLieAlgebra& FreeLieAlgebra::operator=(FreeLieAlgebra&&) noexcept = default;

const std::vector<LieGenerator>& FreeLieAlgebra::generators() const { return impl_->gens; }
int FreeLieAlgebra::cutoff() const { return impl_->cutoff; }

std::size_t FreeLieAlgebra::dim(int degree) const {
    if (degree < 1 || degree > impl_->cutoff) {
        if (degree > impl_->cutoff)
            throw CutoffExceeded("dim: degree " + std::to_string(degree) + " beyond cutoff");
        return 0;
    }
    return impl_->deg[static_cast<std::size_t>(degree)].descriptors.size();
}

int FreeLieAlgebra::basis_degree_of_generator(std::size_t g) const {
    return impl_->gens.at(g).degree;
}

std::string FreeLieAlgebra::basis_word(int degree, std::size_t i) const {
    const auto& desc = impl_->deg.at(static_cast<std::size_t>(degree)).descriptors.at(i);
    if (desc.gen >= 0) return impl_->gens[static_cast<std::size_t>(desc.gen)].name;
    return "[" + basis_word(desc.d1, desc.i1) + "," + basis_word(desc.d2, desc.i2) + "]";
}

LieElement FreeLieAlgebra::generator_element(std::size_t g) const {
    auto [d, idx] = impl_->gen_pos.at(g);
    return basis_element(d, idx);
}

LieElement FreeLieAlgebra::basis_element(int degree, std::size_t i) const {
    LieElement e;
    RatVec coords(dim(degree), Rat(0));
    coords.at(i) = 1;
    e.components[degree] = std::move(coords);
    return e;
}

const FreeLieAlgebra::SparsePairs& FreeLieAlgebra::bracket_basis(
    int d1, std::size_t i, int d2, std::size_t j) const {
    if (d1 + d2 > impl_->cutoff)
        throw CutoffExceeded("bracket_basis: result degree exceeds cutoff");
    return impl_->structure_block(d1, d2)[i][j];
}

LieElement FreeLieAlgebra::bracket(const LieElement& a, const LieElement& b) const {
    LieElement out;
    for (const auto& [da, ca] : a.components)
        for (const auto& [db, cb] : b.components) {
            const int dt = da + db;
            if (dt > impl_->cutoff)
                throw CutoffExceeded("bracket: degree " + std::to_string(dt) +
                                     " exceeds cutoff " + std::to_string(impl_->cutoff));
            const auto& block = impl_->structure_block(da, db);
            RatVec acc(dim(dt), Rat(0));
            for (std::size_t i = 0; i < ca.size(); ++i) {
                if (ca[i] == 0) continue;
                for (std::size_t j = 0; j < cb.size(); ++j) {
                    if (cb[j] == 0) continue;
                    const Rat f = ca[i] * cb[j];
                    for (const auto& [idx, c] : block[i][j])
                        acc[static_cast<std::size_t>(idx)] += f * c;
                }
            }
            LieElement term;
            term.components[dt] = std::move(acc);
            prune(term);
            out = out + term;
        }
    return out;
}

LieElement FreeLieAlgebra::element_of_word(const BracketExpr& w) const {
    if (w.is_leaf()) {
        for (std::size_t g = 0; g < impl_->gens.size(); ++g)
            if (impl_->gens[g].name == w.name) return generator_element(g);
        throw ContractViolation("unknown generator '" + w.name + "'");
    }
    return bracket(element_of_word(*w.left), element_of_word(*w.right));
}

LieElement FreeLieAlgebra::import_element(const FreeLieAlgebra& from, const LieElement& e) const {
    // `from` must use a prefix of this algebra's generators, in order.
    if (from.impl_->gens.size() > impl_->gens.size())
        throw ContractViolation("import_element: generator sets incompatible");
    for (std::size_t g = 0; g < from.impl_->gens.size(); ++g)
        if (from.impl_->gens[g].name != impl_->gens[g].name ||
            from.impl_->gens[g].degree != impl_->gens[g].degree)
            throw ContractViolation("import_element: generator sets incompatible");

    LieElement out;
    for (const auto& [d, coords] : e.components) {
        if (d > impl_->cutoff)
            throw CutoffExceeded("import_element: degree exceeds cutoff");
        SparseVec exp = from.impl_->expansion_of(d, coords);
        const DegreeData& dd = impl_->deg[static_cast<std::size_t>(d)];
        RatVec buf(dd.words.size(), Rat(0));
        std::vector<int> touched;
        for (const auto& [idx, c] : exp) {
            // word indices differ between algebras; translate via the word itself
            const Word& w = from.impl_->deg[static_cast<std::size_t>(d)]
                                .words[static_cast<std::size_t>(idx)];
            const int here = dd.word_index.at(w);
            buf[static_cast<std::size_t>(here)] = c;
            touched.push_back(here);
        }
        RatVec coords_here;
        if (!impl_->normal_form(d, buf, touched, coords_here))
            throw std::logic_error("import_element: vector outside Lie subspace");
        LieElement term;
        term.components[d] = std::move(coords_here);
        prune(term);
        out = out + term;
    }
    return out;
}

std::vector<std::vector<std::string>> free_basis(
    const std::vector<LieGenerator>& generators, int cutoff) {
    for (const auto& g : generators)
        if (g.degree > cutoff)
            throw ContractViolation("free_basis: cutoff below generator degree");
    FreeLieAlgebra alg(generators, cutoff);
    std::vector<std::vector<std::string>> out(static_cast<std::size_t>(cutoff) + 1);
    for (int d = 1; d <= cutoff; ++d)
        for (std::size_t i = 0; i < alg.dim(d); ++i)
            out[static_cast<std::size_t>(d)].push_back(alg.basis_word(d, i));
    return out;
}

// ---------------------------------------------------------------------------
// DgLieModel
// ---------------------------------------------------------------------------

DgLieModel::DgLieModel(std::vector<LieGenerator> generators, int cutoff)
    : alg_(std::make_shared<FreeLieAlgebra>(std::move(generators), cutoff)) {
    d_gen_.assign(alg_->generators().size(), LieElement{});
    build_differential_table();
}

DgLieModel::DgLieModel(std::shared_ptr<const FreeLieAlgebra> alg, std::vector<LieElement> d_gen)
    : alg_(std::move(alg)), d_gen_(std::move(d_gen)) {
    build_differential_table();
}

int DgLieModel::cutoff() const { return alg_->cutoff(); }

void DgLieModel::build_differential_table() {
    const int cutoff = alg_->cutoff();
    d_table_.assign(static_cast<std::size_t>(cutoff) + 1, {});
    // generator positions are needed to seed the recursion
    for (int d = 1; d <= cutoff; ++d) {
        const auto& dd = alg_->impl().deg[static_cast<std::size_t>(d)];
        auto& row = d_table_[static_cast<std::size_t>(d)];
        row.reserve(dd.descriptors.size());
        for (const auto& desc : dd.descriptors) {
            if (desc.gen >= 0) {
                row.push_back(d_gen_[static_cast<std::size_t>(desc.gen)]);
            } else {
                // d[a,b] = [da,b] + (-1)^{|a|} [a,db]
                const LieElement& da = d_table_[static_cast<std::size_t>(desc.d1)][desc.i1];
                const LieElement& db = d_table_[static_cast<std::size_t>(desc.d2)][desc.i2];
                LieElement a = alg_->basis_element(desc.d1, desc.i1);
                LieElement b = alg_->basis_element(desc.d2, desc.i2);
                LieElement v = alg_->bracket(da, b) +
                               Rat(desc.d1 % 2 == 0 ? 1 : -1) * alg_->bracket(a, db);
                row.push_back(std::move(v));
            }
        }
    }
    // d o d = 0 on every basis element within cutoff
    for (int deg = 1; deg <= cutoff; ++deg)
        for (const auto& v : d_table_[static_cast<std::size_t>(deg)])
            if (!d(v).is_zero())
                throw ContractViolation("differential does not square to zero");
}

const LieElement& DgLieModel::d_basis(int degree, std::size_t i) const {
    return d_table_.at(static_cast<std::size_t>(degree)).at(i);
}

LieElement DgLieModel::d(const LieElement& e) const {
    LieElement out;
    for (const auto& [deg, coords] : e.components)
        for (std::size_t i = 0; i < coords.size(); ++i)
            if (coords[i] != 0) out = out + coords[i] * d_basis(deg, i);
    return out;
}

DgLieModel DgLieModel::attach_differential(const LieGenerator& gen, const LieElement& value) const {
    if (!value.is_zero() && value.degree() != gen.degree - 1)
        throw ContractViolation("attach_differential: d(" + gen.name + ") must have degree " +
                                std::to_string(gen.degree - 1));
    if (!d(value).is_zero())
        throw ContractViolation("attach_differential: attaching class is not a cycle");

    std::vector<LieGenerator> gens = alg_->generators();
    gens.push_back(gen);
    auto alg2 = std::make_shared<FreeLieAlgebra>(std::move(gens), alg_->cutoff());

    std::vector<LieElement> d_gen2;
    d_gen2.reserve(d_gen_.size() + 1);
    for (const auto& v : d_gen_) d_gen2.push_back(alg2->import_element(*alg_, v));
    d_gen2.push_back(alg2->import_element(*alg_, value));
    return DgLieModel(std::move(alg2), std::move(d_gen2));
}

}  // namespace masseykit::gradedlie
