#include "masseykit/cdga.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace masseykit::cdga {

namespace {

// A monomial is a sorted vector of generator ids; odd cochain degree ids
// never repeat (they square to zero).
using Monomial = std::vector<int>;

struct CeGenerator {
    int lie_degree;
    std::size_t lie_index;
    int cochain_degree;  // lie_degree + 1
    std::string name;
};

}  // namespace

struct CochainAlgebra::Impl {
    std::shared_ptr<const gradedlie::FreeLieAlgebra> lie;
    int cutoff;

    std::vector<CeGenerator> gens;                 // indexed by id
    std::map<std::pair<int, std::size_t>, int> id_of;  // (lie degree, lie index) -> id

    // monomial bases per cochain degree 0..cutoff
    std::vector<std::vector<Monomial>> monomials;
    std::vector<std::map<Monomial, std::size_t>> monomial_index;

    // differential of each generator, sparse in C^{cochain_degree+1}
    std::vector<std::vector<std::pair<std::size_t, Rat>>> d_gen;
    // full matrices C^n -> C^{n+1} for n = 0..cutoff-1
    std::vector<ratalg::RatMatrix> d_matrices;

    mutable std::map<int, Cohomology> cohomology_cache;
    mutable std::mutex cache_mutex;

    int cdeg(int id) const { return gens[static_cast<std::size_t>(id)].cochain_degree; }

    // (sign, sorted merge) of two sorted monomials; zero flagged by sign == 0
    std::pair<int, Monomial> multiply_monomials(const Monomial& u, const Monomial& v) const {
        Monomial out;
        out.reserve(u.size() + v.size());
        int parity = 0;
        int u_suffix_deg = 0;
        for (int id : u) u_suffix_deg += cdeg(id);
        std::size_t i = 0;
        for (int b : v) {
            while (i < u.size() && u[i] < b) {
                u_suffix_deg -= cdeg(u[i]);
                out.push_back(u[i++]);
            }
            parity += cdeg(b) * u_suffix_deg;
            out.push_back(b);
        }
        while (i < u.size()) out.push_back(u[i++]);
        for (std::size_t t = 1; t < out.size(); ++t)
            if (out[t] == out[t - 1] && cdeg(out[t]) % 2 != 0) return {0, {}};
        return {(parity % 2 == 0) ? 1 : -1, std::move(out)};
    }

    int monomial_degree(const Monomial& m) const {
        int d = 0;
        for (int id : m) d += cdeg(id);
        return d;
    }

    void accumulate_product(const Monomial& u, const Monomial& v, const Rat& coeff,
                            RatVec& out) const {
        auto [sign, m] = multiply_monomials(u, v);
        if (sign == 0) return;
        int deg = monomial_degree(m);
        auto it = monomial_index[static_cast<std::size_t>(deg)].find(m);
        if (it == monomial_index[static_cast<std::size_t>(deg)].end())
            throw ContractViolation("internal: product monomial missing from basis");
        out[it->second] += Rat(sign) * coeff;
    }

    // derivation applied to one monomial, accumulated into a coefficient
    // vector of degree monomial_degree + 1
    void d_monomial(const Monomial& m, RatVec& out) const {
        int prefix_parity = 0;
        for (std::size_t t = 0; t < m.size(); ++t) {
            const int id = m[t];
            Monomial prefix(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(t));
            Monomial suffix(m.begin() + static_cast<std::ptrdiff_t>(t) + 1, m.end());
            const Rat outer_sign = (prefix_parity % 2 == 0) ? 1 : -1;
            const int dg_degree = cdeg(id) + 1;
            for (const auto& [midx, coeff] : d_gen[static_cast<std::size_t>(id)]) {
                const Monomial& term = monomials[static_cast<std::size_t>(dg_degree)][midx];
                auto [s1, left] = multiply_monomials(prefix, term);
                if (s1 == 0) continue;
                auto [s2, whole] = multiply_monomials(left, suffix);
                if (s2 == 0) continue;
                int deg = monomial_degree(whole);
                auto it = monomial_index[static_cast<std::size_t>(deg)].find(whole);
                if (it == monomial_index[static_cast<std::size_t>(deg)].end())
                    throw ContractViolation("internal: differential monomial missing");
                out[it->second] += outer_sign * Rat(s1 * s2) * coeff;
            }
            prefix_parity += cdeg(id);
        }
    }

    void require_degree(int degree, const char* what) const {
        if (degree < 0 || degree > cutoff)
            throw CutoffExceeded(std::string(what) + ": degree " + std::to_string(degree) +
                                 " outside truncation range [0, " + std::to_string(cutoff) + "]");
    }
};

CochainAlgebra::CochainAlgebra(const gradedlie::DgLieModel& model, int cutoff)
    : impl_(std::make_unique<Impl>()) {
    if (cutoff < 1) throw ContractViolation("chevalley_eilenberg: cutoff must be >= 1");
    if (model.cutoff() < cutoff - 1)
        throw ContractViolation(
            "chevalley_eilenberg: model truncation " + std::to_string(model.cutoff()) +
            " too small for cochain cutoff " + std::to_string(cutoff) +
            " (need Lie degrees up to cutoff - 1)");
    auto& im = *impl_;
    im.lie = model.algebra_ptr();
    im.cutoff = cutoff;

    const auto& lie = *im.lie;
    const int max_lie = std::min(model.cutoff(), cutoff - 1);
    for (int d = 1; d <= max_lie; ++d)
        for (std::size_t i = 0; i < lie.dim(d); ++i) {
            int id = static_cast<int>(im.gens.size());
            im.gens.push_back({d, i, d + 1, lie.basis_word(d, i)});
            im.id_of[{d, i}] = id;
        }

    // monomial bases, degree by degree
    im.monomials.assign(static_cast<std::size_t>(cutoff) + 1, {});
    im.monomial_index.assign(static_cast<std::size_t>(cutoff) + 1, {});
    {
        std::vector<int> stack;
        auto emit = [&](int degree) {
            auto& table = im.monomial_index[static_cast<std::size_t>(degree)];
            table[stack] = im.monomials[static_cast<std::size_t>(degree)].size();
            im.monomials[static_cast<std::size_t>(degree)].push_back(stack);
        };
        // recursive enumeration: nondecreasing ids, odd-degree ids strict
        auto rec = [&](auto&& self, int min_id, int remaining) -> void {
            emit(im.cutoff - remaining);
            for (int id = min_id; id < static_cast<int>(im.gens.size()); ++id) {
                int dg = im.cdeg(id);
                if (dg > remaining) continue;
                bool odd = dg % 2 != 0;
                if (odd && !stack.empty() && stack.back() == id) continue;
                stack.push_back(id);
                self(self, odd ? id + 1 : id, remaining - dg);
                stack.pop_back();
            }
        };
        rec(rec, 0, cutoff);
    }

    // generator differentials: for z dual to the Lie basis element b of
    // degree d,   d z = -sum_j <d b_j, b> z_j            (b_j of degree d+1)
    //               - (1/2) sum_{j,k} (-1)^{|b_j|} e^b_{jk} z_j z_k
    // with [b_j, b_k] = sum e^b_{jk} b (degrees of j,k summing to d). The
    // two ordered terms of each off-diagonal pair coincide, which collapses
    // the 1/2.
    im.d_gen.resize(im.gens.size());
    std::vector<std::map<std::size_t, Rat>> acc(im.gens.size());
    // linear part, per dual generator
    for (std::size_t g = 0; g < im.gens.size(); ++g) {
        const auto& gen = im.gens[g];
        if (gen.cochain_degree + 1 > cutoff) continue;  // boundary-incomplete dual
        if (gen.lie_degree + 1 > model.cutoff()) continue;
        const int target = gen.cochain_degree + 1;
        for (std::size_t j = 0; j < lie.dim(gen.lie_degree + 1); ++j) {
            const auto& db = model.d_basis(gen.lie_degree + 1, j);
            auto it = db.components.find(gen.lie_degree);
            if (it == db.components.end()) continue;
            const Rat& c = it->second[gen.lie_index];
            if (c == 0) continue;
            int zj = im.id_of.at({gen.lie_degree + 1, j});
            acc[g][im.monomial_index[static_cast<std::size_t>(target)].at({zj})] -= c;
        }
    }
    // quadratic part, pair-major: ids within a degree block are consecutive
    // and blocks are ordered by degree, so the enumerated factor pair is
    // already sorted and no Koszul sign enters
    for (int d = 2; d <= max_lie && d + 2 <= cutoff; ++d) {
        const int target = d + 2;
        const auto& table = im.monomial_index[static_cast<std::size_t>(target)];
        for (int d1 = 1; 2 * d1 <= d; ++d1) {
            int d2 = d - d1;
            for (std::size_t j = 0; j < lie.dim(d1); ++j)
                for (std::size_t k = (d1 == d2 ? j : 0); k < lie.dim(d2); ++k) {
                    int zj = im.id_of.at({d1, j});
                    int zk = im.id_of.at({d2, k});
                    if (zj == zk && d1 % 2 == 0) continue;  // odd dual squares to zero
                    std::size_t midx = table.at(Monomial{zj, zk});
                    // unordered-pair coefficient -(-1)^{d1} e, halved on the
                    // diagonal where the ordered sum has a single term
                    Rat factor = (d1 % 2 != 0) ? Rat(1) : Rat(-1);
                    if (zj == zk) factor /= 2;
                    for (const auto& [idx, e] : lie.bracket_basis(d1, j, d2, k)) {
                        std::size_t g = static_cast<std::size_t>(
                            im.id_of.at({d, static_cast<std::size_t>(idx)}));
                        acc[g][midx] += factor * e;
                    }
                }
        }
    }
    for (std::size_t g = 0; g < im.gens.size(); ++g)
        for (auto& [idx, c] : acc[g])
            if (c != 0) im.d_gen[g].emplace_back(idx, c);

    // full matrices, columns indexed by source monomials
    for (int n = 0; n < cutoff; ++n) {
        const auto& src = im.monomials[static_cast<std::size_t>(n)];
        const auto& dst = im.monomials[static_cast<std::size_t>(n) + 1];
        ratalg::RatMatrix mat(dst.size(), src.size());
        RatVec column(dst.size());
        for (std::size_t c = 0; c < src.size(); ++c) {
            std::fill(column.begin(), column.end(), Rat(0));
            im.d_monomial(src[c], column);
            for (std::size_t r = 0; r < dst.size(); ++r) mat.at(r, c) = column[r];
        }
        im.d_matrices.push_back(std::move(mat));
    }

    // d^2 = 0 on generators; the differential is a derivation, so this
    // already forces d^2 = 0 everywhere it is representable.
    for (std::size_t g = 0; g < im.gens.size(); ++g) {
        const int dg_degree = im.gens[g].cochain_degree + 1;
        if (dg_degree + 1 > cutoff) continue;
        RatVec v(im.monomials[static_cast<std::size_t>(dg_degree)].size(), Rat(0));
        for (const auto& [idx, c] : im.d_gen[g]) v[idx] = c;
        RatVec dd = im.d_matrices[static_cast<std::size_t>(dg_degree)].apply(v);
        for (const Rat& x : dd)
            if (x != 0)
                throw ContractViolation("chevalley_eilenberg: differential does not square to "
                                        "zero on generator " + im.gens[g].name);
    }
}

CochainAlgebra::~CochainAlgebra() = default;
CochainAlgebra::CochainAlgebra(CochainAlgebra&&) noexcept = default;
CochainAlgebra& CochainAlgebra::operator=(CochainAlgebra&&) noexcept = default;

int CochainAlgebra::cutoff() const { return impl_->cutoff; }

std::size_t CochainAlgebra::dim(int degree) const {
    impl_->require_degree(degree, "dim");
    return impl_->monomials[static_cast<std::size_t>(degree)].size();
}

std::string CochainAlgebra::monomial_name(int degree, std::size_t i) const {
    impl_->require_degree(degree, "monomial_name");
    const auto& m = impl_->monomials[static_cast<std::size_t>(degree)].at(i);
    if (m.empty()) return "1";
    std::ostringstream out;
    for (std::size_t t = 0; t < m.size(); ++t) {
        if (t) out << "*";
        out << "z(" << impl_->gens[static_cast<std::size_t>(m[t])].name << ")";
    }
    return out.str();
}

const ratalg::RatMatrix& CochainAlgebra::d_matrix(int degree) const {
    if (degree < 0 || degree + 1 > impl_->cutoff)
        throw CutoffExceeded("d_matrix: degree " + std::to_string(degree) +
                             " is boundary-incomplete at cutoff " +
                             std::to_string(impl_->cutoff));
    return impl_->d_matrices[static_cast<std::size_t>(degree)];
}

RatVec CochainAlgebra::d(int degree, const RatVec& v) const {
    const auto& m = d_matrix(degree);
    if (v.size() != m.cols())
        throw ContractViolation("d: vector has wrong dimension");
    return m.apply(v);
}

RatVec CochainAlgebra::multiply(int deg_u, const RatVec& u, int deg_v, const RatVec& v) const {
    auto& im = *impl_;
    im.require_degree(deg_u, "multiply");
    im.require_degree(deg_v, "multiply");
    if (deg_u + deg_v > im.cutoff)
        throw CutoffExceeded("multiply: product degree " + std::to_string(deg_u + deg_v) +
                             " beyond cutoff " + std::to_string(im.cutoff));
    if (u.size() != dim(deg_u) || v.size() != dim(deg_v))
        throw ContractViolation("multiply: vector has wrong dimension");
    RatVec out(dim(deg_u + deg_v), Rat(0));
    const auto& mu = im.monomials[static_cast<std::size_t>(deg_u)];
    const auto& mv = im.monomials[static_cast<std::size_t>(deg_v)];
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (v[j] == 0) continue;
            im.accumulate_product(mu[i], mv[j], u[i] * v[j], out);
        }
    }
    return out;
}

RatVec Cohomology::coords_of(const RatVec& cocycle) const {
    RatVec w = ratalg::coset_reduce(cocycle, boundaries).canonical;
    RatVec coords(reps.size(), Rat(0));
    for (std::size_t k = 0; k < reps.size(); ++k) {
        coords[k] = w[pivots[k]];
        if (coords[k] == 0) continue;
        for (std::size_t j = 0; j < w.size(); ++j) w[j] -= coords[k] * reps[k][j];
    }
    for (const Rat& x : w)
        if (x != 0)
            throw ContractViolation("coords_of: vector is not a cocycle of this degree");
    return coords;
}

RatVec Cohomology::representative(const RatVec& coords) const {
    if (coords.size() != reps.size())
        throw ContractViolation("representative: wrong number of coordinates");
    RatVec out(boundaries.ambient_dim(), Rat(0));
    for (std::size_t k = 0; k < reps.size(); ++k)
        for (std::size_t j = 0; j < out.size(); ++j) out[j] += coords[k] * reps[k][j];
    return out;
}

const Cohomology& CochainAlgebra::cohomology(int degree) const {
    auto& im = *impl_;
    if (degree < 0)
        throw ContractViolation("cohomology: negative degree");
    if (degree + 1 > im.cutoff)
        throw CutoffExceeded("cohomology: degree " + std::to_string(degree) +
                             " is boundary-incomplete at cutoff " + std::to_string(im.cutoff));
    std::lock_guard<std::mutex> lock(im.cache_mutex);
    auto it = im.cohomology_cache.find(degree);
    if (it != im.cohomology_cache.end()) return it->second;

    Cohomology h;
    h.degree = degree;
    const std::size_t n = dim(degree);
    // coboundary subspace
    std::vector<RatVec> image;
    if (degree >= 1) {
        const auto& prev = im.d_matrices[static_cast<std::size_t>(degree) - 1];
        for (std::size_t c = 0; c < prev.cols(); ++c) {
            RatVec col(n);
            for (std::size_t r = 0; r < n; ++r) col[r] = prev.at(r, c);
            image.push_back(std::move(col));
        }
    }
    h.boundaries = ratalg::Subspace(n, image);
    // cocycles modulo coboundaries, echelonized for canonical coordinates
    auto cocycles = ratalg::kernel_basis(im.d_matrices[static_cast<std::size_t>(degree)]);
    std::vector<RatVec> reduced;
    for (const auto& z : cocycles.basis()) {
        auto form = ratalg::coset_reduce(z, h.boundaries);
        if (!form.is_zero) reduced.push_back(std::move(form.canonical));
    }
    h.pivots = ratalg::rref(reduced);
    h.reps = std::move(reduced);
    return im.cohomology_cache.emplace(degree, std::move(h)).first->second;
}

CohomologyClass CochainAlgebra::class_of(int degree, const RatVec& cocycle) const {
    const auto& dv = d(degree, cocycle);
    for (const Rat& x : dv)
        if (x != 0) throw ContractViolation("class_of: vector is not a cocycle");
    return {degree, cohomology(degree).coords_of(cocycle)};
}

CohomologyClass CochainAlgebra::generator_class(const std::string& generator_name) const {
    auto& im = *impl_;
    const auto& gens = im.lie->generators();
    std::size_t gi = gens.size();
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (gens[i].name == generator_name) { gi = i; break; }
    if (gi == gens.size())
        throw ContractViolation("generator_class: unknown generator '" + generator_name + "'");
    const int d = gens[gi].degree;
    std::size_t idx = 0;  // generators come first in their degree, in order
    for (std::size_t i = 0; i < gi; ++i)
        if (gens[i].degree == d) ++idx;
    auto id_it = im.id_of.find({d, idx});
    if (id_it == im.id_of.end())
        throw CutoffExceeded("generator_class: generator degree beyond cutoff");
    RatVec v(dim(d + 1), Rat(0));
    v[im.monomial_index[static_cast<std::size_t>(d) + 1].at({id_it->second})] = 1;
    return class_of(d + 1, v);
}

CohomologyClass cup(const CochainAlgebra& alg, const CohomologyClass& u,
                    const CohomologyClass& v) {
    const auto& hu = alg.cohomology(u.degree);
    const auto& hv = alg.cohomology(v.degree);
    RatVec ru = hu.representative(u.coords);
    RatVec rv = hv.representative(v.coords);
    RatVec prod = alg.multiply(u.degree, ru, v.degree, rv);
    return alg.class_of(u.degree + v.degree, prod);
}

}  // namespace masseykit::cdga
