#include "masseykit/massey.hpp"

#include <algorithm>
#include <string>
#include <tuple>

namespace masseykit::massey {

namespace {

RatVec scaled(const Rat& c, const RatVec& v) {
    RatVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
    return out;
}

void add_into(RatVec& a, const RatVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
}

}  // namespace

MasseyResult massey_triple(const cdga::CochainAlgebra& alg, const cdga::CohomologyClass& u,
                           const cdga::CohomologyClass& v, const cdga::CohomologyClass& w,
                           const MasseyOptions& options) {
    const int p = u.degree, q = v.degree, r = w.degree;
    const int m = p + q + r - 1;
    if (m + 1 > alg.cutoff())
        throw CutoffExceeded("massey_triple: bounding cochains for total degree " +
                             std::to_string(m) + " cannot be certified at cutoff " +
                             std::to_string(alg.cutoff()));

    if (!cup(alg, u, v).is_zero())
        throw MasseyUndefined("massey_triple: u⌣v is nonzero, product undefined");
    if (!cup(alg, v, w).is_zero())
        throw MasseyUndefined("massey_triple: v⌣w is nonzero, product undefined");

    RatVec ru = alg.cohomology(p).representative(u.coords);
    RatVec rv = alg.cohomology(q).representative(v.coords);
    RatVec rw = alg.cohomology(r).representative(w.coords);

    // ds = u·v in degree p+q−1, dt = v·w in degree q+r−1
    auto s = ratalg::solve(alg.d_matrix(p + q - 1), alg.multiply(p, ru, q, rv));
    auto t = ratalg::solve(alg.d_matrix(q + r - 1), alg.multiply(q, rv, r, rw));
    if (!s || !t)
        throw ContractViolation("massey_triple: internal: coboundary system inconsistent");
    if (options.s_shift) {
        if (options.s_shift->size() != s->size())
            throw ContractViolation("massey_triple: s_shift has wrong dimension");
        add_into(*s, *options.s_shift);
    }
    if (options.t_shift) {
        if (options.t_shift->size() != t->size())
            throw ContractViolation("massey_triple: t_shift has wrong dimension");
        add_into(*t, *options.t_shift);
    }

    // representative cocycle u·t − (−1)^{|u|} s·w (convention documented in
    // the README)
    RatVec rep = alg.multiply(p, ru, q + r - 1, *t);
    add_into(rep, alg.multiply(p + q - 1, scaled(Rat(p % 2 == 0 ? -1 : 1), *s), r, rw));

    MasseyResult out;
    out.degree = m;
    out.representative = alg.class_of(m, rep).coords;

    const auto& hm = alg.cohomology(m);
    std::vector<RatVec> spanning;
    auto push_products = [&](int hdeg, bool left) {
        const auto& h = alg.cohomology(hdeg);
        for (std::size_t i = 0; i < h.dim(); ++i) {
            cdga::CohomologyClass e{hdeg, RatVec(h.dim(), Rat(0))};
            e.coords[i] = 1;
            auto prod = left ? cup(alg, u, e) : cup(alg, e, w);
            spanning.push_back(prod.coords);
        }
    };
    push_products(q + r - 1, true);
    push_products(p + q - 1, false);
    out.indeterminacy = ratalg::Subspace(hm.dim(), spanning);

    auto form = ratalg::coset_reduce(out.representative, out.indeterminacy);
    out.zero_coset = form.is_zero;
    out.canonical = std::move(form.canonical);
    return out;
}

std::size_t massey_rank(const cdga::CochainAlgebra& alg,
                        const std::vector<std::array<cdga::CohomologyClass, 3>>& triples) {
    std::vector<RatVec> rows;
    for (std::size_t i = 0; i < triples.size(); ++i) {
        auto res = massey_triple(alg, triples[i][0], triples[i][1], triples[i][2]);
        if (res.indeterminacy.dim() != 0)
            throw ContractViolation("massey_rank: triple #" + std::to_string(i + 1) +
                                    " has nonzero indeterminacy; rank of cosets is ill-posed");
        rows.push_back(std::move(res.canonical));
    }
    return ratalg::rref(rows).size();
}

std::vector<ScanEntry> formality_scan(const cdga::CochainAlgebra& alg, int max_degree) {
    if (max_degree + 1 > alg.cutoff())
        throw CutoffExceeded("formality_scan: max_degree " + std::to_string(max_degree) +
                             " needs cutoff at least " + std::to_string(max_degree + 1));
    std::vector<ScanEntry> out;
    for (int p = 2; p + 3 <= max_degree + 1; ++p)
        for (int q = 2; p + q + 1 <= max_degree + 1; ++q)
            for (int r = 2; p + q + r - 1 <= max_degree; ++r) {
                const auto& hp = alg.cohomology(p);
                const auto& hq = alg.cohomology(q);
                const auto& hr = alg.cohomology(r);
                for (std::size_t i = 0; i < hp.dim(); ++i)
                    for (std::size_t j = 0; j < hq.dim(); ++j)
                        for (std::size_t k = 0; k < hr.dim(); ++k) {
                            // dedup under ⟨u,v,w⟩ ↔ ⟨w,v,u⟩
                            if (std::make_tuple(r, k, q, j, p, i) <
                                std::make_tuple(p, i, q, j, r, k))
                                continue;
                            cdga::CohomologyClass u{p, RatVec(hp.dim(), Rat(0))};
                            cdga::CohomologyClass v{q, RatVec(hq.dim(), Rat(0))};
                            cdga::CohomologyClass w{r, RatVec(hr.dim(), Rat(0))};
                            u.coords[i] = 1;
                            v.coords[j] = 1;
                            w.coords[k] = 1;
                            try {
                                auto res = massey_triple(alg, u, v, w);
                                if (!res.zero_coset)
                                    out.push_back({{p, q, r}, {i, j, k}, std::move(res)});
                            } catch (const MasseyUndefined&) {
                                // cup hypothesis fails: triple not defined, skip
                            }
                        }
            }
    std::sort(out.begin(), out.end(), [](const ScanEntry& a, const ScanEntry& b) {
        return std::make_tuple(a.result.degree, a.degrees, a.indices) <
               std::make_tuple(b.result.degree, b.degrees, b.indices);
    });
    return out;
}

}  // namespace masseykit::massey
