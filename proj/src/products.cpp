#include "tatecup/products.hpp"

#include "tatecup/error.hpp"
#include "tatecup/kernels.hpp"
#include "tatecup/lattice.hpp"

namespace tatecup {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw InputError(what);
}

CohClass checked_class(const CohomologyPtr& h, const CohClass& c, const char* what) {
    if (c.parent()->module().get() != h->module().get() || c.parent()->degree() != h->degree()) {
        throw InputError(std::string(what) + ": class is not in H^" + std::to_string(h->degree()) + "(" +
                         h->module()->name() + ")");
    }
    return c;
}

// Canonical generators of the subgroup of `h` spanned by `gens`.
std::vector<CohClass> span_generators(const CohomologyPtr& h, const std::vector<CohClass>& gens) {
    std::vector<IntVector> coords;
    for (const auto& g : gens) coords.push_back(g.coords());
    Subquotient sq(h->group()->moduli(), coords, {});
    std::vector<CohClass> out;
    for (std::size_t i = 0; i < sq.group()->gens(); ++i) {
        IntVector e(sq.group()->gens());
        e[i] = 1;
        out.push_back(h->element(sq.section(e)));
    }
    return out;
}

}  // namespace

Cochain cup_cochains(const Cochain& f, const Cochain& g, const GPairing& p) {
    require(f.module().get() == p.left().get(), "cup: left cochain is over " + f.module()->name() + ", pairing expects " +
                                                    p.left()->name());
    require(g.module().get() == p.right().get(), "cup: right cochain is over " + g.module()->name() +
                                                     ", pairing expects " + p.right()->name());
    const GModule& right = *p.right();
    const std::size_t n = right.group()->order();
    IntVector out(kernels::power(n, f.degree() + g.degree()) * p.out()->gens());
    kernels::GroupView gv{right.group()->table(), n};
    kernels::cup(gv, right.view(), p.view(), f.degree(), g.degree(), f.values(), g.values(), out);
    return Cochain(p.out(), f.degree() + g.degree(), std::move(out));
}

CohClass cup_classes(const CohClass& a, const CohClass& b, const GPairing& p) {
    const auto& ha = *a.parent();
    const auto& hb = *b.parent();
    Cochain c = cup_cochains(ha.representative(a), hb.representative(b), p);
    return cohomology(p.out(), ha.degree() + hb.degree())->classify(c);
}

Cochain acup_cochain(const Cochain& f, const Cochain& g, const TateProduct& t) {
    const int r = f.degree();
    Cochain df = to_sub(coboundary(f), t.seq_a());
    Cochain dg = to_sub(coboundary(g), t.seq_b());
    Cochain first = cup_cochains(df, g, t.p1());
    Cochain second = cup_cochains(f, dg, t.p2());
    return r % 2 == 0 ? first + second : first - second;
}

namespace {

CohClass acup_impl(const CohClass& a, const CohClass& b, const TateProduct& t, std::mt19937_64* rng) {
    auto ha = cohomology(t.seq_a().quotient(), a.parent()->degree());
    auto hb = cohomology(t.seq_b().quotient(), b.parent()->degree());
    checked_class(ha, a, "acup");
    checked_class(hb, b, "acup");
    Cochain fpp = ha->representative(a);
    Cochain gpp = hb->representative(b);
    Cochain f = rng ? lift_random(fpp, t.seq_a(), *rng) : lift(fpp, t.seq_a());
    Cochain g = rng ? lift_random(gpp, t.seq_b(), *rng) : lift(gpp, t.seq_b());
    return cohomology(t.c(), ha->degree() + hb->degree() + 1)->classify(acup_cochain(f, g, t));
}

}  // namespace

CohClass acup(const CohClass& a, const CohClass& b, const TateProduct& t) { return acup_impl(a, b, t, nullptr); }

CohClass acup_random(const CohClass& a, const CohClass& b, const TateProduct& t, std::mt19937_64& rng) {
    return acup_impl(a, b, t, &rng);
}

Cochain acup_degree00(std::span<const Int> a, std::span<const Int> b, const TateProduct& t) {
    const GModule& ma = *t.seq_a().middle();
    const GModule& mb = *t.seq_b().middle();
    const std::size_t n = t.group()->order();
    IntVector ja = t.seq_a().j().apply(a);
    IntVector jb = t.seq_b().j().apply(b);
    for (uint32_t s = 0; s < n; ++s) {
        if (t.seq_a().quotient()->act(s, ja) != t.seq_a().quotient()->carrier()->reduce(ja) ||
            t.seq_b().quotient()->act(s, jb) != t.seq_b().quotient()->carrier()->reduce(jb)) {
            throw CheckFailure("degree-(0,0) product needs G-fixed images in A'' and B''", "s=" + std::to_string(s));
        }
    }
    const std::size_t k = t.c()->gens();
    IntVector out(n * k);
    for (uint32_t s = 0; s < n; ++s) {
        IntVector sa = ma.act(s, a);
        IntVector sb = mb.act(s, b);
        IntVector da(sa.size()), db(sb.size());
        for (std::size_t i = 0; i < sa.size(); ++i) da[i] = sa[i] - a[i];
        for (std::size_t i = 0; i < sb.size(); ++i) db[i] = sb[i] - b[i];
        auto da_sub = t.seq_a().sub_preimage(ma.carrier()->reduce(da));
        auto db_sub = t.seq_b().sub_preimage(mb.carrier()->reduce(db));
        if (!da_sub || !db_sub) throw InternalError("s a - a or s b - b left the submodule");
        IntVector x = t.p1().apply(*da_sub, sb);
        IntVector y = t.p2().apply(a, *db_sub);
        for (std::size_t i = 0; i < k; ++i) out[s * k + i] = x[i] + y[i];
    }
    return Cochain(t.c(), 1, std::move(out));
}

CohClass connecting_with_lift(const ShortExactSeq& seq, const Cochain& lift) {
    Cochain d = to_sub(coboundary(lift), seq);
    return cohomology(seq.sub(), lift.degree() + 1)->classify(d);
}

CohClass connecting(const ShortExactSeq& seq, const CohClass& a) {
    auto h = cohomology(seq.quotient(), a.parent()->degree());
    checked_class(h, a, "delta");
    return connecting_with_lift(seq, lift(h->representative(a), seq));
}

CohClass restriction(const InducedData& d, const CohClass& a) {
    if (!d.source_g || !d.i) throw InputError("restriction needs the G-structure of " + d.source->name());
    auto hg = cohomology(*d.source_g, a.parent()->degree());
    checked_class(hg, a, "res");
    GModuleMorphism res(d.subgroup->inclusion(), *d.source_g, d.source,
                        IntMatrix::identity(d.source->gens()));
    CohClass direct = induced_on_cohomology(res, a);
    CohClass via = induced_on_cohomology(d.e, induced_on_cohomology(*d.i, a));
    if (!(direct == via)) {
        throw InternalError("restriction disagrees with e^* i_* on " + a.to_string() + ": " + direct.to_string() +
                            " vs " + via.to_string());
    }
    return direct;
}

IntMatrix shapiro_matrix(const InducedData& d, int degree) { return induced_matrix(d.e, degree); }

bool shapiro_bijective(const InducedData& d, int degree) {
    AbHom e(cohomology(d.induced, degree)->group(), cohomology(d.source, degree)->group(), shapiro_matrix(d, degree));
    return e.is_injective() && e.is_surjective();
}

CohClass corestriction(const InducedData& d, const CohClass& a) {
    if (!d.pi) throw InputError("corestriction needs the G-structure of " + d.source->name());
    const int r = a.parent()->degree();
    auto hh = cohomology(d.source, r);
    checked_class(hh, a, "cores");
    auto hind = cohomology(d.induced, r);
    auto x = solve_in_lattice(shapiro_matrix(d, r), a.coords(), hh->group()->moduli());
    if (!x) throw InternalError("e^* is not surjective onto H^" + std::to_string(r) + "(" + d.source->name() + ")");
    return induced_on_cohomology(*d.pi, hind->element(std::move(*x)));
}

InducedPairingResult induced_pairing(const TateProduct& t, const ExtensionData& ext, int r, int s) {
    if (ext.seq_b.middle().get() != t.seq_b().middle().get() || ext.seq_b.quotient().get() != t.seq_b().quotient().get()) {
        throw InputError("extension " + ext.name + " is not built on the B sequence of " + t.name());
    }
    ext.validate();
    InducedPairingResult res;
    res.r = r;
    res.s = s;

    auto h_a = cohomology(t.seq_a().middle(), r);
    auto h_app = cohomology(t.seq_a().quotient(), r);
    std::vector<CohClass> images;
    for (const auto& g : h_a->generators()) images.push_back(induced_on_cohomology(t.seq_a().j(), g));
    res.left = span_generators(h_app, images);

    const GModuleMorphism& phi = ext.row_dpp.i();
    auto h_bpp = cohomology(t.seq_b().quotient(), s);
    auto h_dpp = cohomology(phi.target(), s);
    AbHom phi_star(h_bpp->group(), h_dpp->group(), induced_matrix(phi, s));
    for (auto& k : phi_star.kernel()) res.kernel.push_back(h_bpp->element(std::move(k)));
    std::vector<CohClass> right_images;
    for (const auto& g : h_bpp->generators()) right_images.push_back(h_dpp->element(phi_star.apply(g.coords())));
    res.right = span_generators(h_dpp, right_images);
    res.right_surjective = phi_star.is_surjective();

    for (const auto& a : res.left) {
        for (const auto& k : res.kernel) {
            CohClass v = acup(a, k, t);
            if (!v.is_zero()) {
                throw CheckFailure("acup does not vanish on Img j_* x Ker phi_*",
                                   "alpha=" + a.to_string() + " beta=" + k.to_string() + " value=" + v.to_string());
            }
        }
    }
    for (const auto& a : res.left) {
        std::vector<CohClass> row;
        for (const auto& v : res.right) {
            auto pre = phi_star.preimage(v.coords());
            if (!pre) throw InternalError("image generator without a preimage");
            CohClass b = h_bpp->element(*pre);
            CohClass value = acup(a, b, t);
            for (const auto& k : res.kernel) {
                CohClass other = acup(a, b + k, t);
                if (!(other == value)) {
                    throw CheckFailure("induced pairing depends on the preimage",
                                       "alpha=" + a.to_string() + " beta=" + b.to_string() + " shift=" + k.to_string());
                }
            }
            row.push_back(value);
        }
        res.table.push_back(std::move(row));
    }
    return res;
}

}  // namespace tatecup
