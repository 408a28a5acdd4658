#include "compare.hpp"

#include <functional>
#include <map>
#include <memory>
#include <set>

namespace oracle {

namespace {

using tatecup::CohClass;
using tatecup::Int;

Values to_values(const tatecup::IntVector& v) {
    Values out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.to_int64());
    return out;
}

tatecup::Cochain to_cochain(const tatecup::ModulePtr& m, int r, const Values& v) {
    tatecup::IntVector out;
    for (int64_t x : v) out.push_back(Int(static_cast<long long>(x)));
    return tatecup::Cochain(m, r, std::move(out));
}

std::string join(const std::vector<int64_t>& v) {
    std::string s;
    for (auto x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
    return "[" + s + "]";
}

// Oracle cohomology per (module, degree), kept for the life of the process.
const Cohomology* oracle_cohomology(const tatecup::ModulePtr& m, int r) {
    static std::map<std::pair<const tatecup::GModule*, int>, std::pair<tatecup::ModulePtr, std::optional<Cohomology>>> memo;
    auto key = std::make_pair(m.get(), r);
    auto it = memo.find(key);
    if (it == memo.end()) {
        std::optional<Cohomology> h;
        if (auto om = from_module(*m)) h = Cohomology::compute(*om, r);
        it = memo.emplace(key, std::make_pair(m, std::move(h))).first;
    }
    return it->second.second ? &*it->second.second : nullptr;
}

// Oracle coset of the main representative of c.
int coset_of(const Cohomology& oh, const CohClass& c) {
    return oh.coset(from_cochain(c.parent()->representative(c)));
}

}  // namespace

std::optional<Module> from_module(const tatecup::GModule& m) {
    if (!m.carrier()->is_finite()) return std::nullopt;
    Module out;
    out.n = m.group()->order();
    out.table.assign(m.group()->table().begin(), m.group()->table().end());
    out.moduli = to_values(m.moduli());
    const std::size_t k = m.gens();
    for (uint32_t g = 0; g < out.n; ++g) {
        Values a(k * k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) a[i * k + j] = m.action(g)(i, j).to_int64();
        out.act.push_back(std::move(a));
    }
    return out;
}

Map from_morphism(const tatecup::GModuleMorphism& m) {
    Map out;
    out.rows = m.matrix().rows();
    out.cols = m.matrix().cols();
    for (std::size_t i = 0; i < out.rows; ++i)
        for (std::size_t j = 0; j < out.cols; ++j) out.m.push_back(m.matrix()(i, j).to_int64());
    return out;
}

Pairing from_pairing(const tatecup::GPairing& p) {
    Pairing out;
    out.ka = p.left()->gens();
    out.kb = p.right()->gens();
    for (const auto& t : p.tensor()) out.tensor.push_back(to_values(t));
    return out;
}

Values from_cochain(const tatecup::Cochain& f) { return to_values(f.values()); }

Outcome compare_cohomology(const tatecup::ModulePtr& m, int r) {
    const Cohomology* oh = oracle_cohomology(m, r);
    if (!oh) return std::nullopt;
    auto h = tatecup::cohomology(m, r);
    std::vector<int64_t> main_inv = to_values(h->group()->torsion());
    if (h->group()->free_rank() != 0) return "main path reports a free part";
    if (main_inv != oh->invariants()) {
        return "invariants " + join(main_inv) + " vs oracle " + join(oh->invariants());
    }
    auto elements = h->elements();
    if (elements.size() != oh->order()) return "class count differs";
    std::map<int, std::size_t> seen;
    std::vector<int> ids;
    for (std::size_t e = 0; e < elements.size(); ++e) {
        int id = coset_of(*oh, elements[e]);
        if (id < 0) return "representative of " + elements[e].to_string() + " is not a cocycle";
        if (!seen.emplace(id, e).second) return "representatives of two classes are cohomologous";
        ids.push_back(id);
    }
    std::mt19937_64 rng(static_cast<uint64_t>(r) * 7919 + elements.size());
    for (const auto& [id, e] : seen) {
        CohClass back = h->classify(to_cochain(m, r, oh->random_member(id, rng)));
        if (!(back == elements[e])) return "classify disagrees on coset of " + elements[e].to_string();
    }
    const bool all_pairs = elements.size() <= 64;
    auto gens = h->generators();
    for (std::size_t a = 0; a < elements.size(); ++a) {
        const std::size_t limit = all_pairs ? elements.size() : gens.size();
        for (std::size_t b = 0; b < limit; ++b) {
            const CohClass& y = all_pairs ? elements[b] : gens[b];
            Values sum = from_cochain(h->representative(elements[a]));
            Values yv = from_cochain(h->representative(y));
            for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += yv[i];
            if (oh->coset(sum) != coset_of(*oh, elements[a] + y)) {
                return "addition differs at " + elements[a].to_string() + " + " + y.to_string();
            }
        }
    }
    return std::string();
}

Outcome compare_cup(const tatecup::GPairing& p, int r, int s, std::mt19937_64& rng) {
    const Cohomology* oa = oracle_cohomology(p.left(), r);
    const Cohomology* ob = oracle_cohomology(p.right(), s);
    const Cohomology* oc = oracle_cohomology(p.out(), r + s);
    if (!oa || !ob || !oc) return std::nullopt;
    auto mb = from_module(*p.right());
    auto mc = from_module(*p.out());
    const Pairing op = from_pairing(p);
    auto ha = tatecup::cohomology(p.left(), r);
    auto hb = tatecup::cohomology(p.right(), s);
    for (const auto& a : ha->elements()) {
        for (const auto& b : hb->elements()) {
            CohClass c = tatecup::cup_classes(a, b, p);
            Values f = oa->random_member(coset_of(*oa, a), rng);
            Values g = ob->random_member(coset_of(*ob, b), rng);
            int got = oc->coset(cup(*mb, *mc, op, r, s, f, g));
            if (got < 0) return "oracle cup of " + a.to_string() + ", " + b.to_string() + " is not a cocycle";
            if (got != coset_of(*oc, c)) return "cup " + a.to_string() + " x " + b.to_string() + " = " + c.to_string();
        }
    }
    return std::string();
}

Outcome compare_acup(const tatecup::TateProduct& t, int r, int s, std::mt19937_64& rng) {
    const auto& sa = t.seq_a();
    const auto& sb = t.seq_b();
    const Cohomology* oa = oracle_cohomology(sa.quotient(), r);
    const Cohomology* ob = oracle_cohomology(sb.quotient(), s);
    const Cohomology* oc = oracle_cohomology(t.c(), r + s + 1);
    if (!oa || !ob || !oc) return std::nullopt;
    auto a1 = from_module(*sa.sub());
    auto a = from_module(*sa.middle());
    auto a2 = from_module(*sa.quotient());
    auto b1 = from_module(*sb.sub());
    auto b = from_module(*sb.middle());
    auto b2 = from_module(*sb.quotient());
    auto c = from_module(*t.c());
    if (!a1 || !a || !b1 || !b) return std::nullopt;
    Preimages ja(*a, *a2, from_morphism(sa.j()));
    Preimages ia(*a1, *a, from_morphism(sa.i()));
    Preimages jb(*b, *b2, from_morphism(sb.j()));
    Preimages ib(*b1, *b, from_morphism(sb.i()));
    if (!ja.surjective() || !jb.surjective() || !ia.injective() || !ib.injective()) return "sequence is not exact";
    const Pairing p1 = from_pairing(t.p1());
    const Pairing p2 = from_pairing(t.p2());

    auto ha = tatecup::cohomology(sa.quotient(), r);
    auto hb = tatecup::cohomology(sb.quotient(), s);
    for (const auto& x : ha->elements()) {
        for (const auto& y : hb->elements()) {
            CohClass main = tatecup::acup(x, y, t);
            Values f = *ja.pick_cochain(oa->random_member(coset_of(*oa, x), rng), rng);
            Values g = *jb.pick_cochain(ob->random_member(coset_of(*ob, y), rng), rng);
            auto df = ia.pick_cochain(coboundary(*a, r, f), rng);
            auto dg = ib.pick_cochain(coboundary(*b, s, g), rng);
            if (!df || !dg) return "d of a lift leaves the submodule";
            Values first = cup(*b, *c, p1, r + 1, s, *df, g);
            Values second = cup(*b1, *c, p2, r, s + 1, f, *dg);
            for (std::size_t i = 0; i < first.size(); ++i) first[i] += (r % 2 == 0 ? 1 : -1) * second[i];
            int got = oc->coset(first);
            if (got < 0) return "oracle acup of " + x.to_string() + ", " + y.to_string() + " is not a cocycle";
            if (got != coset_of(*oc, main)) {
                return "acup " + x.to_string() + " x " + y.to_string() + " = " + main.to_string();
            }
        }
    }
    return std::string();
}

SweepReport sweep(const tatecup::Workspace& ws, uint64_t seed) {
    SweepReport rep;
    std::mt19937_64 rng(seed);
    auto record = [&](const std::string& what, const Outcome& o) {
        if (!o) {
            ++rep.skipped;
        } else {
            ++rep.compared;
            if (!o->empty()) rep.failures.push_back(what + ": " + *o);
        }
    };
    auto guarded = [&](const std::string& what, const std::function<Outcome()>& f) {
        try {
            record(what, f());
        } catch (const std::exception& e) {
            ++rep.compared;
            rep.failures.push_back(what + ": " + e.what());
        }
    };
    for (const auto& [name, m] : ws.modules) {
        if (!m->carrier()->is_finite()) continue;
        for (int r = 0; r <= 3; ++r)
            guarded("H^" + std::to_string(r) + "(" + name + ")", [&] { return compare_cohomology(m, r); });
    }
    std::map<std::string, tatecup::GPairing> pairings(ws.pairings.begin(), ws.pairings.end());
    for (const auto& [name, e] : ws.tates) {
        pairings.emplace(name + ".p1", e.tate.p1());
        pairings.emplace(name + ".p2", e.tate.p2());
    }
    for (const auto& [name, p] : pairings) {
        for (int r = 0; r <= 2; ++r)
            for (int s = 0; r + s <= 2; ++s)
                guarded("cup " + name + " (" + std::to_string(r) + "," + std::to_string(s) + ")",
                        [&] { return compare_cup(p, r, s, rng); });
    }
    for (const auto& [name, e] : ws.tates) {
        for (int r = 0; r <= 2; ++r)
            for (int s = 0; r + s <= 2; ++s)
                guarded("acup " + name + " (" + std::to_string(r) + "," + std::to_string(s) + ")",
                        [&] { return compare_acup(e.tate, r, s, rng); });
    }
    return rep;
}

}  // namespace oracle
