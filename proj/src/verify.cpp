#include "tatecup/verify.hpp"

#include <functional>
#include <map>
#include <random>

#include "tatecup/error.hpp"
#include "tatecup/lattice.hpp"
#include "tatecup/products.hpp"

namespace tatecup {

namespace {

constexpr int kMaxCupDegree = 2;   // r + s for cup products
constexpr int kMaxAcupDegree = 2;  // r + s, so the result has degree <= 3

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

class Runner {
public:
    Runner(std::vector<Check>& out, const VerifyOptions& opts) : out_(out), opts_(opts) {}

    // `body` returns an empty string on success and a witness otherwise.
    void check(const std::string& name, const std::function<std::string(std::mt19937_64&)>& body) {
        std::seed_seq seq{static_cast<uint32_t>(opts_.seed), static_cast<uint32_t>(opts_.seed >> 32),
                          static_cast<uint32_t>(fnv1a(name)), static_cast<uint32_t>(fnv1a(name) >> 32)};
        std::mt19937_64 rng(seq);
        Check c{name, true, ""};
        try {
            c.witness = body(rng);
        } catch (const CheckFailure& e) {
            c.witness = e.what();
        } catch (const ResourceCapError& e) {
            c.witness = e.what();
        } catch (const InputError& e) {
            c.witness = e.what();
        } catch (const InternalError& e) {
            c.witness = std::string("internal: ") + e.what();
        }
        c.pass = c.witness.empty();
        out_.push_back(std::move(c));
    }

    int samples() const { return opts_.samples; }
    int lift_pairs() const { return opts_.lift_pairs; }

private:
    std::vector<Check>& out_;
    const VerifyOptions& opts_;
};

std::string cls(const CohClass& c) { return c.to_string(); }

// Every class when the group is small, otherwise generators, zero and a few
// random combinations.
std::vector<CohClass> sample_classes(const CohomologyPtr& h, std::mt19937_64& rng, std::size_t limit = 16) {
    auto order = h->group()->order();
    if (order && *order <= Int(static_cast<long long>(limit))) return h->elements();
    std::vector<CohClass> out{h->zero()};
    for (auto& g : h->generators()) out.push_back(g);
    for (int i = 0; i < 4; ++i) out.push_back(h->element(random_element(*h->group(), rng, 2)));
    return out;
}

CohClass signed_class(const CohClass& c, int r) { return r % 2 == 0 ? c : c.scaled(Int(-1)); }

bool small_module(const GModule& m) {
    auto o = m.carrier()->order();
    return !o || *o <= Int(16);
}

// Restrictions of modules to subgroups, kept alive so cohomology caches hit.
class Restrictions {
public:
    ModulePtr module(const ModulePtr& m, const std::shared_ptr<const Subgroup>& h) {
        auto key = std::make_pair(m.get(), h.get());
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        return memo_.emplace(key, restrict_module(m, *h, m->name() + "|H")).first->second;
    }
    GModuleMorphism map(const ModulePtr& m, const std::shared_ptr<const Subgroup>& h) {
        return GModuleMorphism(h->inclusion(), m, module(m, h), IntMatrix::identity(m->gens()));
    }
    GPairing pairing(const GPairing& p, const std::shared_ptr<const Subgroup>& h) {
        return GPairing(module(p.left(), h), module(p.right(), h), module(p.out(), h), p.tensor(), p.name() + "|H");
    }

private:
    std::map<std::pair<const GModule*, const Subgroup*>, ModulePtr> memo_;
};

// ---------------------------------------------------------------- complex

std::string dd_zero(const GModule& m, int r) {
    SparseMatrix a = coboundary_sparse(m, r);
    SparseMatrix b = coboundary_sparse(m, r + 1);
    const auto& mod = m.moduli();
    const std::size_t k = m.gens();
    for (std::size_t row = 0; row < b.rows; ++row) {
        std::map<std::size_t, Int> acc;
        for (const auto& [mid, x] : b.entries[row])
            for (const auto& [col, y] : a.entries[mid]) acc[col] += x * y;
        for (auto& [col, v] : acc) {
            reduce_mod(v, mod[row % k]);
            if (!v.is_zero()) return "r=" + std::to_string(r) + " row " + std::to_string(row) + " col " + std::to_string(col);
        }
    }
    return "";
}

void suite_complex(const Workspace& ws, Runner& run) {
    for (const auto& [name, m] : ws.modules) {
        run.check("complex.dd_zero[" + name + "]", [&](std::mt19937_64&) {
            for (int r = 0; r <= 2; ++r)
                if (auto w = dd_zero(*m, r); !w.empty()) return w;
            return std::string();
        });
    }
    for (const auto& [name, mor] : ws.morphisms) {
        run.check("complex.induced_commutes[" + name + "]", [&](std::mt19937_64& rng) {
            for (int r = 0; r <= 2; ++r)
                for (int s = 0; s < run.samples(); ++s) {
                    Cochain f = random_cochain(mor.source(), r, rng);
                    if (!(induced_on_cochains(mor, coboundary(f)) == coboundary(induced_on_cochains(mor, f)))) {
                        return "r=" + std::to_string(r) + " f=" + f.to_string();
                    }
                }
            return std::string();
        });
    }
    for (const auto& [name, seq] : ws.sequences) {
        run.check("complex.cochain_exact[" + name + "]", [&](std::mt19937_64& rng) -> std::string {
            const auto& a1 = *seq.sub()->carrier();
            const auto& a = *seq.middle()->carrier();
            const auto& a2 = *seq.quotient()->carrier();
            if (a.free_rank() != a1.free_rank() + a2.free_rank()) return "free ranks do not add up";
            if (a.is_finite() && *a.order() != *a1.order() * *a2.order()) return "orders do not multiply";
            for (int r = 0; r <= 2; ++r)
                for (int s = 0; s < run.samples(); ++s) {
                    Cochain h = random_cochain(seq.sub(), r, rng);
                    if (!induced_on_cochains(seq.j(), induced_on_cochains(seq.i(), h)).is_zero()) return "j_* i_* != 0";
                    Cochain f = random_cochain(seq.middle(), r, rng);
                    Cochain back = f - lift(induced_on_cochains(seq.j(), f), seq);
                    Cochain sub = to_sub(back, seq);  // throws if ker j_* is not im i_*
                    if (!(induced_on_cochains(seq.i(), sub) == back)) return "i_* to_sub mismatch";
                }
            return "";
        });
        run.check("complex.lift_boundary_in_sub[" + name + "]", [&](std::mt19937_64& rng) -> std::string {
            for (int r = 0; r <= 2; ++r) {
                auto h = cohomology(seq.quotient(), r);
                for (int s = 0; s < run.samples(); ++s) {
                    Cochain z = h->representative(h->element(random_element(*h->group(), rng, 2)));
                    if (r > 0) z = z + coboundary(random_cochain(seq.quotient(), r - 1, rng));
                    Cochain f = lift_random(z, seq, rng);
                    Cochain d = to_sub(coboundary(f), seq);
                    if (!coboundary(d).is_zero()) return "d f is not a cocycle of A', r=" + std::to_string(r);
                }
            }
            return "";
        });
        run.check("complex.peel[" + name + "]", [&](std::mt19937_64& rng) -> std::string {
            for (int r = 0; r <= 2; ++r)
                for (int s = 0; s < run.samples(); ++s) {
                    Cochain f = induced_on_cochains(seq.i(), random_cochain(seq.sub(), r, rng));
                    if (r > 0) f = f + lift_random(coboundary(random_cochain(seq.quotient(), r - 1, rng)), seq, rng);
                    Peeled p = peel_to_subcochain(f, seq);
                    Cochain lhs = p.f_tilde ? f - coboundary(*p.f_tilde) : f;
                    if (!(lhs == induced_on_cochains(seq.i(), p.residue))) return "r=" + std::to_string(r) + " f=" + f.to_string();
                }
            return "";
        });
    }
    for (const auto& [name, m] : ws.modules) {
        run.check("complex.g_action[" + name + "]", [&](std::mt19937_64& rng) -> std::string {
            const auto& g = *m->group();
            const uint32_t n = static_cast<uint32_t>(g.order());
            for (int r = 0; r <= 2; ++r) {
                auto h = cohomology(m, r);
                for (int s = 0; s < run.samples(); ++s) {
                    Cochain f = random_cochain(m, r, rng);
                    uint32_t x = static_cast<uint32_t>(rng() % n), y = static_cast<uint32_t>(rng() % n);
                    if (!(g_act(x, g_act(y, f)) == g_act(g.mul(x, y), f))) return "composition law at " + std::to_string(x) + "," + std::to_string(y);
                    if (!(coboundary(g_act(x, f)) == g_act(x, coboundary(f)))) return "d does not commute at " + std::to_string(x);
                    Cochain z = h->representative(h->element(random_element(*h->group(), rng, 2)));
                    Cochain z2 = r > 0 ? z + coboundary(random_cochain(m, r - 1, rng)) : z;
                    if (!(h->classify(g_act(x, z)) == h->classify(g_act(x, z2)))) return "action does not descend, r=" + std::to_string(r);
                }
            }
            return "";
        });
    }
}

// ---------------------------------------------------------------- known

void suite_known(const Workspace& ws, Runner& run) {
    for (const auto& [name, m] : ws.modules) {
        run.check("known.h0_fixed[" + name + "]", [&](std::mt19937_64&) -> std::string {
            const std::size_t k = m->gens(), n = m->group()->order();
            IntMatrix stacked(n * k, k);
            for (uint32_t g = 0; g < n; ++g)
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) stacked(g * k + i, j) = m->action(g)(i, j) - (i == j ? 1 : 0);
            std::vector<Int> rows;
            for (std::size_t g = 0; g < n; ++g) rows.insert(rows.end(), m->moduli().begin(), m->moduli().end());
            LatticeBasis fixed(kernel_generators(SparseMatrix::from_dense(stacked), rows, m->moduli()), m->moduli());
            auto h0 = cohomology(m, 0);
            if (!(h0->subquotient().numerator() == fixed)) return "Z^0 differs from A^G";
            if (!(h0->subquotient().denominator() == LatticeBasis({}, m->moduli()))) return "B^0 is not zero";
            return "";
        });
    }
    for (const auto& [name, g] : ws.groups) {
        run.check("known.h1_integers[" + name + "]", [&](std::mt19937_64&) -> std::string {
            auto z = trivial_module(g, make_group(FgAbGroup::integers()), "Z");
            auto d = cohomology(z, 1)->describe();
            return d == "0" ? "" : "H^1 = " + d;
        });
    }
    run.check("known.z2_coefficients", [&](std::mt19937_64&) -> std::string {
        auto g = make_group(FiniteGroup::cyclic(2));
        auto m = trivial_module(g, make_group(FgAbGroup::cyclic(2)), "Z/2");
        for (int r = 1; r <= 2; ++r)
            if (auto d = cohomology(m, r)->describe(); d != "Z/2") return "H^" + std::to_string(r) + " = " + d;
        return "";
    });
}

// ---------------------------------------------------------------- cup

std::string cup_square(const GPairing& p1, const GPairing& p2, const GModuleMorphism& a, const GModuleMorphism& b,
                       const GModuleMorphism& c, std::mt19937_64& rng) {
    // (phi, c)^*(x u y) = (phi, a)^* x u (phi, b)^* y
    for (int r = 0; r <= kMaxCupDegree; ++r)
        for (int s = 0; r + s <= kMaxCupDegree; ++s)
            for (const auto& x : sample_classes(cohomology(p1.left(), r), rng))
                for (const auto& y : sample_classes(cohomology(p1.right(), s), rng)) {
                    CohClass lhs = induced_on_cohomology(c, cup_classes(x, y, p1));
                    CohClass rhs = cup_classes(induced_on_cohomology(a, x), induced_on_cohomology(b, y), p2);
                    if (!(lhs == rhs)) return "x=" + cls(x) + " y=" + cls(y);
                }
    return "";
}

// psi_C^*(x u_1 psi_B^* y) = psi_A^* x u_2 y with psi_B going backwards.
std::string twisted_cup_square(const GPairing& p1, const GPairing& p2, const GModuleMorphism& a,
                               const GModuleMorphism& b, const GModuleMorphism& c, std::mt19937_64& rng) {
    for (int r = 0; r <= kMaxCupDegree; ++r)
        for (int s = 0; r + s <= kMaxCupDegree; ++s)
            for (const auto& x : sample_classes(cohomology(p1.left(), r), rng))
                for (const auto& y : sample_classes(cohomology(p2.right(), s), rng)) {
                    CohClass lhs = induced_on_cohomology(c, cup_classes(x, induced_on_cohomology(b, y), p1));
                    CohClass rhs = cup_classes(induced_on_cohomology(a, x), y, p2);
                    if (!(lhs == rhs)) return "x=" + cls(x) + " y=" + cls(y);
                }
    return "";
}

void suite_cup(const Workspace& ws, Runner& run, Restrictions& res) {
    for (const auto& [name, p] : ws.pairings) {
        run.check("cup.leibniz[" + name + "]", [&](std::mt19937_64& rng) -> std::string {
            for (int r = 0; r <= kMaxCupDegree; ++r)
                for (int s = 0; r + s <= kMaxCupDegree; ++s)
                    for (int k = 0; k < run.samples(); ++k) {
                        Cochain f = random_cochain(p.left(), r, rng);
                        Cochain g = random_cochain(p.right(), s, rng);
                        Cochain t1 = cup_cochains(coboundary(f), g, p);
                        Cochain t2 = cup_cochains(f, coboundary(g), p);
                        if (!(coboundary(cup_cochains(f, g, p)) == (r % 2 == 0 ? t1 + t2 : t1 - t2))) {
                            return "r=" + std::to_string(r) + " s=" + std::to_string(s);
                        }
                    }
            return "";
        });
        run.check("cup.cocycles_and_coboundaries[" + name + "]", [&](std::mt19937_64& rng) -> std::string {
            for (int r = 0; r <= kMaxCupDegree; ++r)
                for (int s = 0; r + s <= kMaxCupDegree; ++s) {
                    auto hc = cohomology(p.out(), r + s);
                    auto ha = cohomology(p.left(), r);
                    auto hb = cohomology(p.right(), s);
                    for (int k = 0; k < run.samples(); ++k) {
                        CohClass x = ha->element(random_element(*ha->group(), rng, 2));
                        CohClass y = hb->element(random_element(*hb->group(), rng, 2));
                        Cochain f = ha->representative(x), g = hb->representative(y);
                        if (!coboundary(cup_cochains(f, g, p)).is_zero()) return "cocycle u cocycle is not a cocycle";
                        if (r > 0) {
                            Cochain df = coboundary(random_cochain(p.left(), r - 1, rng));
                            if (!hc->is_coboundary(cup_cochains(df, g, p))) return "d h u g is not a coboundary";
                            f = f + df;
                        }
                        if (s > 0) {
                            Cochain dg = coboundary(random_cochain(p.right(), s - 1, rng));
                            if (!hc->is_coboundary(cup_cochains(ha->representative(x), dg, p))) return "f u d h is not a coboundary";
                            g = g + dg;
                        }
                        if (!(hc->classify(cup_cochains(f, g, p)) == cup_classes(x, y, p))) return "class depends on representatives";
                    }
                }
            return "";
        });
        run.check("cup.graded_commutative[" + name + "]", [&](std::mt19937_64& rng) -> std::string {
            GPairing q = p.transposed();
            for (int r = 0; r <= kMaxCupDegree; ++r)
                for (int s = 0; r + s <= kMaxCupDegree; ++s)
                    for (const auto& x : sample_classes(cohomology(p.left(), r), rng))
                        for (const auto& y : sample_classes(cohomology(p.right(), s), rng)) {
                            if (!(cup_classes(x, y, p) == signed_class(cup_classes(y, x, q), r * s))) {
                                return "x=" + cls(x) + " y=" + cls(y);
                            }
                        }
            return "";
        });
        for (const auto& [hname, h] : ws.subgroups) {
            if (h->parent().get() != p.out()->group().get()) continue;
            run.check("cup.functorial[" + name + "|" + hname + "]", [&](std::mt19937_64& rng) {
                return cup_square(p, res.pairing(p, h), res.map(p.left(), h), res.map(p.right(), h),
                                  res.map(p.out(), h), rng);
            });
        }
    }
    for (const auto& [name, e] : ws.tate_morphisms) {
        const TateProduct& s = ws.tate(e.source).tate;
        const TateProduct& t = ws.tate(e.target).tate;
        const TateMorphism& m = e.morphism;
        run.check("cup.functorial[" + name + ".p1]",
                  [&](std::mt19937_64& rng) { return cup_square(s.p1(), t.p1(), m.a_sub, m.b, m.c, rng); });
        run.check("cup.functorial[" + name + ".p2]",
                  [&](std::mt19937_64& rng) { return cup_square(s.p2(), t.p2(), m.a, m.b_sub, m.c, rng); });
    }
    for (const auto& [name, e] : ws.tates) {
        const TateProduct& t = e.tate;
        // A' x B -> C against A x B' -> C along i_A and i_B.
        run.check("cup.twisted[" + name + "]", [&](std::mt19937_64& rng) {
            return twisted_cup_square(t.p1(), t.p2(), t.seq_a().i(), t.seq_b().i(), GModuleMorphism::identity(t.c()), rng);
        });
    }
    for (const auto& [name, e] : ws.twisted) {
        const TateProduct& s = ws.tate(e.first).tate;
        const TateProduct& t = ws.tate(e.second).tate;
        const TwistedTateMorphism& m = e.morphism;
        run.check("cup.twisted[" + name + ".p1]",
                  [&](std::mt19937_64& rng) { return twisted_cup_square(s.p1(), t.p1(), m.a_sub, m.b, m.c, rng); });
        run.check("cup.twisted[" + name + ".p2]",
                  [&](std::mt19937_64& rng) { return twisted_cup_square(s.p2(), t.p2(), m.a, m.b_sub, m.c, rng); });
    }
}

// ---------------------------------------------------------------- acup

template <typename F>
std::string for_acup_pairs(const TateProduct& t, std::mt19937_64& rng, F&& body) {
    for (int r = 0; r <= kMaxAcupDegree; ++r)
        for (int s = 0; r + s <= kMaxAcupDegree; ++s)
            for (const auto& x : sample_classes(cohomology(t.seq_a().quotient(), r), rng))
                for (const auto& y : sample_classes(cohomology(t.seq_b().quotient(), s), rng))
                    if (auto w = body(x, y); !w.empty()) return w + " (x=" + cls(x) + " y=" + cls(y) + ")";
    return "";
}

std::string acup_square(const TateProduct& s, const TateProduct& t, const TateMorphism& m, std::mt19937_64& rng) {
    return for_acup_pairs(s, rng, [&](const CohClass& x, const CohClass& y) -> std::string {
        CohClass lhs = induced_on_cohomology(m.c, acup(x, y, s));
        CohClass rhs = acup(induced_on_cohomology(m.a_quot, x), induced_on_cohomology(m.b_quot, y), t);
        return lhs == rhs ? "" : "square does not commute";
    });
}

std::string twisted_acup_square(const TateProduct& s, const TateProduct& t, const TwistedTateMorphism& m,
                                std::mt19937_64& rng) {
    for (int r = 0; r <= kMaxAcupDegree; ++r)
        for (int q = 0; r + q <= kMaxAcupDegree; ++q)
            for (const auto& x : sample_classes(cohomology(s.seq_a().quotient(), r), rng))
                for (const auto& y : sample_classes(cohomology(t.seq_b().quotient(), q), rng)) {
                    CohClass lhs = induced_on_cohomology(m.c, acup(x, induced_on_cohomology(m.b_quot, y), s));
                    CohClass rhs = acup(induced_on_cohomology(m.a_quot, x), y, t);
                    if (!(lhs == rhs)) return "x=" + cls(x) + " y=" + cls(y);
                }
    return "";
}

TateMorphism restriction_morphism(const TateProduct& t, const TateProduct& th, const std::shared_ptr<const Subgroup>& h) {
    auto map = [&](const ModulePtr& from, const ModulePtr& to) {
        return GModuleMorphism(h->inclusion(), from, to, IntMatrix::identity(from->gens()));
    };
    TateMorphism m;
    m.phi = h->inclusion();
    m.a_sub = map(t.seq_a().sub(), th.seq_a().sub());
    m.a = map(t.seq_a().middle(), th.seq_a().middle());
    m.a_quot = map(t.seq_a().quotient(), th.seq_a().quotient());
    m.b_sub = map(t.seq_b().sub(), th.seq_b().sub());
    m.b = map(t.seq_b().middle(), th.seq_b().middle());
    m.b_quot = map(t.seq_b().quotient(), th.seq_b().quotient());
    m.c = map(t.c(), th.c());
    return m;
}

struct RestrictedTate {
    TateProduct tate;
    TateMorphism map;
};

class TateRestrictions {
public:
    const RestrictedTate& get(const std::string& tname, const TateProduct& t, const std::shared_ptr<const Subgroup>& h) {
        auto key = std::make_pair(tname, h.get());
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        TateProduct th = restrict_tate(t, *h);
        TateMorphism m = restriction_morphism(t, th, h);
        m.validate(t, th);
        return memo_.emplace(key, RestrictedTate{th, m}).first->second;
    }

private:
    std::map<std::pair<std::string, const Subgroup*>, RestrictedTate> memo_;
};

void suite_acup(const Workspace& ws, Runner& run, TateRestrictions& tres) {
    for (const auto& [name, e] : ws.tates) {
        const TateProduct& t = e.tate;
        run.check("acup.well_defined[" + name + "]", [&](std::mt19937_64& rng) {
            return for_acup_pairs(t, rng, [&](const CohClass& x, const CohClass& y) -> std::string {
                CohClass v = acup(x, y, t);
                for (int k = 0; k < run.lift_pairs(); ++k)
                    if (!(acup_random(x, y, t, rng) == v)) return "random lifts disagree";
                return "";
            });
        });
        run.check("acup.degree00[" + name + "]", [&](std::mt19937_64& rng) -> std::string {
            auto h0a = cohomology(t.seq_a().quotient(), 0);
            auto h0b = cohomology(t.seq_b().quotient(), 0);
            auto hc = cohomology(t.c(), 1);
            for (const auto& x : sample_classes(h0a, rng))
                for (const auto& y : sample_classes(h0b, rng)) {
                    CohClass v = acup(x, y, t);
                    for (int k = 0; k < run.lift_pairs(); ++k) {
                        Cochain f = lift_random(h0a->representative(x), t.seq_a(), rng);
                        Cochain g = lift_random(h0b->representative(y), t.seq_b(), rng);
                        if (!(hc->classify(acup_degree00(f.values(), g.values(), t)) == v)) {
                            return "x=" + cls(x) + " y=" + cls(y) + " a=" + f.to_string() + " b=" + g.to_string();
                        }
                    }
                }
            return "";
        });
        if (e.full) {
            run.check("acup.vanishing[" + name + "]", [&](std::mt19937_64& rng) {
                return for_acup_pairs(t, rng, [&](const CohClass& x, const CohClass& y) -> std::string {
                    return acup(x, y, t).is_zero() ? "" : "nonzero product";
                });
            });
        }
        if (e.reciprocity) {
            run.check("acup.graded_commutative[" + name + "]", [&](std::mt19937_64& rng) {
                return for_acup_pairs(t, rng, [&](const CohClass& x, const CohClass& y) -> std::string {
                    int r = x.parent()->degree(), s = y.parent()->degree();
                    return acup(x, y, t) == signed_class(acup(y, x, t), r * s) ? "" : "sign rule fails";
                });
            });
        }
        run.check("acup.equivariant[" + name + "]", [&](std::mt19937_64& rng) {
            return for_acup_pairs(t, rng, [&](const CohClass& x, const CohClass& y) -> std::string {
                CohClass v = acup(x, y, t);
                for (uint32_t g = 0; g < t.group()->order(); ++g)
                    if (!(g_act(g, v) == acup(g_act(g, x), g_act(g, y), t))) return "sigma=" + std::to_string(g);
                return "";
            });
        });
        for (const auto& [hname, h] : ws.subgroups) {
            if (h->parent().get() != t.group().get()) continue;
            run.check("acup.functorial[" + name + "|" + hname + "]", [&](std::mt19937_64& rng) {
                const auto& rt = tres.get(name, t, h);
                return acup_square(t, rt.tate, rt.map, rng);
            });
        }
    }
    for (const auto& [name, e] : ws.tate_morphisms) {
        run.check("acup.functorial[" + name + "]", [&](std::mt19937_64& rng) {
            return acup_square(ws.tate(e.source).tate, ws.tate(e.target).tate, e.morphism, rng);
        });
    }
    for (const auto& [name, e] : ws.twisted) {
        run.check("acup.twisted[" + name + "]", [&](std::mt19937_64& rng) {
            return twisted_acup_square(ws.tate(e.first).tate, ws.tate(e.second).tate, e.morphism, rng);
        });
    }
}

// ---------------------------------------------------------------- connecting

void suite_connecting(const Workspace& ws, Runner& run) {
    for (const auto& [name, e] : ws.tates) {
        const TateProduct& t = e.tate;
        run.check("connecting.upper_square[" + name + "]", [&](std::mt19937_64& rng) -> std::string {
            for (int r = 0; r <= kMaxAcupDegree; ++r)
                for (int s = 0; r + s <= kMaxAcupDegree; ++s)
                    for (const auto& x : sample_classes(cohomology(t.seq_a().middle(), r), rng))
                        for (const auto& y : sample_classes(cohomology(t.seq_b().quotient(), s), rng)) {
                            CohClass lhs = acup(induced_on_cohomology(t.seq_a().j(), x), y, t);
                            CohClass rhs = signed_class(cup_classes(x, connecting(t.seq_b(), y), t.p2()), r);
                            if (!(lhs == rhs)) return "alpha=" + cls(x) + " beta''=" + cls(y);
                        }
            return "";
        });
        run.check("connecting.lower_square[" + name + "]", [&](std::mt19937_64& rng) -> std::string {
            for (int r = 0; r <= kMaxAcupDegree; ++r)
                for (int s = 0; r + s <= kMaxAcupDegree; ++s)
                    for (const auto& x : sample_classes(cohomology(t.seq_a().quotient(), r), rng))
                        for (const auto& y : sample_classes(cohomology(t.seq_b().middle(), s), rng)) {
                            CohClass lhs = acup(x, induced_on_cohomology(t.seq_b().j(), y), t);
                            CohClass rhs = cup_classes(connecting(t.seq_a(), x), y, t.p1());
                            if (!(lhs == rhs)) return "alpha''=" + cls(x) + " beta=" + cls(y);
                        }
            return "";
        });
    }
    for (const auto& [name, seq] : ws.sequences) {
        run.check("connecting.lift_independent[" + name + "]", [&](std::mt19937_64& rng) -> std::string {
            for (int r = 0; r <= 2; ++r) {
                auto h = cohomology(seq.quotient(), r);
                for (int k = 0; k < run.samples(); ++k) {
                    CohClass x = h->element(random_element(*h->group(), rng, 2));
                    Cochain z = h->representative(x);
                    if (r > 0) z = z + coboundary(random_cochain(seq.quotient(), r - 1, rng));
                    if (!(connecting_with_lift(seq, lift_random(z, seq, rng)) == connecting(seq, x))) return "class " + cls(x);
                }
            }
            return "";
        });
        run.check("connecting.kills_image[" + name + "]", [&](std::mt19937_64& rng) -> std::string {
            for (int r = 0; r <= 2; ++r)
                for (const auto& x : sample_classes(cohomology(seq.middle(), r), rng))
                    if (!connecting(seq, induced_on_cohomology(seq.j(), x)).is_zero()) return "alpha=" + cls(x);
            return "";
        });
    }
    for (const auto& [name, e] : ws.extensions) {
        const TateProduct& t = ws.tate(e.tate).tate;
        run.check("connecting.restricted_pairing_trivial[" + name + "]", [&](std::mt19937_64&) -> std::string {
            for (int r = 0; r <= kMaxAcupDegree; ++r)
                for (int s = 0; r + s <= kMaxAcupDegree; ++s) induced_pairing(t, e.data, r, s);
            return "";
        });
        run.check("connecting.e_integers_surjective[" + name + "]", [&](std::mt19937_64&) -> std::string {
            auto e1 = cohomology(e.data.row_dpp.quotient(), 1)->describe();
            if (e1 != "0") return "H^1(E) = " + e1;
            auto res = induced_pairing(t, e.data, 0, 1);
            return res.right_surjective ? "" : "H^1(B'') -> H^1(D'') is not onto";
        });
    }
}

// ---------------------------------------------------------------- induction

struct InducedCase {
    std::string name;
    InducedData data;
};

std::vector<InducedCase> induced_cases(const Workspace& ws, Restrictions& res) {
    std::vector<InducedCase> out;
    for (const auto& [hname, h] : ws.subgroups)
        for (const auto& [mname, m] : ws.modules) {
            if (m->group().get() != h->parent().get() || !small_module(*m)) continue;
            out.push_back({hname + "," + mname, induce(h, res.module(m, h), m, "Ind(" + mname + ")")});
        }
    for (const auto& [name, e] : ws.induced)
        if (e.data.source_g) out.push_back({name, e.data});
    return out;
}

std::string element_lemmas(const InducedData& d1, const InducedData& d2, const InducedData& d3, const GPairing& p_h,
                           const GPairing& p_g, std::mt19937_64& rng, int samples) {
    GPairing ind = induce_pairing(d1, d2, d3, p_h);
    auto elems = [&](const AbGroupPtr& g) {
        auto o = g->order();
        std::vector<IntVector> v;
        if (o && *o <= Int(100)) return g->elements();
        for (int i = 0; i < samples; ++i) v.push_back(random_element(*g, rng, 3));
        return v;
    };
    auto left = elems(d1.induced->carrier());
    auto right = elems(d2.induced->carrier());
    for (const auto& a : left)
        for (const auto& b : right)
            if (d3.e.apply(ind.apply(a, b)) != p_h.apply(d1.e.apply(a), d2.e.apply(b))) return "lemma e fails";
    for (const auto& a : left)
        for (const auto& c : elems(d2.source_g.value()->carrier()))
            if (d3.pi->apply(ind.apply(a, d2.i->apply(c))) != p_g.apply(d1.pi->apply(a), c)) return "lemma pi fails";
    return "";
}

void suite_induction(const Workspace& ws, Runner& run, Restrictions& res, TateRestrictions& tres) {
    for (const auto& c : induced_cases(ws, res)) {
        run.check("induction.shapiro[" + c.name + "]", [&](std::mt19937_64&) -> std::string {
            for (int r = 0; r <= 2; ++r)
                if (!shapiro_bijective(c.data, r)) return "e^* not bijective in degree " + std::to_string(r);
            return "";
        });
        run.check("induction.cores_res[" + c.name + "]", [&](std::mt19937_64& rng) -> std::string {
            const Int index(static_cast<long long>(c.data.subgroup->index()));
            for (int r = 0; r <= 2; ++r)
                for (const auto& x : sample_classes(cohomology(*c.data.source_g, r), rng))
                    if (!(corestriction(c.data, restriction(c.data, x)) == x.scaled(index))) return "alpha=" + cls(x);
            return "";
        });
    }
    for (const auto& [tname, e] : ws.tates) {
        const TateProduct& t = e.tate;
        for (const auto& [hname, h] : ws.subgroups) {
            if (h->parent().get() != t.group().get()) continue;
            const std::string tag = tname + "|" + hname;
            auto induced = std::make_shared<std::optional<InducedTate>>();
            auto get = [&, induced]() -> const InducedTate& {
                if (!*induced) *induced = tate_induce(h, tres.get(tname, t, h).tate, t);
                return **induced;
            };
            run.check("induction.lemmas[" + tag + "]", [&, get](std::mt19937_64& rng) -> std::string {
                const InducedTate& it = get();
                const TateProduct& th = tres.get(tname, t, h).tate;
                if (auto w = element_lemmas(it.a_sub, it.b, it.c, th.p1(), t.p1(), rng, run.samples()); !w.empty()) return "p1: " + w;
                if (auto w = element_lemmas(it.a, it.b_sub, it.c, th.p2(), t.p2(), rng, run.samples()); !w.empty()) return "p2: " + w;
                return "";
            });
            run.check("induction.res_cores[" + tag + "]", [&, get](std::mt19937_64& rng) -> std::string {
                const InducedTate& it = get();
                const TateProduct& th = tres.get(tname, t, h).tate;
                for (int r = 0; r <= kMaxAcupDegree; ++r)
                    for (int s = 0; r + s <= kMaxAcupDegree; ++s)
                        for (const auto& x : sample_classes(cohomology(th.seq_a().quotient(), r), rng))
                            for (const auto& y : sample_classes(cohomology(t.seq_b().quotient(), s), rng)) {
                                CohClass lhs = corestriction(it.c, acup(x, restriction(it.b_quot, y), th));
                                CohClass rhs = acup(corestriction(it.a_quot, x), y, t);
                                if (!(lhs == rhs)) return "alpha=" + cls(x) + " beta=" + cls(y);
                            }
                return "";
            });
        }
    }
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"complex", "known", "cup", "acup", "connecting", "induction"};
    return names;
}

std::vector<Check> run_verify(const Workspace& ws, const VerifyOptions& opts) {
    if (!opts.suite.empty() && std::find(suite_names().begin(), suite_names().end(), opts.suite) == suite_names().end()) {
        throw InputError("unknown suite '" + opts.suite + "'");
    }
    std::vector<Check> out;
    Runner run(out, opts);
    Restrictions res;
    TateRestrictions tres;
    auto want = [&](const char* s) { return opts.suite.empty() || opts.suite == s; };
    if (want("complex")) suite_complex(ws, run);
    if (want("known")) suite_known(ws, run);
    if (want("cup")) suite_cup(ws, run, res);
    if (want("acup")) suite_acup(ws, run, tres);
    if (want("connecting")) suite_connecting(ws, run);
    if (want("induction")) suite_induction(ws, run, res, tres);
    return out;
}

}  // namespace tatecup
