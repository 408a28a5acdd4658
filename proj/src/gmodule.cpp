#include "tatecup/gmodule.hpp"

#include <map>

#include "tatecup/error.hpp"

namespace tatecup {

namespace {

void reduce_rows(IntMatrix& m, std::span<const Int> moduli) {
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (auto& v : m.row(r)) reduce_mod(v, moduli[r]);
}

IntMatrix reduced(IntMatrix m, std::span<const Int> moduli) {
    reduce_rows(m, moduli);
    return m;
}

IntVector unit(std::size_t n, std::size_t i) {
    IntVector v(n);
    v[i] = 1;
    return v;
}

std::string pair_str(std::size_t a, std::size_t b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

std::string triple_str(std::size_t a, std::size_t b, std::size_t c) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

bool same_hom(const AbHom& x, const AbHom& y) {
    return reduced(x.matrix(), x.target()->moduli()) == reduced(y.matrix(), y.target()->moduli());
}

void require_same(const ModulePtr& a, const ModulePtr& b, const std::string& what) {
    if (a.get() != b.get()) throw InputError(what);
}

// Canonical matrix of a map given on presentation coordinates.
IntMatrix to_canonical_matrix(const FgAbGroup& source, const FgAbGroup& target, const IntMatrix& presentation) {
    return reduced(target.to_canonical() * presentation * source.from_canonical(), target.moduli());
}

}  // namespace

GModule::GModule(GroupPtr group, AbGroupPtr carrier, std::vector<IntMatrix> action, std::string name)
    : group_(std::move(group)), carrier_(std::move(carrier)), name_(std::move(name)) {
    const std::size_t n = group_->order();
    if (action.size() != n) {
        throw InputError("module " + name_ + " needs one action matrix per group element (" + std::to_string(n) + ")");
    }
    action_.reserve(n);
    for (auto& m : action) action_.push_back(AbHom(carrier_, carrier_, std::move(m)).matrix());
    const auto& mod = carrier_->moduli();
    if (!(action_[0] == reduced(IntMatrix::identity(gens()), mod))) {
        throw CheckFailure("identity does not act trivially on " + name_, "0");
    }
    for (uint32_t s = 0; s < n; ++s)
        for (uint32_t t = 0; t < n; ++t) {
            if (!(reduced(action_[s] * action_[t], mod) == action_[group_->mul(s, t)])) {
                throw CheckFailure("action law fails on " + name_, pair_str(s, t));
            }
        }
}

IntVector GModule::act(uint32_t g, std::span<const Int> coords) const {
    IntVector out = action_[g] * coords;
    reduce_vector(out, moduli());
    return out;
}

bool GModule::has_trivial_action() const {
    const IntMatrix id = reduced(IntMatrix::identity(gens()), moduli());
    for (const auto& m : action_)
        if (!(m == id)) return false;
    return true;
}

kernels::ModuleView GModule::view() const {
    kernels::ModuleView v;
    v.group.table = group_->table();
    v.group.order = group_->order();
    v.action = &action_;
    v.moduli = moduli();
    return v;
}

ModulePtr make_module(GroupPtr group, AbGroupPtr carrier, std::vector<IntMatrix> action, std::string name) {
    return std::make_shared<const GModule>(std::move(group), std::move(carrier), std::move(action), std::move(name));
}

ModulePtr trivial_module(GroupPtr group, AbGroupPtr carrier, std::string name) {
    std::vector<IntMatrix> action(group->order(), IntMatrix::identity(carrier->gens()));
    return make_module(std::move(group), std::move(carrier), std::move(action), std::move(name));
}

ModulePtr module_from_presentation(GroupPtr group, const FgAbGroup& carrier, const std::vector<IntMatrix>& action,
                                   std::string name) {
    std::vector<IntMatrix> canonical;
    canonical.reserve(action.size());
    for (const auto& p : action) canonical.push_back(to_canonical_matrix(carrier, carrier, p));
    return make_module(std::move(group), make_group(carrier), std::move(canonical), std::move(name));
}

ModulePtr pullback(const ModulePtr& m, const GroupHom& phi, std::string name) {
    if (!(*phi.target() == *m->group())) throw InputError("pullback along a homomorphism into another group");
    std::vector<IntMatrix> action;
    for (uint32_t g = 0; g < phi.source()->order(); ++g) action.push_back(m->action(phi(g)));
    return make_module(phi.source(), m->carrier(), std::move(action), name.empty() ? m->name() : std::move(name));
}

ModulePtr restrict_module(const ModulePtr& m, const Subgroup& h, std::string name) {
    return pullback(m, h.inclusion(), std::move(name));
}

GModuleMorphism::GModuleMorphism(GroupHom phi, ModulePtr source, ModulePtr target, IntMatrix psi)
    : phi_(std::move(phi)), source_(std::move(source)), target_(std::move(target)) {
    if (!(*phi_.target() == *source_->group()) || !(*phi_.source() == *target_->group())) {
        throw InputError("morphism " + source_->name() + " -> " + target_->name() + ": group map has wrong ends");
    }
    psi_ = AbHom(source_->carrier(), target_->carrier(), std::move(psi));
    const auto& mod = target_->moduli();
    for (uint32_t g = 0; g < target_->group()->order(); ++g) {
        IntMatrix lhs = reduced(psi_.matrix() * source_->action(phi_(g)), mod);
        IntMatrix rhs = reduced(target_->action(g) * psi_.matrix(), mod);
        if (!(lhs == rhs)) {
            throw CheckFailure("map " + source_->name() + " -> " + target_->name() + " is not equivariant",
                               "g=" + std::to_string(g));
        }
    }
}

GModuleMorphism::GModuleMorphism(ModulePtr source, ModulePtr target, IntMatrix psi)
    : GModuleMorphism(GroupHom::identity(target->group()), source, target, std::move(psi)) {}

GModuleMorphism GModuleMorphism::identity(const ModulePtr& m) {
    return GModuleMorphism(m, m, IntMatrix::identity(m->gens()));
}

GModuleMorphism GModuleMorphism::compose(const GModuleMorphism& inner) const {
    require_same(inner.target_, source_, "composition of morphisms with mismatched modules");
    return GModuleMorphism(inner.phi_.compose(phi_), inner.source_, target_, psi_.matrix() * inner.psi_.matrix());
}

GPairing::GPairing(ModulePtr left, ModulePtr right, ModulePtr out, Tensor tensor, std::string name)
    : left_(std::move(left)), right_(std::move(right)), out_(std::move(out)), tensor_(std::move(tensor)),
      name_(std::move(name)) {
    if (left_->group().get() != out_->group().get() && !(*left_->group() == *out_->group())) {
        throw InputError("pairing " + name_ + " mixes groups");
    }
    if (!(*right_->group() == *out_->group())) throw InputError("pairing " + name_ + " mixes groups");
    const std::size_t kl = left_->gens(), kr = right_->gens(), kc = out_->gens();
    if (tensor_.size() != kl * kr) throw InputError("pairing " + name_ + " needs one value per generator pair");
    const auto& om = out_->moduli();
    for (auto& v : tensor_) {
        if (v.size() != kc) throw InputError("pairing " + name_ + " value has wrong length");
        reduce_vector(v, om);
    }
    for (std::size_t a = 0; a < kl; ++a)
        for (std::size_t b = 0; b < kr; ++b) {
            const IntVector& v = on_gens(a, b);
            for (const Int& d : {left_->moduli()[a], right_->moduli()[b]}) {
                if (d.is_zero()) continue;
                IntVector w = v;
                for (auto& x : w) x *= d;
                reduce_vector(w, om);
                for (const auto& x : w)
                    if (!x.is_zero()) throw CheckFailure("pairing " + name_ + " does not respect torsion", pair_str(a, b));
            }
        }
    for (uint32_t g = 0; g < out_->group()->order(); ++g)
        for (std::size_t a = 0; a < kl; ++a)
            for (std::size_t b = 0; b < kr; ++b) {
                IntVector lhs = out_->act(g, on_gens(a, b));
                IntVector rhs = apply(left_->act(g, unit(kl, a)), right_->act(g, unit(kr, b)));
                if (lhs != rhs) throw CheckFailure("pairing " + name_ + " is not G-equivariant", triple_str(g, a, b));
            }
}

GPairing GPairing::from_function(ModulePtr left, ModulePtr right, ModulePtr out,
                                 const std::function<IntVector(std::size_t, std::size_t)>& on_gens, std::string name) {
    Tensor t;
    for (std::size_t a = 0; a < left->gens(); ++a)
        for (std::size_t b = 0; b < right->gens(); ++b) t.push_back(on_gens(a, b));
    return GPairing(std::move(left), std::move(right), std::move(out), std::move(t), std::move(name));
}

IntVector GPairing::apply(std::span<const Int> a, std::span<const Int> b) const {
    const std::size_t kr = right_->gens();
    IntVector out(out_->gens());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < kr; ++j) {
            if (b[j].is_zero()) continue;
            Int f = a[i] * b[j];
            const IntVector& v = tensor_[i * kr + j];
            for (std::size_t c = 0; c < out.size(); ++c)
                if (!v[c].is_zero()) out[c] += f * v[c];
        }
    }
    reduce_vector(out, out_->moduli());
    return out;
}

GPairing GPairing::transposed(std::string name) const {
    return from_function(right_, left_, out_, [&](std::size_t b, std::size_t a) { return on_gens(a, b); },
                         name.empty() ? name_ + "^T" : std::move(name));
}

kernels::PairingView GPairing::view() const {
    kernels::PairingView v;
    v.left_gens = left_->gens();
    v.right_gens = right_->gens();
    v.tensor = tensor_;
    v.out_moduli = out_->moduli();
    return v;
}

ShortExactSeq::ShortExactSeq(GModuleMorphism i, GModuleMorphism j, std::string name)
    : i_(std::move(i)), j_(std::move(j)), name_(std::move(name)) {
    require_same(i_.target(), j_.source(), "sequence " + name_ + ": i and j do not compose");
    if (!i_.phi().is_identity() || !j_.phi().is_identity()) {
        throw InputError("sequence " + name_ + " must use the identity on the group");
    }
    if (!i_.psi().is_injective()) throw CheckFailure("sequence " + name_ + ": i is not injective", "");
    if (!j_.psi().is_surjective()) throw CheckFailure("sequence " + name_ + ": j is not surjective", "");
    const auto& am = middle()->moduli();
    std::vector<IntVector> cols;
    for (std::size_t c = 0; c < i_.matrix().cols(); ++c) cols.push_back(i_.matrix().column(c));
    image_i_ = std::make_shared<const LatticeBasis>(cols, am);
    solve_i_ = std::make_shared<const LatticeSolver>(i_.matrix(), am);
    for (std::size_t c = 0; c < cols.size(); ++c) {
        IntVector y = j_.apply(cols[c]);
        for (const auto& v : y)
            if (!v.is_zero()) throw CheckFailure("sequence " + name_ + ": j o i is not zero", "generator " + std::to_string(c));
    }
    for (const auto& k : j_.psi().kernel()) {
        if (!image_i_->contains(k)) {
            throw CheckFailure("sequence " + name_ + ": kernel of j is larger than image of i",
                               AbElement(middle()->carrier(), k).to_string());
        }
    }
    const std::size_t kq = quotient()->gens();
    for (std::size_t g = 0; g < kq; ++g) {
        auto pre = j_.psi().preimage(unit(kq, g));
        if (!pre) throw InternalError("surjective map without preimage");
        lifts_.push_back(std::move(*pre));
    }
}

IntVector ShortExactSeq::section(std::span<const Int> y) const {
    IntVector x(middle()->gens());
    for (std::size_t g = 0; g < y.size(); ++g) {
        if (y[g].is_zero()) continue;
        for (std::size_t r = 0; r < x.size(); ++r) x[r] += y[g] * lifts_[g][r];
    }
    return image_i_->reduce(x);
}

std::optional<IntVector> ShortExactSeq::sub_preimage(std::span<const Int> x) const {
    auto a = solve_i_->solve(x);
    if (!a) return std::nullopt;
    return sub()->carrier()->reduce(std::move(*a));
}

std::pair<ModulePtr, GModuleMorphism> quotient_module(const ModulePtr& m, const std::vector<IntVector>& sub,
                                                      std::string name) {
    const std::size_t k = m->gens();
    const auto& mod = m->moduli();
    LatticeBasis span(sub, mod);
    for (uint32_t g = 0; g < m->group()->order(); ++g)
        for (std::size_t s = 0; s < sub.size(); ++s)
            if (!span.contains(m->act(g, sub[s]))) {
                throw CheckFailure("submodule of " + m->name() + " is not G-stable", pair_str(g, s));
            }
    std::vector<IntVector> all;
    for (std::size_t i = 0; i < k; ++i) all.push_back(unit(k, i));
    Subquotient q(mod, all, sub);
    const std::size_t kq = q.group()->gens();
    std::vector<IntMatrix> action;
    for (uint32_t g = 0; g < m->group()->order(); ++g) {
        IntMatrix a(kq, kq);
        for (std::size_t c = 0; c < kq; ++c) {
            IntVector img = q.project(m->act(g, q.section(unit(kq, c))));
            for (std::size_t r = 0; r < kq; ++r) a(r, c) = img[r];
        }
        action.push_back(std::move(a));
    }
    auto quot = make_module(m->group(), q.group(), std::move(action), name.empty() ? m->name() + "/sub" : std::move(name));
    IntMatrix j(kq, k);
    for (std::size_t c = 0; c < k; ++c) {
        IntVector img = q.project(unit(k, c));
        for (std::size_t r = 0; r < kq; ++r) j(r, c) = img[r];
    }
    GModuleMorphism proj(m, quot, std::move(j));
    return {quot, proj};
}

TateProduct::TateProduct(ShortExactSeq a, ShortExactSeq b, GPairing p1, GPairing p2, std::string name)
    : a_(std::move(a)), b_(std::move(b)), p1_(std::move(p1)), p2_(std::move(p2)), name_(std::move(name)) {
    const std::string where = "Tate product " + name_ + ": ";
    require_same(p1_.left(), a_.sub(), where + "first pairing must start on A'");
    require_same(p1_.right(), b_.middle(), where + "first pairing must pair with B");
    require_same(p2_.left(), a_.middle(), where + "second pairing must start on A");
    require_same(p2_.right(), b_.sub(), where + "second pairing must pair with B'");
    require_same(p1_.out(), p2_.out(), where + "pairings must share C");
    if (a_.group().get() != b_.group().get() && !(*a_.group() == *b_.group())) {
        throw InputError(where + "sequences over different groups");
    }
    const std::size_t ka = a_.sub()->gens(), kb = b_.sub()->gens();
    for (std::size_t x = 0; x < ka; ++x)
        for (std::size_t y = 0; y < kb; ++y) {
            IntVector lhs = p1_.apply(unit(ka, x), b_.i().apply(unit(kb, y)));
            IntVector rhs = p2_.apply(a_.i().apply(unit(ka, x)), unit(kb, y));
            if (lhs != rhs) throw CheckFailure(where + "pairings disagree on A' x B'", pair_str(x, y));
        }
}

TateProduct tate_from_reciprocity(const GModuleMorphism& embed, const GPairing& pairing, std::string name) {
    require_same(pairing.left(), embed.source(), "reciprocity pairing must start on the submodule");
    require_same(pairing.right(), embed.target(), "reciprocity pairing must pair with the ambient module");
    const std::size_t k = embed.source()->gens();
    for (std::size_t f = 0; f < k; ++f)
        for (std::size_t g = 0; g < k; ++g) {
            IntVector lhs = pairing.apply(unit(k, f), embed.apply(unit(k, g)));
            IntVector rhs = pairing.apply(unit(k, g), embed.apply(unit(k, f)));
            if (lhs != rhs) throw CheckFailure("pairing " + pairing.name() + " is not symmetric on A' x A'", pair_str(f, g));
        }
    std::vector<IntVector> sub;
    for (std::size_t c = 0; c < k; ++c) sub.push_back(embed.matrix().column(c));
    auto [quot, j] = quotient_module(embed.target(), sub, embed.target()->name() + "/" + embed.source()->name());
    ShortExactSeq seq(embed, j, name + ".seq");
    return TateProduct(seq, seq, pairing, pairing.transposed(), std::move(name));
}

namespace {

void check_square(const GModuleMorphism& top, const GModuleMorphism& right, const GModuleMorphism& left,
                  const GModuleMorphism& bottom, const std::string& what) {
    // right o top == bottom o left
    if (!same_hom(right.psi().compose(top.psi()), bottom.psi().compose(left.psi()))) throw CheckFailure(what, "");
}

void check_ends(const GModuleMorphism& m, const ModulePtr& s, const ModulePtr& t, const std::string& what) {
    require_same(m.source(), s, what + ": wrong source");
    require_same(m.target(), t, what + ": wrong target");
}

void check_pairing_square(const GPairing& p1, const GPairing& p2, const GModuleMorphism& left_map,
                          const GModuleMorphism* right_forward, const GModuleMorphism* right_back,
                          const GModuleMorphism& out_map, const std::string& what) {
    // forward: psi_C(x . y) = psi_L(x) . psi_R(y)
    // back:    psi_C(x . psi_R(y)) = psi_L(x) . y, y in the second product's right module
    const std::size_t kl = p1.left()->gens();
    const std::size_t kr = right_forward ? p1.right()->gens() : p2.right()->gens();
    for (std::size_t x = 0; x < kl; ++x)
        for (std::size_t y = 0; y < kr; ++y) {
            IntVector ex = unit(kl, x), ey = unit(kr, y);
            IntVector lhs, rhs;
            if (right_forward) {
                lhs = out_map.apply(p1.apply(ex, ey));
                rhs = p2.apply(left_map.apply(ex), right_forward->apply(ey));
            } else {
                lhs = out_map.apply(p1.apply(ex, right_back->apply(ey)));
                rhs = p2.apply(left_map.apply(ex), ey);
            }
            if (lhs != rhs) throw CheckFailure(what, pair_str(x, y));
        }
}

}  // namespace

void TateMorphism::validate(const TateProduct& s, const TateProduct& t) const {
    const GModuleMorphism* maps[] = {&a_sub, &a, &a_quot, &b_sub, &b, &b_quot, &c};
    for (auto* m : maps)
        if (m->phi().images() != phi.images()) throw InputError("Tate morphism maps use different group maps");
    check_ends(a_sub, s.seq_a().sub(), t.seq_a().sub(), "A' map");
    check_ends(a, s.seq_a().middle(), t.seq_a().middle(), "A map");
    check_ends(a_quot, s.seq_a().quotient(), t.seq_a().quotient(), "A'' map");
    check_ends(b_sub, s.seq_b().sub(), t.seq_b().sub(), "B' map");
    check_ends(b, s.seq_b().middle(), t.seq_b().middle(), "B map");
    check_ends(b_quot, s.seq_b().quotient(), t.seq_b().quotient(), "B'' map");
    check_ends(c, s.c(), t.c(), "C map");
    check_square(s.seq_a().i(), a, a_sub, t.seq_a().i(), "A ladder does not commute at i");
    check_square(s.seq_a().j(), a_quot, a, t.seq_a().j(), "A ladder does not commute at j");
    check_square(s.seq_b().i(), b, b_sub, t.seq_b().i(), "B ladder does not commute at i");
    check_square(s.seq_b().j(), b_quot, b, t.seq_b().j(), "B ladder does not commute at j");
    check_pairing_square(s.p1(), t.p1(), a_sub, &b, nullptr, c, "first pairing not preserved");
    check_pairing_square(s.p2(), t.p2(), a, &b_sub, nullptr, c, "second pairing not preserved");
}

void TwistedTateMorphism::validate(const TateProduct& s, const TateProduct& t) const {
    const GModuleMorphism* maps[] = {&a_sub, &a, &a_quot, &b_sub, &b, &b_quot, &c};
    for (auto* m : maps)
        if (!m->phi().is_identity()) throw InputError("twisted Tate morphism must be over the identity");
    check_ends(a_sub, s.seq_a().sub(), t.seq_a().sub(), "A' map");
    check_ends(a, s.seq_a().middle(), t.seq_a().middle(), "A map");
    check_ends(a_quot, s.seq_a().quotient(), t.seq_a().quotient(), "A'' map");
    check_ends(b_sub, t.seq_b().sub(), s.seq_b().sub(), "B' map");
    check_ends(b, t.seq_b().middle(), s.seq_b().middle(), "B map");
    check_ends(b_quot, t.seq_b().quotient(), s.seq_b().quotient(), "B'' map");
    check_ends(c, s.c(), t.c(), "C map");
    check_square(s.seq_a().i(), a, a_sub, t.seq_a().i(), "A ladder does not commute at i");
    check_square(s.seq_a().j(), a_quot, a, t.seq_a().j(), "A ladder does not commute at j");
    check_square(t.seq_b().i(), b, b_sub, s.seq_b().i(), "B ladder does not commute at i");
    check_square(t.seq_b().j(), b_quot, b, s.seq_b().j(), "B ladder does not commute at j");
    check_pairing_square(s.p1(), t.p1(), a_sub, nullptr, &b, c, "first pairing not preserved");
    check_pairing_square(s.p2(), t.p2(), a, nullptr, &b_sub, c, "second pairing not preserved");
}

InducedData induce(const std::shared_ptr<const Subgroup>& subgroup, const ModulePtr& c,
                   const std::optional<ModulePtr>& c_over_g, std::string name) {
    const Subgroup& h = *subgroup;
    const GroupPtr& g = h.parent();
    if (!(*c->group() == *h.as_group())) throw InputError("module " + c->name() + " is not over the subgroup");
    const std::size_t m = h.index(), k = c->gens(), n = g->order();
    const auto& reps = h.right_coset_reps();

    std::vector<Int> moduli;
    for (std::size_t j = 0; j < m; ++j) moduli.insert(moduli.end(), c->moduli().begin(), c->moduli().end());
    FgAbGroup carrier = FgAbGroup::from_diagonal(moduli);

    std::vector<IntMatrix> action;
    for (uint32_t s = 0; s < n; ++s) {
        IntMatrix p(m * k, m * k);
        for (std::size_t j = 0; j < m; ++j) {
            auto [hh, jj] = h.right_factor(g->mul(reps[j], s));
            const IntMatrix& a = c->action(static_cast<uint32_t>(h.position(hh)));
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t q = 0; q < k; ++q) p(j * k + r, jj * k + q) = a(r, q);
        }
        action.push_back(std::move(p));
    }
    InducedData out;
    out.subgroup = subgroup;
    out.source = c;
    out.induced = module_from_presentation(g, carrier, action, name.empty() ? "Ind(" + c->name() + ")" : std::move(name));
    const FgAbGroup& ind = *out.induced->carrier();

    IntMatrix e_pres(k, m * k);
    for (std::size_t r = 0; r < k; ++r) e_pres(r, r) = 1;
    out.e = GModuleMorphism(h.inclusion(), out.induced, c, reduced(e_pres * ind.from_canonical(), c->moduli()));

    if (c_over_g) {
        const ModulePtr& cg = *c_over_g;
        if (!(*cg->group() == *g) || cg->moduli() != c->moduli()) {
            throw InputError("module " + cg->name() + " is not a G-structure on " + c->name());
        }
        for (std::size_t q = 0; q < h.order(); ++q) {
            if (!(cg->action(h.members()[q]) == c->action(static_cast<uint32_t>(q)))) {
                throw CheckFailure("G-structure does not restrict to the H-structure", "h=" + std::to_string(h.members()[q]));
            }
        }
        out.source_g = cg;
        IntMatrix i_pres(m * k, k);
        for (std::size_t j = 0; j < m; ++j) {
            const IntMatrix& a = cg->action(reps[j]);
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t q = 0; q < k; ++q) i_pres(j * k + r, q) = a(r, q);
        }
        out.i = GModuleMorphism(cg, out.induced, reduced(ind.to_canonical() * i_pres, ind.moduli()));

        IntMatrix pi_pres(k, m * k);
        for (uint32_t x : h.left_coset_reps()) {
            auto [hh, jj] = h.right_factor(g->inv(x));
            const IntMatrix& a = cg->action(g->mul(x, hh));
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t q = 0; q < k; ++q) pi_pres(r, jj * k + q) += a(r, q);
        }
        out.pi = GModuleMorphism(out.induced, cg, reduced(pi_pres * ind.from_canonical(), c->moduli()));

        IntMatrix ei = reduced(out.e.matrix() * out.i->matrix(), c->moduli());
        if (!(ei == reduced(IntMatrix::identity(k), c->moduli()))) {
            throw InternalError("e o i is not the identity on " + c->name());
        }
    }
    return out;
}

GModuleMorphism induce_morphism(const InducedData& source, const InducedData& target, const GModuleMorphism& psi) {
    if (source.subgroup.get() != target.subgroup.get()) throw InputError("induced modules over different subgroups");
    require_same(psi.source(), source.source, "morphism does not start at the induced source");
    require_same(psi.target(), target.source, "morphism does not end at the induced target");
    const std::size_t m = source.subgroup->index();
    const std::size_t ks = source.source->gens(), kt = target.source->gens();
    IntMatrix block(m * kt, m * ks);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t r = 0; r < kt; ++r)
            for (std::size_t q = 0; q < ks; ++q) block(j * kt + r, j * ks + q) = psi.matrix()(r, q);
    return GModuleMorphism(source.induced, target.induced,
                           to_canonical_matrix(*source.induced->carrier(), *target.induced->carrier(), block));
}

GPairing induce_pairing(const InducedData& d1, const InducedData& d2, const InducedData& d3, const GPairing& p) {
    if (d1.subgroup.get() != d2.subgroup.get() || d1.subgroup.get() != d3.subgroup.get()) {
        throw InputError("induced pairing over different subgroups");
    }
    require_same(p.left(), d1.source, "pairing does not match the first induced module");
    require_same(p.right(), d2.source, "pairing does not match the second induced module");
    require_same(p.out(), d3.source, "pairing does not match the output induced module");
    const std::size_t m = d1.subgroup->index();
    const std::size_t k1 = d1.source->gens(), k2 = d2.source->gens(), k3 = d3.source->gens();
    const FgAbGroup& c1 = *d1.induced->carrier();
    const FgAbGroup& c2 = *d2.induced->carrier();
    const FgAbGroup& c3 = *d3.induced->carrier();
    auto on_gens = [&](std::size_t u, std::size_t v) {
        IntVector x = c1.from_canonical().column(u);
        IntVector y = c2.from_canonical().column(v);
        IntVector w(m * k3);
        for (std::size_t j = 0; j < m; ++j) {
            IntVector val = p.apply(std::span<const Int>(x).subspan(j * k1, k1), std::span<const Int>(y).subspan(j * k2, k2));
            for (std::size_t r = 0; r < k3; ++r) w[j * k3 + r] = val[r];
        }
        return c3.from_presentation(w);
    };
    return GPairing::from_function(d1.induced, d2.induced, d3.induced, on_gens, "Ind(" + p.name() + ")");
}

namespace {

struct InduceMemo {
    std::shared_ptr<const Subgroup> subgroup;
    std::map<const GModule*, InducedData> done;
    std::map<const GModule*, ModulePtr> over_g;

    const InducedData& get(const ModulePtr& m) {
        auto it = done.find(m.get());
        if (it != done.end()) return it->second;
        std::optional<ModulePtr> cg;
        if (auto g = over_g.find(m.get()); g != over_g.end()) cg = g->second;
        return done.emplace(m.get(), induce(subgroup, m, cg)).first->second;
    }
};

}  // namespace

InducedTate tate_induce(const std::shared_ptr<const Subgroup>& subgroup, const TateProduct& t,
                        const std::optional<TateProduct>& over_g) {
    InduceMemo memo{subgroup, {}, {}};
    if (over_g) {
        const TateProduct& tg = *over_g;
        const std::pair<const ModulePtr*, const ModulePtr*> pairs[] = {
            {&t.seq_a().sub(), &tg.seq_a().sub()}, {&t.seq_a().middle(), &tg.seq_a().middle()},
            {&t.seq_a().quotient(), &tg.seq_a().quotient()}, {&t.seq_b().sub(), &tg.seq_b().sub()},
            {&t.seq_b().middle(), &tg.seq_b().middle()}, {&t.seq_b().quotient(), &tg.seq_b().quotient()},
            {&t.c(), &tg.c()}};
        for (auto [h, g] : pairs) memo.over_g[h->get()] = *g;
    }
    auto seq = [&](const ShortExactSeq& s) {
        const auto& ds = memo.get(s.sub());
        const auto& dm = memo.get(s.middle());
        const auto& dq = memo.get(s.quotient());
        return ShortExactSeq(induce_morphism(ds, dm, s.i()), induce_morphism(dm, dq, s.j()), "Ind(" + s.name() + ")");
    };
    ShortExactSeq sa = seq(t.seq_a());
    ShortExactSeq sb = seq(t.seq_b());
    GPairing p1 = induce_pairing(memo.get(t.seq_a().sub()), memo.get(t.seq_b().middle()), memo.get(t.c()), t.p1());
    GPairing p2 = induce_pairing(memo.get(t.seq_a().middle()), memo.get(t.seq_b().sub()), memo.get(t.c()), t.p2());
    InducedTate out{TateProduct(sa, sb, p1, p2, "Ind(" + t.name() + ")"),
                    memo.get(t.seq_a().sub()),    memo.get(t.seq_a().middle()), memo.get(t.seq_a().quotient()),
                    memo.get(t.seq_b().sub()),    memo.get(t.seq_b().middle()), memo.get(t.seq_b().quotient()),
                    memo.get(t.c())};
    return out;
}

TateProduct restrict_tate(const TateProduct& t, const Subgroup& h) {
    std::map<const GModule*, ModulePtr> memo;
    auto res = [&](const ModulePtr& m) {
        auto it = memo.find(m.get());
        if (it != memo.end()) return it->second;
        return memo.emplace(m.get(), restrict_module(m, h)).first->second;
    };
    auto seq = [&](const ShortExactSeq& s) {
        return ShortExactSeq(GModuleMorphism(res(s.sub()), res(s.middle()), s.i().matrix()),
                             GModuleMorphism(res(s.middle()), res(s.quotient()), s.j().matrix()), s.name());
    };
    auto pairing = [&](const GPairing& p) {
        return GPairing(res(p.left()), res(p.right()), res(p.out()), p.tensor(), p.name());
    };
    return TateProduct(seq(t.seq_a()), seq(t.seq_b()), pairing(t.p1()), pairing(t.p2()), t.name() + "|H");
}

void ExtensionData::validate() const {
    require_same(row_d.sub(), seq_b.middle(), "extension row must start at B");
    require_same(row_dpp.sub(), seq_b.quotient(), "extension row must start at B''");
    require_same(row_d.quotient(), row_dpp.quotient(), "extension rows must end at the same E");
    check_ends(d_to_dpp, row_d.middle(), row_dpp.middle(), "D -> D''");
    check_square(row_d.i(), d_to_dpp, seq_b.j(), row_dpp.i(), "extension square B -> D'' does not commute");
    if (!same_hom(row_dpp.j().psi().compose(d_to_dpp.psi()), row_d.j().psi())) {
        throw CheckFailure("extension square D -> E does not commute", "");
    }
    ShortExactSeq column(row_d.i().compose(seq_b.i()), d_to_dpp, name + ".column");
    (void)column;
}

ExtensionData twisted_extension(const ShortExactSeq& seq_b, const std::vector<IntVector>& cocycle, std::string name) {
    const ModulePtr& b = seq_b.middle();
    const ModulePtr& bpp = seq_b.quotient();
    const GroupPtr& g = b->group();
    const std::size_t n = g->order(), kb = b->gens(), kq = bpp->gens();
    if (cocycle.size() != n) throw InputError("extension cocycle needs one value per group element");
    std::vector<IntVector> c;
    for (const auto& v : cocycle) c.push_back(b->carrier()->reduce(v));
    for (uint32_t s = 0; s < n; ++s)
        for (uint32_t t = 0; t < n; ++t) {
            IntVector rhs = b->act(s, c[t]);
            for (std::size_t r = 0; r < kb; ++r) rhs[r] += c[s][r];
            if (b->carrier()->reduce(rhs) != c[g->mul(s, t)]) throw CheckFailure("extension data is not a 1-cocycle", pair_str(s, t));
        }

    auto extend = [&](const ModulePtr& m, const std::vector<IntVector>& col, const std::string& nm) {
        const std::size_t k = m->gens();
        std::vector<IntMatrix> action;
        for (uint32_t s = 0; s < n; ++s) {
            IntMatrix a(k + 1, k + 1);
            for (std::size_t r = 0; r < k; ++r) {
                for (std::size_t q = 0; q < k; ++q) a(r, q) = m->action(s)(r, q);
                a(r, k) = col[s][r];
            }
            a(k, k) = 1;
            action.push_back(std::move(a));
        }
        auto torsion = m->carrier()->torsion();
        return make_module(g, make_group(FgAbGroup::canonical(torsion, m->carrier()->free_rank() + 1)), std::move(action), nm);
    };
    std::vector<IntVector> jc;
    for (const auto& v : c) jc.push_back(seq_b.j().apply(v));
    ModulePtr d = extend(b, c, name + ".D");
    ModulePtr dpp = extend(bpp, jc, name + ".D''");
    ModulePtr e = trivial_module(g, make_group(FgAbGroup::integers()), name + ".E");

    auto inclusion = [](std::size_t k) {
        IntMatrix m(k + 1, k);
        for (std::size_t r = 0; r < k; ++r) m(r, r) = 1;
        return m;
    };
    auto last = [](std::size_t k) {
        IntMatrix m(1, k + 1);
        m(0, k) = 1;
        return m;
    };
    IntMatrix dd(kq + 1, kb + 1);
    for (std::size_t r = 0; r < kq; ++r)
        for (std::size_t q = 0; q < kb; ++q) dd(r, q) = seq_b.j().matrix()(r, q);
    dd(kq, kb) = 1;

    ExtensionData out;
    out.seq_b = seq_b;
    out.row_d = ShortExactSeq(GModuleMorphism(b, d, inclusion(kb)), GModuleMorphism(d, e, last(kb)), name + ".row");
    out.row_dpp = ShortExactSeq(GModuleMorphism(bpp, dpp, inclusion(kq)), GModuleMorphism(dpp, e, last(kq)), name + ".row''");
    out.d_to_dpp = GModuleMorphism(d, dpp, std::move(dd));
    out.name = std::move(name);
    out.validate();
    return out;
}

}  // namespace tatecup
