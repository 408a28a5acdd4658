#include <doctest.h>

#include <random>

#include "tatecup/error.hpp"
#include "tatecup/kernels.hpp"
#include "tatecup/products.hpp"

using namespace tatecup;

namespace {

IntVector iv(std::initializer_list<long long> xs) {
    IntVector v;
    for (auto x : xs) v.emplace_back(x);
    return v;
}

GroupPtr z2() {
    static GroupPtr g = make_group(FiniteGroup::cyclic(2));
    return g;
}

ModulePtr cyc(const GroupPtr& g, long long n, const char* name) {
    return trivial_module(g, make_group(FgAbGroup::cyclic(n)), name);
}

GPairing multiplication(const ModulePtr& a, const ModulePtr& b, const ModulePtr& c) {
    return GPairing::from_function(a, b, c, [](std::size_t, std::size_t) { return iv({1}); });
}

// A = Z/4 with negation, A' = 2A, C = Z/2, (2x, a) -> x a.
struct NegFixture {
    ModulePtr a = make_module(z2(), make_group(FgAbGroup::cyclic(4)), {IntMatrix{{1}}, IntMatrix{{-1}}}, "Z/4-");
    ModulePtr sub = cyc(z2(), 2, "Z/2'");
    ModulePtr c = cyc(z2(), 2, "C");
    TateProduct t = tate_from_reciprocity(GModuleMorphism(sub, a, IntMatrix{{2}}), multiplication(sub, a, c), "T");
};

}  // namespace

TEST_CASE("cup square in H^1(Z/2, Z/2)") {
    auto f2 = cyc(z2(), 2, "Z/2");
    auto p = multiplication(f2, f2, f2);
    auto h1 = cohomology(f2, 1);
    CohClass x = h1->generators().at(0);
    CohClass sq = cup_classes(x, x, p);
    CHECK(sq.parent()->degree() == 2);
    CHECK_FALSE(sq.is_zero());
    CHECK(cup_classes(h1->zero(), x, p).is_zero());
}

TEST_CASE("augmented cup in degree (0,0) on the negation fixture") {
    NegFixture fx;
    const auto& t = fx.t;
    auto h0 = cohomology(t.seq_a().quotient(), 0);
    CohClass one = h0->element(iv({1}));
    CHECK(acup(one, one, t).is_zero());
    CHECK(acup(one, h0->zero(), t).is_zero());
    Cochain h = acup_degree00(iv({1}), iv({1}), t);
    CHECK(h.is_zero());
    // Brute force over all lifts of 1 and of 1 (a, b in {1, 3}).
    for (long long a : {1, 3})
        for (long long b : {1, 3}) {
            Cochain hab = acup_degree00(iv({a}), iv({b}), t);
            CHECK(cohomology(t.c(), 1)->classify(hab).is_zero());
            Cochain f(t.seq_a().middle(), 0, iv({a}));
            Cochain g(t.seq_b().middle(), 0, iv({b}));
            CHECK(acup_cochain(f, g, t) == hab);
        }
}

TEST_CASE("connecting homomorphism of Z/2 -> Z/4 -> Z/2") {
    auto f2 = cyc(z2(), 2, "Z/2'");
    auto z4 = cyc(z2(), 4, "Z/4");
    auto [q, j] = quotient_module(z4, {iv({2})}, "Z/2''");
    ShortExactSeq seq(GModuleMorphism(f2, z4, IntMatrix{{2}}), j, "s");
    // Trivial action: d_0 vanishes, so delta is zero in degree 0.
    CHECK(connecting(seq, cohomology(q, 0)->element(iv({1}))).is_zero());
    // Degree 1: the Bockstein takes the generator of H^1(Z/2) to the nonzero class of H^2.
    CHECK_FALSE(connecting(seq, cohomology(q, 1)->element(iv({1}))).is_zero());

    NegFixture fx;
    CohClass d = connecting(fx.t.seq_a(), cohomology(fx.t.seq_a().quotient(), 0)->element(iv({1})));
    CHECK_FALSE(d.is_zero());
}

TEST_CASE("Leibniz rule and serial/OpenMP cup agreement") {
    auto s3 = make_group(FiniteGroup::symmetric3());
    std::vector<IntMatrix> sign;
    for (uint32_t g = 0; g < 6; ++g) sign.push_back(IntMatrix{{s3->element_order(g) == 2 ? -1 : 1}});
    auto a = make_module(s3, make_group(FgAbGroup::cyclic(6)), sign, "Z/6-");
    auto c = cyc(s3, 6, "Z/6");
    auto p = GPairing::from_function(a, a, c, [](std::size_t, std::size_t) { return iv({1}); });
    std::mt19937_64 rng(21);
    for (int r = 0; r <= 1; ++r)
        for (int s = 0; r + s <= 2; ++s)
            for (int k = 0; k < 32; ++k) {
                Cochain f = random_cochain(a, r, rng);
                Cochain g = random_cochain(a, s, rng);
                Cochain lhs = coboundary(cup_cochains(f, g, p));
                Cochain t1 = cup_cochains(coboundary(f), g, p);
                Cochain t2 = cup_cochains(f, coboundary(g), p);
                CHECK(lhs == (r % 2 == 0 ? t1 + t2 : t1 - t2));

                const std::size_t n = kernels::power(6, r + s);
                IntVector x(n), y(n);
                kernels::GroupView gv{s3->table(), 6};
                kernels::serial::cup(gv, a->view(), p.view(), r, s, f.values(), g.values(), x);
                kernels::omp::cup(gv, a->view(), p.view(), r, s, f.values(), g.values(), y);
                CHECK(x == y);
            }
}

TEST_CASE("augmented cup is independent of lifts") {
    NegFixture fx;
    std::mt19937_64 rng(4);
    for (int r = 0; r <= 1; ++r)
        for (int s = 0; r + s <= 1; ++s)
            for (const auto& a : cohomology(fx.t.seq_a().quotient(), r)->elements())
                for (const auto& b : cohomology(fx.t.seq_b().quotient(), s)->elements()) {
                    CohClass v = acup(a, b, fx.t);
                    for (int k = 0; k < 8; ++k) CHECK(acup_random(a, b, fx.t, rng) == v);
                }
}

TEST_CASE("restriction and corestriction") {
    auto z4 = make_group(FiniteGroup::cyclic(4));
    auto h = std::make_shared<const Subgroup>(subgroup_closure(z4, {2}));
    auto cg = cyc(z4, 2, "Z/2");
    auto ch = restrict_module(cg, *h, "Z/2|H");
    InducedData d = induce(h, ch, cg);
    for (int r = 0; r <= 2; ++r) {
        CHECK(shapiro_bijective(d, r));
        for (const auto& a : cohomology(cg, r)->elements()) {
            CohClass back = corestriction(d, restriction(d, a));
            CHECK(back == a.scaled(Int(2)));
        }
    }
    CohClass x = cohomology(cg, 1)->element(iv({1}));
    CHECK(restriction(d, x).is_zero());
}

TEST_CASE("induced pairing from a twisted extension") {
    NegFixture fx;
    ExtensionData ext = twisted_extension(fx.t.seq_b(), {iv({0}), iv({1})}, "X");
    // [j c] spans the kernel of H^1(B'') -> H^1(D''); E = Z makes the map onto.
    auto res1 = induced_pairing(fx.t, ext, 0, 1);
    REQUIRE(res1.kernel.size() == 1);
    CHECK_FALSE(res1.kernel[0].is_zero());
    CHECK(res1.right_surjective);
    CHECK(res1.table.size() == res1.left.size());
    CHECK(induced_pairing(fx.t, ext, 0, 0).kernel.empty());
}
