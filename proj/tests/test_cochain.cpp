#include <doctest.h>

#include <random>

#include "tatecup/cochain.hpp"
#include "tatecup/error.hpp"
#include "tatecup/kernels.hpp"

using namespace tatecup;

namespace {

IntVector iv(std::initializer_list<long long> xs) {
    IntVector v;
    for (auto x : xs) v.emplace_back(x);
    return v;
}

GroupPtr grp(const FiniteGroup& g) { return make_group(g); }

ModulePtr trivial(const GroupPtr& g, unsigned n, const char* name) {
    return trivial_module(g, make_group(FgAbGroup::cyclic(n)), name);
}

// Z/n or Z with the generator-free sign action through a homomorphism to Z/2.
ModulePtr signed_module(const GroupPtr& g, unsigned n, const std::vector<int>& sign, const char* name) {
    std::vector<IntMatrix> act;
    for (int s : sign) act.push_back(IntMatrix{{s}});
    return make_module(g, make_group(FgAbGroup::cyclic(n)), act, name);
}

std::string h(const ModulePtr& m, int r) { return cohomology(m, r)->describe(); }

}  // namespace

TEST_CASE("known cohomology groups") {
    auto z2 = grp(FiniteGroup::cyclic(2));
    auto z4 = grp(FiniteGroup::cyclic(4));
    auto v4 = grp(FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)));
    auto s3 = grp(FiniteGroup::symmetric3());

    auto f2 = trivial(z2, 2, "Z/2");
    CHECK(h(f2, 0) == "Z/2");
    CHECK(h(f2, 1) == "Z/2");
    CHECK(h(f2, 2) == "Z/2");
    auto zz = trivial(z2, 0, "Z");
    CHECK(h(zz, 0) == "Z");
    CHECK(h(zz, 1) == "0");
    CHECK(h(zz, 2) == "Z/2");
    auto zneg = signed_module(z2, 0, {1, -1}, "Z-");
    CHECK(h(zneg, 0) == "0");
    CHECK(h(zneg, 1) == "Z/2");
    CHECK(h(zneg, 2) == "0");
    auto neg4 = signed_module(z2, 4, {1, -1}, "Z/4-");
    CHECK(h(neg4, 0) == "Z/2");
    CHECK(h(neg4, 1) == "Z/2");
    CHECK(h(neg4, 2) == "Z/2");

    CHECK(h(trivial(z4, 0, "Z"), 2) == "Z/4");
    CHECK(h(trivial(v4, 2, "Z/2"), 1) == "Z/2 + Z/2");
    CHECK(h(trivial(v4, 2, "Z/2"), 2) == "Z/2 + Z/2 + Z/2");

    std::vector<int> sign;
    for (uint32_t g = 0; g < 6; ++g) {
        // sign of the permutation: transpositions have order 2
        sign.push_back(s3->element_order(g) == 2 ? -1 : 1);
    }
    CHECK(h(trivial(s3, 0, "Z"), 1) == "0");
    CHECK(h(trivial(s3, 0, "Z"), 2) == "Z/2");
    CHECK(h(trivial(s3, 2, "Z/2"), 1) == "Z/2");
    CHECK(h(trivial(s3, 3, "Z/3"), 2) == "0");
    CHECK(h(signed_module(s3, 0, sign, "Z-"), 1) == "Z/2");
}

TEST_CASE("degree zero coboundary on Z/4 with negation") {
    auto z2 = grp(FiniteGroup::cyclic(2));
    auto neg4 = signed_module(z2, 4, {1, -1}, "Z/4-");
    Cochain a(neg4, 0, iv({1}));
    Cochain d = coboundary(a);
    CHECK(d.at({0}) [0] == Int(0));
    CHECK(d.at({1})[0] == Int(2));
    CHECK_FALSE(cohomology(neg4, 0)->is_coboundary(a));
}

TEST_CASE("d o d = 0 and the sparse matrix agrees with the kernel") {
    std::mt19937_64 rng(11);
    auto s3 = grp(FiniteGroup::symmetric3());
    std::vector<IntMatrix> act;
    for (uint32_t g = 0; g < 6; ++g) act.push_back(IntMatrix{{s3->element_order(g) == 2 ? -1 : 1}});
    auto m = make_module(s3, make_group(FgAbGroup::integers()), act, "Z-");
    auto z4 = grp(FiniteGroup::cyclic(4));
    auto p = make_module(z4, make_group(FgAbGroup::canonical({Int(2), Int(4)}, 0)),
                         {IntMatrix::identity(2), IntMatrix{{1, 0}, {2, 1}}, IntMatrix::identity(2), IntMatrix{{1, 0}, {2, 1}}},
                         "P");
    for (const auto& mod : std::vector<ModulePtr>{m, p}) {
        for (int r = 0; r <= 2; ++r) {
            for (int s = 0; s < 32; ++s) {
                Cochain f = random_cochain(mod, r, rng);
                Cochain df = coboundary(f);
                CHECK(coboundary(df).is_zero());
                IntMatrix d = coboundary_matrix(*mod, r);
                IntVector dense(d.rows());
                for (std::size_t i = 0; i < d.rows(); ++i)
                    for (std::size_t j = 0; j < d.cols(); ++j) dense[i] += d(i, j) * f.values()[j];
                CHECK(Cochain(mod, r + 1, dense) == df);
            }
        }
    }
}

TEST_CASE("serial and OpenMP coboundary agree") {
    std::mt19937_64 rng(5);
    auto s3 = grp(FiniteGroup::symmetric3());
    auto m = trivial(s3, 6, "Z/6");
    for (int s = 0; s < 32; ++s) {
        Cochain f = random_cochain(m, 2, rng);
        IntVector a(kernels::power(6, 3)), b(a.size());
        kernels::serial::coboundary(m->view(), 2, f.values(), a);
        kernels::omp::coboundary(m->view(), 2, f.values(), b);
        CHECK(a == b);
    }
}

TEST_CASE("classification round trip") {
    auto v4 = grp(FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)));
    auto m = trivial(v4, 2, "Z/2");
    std::mt19937_64 rng(3);
    for (int r = 0; r <= 2; ++r) {
        auto hr = cohomology(m, r);
        for (const auto& c : hr->elements()) {
            Cochain rep = hr->representative(c);
            CHECK(coboundary(rep).is_zero());
            CHECK(hr->classify(rep) == c);
            if (r > 0) {
                Cochain shifted = rep + coboundary(random_cochain(m, r - 1, rng));
                CHECK(hr->classify(shifted) == c);
            }
        }
    }
    Cochain bad(m, 1, iv({0, 1, 0, 0}));
    CHECK_THROWS_AS(cohomology(m, 1)->classify(bad), CheckFailure);
}

TEST_CASE("conjugation action is trivial on cohomology, translation does not commute with d") {
    auto s3 = grp(FiniteGroup::symmetric3());
    auto m = trivial(s3, 2, "Z/2");
    std::mt19937_64 rng(9);
    bool translation_breaks = false;
    for (int s = 0; s < 32; ++s) {
        Cochain f = random_cochain(m, 1, rng);
        for (uint32_t g = 0; g < 6; ++g) {
            CHECK(coboundary(g_act(g, f)) == g_act(g, coboundary(f)));
            if (!(coboundary(g_act_translation(g, f)) == g_act_translation(g, coboundary(f)))) translation_breaks = true;
        }
    }
    CHECK(translation_breaks);
    auto h1 = cohomology(m, 1);
    for (const auto& c : h1->elements())
        for (uint32_t g = 0; g < 6; ++g) CHECK(g_act(g, c) == c);
}

TEST_CASE("lifting and peeling along a short exact sequence") {
    auto z2 = grp(FiniteGroup::cyclic(2));
    auto neg4 = signed_module(z2, 4, {1, -1}, "Z/4-");
    auto sub = trivial(z2, 2, "Z/2'");
    auto [quot, j] = quotient_module(neg4, {iv({2})}, "Z/2''");
    ShortExactSeq seq(GModuleMorphism(sub, neg4, IntMatrix{{2}}), j, "seq");
    std::mt19937_64 rng(1);
    for (int r = 0; r <= 2; ++r) {
        for (int s = 0; s < 32; ++s) {
            Cochain fpp = random_cochain(quot, r, rng);
            CHECK(induced_on_cochains(seq.j(), lift(fpp, seq)) == fpp);
            CHECK(induced_on_cochains(seq.j(), lift_random(fpp, seq, rng)) == fpp);
        }
    }
    // f = lift of a cocycle of A'': j_* d f = 0, so d f peels to A'.
    Cochain one(quot, 0, iv({1}));
    Cochain df = coboundary(lift(one, seq));
    Peeled p = peel_to_subcochain(df, seq);
    REQUIRE(p.f_tilde.has_value());
    CHECK(p.f_tilde->degree() == 0);
    CHECK(p.residue.at({1})[0] == Int(1));
    CHECK_FALSE(cohomology(sub, 1)->classify(p.residue).is_zero());
}

TEST_CASE("column cap") {
    auto s3 = grp(FiniteGroup::symmetric3());
    auto m = trivial(s3, 2, "Z/2");
    std::size_t old = max_columns();
    set_max_columns(100);
    CHECK_THROWS_AS(cohomology(m, 3), ResourceCapError);
    set_max_columns(old);
}

TEST_CASE("S3 degree three") {
    auto s3 = grp(FiniteGroup::symmetric3());
    CHECK(h(trivial(s3, 2, "Z/2"), 2) == "Z/2");
    CHECK(h(trivial(s3, 2, "Z/2"), 3) == "Z/2");
    CHECK(h(trivial(s3, 3, "Z/3"), 3) == "Z/3");
}
