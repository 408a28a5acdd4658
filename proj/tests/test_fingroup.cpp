#include <doctest.h>

#include "tatecup/error.hpp"
#include "tatecup/finite_group.hpp"

using namespace tatecup;

TEST_CASE("cyclic groups") {
    CHECK_THROWS_AS(FiniteGroup::cyclic(0), InputError);
    CHECK(FiniteGroup::cyclic(1).order() == 1);
    auto z2 = FiniteGroup::cyclic(2);
    CHECK(std::vector<uint32_t>(z2.table().begin(), z2.table().end()) == std::vector<uint32_t>{0, 1, 1, 0});
    CHECK(FiniteGroup::cyclic(4).inverses() == std::vector<uint32_t>{0, 3, 2, 1});
}

TEST_CASE("table round trip and rejection") {
    auto g = FiniteGroup::from_table({{0, 1}, {1, 0}});
    CHECK(g == FiniteGroup::cyclic(2));
    CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1, 1}}), CheckFailure);
    CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1}}), InputError);
    // A Latin square with identity that is not associative.
    std::vector<std::vector<uint32_t>> bad{{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
    CHECK_THROWS_AS(FiniteGroup::from_table(bad), CheckFailure);
}

TEST_CASE("products and S3") {
    auto v4 = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
    CHECK(v4.order() == 4);
    for (uint32_t a = 1; a < 4; ++a) CHECK(v4.inv(a) == a);
    auto s3 = FiniteGroup::symmetric3();
    CHECK(s3.order() == 6);
    int involutions = 0;
    for (uint32_t a = 0; a < 6; ++a) involutions += s3.element_order(a) == 2;
    CHECK(involutions == 3);
    CHECK(FiniteGroup::from_table([&] {
              std::vector<std::vector<uint32_t>> t(6, std::vector<uint32_t>(6));
              for (uint32_t a = 0; a < 6; ++a)
                  for (uint32_t b = 0; b < 6; ++b) t[a][b] = s3.mul(a, b);
              return t;
          }()) == s3);
}

TEST_CASE("subgroup closure and cosets") {
    auto z4 = make_group(FiniteGroup::cyclic(4));
    auto triv = subgroup_closure(z4, {});
    CHECK(triv.members() == std::vector<uint32_t>{0});
    CHECK(triv.left_coset_reps() == std::vector<uint32_t>{0, 1, 2, 3});
    auto h = subgroup_closure(z4, {2});
    CHECK(h.members() == std::vector<uint32_t>{0, 2});
    CHECK(h.index() == 2);

    auto s3 = make_group(FiniteGroup::symmetric3());
    for (uint32_t t = 0; t < 6; ++t) {
        if (s3->element_order(t) != 2) continue;
        auto k = subgroup_closure(s3, {t});
        CHECK(k.order() == 2);
        CHECK(k.left_coset_reps().size() == 3);
    }
}

TEST_CASE("coset factorizations are bijections") {
    std::vector<GroupPtr> groups{make_group(FiniteGroup::cyclic(4)), make_group(FiniteGroup::symmetric3()),
                                 make_group(FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)))};
    for (const auto& g : groups) {
        for (uint32_t s = 0; s < g->order(); ++s) {
            auto h = subgroup_closure(g, {s});
            CHECK(h.order() * h.left_coset_reps().size() == g->order());
            std::vector<int> hit_left(g->order(), 0), hit_right(g->order(), 0);
            for (auto x : h.left_coset_reps())
                for (auto m : h.members()) ++hit_left[g->mul(x, m)];
            for (auto x : h.right_coset_reps())
                for (auto m : h.members()) ++hit_right[g->mul(m, x)];
            for (uint32_t a = 0; a < g->order(); ++a) {
                CHECK(hit_left[a] == 1);
                CHECK(hit_right[a] == 1);
                auto [hh, j] = h.right_factor(a);
                CHECK(g->mul(hh, h.right_coset_reps()[j]) == a);
            }
        }
    }
}

TEST_CASE("tuples") {
    auto z2 = FiniteGroup::cyclic(2);
    CHECK(tuples(z2, 0).size() == 1);
    CHECK(tuples(z2, 0)[0].empty());
    CHECK(tuples(z2, 1) == std::vector<std::vector<uint32_t>>{{0}, {1}});
    CHECK(tuples(z2, 2) == std::vector<std::vector<uint32_t>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
}

TEST_CASE("group homomorphisms") {
    auto z4 = make_group(FiniteGroup::cyclic(4));
    auto z2 = make_group(FiniteGroup::cyclic(2));
    GroupHom q(z4, z2, {0, 1, 0, 1});
    CHECK(q(3) == 1);
    CHECK_THROWS_AS(GroupHom(z4, z2, {0, 1, 1, 0}), CheckFailure);
    CHECK(GroupHom::identity(z4).is_identity());
}
