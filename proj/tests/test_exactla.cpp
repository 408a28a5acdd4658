#include <doctest.h>

#include <random>
#include <set>

#include "tatecup/abgroup.hpp"
#include "tatecup/error.hpp"
#include "tatecup/lattice.hpp"

using namespace tatecup;

namespace {

IntVector iv(std::initializer_list<long long> xs) {
    IntVector v;
    for (auto x : xs) v.emplace_back(x);
    return v;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound) {
    std::uniform_int_distribution<int> d(-bound, bound);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
    return m;
}

bool is_diagonal_chain(const IntMatrix& s) {
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = 0; j < s.cols(); ++j)
            if (i != j && !s(i, j).is_zero()) return false;
    std::size_t k = std::min(s.rows(), s.cols());
    for (std::size_t i = 0; i < k; ++i) {
        if (s(i, i).sign() < 0) return false;
        if (i + 1 < k && !divides(s(i, i), s(i + 1, i + 1))) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("int arithmetic promotes past 64 bits") {
    Int a = Int::from_string("9223372036854775807");
    Int b = a;
    b += 1;
    CHECK(b.to_string() == "9223372036854775808");
    b -= 1;
    CHECK(b == a);
    Int sq = a * a;
    CHECK(exact_div(sq, a) == a);
    CHECK(mod_floor(Int(-7), Int(3)) == Int(2));
    CHECK(floor_div(Int(-7), Int(3)) == Int(-3));
    auto bz = extended_gcd(Int(12), Int(18));
    CHECK(bz.g == Int(6));
    CHECK(bz.s * 12 + bz.t * 18 == Int(6));
}

TEST_CASE("smith normal form fixed examples") {
    SmithForm z = smith_normal_form(IntMatrix(2, 2));
    CHECK(z.S.is_zero());
    CHECK(z.U == IntMatrix::identity(2));
    CHECK(z.V == IntMatrix::identity(2));

    SmithForm id = smith_normal_form(IntMatrix::identity(3));
    CHECK(id.S == IntMatrix::identity(3));

    SmithForm s = smith_normal_form(IntMatrix{{2, 4}, {6, 8}}, true);
    CHECK(s.S == IntMatrix{{2, 0}, {0, 4}});
    CHECK(s.U * IntMatrix{{2, 4}, {6, 8}} * s.V == s.S);
    CHECK(s.U * s.U_inv == IntMatrix::identity(2));
}

TEST_CASE("smith normal form random properties") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 64; ++trial) {
        std::size_t r = 1 + rng() % 4;
        std::size_t c = 1 + rng() % 4;
        IntMatrix m = random_matrix(rng, r, c, 9);
        SmithForm s = smith_normal_form(m, true);
        CHECK(s.U * m * s.V == s.S);
        CHECK(is_diagonal_chain(s.S));
        CHECK(abs(determinant(s.U)).is_one());
        CHECK(abs(determinant(s.V)).is_one());
        CHECK(s.U * s.U_inv == IntMatrix::identity(r));
        if (r == c) CHECK(abs(determinant(m)) == abs(determinant(s.S)));
    }
}

TEST_CASE("solve in lattice") {
    IntVector b = iv({3, -5});
    auto x = solve_in_lattice(IntMatrix::identity(2), b, iv({0, 0}));
    REQUIRE(x);
    CHECK(*x == b);
    CHECK_FALSE(solve_in_lattice(IntMatrix{{2}}, iv({1}), iv({0})));
    auto y = solve_in_lattice(IntMatrix{{2}}, iv({1}), iv({3}));
    REQUIRE(y);
    CHECK(mod_floor((*y)[0], Int(3)) == Int(2));
    CHECK_THROWS_AS(solve_in_lattice(IntMatrix{{2}}, iv({1, 2}), iv({0})), InputError);
}

TEST_CASE("solve agrees with exhaustive search") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 48; ++trial) {
        std::size_t r = 1 + rng() % 3;
        std::size_t c = 1 + rng() % 2;
        IntMatrix m = random_matrix(rng, r, c, 6);
        IntVector moduli(r);
        for (auto& v : moduli) v = Int(2 + static_cast<long long>(rng() % 5));
        IntVector b(r);
        for (std::size_t i = 0; i < r; ++i) b[i] = Int(static_cast<long long>(rng() % 7));
        auto x = solve_in_lattice(m, b, moduli);
        bool found = false;
        long long total = 1;
        for (std::size_t j = 0; j < c; ++j) total *= 60;
        for (long long code = 0; code < total && !found; ++code) {
            IntVector cand(c);
            long long t = code;
            for (std::size_t j = 0; j < c; ++j) {
                cand[j] = Int(t % 60);
                t /= 60;
            }
            IntVector lhs = m * std::span<const Int>(cand);
            bool ok = true;
            for (std::size_t i = 0; i < r; ++i) ok = ok && mod_floor(lhs[i] - b[i], moduli[i]).is_zero();
            found = ok;
        }
        CHECK(found == x.has_value());
        if (x) {
            IntVector lhs = m * std::span<const Int>(*x);
            for (std::size_t i = 0; i < r; ++i) CHECK(mod_floor(lhs[i] - b[i], moduli[i]).is_zero());
        }
    }
}

TEST_CASE("subquotient examples") {
    Subquotient same({Int(0)}, {iv({1})}, {iv({1})});
    CHECK(same.group()->is_trivial());

    Subquotient half({Int(0)}, {iv({1})}, {iv({2})});
    CHECK(half.group()->describe() == "Z/2");

    Subquotient sq({Int(0), Int(0)}, {iv({2, 0}), iv({0, 3})}, {iv({4, 0}), iv({0, 3})});
    CHECK(sq.group()->describe() == "Z/2");
    CHECK(sq.project(iv({2, 0})) == iv({1}));
    CHECK(sq.project(iv({4, 3})) == iv({0}));
    CHECK(sq.section(iv({1})) == iv({2, 0}));
    CHECK_THROWS_AS(sq.project(iv({1, 0})), CheckFailure);

    CHECK_THROWS_AS(Subquotient({Int(0)}, {iv({2})}, {iv({1})}), CheckFailure);
}

TEST_CASE("subquotient matches coset enumeration") {
    // Random subgroups of Z/a + Z/b; the order of num/den equals |num| / |den|.
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        IntVector moduli = iv({static_cast<long long>(2 + rng() % 6), static_cast<long long>(2 + rng() % 6)});
        auto rand_vec = [&] { return iv({static_cast<long long>(rng() % 12), static_cast<long long>(rng() % 12)}); };
        IntVector g1 = rand_vec(), g2 = rand_vec();
        std::vector<IntVector> num{g1, g2};
        std::vector<IntVector> den{iv({0, 0})};
        // denominator: multiples of g1 by a random factor
        long long f = static_cast<long long>(rng() % 4);
        IntVector d = g1;
        for (auto& v : d) v *= f;
        den.push_back(d);
        Subquotient q(moduli, num, den);

        auto closure = [&](const std::vector<IntVector>& gens) {
            std::set<std::pair<long long, long long>> seen{{0, 0}};
            std::vector<std::pair<long long, long long>> stack{{0, 0}};
            long long m0 = moduli[0].to_int64(), m1 = moduli[1].to_int64();
            while (!stack.empty()) {
                auto [a, b] = stack.back();
                stack.pop_back();
                for (const auto& g : gens) {
                    std::pair<long long, long long> n{(a + g[0].to_int64()) % m0, (b + g[1].to_int64()) % m1};
                    if (seen.insert(n).second) stack.push_back(n);
                }
            }
            return static_cast<long long>(seen.size());
        };
        long long expect = closure(num) / closure(den);
        auto ord = q.group()->order();
        REQUIRE(ord);
        CHECK(ord->to_int64() == expect);
        for (const auto& c : q.group()->elements()) CHECK(q.project(q.section(c)) == c);
    }
}

TEST_CASE("abelian group presentations") {
    FgAbGroup g = FgAbGroup::from_relations(2, IntMatrix{{2, 0}, {0, 3}});
    CHECK(g.describe() == "Z/6");
    FgAbGroup h = FgAbGroup::from_relations(3, IntMatrix{{2}, {0}, {0}});
    CHECK(h.describe() == "Z/2 + Z + Z");
    CHECK(h.to_canonical() * h.from_canonical() == IntMatrix::identity(3));
    CHECK_THROWS_AS(FgAbGroup::canonical({Int(2), Int(3)}, 0), InputError);
    CHECK(FgAbGroup::cyclic(4).elements().size() == 4);

    auto z4 = make_group(FgAbGroup::cyclic(4));
    auto z2 = make_group(FgAbGroup::cyclic(2));
    CHECK_THROWS_AS(AbHom(z2, z4, IntMatrix{{1}}), CheckFailure);
    AbHom inc(z2, z4, IntMatrix{{2}});
    CHECK(inc.is_injective());
    CHECK_FALSE(inc.is_surjective());
    AbHom quo(z4, z2, IntMatrix{{1}});
    CHECK(quo.is_surjective());
    CHECK(quo.kernel().size() == 1);
    auto pre = quo.preimage(iv({1}));
    REQUIRE(pre);
    CHECK(quo.apply(*pre) == iv({1}));
}
