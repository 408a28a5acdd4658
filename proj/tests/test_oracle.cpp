#include <doctest.h>

#include "oracle/compare.hpp"

namespace {

// Z/n acting on Z/q by multiplication with `unit`, built by hand.
oracle::Module cyclic_on(std::size_t n, int64_t q, int64_t unit) {
    oracle::Module m;
    m.n = n;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) m.table.push_back(static_cast<uint32_t>((a + b) % n));
    m.moduli = {q};
    int64_t u = 1;
    for (std::size_t g = 0; g < n; ++g) {
        m.act.push_back({u});
        u = (u * unit) % q;
    }
    return m;
}

oracle::Module klein_on_f2() {
    oracle::Module m;
    m.n = 4;
    for (uint32_t a = 0; a < 4; ++a)
        for (uint32_t b = 0; b < 4; ++b) m.table.push_back(a ^ b);
    m.moduli = {2};
    m.act.assign(4, {1});
    return m;
}

std::vector<int64_t> inv(const oracle::Module& m, int r) {
    auto h = oracle::Cohomology::compute(m, r);
    REQUIRE(h.has_value());
    return h->invariants();
}

}  // namespace

TEST_CASE("oracle: cyclic group of order two with F2 coefficients") {
    auto m = cyclic_on(2, 2, 1);
    for (int r = 0; r <= 3; ++r) CHECK(inv(m, r) == std::vector<int64_t>{2});
}

TEST_CASE("oracle: known groups") {
    CHECK(inv(cyclic_on(2, 4, 3), 0) == std::vector<int64_t>{2});
    CHECK(inv(cyclic_on(2, 4, 3), 1) == std::vector<int64_t>{2});
    CHECK(inv(cyclic_on(2, 4, 1), 2) == std::vector<int64_t>{2});
    CHECK(inv(cyclic_on(3, 3, 1), 2) == std::vector<int64_t>{3});
    CHECK(inv(cyclic_on(3, 9, 1), 1) == std::vector<int64_t>{3});
    CHECK(inv(cyclic_on(4, 4, 1), 1) == std::vector<int64_t>{4});
    CHECK(inv(cyclic_on(3, 3, 1), 1) == std::vector<int64_t>{3});
    CHECK(inv(cyclic_on(3, 7, 2), 1).empty());
    CHECK(inv(klein_on_f2(), 1) == std::vector<int64_t>{2, 2});
    CHECK(inv(klein_on_f2(), 2) == std::vector<int64_t>{2, 2, 2});
}

TEST_CASE("oracle: too large to enumerate") {
    CHECK_FALSE(oracle::space_size(cyclic_on(4, 4, 1), 3).has_value());
    CHECK_FALSE(oracle::Cohomology::compute(cyclic_on(4, 4, 1), 3).has_value());
}

TEST_CASE("oracle: every representative of the F2 generator squares to the nonzero class") {
    auto m = cyclic_on(2, 2, 1);
    auto h1 = *oracle::Cohomology::compute(m, 1);
    auto h2 = *oracle::Cohomology::compute(m, 2);
    oracle::Pairing p{1, 1, {{1}}};
    const int zero1 = h1.coset({0, 0});
    const int zero2 = h2.coset({0, 0, 0, 0});
    int members = 0;
    for (uint64_t i = 0; i < *oracle::space_size(m, 1); ++i) {
        auto f = oracle::decode(m, 1, i);
        if (h1.coset(f) < 0 || h1.coset(f) == zero1) continue;
        ++members;
        auto sq = oracle::cup(m, m, p, 1, 1, f, f);
        CHECK(h2.coset(sq) >= 0);
        CHECK(h2.coset(sq) != zero2);
    }
    CHECK(members == 1);
}

TEST_CASE("oracle: preimage search") {
    auto a = cyclic_on(2, 4, 1);
    auto q = cyclic_on(2, 2, 1);
    oracle::Preimages j(a, q, oracle::Map{1, 1, {1}});
    CHECK(j.surjective());
    CHECK_FALSE(j.injective());
    std::mt19937_64 rng(3);
    for (int i = 0; i < 32; ++i) {
        auto x = j.pick({1}, rng);
        REQUIRE(x.has_value());
        CHECK((*x)[0] % 2 == 1);
    }
}

TEST_CASE("oracle agrees with the main path on the shipped fixtures") {
    auto ws = tatecup::parse_spec_file(TATECUP_FIXTURE_DIR "/standard.spec");
    auto report = oracle::sweep(ws, 7);
    std::string all;
    for (const auto& f : report.failures) all += f + "\n";
    INFO(all);
    CHECK(report.failures.empty());
    CHECK(report.compared > 50);
    MESSAGE("oracle compared " << report.compared << ", skipped " << report.skipped);
}
