#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>
#include <vector>

#include "doctest.h"
#include "qsim/cbc.hpp"
#include "qsim/feistel.hpp"
#include "qsim/truth_table.hpp"

using namespace qsim;

namespace {

TruthTable table_from(unsigned in_width, unsigned out_width,
                      const std::vector<std::uint32_t>& entries) {
    TruthTable t(in_width, out_width);
    for (std::uint32_t x = 0; x < entries.size(); ++x) t.set(x, entries[x]);
    return t;
}

}  // namespace

TEST_CASE("TruthTable identity and set/eval") {
    auto t = TruthTable::identity(3);
    CHECK(t.size() == 8);
    CHECK(t.eval_raw(5) == 5);
    CHECK(t.eval(BitString(3, 6)) == BitString(3, 6));
    CHECK(t.is_permutation());
    t.set(0, 7);
    CHECK(t.eval_raw(0) == 7);
    CHECK_THROWS_AS(t.eval(BitString(4, 0)), std::invalid_argument);
}

TEST_CASE("TruthTable rejects out-of-range widths and values") {
    CHECK_THROWS_AS(TruthTable(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(TruthTable(25, 3), std::invalid_argument);
    CHECK_THROWS_AS(TruthTable(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(TruthTable(3, 33), std::invalid_argument);
    TruthTable t(2, 2);
    CHECK_THROWS_AS(t.set(0, 4), std::invalid_argument);
}

TEST_CASE("check_bijection") {
    CHECK(table_from(2, 2, {2, 0, 3, 1}).check_bijection());
    CHECK_FALSE(table_from(2, 2, {2, 0, 3, 3}).check_bijection());
    CHECK_FALSE(TruthTable(2, 3).check_bijection());  // widths differ
}

TEST_CASE("random_function is deterministic per stream") {
    SplitRng a(21), b(21), c(22);
    const auto f1 = random_function(6, 4, a);
    const auto f2 = random_function(6, 4, b);
    const auto f3 = random_function(6, 4, c);
    CHECK(f1.entries() == f2.entries());
    CHECK(f1.entries() != f3.entries());
    CHECK_FALSE(f1.is_permutation());
}

TEST_CASE("random_permutation is a bijection") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        SplitRng rng(seed);
        const auto p = random_permutation(5, rng);
        CHECK(p.is_permutation());
        CHECK(p.check_bijection());
    }
}

TEST_CASE("simon_promise_function collides exactly on the shift") {
    SplitRng rng(31);
    for (unsigned m = 2; m <= 6; ++m) {
        const BitString s(m, 1 + static_cast<std::uint32_t>(rng.below((1u << m) - 1)));
        SplitRng stream = rng.derive(m);
        const auto f = simon_promise_function(m, s, stream);
        for (std::uint32_t x = 0; x < f.size(); ++x) {
            CHECK(f.eval_raw(x) == f.eval_raw(x ^ s.bits()));
            for (std::uint32_t y = x + 1; y < f.size(); ++y) {
                if (y == (x ^ s.bits())) continue;
                CHECK(f.eval_raw(x) != f.eval_raw(y));
            }
        }
    }
}

TEST_CASE("simon_promise_function rejects the zero shift") {
    SplitRng rng(1);
    CHECK_THROWS_AS(simon_promise_function(3, BitString(3, 0), rng), std::invalid_argument);
    CHECK_THROWS_AS(simon_promise_function(3, BitString(2, 1), rng), std::invalid_argument);
}

TEST_CASE("table save/load round trip") {
    SplitRng rng(13);
    const auto p = random_permutation(4, rng);
    std::stringstream buf;
    save_table(p, buf);
    const auto q = load_table(buf);
    CHECK(q.in_width() == 4);
    CHECK(q.out_width() == 4);
    CHECK(q.is_permutation());
    CHECK(q.entries() == p.entries());

    const auto f = random_function(3, 5, rng);
    std::stringstream buf2;
    save_table(f, buf2);
    const auto g = load_table(buf2);
    CHECK_FALSE(g.is_permutation());
    CHECK(g.entries() == f.entries());
}

TEST_CASE("load_table rejects a bad magic") {
    std::stringstream buf("nope");
    CHECK_THROWS_AS(load_table(buf), std::runtime_error);
}

TEST_CASE("feistel matches a hand-computed table") {
    // rounds: x^1, x^2, and the permutation {0,3,1,2}
    FeistelSpec spec(table_from(2, 2, {1, 0, 3, 2}), table_from(2, 2, {2, 3, 0, 1}),
                     table_from(2, 2, {0, 3, 1, 2}));
    const std::vector<std::uint32_t> expected{15, 14, 13, 12, 9, 8, 11, 10,
                                              4,  5,  6,  7,  2, 3, 0,  1};
    for (std::uint32_t x = 0; x < 16; ++x) CHECK(feistel_eval_raw(spec, x) == expected[x]);
}

TEST_CASE("closed form agrees with the round iteration") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const unsigned n = 2 + static_cast<unsigned>(seed % 4);
        const auto spec = random_feistel(n, SplitRng(seed));
        for (std::uint32_t x = 0; x < (1u << (2 * n)); ++x) {
            const BitString in(2 * n, x);
            CHECK(feistel_eval(spec, in) == feistel_eval_rounds(spec, in));
        }
    }
}

TEST_CASE("a feistel network is a permutation even with non-bijective rounds") {
    const auto spec = random_feistel(4, SplitRng(99));
    CHECK_FALSE(spec.p1.is_permutation());
    std::vector<bool> hit(256, false);
    for (std::uint32_t x = 0; x < 256; ++x) {
        const auto y = feistel_eval_raw(spec, x);
        REQUIRE(y < 256);
        CHECK_FALSE(hit[y]);
        hit[y] = true;
    }
}

TEST_CASE("feistel spec validates round shapes") {
    CHECK_THROWS_AS(FeistelSpec(TruthTable(2, 2), TruthTable(3, 3), TruthTable(2, 2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(FeistelSpec(TruthTable(2, 3), TruthTable(2, 3), TruthTable(2, 3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(FeistelSpec(TruthTable(17, 17), TruthTable(17, 17), TruthTable(17, 17)),
                    std::invalid_argument);
    CHECK_THROWS_AS(feistel_eval(random_feistel(3, SplitRng(1)), BitString(5, 0)),
                    std::invalid_argument);
}

TEST_CASE("cbc_mac matches hand-chained values") {
    // pi adds one mod 4
    CbcSpec two(2, table_from(2, 2, {1, 2, 3, 0}));
    CHECK(cbc_mac(two, Message{BitString(2, 0), BitString(2, 0)}) == BitString(2, 2));
    CHECK(cbc_mac(two, Message{BitString(2, 1), BitString(2, 2)}) == BitString(2, 1));
    CbcSpec three(3, table_from(2, 2, {1, 2, 3, 0}));
    CHECK(cbc_mac(three, Message{BitString(2, 0), BitString(2, 0), BitString(2, 0)}) ==
          BitString(2, 3));
}

TEST_CASE("cbc_mac validates message shape") {
    CbcSpec spec(3, table_from(2, 2, {1, 2, 3, 0}));
    CHECK_THROWS_AS(cbc_mac(spec, Message{BitString(2, 0)}), std::invalid_argument);
    CHECK_THROWS_AS(
        cbc_mac(spec, Message{BitString(2, 0), BitString(3, 0), BitString(2, 0)}),
        std::invalid_argument);
}

TEST_CASE("CbcSpec requires a permutation") {
    CHECK_THROWS_AS(CbcSpec(3, table_from(2, 2, {0, 0, 1, 2})), std::invalid_argument);
    CHECK_THROWS_AS(CbcSpec(0, TruthTable::identity(2)), std::invalid_argument);
}

TEST_CASE("iterate_pi composes the permutation") {
    CbcSpec spec(2, table_from(2, 2, {1, 2, 3, 0}));
    CHECK(iterate_pi(spec, BitString(2, 0), 0) == BitString(2, 0));
    CHECK(iterate_pi(spec, BitString(2, 0), 1) == BitString(2, 1));
    CHECK(iterate_pi(spec, BitString(2, 0), 5) == BitString(2, 1));
    CHECK(iterate_pi(spec, BitString(2, 3), 2) == BitString(2, 1));
}
