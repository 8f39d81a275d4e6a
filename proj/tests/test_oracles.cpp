#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <vector>

#include "doctest.h"
#include "qsim/oracle.hpp"

using namespace qsim;

namespace {

TruthTable table_from(unsigned in_width, unsigned out_width,
                      const std::vector<std::uint32_t>& entries) {
    TruthTable t(in_width, out_width);
    for (std::uint32_t x = 0; x < entries.size(); ++x) t.set(x, entries[x]);
    return t;
}

// the toy network used across these tests: rounds x^1, x^2, {0,3,1,2}
FeistelSpec toy_feistel() {
    return {table_from(2, 2, {1, 0, 3, 2}), table_from(2, 2, {2, 3, 0, 1}),
            table_from(2, 2, {0, 3, 1, 2})};
}

TruthTable plus_one_mod4() { return table_from(2, 2, {1, 2, 3, 0}); }

}  // namespace

TEST_CASE("MessageTemplate covers fixed blocks and wildcards") {
    MessageTemplate t{2, {BitString(2, 3), std::nullopt, BitString(2, 0)}};
    CHECK(t.covers(Message{BitString(2, 3), BitString(2, 1), BitString(2, 0)}));
    CHECK(t.covers(Message{BitString(2, 3), BitString(2, 2), BitString(2, 0)}));
    CHECK_FALSE(t.covers(Message{BitString(2, 2), BitString(2, 1), BitString(2, 0)}));
    CHECK_FALSE(t.covers(Message{BitString(2, 3), BitString(2, 1), BitString(2, 1)}));
    CHECK_FALSE(t.covers(Message{BitString(2, 3), BitString(2, 1)}));
    CHECK_FALSE(t.covers(Message{BitString(3, 3), BitString(3, 1), BitString(3, 0)}));
}

TEST_CASE("has_zero_fixed_block ignores wildcards") {
    CHECK(MessageTemplate{2, {BitString(2, 0), std::nullopt}}.has_zero_fixed_block());
    CHECK_FALSE(MessageTemplate{2, {BitString(2, 1), std::nullopt}}.has_zero_fixed_block());
    CHECK_FALSE(MessageTemplate{2, {std::nullopt, std::nullopt}}.has_zero_fixed_block());
}

TEST_CASE("ledger counts classical points and subroutine charges") {
    QueryLedger ledger;
    ledger.record_classical({BitString(4, 9)});
    ledger.record_classical({BitString(4, 2)});
    ledger.charge_subroutine_run(2);
    ledger.charge_subroutine_run(2);
    ledger.charge_subroutine_run(1);
    CHECK(ledger.classical_count() == 2);
    CHECK(ledger.subroutine_runs() == 3);
    CHECK(ledger.oracle_units() == 5);
    CHECK(ledger.classical()[0][0] == BitString(4, 9));
}

TEST_CASE("point oracle evaluation is recorded") {
    PointOracle oracle = make_feistel_oracle(toy_feistel());
    CHECK(oracle.in_width() == 4);
    CHECK(oracle.out_width() == 4);
    CHECK(oracle.eval(BitString(4, 6)) == BitString(4, 11));
    CHECK(oracle.eval(BitString(4, 0)) == BitString(4, 15));
    CHECK(oracle.ledger().classical_count() == 2);
    CHECK(oracle.ledger().classical()[0][0] == BitString(4, 6));
    CHECK(oracle.scoring_kind() == HiddenKind::feistel_network);
    CHECK_THROWS_AS(oracle.eval(BitString(3, 0)), std::invalid_argument);
}

TEST_CASE("perm oracle hides a bijection") {
    SplitRng rng(41);
    PointOracle oracle = make_perm_oracle(6, rng);
    std::vector<bool> hit(64, false);
    for (std::uint32_t x = 0; x < 64; ++x) {
        const auto y = oracle.eval(BitString(6, x)).bits();
        CHECK_FALSE(hit[y]);
        hit[y] = true;
    }
    CHECK(oracle.scoring_kind() == HiddenKind::random_permutation);
}

TEST_CASE("cbc2 oracle chains two blocks") {
    PointOracle oracle = make_cbc2_oracle(CbcSpec(2, plus_one_mod4()));
    // pi(pi(m1) ^ m2) for m1=1, m2=2: pi(0) = 1
    CHECK(oracle.eval(BitString::concat(BitString(2, 1), BitString(2, 2))) == BitString(2, 1));
    CHECK(oracle.eval(BitString::concat(BitString(2, 0), BitString(2, 0))) == BitString(2, 2));
    CHECK(oracle.in_width() == 4);
    CHECK(oracle.out_width() == 2);
    CHECK_THROWS_AS(make_cbc2_oracle(CbcSpec(3, plus_one_mod4())), std::invalid_argument);
}

TEST_CASE("random function oracle is deterministic per stream") {
    SplitRng a(8), b(8);
    PointOracle o1 = make_random_function_oracle(5, 3, a);
    PointOracle o2 = make_random_function_oracle(5, 3, b);
    for (std::uint32_t x = 0; x < 32; ++x)
        CHECK(o1.eval(BitString(5, x)) == o2.eval(BitString(5, x)));
}

TEST_CASE("build_simon_f derives the re-keyed top half") {
    PointOracle oracle = make_feistel_oracle(toy_feistel());
    const auto f = build_simon_f(oracle, BitString(2, 1), BitString(2, 2));
    const std::vector<std::uint32_t> expected{2, 3, 0, 1, 1, 0, 3, 2};
    CHECK(f.table.entries() == expected);
    CHECK(f.table.in_width() == 3);
    CHECK(f.table.out_width() == 2);
    // hidden shift 1 || p1(alpha)^p1(beta) = 0b111
    for (std::uint32_t u = 0; u < 8; ++u)
        CHECK(f.table.eval_raw(u) == f.table.eval_raw(u ^ 0b111));
    CHECK(f.units_per_run == 2);

    REQUIRE(f.supports.size() == 2);
    CHECK_FALSE(f.supports[0].blocks[0].has_value());
    CHECK(f.supports[0].blocks[1] == BitString(2, 1));
    CHECK(f.supports[1].blocks[1] == BitString(2, 2));

    // derivation itself is one superposition query, not a classical one
    CHECK(oracle.ledger().classical_count() == 0);
    CHECK(oracle.ledger().quantum_count() == 1);
    CHECK(oracle.ledger().subroutine_runs() == 0);
    f.charge_run();
    f.charge_run();
    CHECK(oracle.ledger().subroutine_runs() == 2);
    CHECK(oracle.ledger().oracle_units() == 4);
}

TEST_CASE("build_simon_f validates its inputs") {
    PointOracle oracle = make_feistel_oracle(toy_feistel());
    CHECK_THROWS_AS(build_simon_f(oracle, BitString(2, 1), BitString(2, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_simon_f(oracle, BitString(2, 1), BitString(3, 2)),
                    std::invalid_argument);
    SplitRng rng(2);
    PointOracle narrow = make_perm_oracle(5, rng);
    CHECK_THROWS_AS(build_simon_f(narrow, BitString(2, 1), BitString(2, 2)),
                    std::invalid_argument);
}

TEST_CASE("build_simon_g derives the padded MAC function") {
    CbcOracle cbc(CbcSpec(3, plus_one_mod4()));
    const Message pa{BitString(2, 1)}, pb{BitString(2, 3)};

    const auto g1 = build_simon_g(cbc, 1, pa, pb);
    CHECK(g1.table.entries() == std::vector<std::uint32_t>{0, 1, 2, 3, 2, 3, 0, 1});
    const auto g2 = build_simon_g(cbc, 2, pa, pb);
    CHECK(g2.table.entries() == std::vector<std::uint32_t>{0, 3, 2, 1, 2, 1, 0, 3});
    // both hide the shift 1 || 0b10
    for (std::uint32_t u = 0; u < 8; ++u) {
        CHECK(g1.table.eval_raw(u) == g1.table.eval_raw(u ^ 0b110));
        CHECK(g2.table.eval_raw(u) == g2.table.eval_raw(u ^ 0b110));
    }
    CHECK(g1.units_per_run == 1);

    // support: fixed prefix, wildcard at the free position, zeros elsewhere
    REQUIRE(g1.supports.size() == 2);
    CHECK(g1.supports[0].blocks[0] == BitString(2, 1));
    CHECK(g1.supports[1].blocks[0] == BitString(2, 3));
    CHECK_FALSE(g1.supports[0].blocks[1].has_value());
    CHECK(g1.supports[0].blocks[2] == BitString(2, 0));
    CHECK_FALSE(g2.supports[0].blocks[2].has_value());
    CHECK(g2.supports[0].blocks[1] == BitString(2, 0));
    for (const auto& rec : cbc.ledger().quantum())
        for (const auto& t : rec.supports) CHECK(t.has_zero_fixed_block());
    CHECK(cbc.ledger().quantum_count() == 2);
    CHECK(cbc.ledger().classical_count() == 0);
}

TEST_CASE("build_simon_g enforces the zero-block discipline bound") {
    CbcOracle cbc(CbcSpec(3, plus_one_mod4()));
    const Message long_a{BitString(2, 1), BitString(2, 2)};
    const Message long_b{BitString(2, 3), BitString(2, 2)};
    CHECK_THROWS_AS(build_simon_g(cbc, 1, long_a, long_b), UnsupportedPrefix);

    const Message pa{BitString(2, 1)}, pb{BitString(2, 3)};
    CHECK_THROWS_AS(build_simon_g(cbc, 0, pa, pb), std::invalid_argument);
    CHECK_THROWS_AS(build_simon_g(cbc, 3, pa, pb), std::invalid_argument);
    CHECK_THROWS_AS(build_simon_g(cbc, 1, pa, pa), std::invalid_argument);
    CHECK_THROWS_AS(build_simon_g(cbc, 1, Message{}, Message{}), std::invalid_argument);
}

TEST_CASE("build_cbc2_g1 pins the first block") {
    PointOracle oracle = make_cbc2_oracle(CbcSpec(2, plus_one_mod4()));
    const auto g = build_cbc2_g1(oracle, BitString(2, 1), BitString(2, 3));
    // g(b||x) = pi(pi(alpha_b) ^ x); shift 1 || pi(1)^pi(3) = 1 || 2
    for (std::uint32_t u = 0; u < 8; ++u)
        CHECK(g.table.eval_raw(u) == g.table.eval_raw(u ^ 0b110));
    CHECK(g.table.eval_raw(0) == 3);  // pi(pi(1) ^ 0) = pi(2)
    CHECK(g.units_per_run == 1);
    REQUIRE(g.supports.size() == 2);
    CHECK(g.supports[0].blocks[0] == BitString(2, 1));
    CHECK_FALSE(g.supports[0].blocks[1].has_value());
    CHECK_THROWS_AS(build_cbc2_g1(oracle, BitString(2, 1), BitString(2, 1)),
                    std::invalid_argument);
}

TEST_CASE("cbc oracle records every classical tag query") {
    CbcOracle cbc(CbcSpec(3, plus_one_mod4()));
    const Message msg{BitString(2, 0), BitString(2, 0), BitString(2, 0)};
    CHECK(cbc.query(msg) == BitString(2, 3));
    CHECK(cbc.ledger().classical_count() == 1);
    CHECK(cbc.ledger().classical()[0] == msg);
    CHECK_THROWS_AS(cbc.query(Message{BitString(2, 0)}), std::invalid_argument);
}

TEST_CASE("derived tables are reproducible") {
    PointOracle o1 = make_feistel_oracle(toy_feistel());
    PointOracle o2 = make_feistel_oracle(toy_feistel());
    const auto f1 = build_simon_f(o1, BitString(2, 0), BitString(2, 3));
    const auto f2 = build_simon_f(o2, BitString(2, 0), BitString(2, 3));
    CHECK(f1.table.entries() == f2.table.entries());
}
