#pragma once

#include <span>
#include <stdexcept>

#include "qsim/oracle.hpp"
#include "qsim/simon.hpp"

namespace qsim {

enum class Guess { feistel, random_permutation };
enum class VerdictReason { rank_deficient, collision_check_passed, collision_check_failed };

struct Verdict {
    Guess guess;
    VerdictReason reason;
    simon::SolveResult stats;
};

// Decides whether v is a three-round Feistel network or a random
// permutation of 2n-bit blocks. Budget: at most 2n subroutine runs, plus
// two classical point queries for the final collision check. A rank-
// deficient sample basis is itself evidence of Feistel structure.
Verdict feistel_distinguisher(PointOracle& v, unsigned n, simon::Method method, SplitRng& rng);

struct Forgery {
    Message message;
    BitString tag;
    unsigned prefix_len = 0;
    std::vector<MessageTemplate> templates_queried;
    std::vector<Message> classical_points_queried;
};

struct SimonFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PrefixSetupFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Chosen-prefix forgery against fixed-length CBC-MAC: given a target prefix
// beta_1..beta_k (1 <= k <= ell-2), produces a valid (message, tag) pair
// whose message starts with the prefix and was never queried. Every query
// the attack makes, classical or in superposition, keeps at least one
// all-zero block; the forged message has none outside the prefix.
Forgery cbc_forge(CbcOracle& cbc, std::span<const BitString> beta_prefix,
                  simon::Method method, SplitRng& rng);

struct ForgeryCheck {
    bool tag_valid = false;
    bool never_queried = false;
    bool zero_block_discipline = false;
    bool forged_tail_nonzero = false;
    bool ok() const {
        return tag_valid && never_queried && zero_block_discipline && forged_tail_nonzero;
    }
};

// Recomputes the MAC from the ground-truth spec and certifies the query
// discipline recorded in the forgery. Violations are reported separately
// from tag mismatches.
ForgeryCheck verify_forgery(const CbcOracle& cbc, const Forgery& forgery);

// ell == 2 PRP distinguisher: CBC over two blocks vs. a random function of
// the same 2n -> n shape. guess == feistel stands for "structured".
Verdict cbc2_prp_distinguisher(PointOracle& oracle, unsigned n, simon::Method method,
                               SplitRng& rng);

struct BaselineResult {
    std::uint64_t queries = 0;
    BitString s;
};

// Classical collision search against a promise instance: query distinct
// uniform points until two collide; their xor is s. Never exceeds
// 2^{m-1} + 1 queries.
BaselineResult classical_simon_baseline(const TruthTable& f, SplitRng& rng);

}  // namespace qsim
