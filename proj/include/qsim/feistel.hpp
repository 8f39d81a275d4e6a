#pragma once

#include "qsim/bitstring.hpp"
#include "qsim/rng.hpp"
#include "qsim/truth_table.hpp"

namespace qsim {

// Three-round Feistel network over 2n-bit blocks. The round functions are
// arbitrary n->n tables (they need not be permutations); the construction
// is a permutation of {0,1}^{2n} regardless.
struct FeistelSpec {
    FeistelSpec(TruthTable p1_, TruthTable p2_, TruthTable p3_);
    unsigned half_width() const { return p1.in_width(); }

    TruthTable p1, p2, p3;
};

// Input a||c with a in the top n bits. Output L3||R3 where
//   L3 = c ^ P2(a ^ P1(c))
//   R3 = a ^ P1(c) ^ P3(L3)
std::uint32_t feistel_eval_raw(const FeistelSpec& spec, std::uint32_t input);
BitString feistel_eval(const FeistelSpec& spec, const BitString& input);

// Same map computed by iterating the three rounds explicitly
// (L, R) <- (R, L ^ Pi(R)); kept as a reference for tests.
BitString feistel_eval_rounds(const FeistelSpec& spec, const BitString& input);

// Three independent random round tables, one derived rng stream each.
FeistelSpec random_feistel(unsigned n, const SplitRng& rng);

}  // namespace qsim
