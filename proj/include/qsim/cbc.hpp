#pragma once

#include <span>
#include <vector>

#include "qsim/bitstring.hpp"
#include "qsim/truth_table.hpp"

namespace qsim {

using Message = std::vector<BitString>;

// Fixed-length CBC-MAC over an n-bit permutation pi:
//   tag = pi(...pi(pi(m1) ^ m2)... ^ m_ell)
struct CbcSpec {
    CbcSpec(unsigned block_count_, TruthTable pi_);
    unsigned block_width() const { return pi.in_width(); }

    unsigned block_count;  // ell, number of message blocks
    TruthTable pi;
};

BitString cbc_mac(const CbcSpec& spec, std::span<const BitString> message);

// pi applied `times` times.
BitString iterate_pi(const CbcSpec& spec, const BitString& x, unsigned times);

}  // namespace qsim
