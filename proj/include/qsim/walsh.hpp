#pragma once

#include <cstdint>
#include <span>

namespace qsim {

// In-place unnormalized Walsh-Hadamard transform:
//   w[j] = sum_u (-1)^{popcount(u & j)} v[u]
// Self-inverse up to a factor of len. Length must be a power of two.
void walsh_hadamard(std::span<std::int64_t> v);         // threads above ~32k entries
void walsh_hadamard_serial(std::span<std::int64_t> v);  // reference kernel

}  // namespace qsim
