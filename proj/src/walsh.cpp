#include "qsim/walsh.hpp"

#include <omp.h>

#include <stdexcept>

namespace qsim {

namespace {

constexpr std::size_t kThreadThreshold = 1u << 15;

void check_pow2(std::size_t n) {
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("walsh_hadamard length must be a power of two");
}

inline void butterfly(std::int64_t* v, std::size_t i, std::size_t half) {
    const std::int64_t a = v[i];
    const std::int64_t b = v[i + half];
    v[i] = a + b;
    v[i + half] = a - b;
}

}  // namespace

void walsh_hadamard_serial(std::span<std::int64_t> v) {
    check_pow2(v.size());
    const std::size_t n = v.size();
    for (std::size_t half = 1; half < n; half <<= 1)
        for (std::size_t base = 0; base < n; base += 2 * half)
            for (std::size_t i = base; i < base + half; ++i) butterfly(v.data(), i, half);
}

void walsh_hadamard(std::span<std::int64_t> v) {
    check_pow2(v.size());
    const std::size_t n = v.size();
    if (n < kThreadThreshold || omp_get_max_threads() == 1) {
        walsh_hadamard_serial(v);
        return;
    }
    std::int64_t* data = v.data();
    for (std::size_t half = 1; half < n; half <<= 1) {
        const std::int64_t pairs = static_cast<std::int64_t>(n / 2);
        const std::size_t lo_mask = half - 1;
        const std::size_t hi_mask = ~lo_mask;
        // pair p touches indices i and i+half with i = (p_hi << 1) | p_lo;
        // pairs are disjoint, so the integer adds commute exactly
#pragma omp parallel for schedule(static)
        for (std::int64_t p = 0; p < pairs; ++p) {
            const std::size_t up = static_cast<std::size_t>(p);
            const std::size_t i = ((up & hi_mask) << 1) | (up & lo_mask);
            butterfly(data, i, half);
        }
    }
}

}  // namespace qsim
