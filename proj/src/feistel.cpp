#include "qsim/feistel.hpp"

#include <stdexcept>

namespace qsim {

FeistelSpec::FeistelSpec(TruthTable p1_, TruthTable p2_, TruthTable p3_)
    : p1(std::move(p1_)), p2(std::move(p2_)), p3(std::move(p3_)) {
    const unsigned n = p1.in_width();
    for (const TruthTable* t : {&p1, &p2, &p3})
        if (t->in_width() != n || t->out_width() != n)
            throw std::invalid_argument("Feistel round tables must share one n -> n shape");
    if (2 * n > BitString::kMaxWidth)
        throw std::invalid_argument("Feistel block too wide");
}

std::uint32_t feistel_eval_raw(const FeistelSpec& spec, std::uint32_t input) {
    const unsigned n = spec.half_width();
    const std::uint32_t half_mask = (1u << n) - 1u;
    const std::uint32_t a = (input >> n) & half_mask;
    const std::uint32_t c = input & half_mask;
    const std::uint32_t t = a ^ spec.p1.eval_raw(c);   // a ^ P1(c)
    const std::uint32_t w = c ^ spec.p2.eval_raw(t);   // L3
    const std::uint32_t r3 = t ^ spec.p3.eval_raw(w);  // R3
    return (w << n) | r3;
}

BitString feistel_eval(const FeistelSpec& spec, const BitString& input) {
    const unsigned n = spec.half_width();
    if (input.width() != 2 * n) throw std::invalid_argument("feistel_eval width mismatch");
    return {2 * n, feistel_eval_raw(spec, input.bits())};
}

BitString feistel_eval_rounds(const FeistelSpec& spec, const BitString& input) {
    const unsigned n = spec.half_width();
    if (input.width() != 2 * n) throw std::invalid_argument("feistel_eval width mismatch");
    std::uint32_t left = input.high(n).bits();
    std::uint32_t right = input.low(n).bits();
    for (const TruthTable* p : {&spec.p1, &spec.p2, &spec.p3}) {
        const std::uint32_t next_right = left ^ p->eval_raw(right);
        left = right;
        right = next_right;
    }
    return {2 * n, (left << n) | right};
}

FeistelSpec random_feistel(unsigned n, const SplitRng& rng) {
    SplitRng r1 = rng.derive(0), r2 = rng.derive(1), r3 = rng.derive(2);
    return {random_function(n, n, r1), random_function(n, n, r2), random_function(n, n, r3)};
}

}  // namespace qsim
