#include "qsim/cbc.hpp"

#include <stdexcept>

namespace qsim {

CbcSpec::CbcSpec(unsigned block_count_, TruthTable pi_)
    : block_count(block_count_), pi(std::move(pi_)) {
    if (block_count < 1) throw std::invalid_argument("CbcSpec needs at least one block");
    if (pi.in_width() != pi.out_width() || !pi.check_bijection())
        throw std::invalid_argument("CbcSpec pi must be an n -> n permutation");
}

BitString cbc_mac(const CbcSpec& spec, std::span<const BitString> message) {
    const unsigned n = spec.block_width();
    if (message.size() != spec.block_count)
        throw std::invalid_argument("cbc_mac block count mismatch");
    std::uint32_t t = 0;
    bool first = true;
    for (const BitString& block : message) {
        if (block.width() != n) throw std::invalid_argument("cbc_mac block width mismatch");
        t = spec.pi.eval_raw(first ? block.bits() : (t ^ block.bits()));
        first = false;
    }
    return {n, t};
}

BitString iterate_pi(const CbcSpec& spec, const BitString& x, unsigned times) {
    if (x.width() != spec.block_width())
        throw std::invalid_argument("iterate_pi width mismatch");
    std::uint32_t v = x.bits();
    for (unsigned i = 0; i < times; ++i) v = spec.pi.eval_raw(v);
    return {spec.block_width(), v};
}

}  // namespace qsim
