#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qsim {

// One machine word holding a 1..32-bit string. Written literals follow
// binary notation: the leftmost character is the highest bit index, and a
// concatenation hi||lo places hi in the top bits. The flag of a flagged
// string b||a therefore sits at index width-1.
class BitString {
public:
    static constexpr unsigned kMaxWidth = 32;

    BitString() = default;  // 1-bit zero
    BitString(unsigned width, std::uint32_t bits) {
        if (width < 1 || width > kMaxWidth)
            throw std::invalid_argument("BitString width out of range");
        width_ = static_cast<std::uint8_t>(width);
        bits_ = bits & mask(width);
    }

    static BitString zero(unsigned width) { return {width, 0}; }

    unsigned width() const { return width_; }
    std::uint32_t bits() const { return bits_; }
    bool is_zero() const { return bits_ == 0; }

    bool bit(unsigned i) const {
        if (i >= width_) throw std::out_of_range("BitString bit index");
        return (bits_ >> i) & 1u;
    }

    BitString operator^(const BitString& rhs) const {
        if (width_ != rhs.width_)
            throw std::invalid_argument("BitString xor width mismatch");
        return {width_, bits_ ^ rhs.bits_};
    }

    friend bool operator==(const BitString&, const BitString&) = default;

    static BitString concat(const BitString& hi, const BitString& lo) {
        const unsigned w = hi.width_ + lo.width_;
        if (w > kMaxWidth) throw std::invalid_argument("BitString concat too wide");
        return {w, (hi.bits_ << lo.width_) | lo.bits_};
    }

    // bits [lo, lo+count) as a new string
    BitString slice(unsigned lo, unsigned count) const {
        if (count < 1 || lo + count > width_)
            throw std::out_of_range("BitString slice range");
        return {count, (bits_ >> lo) & mask(count)};
    }
    BitString high(unsigned count) const { return slice(width_ - count, count); }
    BitString low(unsigned count) const { return slice(0, count); }

    // fixed-width lowercase hex, one nibble per 4 bits (rounded up)
    std::string hex() const {
        static const char* digits = "0123456789abcdef";
        const unsigned nibbles = (width_ + 3) / 4;
        std::string out(nibbles, '0');
        for (unsigned i = 0; i < nibbles; ++i)
            out[nibbles - 1 - i] = digits[(bits_ >> (4 * i)) & 0xf];
        return out;
    }

private:
    static std::uint32_t mask(unsigned w) {
        return w >= 32 ? ~0u : ((1u << w) - 1u);
    }

    std::uint32_t bits_ = 0;
    std::uint8_t width_ = 1;
};

// GF(2) inner product: parity of the bitwise AND.
inline int dot(const BitString& a, const BitString& b) {
    if (a.width() != b.width())
        throw std::invalid_argument("dot width mismatch");
    return std::popcount(a.bits() & b.bits()) & 1;
}

}  // namespace qsim
