#include "qsim/truth_table.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace qsim {

namespace {
constexpr unsigned kMaxInWidth = 24;  // tables live in memory

std::uint32_t out_mask(unsigned w) { return w >= 32 ? ~0u : ((1u << w) - 1u); }

void write_u32(std::ostream& os, std::uint32_t v) {
    char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                 static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    os.write(b, 4);
}

std::uint32_t read_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    if (!is) throw std::runtime_error("truth table stream truncated");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}
}  // namespace

TruthTable::TruthTable(unsigned in_width, unsigned out_width)
    : in_width_(in_width), out_width_(out_width) {
    if (in_width < 1 || in_width > kMaxInWidth)
        throw std::invalid_argument("TruthTable in_width out of range");
    if (out_width < 1 || out_width > 32)
        throw std::invalid_argument("TruthTable out_width out of range");
    entries_.assign(std::size_t{1} << in_width, 0);
}

BitString TruthTable::eval(const BitString& x) const {
    if (x.width() != in_width_) throw std::invalid_argument("TruthTable eval width mismatch");
    return {out_width_, entries_[x.bits()]};
}

void TruthTable::set(std::uint32_t x, std::uint32_t y) {
    if (x >= entries_.size()) throw std::out_of_range("TruthTable::set input");
    if (y & ~out_mask(out_width_)) throw std::invalid_argument("TruthTable::set output too wide");
    entries_[x] = y;
}

bool TruthTable::check_bijection() const {
    if (in_width_ != out_width_) return false;
    std::vector<bool> seen(entries_.size(), false);
    for (std::uint32_t y : entries_) {
        if (seen[y]) return false;
        seen[y] = true;
    }
    return true;
}

TruthTable TruthTable::identity(unsigned n) {
    TruthTable t(n, n);
    for (std::size_t x = 0; x < t.entries_.size(); ++x)
        t.entries_[x] = static_cast<std::uint32_t>(x);
    t.is_permutation_ = true;
    return t;
}

TruthTable random_function(unsigned in_width, unsigned out_width, SplitRng& rng) {
    TruthTable t(in_width, out_width);
    for (std::size_t x = 0; x < t.size(); ++x)
        t.set(static_cast<std::uint32_t>(x), rng.bits(out_width));
    return t;
}

TruthTable random_permutation(unsigned n, SplitRng& rng) {
    TruthTable t = TruthTable::identity(n);
    // Fisher-Yates, swapping from the top
    for (std::size_t i = t.entries_.size() - 1; i > 0; --i) {
        const std::size_t j = rng.below(i + 1);
        std::swap(t.entries_[i], t.entries_[j]);
    }
    t.is_permutation_ = true;
    return t;
}

TruthTable simon_promise_function(unsigned m, const BitString& s, SplitRng& rng) {
    if (s.width() != m) throw std::invalid_argument("promise shift width mismatch");
    if (s.is_zero()) throw std::invalid_argument("promise shift must be nonzero");
    TruthTable tau = random_permutation(m, rng);
    TruthTable f(m, m);
    for (std::uint32_t x = 0; x < f.size(); ++x)
        f.set(x, tau.eval_raw(std::min(x, x ^ s.bits())));
    return f;
}

void save_table(const TruthTable& t, std::ostream& os) {
    os.write("QTT1", 4);
    write_u32(os, t.in_width());
    write_u32(os, t.out_width());
    write_u32(os, t.is_permutation() ? 1u : 0u);
    for (std::uint32_t e : t.entries()) write_u32(os, e);
    if (!os) throw std::runtime_error("truth table write failed");
}

TruthTable load_table(std::istream& is) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::string(magic, 4) != "QTT1")
        throw std::runtime_error("bad truth table magic");
    const std::uint32_t in_w = read_u32(is);
    const std::uint32_t out_w = read_u32(is);
    const std::uint32_t flags = read_u32(is);
    TruthTable t(in_w, out_w);
    for (std::size_t x = 0; x < t.size(); ++x) {
        const std::uint32_t y = read_u32(is);
        t.set(static_cast<std::uint32_t>(x), y);
    }
    if (flags & 1u) {
        if (!t.check_bijection()) throw std::runtime_error("permutation flag on non-bijection");
        t.is_permutation_ = true;
    }
    return t;
}

}  // namespace qsim
