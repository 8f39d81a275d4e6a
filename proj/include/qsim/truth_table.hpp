#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qsim/bitstring.hpp"
#include "qsim/rng.hpp"

namespace qsim {

// Explicit table of a function {0,1}^m -> {0,1}^r. in_width is capped at 24
// (the table is held in memory); out_width at 32.
class TruthTable {
public:
    TruthTable(unsigned in_width, unsigned out_width);

    unsigned in_width() const { return in_width_; }
    unsigned out_width() const { return out_width_; }
    std::size_t size() const { return entries_.size(); }
    bool is_permutation() const { return is_permutation_; }

    std::uint32_t eval_raw(std::uint32_t x) const { return entries_[x]; }
    BitString eval(const BitString& x) const;
    void set(std::uint32_t x, std::uint32_t y);
    const std::vector<std::uint32_t>& entries() const { return entries_; }

    bool check_bijection() const;

    static TruthTable identity(unsigned n);

private:
    friend TruthTable random_permutation(unsigned, SplitRng&);
    friend TruthTable load_table(std::istream&);

    unsigned in_width_;
    unsigned out_width_;
    bool is_permutation_ = false;
    std::vector<std::uint32_t> entries_;
};

// Independent uniform entries; deterministic for a given rng stream.
TruthTable random_function(unsigned in_width, unsigned out_width, SplitRng& rng);

// Fisher-Yates shuffle of the identity table; n <= 24.
TruthTable random_permutation(unsigned n, SplitRng& rng);

// Hidden-shift instance: f(x) = tau(min(x, x^s)) for a random permutation
// tau, so f(x) = f(y) exactly when y is in {x, x^s}.
TruthTable simon_promise_function(unsigned m, const BitString& s, SplitRng& rng);

// Flat binary format: magic "QTT1", then u32 little-endian in_width,
// out_width, flags (bit 0: permutation), then 2^in_width u32 entries.
void save_table(const TruthTable& t, std::ostream& os);
TruthTable load_table(std::istream& is);

}  // namespace qsim
