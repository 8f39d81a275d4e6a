#pragma once

#include <array>
#include <cstdint>
#include <variant>
#include <vector>

#include "qsim/bitstring.hpp"

namespace qsim::gf2 {

struct Underdetermined {};
struct Inconsistent {};

// Dense GF(2) matrix, one packed word per row (cols <= 32). Rows are
// unbounded; the Simon solver appends sampled rows one at a time.
class Matrix {
public:
    Matrix(std::size_t rows, unsigned cols);
    static Matrix identity(unsigned n);

    std::size_t rows() const { return rows_.size(); }
    unsigned cols() const { return cols_; }

    bool at(std::size_t r, unsigned c) const;
    void set(std::size_t r, unsigned c, bool v);
    std::uint32_t row_bits(std::size_t r) const;
    void append_row(const BitString& v);

    unsigned rank() const;

    // Appends v iff it lies outside the current row space. An echelonized
    // shadow is kept alongside the rows so each call costs O(cols) words
    // once the shadow is warm.
    bool add_if_independent(const BitString& v);

private:
    std::uint32_t reduce(std::uint32_t v) const;
    void refresh_shadow() const;

    unsigned cols_;
    std::vector<std::uint32_t> rows_;
    // shadow_[p] holds a row whose highest set bit is p, or 0
    mutable std::array<std::uint32_t, BitString::kMaxWidth> shadow_{};
    mutable bool shadow_fresh_ = true;
};

using AffineSolution = std::variant<BitString, Underdetermined, Inconsistent>;

// Solves lhs * s = rhs over GF(2) by Gauss-Jordan elimination with
// first-nonzero pivoting. rhs holds one 0/1 entry per row.
AffineSolution solve_affine(const Matrix& lhs, const std::vector<std::uint8_t>& rhs);

}  // namespace qsim::gf2
