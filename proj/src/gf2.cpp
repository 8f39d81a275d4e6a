#include "qsim/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace qsim::gf2 {

Matrix::Matrix(std::size_t rows, unsigned cols) : cols_(cols) {
    if (cols < 1 || cols > BitString::kMaxWidth)
        throw std::invalid_argument("Matrix cols out of range");
    rows_.assign(rows, 0);
}

Matrix Matrix::identity(unsigned n) {
    Matrix m(n, n);
    for (unsigned i = 0; i < n; ++i) m.rows_[i] = 1u << i;
    m.shadow_fresh_ = false;
    return m;
}

bool Matrix::at(std::size_t r, unsigned c) const {
    if (r >= rows_.size() || c >= cols_) throw std::out_of_range("Matrix::at");
    return (rows_[r] >> c) & 1u;
}

void Matrix::set(std::size_t r, unsigned c, bool v) {
    if (r >= rows_.size() || c >= cols_) throw std::out_of_range("Matrix::set");
    if (v)
        rows_[r] |= 1u << c;
    else
        rows_[r] &= ~(1u << c);
    shadow_fresh_ = false;
}

std::uint32_t Matrix::row_bits(std::size_t r) const {
    if (r >= rows_.size()) throw std::out_of_range("Matrix::row_bits");
    return rows_[r];
}

void Matrix::append_row(const BitString& v) {
    if (v.width() != cols_) throw std::invalid_argument("append_row width mismatch");
    rows_.push_back(v.bits());
    shadow_fresh_ = false;
}

std::uint32_t Matrix::reduce(std::uint32_t v) const {
    while (v) {
        const unsigned p = 31 - std::countl_zero(v);
        if (!shadow_[p]) break;
        v ^= shadow_[p];
    }
    return v;
}

void Matrix::refresh_shadow() const {
    shadow_.fill(0);
    for (std::uint32_t r : rows_) {
        const std::uint32_t red = reduce(r);
        if (red) shadow_[31 - std::countl_zero(red)] = red;
    }
    shadow_fresh_ = true;
}

unsigned Matrix::rank() const {
    if (!shadow_fresh_) refresh_shadow();
    unsigned n = 0;
    for (std::uint32_t s : shadow_)
        if (s) ++n;
    return n;
}

bool Matrix::add_if_independent(const BitString& v) {
    if (v.width() != cols_) throw std::invalid_argument("add_if_independent width mismatch");
    if (!shadow_fresh_) refresh_shadow();
    const std::uint32_t red = reduce(v.bits());
    if (!red) return false;
    shadow_[31 - std::countl_zero(red)] = red;
    rows_.push_back(v.bits());
    return true;
}

AffineSolution solve_affine(const Matrix& lhs, const std::vector<std::uint8_t>& rhs) {
    const std::size_t nrows = lhs.rows();
    const unsigned cols = lhs.cols();
    if (rhs.size() != nrows) throw std::invalid_argument("solve_affine rhs size mismatch");

    // augmented rows: coefficient word plus the rhs bit at position cols
    std::vector<std::uint64_t> a(nrows);
    for (std::size_t r = 0; r < nrows; ++r)
        a[r] = static_cast<std::uint64_t>(lhs.row_bits(r)) |
               (static_cast<std::uint64_t>(rhs[r] & 1u) << cols);

    std::size_t pivot_row = 0;
    std::vector<int> pivot_of_col(cols, -1);
    for (unsigned c = 0; c < cols && pivot_row < nrows; ++c) {
        std::size_t sel = pivot_row;
        while (sel < nrows && !((a[sel] >> c) & 1u)) ++sel;
        if (sel == nrows) continue;
        std::swap(a[sel], a[pivot_row]);
        for (std::size_t r = 0; r < nrows; ++r)
            if (r != pivot_row && ((a[r] >> c) & 1u)) a[r] ^= a[pivot_row];
        pivot_of_col[c] = static_cast<int>(pivot_row);
        ++pivot_row;
    }

    const std::uint64_t coef_mask = (cols >= 32) ? 0xffffffffull : ((1ull << cols) - 1);
    for (std::size_t r = 0; r < nrows; ++r)
        if (!(a[r] & coef_mask) && ((a[r] >> cols) & 1u)) return Inconsistent{};

    if (pivot_row < cols) return Underdetermined{};

    std::uint32_t s = 0;
    for (unsigned c = 0; c < cols; ++c)
        if ((a[static_cast<std::size_t>(pivot_of_col[c])] >> cols) & 1u) s |= 1u << c;
    return BitString(cols, s);
}

}  // namespace qsim::gf2
