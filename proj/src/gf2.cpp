#include "vmlink/gf2.hpp"

#include <array>
#include <bit>
#include <stdexcept>
#include <string>

namespace vmlink::gf2 {

int rank_of_rows(std::span<const std::uint64_t> rows) {
  // XOR basis indexed by leading bit.
  std::array<std::uint64_t, 64> pivot{};
  int rank = 0;
  for (std::uint64_t row : rows) {
    while (row != 0) {
      int lead = 63 - std::countl_zero(row);
      if (pivot[static_cast<std::size_t>(lead)] == 0) {
        pivot[static_cast<std::size_t>(lead)] = row;
        ++rank;
        break;
      }
      row ^= pivot[static_cast<std::size_t>(lead)];
    }
  }
  return rank;
}

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("gf2::Matrix: negative dimension");
  words_per_row_ = (cols + 63) / 64;
  bits_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(words_per_row_), 0);
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<int>> rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
  Matrix m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c)
      throw std::invalid_argument("gf2::Matrix: ragged initializer");
    int j = 0;
    for (int v : row) m.set(i, j++, v != 0);
    ++i;
  }
  return m;
}

void Matrix::require_in_range(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw std::out_of_range("gf2::Matrix: index (" + std::to_string(r) + "," +
                            std::to_string(c) + ") out of range for " +
                            std::to_string(rows_) + "x" + std::to_string(cols_));
}

bool Matrix::get(int r, int c) const {
  require_in_range(r, c);
  const std::uint64_t word =
      bits_[static_cast<std::size_t>(r) * static_cast<std::size_t>(words_per_row_) +
            static_cast<std::size_t>(c / 64)];
  return (word >> (c % 64)) & 1;
}

void Matrix::set(int r, int c, bool value) {
  require_in_range(r, c);
  std::uint64_t& word =
      bits_[static_cast<std::size_t>(r) * static_cast<std::size_t>(words_per_row_) +
            static_cast<std::size_t>(c / 64)];
  const std::uint64_t mask = std::uint64_t{1} << (c % 64);
  if (value) word |= mask; else word &= ~mask;
}

int Matrix::rank() const {
  if (rows_ == 0 || cols_ == 0) return 0;
  if (words_per_row_ == 1) {
    return rank_of_rows(std::span<const std::uint64_t>(bits_.data(),
                                                       static_cast<std::size_t>(rows_)));
  }
  // General case: in-place elimination on a working copy of the packed rows.
  std::vector<std::uint64_t> work = bits_;
  auto row_ptr = [&](int r) { return work.data() + static_cast<std::size_t>(r) * words_per_row_; };
  int rank = 0;
  for (int c = 0; c < cols_ && rank < rows_; ++c) {
    const int w = c / 64;
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    int pivot = -1;
    for (int r = rank; r < rows_; ++r) {
      if (row_ptr(r)[w] & mask) { pivot = r; break; }
    }
    if (pivot < 0) continue;
    if (pivot != rank) {
      for (int k = 0; k < words_per_row_; ++k) std::swap(row_ptr(pivot)[k], row_ptr(rank)[k]);
    }
    for (int r = pivot + 1; r < rows_; ++r) {
      if (row_ptr(r)[w] & mask) {
        for (int k = 0; k < words_per_row_; ++k) row_ptr(r)[k] ^= row_ptr(rank)[k];
      }
    }
    ++rank;
  }
  return rank;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      if (get(r, c)) out.set(c, r, true);
  return out;
}

Matrix Matrix::submatrix(std::span<const int> row_idx, std::span<const int> col_idx) const {
  Matrix out(static_cast<int>(row_idx.size()), static_cast<int>(col_idx.size()));
  for (int i = 0; i < out.rows(); ++i) {
    for (int j = 0; j < out.cols(); ++j) {
      if (get(row_idx[static_cast<std::size_t>(i)], col_idx[static_cast<std::size_t>(j)]))
        out.set(i, j, true);
    }
  }
  return out;
}

}  // namespace vmlink::gf2
