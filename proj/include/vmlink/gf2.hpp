#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace vmlink::gf2 {

// Rank of a list of row vectors over GF(2), each row packed into one 64-bit
// word. This is the hot loop of the whole library: cut-rank and the kappa
// search call it millions of times per sweep.
int rank_of_rows(std::span<const std::uint64_t> rows);

// Rectangular bit-packed matrix over GF(2), row-major, 64 entries per word.
// Bits beyond `cols` in the last word of each row are kept zero.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols);
  static Matrix from_rows(std::initializer_list<std::initializer_list<int>> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool get(int r, int c) const;
  void set(int r, int c, bool value);

  // GF(2) row rank; the input is not mutated (elimination runs on a copy).
  int rank() const;
  Matrix transpose() const;
  // result[i][j] = (*this)[row_idx[i]][col_idx[j]]; indices must be in range.
  Matrix submatrix(std::span<const int> row_idx, std::span<const int> col_idx) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  int words_per_row_ = 0;
  std::vector<std::uint64_t> bits_;

  void require_in_range(int r, int c) const;
};

}  // namespace vmlink::gf2
