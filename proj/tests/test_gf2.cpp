#include <doctest.h>

#include <stdexcept>

#include "vmlink/gf2.hpp"
#include "vmlink/rng.hpp"

using vmlink::Rng;
using vmlink::gf2::Matrix;

namespace {

Matrix random_matrix(int rows, int cols, Rng& rng) {
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m.set(r, c, rng.below(2) == 1);
  return m;
}

}  // namespace

TEST_SUITE_BEGIN("gf2");

TEST_CASE("rank of small matrices") {
  CHECK(Matrix(0, 0).rank() == 0);
  CHECK(Matrix(3, 5).rank() == 0);

  Matrix ones(3, 3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) ones.set(r, c, true);
  CHECK(ones.rank() == 1);

  // A_{C5}[{v0,v1}, {v2,v3,v4}], eliminated by hand
  CHECK(Matrix::from_rows({{0, 0, 1}, {1, 0, 0}}).rank() == 2);

  Matrix identity(4, 4);
  for (int i = 0; i < 4; ++i) identity.set(i, i, true);
  CHECK(identity.rank() == 4);
}

TEST_CASE("rank handles multi-word rows") {
  // 2 x 100 with a single shared pivot far beyond the first word
  Matrix wide(3, 100);
  wide.set(0, 97, true);
  wide.set(1, 97, true);
  wide.set(2, 3, true);
  CHECK(wide.rank() == 2);
  CHECK(wide.transpose().rank() == 2);
}

TEST_CASE("submatrix extraction") {
  const Matrix m = Matrix::from_rows({{0, 0, 1}, {1, 0, 0}});
  const int rows1[] = {1};
  const int cols02[] = {0, 2};
  CHECK(m.submatrix(rows1, cols02) == Matrix::from_rows({{1, 0}}));

  Matrix identity(3, 3);
  for (int i = 0; i < 3; ++i) identity.set(i, i, true);
  const int rows01[] = {0, 1};
  const int cols12[] = {1, 2};
  CHECK(identity.submatrix(rows01, cols12) == Matrix::from_rows({{0, 0}, {1, 0}}));

  const Matrix empty = m.submatrix({}, cols02);
  CHECK(empty.rows() == 0);
  CHECK(empty.cols() == 2);
  CHECK(empty.rank() == 0);

  const int bad[] = {7};
  CHECK_THROWS_AS((void)m.submatrix(bad, cols02), std::out_of_range);
}

TEST_CASE("rank equals transpose rank on random shapes") {
  Rng rng(11);
  for (int it = 0; it < 400; ++it) {
    const int rows = rng.below_int(17);
    const int cols = rng.below_int(17);
    const Matrix m = random_matrix(rows, cols, rng);
    CHECK(m.rank() == m.transpose().rank());
  }
}

TEST_CASE("rank is invariant under row swaps and additions") {
  Rng rng(12);
  for (int it = 0; it < 200; ++it) {
    const int rows = 2 + rng.below_int(10);
    const int cols = 1 + rng.below_int(12);
    const Matrix m = random_matrix(rows, cols, rng);
    const int a = rng.below_int(rows);
    int b = rng.below_int(rows);
    if (a == b) b = (b + 1) % rows;

    Matrix swapped = m;
    for (int c = 0; c < cols; ++c) {
      swapped.set(a, c, m.get(b, c));
      swapped.set(b, c, m.get(a, c));
    }
    CHECK(swapped.rank() == m.rank());

    Matrix added = m;
    for (int c = 0; c < cols; ++c) added.set(a, c, m.get(a, c) != m.get(b, c));
    CHECK(added.rank() == m.rank());
  }
}

TEST_CASE("submatrix rank never exceeds full rank; deletions drop rank by at most one") {
  Rng rng(13);
  for (int it = 0; it < 200; ++it) {
    const int rows = 1 + rng.below_int(12);
    const int cols = 1 + rng.below_int(12);
    const Matrix m = random_matrix(rows, cols, rng);
    const int full = m.rank();

    std::vector<int> some_rows, all_cols;
    for (int r = 0; r < rows; ++r)
      if (rng.below(2) == 1) some_rows.push_back(r);
    for (int c = 0; c < cols; ++c) all_cols.push_back(c);
    CHECK(m.submatrix(some_rows, all_cols).rank() <= full);

    // drop one row
    std::vector<int> rest;
    const int dropped = rng.below_int(rows);
    for (int r = 0; r < rows; ++r)
      if (r != dropped) rest.push_back(r);
    const int reduced = m.submatrix(rest, all_cols).rank();
    CHECK(reduced <= full);
    CHECK(full <= reduced + 1);

    // drop one column
    std::vector<int> rest_cols, row_all;
    const int dropped_col = rng.below_int(cols);
    for (int c = 0; c < cols; ++c)
      if (c != dropped_col) rest_cols.push_back(c);
    for (int r = 0; r < rows; ++r) row_all.push_back(r);
    const int reduced_col = m.submatrix(row_all, rest_cols).rank();
    CHECK(reduced_col <= full);
    CHECK(full <= reduced_col + 1);
  }
}

TEST_SUITE_END();
