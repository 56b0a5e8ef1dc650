#pragma once

#include <compare>
#include <string>

#include "vmlink/graph.hpp"
#include "vmlink/vertex_set.hpp"

namespace vmlink {

// Exact half-integer (value = twice/2). No floating point anywhere in the
// connectivity calculus; comparisons and sums stay exact.
struct HalfInt {
  int twice = 0;

  static constexpr HalfInt whole(int k) { return HalfInt{2 * k}; }
  static constexpr HalfInt half() { return HalfInt{1}; }
  constexpr bool is_whole() const { return twice % 2 == 0; }

  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;
  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt{a.twice + b.twice}; }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt{a.twice - b.twice}; }

  std::string str() const;  // "2" or "3/2"
};

struct KappaResult {
  int value = 0;
  // A minimizing X with S subseteq X subseteq V-T; among minimizers, the one
  // with numerically smallest bitmask.
  VertexSet witness;
};

// rho_G(X): GF(2) rank of the X x (V-X) adjacency submatrix.
int cut_rank(const Graph& g, VertexSet x);

// kappa_G(S,T) = min rho_G(X) over S subseteq X subseteq V-T, by pruned
// branch-and-bound, with the deterministic witness described above.
KappaResult kappa(const Graph& g, VertexSet s, VertexSet t);
// Value-only fast path of the same search.
int kappa_value(const Graph& g, VertexSet s, VertexSet t);
// Same contract as kappa, by plain enumeration of all admissible X with no
// pruning; the independent oracle the pruned search is validated against.
KappaResult kappa_bruteforce(const Graph& g, VertexSet s, VertexSet t);

// Local connectivity: (rho(S) + rho(T) - rho(S u T)) / 2, exact.
HalfInt local_conn(const Graph& g, VertexSet s, VertexSet t);

// Literal check: S subseteq X subseteq V-T and rho_G(X) = k.
bool is_separating(const Graph& g, VertexSet s, VertexSet t, VertexSet x, int k);

// Shrinks (S,T) to (S1,T1) with |S1| = |T1| = kappa(S1,T1) = kappa(S,T),
// by the matroid greedy: grow S1 against T keeping kappa strictly rising,
// then grow T1 against S1 the same way. Ascending-id scan for determinism.
std::pair<VertexSet, VertexSet> shrink_terminals(const Graph& g, VertexSet s, VertexSet t);

}  // namespace vmlink
