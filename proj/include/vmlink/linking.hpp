#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "vmlink/graph.hpp"
#include "vmlink/rankconn.hpp"
#include "vmlink/vertex_set.hpp"
#include "vmlink/violation.hpp"

namespace vmlink {

// Subset of the three reduction kinds.
class OptionSet {
 public:
  constexpr OptionSet() = default;
  static constexpr OptionSet all() { return OptionSet(0b111); }
  static constexpr OptionSet deletion_and_pivot() { return OptionSet(0b101); }

  constexpr void add(ReductionKind k) { bits_ |= std::uint8_t(1u << static_cast<int>(k)); }
  constexpr bool contains(ReductionKind k) const { return (bits_ >> static_cast<int>(k)) & 1; }
  constexpr int size() const { return (bits_ & 1) + ((bits_ >> 1) & 1) + ((bits_ >> 2) & 1); }
  constexpr bool empty() const { return bits_ == 0; }
  friend constexpr OptionSet operator&(OptionSet a, OptionSet b) {
    return OptionSet(a.bits_ & b.bits_);
  }
  friend constexpr bool operator==(OptionSet, OptionSet) = default;

  std::vector<ReductionKind> kinds() const;
  std::string names() const;  // "delete+pivot-delete", "-" when empty

 private:
  constexpr explicit OptionSet(std::uint8_t bits) : bits_(bits) {}
  std::uint8_t bits_ = 0;
};

// (G, Q, R, S, T) with Q,R and S,T disjoint, cached connectivities and the
// free vertex set F = V - (Q u R u S u T).
struct LinkingInstance {
  Graph g;
  VertexSet q, r, s, t;
  int k = 0;    // kappa(Q, R)
  int ell = 0;  // kappa(S, T)
  VertexSet free;

  static LinkingInstance make(Graph g, VertexSet q, VertexSet r, VertexSet s, VertexSet t);
};

// True iff all three reductions at v preserve kappa(S,T). The pivot kind is
// checked once with the canonical neighbor; every neighbor choice gives
// locally equivalent graphs, so the single check covers them all.
bool is_flexible(const Graph& g, VertexSet s, VertexSet t, int v);

// The subset of reductions at v preserving kappa(Q,R). The single-pair
// linking theorem guarantees at least two; fewer raises theorem_violation.
OptionSet oum_linking_options(const Graph& g, VertexSet q, VertexSet r, int v);

// Reductions preserving both cached connectivities; guaranteed nonempty.
OptionSet joint_good_options(const LinkingInstance& inst, int v);

// joint_good_options restricted to {delete, pivot-delete}.
OptionSet pivot_only_options(const LinkingInstance& inst, int v);

// Removes every vertex of `drop` (ascending id), at each step applying some
// jointly-good reduction; both connectivities survive to the result.
Graph reduce_preserving(const LinkingInstance& inst, VertexSet drop);

// Nested (S,T)-separating sets of order kappa(S,T) threading through F:
// sets[i] covers exactly order[0..i] of F, and sets are increasing.
struct SeparatingChain {
  std::vector<int> order;
  std::vector<VertexSet> sets;
};

// Requires every vertex of f to be non-(s,t)-flexible. Each step picks the
// minimum-size order-k separating set over the remaining f vertices,
// candidates enumerated in (size, bitmask) lexicographic order.
SeparatingChain separating_chain(const Graph& g, VertexSet s, VertexSet t, VertexSet f);

struct DoublyGoodVertex {
  int v = -1;
  OptionSet options;
};

// Extended pair with certified properties: Q' >= Q, R' >= R, both of
// cut-rank k, local connectivity up by at least 1/2, and at least
// floor(|F|/2) vertices still outside Q' u R'.
struct PairExtension {
  VertexSet q_ext, r_ext;
};

using NestingOutcome = std::variant<DoublyGoodVertex, PairExtension>;

// One escalation step: either some free vertex carries two joint options, or
// the pair (Q,R) extends as above. Preconditions (checked): S u T inside
// Q u R; F nonempty; rho(Q) = rho(R) = kappa(Q,R); no free vertex flexible
// for either pair.
NestingOutcome nesting_step(const Graph& g, VertexSet q, VertexSet r, VertexSet s, VertexSet t);

// First free vertex (ascending id) with at least two joint options.
// nullopt only when |F| is below (2l+1)*4^k; otherwise the two-pair linking
// theorem applies and a miss raises theorem_violation.
std::optional<DoublyGoodVertex> find_doubly_good_vertex(const LinkingInstance& inst);

// (2l+1) * 2^(2k), saturated so it never overflows.
std::uint64_t doubly_good_bound(int k, int ell);

}  // namespace vmlink
