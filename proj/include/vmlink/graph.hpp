#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vmlink/vertex_set.hpp"

namespace vmlink {

// The three one-vertex reductions: G\v, G*v\v, G/v.
enum class ReductionKind : std::uint8_t { vertex_delete = 0, lc_delete = 1, pivot_delete = 2 };

inline constexpr ReductionKind kAllReductions[] = {
    ReductionKind::vertex_delete, ReductionKind::lc_delete, ReductionKind::pivot_delete};

const char* reduction_name(ReductionKind kind);

// Simple undirected graph on vertex ids 0..id_limit-1 (at most 64), stored
// as symmetric adjacency bit-rows. Deleting a vertex never renumbers: the
// remaining vertices keep their ids, so vertex sets stay valid across
// reductions. All operations return fresh graphs.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int id_limit);  // id_limit isolated vertices
  static Graph from_edges(int id_limit, std::initializer_list<std::pair<int, int>> edges);

  int id_limit() const { return n_; }
  VertexSet vertices() const { return VertexSet(verts_); }
  int vertex_count() const { return vertices().size(); }
  bool has_vertex(int v) const { return vertices().contains(v); }
  bool has_edge(int u, int v) const;
  VertexSet neighbors(int v) const;
  int degree(int v) const { return neighbors(v).size(); }
  int edge_count() const;
  void add_edge(int u, int v);

  // Toggle adjacency within N(v); everything else unchanged.
  Graph local_complement(int v) const;
  // G*u*v*u; defined only when uv is an edge.
  Graph pivot(int u, int v) const;
  Graph without_vertex(int v) const;
  // The canonical neighbor used by pivot_delete is the lowest-id neighbor;
  // an isolated v reduces to plain deletion for all three kinds.
  Graph reduce(int v, ReductionKind kind) const;

  // Semantic equality: same active ids, same adjacency.
  friend bool operator==(const Graph& a, const Graph& b);
  // Byte encoding usable as a hash key; equal iff graphs are equal.
  std::string packed_bytes() const;
  // Throws std::logic_error if symmetry or loop-freeness is broken.
  void check_invariants() const;

 private:
  int n_ = 0;
  std::uint64_t verts_ = 0;
  std::vector<std::uint64_t> adj_;

  void require_vertex(int v) const;
};

// Orbit of g under local complementations (BFS, memoized on packed_bytes).
// nullopt when the orbit grows past node_budget distinct graphs.
std::optional<std::vector<Graph>> local_orbit(const Graph& g, std::size_t node_budget);

// True/false when decided within budget; nullopt when the orbit search
// exceeded node_budget before h was found or the orbit closed.
std::optional<bool> locally_equivalent(const Graph& g, const Graph& h,
                                       std::size_t node_budget = 2'000'000);

}  // namespace vmlink
