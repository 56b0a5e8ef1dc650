#include "vmlink/graph.hpp"

#include <deque>
#include <stdexcept>
#include <unordered_set>

namespace vmlink {

const char* reduction_name(ReductionKind kind) {
  switch (kind) {
    case ReductionKind::vertex_delete: return "delete";
    case ReductionKind::lc_delete: return "lc-delete";
    case ReductionKind::pivot_delete: return "pivot-delete";
  }
  return "?";
}

Graph::Graph(int id_limit) : n_(id_limit) {
  if (id_limit < 0 || id_limit > 64)
    throw std::invalid_argument("Graph: id_limit must be in 0..64, got " +
                                std::to_string(id_limit));
  verts_ = VertexSet::range(id_limit).bits();
  adj_.assign(static_cast<std::size_t>(id_limit), 0);
}

Graph Graph::from_edges(int id_limit, std::initializer_list<std::pair<int, int>> edges) {
  Graph g(id_limit);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

void Graph::require_vertex(int v) const {
  if (v < 0 || v >= n_ || ((verts_ >> v) & 1) == 0)
    throw std::invalid_argument("Graph: no vertex with id " + std::to_string(v));
}

bool Graph::has_edge(int u, int v) const {
  require_vertex(u);
  require_vertex(v);
  return (adj_[static_cast<std::size_t>(u)] >> v) & 1;
}

VertexSet Graph::neighbors(int v) const {
  require_vertex(v);
  return VertexSet(adj_[static_cast<std::size_t>(v)]);
}

int Graph::edge_count() const {
  int twice = 0;
  for (int v : vertices()) twice += VertexSet(adj_[static_cast<std::size_t>(v)]).size();
  return twice / 2;
}

void Graph::add_edge(int u, int v) {
  require_vertex(u);
  require_vertex(v);
  if (u == v) throw std::invalid_argument("Graph: loops are not allowed");
  adj_[static_cast<std::size_t>(u)] |= std::uint64_t{1} << v;
  adj_[static_cast<std::size_t>(v)] |= std::uint64_t{1} << u;
}

Graph Graph::local_complement(int v) const {
  require_vertex(v);
  Graph out = *this;
  const std::uint64_t nbhd = adj_[static_cast<std::size_t>(v)];
  for (int u : VertexSet(nbhd))
    out.adj_[static_cast<std::size_t>(u)] ^= nbhd & ~(std::uint64_t{1} << u);
  return out;
}

Graph Graph::pivot(int u, int v) const {
  if (!has_edge(u, v))
    throw std::invalid_argument("Graph: pivot requires an edge, and " + std::to_string(u) +
                                "-" + std::to_string(v) + " is not one");
  return local_complement(u).local_complement(v).local_complement(u);
}

Graph Graph::without_vertex(int v) const {
  require_vertex(v);
  Graph out = *this;
  const std::uint64_t keep = ~(std::uint64_t{1} << v);
  out.verts_ &= keep;
  out.adj_[static_cast<std::size_t>(v)] = 0;
  for (auto& row : out.adj_) row &= keep;
  return out;
}

Graph Graph::reduce(int v, ReductionKind kind) const {
  require_vertex(v);
  switch (kind) {
    case ReductionKind::vertex_delete:
      return without_vertex(v);
    case ReductionKind::lc_delete:
      return local_complement(v).without_vertex(v);
    case ReductionKind::pivot_delete: {
      const VertexSet nbhd = neighbors(v);
      if (nbhd.empty()) return without_vertex(v);
      return pivot(v, nbhd.lowest()).without_vertex(v);
    }
  }
  throw std::invalid_argument("Graph: unknown reduction kind");
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.verts_ != b.verts_) return false;
  for (int v : a.vertices())
    if (a.adj_[static_cast<std::size_t>(v)] != b.adj_[static_cast<std::size_t>(v)]) return false;
  return true;
}

std::string Graph::packed_bytes() const {
  std::string out;
  out.reserve(8 + static_cast<std::size_t>(vertex_count()) * 8);
  auto put64 = [&out](std::uint64_t w) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((w >> (8 * i)) & 0xff));
  };
  put64(verts_);
  for (int v : vertices()) put64(adj_[static_cast<std::size_t>(v)]);
  return out;
}

void Graph::check_invariants() const {
  for (int v : vertices()) {
    const std::uint64_t row = adj_[static_cast<std::size_t>(v)];
    if ((row >> v) & 1) throw std::logic_error("Graph invariant: loop at " + std::to_string(v));
    if (row & ~verts_)
      throw std::logic_error("Graph invariant: edge to deleted vertex from " + std::to_string(v));
    for (int u : VertexSet(row))
      if (((adj_[static_cast<std::size_t>(u)] >> v) & 1) == 0)
        throw std::logic_error("Graph invariant: asymmetric edge " + std::to_string(v) + "-" +
                               std::to_string(u));
  }
}

namespace {

// BFS over the local-complementation orbit. Visits each distinct graph once;
// only complementations at vertices of degree >= 2 change the graph, so the
// branching stays small. Returns true when `target` is reached; nullopt when
// the number of distinct graphs seen exceeds the budget first.
std::optional<bool> orbit_bfs(const Graph& start, const Graph* target, std::size_t node_budget,
                              std::vector<Graph>* collect) {
  std::unordered_set<std::string> seen;
  std::deque<Graph> queue;
  seen.insert(start.packed_bytes());
  queue.push_back(start);
  if (target != nullptr && start == *target) return true;
  if (collect != nullptr) collect->push_back(start);
  while (!queue.empty()) {
    Graph g = std::move(queue.front());
    queue.pop_front();
    for (int v : g.vertices()) {
      if (g.degree(v) < 2) continue;
      Graph next = g.local_complement(v);
      if (!seen.insert(next.packed_bytes()).second) continue;
      if (seen.size() > node_budget) return std::nullopt;
      if (target != nullptr && next == *target) return true;
      if (collect != nullptr) collect->push_back(next);
      queue.push_back(std::move(next));
    }
  }
  return false;
}

}  // namespace

std::optional<std::vector<Graph>> local_orbit(const Graph& g, std::size_t node_budget) {
  std::vector<Graph> orbit;
  if (!orbit_bfs(g, nullptr, node_budget, &orbit).has_value()) return std::nullopt;
  return orbit;
}

std::optional<bool> locally_equivalent(const Graph& g, const Graph& h, std::size_t node_budget) {
  if (g.vertices() != h.vertices())
    throw std::invalid_argument("locally_equivalent: graphs have different vertex sets");
  return orbit_bfs(g, &h, node_budget, nullptr);
}

}  // namespace vmlink
