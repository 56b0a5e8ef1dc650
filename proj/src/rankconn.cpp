#include "vmlink/rankconn.hpp"

#include <array>
#include <bit>
#include <stdexcept>

#include "vmlink/gf2.hpp"

namespace vmlink {

std::string HalfInt::str() const {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

namespace {

void require_subset_of_vertices(const Graph& g, VertexSet x, const char* what) {
  if (!x.subset_of(g.vertices()))
    throw std::invalid_argument(std::string(what) + ": set " + x.to_hex() +
                                " is not a subset of the vertex set " + g.vertices().to_hex());
}

void require_disjoint(VertexSet s, VertexSet t, const char* what) {
  if (s.intersects(t))
    throw std::invalid_argument(std::string(what) + ": sets " + s.to_hex() + " and " +
                                t.to_hex() + " overlap");
}

// Rank of the rows {adj(v) & cols : v in rows}. The inner loop of everything.
int masked_rank(const Graph& g, VertexSet rows, std::uint64_t cols) {
  std::array<std::uint64_t, 64> pivot{};
  int rank = 0;
  for (int v : rows) {
    std::uint64_t row = g.neighbors(v).bits() & cols;
    while (row != 0) {
      const int lead = 63 - std::countl_zero(row);
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

// Branch-and-bound kappa search. Free vertices are decided in ascending id
// order; at every node the rank of the already-fixed part of the cut matrix
// (rows = S + accepted, columns = T + rejected) is a lower bound for every
// completion, because that submatrix survives into each of them.
struct KappaSearch {
  const Graph& g;
  std::array<int, 64> free{};
  int free_count = 0;

  KappaSearch(const Graph& graph, VertexSet s, VertexSet t) : g(graph) {
    for (int v : graph.vertices() - s - t) free[static_cast<std::size_t>(free_count++)] = v;
  }

  int best;

  void minimize(int depth, VertexSet x, std::uint64_t rejected) {
    const int bound = masked_rank(g, x, rejected);
    if (bound >= best) return;
    if (depth == free_count) {
      best = bound;  // rejected == V - x here, so bound is exact
      return;
    }
    const int v = free[static_cast<std::size_t>(depth)];
    minimize(depth + 1, x, rejected | (std::uint64_t{1} << v));
    minimize(depth + 1, x.with(v), rejected);
  }

  // Does some admissible X reach rho(X) == target? (target is a known lower
  // bound for the restricted instance, so pruning on > target is exact.)
  bool reaches(int depth, VertexSet x, std::uint64_t rejected, int target) {
    const int bound = masked_rank(g, x, rejected);
    if (bound > target) return false;
    if (depth == free_count) return bound == target;
    const int v = free[static_cast<std::size_t>(depth)];
    return reaches(depth + 1, x, rejected | (std::uint64_t{1} << v), target) ||
           reaches(depth + 1, x.with(v), rejected, target);
  }

  int run(VertexSet s, VertexSet t) {
    best = masked_rank(g, s, (g.vertices() - s).bits());  // X = S is admissible
    minimize(0, s, t.bits());
    return best;
  }
};

void validate_terminals(const Graph& g, VertexSet s, VertexSet t, const char* what) {
  require_disjoint(s, t, what);
  require_subset_of_vertices(g, s, what);
  require_subset_of_vertices(g, t, what);
}

}  // namespace

int cut_rank(const Graph& g, VertexSet x) {
  require_subset_of_vertices(g, x, "cut_rank");
  return masked_rank(g, x, (g.vertices() - x).bits());
}

int kappa_value(const Graph& g, VertexSet s, VertexSet t) {
  validate_terminals(g, s, t, "kappa");
  return KappaSearch(g, s, t).run(s, t);
}

KappaResult kappa(const Graph& g, VertexSet s, VertexSet t) {
  validate_terminals(g, s, t, "kappa");
  KappaSearch search(g, s, t);
  const int k = search.run(s, t);

  // Lexicographic witness: walk the free vertices from the highest id down,
  // keeping a vertex out of X whenever the minimum survives that choice.
  VertexSet cur_s = s;
  VertexSet cur_t = t;
  for (int i = search.free_count - 1; i >= 0; --i) {
    const int v = search.free[static_cast<std::size_t>(i)];
    KappaSearch probe(g, cur_s, cur_t.with(v));
    if (probe.reaches(0, cur_s, cur_t.with(v).bits(), k)) {
      cur_t = cur_t.with(v);
    } else {
      cur_s = cur_s.with(v);
    }
  }
  return KappaResult{k, cur_s};
}

KappaResult kappa_bruteforce(const Graph& g, VertexSet s, VertexSet t) {
  validate_terminals(g, s, t, "kappa_bruteforce");
  const std::uint64_t free = (g.vertices() - s - t).bits();
  KappaResult out{64, VertexSet{}};
  std::uint64_t w = 0;
  // Submasks of `free` in increasing numeric order; OR-ing the disjoint S
  // preserves the order, so the first minimum seen has the smallest mask.
  do {
    const VertexSet x = s | VertexSet(w);
    const int r = masked_rank(g, x, (g.vertices() - x).bits());
    if (r < out.value) out = KappaResult{r, x};
    w = (w - free) & free;
  } while (w != 0);
  return out;
}

HalfInt local_conn(const Graph& g, VertexSet s, VertexSet t) {
  validate_terminals(g, s, t, "local_conn");
  return HalfInt{cut_rank(g, s) + cut_rank(g, t) - cut_rank(g, s | t)};
}

bool is_separating(const Graph& g, VertexSet s, VertexSet t, VertexSet x, int k) {
  validate_terminals(g, s, t, "is_separating");
  if (!s.subset_of(x) || x.intersects(t) || !x.subset_of(g.vertices())) return false;
  return cut_rank(g, x) == k;
}

std::pair<VertexSet, VertexSet> shrink_terminals(const Graph& g, VertexSet s, VertexSet t) {
  validate_terminals(g, s, t, "shrink_terminals");
  const int target = kappa_value(g, s, t);

  VertexSet s1;
  for (int v : s) {
    if (s1.size() == target) break;
    if (kappa_value(g, s1.with(v), t) == s1.size() + 1) s1 = s1.with(v);
  }
  VertexSet t1;
  for (int v : t) {
    if (t1.size() == target) break;
    if (kappa_value(g, t1.with(v), s1) == t1.size() + 1) t1 = t1.with(v);
  }
  return {s1, t1};
}

}  // namespace vmlink
