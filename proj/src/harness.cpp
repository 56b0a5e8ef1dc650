#include "vmlink/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "vmlink/graph6.hpp"
#include "vmlink/rankconn.hpp"

namespace vmlink {

// ---------------------------------------------------------------------------
// Graph generation

namespace {

// Pair slot index in colex order (the graph6 bit order): (0,1),(0,2),(1,2),...
constexpr int pair_slot(int i, int j) { return j * (j - 1) / 2 + i; }  // pre: i < j

}  // namespace

GraphEnumerator::GraphEnumerator(int n) : n_(n) {
  if (n < 0 || n > 9)
    throw std::invalid_argument("GraphEnumerator: exhaustive enumeration needs n <= 9");
  total_ = std::uint64_t{1} << (n * (n - 1) / 2);
}

Graph GraphEnumerator::at(std::uint64_t index) const {
  Graph g(n_);
  for (int j = 1; j < n_; ++j)
    for (int i = 0; i < j; ++i)
      if ((index >> pair_slot(i, j)) & 1) g.add_edge(i, j);
  return g;
}

std::optional<Graph> GraphEnumerator::next() {
  if (cursor_ >= total_) return std::nullopt;
  return at(cursor_++);
}

Graph random_graph(int n, double edge_prob, Rng& rng) {
  Graph g(n);
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if (rng.chance(edge_prob)) g.add_edge(i, j);
  return g;
}

// ---------------------------------------------------------------------------
// Orbit lookup tables
//
// Local-equivalence heavy properties compare reduced graphs over and over;
// the same small graphs recur across the whole sweep. For each vertex-id
// subset we build one direct-indexed table mapping every graph on those ids
// (as an edge bitmask) to the minimum edge mask of its orbit, so equivalence
// checks become two array reads.

namespace {

class OrbitTables {
 public:
  bool equivalent(const Graph& a, const Graph& b) {
    if (a.vertices() != b.vertices())
      throw std::invalid_argument("OrbitTables: graphs on different vertex sets");
    const Table& table = get(a.vertices());
    return table.rep[edge_mask(a, table)] == table.rep[edge_mask(b, table)];
  }

 private:
  struct Table {
    std::vector<int> ids;
    std::vector<std::int32_t> rep;
  };

  std::map<std::uint64_t, Table> tables_;
  std::shared_mutex mutex_;

  static std::uint32_t edge_mask(const Graph& g, const Table& table) {
    const int m = static_cast<int>(table.ids.size());
    std::uint32_t mask = 0;
    for (int j = 1; j < m; ++j)
      for (int i = 0; i < j; ++i)
        if (g.has_edge(table.ids[static_cast<std::size_t>(i)],
                       table.ids[static_cast<std::size_t>(j)]))
          mask |= std::uint32_t{1} << pair_slot(i, j);
    return mask;
  }

  const Table& get(VertexSet verts) {
    {
      std::shared_lock lock(mutex_);
      auto it = tables_.find(verts.bits());
      if (it != tables_.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    auto [it, inserted] = tables_.try_emplace(verts.bits());
    if (inserted) build(verts, it->second);
    return it->second;
  }

  static void build(VertexSet verts, Table& table) {
    const int m = verts.size();
    if (m > 7)
      throw std::invalid_argument("OrbitTables: equivalence tables are limited to 7 vertices");
    table.ids = verts.ids();
    const int slots = m * (m - 1) / 2;
    table.rep.assign(std::size_t{1} << slots, -1);

    std::vector<std::uint32_t> component;
    for (std::uint32_t start = 0; start < table.rep.size(); ++start) {
      if (table.rep[start] != -1) continue;
      component.clear();
      component.push_back(start);
      table.rep[start] = -2;
      std::uint32_t least = start;
      for (std::size_t head = 0; head < component.size(); ++head) {
        const std::uint32_t cur = component[head];
        std::uint8_t rows[8] = {};
        for (int j = 1; j < m; ++j)
          for (int i = 0; i < j; ++i)
            if ((cur >> pair_slot(i, j)) & 1) {
              rows[i] |= std::uint8_t(1u << j);
              rows[j] |= std::uint8_t(1u << i);
            }
        for (int p = 0; p < m; ++p) {
          const std::uint8_t nbhd = rows[p];
          if (std::popcount(static_cast<unsigned>(nbhd)) < 2) continue;
          std::uint8_t next_rows[8];
          std::copy(std::begin(rows), std::end(rows), std::begin(next_rows));
          for (int u = 0; u < m; ++u)
            if ((nbhd >> u) & 1) next_rows[u] ^= nbhd & ~std::uint8_t(1u << u);
          std::uint32_t next = 0;
          for (int j = 1; j < m; ++j)
            for (int i = 0; i < j; ++i)
              if ((next_rows[j] >> i) & 1) next |= std::uint32_t{1} << pair_slot(i, j);
          if (table.rep[next] == -1) {
            table.rep[next] = -2;
            component.push_back(next);
            least = std::min(least, next);
          }
        }
      }
      for (std::uint32_t c : component) table.rep[c] = static_cast<std::int32_t>(least);
    }
  }
};

// ---------------------------------------------------------------------------
// Property checks

struct CheckContext {
  const Graph& g;
  std::uint64_t graph_index;
  Rng rng;
  std::uint64_t tuple_cap;
  OrbitTables* orbits;

  std::uint64_t checked = 0;
  std::uint64_t seq = 0;
  std::vector<ViolationReport>* sink;

  void fail(const std::string& op, VertexSet q, VertexSet r, VertexSet s, VertexSet t,
            std::string expected, std::string observed) {
    ViolationReport rep = make_report(op, g, q, r, s, t, std::move(expected), std::move(observed));
    rep.graph_index = graph_index;
    rep.seq = seq++;
    sink->push_back(std::move(rep));
  }
  void fail(ViolationReport rep) {
    rep.graph_index = graph_index;
    rep.seq = seq++;
    sink->push_back(std::move(rep));
  }
};

// Every active vertex gets a digit in 0..cats-1. Full enumeration when the
// space fits under the cap, otherwise cap seeded samples.
template <class Fn>
void for_each_assignment(CheckContext& ctx, int cats, std::uint64_t cap, Fn&& fn) {
  const auto ids = ctx.g.vertices().ids();
  const int m = static_cast<int>(ids.size());
  std::array<std::uint8_t, 64> digits{};

  bool fits = true;
  std::uint64_t space = 1;
  for (int i = 0; i < m; ++i) {
    if (space > cap / static_cast<std::uint64_t>(cats)) { fits = false; break; }
    space *= static_cast<std::uint64_t>(cats);
  }

  if (fits && space <= cap) {
    while (true) {
      fn(digits, ids);
      int i = 0;
      while (i < m && ++digits[static_cast<std::size_t>(i)] == cats) {
        digits[static_cast<std::size_t>(i)] = 0;
        ++i;
      }
      if (i == m) break;
    }
  } else {
    for (std::uint64_t it = 0; it < cap; ++it) {
      for (int i = 0; i < m; ++i)
        digits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(ctx.rng.below_int(cats));
      fn(digits, ids);
    }
  }
}

VertexSet digits_to_set(const std::array<std::uint8_t, 64>& digits, const std::vector<int>& ids,
                        int value) {
  VertexSet out;
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (digits[i] == value) out = out.with(ids[i]);
  return out;
}

std::string ineq(int lhs, int rhs) {
  return std::to_string(lhs) + " vs " + std::to_string(rhs);
}

// --- rank calculus lemmas ---------------------------------------------------

void prop_subeq(CheckContext& ctx) {
  for_each_assignment(ctx, 4, ctx.tuple_cap, [&](const auto& digits, const auto& ids) {
    VertexSet x = digits_to_set(digits, ids, 1) | digits_to_set(digits, ids, 3);
    VertexSet y = digits_to_set(digits, ids, 2) | digits_to_set(digits, ids, 3);
    ++ctx.checked;
    const int lhs = cut_rank(ctx.g, x) + cut_rank(ctx.g, y);
    const int rhs = cut_rank(ctx.g, x & y) + cut_rank(ctx.g, x | y);
    if (lhs < rhs)
      ctx.fail("subeq", x, y, {}, {}, "rho(X)+rho(Y) >= rho(XnY)+rho(XuY)", ineq(lhs, rhs));
  });
}

void prop_local_invariance(CheckContext& ctx) {
  std::vector<Graph> images;
  std::vector<std::string> names;
  for (int v : ctx.g.vertices()) {
    if (ctx.g.degree(v) < 2) continue;  // smaller complements change nothing
    images.push_back(ctx.g.local_complement(v));
    names.push_back("*" + std::to_string(v));
  }
  for (int u : ctx.g.vertices())
    for (int v : ctx.g.neighbors(u))
      if (u < v) {
        images.push_back(ctx.g.pivot(u, v));
        names.push_back("^" + std::to_string(u) + "," + std::to_string(v));
      }
  if (images.empty()) return;
  const std::uint64_t per_op = std::max<std::uint64_t>(1, ctx.tuple_cap / images.size());
  for (std::size_t op = 0; op < images.size(); ++op) {
    for_each_assignment(ctx, 2, per_op, [&](const auto& digits, const auto& ids) {
      VertexSet x = digits_to_set(digits, ids, 1);
      ++ctx.checked;
      const int before = cut_rank(ctx.g, x);
      const int after = cut_rank(images[op], x);
      if (before != after)
        ctx.fail("local-invariance", x, {}, {}, {},
                 "rho invariant under " + names[op], ineq(before, after));
    });
  }
}

void prop_delrank(CheckContext& ctx) {
  const int m = ctx.g.vertex_count();
  if (m == 0) return;
  const std::uint64_t per_v = std::max<std::uint64_t>(1, ctx.tuple_cap / m);
  for (int v : ctx.g.vertices()) {
    const Graph del = ctx.g.without_vertex(v);
    for_each_assignment(ctx, 2, per_v, [&](const auto& digits, const auto& ids) {
      VertexSet x = digits_to_set(digits, ids, 1).without(v);
      ++ctx.checked;
      const int base = cut_rank(del, x);
      const int whole = cut_rank(ctx.g, x);
      const int with_v = cut_rank(ctx.g, x.with(v));
      if (!(base + 1 >= whole && whole >= base))
        ctx.fail("delrank", x, {}, {}, {},
                 "rho_del(X) <= rho(X) <= rho_del(X)+1 at v=" + std::to_string(v),
                 ineq(whole, base));
      if (!(base + 1 >= with_v && with_v >= base))
        ctx.fail("delrank", x, {}, {}, {},
                 "rho_del(X) <= rho(X+v) <= rho_del(X)+1 at v=" + std::to_string(v),
                 ineq(with_v, base));
    });
  }
}

void prop_subtool(CheckContext& ctx) {
  const int m = ctx.g.vertex_count();
  if (m == 0) return;
  const std::uint64_t per_v = std::max<std::uint64_t>(1, ctx.tuple_cap / m);
  for (int v : ctx.g.vertices()) {
    const Graph del = ctx.g.without_vertex(v);
    for_each_assignment(ctx, 4, per_v, [&](const auto& digits, const auto& ids) {
      VertexSet x = (digits_to_set(digits, ids, 1) | digits_to_set(digits, ids, 3)).without(v);
      VertexSet y = (digits_to_set(digits, ids, 2) | digits_to_set(digits, ids, 3)).without(v);
      ++ctx.checked;
      const int s1_lhs = cut_rank(del, x) + cut_rank(ctx.g, y.with(v));
      const int s1_rhs = cut_rank(del, x & y) + cut_rank(ctx.g, (x | y).with(v));
      if (s1_lhs < s1_rhs)
        ctx.fail("subtool", x, y, {}, {}, "(S1) at v=" + std::to_string(v), ineq(s1_lhs, s1_rhs));
      const int s2_lhs = cut_rank(del, x) + cut_rank(ctx.g, y);
      const int s2_rhs = cut_rank(ctx.g, x & y) + cut_rank(del, x | y);
      if (s2_lhs < s2_rhs)
        ctx.fail("subtool", x, y, {}, {}, "(S2) at v=" + std::to_string(v), ineq(s2_lhs, s2_rhs));
    });
  }
}

void prop_conn_monotone(CheckContext& ctx) {
  for_each_assignment(ctx, 4, ctx.tuple_cap, [&](const auto& digits, const auto& ids) {
    // 1: in X1 (and X2), 2: in X2 only, 3: in Y
    VertexSet x1 = digits_to_set(digits, ids, 1);
    VertexSet x2 = x1 | digits_to_set(digits, ids, 2);
    VertexSet y = digits_to_set(digits, ids, 3);
    ++ctx.checked;
    const HalfInt small = local_conn(ctx.g, x1, y);
    const HalfInt large = local_conn(ctx.g, x2, y);
    if (small > large)
      ctx.fail("conn", x1, x2, y, {}, "lconn[X1,Y] <= lconn[X2,Y] for X1 in X2",
               small.str() + " vs " + large.str());
  });
}

void prop_kmonotone(CheckContext& ctx) {
  std::vector<std::pair<int, ReductionKind>> steps;
  for (int v : ctx.g.vertices())
    for (ReductionKind kind : kAllReductions) steps.emplace_back(v, kind);
  if (steps.empty()) return;
  const std::uint64_t per_step = std::max<std::uint64_t>(1, ctx.tuple_cap / steps.size());
  for (auto [v, kind] : steps) {
    const Graph reduced = ctx.g.reduce(v, kind);
    for_each_assignment(ctx, 3, per_step, [&](const auto& digits, const auto& ids) {
      VertexSet s = digits_to_set(digits, ids, 1).without(v);
      VertexSet t = digits_to_set(digits, ids, 2).without(v);
      ++ctx.checked;
      const int before = kappa_value(ctx.g, s, t);
      const int after = kappa_value(reduced, s, t);
      if (after > before)
        ctx.fail("kmonotone", s, t, {}, {},
                 std::string("kappa non-increasing under ") + reduction_name(kind) + " at " +
                     std::to_string(v),
                 ineq(after, before));
    });
  }
}

void prop_subconn(CheckContext& ctx) {
  for_each_assignment(ctx, 9, ctx.tuple_cap, [&](const auto& digits, const auto& ids) {
    VertexSet x1, x2, y1, y2;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const int xrole = digits[i] % 3;
      const int yrole = digits[i] / 3;
      if (xrole == 1) x1 = x1.with(ids[i]);
      if (xrole == 2) x2 = x2.with(ids[i]);
      if (yrole == 1) y1 = y1.with(ids[i]);
      if (yrole == 2) y2 = y2.with(ids[i]);
    }
    ++ctx.checked;
    const int lhs = kappa_bruteforce(ctx.g, x1, x2).value + kappa_bruteforce(ctx.g, y1, y2).value;
    const int rhs = kappa_bruteforce(ctx.g, x1 & y1, x2 | y2).value +
                    kappa_bruteforce(ctx.g, x1 | y1, x2 & y2).value;
    if (lhs < rhs)
      ctx.fail("subconn", x1, x2, y1, y2,
               "kappa(X1,X2)+kappa(Y1,Y2) >= kappa(X1nY1,X2uY2)+kappa(X1uY1,X2nY2)",
               ineq(lhs, rhs));
  });
}

void prop_capcup(CheckContext& ctx) {
  for_each_assignment(ctx, 3, std::max<std::uint64_t>(1, ctx.tuple_cap / 16),
                      [&](const auto& digits, const auto& ids) {
    VertexSet s = digits_to_set(digits, ids, 1);
    VertexSet t = digits_to_set(digits, ids, 2);
    const int k = kappa_value(ctx.g, s, t);
    // Every minimizing separating set, by exhaustion over admissible X.
    std::vector<VertexSet> minimizers;
    const std::uint64_t pool = (ctx.g.vertices() - s - t).bits();
    std::uint64_t w = 0;
    do {
      const VertexSet x = s | VertexSet(w);
      if (cut_rank(ctx.g, x) == k) minimizers.push_back(x);
      w = (w - pool) & pool;
    } while (w != 0);
    const std::uint64_t pairs =
        static_cast<std::uint64_t>(minimizers.size()) * minimizers.size();
    auto check_pair = [&](VertexSet a, VertexSet b) {
      ++ctx.checked;
      if (!is_separating(ctx.g, s, t, a & b, k) || !is_separating(ctx.g, s, t, a | b, k))
        ctx.fail("capcup", s, t, a, b,
                 "A n B and A u B are (S,T)-separating of order k=" + std::to_string(k),
                 "rho(AnB)=" + std::to_string(cut_rank(ctx.g, a & b)) +
                     ", rho(AuB)=" + std::to_string(cut_rank(ctx.g, a | b)));
    };
    if (pairs <= 64) {
      for (VertexSet a : minimizers)
        for (VertexSet b : minimizers) check_pair(a, b);
    } else {
      for (int it = 0; it < 64; ++it)
        check_pair(minimizers[ctx.rng.below(minimizers.size())],
                   minimizers[ctx.rng.below(minimizers.size())]);
    }
  });
}

void prop_qset(CheckContext& ctx) {
  for_each_assignment(ctx, 3, ctx.tuple_cap, [&](const auto& digits, const auto& ids) {
    VertexSet q = digits_to_set(digits, ids, 1);
    VertexSet r = digits_to_set(digits, ids, 2);
    const int k = kappa_value(ctx.g, q, r);
    if (cut_rank(ctx.g, q) != k) return;
    for (int v : ctx.g.vertices() - q - r) {
      const Graph del = ctx.g.without_vertex(v);
      if (kappa_value(del, q, r) >= k) continue;
      ++ctx.checked;
      const int rho_q = cut_rank(ctx.g, q);
      const int rho_qv = cut_rank(ctx.g, q.with(v));
      if (rho_qv < rho_q)
        ctx.fail("qset", q, r, {}, {}, "(Q1) rho(Q+v) >= rho(Q) at v=" + std::to_string(v),
                 ineq(rho_qv, rho_q));
      if (cut_rank(del, q) == rho_q && rho_qv != rho_q + 1)
        ctx.fail("qset", q, r, {}, {},
                 "(Q2) rho(Q+v) = rho(Q)+1 when deletion keeps rho(Q), v=" + std::to_string(v),
                 ineq(rho_qv, rho_q + 1));
    }
  });
}

void prop_nonflex(CheckContext& ctx) {
  for_each_assignment(ctx, 4, ctx.tuple_cap, [&](const auto& digits, const auto& ids) {
    // 1: in U (hence in S), 2: in S - U, 3: in T
    VertexSet u = digits_to_set(digits, ids, 1);
    VertexSet s = u | digits_to_set(digits, ids, 2);
    VertexSet t = digits_to_set(digits, ids, 3);
    const int k = kappa_value(ctx.g, s, t);
    if (cut_rank(ctx.g, s) != k) return;
    for (int v : ctx.g.vertices() - s - t) {
      const Graph del = ctx.g.without_vertex(v);
      if (kappa_value(del, u, t) >= kappa_value(ctx.g, u, t)) continue;  // hypothesis
      ++ctx.checked;
      if (kappa_value(del, s, t) >= k)
        ctx.fail("nonflex", s, t, u, {},
                 "kappa(S,T) drops under deleting v=" + std::to_string(v) +
                     " once kappa(U,T) does",
                 "kappa stayed " + std::to_string(k));
    }
  });
}

void prop_kappa_oracle(CheckContext& ctx) {
  for_each_assignment(ctx, 3, ctx.tuple_cap, [&](const auto& digits, const auto& ids) {
    VertexSet s = digits_to_set(digits, ids, 1);
    VertexSet t = digits_to_set(digits, ids, 2);
    ++ctx.checked;
    const KappaResult fast = kappa(ctx.g, s, t);
    const KappaResult slow = kappa_bruteforce(ctx.g, s, t);
    if (fast.value != slow.value || fast.witness != slow.witness)
      ctx.fail("kappa-oracle-agreement", s, t, fast.witness, slow.witness,
               "pruned search matches enumeration",
               "value " + ineq(fast.value, slow.value) + ", witness " + fast.witness.to_hex() +
                   " vs " + slow.witness.to_hex());
  });
}

void prop_shrink_terminals(CheckContext& ctx) {
  for_each_assignment(ctx, 3, ctx.tuple_cap, [&](const auto& digits, const auto& ids) {
    VertexSet s = digits_to_set(digits, ids, 1);
    VertexSet t = digits_to_set(digits, ids, 2);
    ++ctx.checked;
    const auto [s1, t1] = shrink_terminals(ctx.g, s, t);
    const int k = kappa_bruteforce(ctx.g, s, t).value;
    const int k1 = kappa_bruteforce(ctx.g, s1, t1).value;
    if (!(s1.subset_of(s) && t1.subset_of(t) && s1.size() == k && t1.size() == k && k1 == k))
      ctx.fail("shrink-terminals", s, t, s1, t1,
               "|S1|=|T1|=kappa(S1,T1)=kappa(S,T)=" + std::to_string(k),
               "|S1|=" + std::to_string(s1.size()) + " |T1|=" + std::to_string(t1.size()) +
                   " kappa(S1,T1)=" + std::to_string(k1));
  });
}

// --- graph operation lemmas -------------------------------------------------

void prop_pivot_symmetry(CheckContext& ctx) {
  for (int u : ctx.g.vertices())
    for (int v : ctx.g.neighbors(u))
      if (u < v) {
        ++ctx.checked;
        if (!(ctx.g.pivot(u, v) == ctx.g.pivot(v, u)))
          ctx.fail("pivot-symmetry", VertexSet::of({u, v}), {}, {}, {},
                   "G^uv equals G^vu exactly", "graphs differ");
      }
}

void prop_gv_well_defined(CheckContext& ctx) {
  std::vector<std::array<int, 3>> tuples;
  for (int v : ctx.g.vertices()) {
    const VertexSet nbhd = ctx.g.neighbors(v);
    for (int x : nbhd)
      for (int y : nbhd)
        if (x < y) tuples.push_back({v, x, y});
  }
  const auto run_one = [&](const std::array<int, 3>& tup) {
    auto [v, x, y] = tup;
    ++ctx.checked;
    const Graph gx = ctx.g.pivot(v, x).without_vertex(v);
    const Graph gy = ctx.g.pivot(v, y).without_vertex(v);
    if (!ctx.orbits->equivalent(gx, gy))
      ctx.fail("gv-well-defined", VertexSet::single(v), VertexSet::of({x, y}), {}, {},
               "(G^vx)-v locally equivalent to (G^vy)-v", "orbits differ");
  };
  if (tuples.size() <= ctx.tuple_cap) {
    for (const auto& tup : tuples) run_one(tup);
  } else {
    for (std::uint64_t it = 0; it < ctx.tuple_cap; ++it)
      run_one(tuples[ctx.rng.below(tuples.size())]);
  }
}

void prop_perm(CheckContext& ctx) {
  // The one-vertex reductions of G*w match those of G up to local
  // equivalence, with the pairing depending on whether vw is an edge.
  const auto run_pair = [&](int w, int v) {
    ++ctx.checked;
    const Graph h = ctx.g.local_complement(w);
    const Graph g_del = ctx.g.reduce(v, ReductionKind::vertex_delete);
    const Graph g_lc = ctx.g.reduce(v, ReductionKind::lc_delete);
    const Graph g_piv = ctx.g.reduce(v, ReductionKind::pivot_delete);
    const Graph h_del = h.reduce(v, ReductionKind::vertex_delete);
    const Graph h_lc = h.reduce(v, ReductionKind::lc_delete);
    const Graph h_piv = h.reduce(v, ReductionKind::pivot_delete);
    const bool edge = ctx.g.has_edge(v, w);
    const Graph& exp_lc = edge ? g_piv : g_lc;
    const Graph& exp_piv = edge ? g_lc : g_piv;
    if (!ctx.orbits->equivalent(h_del, g_del) || !ctx.orbits->equivalent(h_lc, exp_lc) ||
        !ctx.orbits->equivalent(h_piv, exp_piv))
      ctx.fail("perm", VertexSet::single(w), VertexSet::single(v), {}, {},
               std::string("reduction triple of G*w matches G's up to local equivalence (") +
                   (edge ? "edge" : "non-edge") + " case)",
               "some pair not equivalent");
  };
  std::vector<std::pair<int, int>> tuples;
  for (int w : ctx.g.vertices())
    for (int v : ctx.g.vertices())
      if (v != w) tuples.emplace_back(w, v);
  if (tuples.size() <= ctx.tuple_cap) {
    for (auto [w, v] : tuples) run_pair(w, v);
  } else {
    for (std::uint64_t it = 0; it < ctx.tuple_cap; ++it) {
      auto [w, v] = tuples[ctx.rng.below(tuples.size())];
      run_pair(w, v);
    }
  }
}

// --- linking theorems -------------------------------------------------------

void prop_oum_two_options(CheckContext& ctx) {
  for_each_assignment(ctx, 3, ctx.tuple_cap, [&](const auto& digits, const auto& ids) {
    VertexSet q = digits_to_set(digits, ids, 1);
    VertexSet r = digits_to_set(digits, ids, 2);
    for (int v : ctx.g.vertices() - q - r) {
      ++ctx.checked;
      try {
        (void)oum_linking_options(ctx.g, q, r, v);
      } catch (const theorem_violation& tv) {
        ctx.fail(tv.report());
      }
    }
  });
}

template <class Fn>
void for_each_instance(CheckContext& ctx, std::uint64_t cap, Fn&& fn) {
  for_each_assignment(ctx, 9, cap, [&](const auto& digits, const auto& ids) {
    VertexSet q, r, s, t;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const int qr = digits[i] % 3;
      const int st = digits[i] / 3;
      if (qr == 1) q = q.with(ids[i]);
      if (qr == 2) r = r.with(ids[i]);
      if (st == 1) s = s.with(ids[i]);
      if (st == 2) t = t.with(ids[i]);
    }
    fn(LinkingInstance::make(ctx.g, q, r, s, t));
  });
}

void prop_joint_option_nonempty(CheckContext& ctx) {
  for_each_instance(ctx, ctx.tuple_cap, [&](const LinkingInstance& inst) {
    for (int v : inst.free) {
      ++ctx.checked;
      try {
        (void)joint_good_options(inst, v);
      } catch (const theorem_violation& tv) {
        ctx.fail(tv.report());
      }
    }
  });
}

void prop_pivot_only_nonempty(CheckContext& ctx) {
  for_each_instance(ctx, ctx.tuple_cap, [&](const LinkingInstance& inst) {
    try {
      const auto found = find_doubly_good_vertex(inst);
      if (!found.has_value()) return;
      ++ctx.checked;
      if (pivot_only_options(inst, found->v).empty())
        ctx.fail("pivot-only-nonempty", inst.q, inst.r, inst.s, inst.t,
                 "doubly-good vertex " + std::to_string(found->v) +
                     " keeps a delete or pivot-delete option",
                 "only lc-delete survives");
    } catch (const theorem_violation& tv) {
      ctx.fail(tv.report());
    }
  });
}

void prop_main_theorem(CheckContext& ctx, bool require_small_st) {
  for_each_instance(ctx, ctx.tuple_cap, [&](const LinkingInstance& inst) {
    if (static_cast<std::uint64_t>(inst.free.size()) < doubly_good_bound(inst.k, inst.ell))
      return;
    if (require_small_st && (inst.s.size() != inst.ell || inst.t.size() != inst.ell)) return;
    ++ctx.checked;
    try {
      const auto found = find_doubly_good_vertex(inst);
      if (!found.has_value())
        ctx.fail("main-theorem", inst.q, inst.r, inst.s, inst.t,
                 "doubly-good vertex above the bound", "search returned nothing");
    } catch (const theorem_violation& tv) {
      ctx.fail(tv.report());
    }
  });
}

void prop_main_assembly(CheckContext& ctx) {
  for_each_instance(ctx, ctx.tuple_cap, [&](const LinkingInstance& inst) {
    if (static_cast<std::uint64_t>(inst.free.size()) < doubly_good_bound(inst.k, inst.ell))
      return;
    ++ctx.checked;
    try {
      // Shrink the second pair, drop what became superfluous, search in the
      // reduced graph, then certify the vertex on the original instance.
      const auto [s1, t1] = shrink_terminals(ctx.g, inst.s, inst.t);
      const VertexSet drop = (inst.s | inst.t) - inst.q - inst.r - s1 - t1;
      const LinkingInstance shrunk = LinkingInstance::make(ctx.g, inst.q, inst.r, s1, t1);
      const Graph h = reduce_preserving(shrunk, drop);
      const auto found =
          find_doubly_good_vertex(LinkingInstance::make(h, inst.q, inst.r, s1, t1));
      if (!found.has_value()) {
        ctx.fail("main-assembly", inst.q, inst.r, inst.s, inst.t,
                 "doubly-good vertex in the reduced graph", "search returned nothing");
        return;
      }
      int good_kinds = 0;
      for (ReductionKind kind : kAllReductions) {
        const Graph reduced = ctx.g.reduce(found->v, kind);
        if (kappa_value(reduced, inst.q, inst.r) == inst.k &&
            kappa_value(reduced, inst.s, inst.t) == inst.ell)
          ++good_kinds;
      }
      if (good_kinds < 2)
        ctx.fail("main-assembly", inst.q, inst.r, inst.s, inst.t,
                 "vertex " + std::to_string(found->v) +
                     " found in the reduced graph is doubly good in the original",
                 std::to_string(good_kinds) + " good kinds");
    } catch (const theorem_violation& tv) {
      ctx.fail(tv.report());
    }
  });
}

void prop_chain_invariants(CheckContext& ctx) {
  for_each_assignment(ctx, 3, ctx.tuple_cap, [&](const auto& digits, const auto& ids) {
    VertexSet s = digits_to_set(digits, ids, 1);
    VertexSet t = digits_to_set(digits, ids, 2);
    VertexSet f;
    for (int v : ctx.g.vertices() - s - t)
      if (!is_flexible(ctx.g, s, t, v)) f = f.with(v);
    if (f.empty()) return;
    ++ctx.checked;
    const int k = kappa_value(ctx.g, s, t);
    SeparatingChain chain;
    try {
      chain = separating_chain(ctx.g, s, t, f);
    } catch (const theorem_violation& tv) {
      ctx.fail(tv.report());
      return;
    }
    if (chain.order.size() != static_cast<std::size_t>(f.size())) {
      ctx.fail("chain-invariants", s, t, f, {}, "chain orders all of F", "wrong length");
      return;
    }
    VertexSet prefix;
    for (std::size_t i = 0; i < chain.order.size(); ++i) {
      prefix = prefix.with(chain.order[i]);
      const VertexSet a = chain.sets[i];
      if (!is_separating(ctx.g, s, t, a, k))
        ctx.fail("chain-invariants", s, t, a, {},
                 "A_" + std::to_string(i + 1) + " separates at order k=" + std::to_string(k),
                 "rho=" + std::to_string(cut_rank(ctx.g, a)));
      if (i + 1 < chain.sets.size() && !a.subset_of(chain.sets[i + 1]))
        ctx.fail("chain-invariants", s, t, a, chain.sets[i + 1],
                 "A_" + std::to_string(i + 1) + " nested in A_" + std::to_string(i + 2),
                 "not nested");
      if ((a & f) != prefix)
        ctx.fail("chain-invariants", s, t, a, f,
                 "A_" + std::to_string(i + 1) + " meets F exactly in f_1..f_" +
                     std::to_string(i + 1),
                 "got " + (a & f).to_ids());
    }
  });
}

void prop_nesting_cert(CheckContext& ctx) {
  for_each_instance(ctx, ctx.tuple_cap, [&](const LinkingInstance& inst) {
    // Rebuild the tuple into nesting_step's shape: S u T inside Q u R.
    const VertexSet s = inst.s & (inst.q | inst.r);
    const VertexSet t = (inst.t & (inst.q | inst.r)) - s;
    const VertexSet f = inst.g.vertices() - inst.q - inst.r;
    if (f.empty()) return;
    const int k = kappa_value(inst.g, inst.q, inst.r);
    if (cut_rank(inst.g, inst.q) != k || cut_rank(inst.g, inst.r) != k) return;
    for (int v : f)
      if (is_flexible(inst.g, inst.q, inst.r, v) || is_flexible(inst.g, s, t, v)) return;

    NestingOutcome outcome{DoublyGoodVertex{}};
    try {
      outcome = nesting_step(inst.g, inst.q, inst.r, s, t);
    } catch (const theorem_violation& tv) {
      ctx.fail(tv.report());
      return;
    }
    const auto* ext = std::get_if<PairExtension>(&outcome);
    if (ext == nullptr) return;  // outcome (1) carries its own guarantee
    ++ctx.checked;
    const VertexSet qe = ext->q_ext;
    const VertexSet re = ext->r_ext;
    std::string bad;
    if (!(inst.q.subset_of(qe) && inst.r.subset_of(re) && qe.disjoint(re) &&
          cut_rank(inst.g, qe) == k && cut_rank(inst.g, re) == k))
      bad += "(i) ";
    if (local_conn(inst.g, qe, re) < local_conn(inst.g, inst.q, inst.r) + HalfInt::half())
      bad += "(ii) ";
    if ((inst.g.vertices() - qe - re).size() < f.size() / 2) bad += "(iii)";
    if (!bad.empty())
      ctx.fail("nesting-cert", inst.q, inst.r, qe, re,
               "extension satisfies (i) growth+rank, (ii) lconn +1/2, (iii) floor(|F|/2) left",
               "failed " + bad);
  });
}

void prop_reduce_preserving(CheckContext& ctx) {
  for_each_instance(ctx, ctx.tuple_cap, [&](const LinkingInstance& inst) {
    const VertexSet drop = inst.free & VertexSet(ctx.rng.next());
    ++ctx.checked;
    try {
      const Graph h = reduce_preserving(inst, drop);
      const int hk = kappa_bruteforce(h, inst.q, inst.r).value;
      const int hl = kappa_bruteforce(h, inst.s, inst.t).value;
      if (hk != inst.k || hl != inst.ell)
        ctx.fail("reduce-preserving", inst.q, inst.r, inst.s, inst.t,
                 "kappas (" + std::to_string(inst.k) + "," + std::to_string(inst.ell) +
                     ") preserved dropping " + drop.to_ids(),
                 "(" + std::to_string(hk) + "," + std::to_string(hl) + ")");
    } catch (const theorem_violation& tv) {
      ctx.fail(tv.report());
    }
  });
}

// --- registry ---------------------------------------------------------------

struct PropertyInfo {
  void (*fn)(CheckContext&);
  bool needs_orbits = false;
  int max_n = 64;
};

const std::map<std::string, PropertyInfo>& registry() {
  static const std::map<std::string, PropertyInfo> props = {
      {"subeq", {prop_subeq}},
      {"local-invariance", {prop_local_invariance}},
      {"delrank", {prop_delrank}},
      {"subtool", {prop_subtool}},
      {"conn", {prop_conn_monotone}},
      {"kmonotone", {prop_kmonotone}},
      {"subconn", {prop_subconn}},
      {"capcup", {prop_capcup}},
      {"qset", {prop_qset}},
      {"nonflex", {prop_nonflex}},
      {"kappa-oracle-agreement", {prop_kappa_oracle}},
      {"shrink-terminals", {prop_shrink_terminals}},
      {"pivot-symmetry", {prop_pivot_symmetry}},
      {"gv-well-defined", {prop_gv_well_defined, true, 8}},
      {"perm", {prop_perm, true, 8}},
      {"oum-two-options", {prop_oum_two_options}},
      {"joint-option-nonempty", {prop_joint_option_nonempty}},
      {"pivot-only-nonempty", {prop_pivot_only_nonempty}},
      {"main-theorem", {[](CheckContext& c) { prop_main_theorem(c, false); }}},
      {"st-small", {[](CheckContext& c) { prop_main_theorem(c, true); }}},
      {"main-assembly", {prop_main_assembly}},
      {"chain-invariants", {prop_chain_invariants}},
      {"nesting-cert", {prop_nesting_cert}},
      {"reduce-preserving", {prop_reduce_preserving}},
  };
  return props;
}

}  // namespace

std::vector<std::string> known_properties() {
  std::vector<std::string> out;
  for (const auto& [name, info] : registry()) out.push_back(name);
  return out;
}

// ---------------------------------------------------------------------------
// Sweep runner

std::string SweepSpec::generator_desc() const {
  if (const auto* e = std::get_if<Exhaustive>(&generator))
    return "exhaustive(n=" + std::to_string(e->n) + ")";
  if (const auto* r = std::get_if<Random>(&generator)) {
    std::string p = std::to_string(r->edge_prob);
    p.erase(p.find_last_not_of('0') + 1);
    if (!p.empty() && p.back() == '.') p.pop_back();
    return "random(n=" + std::to_string(r->n) + ",p=" + p + ",count=" + std::to_string(r->count) +
           ")";
  }
  return "file(" + std::get<FromFile>(generator).path + ")";
}

SweepReport run_sweep(const SweepSpec& spec) {
  const auto it = registry().find(spec.property);
  if (it == registry().end()) {
    std::string known;
    for (const auto& name : known_properties()) known += (known.empty() ? "" : ", ") + name;
    throw std::invalid_argument("run_sweep: unknown property '" + spec.property +
                                "'; known: " + known);
  }
  const PropertyInfo& info = it->second;

  std::vector<Graph> file_graphs;
  std::uint64_t count = 0;
  int graph_n = 0;
  if (const auto* e = std::get_if<SweepSpec::Exhaustive>(&spec.generator)) {
    count = GraphEnumerator(e->n).total();  // validates n <= 9
    graph_n = e->n;
  } else if (const auto* r = std::get_if<SweepSpec::Random>(&spec.generator)) {
    if (r->n < 0 || r->n > 64)
      throw std::invalid_argument("run_sweep: random generator needs n <= 64");
    count = r->count;
    graph_n = r->n;
  } else {
    const auto& path = std::get<SweepSpec::FromFile>(spec.generator).path;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("run_sweep: cannot open " + path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      file_graphs.push_back(from_graph6(line));
      graph_n = std::max(graph_n, file_graphs.back().id_limit());
    }
    count = file_graphs.size();
  }
  if (graph_n > info.max_n)
    throw std::invalid_argument("run_sweep: property '" + spec.property + "' is limited to n <= " +
                                std::to_string(info.max_n));

  const auto start_time = std::chrono::steady_clock::now();
  OrbitTables orbits;

  struct WorkerResult {
    std::uint64_t checked = 0;
    std::vector<ViolationReport> violations;
  };

  auto process = [&](std::uint64_t index, WorkerResult& result) {
    Graph g;
    Rng rng(Rng::mix(spec.seed, index));
    if (const auto* e = std::get_if<SweepSpec::Exhaustive>(&spec.generator)) {
      g = GraphEnumerator(e->n).at(index);
    } else if (const auto* r = std::get_if<SweepSpec::Random>(&spec.generator)) {
      g = random_graph(r->n, r->edge_prob, rng);
    } else {
      g = file_graphs[index];
    }
    CheckContext ctx{g, index, rng, spec.tuple_cap, info.needs_orbits ? &orbits : nullptr,
                     0, 0, &result.violations};
    info.fn(ctx);
    result.checked += ctx.checked;
  };

  const int threads = spec.threads == 0
                          ? static_cast<int>(std::thread::hardware_concurrency())
                          : spec.threads;
  std::vector<WorkerResult> results;
  if (threads <= 1 || count <= 1) {
    results.resize(1);
    for (std::uint64_t i = 0; i < count; ++i) process(i, results[0]);
  } else {
    results.resize(static_cast<std::size_t>(threads));
    std::atomic<std::uint64_t> cursor{0};
    const std::uint64_t chunk = std::max<std::uint64_t>(
        1, std::min<std::uint64_t>(1024, count / (static_cast<std::uint64_t>(threads) * 8) + 1));
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          while (true) {
            const std::uint64_t begin = cursor.fetch_add(chunk);
            if (begin >= count) return;
            const std::uint64_t end = std::min(count, begin + chunk);
            for (std::uint64_t i = begin; i < end; ++i)
              process(i, results[static_cast<std::size_t>(w)]);
          }
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          cursor.store(count);  // let the other workers drain
        }
      });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  SweepReport report;
  report.property = spec.property;
  report.generator_desc = spec.generator_desc();
  report.seed = spec.seed;
  report.tuple_cap = spec.tuple_cap;
  report.graphs = count;
  for (auto& res : results) {
    report.checked += res.checked;
    for (auto& v : res.violations) report.violations.push_back(std::move(v));
  }
  std::sort(report.violations.begin(), report.violations.end(),
            [](const ViolationReport& a, const ViolationReport& b) {
              return std::tie(a.graph_index, a.seq) < std::tie(b.graph_index, b.seq);
            });
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
  return report;
}

std::string SweepReport::body() const {
  std::string out;
  for (const auto& v : violations) {
    out += v.to_json_line();
    out += '\n';
  }
  const nlohmann::json summary{
      {"type", "summary"},       {"property", property}, {"generator", generator_desc},
      {"seed", seed},            {"tuple_cap", tuple_cap}, {"graphs", graphs},
      {"checked", checked},      {"violations", violations.size()},
  };
  out += summary.dump();
  out += '\n';
  return out;
}

// ---------------------------------------------------------------------------
// Instance sampling and tightness search

std::optional<LinkingInstance> sample_instance(Rng& rng, int k, int ell, int f_size,
                                               int max_tries) {
  if (k < 0 || ell < 0 || f_size < 0)
    throw std::invalid_argument("sample_instance: negative target");
  static constexpr double kProbs[] = {0.15, 0.25, 0.35, 0.5};
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    const auto side_size = [&](int target) {
      return target == 0 ? rng.below_int(3) : target + rng.below_int(2);
    };
    const int nq = side_size(k), nr = side_size(k), ns = side_size(ell), nt = side_size(ell);
    const int n = nq + nr + ns + nt + f_size;
    if (n > 64 || n == 0) continue;

    // Random placement of the four disjoint terminal blocks.
    std::array<int, 64> perm{};
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i)
      std::swap(perm[static_cast<std::size_t>(i)],
                perm[static_cast<std::size_t>(rng.below_int(i + 1))]);
    int pos = 0;
    const auto take = [&](int size) {
      VertexSet out;
      for (int i = 0; i < size; ++i) out = out.with(perm[static_cast<std::size_t>(pos++)]);
      return out;
    };
    const VertexSet q = take(nq), r = take(nr), s = take(ns), t = take(nt);

    // Planted disconnections make zero targets reachable; random sides for
    // everyone else keep the samples varied.
    const bool plant_qr = k == 0 && !q.empty() && !r.empty();
    const bool plant_st = ell == 0 && !s.empty() && !t.empty();
    std::array<std::uint8_t, 64> side_qr{}, side_st{};
    for (int v = 0; v < n; ++v) {
      side_qr[static_cast<std::size_t>(v)] =
          q.contains(v) ? 0 : r.contains(v) ? 1 : static_cast<std::uint8_t>(rng.below(2));
      side_st[static_cast<std::size_t>(v)] =
          s.contains(v) ? 0 : t.contains(v) ? 1 : static_cast<std::uint8_t>(rng.below(2));
    }
    const double p = kProbs[rng.below(4)];
    Graph g(n);
    for (int j = 1; j < n; ++j)
      for (int i = 0; i < j; ++i) {
        if (plant_qr && side_qr[static_cast<std::size_t>(i)] != side_qr[static_cast<std::size_t>(j)])
          continue;
        if (plant_st && side_st[static_cast<std::size_t>(i)] != side_st[static_cast<std::size_t>(j)])
          continue;
        if (rng.chance(p)) g.add_edge(i, j);
      }
    if (kappa_value(g, q, r) != k || kappa_value(g, s, t) != ell) continue;
    return LinkingInstance::make(std::move(g), q, r, s, t);
  }
  return std::nullopt;
}

TightnessReport tightness_search(const TightnessSpec& spec) {
  TightnessReport report;
  report.spec = spec;
  report.bound = doubly_good_bound(spec.k, spec.ell);
  Rng rng(Rng::mix(spec.seed, 0x7167));
  const std::uint64_t top = report.bound == 0 ? 0 : report.bound - 1;
  for (std::uint64_t f = 1; f <= top; ++f) {
    bool have_witness = false;
    for (std::uint64_t trial = 0; trial < spec.budget; ++trial) {
      const auto inst = sample_instance(rng, spec.k, spec.ell, static_cast<int>(f), 2000);
      if (!inst.has_value()) continue;
      ++report.instances_tested;
      const auto found = find_doubly_good_vertex(*inst);  // below bound: no throw
      if (found.has_value()) continue;
      ++report.failures;
      report.max_failing_f = std::max(report.max_failing_f, static_cast<int>(f));
      if (!have_witness) {
        have_witness = true;
        report.witnesses.push_back(TightnessWitness{static_cast<int>(f), to_graph6(inst->g),
                                                    inst->q, inst->r, inst->s, inst->t});
      }
    }
  }
  return report;
}

std::string TightnessReport::body() const {
  std::string out;
  for (const auto& w : witnesses) {
    const nlohmann::json j{
        {"type", "tightness-witness"},
        {"f", w.f_size},
        {"instance", w.instance},
        {"masks",
         {{"q", w.q.to_hex()}, {"r", w.r.to_hex()}, {"s", w.s.to_hex()}, {"t", w.t.to_hex()}}},
    };
    out += j.dump();
    out += '\n';
  }
  const nlohmann::json summary{
      {"type", "summary"},
      {"k", spec.k},
      {"l", spec.ell},
      {"bound", bound},
      {"budget", spec.budget},
      {"seed", spec.seed},
      {"instances_tested", instances_tested},
      {"failures", failures},
      {"max_failing_f", max_failing_f},
  };
  out += summary.dump();
  out += '\n';
  return out;
}

}  // namespace vmlink
