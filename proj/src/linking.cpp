#include "vmlink/linking.hpp"

#include <array>
#include <bit>
#include <stdexcept>

namespace vmlink {

std::vector<ReductionKind> OptionSet::kinds() const {
  std::vector<ReductionKind> out;
  for (ReductionKind k : kAllReductions)
    if (contains(k)) out.push_back(k);
  return out;
}

std::string OptionSet::names() const {
  std::string out;
  for (ReductionKind k : kinds()) {
    if (!out.empty()) out.push_back('+');
    out += reduction_name(k);
  }
  return out.empty() ? "-" : out;
}

LinkingInstance LinkingInstance::make(Graph g, VertexSet q, VertexSet r, VertexSet s,
                                      VertexSet t) {
  if (q.intersects(r))
    throw std::invalid_argument("LinkingInstance: Q and R overlap: " + (q & r).to_ids());
  if (s.intersects(t))
    throw std::invalid_argument("LinkingInstance: S and T overlap: " + (s & t).to_ids());
  for (auto [set, name] : {std::pair{q, "Q"}, {r, "R"}, {s, "S"}, {t, "T"}}) {
    if (!set.subset_of(g.vertices()))
      throw std::invalid_argument(std::string("LinkingInstance: ") + name +
                                  " contains non-vertices: " + (set - g.vertices()).to_ids());
  }
  LinkingInstance inst;
  inst.k = kappa_value(g, q, r);
  inst.ell = kappa_value(g, s, t);
  inst.free = g.vertices() - q - r - s - t;
  inst.g = std::move(g);
  inst.q = q;
  inst.r = r;
  inst.s = s;
  inst.t = t;
  return inst;
}

namespace {

void require_free_vertex(const Graph& g, VertexSet used, int v, const char* what) {
  if (!g.has_vertex(v) || used.contains(v))
    throw std::invalid_argument(std::string(what) + ": vertex " + std::to_string(v) +
                                " is not free");
}

// Options at v computed against one or two target pairs at once.
OptionSet options_at(const Graph& g, int v, VertexSet q, VertexSet r, int k,
                     const VertexSet* s, const VertexSet* t, int ell) {
  OptionSet out;
  for (ReductionKind kind : kAllReductions) {
    const Graph reduced = g.reduce(v, kind);
    if (kappa_value(reduced, q, r) != k) continue;
    if (s != nullptr && kappa_value(reduced, *s, *t) != ell) continue;
    out.add(kind);
  }
  return out;
}

}  // namespace

bool is_flexible(const Graph& g, VertexSet s, VertexSet t, int v) {
  if (s.intersects(t)) throw std::invalid_argument("is_flexible: S and T overlap");
  require_free_vertex(g, s | t, v, "is_flexible");
  const int k = kappa_value(g, s, t);
  return options_at(g, v, s, t, k, nullptr, nullptr, 0).size() == 3;
}

OptionSet oum_linking_options(const Graph& g, VertexSet q, VertexSet r, int v) {
  if (q.intersects(r)) throw std::invalid_argument("oum_linking_options: Q and R overlap");
  require_free_vertex(g, q | r, v, "oum_linking_options");
  const int k = kappa_value(g, q, r);
  const OptionSet out = options_at(g, v, q, r, k, nullptr, nullptr, 0);
  if (out.size() < 2) {
    throw theorem_violation(make_report(
        "oum_linking_options", g, q, r, VertexSet{}, VertexSet{},
        "at least two reductions at v=" + std::to_string(v) + " preserve kappa(Q,R)=" +
            std::to_string(k),
        "options " + out.names()));
  }
  return out;
}

OptionSet joint_good_options(const LinkingInstance& inst, int v) {
  if (!inst.free.contains(v))
    throw std::invalid_argument("joint_good_options: vertex " + std::to_string(v) +
                                " is not free");
  const OptionSet out = options_at(inst.g, v, inst.q, inst.r, inst.k, &inst.s, &inst.t, inst.ell);
  if (out.empty()) {
    throw theorem_violation(make_report(
        "joint_good_options", inst.g, inst.q, inst.r, inst.s, inst.t,
        "some reduction at v=" + std::to_string(v) + " preserves kappa(Q,R)=" +
            std::to_string(inst.k) + " and kappa(S,T)=" + std::to_string(inst.ell),
        "no option"));
  }
  return out;
}

OptionSet pivot_only_options(const LinkingInstance& inst, int v) {
  return joint_good_options(inst, v) & OptionSet::deletion_and_pivot();
}

Graph reduce_preserving(const LinkingInstance& inst, VertexSet drop) {
  if (!drop.subset_of(inst.free))
    throw std::invalid_argument("reduce_preserving: drop set " + drop.to_ids() +
                                " leaves the free set");
  LinkingInstance cur = inst;
  for (int v : drop) {
    const OptionSet options = joint_good_options(cur, v);
    const ReductionKind kind = options.kinds().front();
    Graph next = cur.g.reduce(v, kind);
    cur = LinkingInstance::make(std::move(next), cur.q, cur.r, cur.s, cur.t);
    if (cur.k != inst.k || cur.ell != inst.ell) {
      throw theorem_violation(make_report(
          "reduce_preserving", inst.g, inst.q, inst.r, inst.s, inst.t,
          "connectivities stay (" + std::to_string(inst.k) + "," + std::to_string(inst.ell) +
              ") through every step",
          "(" + std::to_string(cur.k) + "," + std::to_string(cur.ell) + ") after " +
              reduction_name(kind) + " at " + std::to_string(v)));
    }
  }
  return cur.g;
}

namespace {

// Minimum-size (s,t)-separating set of order k containing `u`; candidates
// scanned in (size, bitmask) lexicographic order. nullopt when none exists.
std::optional<VertexSet> min_separating_with(const Graph& g, VertexSet s, VertexSet t, int k,
                                             int u) {
  const VertexSet base = s.with(u);
  const std::uint64_t pool = (g.vertices() - base - t).bits();
  const int pool_size = std::popcount(pool);
  // Spread the chosen submask of `pool` back onto vertex ids.
  std::array<int, 64> pool_ids{};
  {
    int i = 0;
    for (int v : VertexSet(pool)) pool_ids[static_cast<std::size_t>(i++)] = v;
  }
  for (int extra = 0; extra <= pool_size; ++extra) {
    // All `extra`-subsets of the pool, in increasing bitmask order of the
    // spread set (Gosper's hack preserves it: pool spreading is monotone).
    std::uint64_t comb = (std::uint64_t{1} << extra) - 1;
    const std::uint64_t limit = std::uint64_t{1} << pool_size;
    while (extra == 0 ? comb == 0 : comb < limit) {
      VertexSet x = base;
      std::uint64_t rest = comb;
      while (rest != 0) {
        const int bit = std::countr_zero(rest);
        x = x.with(pool_ids[static_cast<std::size_t>(bit)]);
        rest &= rest - 1;
      }
      if (cut_rank(g, x) == k) return x;
      if (extra == 0) break;
      const std::uint64_t low = comb & (~comb + 1);
      const std::uint64_t carry = comb + low;
      comb = carry | (((comb ^ carry) >> 2) / low);
    }
  }
  return std::nullopt;
}

struct ChainStep {
  int vertex;
  VertexSet set;
};

// One step of the chain construction: over all u in f, the minimum-size
// order-k separating set containing u; ties broken by (size, mask, u).
ChainStep chain_first_step(const Graph& g, VertexSet s, VertexSet t, int k, VertexSet f) {
  std::optional<ChainStep> best;
  for (int u : f) {
    const auto set = min_separating_with(g, s, t, k, u);
    if (!set.has_value()) {
      throw theorem_violation(make_report(
          "separating_chain", g, s, t, VertexSet{}, VertexSet{},
          "an (S,T)-separating set of order k=" + std::to_string(k) + " containing vertex " +
              std::to_string(u) + " exists (u is not flexible)",
          "none found"));
    }
    const bool better =
        !best.has_value() || set->size() < best->set.size() ||
        (set->size() == best->set.size() && set->bits() < best->set.bits());
    if (better) best = ChainStep{u, *set};
  }
  return *best;
}

}  // namespace

SeparatingChain separating_chain(const Graph& g, VertexSet s, VertexSet t, VertexSet f) {
  if (s.intersects(t)) throw std::invalid_argument("separating_chain: S and T overlap");
  if (f.intersects(s | t) || !f.subset_of(g.vertices()))
    throw std::invalid_argument("separating_chain: F must consist of free vertices");
  for (int v : f) {
    if (is_flexible(g, s, t, v))
      throw std::invalid_argument("separating_chain: vertex " + std::to_string(v) +
                                  " is (S,T)-flexible");
  }
  const int k = kappa_value(g, s, t);
  SeparatingChain chain;
  VertexSet cur = s;
  VertexSet remaining = f;
  while (!remaining.empty()) {
    const ChainStep step = chain_first_step(g, cur, t, k, remaining);
    chain.order.push_back(step.vertex);
    chain.sets.push_back(step.set);
    cur = step.set;
    remaining = remaining.without(step.vertex);
  }
  return chain;
}

std::uint64_t doubly_good_bound(int k, int ell) {
  const std::uint64_t factor = 2 * static_cast<std::uint64_t>(ell) + 1;
  if (2 * k >= 56) return ~std::uint64_t{0};  // far above any 64-vertex free set
  return factor << (2 * k);
}

std::optional<DoublyGoodVertex> find_doubly_good_vertex(const LinkingInstance& inst) {
  for (int v : inst.free) {
    const OptionSet options = joint_good_options(inst, v);
    if (options.size() >= 2) return DoublyGoodVertex{v, options};
  }
  if (static_cast<std::uint64_t>(inst.free.size()) >= doubly_good_bound(inst.k, inst.ell)) {
    throw theorem_violation(make_report(
        "find_doubly_good_vertex", inst.g, inst.q, inst.r, inst.s, inst.t,
        "a vertex with two joint options exists when |F|=" + std::to_string(inst.free.size()) +
            " >= (2l+1)*4^k = " + std::to_string(doubly_good_bound(inst.k, inst.ell)),
        "none in F"));
  }
  return std::nullopt;
}

NestingOutcome nesting_step(const Graph& g, VertexSet q, VertexSet r, VertexSet s, VertexSet t) {
  if (q.intersects(r) || s.intersects(t))
    throw std::invalid_argument("nesting_step: terminal pairs must be disjoint");
  if (!(s | t).subset_of(q | r))
    throw std::invalid_argument("nesting_step: S u T must lie inside Q u R");
  const VertexSet f = g.vertices() - q - r;
  if (f.empty()) throw std::invalid_argument("nesting_step: F is empty");
  const int k = kappa_value(g, q, r);
  if (cut_rank(g, q) != k || cut_rank(g, r) != k)
    throw std::invalid_argument("nesting_step: rho(Q) and rho(R) must both equal kappa(Q,R)");
  for (int v : f) {
    if (is_flexible(g, q, r, v) || is_flexible(g, s, t, v))
      throw std::invalid_argument("nesting_step: free vertex " + std::to_string(v) +
                                  " is flexible");
  }

  // Outcome (1): a free vertex whose joint option set has two members.
  const LinkingInstance inst = LinkingInstance::make(g, q, r, s, t);
  for (int v : f) {
    const OptionSet options = joint_good_options(inst, v);
    if (options.size() >= 2) return DoublyGoodVertex{v, options};
  }

  // Outcome (2). The (Q,R)-chain orders all of F; since V = Q u R u F, its
  // sets are exactly Q + {f_1..f_i}. The first step of the (S,T)-chain gives
  // the pivot vertex whose position decides which side of the chain extends.
  const SeparatingChain chain = separating_chain(g, q, r, f);
  const int pivot_vertex = chain_first_step(g, s, t, inst.ell, f).vertex;
  const int n = static_cast<int>(chain.order.size());
  int idx = 0;  // 1-based position of pivot_vertex in the chain order
  for (int i = 0; i < n; ++i) {
    if (chain.order[static_cast<std::size_t>(i)] == pivot_vertex) { idx = i + 1; break; }
  }
  if (idx == 0) throw std::logic_error("nesting_step: chain does not cover the pivot vertex");
  if (idx <= n / 2) {
    return PairExtension{chain.sets[static_cast<std::size_t>(idx - 1)], r};
  }
  const VertexSet a_prev = idx >= 2 ? chain.sets[static_cast<std::size_t>(idx - 2)] : q;
  return PairExtension{q, g.vertices() - a_prev};
}

}  // namespace vmlink
