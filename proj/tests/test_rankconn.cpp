#include <doctest.h>

#include <stdexcept>

#include "vmlink/harness.hpp"
#include "vmlink/rankconn.hpp"

using namespace vmlink;

namespace {

Graph cycle5() { return Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}); }

Graph complete(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

}  // namespace

TEST_SUITE_BEGIN("rankconn");

TEST_CASE("half integers stay exact") {
  CHECK(HalfInt::whole(2) + HalfInt::half() == HalfInt{5});
  CHECK(HalfInt{5} - HalfInt::half() == HalfInt::whole(2));
  CHECK(HalfInt{3} > HalfInt{2});
  CHECK(HalfInt::whole(1).str() == "1");
  CHECK((HalfInt::whole(1) + HalfInt::half()).str() == "3/2");
  CHECK(!HalfInt::half().is_whole());
}

TEST_CASE("cut rank basics") {
  const Graph c5 = cycle5();
  CHECK(cut_rank(c5, VertexSet{}) == 0);
  CHECK(cut_rank(c5, c5.vertices()) == 0);
  CHECK(cut_rank(c5, VertexSet::of({0, 1})) == 2);
  for (int n = 2; n <= 5; ++n) {
    const Graph kn = complete(n);
    for (int v = 0; v < n; ++v) CHECK(cut_rank(kn, VertexSet::single(v)) == 1);
    if (n > 2) CHECK(cut_rank(kn, VertexSet::of({0, 1})) == 1);
  }
  CHECK_THROWS_AS((void)cut_rank(c5, VertexSet::of({7})), std::invalid_argument);
}

TEST_CASE("cut rank is symmetric under complement") {
  for (int n = 1; n <= 5; ++n) {
    GraphEnumerator en(n);
    while (auto g = en.next()) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        const VertexSet x(mask);
        CHECK(cut_rank(*g, x) == cut_rank(*g, g->vertices() - x));
      }
    }
  }
}

TEST_CASE("kappa on hand-checked instances") {
  const Graph c5 = cycle5();
  const KappaResult both_empty = kappa(c5, VertexSet{}, VertexSet{});
  CHECK(both_empty.value == 0);
  CHECK(both_empty.witness == VertexSet{});

  const KappaResult res = kappa(c5, VertexSet::of({0}), VertexSet::of({2}));
  CHECK(res.value == 1);
  CHECK(res.witness == VertexSet::of({0}));  // rho({0}) = 1 and the mask is minimal

  // two components, terminals split across them
  const Graph split = Graph::from_edges(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}});
  CHECK(kappa(split, VertexSet::of({0}), VertexSet::of({5})).value == 0);

  CHECK_THROWS_AS((void)kappa(c5, VertexSet::of({0, 1}), VertexSet::of({1})),
                  std::invalid_argument);
}

TEST_CASE("brute force oracle on its own contract") {
  const Graph c5 = cycle5();
  CHECK(kappa_bruteforce(c5, VertexSet::of({0}), VertexSet::of({2})).value == 1);

  // s = V - t leaves a single admissible set
  const VertexSet s = VertexSet::of({0, 1, 2});
  const VertexSet t = c5.vertices() - s;
  const KappaResult res = kappa_bruteforce(c5, s, t);
  CHECK(res.value == cut_rank(c5, s));
  CHECK(res.witness == s);
}

TEST_CASE("pruned search matches the oracle") {
  Rng rng(41);
  for (int it = 0; it < 600; ++it) {
    const int n = 2 + rng.below_int(9);  // up to 10
    const Graph g = random_graph(n, 0.15 + 0.1 * rng.below_int(7), rng);
    VertexSet s, t;
    for (int v = 0; v < n; ++v) {
      switch (rng.below(3)) {
        case 1: s = s.with(v); break;
        case 2: t = t.with(v); break;
        default: break;
      }
    }
    const KappaResult fast = kappa(g, s, t);
    const KappaResult slow = kappa_bruteforce(g, s, t);
    CHECK(fast.value == slow.value);
    CHECK(fast.witness == slow.witness);
    CHECK(cut_rank(g, fast.witness) == fast.value);
    CHECK(s.subset_of(fast.witness));
    CHECK(fast.witness.disjoint(t));
  }
}

TEST_CASE("local connectivity") {
  const Graph c5 = cycle5();
  CHECK(local_conn(c5, VertexSet::of({0}), VertexSet::of({2})) == HalfInt::whole(0));
  CHECK(local_conn(c5, VertexSet{}, VertexSet::of({1, 2})) == HalfInt::whole(0));
  // normalization: lconn[S, V-S] = rho(S)
  for (std::uint64_t mask = 0; mask < 32; ++mask) {
    const VertexSet s(mask);
    CHECK(local_conn(c5, s, c5.vertices() - s) == HalfInt::whole(cut_rank(c5, s)));
  }
}

TEST_CASE("separating set predicate is literal") {
  const Graph c5 = cycle5();
  const VertexSet s = VertexSet::of({0});
  const VertexSet t = VertexSet::of({2});
  CHECK(is_separating(c5, s, t, s, 1));                     // rho({0}) = 1
  CHECK(!is_separating(c5, s, t, VertexSet::of({1}), 1));   // does not contain S
  // rho({0,4}) = 2, worked by elimination: rows {1},{3} against {1,2,3}
  CHECK(cut_rank(c5, VertexSet::of({0, 4})) == 2);
  CHECK(!is_separating(c5, s, t, VertexSet::of({0, 4}), 1));
  CHECK(is_separating(c5, s, t, VertexSet::of({0, 4}), 2));
  CHECK(!is_separating(c5, s, t, VertexSet::of({0, 2}), 1));  // hits T
}

TEST_CASE("terminal shrinking") {
  const Graph c5 = cycle5();
  CHECK(shrink_terminals(c5, VertexSet{}, VertexSet{}) ==
        std::pair{VertexSet{}, VertexSet{}});
  CHECK(shrink_terminals(c5, VertexSet::of({0}), VertexSet::of({2})) ==
        std::pair{VertexSet::of({0}), VertexSet::of({2})});

  Rng rng(42);
  for (int it = 0; it < 300; ++it) {
    const int n = 2 + rng.below_int(9);
    const Graph g = random_graph(n, 0.3 + 0.1 * rng.below_int(5), rng);
    VertexSet s, t;
    for (int v = 0; v < n; ++v) {
      switch (rng.below(3)) {
        case 1: s = s.with(v); break;
        case 2: t = t.with(v); break;
        default: break;
      }
    }
    const auto [s1, t1] = shrink_terminals(g, s, t);
    const int k = kappa_bruteforce(g, s, t).value;
    CHECK(s1.subset_of(s));
    CHECK(t1.subset_of(t));
    CHECK(s1.size() == k);
    CHECK(t1.size() == k);
    CHECK(kappa_bruteforce(g, s1, t1).value == k);
  }
}

TEST_CASE("cut rank submodularity and deletion bounds, small exhaustive") {
  for (int n = 1; n <= 4; ++n) {
    GraphEnumerator en(n);
    while (auto g = en.next()) {
      const std::uint64_t full = std::uint64_t{1} << n;
      for (std::uint64_t xm = 0; xm < full; ++xm)
        for (std::uint64_t ym = 0; ym < full; ++ym) {
          const VertexSet x(xm), y(ym);
          CHECK(cut_rank(*g, x) + cut_rank(*g, y) >=
                cut_rank(*g, x & y) + cut_rank(*g, x | y));
        }
      for (int v = 0; v < n; ++v) {
        const Graph del = g->without_vertex(v);
        for (std::uint64_t xm = 0; xm < full; ++xm) {
          if ((xm >> v) & 1) continue;
          const VertexSet x(xm);
          const int base = cut_rank(del, x);
          CHECK(base <= cut_rank(*g, x));
          CHECK(cut_rank(*g, x) <= base + 1);
          CHECK(base <= cut_rank(*g, x.with(v)));
          CHECK(cut_rank(*g, x.with(v)) <= base + 1);
        }
      }
    }
  }
}

TEST_SUITE_END();
