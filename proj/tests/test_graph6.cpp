#include <doctest.h>

#include <stdexcept>

#include "vmlink/graph6.hpp"
#include "vmlink/harness.hpp"

using namespace vmlink;

TEST_SUITE_BEGIN("graph6");

TEST_CASE("known encodings") {
  Graph k4(4);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) k4.add_edge(i, j);
  CHECK(to_graph6(k4) == "C~");
  CHECK(from_graph6("C~") == k4);

  CHECK(to_graph6(Graph(0)) == "?");
  CHECK(to_graph6(Graph(1)) == "@");
  CHECK(from_graph6("@").vertex_count() == 1);

  const Graph p3 = Graph::from_edges(3, {{0, 1}, {1, 2}});
  CHECK(from_graph6(to_graph6(p3)) == p3);
}

TEST_CASE("decode rejects malformed input") {
  CHECK_THROWS_AS((void)from_graph6(""), std::invalid_argument);
  CHECK_THROWS_AS((void)from_graph6("C"), std::invalid_argument);       // truncated
  CHECK_THROWS_AS((void)from_graph6("C~~"), std::invalid_argument);     // trailing bytes
  CHECK_THROWS_AS((void)from_graph6("C\x1f\x1f"), std::invalid_argument);
  CHECK_THROWS_AS((void)from_graph6("~~?????"), std::invalid_argument); // > 64 vertices
}

TEST_CASE("decode tolerates header and trailing newline") {
  const Graph p3 = Graph::from_edges(3, {{0, 1}, {1, 2}});
  const std::string enc = to_graph6(p3);
  CHECK(from_graph6(">>graph6<<" + enc) == p3);
  CHECK(from_graph6(enc + "\n") == p3);
}

TEST_CASE("encode rejects graphs with holes") {
  const Graph holey = Graph(3).without_vertex(1);
  CHECK_THROWS_AS((void)to_graph6(holey), std::invalid_argument);
}

TEST_CASE("round trip over all graphs with up to 5 vertices") {
  for (int n = 0; n <= 5; ++n) {
    GraphEnumerator en(n);
    while (auto g = en.next()) CHECK(from_graph6(to_graph6(*g)) == *g);
  }
}

TEST_CASE("round trip on random graphs up to 64 vertices") {
  Rng rng(31);
  for (int it = 0; it < 300; ++it) {
    const int n = 1 + rng.below_int(64);  // exercises the long size form at 63, 64
    const Graph g = random_graph(n, 0.1 + 0.8 * (it % 5) / 4.0, rng);
    CHECK(from_graph6(to_graph6(g)) == g);
  }
}

TEST_SUITE_END();
