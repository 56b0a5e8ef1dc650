#include "vmlink/violation.hpp"

#include <json.hpp>

#include "vmlink/graph6.hpp"

namespace vmlink {

std::string ViolationReport::to_json_line() const {
  nlohmann::json j{
      {"type", "violation"},
      {"operation", operation},
      {"instance", instance},
      {"masks", {{"q", q.to_hex()}, {"r", r.to_hex()}, {"s", s.to_hex()}, {"t", t.to_hex()}}},
      {"expected", expected},
      {"observed", observed},
      {"graph_index", graph_index},
  };
  if (!labels.empty()) j["labels"] = labels;
  return j.dump();
}

ViolationReport make_report(const std::string& operation, const Graph& g, VertexSet q,
                            VertexSet r, VertexSet s, VertexSet t, std::string expected,
                            std::string observed) {
  ViolationReport rep;
  rep.operation = operation;
  rep.q = q;
  rep.r = r;
  rep.s = s;
  rep.t = t;
  rep.expected = std::move(expected);
  rep.observed = std::move(observed);
  if (g.vertices() == VertexSet::range(g.vertex_count())) {
    rep.instance = to_graph6(g);
  } else {
    // Compact the surviving ids to 0..n-1 and remember the original labels.
    const auto ids = g.vertices().ids();
    Graph compact(static_cast<int>(ids.size()));
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = i + 1; j < ids.size(); ++j)
        if (g.has_edge(ids[i], ids[j])) compact.add_edge(static_cast<int>(i), static_cast<int>(j));
    rep.instance = to_graph6(compact);
    rep.labels = g.vertices().to_ids();
  }
  return rep;
}

}  // namespace vmlink
