#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "vmlink/graph.hpp"
#include "vmlink/vertex_set.hpp"

namespace vmlink {

// Structured record of a failed theorem guarantee. A genuine instance would
// be a counterexample to the underlying theory, so everything needed to
// reproduce it is captured: the instance in graph6, the four terminal-set
// masks, and the expected/observed values. The same record type carries
// lemma-sweep violations in the harness.
struct ViolationReport {
  std::string operation;   // operation or property id
  std::string instance;    // graph6 of the instance graph
  std::string labels;      // original ids when the graph was compacted, else ""
  VertexSet q, r, s, t;
  std::string expected;
  std::string observed;

  // Merge bookkeeping for sweep reports; not part of the serialized record.
  std::uint64_t graph_index = 0;
  std::uint64_t seq = 0;

  std::string to_json_line() const;
};

// Encodes any graph for a report: graph6 directly when ids are contiguous,
// otherwise the compacted graph6 plus the original id list.
ViolationReport make_report(const std::string& operation, const Graph& g, VertexSet q,
                            VertexSet r, VertexSet s, VertexSet t, std::string expected,
                            std::string observed);

class theorem_violation : public std::runtime_error {
 public:
  explicit theorem_violation(ViolationReport report)
      : std::runtime_error("theorem guarantee failed in " + report.operation + ": expected " +
                           report.expected + ", observed " + report.observed),
        report_(std::move(report)) {}
  const ViolationReport& report() const { return report_; }

 private:
  ViolationReport report_;
};

}  // namespace vmlink
