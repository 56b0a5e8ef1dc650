#pragma once

#include <string>

#include "vmlink/graph.hpp"

namespace vmlink {

// McKay's graph6 format. Encoding requires a graph whose active ids are
// exactly 0..n-1 (no deletions); decode always yields such a graph.
// Supports n <= 64 (the long size form covers 63 and 64).
std::string to_graph6(const Graph& g);
Graph from_graph6(const std::string& text);

}  // namespace vmlink
