#include "vmlink/graph6.hpp"

#include <stdexcept>

namespace vmlink {

namespace {
constexpr int kBias = 63;    // printable offset: value v is stored as v+63
constexpr int kLongMark = 126;  // '~' introduces the 18-bit size form
}  // namespace

std::string to_graph6(const Graph& g) {
  const int n = g.vertex_count();
  if (g.vertices() != VertexSet::range(n))
    throw std::invalid_argument("to_graph6: vertex ids must be contiguous 0..n-1");
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + kBias));
  } else {
    out.push_back(static_cast<char>(kLongMark));
    out.push_back(static_cast<char>(((n >> 12) & 0x3f) + kBias));
    out.push_back(static_cast<char>(((n >> 6) & 0x3f) + kBias));
    out.push_back(static_cast<char>((n & 0x3f) + kBias));
  }
  // Upper triangle in column order: (0,1), (0,2), (1,2), (0,3), ...
  int group = 0;
  int used = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      group = (group << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++used == 6) {
        out.push_back(static_cast<char>(group + kBias));
        group = 0;
        used = 0;
      }
    }
  }
  if (used > 0) out.push_back(static_cast<char>((group << (6 - used)) + kBias));
  return out;
}

Graph from_graph6(const std::string& text) {
  std::string s = text;
  if (s.rfind(">>graph6<<", 0) == 0) s.erase(0, 10);
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
  if (s.empty()) throw std::invalid_argument("from_graph6: empty string");

  std::size_t pos = 0;
  auto next_value = [&]() -> int {
    if (pos >= s.size()) throw std::invalid_argument("from_graph6: truncated input");
    const unsigned char c = static_cast<unsigned char>(s[pos++]);
    if (c < kBias || c > kLongMark)
      throw std::invalid_argument("from_graph6: byte out of range at position " +
                                  std::to_string(pos - 1));
    return c - kBias;
  };

  int n;
  if (static_cast<unsigned char>(s[0]) == kLongMark) {
    ++pos;
    if (pos < s.size() && static_cast<unsigned char>(s[pos]) == kLongMark)
      throw std::invalid_argument("from_graph6: graphs over 64 vertices are not supported");
    n = (next_value() << 12) | (next_value() << 6) | next_value();
  } else {
    n = next_value();
  }
  if (n > 64) throw std::invalid_argument("from_graph6: graphs over 64 vertices are not supported");

  Graph g(n);
  int group = 0;
  int left = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      if (left == 0) {
        group = next_value();
        left = 6;
      }
      if ((group >> (left - 1)) & 1) g.add_edge(i, j);
      --left;
    }
  }
  if (pos != s.size()) throw std::invalid_argument("from_graph6: trailing bytes after graph data");
  return g;
}

}  // namespace vmlink
