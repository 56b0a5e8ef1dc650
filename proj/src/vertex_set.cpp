#include "vmlink/vertex_set.hpp"

namespace vmlink {

std::string VertexSet::to_hex() const {
  static const char digits[] = "0123456789abcdef";
  std::string body;
  std::uint64_t rest = bits_;
  do {
    body.push_back(digits[rest & 0xf]);
    rest >>= 4;
  } while (rest != 0);
  std::string out = "0x";
  out.append(body.rbegin(), body.rend());
  return out;
}

std::string VertexSet::to_ids() const {
  if (empty()) return "-";
  std::string out;
  for (int v : *this) {
    if (!out.empty()) out.push_back(',');
    out += std::to_string(v);
  }
  return out;
}

}  // namespace vmlink
