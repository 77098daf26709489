#pragma once

#include <string>
#include <vector>

#include "corner/signature.hpp"

namespace corner {

enum class Polarity { Send, Receive };  // A° / A•

struct ProtoItem {
  Sort sort;
  Polarity pol;
  friend bool operator==(const ProtoItem& a, const ProtoItem& b) {
    return a.sort == b.sort && a.pol == b.pol;
  }
  friend bool operator!=(const ProtoItem& a, const ProtoItem& b) { return !(a == b); }
};

// An exchange: a finite sequence of polarised sorts. Concatenation is the
// monoid operation, the empty protocol is the unit.
using Protocol = std::vector<ProtoItem>;

inline ProtoItem send(Sort s) { return ProtoItem{std::move(s), Polarity::Send}; }
inline ProtoItem receive(Sort s) { return ProtoItem{std::move(s), Polarity::Receive}; }

inline Protocol concat(Protocol a, const Protocol& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline Protocol tail(const Protocol& p) { return Protocol(p.begin() + 1, p.end()); }

// A° prints as A!, A• as A?, the empty protocol as [].
inline std::string print_proto_item(const ProtoItem& it) {
  return it.sort + (it.pol == Polarity::Send ? "!" : "?");
}

inline std::string print_protocol(const Protocol& p) {
  std::string out = "[";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) out += " ";
    out += print_proto_item(p[i]);
  }
  out += "]";
  return out;
}

inline std::string print_sorts(const std::vector<Sort>& sorts) {
  std::string out = "[";
  for (size_t i = 0; i < sorts.size(); ++i) {
    if (i) out += ",";
    out += sorts[i];
  }
  out += "]";
  return out;
}

}  // namespace corner
