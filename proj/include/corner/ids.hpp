#pragma once

#include <cctype>
#include <set>
#include <string>

#include "corner/error.hpp"

namespace corner {

// Identifiers are nonempty ASCII [A-Za-z0-9_]+, case-sensitive. The prefix
// "_g" is reserved for machine-generated names.
inline bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

inline bool is_generated_name(const std::string& s) {
  return s.size() > 2 && s[0] == '_' && s[1] == 'g';
}

inline void require_user_identifier(const std::string& s, const char* what) {
  if (!is_identifier(s)) fail(Errc::ParseError, std::string(what) + " '" + s + "' is not a valid identifier");
  if (is_generated_name(s)) fail(Errc::ParseError, std::string(what) + " '" + s + "' uses the reserved _g prefix");
}

// Picks names _g0, _g1, ... skipping anything in `avoid`. Deterministic for a
// fixed avoid set, which keeps rewrite traces reproducible.
class FreshNames {
 public:
  explicit FreshNames(std::set<std::string> avoid = {}) : avoid_(std::move(avoid)) {}

  void also_avoid(const std::string& name) { avoid_.insert(name); }

  std::string next() {
    for (;;) {
      std::string candidate = "_g" + std::to_string(counter_++);
      if (avoid_.find(candidate) == avoid_.end()) return candidate;
    }
  }

 private:
  std::set<std::string> avoid_;
  unsigned long counter_ = 0;
};

}  // namespace corner
