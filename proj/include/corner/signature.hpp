#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "corner/error.hpp"
#include "corner/ids.hpp"

namespace corner {

using Sort = std::string;

struct OpSymbol {
  std::string name;
  std::vector<Sort> arity;  // may be empty (constants)
  Sort result;
};

// A multi-sorted signature. Value terms over it present the parameter
// multicategory as the free multicategory on the signature, so equality of
// values is syntactic.
class Signature {
 public:
  void add_sort(const std::string& name) {
    require_user_identifier(name, "sort");
    if (has_sort(name)) fail(Errc::ParseError, "duplicate sort " + name);
    sorts_.push_back(name);
  }

  void add_op(OpSymbol op) {
    require_user_identifier(op.name, "op");
    if (ops_.count(op.name)) fail(Errc::ParseError, "duplicate op " + op.name);
    for (const Sort& s : op.arity) require_sort(s);
    require_sort(op.result);
    op_order_.push_back(op.name);
    ops_.emplace(op.name, std::move(op));
  }

  bool has_sort(const Sort& s) const {
    return std::find(sorts_.begin(), sorts_.end(), s) != sorts_.end();
  }

  void require_sort(const Sort& s) const {
    if (!has_sort(s)) fail(Errc::UnknownSort, s);
  }

  const OpSymbol* find_op(const std::string& name) const {
    auto it = ops_.find(name);
    return it == ops_.end() ? nullptr : &it->second;
  }

  const OpSymbol& op(const std::string& name) const {
    const OpSymbol* o = find_op(name);
    if (!o) fail(Errc::UnknownOp, name);
    return *o;
  }

  const std::vector<Sort>& sorts() const { return sorts_; }
  const std::vector<std::string>& op_names() const { return op_order_; }

 private:
  std::vector<Sort> sorts_;
  std::vector<std::string> op_order_;
  std::map<std::string, OpSymbol> ops_;
};

// Morphisms of the parameter multicategory: trees of operation symbols over
// variables.
struct ValueTerm {
  bool is_var = true;
  std::string head;             // variable name or op name
  std::vector<ValueTerm> args;  // empty for variables

  static ValueTerm var(std::string name) { return ValueTerm{true, std::move(name), {}}; }
  static ValueTerm app(std::string op, std::vector<ValueTerm> args) {
    return ValueTerm{false, std::move(op), std::move(args)};
  }

  friend bool operator==(const ValueTerm& a, const ValueTerm& b) {
    return a.is_var == b.is_var && a.head == b.head && a.args == b.args;
  }
  friend bool operator!=(const ValueTerm& a, const ValueTerm& b) { return !(a == b); }
};

struct CtxEntry {
  std::string name;
  Sort sort;
  friend bool operator==(const CtxEntry& a, const CtxEntry& b) {
    return a.name == b.name && a.sort == b.sort;
  }
};

using ValueContext = std::vector<CtxEntry>;

inline void require_wellformed_context(const ValueContext& ctx, const Signature& sig) {
  for (size_t i = 0; i < ctx.size(); ++i) {
    sig.require_sort(ctx[i].sort);
    for (size_t j = i + 1; j < ctx.size(); ++j) {
      if (ctx[i].name == ctx[j].name)
        fail(Errc::ContextMismatch, "repeated variable " + ctx[i].name + " in context");
    }
  }
}

// Free variables in left-to-right occurrence order, duplicates preserved.
inline void value_free_vars(const ValueTerm& v, std::vector<std::string>& out) {
  if (v.is_var) {
    out.push_back(v.head);
    return;
  }
  for (const ValueTerm& a : v.args) value_free_vars(a, out);
}

inline std::vector<std::string> value_free_vars(const ValueTerm& v) {
  std::vector<std::string> out;
  value_free_vars(v, out);
  return out;
}

inline bool value_uses_var(const ValueTerm& v, const std::string& x) {
  if (v.is_var) return v.head == x;
  for (const ValueTerm& a : v.args)
    if (value_uses_var(a, x)) return true;
  return false;
}

namespace detail {

inline Sort check_value_walk(const ValueContext& ctx, size_t& cursor, const ValueTerm& v,
                             const Signature& sig) {
  if (v.is_var) {
    if (cursor >= ctx.size()) {
      bool known = std::any_of(ctx.begin(), ctx.end(),
                               [&](const CtxEntry& e) { return e.name == v.head; });
      fail(known ? Errc::ContextMismatch : Errc::UnknownVariable,
           known ? "variable " + v.head + " used out of order or twice" : v.head);
    }
    if (ctx[cursor].name != v.head) {
      bool known = std::any_of(ctx.begin(), ctx.end(),
                               [&](const CtxEntry& e) { return e.name == v.head; });
      if (!known) fail(Errc::UnknownVariable, v.head);
      fail(Errc::ContextMismatch, "expected variable " + ctx[cursor].name + ", found " + v.head);
    }
    return ctx[cursor++].sort;
  }
  const OpSymbol& op = sig.op(v.head);
  if (op.arity.size() != v.args.size())
    fail(Errc::ArityMismatch, v.head + " expects " + std::to_string(op.arity.size()) +
                                  " arguments, got " + std::to_string(v.args.size()));
  for (size_t i = 0; i < v.args.size(); ++i) {
    Sort got = check_value_walk(ctx, cursor, v.args[i], sig);
    if (got != op.arity[i])
      fail(Errc::SortMismatch, "argument " + std::to_string(i) + " of " + v.head + " has sort " +
                                   got + ", expected " + op.arity[i]);
  }
  return op.result;
}

}  // namespace detail

// Checks ctx |- v : B in the sequent calculus of values. The context must be
// consumed linearly, left to right (the OP rule splits contexts in order and
// never reuses a variable).
inline Sort check_value(const ValueContext& ctx, const ValueTerm& v, const Signature& sig) {
  require_wellformed_context(ctx, sig);
  size_t cursor = 0;
  Sort result = detail::check_value_walk(ctx, cursor, v, sig);
  if (cursor != ctx.size())
    fail(Errc::ContextMismatch,
         "context variable " + ctx[cursor].name + " unused by the value term");
  return result;
}

using ValueBindings = std::vector<std::pair<std::string, ValueTerm>>;

// Simultaneous substitution; the multicategory composition. Every free
// variable of v must be bound.
inline ValueTerm subst_value(const ValueTerm& v, const ValueBindings& bindings) {
  if (v.is_var) {
    for (const auto& [name, val] : bindings)
      if (name == v.head) return val;
    fail(Errc::UnboundVariable, v.head);
  }
  std::vector<ValueTerm> args;
  args.reserve(v.args.size());
  for (const ValueTerm& a : v.args) args.push_back(subst_value(a, bindings));
  return ValueTerm::app(v.head, std::move(args));
}

inline std::string print_value(const ValueTerm& v) {
  if (v.is_var) return v.head;
  std::string out = v.head + "(";
  for (size_t i = 0; i < v.args.size(); ++i) {
    if (i) out += ", ";
    out += print_value(v.args[i]);
  }
  out += ")";
  return out;
}

inline std::string print_context(const ValueContext& ctx) {
  std::string out;
  for (size_t i = 0; i < ctx.size(); ++i) {
    if (i) out += ", ";
    out += ctx[i].name + ":" + ctx[i].sort;
  }
  return out;
}

}  // namespace corner
