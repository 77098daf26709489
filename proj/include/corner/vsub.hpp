#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "corner/term.hpp"

namespace corner {

namespace detail {

inline ValueTerm rename_value(const ValueTerm& v, const std::string& from, const std::string& to) {
  if (v.is_var) return v.head == from ? ValueTerm::var(to) : v;
  std::vector<ValueTerm> args;
  args.reserve(v.args.size());
  for (const ValueTerm& a : v.args) args.push_back(rename_value(a, from, to));
  return ValueTerm::app(v.head, std::move(args));
}

}  // namespace detail

// Renames a free variable; binders that shadow `from` cut the renaming off.
inline TermPtr rename_free(const TermPtr& t, const std::string& from, const std::string& to) {
  switch (t->kind) {
    case TermKind::Seq: return seq(detail::rename_value(t->value, from, to));
    case TermKind::Let: {
      std::vector<TermPtr> inputs;
      inputs.reserve(t->inputs.size());
      for (const TermPtr& in : t->inputs) inputs.push_back(rename_free(in, from, to));
      bool shadowed = std::any_of(t->binders.begin(), t->binders.end(),
                                  [&](const Binder& b) { return b.name == from; });
      return let_in(t->binders, std::move(inputs), shadowed ? t->cont : rename_free(t->cont, from, to));
    }
    case TermKind::PutR:
      return put_r(detail::rename_value(t->value, from, to), rename_free(t->cont, from, to));
    case TermKind::PutL:
      return put_l(detail::rename_value(t->value, from, to), rename_free(t->cont, from, to));
    case TermKind::GetL:
      if (t->binder.name == from) return t;
      return get_l(t->binder.name, t->binder.sort, rename_free(t->cont, from, to));
    case TermKind::GetR:
      if (t->binder.name == from) return t;
      return get_r(t->binder.name, t->binder.sort, rename_free(t->cont, from, to));
  }
  fail(Errc::InvalidRedex, "unreachable");
}

namespace detail {

inline bool binding_value_uses(const ValueBindings& bs, const std::string& x) {
  for (const auto& [name, v] : bs)
    if (value_uses_var(v, x)) return true;
  return false;
}

inline std::set<std::string> vsub_avoid_set(const TermPtr& t, const ValueBindings& bs) {
  std::set<std::string> avoid;
  collect_names(t, avoid);
  for (const auto& [name, v] : bs) {
    avoid.insert(name);
    for (const std::string& x : value_free_vars(v)) avoid.insert(x);
  }
  return avoid;
}

// Splits bindings between a value and the remaining term by variable name.
inline void partition_bindings(const ValueBindings& bs, const std::vector<std::string>& value_vars,
                               ValueBindings& for_value, ValueBindings& rest) {
  for (const auto& b : bs) {
    if (std::find(value_vars.begin(), value_vars.end(), b.first) != value_vars.end())
      for_value.push_back(b);
    else
      rest.push_back(b);
  }
}

inline TermPtr vsub_walk(const TermPtr& t, const ValueBindings& bs) {
  switch (t->kind) {
    case TermKind::Seq: return seq(subst_value(t->value, bs));
    case TermKind::Let: {
      // Bindings are apportioned across the inputs by the split the typing
      // dictates; the body only sees the binders.
      std::vector<TermPtr> inputs;
      inputs.reserve(t->inputs.size());
      ValueBindings remaining = bs;
      for (const TermPtr& in : t->inputs) {
        ValueBindings here, rest;
        partition_bindings(remaining, term_free_vars(in), here, rest);
        inputs.push_back(vsub_walk(in, here));
        remaining = std::move(rest);
      }
      if (!remaining.empty())
        fail(Errc::SplitError, "binding for " + remaining.front().first +
                                   " matches no let input variable");
      return let_in(t->binders, std::move(inputs), t->cont);
    }
    case TermKind::PutR: {
      ValueBindings for_value, rest;
      partition_bindings(bs, value_free_vars(t->value), for_value, rest);
      return put_r(subst_value(t->value, for_value), vsub_walk(t->cont, rest));
    }
    case TermKind::PutL: {
      ValueBindings for_value, rest;
      partition_bindings(bs, value_free_vars(t->value), for_value, rest);
      return put_l(subst_value(t->value, for_value), vsub_walk(t->cont, rest));
    }
    case TermKind::GetL:
    case TermKind::GetR: {
      std::string x = t->binder.name;
      TermPtr cont = t->cont;
      if (binding_value_uses(bs, x)) {
        FreshNames fresh(vsub_avoid_set(t, bs));
        std::string renamed = fresh.next();
        cont = rename_free(cont, x, renamed);
        x = renamed;
      }
      ValueBindings extended = bs;
      extended.emplace_back(x, ValueTerm::var(x));
      TermPtr inner = vsub_walk(cont, extended);
      return t->kind == TermKind::GetL ? get_l(x, t->binder.sort, inner)
                                       : get_r(x, t->binder.sort, inner);
    }
  }
  fail(Errc::InvalidRedex, "unreachable");
}

}  // namespace detail

// Value substitution (the admissible VSUB rule). Bindings must cover the free
// variables of t exactly once each.
inline TermPtr vsub(const TermPtr& t, const ValueBindings& bindings) {
  std::vector<std::string> fvs = term_free_vars(t);
  for (size_t i = 0; i < bindings.size(); ++i) {
    for (size_t j = i + 1; j < bindings.size(); ++j)
      if (bindings[i].first == bindings[j].first)
        fail(Errc::SplitError, "variable " + bindings[i].first + " bound twice");
    if (std::find(fvs.begin(), fvs.end(), bindings[i].first) == fvs.end())
      fail(Errc::SplitError, "binding for " + bindings[i].first + " matches no free variable");
  }
  for (const std::string& x : fvs) {
    bool bound = std::any_of(bindings.begin(), bindings.end(),
                             [&](const auto& b) { return b.first == x; });
    if (!bound) fail(Errc::UnboundVariable, x);
  }
  return detail::vsub_walk(t, bindings);
}

// t[v/x], extending all other free variables identically.
inline TermPtr subst_single(const TermPtr& t, const std::string& x, const ValueTerm& v) {
  ValueBindings bs;
  for (const std::string& y : term_free_vars(t))
    bs.emplace_back(y, y == x ? v : ValueTerm::var(y));
  return vsub(t, bs);
}

}  // namespace corner
