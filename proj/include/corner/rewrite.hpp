#pragma once

#include <optional>
#include <string>
#include <vector>

#include "corner/typecheck.hpp"
#include "corner/vsub.hpp"

namespace corner {

enum class Rule { R0, R1, R2, R3, R4, R5, R6, R7, R8, R9, R10 };

inline const char* rule_name(Rule r) {
  static const char* names[] = {"R0", "R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9", "R10"};
  return names[static_cast<int>(r)];
}

// A rule occurrence: the subterm it fires at plus, for R1/R2, which adjacent
// input pair interacts.
struct Redex {
  std::vector<int> path;
  Rule rule;
  int detail = 0;

  friend bool operator==(const Redex& a, const Redex& b) {
    return a.path == b.path && a.rule == b.rule && a.detail == b.detail;
  }
};

inline std::string print_path(const std::vector<int>& path) {
  std::string out = "[";
  for (size_t i = 0; i < path.size(); ++i) {
    if (i) out += ".";
    out += std::to_string(path[i]);
  }
  out += "]";
  return out;
}

namespace detail {

inline void local_redexes(const TermPtr& t, const std::vector<int>& path,
                          std::vector<Redex>& out) {
  switch (t->kind) {
    case TermKind::Let: {
      const auto& ins = t->inputs;
      size_t n = ins.size();
      bool all_neutral = true;
      for (const TermPtr& in : ins) all_neutral = all_neutral && is_neutral(in);
      if (all_neutral) out.push_back(Redex{path, Rule::R0, 0});
      for (size_t i = 0; i + 1 < n; ++i)
        if (ins[i]->kind == TermKind::PutR && ins[i + 1]->kind == TermKind::GetL)
          out.push_back(Redex{path, Rule::R1, static_cast<int>(i)});
      for (size_t i = 0; i + 1 < n; ++i)
        if (ins[i]->kind == TermKind::GetR && ins[i + 1]->kind == TermKind::PutL)
          out.push_back(Redex{path, Rule::R2, static_cast<int>(i)});
      if (ins.front()->kind == TermKind::PutL) out.push_back(Redex{path, Rule::R3, 0});
      if (ins.front()->kind == TermKind::GetL) out.push_back(Redex{path, Rule::R4, 0});
      if (ins.back()->kind == TermKind::PutR) out.push_back(Redex{path, Rule::R5, 0});
      if (ins.back()->kind == TermKind::GetR) out.push_back(Redex{path, Rule::R6, 0});
      return;
    }
    case TermKind::PutR: {
      if (t->cont->kind == TermKind::PutL) out.push_back(Redex{path, Rule::R7, 0});
      if (t->cont->kind == TermKind::GetL && !value_uses_var(t->value, t->cont->binder.name))
        out.push_back(Redex{path, Rule::R8, 0});
      return;
    }
    case TermKind::GetR: {
      if (t->cont->kind == TermKind::PutL && !value_uses_var(t->cont->value, t->binder.name))
        out.push_back(Redex{path, Rule::R9, 0});
      if (t->cont->kind == TermKind::GetL) out.push_back(Redex{path, Rule::R10, 0});
      return;
    }
    default: return;
  }
}

inline void collect_redexes(const TermPtr& t, std::vector<int>& path, std::vector<Redex>& out) {
  local_redexes(t, path, out);
  switch (t->kind) {
    case TermKind::Seq: return;
    case TermKind::Let: {
      for (size_t i = 0; i < t->inputs.size(); ++i) {
        path.push_back(static_cast<int>(i));
        collect_redexes(t->inputs[i], path, out);
        path.pop_back();
      }
      path.push_back(static_cast<int>(t->inputs.size()));
      collect_redexes(t->cont, path, out);
      path.pop_back();
      return;
    }
    default: {
      path.push_back(0);
      collect_redexes(t->cont, path, out);
      path.pop_back();
      return;
    }
  }
}

}  // namespace detail

// All applicable generating rewrites, ordered by (path lexicographic, rule
// index, pair index). Pre-order traversal yields exactly that order.
inline std::vector<Redex> redexes(const TermPtr& t) {
  std::vector<Redex> out;
  std::vector<int> path;
  detail::collect_redexes(t, path, out);
  return out;
}

namespace detail {

// Freshens a hoisted binder when it would capture a free variable of the
// terms it starts to scope over.
inline std::pair<std::string, TermPtr> unshadow(const std::string& name, const TermPtr& cont,
                                                const std::vector<TermPtr>& siblings,
                                                const TermPtr& body) {
  std::set<std::string> avoid;
  collect_names(cont, avoid);
  bool clash = false;
  for (const TermPtr& s : siblings) {
    std::set<std::string> names;
    collect_names(s, names);
    if (names.count(name)) clash = true;
    avoid.insert(names.begin(), names.end());
  }
  {
    std::set<std::string> names;
    collect_names(body, names);
    if (names.count(name)) clash = true;
    avoid.insert(names.begin(), names.end());
  }
  if (!clash) return {name, cont};
  FreshNames fresh(avoid);
  std::string renamed = fresh.next();
  return {renamed, rename_free(cont, name, renamed)};
}

inline TermPtr apply_here(const TermPtr& t, Rule rule, int detail_idx) {
  auto bad = [&]() -> TermPtr {
    fail(Errc::InvalidRedex, std::string(rule_name(rule)) + " does not apply at this subterm");
  };
  switch (rule) {
    case Rule::R0: {
      if (t->kind != TermKind::Let) return bad();
      ValueBindings bs;
      for (size_t i = 0; i < t->inputs.size(); ++i) {
        if (!is_neutral(t->inputs[i])) return bad();
        bs.emplace_back(t->binders[i].name, t->inputs[i]->value);
      }
      return vsub(t->cont, bs);
    }
    case Rule::R1: {
      if (t->kind != TermKind::Let) return bad();
      size_t i = static_cast<size_t>(detail_idx);
      if (i + 1 >= t->inputs.size() || t->inputs[i]->kind != TermKind::PutR ||
          t->inputs[i + 1]->kind != TermKind::GetL)
        return bad();
      const TermPtr& put = t->inputs[i];
      const TermPtr& get = t->inputs[i + 1];
      std::vector<TermPtr> ins = t->inputs;
      ins[i] = put->cont;
      ins[i + 1] = subst_single(get->cont, get->binder.name, put->value);
      return let_in(t->binders, std::move(ins), t->cont);
    }
    case Rule::R2: {
      if (t->kind != TermKind::Let) return bad();
      size_t i = static_cast<size_t>(detail_idx);
      if (i + 1 >= t->inputs.size() || t->inputs[i]->kind != TermKind::GetR ||
          t->inputs[i + 1]->kind != TermKind::PutL)
        return bad();
      const TermPtr& get = t->inputs[i];
      const TermPtr& put = t->inputs[i + 1];
      std::vector<TermPtr> ins = t->inputs;
      ins[i] = subst_single(get->cont, get->binder.name, put->value);
      ins[i + 1] = put->cont;
      return let_in(t->binders, std::move(ins), t->cont);
    }
    case Rule::R3:
    case Rule::R4: {
      if (t->kind != TermKind::Let) return bad();
      const TermPtr& first = t->inputs.front();
      if (rule == Rule::R3 ? first->kind != TermKind::PutL : first->kind != TermKind::GetL)
        return bad();
      std::vector<TermPtr> rest(t->inputs.begin() + 1, t->inputs.end());
      if (rule == Rule::R3) {
        std::vector<TermPtr> ins = t->inputs;
        ins[0] = first->cont;
        return put_l(first->value, let_in(t->binders, std::move(ins), t->cont));
      }
      auto [name, cont] = unshadow(first->binder.name, first->cont, rest, t->cont);
      std::vector<TermPtr> ins = t->inputs;
      ins[0] = cont;
      return get_l(name, first->binder.sort, let_in(t->binders, std::move(ins), t->cont));
    }
    case Rule::R5:
    case Rule::R6: {
      if (t->kind != TermKind::Let) return bad();
      const TermPtr& last = t->inputs.back();
      if (rule == Rule::R5 ? last->kind != TermKind::PutR : last->kind != TermKind::GetR)
        return bad();
      std::vector<TermPtr> rest(t->inputs.begin(), t->inputs.end() - 1);
      if (rule == Rule::R5) {
        std::vector<TermPtr> ins = t->inputs;
        ins.back() = last->cont;
        return put_r(last->value, let_in(t->binders, std::move(ins), t->cont));
      }
      auto [name, cont] = unshadow(last->binder.name, last->cont, rest, t->cont);
      std::vector<TermPtr> ins = t->inputs;
      ins.back() = cont;
      return get_r(name, last->binder.sort, let_in(t->binders, std::move(ins), t->cont));
    }
    case Rule::R7: {
      if (t->kind != TermKind::PutR || t->cont->kind != TermKind::PutL) return bad();
      return put_l(t->cont->value, put_r(t->value, t->cont->cont));
    }
    case Rule::R8: {
      if (t->kind != TermKind::PutR || t->cont->kind != TermKind::GetL ||
          value_uses_var(t->value, t->cont->binder.name))
        return bad();
      return get_l(t->cont->binder.name, t->cont->binder.sort, put_r(t->value, t->cont->cont));
    }
    case Rule::R9: {
      if (t->kind != TermKind::GetR || t->cont->kind != TermKind::PutL ||
          value_uses_var(t->cont->value, t->binder.name))
        return bad();
      return put_l(t->cont->value, get_r(t->binder.name, t->binder.sort, t->cont->cont));
    }
    case Rule::R10: {
      if (t->kind != TermKind::GetR || t->cont->kind != TermKind::GetL) return bad();
      return get_l(t->cont->binder.name, t->cont->binder.sort,
                   get_r(t->binder.name, t->binder.sort, t->cont->cont));
    }
  }
  return bad();
}

inline TermPtr apply_at(const TermPtr& t, const std::vector<int>& path, size_t depth, Rule rule,
                        int detail_idx) {
  if (depth == path.size()) return apply_here(t, rule, detail_idx);
  int idx = path[depth];
  switch (t->kind) {
    case TermKind::Seq: fail(Errc::InvalidRedex, "path descends into a neutral term");
    case TermKind::Let: {
      int n = static_cast<int>(t->inputs.size());
      if (idx < 0 || idx > n) fail(Errc::InvalidRedex, "path index out of range");
      if (idx == n)
        return let_in(t->binders, t->inputs, apply_at(t->cont, path, depth + 1, rule, detail_idx));
      std::vector<TermPtr> ins = t->inputs;
      ins[idx] = apply_at(ins[idx], path, depth + 1, rule, detail_idx);
      return let_in(t->binders, std::move(ins), t->cont);
    }
    default: {
      if (idx != 0) fail(Errc::InvalidRedex, "path index out of range");
      TermPtr inner = apply_at(t->cont, path, depth + 1, rule, detail_idx);
      switch (t->kind) {
        case TermKind::PutR: return put_r(t->value, inner);
        case TermKind::PutL: return put_l(t->value, inner);
        case TermKind::GetL: return get_l(t->binder.name, t->binder.sort, inner);
        case TermKind::GetR: return get_r(t->binder.name, t->binder.sort, inner);
        default: fail(Errc::InvalidRedex, "unreachable");
      }
    }
  }
}

}  // namespace detail

// One rewrite step at the given redex.
inline TermPtr apply(const TermPtr& t, const Redex& r) {
  return detail::apply_at(t, r.path, 0, r.rule, r.detail);
}

struct TraceStep {
  Redex redex;
  TermPtr term;
};

struct Trace {
  TermPtr start;
  std::vector<TraceStep> steps;
  bool truncated = false;

  const TermPtr& result() const { return steps.empty() ? start : steps.back().term; }
};

// Deterministic normalization: always fire the first redex in `redexes`
// order. Termination is the size argument; confluence makes the normal form
// strategy-independent. max_steps is a safety valve only.
inline Trace normalize(const TermPtr& t, long max_steps = -1) {
  Trace trace{t, {}, false};
  TermPtr cur = t;
  for (;;) {
    std::vector<Redex> rs = redexes(cur);
    if (rs.empty()) return trace;
    if (max_steps >= 0 && static_cast<long>(trace.steps.size()) >= max_steps) {
      trace.truncated = true;
      return trace;
    }
    cur = corner::apply(cur, rs.front());
    trace.steps.push_back(TraceStep{rs.front(), cur});
  }
}

inline TermPtr normal_form(const TermPtr& t) { return normalize(t).result(); }

inline std::vector<std::string> trace_lines(const Trace& trace) {
  std::vector<std::string> out;
  for (size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep& s = trace.steps[i];
    out.push_back("step " + std::to_string(i) + ": " + rule_name(s.redex.rule) + " at " +
                  print_path(s.redex.path) + " :: " + print_term(s.term));
  }
  return out;
}

// Decides the convertibility relation via unique normal forms.
inline bool convertible(const TypedTerm& a, const TypedTerm& b) {
  if (a.jd != b.jd)
    fail(Errc::JudgmentMismatch, "convertibility needs identical judgments: " +
                                     print_judgment(a.jd) + " vs " + print_judgment(b.jd));
  return alpha_eq(normal_form(a.term), normal_form(b.term));
}

// With confluence and termination, joinability coincides with equality of
// normal forms.
inline bool joinable(const TypedTerm& a, const TypedTerm& b) {
  if (a.jd != b.jd)
    fail(Errc::JudgmentMismatch, "joinability needs identical judgments");
  return alpha_eq(normal_form(a.term), normal_form(b.term));
}

}  // namespace corner
