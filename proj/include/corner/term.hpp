#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "corner/protocol.hpp"
#include "corner/signature.hpp"

namespace corner {

enum class TermKind { Seq, Let, PutR, GetL, GetR, PutL };
enum class TermClass { Neutral, LeftFacing, RightFacing, LetBinding };

struct Binder {
  std::string name;
  Sort sort;
  friend bool operator==(const Binder& a, const Binder& b) {
    return a.name == b.name && a.sort == b.sort;
  }
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Process terms. Immutable; rewriting builds new spines and shares subtrees.
struct Term {
  TermKind kind;
  ValueTerm value;             // Seq, PutR, PutL
  Binder binder;               // GetL, GetR
  std::vector<Binder> binders; // Let
  std::vector<TermPtr> inputs; // Let
  TermPtr cont;                // Let body / put,get continuation
};

inline TermPtr seq(ValueTerm v) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Seq;
  t->value = std::move(v);
  return t;
}

inline TermPtr let_in(std::vector<Binder> binders, std::vector<TermPtr> inputs, TermPtr body) {
  if (binders.empty() || binders.size() != inputs.size())
    fail(Errc::ArityMismatch, "let needs n >= 1 binders matching its inputs");
  for (size_t i = 0; i < binders.size(); ++i)
    for (size_t j = i + 1; j < binders.size(); ++j)
      if (binders[i].name == binders[j].name)
        fail(Errc::ContextMismatch, "repeated let binder " + binders[i].name);
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Let;
  t->binders = std::move(binders);
  t->inputs = std::move(inputs);
  t->cont = std::move(body);
  return t;
}

inline TermPtr put_r(ValueTerm v, TermPtr cont) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::PutR;
  t->value = std::move(v);
  t->cont = std::move(cont);
  return t;
}

inline TermPtr put_l(ValueTerm v, TermPtr cont) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::PutL;
  t->value = std::move(v);
  t->cont = std::move(cont);
  return t;
}

inline TermPtr get_l(std::string x, Sort a, TermPtr cont) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::GetL;
  t->binder = Binder{std::move(x), std::move(a)};
  t->cont = std::move(cont);
  return t;
}

inline TermPtr get_r(std::string x, Sort a, TermPtr cont) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::GetR;
  t->binder = Binder{std::move(x), std::move(a)};
  t->cont = std::move(cont);
  return t;
}

inline TermClass classify(const Term& t) {
  switch (t.kind) {
    case TermKind::Seq: return TermClass::Neutral;
    case TermKind::PutL:
    case TermKind::GetL: return TermClass::LeftFacing;
    case TermKind::PutR:
    case TermKind::GetR: return TermClass::RightFacing;
    case TermKind::Let: return TermClass::LetBinding;
  }
  fail(Errc::InvalidRedex, "unreachable");
}

inline bool is_neutral(const TermPtr& t) { return t->kind == TermKind::Seq; }
inline bool is_left_facing(const TermPtr& t) {
  return t->kind == TermKind::PutL || t->kind == TermKind::GetL;
}
inline bool is_right_facing(const TermPtr& t) {
  return t->kind == TermKind::PutR || t->kind == TermKind::GetR;
}

// The termination measure. Multiplicative in let inputs, so guard overflow.
inline unsigned long long term_size(const TermPtr& t) {
  auto mul = [](unsigned long long a, unsigned long long b) {
    unsigned long long r;
    if (__builtin_mul_overflow(a, b, &r)) fail(Errc::Overflow, "term size");
    return r;
  };
  switch (t->kind) {
    case TermKind::Seq: return 2;
    case TermKind::Let: {
      unsigned long long acc = 2;
      for (const TermPtr& in : t->inputs) acc = mul(acc, term_size(in));
      return mul(acc, term_size(t->cont));
    }
    case TermKind::PutL:
    case TermKind::GetL: return 2 + mul(2, term_size(t->cont));
    case TermKind::PutR:
    case TermKind::GetR: return 1 + mul(2, term_size(t->cont));
  }
  fail(Errc::InvalidRedex, "unreachable");
}

namespace detail {

inline void term_free_vars_walk(const TermPtr& t, std::vector<std::string>& bound,
                                std::vector<std::string>& out) {
  auto is_bound = [&](const std::string& x) {
    for (auto it = bound.rbegin(); it != bound.rend(); ++it)
      if (*it == x) return true;
    return false;
  };
  auto add_value = [&](const ValueTerm& v) {
    for (const std::string& x : value_free_vars(v))
      if (!is_bound(x)) out.push_back(x);
  };
  switch (t->kind) {
    case TermKind::Seq: add_value(t->value); return;
    case TermKind::Let: {
      for (const TermPtr& in : t->inputs) term_free_vars_walk(in, bound, out);
      for (const Binder& b : t->binders) bound.push_back(b.name);
      term_free_vars_walk(t->cont, bound, out);
      bound.resize(bound.size() - t->binders.size());
      return;
    }
    case TermKind::PutR:
      term_free_vars_walk(t->cont, bound, out);
      add_value(t->value);
      return;
    case TermKind::PutL:
      add_value(t->value);
      term_free_vars_walk(t->cont, bound, out);
      return;
    case TermKind::GetL:
    case TermKind::GetR:
      bound.push_back(t->binder.name);
      term_free_vars_walk(t->cont, bound, out);
      bound.pop_back();
      return;
  }
}

}  // namespace detail

// Free variables of a term in context order: continuation-then-value for
// putR, value-then-continuation for putL, inputs left to right for let.
inline std::vector<std::string> term_free_vars(const TermPtr& t) {
  std::vector<std::string> bound, out;
  detail::term_free_vars_walk(t, bound, out);
  return out;
}

inline void collect_names(const TermPtr& t, std::set<std::string>& out) {
  auto add_value = [&](const ValueTerm& v) {
    for (const std::string& x : value_free_vars(v)) out.insert(x);
  };
  switch (t->kind) {
    case TermKind::Seq: add_value(t->value); return;
    case TermKind::Let:
      for (const Binder& b : t->binders) out.insert(b.name);
      for (const TermPtr& in : t->inputs) collect_names(in, out);
      collect_names(t->cont, out);
      return;
    case TermKind::PutR:
    case TermKind::PutL:
      add_value(t->value);
      collect_names(t->cont, out);
      return;
    case TermKind::GetL:
    case TermKind::GetR:
      out.insert(t->binder.name);
      collect_names(t->cont, out);
      return;
  }
}

namespace detail {

struct AlphaEnv {
  std::vector<std::pair<std::string, std::string>> pairs;

  bool matches(const std::string& a, const std::string& b) const {
    for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
      bool ha = it->first == a, hb = it->second == b;
      if (ha || hb) return ha && hb;
    }
    return a == b;  // both free
  }
};

inline bool alpha_eq_value(const ValueTerm& a, const ValueTerm& b, const AlphaEnv& env) {
  if (a.is_var != b.is_var) return false;
  if (a.is_var) return env.matches(a.head, b.head);
  if (a.head != b.head || a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!alpha_eq_value(a.args[i], b.args[i], env)) return false;
  return true;
}

inline bool alpha_eq_walk(const TermPtr& a, const TermPtr& b, AlphaEnv& env) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Seq: return alpha_eq_value(a->value, b->value, env);
    case TermKind::Let: {
      if (a->binders.size() != b->binders.size()) return false;
      for (size_t i = 0; i < a->inputs.size(); ++i)
        if (!alpha_eq_walk(a->inputs[i], b->inputs[i], env)) return false;
      for (size_t i = 0; i < a->binders.size(); ++i) {
        if (a->binders[i].sort != b->binders[i].sort) return false;
        env.pairs.emplace_back(a->binders[i].name, b->binders[i].name);
      }
      bool ok = alpha_eq_walk(a->cont, b->cont, env);
      env.pairs.resize(env.pairs.size() - a->binders.size());
      return ok;
    }
    case TermKind::PutR:
    case TermKind::PutL:
      return alpha_eq_value(a->value, b->value, env) && alpha_eq_walk(a->cont, b->cont, env);
    case TermKind::GetL:
    case TermKind::GetR: {
      if (a->binder.sort != b->binder.sort) return false;
      env.pairs.emplace_back(a->binder.name, b->binder.name);
      bool ok = alpha_eq_walk(a->cont, b->cont, env);
      env.pairs.pop_back();
      return ok;
    }
  }
  return false;
}

}  // namespace detail

// Equality up to consistent renaming of let- and get-bound variables.
inline bool alpha_eq(const TermPtr& a, const TermPtr& b) {
  detail::AlphaEnv env;
  return detail::alpha_eq_walk(a, b, env);
}

namespace detail {

inline TermPtr cleanse_walk(const TermPtr& t, std::set<std::string>& used, FreshNames& fresh,
                            std::vector<std::pair<std::string, std::string>>& renames);

inline ValueTerm cleanse_value(const ValueTerm& v,
                               const std::vector<std::pair<std::string, std::string>>& renames) {
  if (v.is_var) {
    for (auto it = renames.rbegin(); it != renames.rend(); ++it)
      if (it->first == v.head) return ValueTerm::var(it->second);
    return v;
  }
  std::vector<ValueTerm> args;
  args.reserve(v.args.size());
  for (const ValueTerm& a : v.args) args.push_back(cleanse_value(a, renames));
  return ValueTerm::app(v.head, std::move(args));
}

inline std::string cleanse_binder(const std::string& name, std::set<std::string>& used,
                                  FreshNames& fresh,
                                  std::vector<std::pair<std::string, std::string>>& renames) {
  std::string chosen = name;
  if (used.count(name)) {
    chosen = fresh.next();
    used.insert(chosen);
  } else {
    used.insert(name);
  }
  renames.emplace_back(name, chosen);
  return chosen;
}

inline TermPtr cleanse_walk(const TermPtr& t, std::set<std::string>& used, FreshNames& fresh,
                            std::vector<std::pair<std::string, std::string>>& renames) {
  switch (t->kind) {
    case TermKind::Seq: return seq(cleanse_value(t->value, renames));
    case TermKind::Let: {
      std::vector<TermPtr> inputs;
      inputs.reserve(t->inputs.size());
      for (const TermPtr& in : t->inputs) inputs.push_back(cleanse_walk(in, used, fresh, renames));
      std::vector<Binder> binders;
      binders.reserve(t->binders.size());
      size_t mark = renames.size();
      for (const Binder& b : t->binders)
        binders.push_back(Binder{cleanse_binder(b.name, used, fresh, renames), b.sort});
      TermPtr body = cleanse_walk(t->cont, used, fresh, renames);
      renames.resize(mark);
      return let_in(std::move(binders), std::move(inputs), std::move(body));
    }
    case TermKind::PutR: {
      TermPtr cont = cleanse_walk(t->cont, used, fresh, renames);
      return put_r(cleanse_value(t->value, renames), std::move(cont));
    }
    case TermKind::PutL: {
      ValueTerm val = cleanse_value(t->value, renames);
      return put_l(std::move(val), cleanse_walk(t->cont, used, fresh, renames));
    }
    case TermKind::GetL:
    case TermKind::GetR: {
      size_t mark = renames.size();
      std::string name = cleanse_binder(t->binder.name, used, fresh, renames);
      TermPtr cont = cleanse_walk(t->cont, used, fresh, renames);
      renames.resize(mark);
      return t->kind == TermKind::GetL ? get_l(name, t->binder.sort, std::move(cont))
                                       : get_r(name, t->binder.sort, std::move(cont));
    }
  }
  fail(Errc::InvalidRedex, "unreachable");
}

}  // namespace detail

// Renames binders so that all binders are pairwise distinct and distinct from
// every free variable. Rewriting preserves this invariant; parsed user terms
// are cleansed once on entry so the R8 side condition never blocks a redex
// that exists up to alpha.
inline TermPtr cleanse(const TermPtr& t) {
  std::set<std::string> used;
  collect_names(t, used);
  FreshNames fresh(used);
  std::set<std::string> seen;
  for (const std::string& x : term_free_vars(t)) seen.insert(x);
  std::vector<std::pair<std::string, std::string>> renames;
  return detail::cleanse_walk(t, seen, fresh, renames);
}

inline std::string print_term(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Seq: return "[" + print_value(t->value) + "]";
    case TermKind::Let: {
      std::string out = "let ";
      for (size_t i = 0; i < t->binders.size(); ++i) {
        if (i) out += ", ";
        out += t->binders[i].name + ":" + t->binders[i].sort;
      }
      out += " <- (";
      for (size_t i = 0; i < t->inputs.size(); ++i) {
        if (i) out += " | ";
        out += print_term(t->inputs[i]);
      }
      out += ") in " + print_term(t->cont);
      return out;
    }
    case TermKind::PutR: return "putR(" + print_value(t->value) + ", " + print_term(t->cont) + ")";
    case TermKind::PutL: return "putL(" + print_value(t->value) + ", " + print_term(t->cont) + ")";
    case TermKind::GetL:
      return "getL(" + t->binder.name + ":" + t->binder.sort + ". " + print_term(t->cont) + ")";
    case TermKind::GetR:
      return "getR(" + t->binder.name + ":" + t->binder.sort + ". " + print_term(t->cont) + ")";
  }
  fail(Errc::InvalidRedex, "unreachable");
}

}  // namespace corner
