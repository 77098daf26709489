#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "corner/protocol.hpp"
#include "corner/term.hpp"

namespace corner {

// The typed boundary of a term: ctx |- t : (U, B, W).
struct Judgment {
  ValueContext ctx;
  Protocol left;
  Sort result;
  Protocol right;

  friend bool operator==(const Judgment& a, const Judgment& b) {
    return a.ctx == b.ctx && a.left == b.left && a.result == b.result && a.right == b.right;
  }
  friend bool operator!=(const Judgment& a, const Judgment& b) { return !(a == b); }
};

inline std::string print_judgment(const Judgment& j) {
  std::string out = print_context(j.ctx);
  if (!j.ctx.empty()) out += " ";
  out += "|- (" + print_protocol(j.left) + ", " + j.result + ", " + print_protocol(j.right) + ")";
  return out;
}

namespace detail {

inline ValueContext ctx_slice(const ValueContext& ctx, size_t from, size_t count) {
  if (from + count > ctx.size())
    fail(Errc::ContextMismatch, "context too short for the term's variable usage");
  return ValueContext(ctx.begin() + from, ctx.begin() + from + count);
}

}  // namespace detail

// Synthesizes the unique judgment of t against the declared context. Context
// distribution follows the formation rules: putR splits continuation-then-
// value, putL value-then-continuation, let splits across inputs in order,
// getL consumes a leading binder and getR a trailing one.
inline Judgment check_term(const Signature& sig, const ValueContext& ctx, const TermPtr& t) {
  require_wellformed_context(ctx, sig);
  switch (t->kind) {
    case TermKind::Seq: {
      Sort b = check_value(ctx, t->value, sig);
      return Judgment{ctx, {}, b, {}};
    }
    case TermKind::Let: {
      size_t n = t->inputs.size();
      std::vector<Judgment> js;
      js.reserve(n);
      size_t used = 0;
      for (size_t i = 0; i < n; ++i) {
        size_t need = term_free_vars(t->inputs[i]).size();
        ValueContext slice = detail::ctx_slice(ctx, used, need);
        used += need;
        js.push_back(check_term(sig, slice, t->inputs[i]));
      }
      if (used != ctx.size())
        fail(Errc::ContextMismatch, "context variable " + ctx[used].name + " unused by let inputs");
      for (size_t i = 0; i < n; ++i) {
        if (js[i].result != t->binders[i].sort)
          fail(Errc::SortMismatch, "let input " + std::to_string(i) + " has sort " + js[i].result +
                                       ", binder wants " + t->binders[i].sort);
        if (i + 1 < n && js[i].right != js[i + 1].left)
          fail(Errc::ProtocolMismatch,
               "let inputs " + std::to_string(i) + " and " + std::to_string(i + 1) +
                   " do not share an intermediate protocol: " + print_protocol(js[i].right) +
                   " vs " + print_protocol(js[i + 1].left));
      }
      ValueContext body_ctx;
      for (const Binder& b : t->binders) {
        sig.require_sort(b.sort);
        body_ctx.push_back(CtxEntry{b.name, b.sort});
      }
      Judgment body = check_term(sig, body_ctx, t->cont);
      return Judgment{ctx, concat(js.front().left, body.left), body.result,
                      concat(js.back().right, body.right)};
    }
    case TermKind::PutR: {
      size_t vn = value_free_vars(t->value).size();
      if (vn > ctx.size()) fail(Errc::ContextMismatch, "putR value needs more context than given");
      ValueContext delta = detail::ctx_slice(ctx, 0, ctx.size() - vn);
      ValueContext gamma = detail::ctx_slice(ctx, ctx.size() - vn, vn);
      Sort a = check_value(gamma, t->value, sig);
      Judgment j = check_term(sig, delta, t->cont);
      return Judgment{ctx, j.left, j.result, concat({send(a)}, j.right)};
    }
    case TermKind::PutL: {
      size_t vn = value_free_vars(t->value).size();
      ValueContext gamma = detail::ctx_slice(ctx, 0, vn);
      ValueContext delta = detail::ctx_slice(ctx, vn, ctx.size() - vn);
      Sort a = check_value(gamma, t->value, sig);
      Judgment j = check_term(sig, delta, t->cont);
      return Judgment{ctx, concat({receive(a)}, j.left), j.result, j.right};
    }
    case TermKind::GetL: {
      sig.require_sort(t->binder.sort);
      for (const CtxEntry& e : ctx)
        if (e.name == t->binder.name)
          fail(Errc::ContextMismatch, "getL binder " + t->binder.name + " shadows the context");
      std::vector<std::string> fvs = term_free_vars(t->cont);
      auto pos = std::find(fvs.begin(), fvs.end(), t->binder.name);
      if (pos == fvs.end())
        fail(Errc::ContextMismatch, "getL binder " + t->binder.name + " unused");
      if (pos != fvs.begin())
        fail(Errc::BinderPositionError,
             "getL binder " + t->binder.name + " is not the leftmost variable of its continuation");
      ValueContext inner = ctx;
      inner.insert(inner.begin(), CtxEntry{t->binder.name, t->binder.sort});
      Judgment j = check_term(sig, inner, t->cont);
      return Judgment{ctx, concat({send(t->binder.sort)}, j.left), j.result, j.right};
    }
    case TermKind::GetR: {
      sig.require_sort(t->binder.sort);
      for (const CtxEntry& e : ctx)
        if (e.name == t->binder.name)
          fail(Errc::ContextMismatch, "getR binder " + t->binder.name + " shadows the context");
      std::vector<std::string> fvs = term_free_vars(t->cont);
      auto pos = std::find(fvs.begin(), fvs.end(), t->binder.name);
      if (pos == fvs.end())
        fail(Errc::ContextMismatch, "getR binder " + t->binder.name + " unused");
      if (pos + 1 != fvs.end())
        fail(Errc::BinderPositionError,
             "getR binder " + t->binder.name + " is not the rightmost variable of its continuation");
      ValueContext inner = ctx;
      inner.push_back(CtxEntry{t->binder.name, t->binder.sort});
      Judgment j = check_term(sig, inner, t->cont);
      return Judgment{ctx, j.left, j.result, concat({receive(t->binder.sort)}, j.right)};
    }
  }
  fail(Errc::InvalidRedex, "unreachable");
}

// A term packaged with its checked judgment. Cell paths and the composition
// operations work on these.
struct TypedTerm {
  TermPtr term;
  Judgment jd;
};

inline TypedTerm typed(const Signature& sig, const ValueContext& ctx, TermPtr t) {
  Judgment j = check_term(sig, ctx, t);
  return TypedTerm{std::move(t), std::move(j)};
}

}  // namespace corner
