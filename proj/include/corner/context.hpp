#pragma once

#include <string>
#include <vector>

#include "corner/rewrite.hpp"
#include "corner/typecheck.hpp"

namespace corner {

// One-hole contexts: a stack of putL/getL frames over a let whose input list
// ends in a hole. Plugging supplies the missing inputs.
struct CtxFrame {
  bool is_put;            // putL(v, _) if true, getL(x:A. _) otherwise
  ValueTerm value;        // putL
  ValueContext value_ctx; // context of the putL value
  Binder binder;          // getL
};

struct TermContext {
  std::vector<CtxFrame> frames;        // outermost first
  std::vector<Binder> binders;         // x1..xn of the let frame
  std::vector<TypedTerm> inputs;       // a1..ak, k < n
  TypedTerm body;                      // r, typed over the binders
  std::vector<Protocol> hole_protocols;  // U_k .. U_n
};

inline const std::vector<TypedTerm>& bound_sequence(const TermContext& L) { return L.inputs; }

inline const Protocol& hole_left_protocol(const TermContext& L) {
  return L.hole_protocols.front();
}

inline bool is_effectful(const TermContext& L) { return !hole_left_protocol(L).empty(); }
inline bool is_nonempty(const TermContext& L) { return !L.inputs.empty(); }

inline bool is_active(const TermContext& L) {
  return is_effectful(L) && is_nonempty(L) && is_right_facing(L.inputs.back().term);
}

inline void validate_context(const Signature& sig, const TermContext& L) {
  size_t n = L.binders.size(), k = L.inputs.size();
  if (k >= n) fail(Errc::ArityMismatch, "term context needs k < n");
  if (L.hole_protocols.size() != n - k + 1)
    fail(Errc::ProtocolMismatch, "hole protocol chain has the wrong length");
  for (size_t i = 0; i < k; ++i) {
    if (L.inputs[i].jd.result != L.binders[i].sort)
      fail(Errc::SortMismatch, "context input " + std::to_string(i) + " sort mismatch");
    if (i + 1 < k && L.inputs[i].jd.right != L.inputs[i + 1].jd.left)
      fail(Errc::ProtocolMismatch, "context inputs do not chain");
  }
  if (k > 0 && L.inputs.back().jd.right != L.hole_protocols.front())
    fail(Errc::ProtocolMismatch, "hole does not continue the input chain");
  if (L.body.jd.result.empty()) fail(Errc::SortMismatch, "context body must be typed");
  ValueContext body_ctx;
  for (const Binder& b : L.binders) body_ctx.push_back(CtxEntry{b.name, b.sort});
  if (L.body.jd.ctx != body_ctx)
    fail(Errc::ContextMismatch, "context body is not typed over the binders");
  for (const CtxFrame& f : L.frames)
    if (f.is_put) check_value(f.value_ctx, f.value, sig);
}

// The size measure on contexts; the hole contributes nothing.
inline unsigned long long context_size(const TermContext& L) {
  auto mul = [](unsigned long long a, unsigned long long b) {
    unsigned long long r;
    if (__builtin_mul_overflow(a, b, &r)) fail(Errc::Overflow, "context size");
    return r;
  };
  unsigned long long acc = 2;
  for (const TypedTerm& in : L.inputs) acc = mul(acc, term_size(in.term));
  acc = mul(acc, term_size(L.body.term));
  for (size_t i = L.frames.size(); i > 0; --i) acc = 2 + mul(2, acc);
  return acc;
}

// L[t1..tk]: appends the terms after the bound inputs and rebuilds the frame
// stack. Typechecks the result so protocol or arity abuse cannot slip by.
inline TypedTerm plug(const Signature& sig, const TermContext& L,
                      const std::vector<TypedTerm>& ts) {
  size_t n = L.binders.size(), k = L.inputs.size();
  if (ts.size() != n - k)
    fail(Errc::ArityMismatch, "hole takes " + std::to_string(n - k) + " terms, got " +
                                  std::to_string(ts.size()));
  for (size_t i = 0; i < ts.size(); ++i) {
    if (ts[i].jd.left != L.hole_protocols[i] || ts[i].jd.right != L.hole_protocols[i + 1])
      fail(Errc::ProtocolMismatch, "plugged term " + std::to_string(i) +
                                       " does not fit the hole protocol chain");
    if (ts[i].jd.result != L.binders[k + i].sort)
      fail(Errc::SortMismatch, "plugged term " + std::to_string(i) + " has sort " +
                                   ts[i].jd.result + ", binder wants " + L.binders[k + i].sort);
  }
  std::vector<TermPtr> ins;
  ValueContext ctx;
  for (const TypedTerm& in : L.inputs) {
    ins.push_back(in.term);
    ctx.insert(ctx.end(), in.jd.ctx.begin(), in.jd.ctx.end());
  }
  for (const TypedTerm& t : ts) {
    ins.push_back(t.term);
    ctx.insert(ctx.end(), t.jd.ctx.begin(), t.jd.ctx.end());
  }
  TermPtr term = let_in(L.binders, std::move(ins), L.body.term);
  for (size_t i = L.frames.size(); i > 0; --i) {
    const CtxFrame& f = L.frames[i - 1];
    if (f.is_put) {
      term = put_l(f.value, term);
      ctx.insert(ctx.begin(), f.value_ctx.begin(), f.value_ctx.end());
    } else {
      term = get_l(f.binder.name, f.binder.sort, term);
      if (ctx.empty() || ctx.front().name != f.binder.name)
        fail(Errc::BinderPositionError, "getL frame binder is not leftmost after plugging");
      ctx.erase(ctx.begin());
    }
  }
  return typed(sig, ctx, term);
}

struct ActiveReduction {
  TermContext context;
  // Redexes that realize L ->* L' on any plugging of L, in order.
  std::vector<Redex> steps;
};

namespace detail {

inline std::vector<int> context_path(const TermContext& L) {
  return std::vector<int>(L.frames.size(), 0);
}

inline std::set<std::string> context_names(const TermContext& L) {
  std::set<std::string> names;
  for (const CtxFrame& f : L.frames) {
    if (f.is_put)
      for (const CtxEntry& e : f.value_ctx) names.insert(e.name);
    if (!f.is_put) names.insert(f.binder.name);
  }
  for (const Binder& b : L.binders) names.insert(b.name);
  for (const TypedTerm& in : L.inputs) collect_names(in.term, names);
  collect_names(L.body.term, names);
  return names;
}

}  // namespace detail

// Constructive proof that effectful nonempty contexts reduce to active ones:
// reduce let-binding inputs, hoist leading left-facing inputs into frames,
// and fire interactions on adjacent mismatched pairs. The context size
// strictly decreases at each step.
inline ActiveReduction reduce_to_active(const Signature& sig, TermContext L) {
  if (!is_nonempty(L)) fail(Errc::EmptyContext, "context has no bound inputs");
  if (!is_effectful(L)) fail(Errc::NotEffectful, "hole's left protocol is empty");
  std::vector<Redex> steps;
  unsigned long long measure = context_size(L);
  for (;;) {
    if (is_active(L)) break;
    size_t k = L.inputs.size();
    if (k == 0) fail(Errc::EmptyContext, "context lost all bound inputs");

    // A let-binding input reduces first.
    bool stepped = false;
    for (size_t i = 0; i < k && !stepped; ++i) {
      if (L.inputs[i].term->kind != TermKind::Let) continue;
      std::vector<Redex> rs = redexes(L.inputs[i].term);
      if (rs.empty()) fail(Errc::InvalidRedex, "a let-binding input has no redex");
      Redex inner = rs.front();
      TermPtr reduced = corner::apply(L.inputs[i].term, inner);
      L.inputs[i] = typed(sig, L.inputs[i].jd.ctx, reduced);
      Redex step{detail::context_path(L), inner.rule, inner.detail};
      step.path.push_back(static_cast<int>(i));
      step.path.insert(step.path.end(), inner.path.begin(), inner.path.end());
      steps.push_back(step);
      stepped = true;
    }
    if (!stepped) {
      // Leftmost left-facing input, if any.
      size_t i = 0;
      while (i < k && !is_left_facing(L.inputs[i].term)) ++i;
      if (i == k) {
        // No left-facing inputs: the last one must already be right-facing,
        // and is_active would have caught it. Neutral is impossible since
        // its right protocol equals the nonempty hole protocol.
        fail(Errc::NotEffectful, "context cannot become active");
      }
      if (i == 0) {
        const TypedTerm& first = L.inputs[0];
        if (first.term->kind == TermKind::PutL) {
          size_t vn = value_free_vars(first.term->value).size();
          ValueContext vctx(first.jd.ctx.begin(), first.jd.ctx.begin() + vn);
          ValueContext rest(first.jd.ctx.begin() + vn, first.jd.ctx.end());
          steps.push_back(Redex{detail::context_path(L), Rule::R3, 0});
          L.frames.push_back(CtxFrame{true, first.term->value, vctx, Binder{}});
          L.inputs[0] = typed(sig, rest, first.term->cont);
        } else {
          // Hoisting a getL binder widens its scope over terms plugged in
          // later, so it always moves to a reserved fresh name.
          FreshNames fresh(detail::context_names(L));
          std::string renamed = fresh.next();
          TermPtr cont = rename_free(first.term->cont, first.term->binder.name, renamed);
          ValueContext inner_ctx = first.jd.ctx;
          inner_ctx.insert(inner_ctx.begin(), CtxEntry{renamed, first.term->binder.sort});
          steps.push_back(Redex{detail::context_path(L), Rule::R4, 0});
          L.frames.push_back(CtxFrame{false, ValueTerm{}, {}, Binder{renamed, first.term->binder.sort}});
          L.inputs[0] = typed(sig, inner_ctx, cont);
        }
      } else {
        // Typing makes the left neighbour of the first left-facing input a
        // matching right-facing term; fire the interaction.
        const TypedTerm& prev = L.inputs[i - 1];
        const TypedTerm& cur = L.inputs[i];
        if (cur.term->kind == TermKind::PutL && prev.term->kind == TermKind::GetR) {
          steps.push_back(Redex{detail::context_path(L), Rule::R2, static_cast<int>(i - 1)});
          size_t vn = value_free_vars(cur.term->value).size();
          ValueContext vctx(cur.jd.ctx.begin(), cur.jd.ctx.begin() + vn);
          ValueContext sctx(cur.jd.ctx.begin() + vn, cur.jd.ctx.end());
          TermPtr interacted =
              subst_single(prev.term->cont, prev.term->binder.name, cur.term->value);
          ValueContext ictx = prev.jd.ctx;
          ictx.insert(ictx.end(), vctx.begin(), vctx.end());
          L.inputs[i - 1] = typed(sig, ictx, interacted);
          L.inputs[i] = typed(sig, sctx, cur.term->cont);
        } else if (cur.term->kind == TermKind::GetL && prev.term->kind == TermKind::PutR) {
          steps.push_back(Redex{detail::context_path(L), Rule::R1, static_cast<int>(i - 1)});
          size_t vn = value_free_vars(prev.term->value).size();
          ValueContext pctx(prev.jd.ctx.begin(), prev.jd.ctx.end() - vn);
          ValueContext vctx(prev.jd.ctx.end() - vn, prev.jd.ctx.end());
          TermPtr interacted =
              subst_single(cur.term->cont, cur.term->binder.name, prev.term->value);
          ValueContext ictx = vctx;
          ictx.insert(ictx.end(), cur.jd.ctx.begin(), cur.jd.ctx.end());
          L.inputs[i - 1] = typed(sig, pctx, prev.term->cont);
          L.inputs[i] = typed(sig, ictx, interacted);
        } else {
          fail(Errc::InvalidRedex, "ill-typed context: no interaction available");
        }
      }
    }
    unsigned long long next = context_size(L);
    if (next >= measure) fail(Errc::InvalidRedex, "context size failed to decrease");
    measure = next;
  }
  return ActiveReduction{std::move(L), std::move(steps)};
}

}  // namespace corner
