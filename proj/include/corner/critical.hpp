#pragma once

#include <string>
#include <vector>

#include "corner/generator.hpp"
#include "corner/rewrite.hpp"

namespace corner {

// The twelve classes of critical pairs, named by the two rules that overlap.
enum class PairClass {
  C1_7, C1_8, C2_9, C2_10,
  C3_5, C3_6, C4_5, C4_6,
  C5_7, C5_8, C6_9, C6_10,
};

inline const std::vector<PairClass>& all_pair_classes() {
  static const std::vector<PairClass> all = {
      PairClass::C1_7, PairClass::C1_8, PairClass::C2_9,  PairClass::C2_10,
      PairClass::C3_5, PairClass::C3_6, PairClass::C4_5,  PairClass::C4_6,
      PairClass::C5_7, PairClass::C5_8, PairClass::C6_9,  PairClass::C6_10,
  };
  return all;
}

inline const char* pair_class_name(PairClass c) {
  switch (c) {
    case PairClass::C1_7: return "1-7";
    case PairClass::C1_8: return "1-8";
    case PairClass::C2_9: return "2-9";
    case PairClass::C2_10: return "2-10";
    case PairClass::C3_5: return "3-5";
    case PairClass::C3_6: return "3-6";
    case PairClass::C4_5: return "4-5";
    case PairClass::C4_6: return "4-6";
    case PairClass::C5_7: return "5-7";
    case PairClass::C5_8: return "5-8";
    case PairClass::C6_9: return "6-9";
    case PairClass::C6_10: return "6-10";
  }
  return "?";
}

struct CriticalPair {
  TypedTerm apex;
  Redex outer;  // the let-level redex (R1..R6)
  Redex inner;  // the commuting redex (R7..R10) inside one input
  TermPtr left;   // apply(apex, outer)
  TermPtr right;  // apply(apex, inner)
};

namespace cpdetail {

struct Builder {
  Generator gen;
  SplitRng rng;
  int filler_budget = 10;

  Builder(const Signature& sig, const GenConfig& cfg) : gen(sig, cfg), rng(cfg.seed) {
    sig_sorts_ = sig.sorts();
  }

  TypedTerm filler(const Protocol& u, const Protocol& w, SplitRng& r) {
    Sort s = gen.gen_sort(r);
    for (int attempt = 0; attempt < 16; ++attempt) {
      SplitRng ri = r.child(attempt);
      try {
        TermPtr t = gen.gen_term_slots({Slot::make_gap()}, u, s, w, filler_budget, ri);
        return gen.type_with_known_vars(t);
      } catch (const Error& e) {
        if (e.code() != Errc::Unsatisfiable) throw;
        s = gen.gen_sort(ri);
      }
    }
    fail(Errc::Unsatisfiable, "no filler of shape (" + print_protocol(u) + ", _, " +
                                  print_protocol(w) + ")");
  }

  // Chained fillers ending at `end`: protocols C_0 .. C_na with C_na = end.
  std::vector<TypedTerm> fillers_before(size_t count, const Protocol& end, SplitRng& r) {
    std::vector<Protocol> chain{end};
    for (size_t i = 0; i < count; ++i) chain.insert(chain.begin(), gen.gen_protocol(r));
    std::vector<TypedTerm> out;
    for (size_t i = 0; i < count; ++i) out.push_back(filler(chain[i], chain[i + 1], r));
    return out;
  }

  std::vector<TypedTerm> fillers_after(size_t count, const Protocol& start, SplitRng& r) {
    std::vector<Protocol> chain{start};
    for (size_t i = 0; i < count; ++i) chain.push_back(gen.gen_protocol(r));
    std::vector<TypedTerm> out;
    for (size_t i = 0; i < count; ++i) out.push_back(filler(chain[i], chain[i + 1], r));
    return out;
  }

  std::vector<TypedTerm> fillers_between(size_t count, const Protocol& start, const Protocol& end,
                                         SplitRng& r) {
    std::vector<Protocol> chain{start};
    for (size_t i = 1; i < count; ++i) chain.push_back(gen.gen_protocol(r));
    chain.push_back(end);
    std::vector<TypedTerm> out;
    for (size_t i = 0; i < count; ++i) out.push_back(filler(chain[i], chain[i + 1], r));
    return out;
  }

  // Assembles the let over the given typed inputs with a generated body.
  TypedTerm assemble(const std::vector<TypedTerm>& inputs, SplitRng& r) {
    std::vector<Binder> binders;
    Slots body_slots;
    std::vector<TermPtr> ins;
    for (const TypedTerm& in : inputs) {
      std::string x = gen.fresh_var(in.jd.result);
      binders.push_back(Binder{x, in.jd.result});
      body_slots.push_back(Slot::required(x, in.jd.result));
      ins.push_back(in.term);
    }
    SplitRng rb = r.child(999);
    Sort body_sort = gen.gen_sort(rb);
    if (gen.term_cost(body_slots, {}, body_sort, {}, 10) >= gendetail::kInf) {
      bool found = false;
      for (const Sort& s : gen_sorts()) {
        if (gen.term_cost(body_slots, {}, s, {}, 10) < gendetail::kInf) {
          body_sort = s;
          found = true;
          break;
        }
      }
      if (!found) fail(Errc::Unsatisfiable, "no body sort can consume the binders");
    }
    TermPtr body = gen.gen_term_slots(body_slots, {}, body_sort, {}, 6, rb);
    TermPtr whole = let_in(std::move(binders), std::move(ins), body);
    return gen.type_with_known_vars(whole);
  }

  std::vector<Sort> gen_sorts() const { return sig_sorts_; }
  std::vector<Sort> sig_sorts_;
};

}  // namespace cpdetail

// Generates a well-typed instance of the class's apex schema together with
// its two one-step reducts.
inline CriticalPair critical_pair(const Signature& sig, PairClass cls, std::uint64_t seed,
                                  const GenConfig& base_cfg = {}) {
  GenConfig cfg = base_cfg.with_seed(seed);
  cpdetail::Builder b(sig, cfg);
  SplitRng top(seed ^ 0xc0ffee);

  for (int attempt = 0; attempt < 64; ++attempt) {
    SplitRng r = top.child(attempt);
    try {
      Generator& g = b.gen;
      size_t na = r.below(3);
      std::vector<TypedTerm> inputs;
      Redex outer{{}, Rule::R0, 0}, inner{{}, Rule::R0, 0};

      auto core_put_get = [&](bool inner_is_put) {
        // putR(v, putL(u,t) | getL(y,t)) followed by getL(x.s).
        Sort av = g.gen_sort(r);
        Protocol ut = g.gen_protocol(r), wt = g.gen_protocol(r), ws = g.gen_protocol(r);
        ValueTerm v = g.gen_value({Slot::make_gap()}, av, r);
        TypedTerm core1, core2;
        if (inner_is_put) {
          Sort au = g.gen_sort(r);
          ValueTerm u = g.gen_value({Slot::make_gap()}, au, r);
          TermPtr t = g.gen_term_slots({Slot::make_gap()}, ut, g.gen_sort(r), wt, 8, r);
          core1 = g.type_with_known_vars(put_r(v, put_l(u, t)));
        } else {
          Sort ay = g.gen_sort(r);
          std::string y = g.fresh_var(ay);
          TermPtr t = g.gen_term_slots({Slot::required(y, ay), Slot::make_gap()}, ut,
                                       g.gen_sort(r), wt, 8, r);
          core1 = g.type_with_known_vars(put_r(v, get_l(y, ay, t)));
        }
        std::string x = g.fresh_var(av);
        Sort b2 = g.gen_sort(r);
        TermPtr s = g.gen_term_slots({Slot::required(x, av), Slot::make_gap()},
                                     core1.jd.right.empty() ? Protocol{} : tail(core1.jd.right),
                                     b2, ws, 8, r);
        core2 = g.type_with_known_vars(get_l(x, av, s));
        std::vector<TypedTerm> pre = b.fillers_before(na, core1.jd.left, r);
        std::vector<TypedTerm> post = b.fillers_after(r.below(2), core2.jd.right, r);
        inputs = pre;
        inputs.push_back(core1);
        inputs.push_back(core2);
        inputs.insert(inputs.end(), post.begin(), post.end());
        outer = Redex{{}, Rule::R1, static_cast<int>(na)};
        inner = Redex{{static_cast<int>(na)}, inner_is_put ? Rule::R7 : Rule::R8, 0};
      };

      auto core_get_put = [&](bool inner_is_put) {
        // getR(x. putL(v,t) | getL(y,t)) followed by putL(u,s).
        Sort ax = g.gen_sort(r);
        Protocol ut = g.gen_protocol(r), wt = g.gen_protocol(r), ws = g.gen_protocol(r);
        std::string x = g.fresh_var(ax);
        TypedTerm core1;
        if (inner_is_put) {
          Sort avs = g.gen_sort(r);
          ValueTerm v = g.gen_value({Slot::make_gap()}, avs, r);
          TermPtr t = g.gen_term_slots({Slot::make_gap(), Slot::required(x, ax)}, ut,
                                       g.gen_sort(r), wt, 8, r);
          core1 = g.type_with_known_vars(get_r(x, ax, put_l(v, t)));
        } else {
          Sort ay = g.gen_sort(r);
          std::string y = g.fresh_var(ay);
          TermPtr t = g.gen_term_slots(
              {Slot::required(y, ay), Slot::make_gap(), Slot::required(x, ax)}, ut, g.gen_sort(r),
              wt, 8, r);
          core1 = g.type_with_known_vars(get_r(x, ax, get_l(y, ay, t)));
        }
        ValueTerm u = g.gen_value({Slot::make_gap()}, ax, r);
        Sort b2 = g.gen_sort(r);
        TermPtr s = g.gen_term_slots({Slot::make_gap()}, wt, b2, ws, 8, r);
        TypedTerm core2 = g.type_with_known_vars(put_l(u, s));
        std::vector<TypedTerm> pre = b.fillers_before(na, core1.jd.left, r);
        std::vector<TypedTerm> post = b.fillers_after(r.below(2), core2.jd.right, r);
        inputs = pre;
        inputs.push_back(core1);
        inputs.push_back(core2);
        inputs.insert(inputs.end(), post.begin(), post.end());
        outer = Redex{{}, Rule::R2, static_cast<int>(na)};
        inner = Redex{{static_cast<int>(na)}, inner_is_put ? Rule::R9 : Rule::R10, 0};
      };

      auto core_edges = [&](bool left_put, bool right_put) {
        // putL/getL as the first input, putR/getR as the last.
        Protocol ut = g.gen_protocol(r), ws = g.gen_protocol(r);
        TypedTerm first, last;
        if (left_put) {
          Sort av = g.gen_sort(r);
          ValueTerm v = g.gen_value({Slot::make_gap()}, av, r);
          TermPtr t = g.gen_term_slots({Slot::make_gap()}, ut, g.gen_sort(r),
                                       g.gen_protocol(r), 8, r);
          first = g.type_with_known_vars(put_l(v, t));
        } else {
          Sort ay = g.gen_sort(r);
          std::string y = g.fresh_var(ay);
          TermPtr t = g.gen_term_slots({Slot::required(y, ay), Slot::make_gap()}, ut,
                                       g.gen_sort(r), g.gen_protocol(r), 8, r);
          first = g.type_with_known_vars(get_l(y, ay, t));
        }
        size_t mid = r.below(3);
        Protocol ul = mid == 0 ? first.jd.right : g.gen_protocol(r);
        std::vector<TypedTerm> between = b.fillers_between(mid, first.jd.right, ul, r);
        if (right_put) {
          Sort au = g.gen_sort(r);
          ValueTerm u = g.gen_value({Slot::make_gap()}, au, r);
          TermPtr s = g.gen_term_slots({Slot::make_gap()}, ul, g.gen_sort(r), ws, 8, r);
          last = g.type_with_known_vars(put_r(u, s));
        } else {
          Sort ax = g.gen_sort(r);
          std::string x = g.fresh_var(ax);
          TermPtr s = g.gen_term_slots({Slot::make_gap(), Slot::required(x, ax)}, ul,
                                       g.gen_sort(r), ws, 8, r);
          last = g.type_with_known_vars(get_r(x, ax, s));
        }
        inputs.clear();
        inputs.push_back(first);
        inputs.insert(inputs.end(), between.begin(), between.end());
        inputs.push_back(last);
        outer = Redex{{}, left_put ? Rule::R3 : Rule::R4, 0};
        inner = Redex{{}, right_put ? Rule::R5 : Rule::R6, 0};
      };

      auto core_last = [&](bool outer_get, bool inner_is_put) {
        // ...| putR(v, putL(u,t))  /  ...| getR(x. putL(v,t)) and the getL twins.
        Protocol ut = g.gen_protocol(r), wt = g.gen_protocol(r);
        TypedTerm core;
        if (!outer_get) {
          Sort av = g.gen_sort(r);
          ValueTerm v = g.gen_value({Slot::make_gap()}, av, r);
          if (inner_is_put) {
            Sort au = g.gen_sort(r);
            ValueTerm u = g.gen_value({Slot::make_gap()}, au, r);
            TermPtr t = g.gen_term_slots({Slot::make_gap()}, ut, g.gen_sort(r), wt, 8, r);
            core = g.type_with_known_vars(put_r(v, put_l(u, t)));
          } else {
            Sort ay = g.gen_sort(r);
            std::string y = g.fresh_var(ay);
            TermPtr t = g.gen_term_slots({Slot::required(y, ay), Slot::make_gap()}, ut,
                                         g.gen_sort(r), wt, 8, r);
            core = g.type_with_known_vars(put_r(v, get_l(y, ay, t)));
          }
        } else {
          Sort ax = g.gen_sort(r);
          std::string x = g.fresh_var(ax);
          if (inner_is_put) {
            Sort avs = g.gen_sort(r);
            ValueTerm v = g.gen_value({Slot::make_gap()}, avs, r);
            TermPtr t = g.gen_term_slots({Slot::make_gap(), Slot::required(x, ax)}, ut,
                                         g.gen_sort(r), wt, 8, r);
            core = g.type_with_known_vars(get_r(x, ax, put_l(v, t)));
          } else {
            Sort ay = g.gen_sort(r);
            std::string y = g.fresh_var(ay);
            TermPtr t = g.gen_term_slots(
                {Slot::required(y, ay), Slot::make_gap(), Slot::required(x, ax)}, ut,
                g.gen_sort(r), wt, 8, r);
            core = g.type_with_known_vars(get_r(x, ax, get_l(y, ay, t)));
          }
        }
        std::vector<TypedTerm> pre = b.fillers_before(na, core.jd.left, r);
        inputs = pre;
        inputs.push_back(core);
        outer = Redex{{}, outer_get ? Rule::R6 : Rule::R5, 0};
        Rule in = inner_is_put ? (outer_get ? Rule::R9 : Rule::R7)
                               : (outer_get ? Rule::R10 : Rule::R8);
        inner = Redex{{static_cast<int>(na)}, in, 0};
      };

      switch (cls) {
        case PairClass::C1_7: core_put_get(true); break;
        case PairClass::C1_8: core_put_get(false); break;
        case PairClass::C2_9: core_get_put(true); break;
        case PairClass::C2_10: core_get_put(false); break;
        case PairClass::C3_5: core_edges(true, true); break;
        case PairClass::C3_6: core_edges(true, false); break;
        case PairClass::C4_5: core_edges(false, true); break;
        case PairClass::C4_6: core_edges(false, false); break;
        case PairClass::C5_7: core_last(false, true); break;
        case PairClass::C5_8: core_last(false, false); break;
        case PairClass::C6_9: core_last(true, true); break;
        case PairClass::C6_10: core_last(true, false); break;
      }

      TypedTerm apex = b.assemble(inputs, r);
      // Both redexes must genuinely occur on the apex.
      std::vector<Redex> rs = redexes(apex.term);
      auto has = [&](const Redex& rd) {
        for (const Redex& x : rs)
          if (x == rd) return true;
        return false;
      };
      if (!has(outer) || !has(inner)) fail(Errc::Unsatisfiable, "redex pattern did not form");
      TermPtr left = corner::apply(apex.term, outer);
      TermPtr right = corner::apply(apex.term, inner);
      return CriticalPair{apex, outer, inner, left, right};
    } catch (const Error& e) {
      if (e.code() != Errc::Unsatisfiable) throw;
    }
  }
  fail(Errc::Unsatisfiable, std::string("no critical pair instance for class ") +
                                pair_class_name(cls));
}

}  // namespace corner
