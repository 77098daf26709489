#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "corner/context.hpp"
#include "corner/generator.hpp"
#include "fixtures.hpp"

using namespace corner;
using namespace corner::fixtures;

TEST_CASE("plug: single-hole let context") {
  Signature sig = abstract2();
  TypedTerm a1 = typed(sig, {{"u", "A"}}, seq(v("u")));
  TypedTerm body = typed(sig, {{"x", "A"}, {"y", "B"}}, seq(a("g2", {v("x"), v("y")})));
  TermContext L{{},
                {Binder{"x", "A"}, Binder{"y", "B"}},
                {a1},
                body,
                {{}, {}}};
  validate_context(sig, L);
  TypedTerm t = typed(sig, {{"w", "B"}}, seq(v("w")));
  TypedTerm plugged = plug(sig, L, {t});
  CHECK(print_term(plugged.term) == "let x:A, y:B <- ([u] | [w]) in [g2(x, y)]");

  CHECK_THROWS_AS(plug(sig, L, {}), Error);       // arity
  TypedTerm wrong = typed(sig, {{"w", "A"}}, seq(v("w")));
  CHECK_THROWS_AS(plug(sig, L, {wrong}), Error);  // sort
}

TEST_CASE("plug: put and get frames wrap the let") {
  Signature sig = abstract2();
  TypedTerm a1 = typed(sig, {{"z", "A"}, {"u", "A"}},
                       put_r(v("u"), seq(v("z"))));  // (.., A, [A!])
  TypedTerm body = typed(sig, {{"x", "A"}, {"y", "B"}}, seq(a("g2", {v("x"), v("y")})));
  TermContext L{{CtxFrame{true, a("mkB", {}), {}, Binder{}},
                 CtxFrame{false, ValueTerm{}, {}, Binder{"z", "A"}}},
                {Binder{"x", "A"}, Binder{"y", "B"}},
                {a1},
                body,
                {{send("A")}, {}}};
  validate_context(sig, L);
  TypedTerm t = typed(sig, {{"q", "A"}}, get_l("h", "A", seq(a("h2", {a("fab", {v("h")}), v("q")}))));
  TypedTerm plugged = plug(sig, L, {t});
  CHECK(print_term(plugged.term) ==
        "putL(mkB(), getL(z:A. let x:A, y:B <- (putR(u, [z]) | getL(h:A. [h2(fab(h), q)])) in "
        "[g2(x, y)]))");
  CHECK(plugged.jd.left == Protocol({receive("B"), send("A")}));
}

TEST_CASE("reduce_to_active: already-active contexts are returned unchanged") {
  Signature sig = abstract2();
  // a1 = getR(y:A. [g2(y, mkB())]) is right-facing with right protocol A?.
  TypedTerm a1 = typed(sig, {}, get_r("y", "A", seq(a("g2", {v("y"), a("mkB", {})}))));
  TypedTerm body = typed(sig, {{"x", "A"}, {"y2", "B"}}, seq(a("g2", {v("x"), v("y2")})));
  TermContext L{{},
                {Binder{"x", "A"}, Binder{"y2", "B"}},
                {a1},
                body,
                {{receive("A")}, {}}};
  validate_context(sig, L);
  REQUIRE(is_active(L));
  ActiveReduction red = reduce_to_active(sig, L);
  CHECK(red.steps.empty());
  CHECK(print_term(red.context.inputs[0].term) == print_term(a1.term));
}

TEST_CASE("reduce_to_active: hoists a leading putL") {
  Signature sig = abstract2();
  // a1 = putL(mkA(), getR(y:A. [g2(y, mkB())])), left-facing.
  TypedTerm a1 = typed(
      sig, {}, put_l(a("mkA", {}), get_r("y", "A", seq(a("g2", {v("y"), a("mkB", {})})))));
  TypedTerm body = typed(sig, {{"x", "A"}, {"y2", "B"}}, seq(a("g2", {v("x"), v("y2")})));
  TermContext L{{},
                {Binder{"x", "A"}, Binder{"y2", "B"}},
                {a1},
                body,
                {{receive("A")}, {}}};
  validate_context(sig, L);
  ActiveReduction red = reduce_to_active(sig, L);
  CHECK(is_active(red.context));
  REQUIRE(red.steps.size() == 1);
  CHECK(red.steps[0].rule == Rule::R3);
  CHECK(red.context.frames.size() == 1);
  CHECK(red.context.frames[0].is_put);
  CHECK(context_size(red.context) < context_size(L));
}

TEST_CASE("reduce_to_active: reduces a let-binding input first") {
  Signature sig = abstract2();
  // a1 = let z:A <- ([mkA()]) in getR(y:A. [g2(z, fab(y))])
  TypedTerm a1 = typed(sig, {},
                       let_in({Binder{"z", "A"}}, {seq(a("mkA", {}))},
                              get_r("y", "A", seq(a("g2", {v("z"), a("fab", {v("y")})})))));
  TypedTerm body = typed(sig, {{"x", "A"}, {"y2", "B"}}, seq(a("g2", {v("x"), v("y2")})));
  TermContext L{{},
                {Binder{"x", "A"}, Binder{"y2", "B"}},
                {a1},
                body,
                {{receive("A")}, {}}};
  validate_context(sig, L);
  ActiveReduction red = reduce_to_active(sig, L);
  CHECK(is_active(red.context));
  REQUIRE(!red.steps.empty());
  CHECK(red.steps[0].rule == Rule::R0);  // the inner let fires first
  CHECK(red.steps[0].path == std::vector<int>{0});
}

TEST_CASE("reduce_to_active: replay on plugged terms reaches the active plug") {
  Signature sig = abstract2();
  int checked = 0;
  for (std::uint64_t s = 0; s < 60; ++s) {
    GenConfig cfg = GenConfig{}.with_seed(s);
    Generator g(sig, cfg);
    SplitRng rng(cfg.seed);
    TermContext L = g.gen_context(true, rng);
    if (L.inputs.empty()) continue;
    ActiveReduction red = reduce_to_active(sig, L);
    CHECK(is_active(red.context));

    // Fill the hole, replay the recorded steps, compare with plugging the
    // reduced context directly.
    std::vector<TypedTerm> ts;
    size_t holes = L.binders.size() - L.inputs.size();
    bool ok = true;
    for (size_t i = 0; i < holes && ok; ++i) {
      SplitRng ri = rng.child(9100 + i);
      try {
        TermPtr t = g.gen_term_slots({Slot::make_gap()}, L.hole_protocols[i],
                                     L.binders[L.inputs.size() + i].sort, L.hole_protocols[i + 1],
                                     8, ri);
        ts.push_back(g.type_with_known_vars(t));
      } catch (const Error& e) {
        if (e.code() != Errc::Unsatisfiable) throw;
        ok = false;
      }
    }
    if (!ok) continue;
    TypedTerm before = plug(sig, L, ts);
    TypedTerm after = plug(sig, red.context, ts);
    TermPtr replayed = before.term;
    for (const Redex& r : red.steps) replayed = corner::apply(replayed, r);
    CHECK(alpha_eq(replayed, after.term));
    ++checked;
  }
  CHECK(checked > 10);
}

TEST_CASE("reduce_to_active: errors on empty or non-effectful contexts") {
  Signature sig = abstract2();
  TypedTerm body = typed(sig, {{"x", "A"}, {"y2", "B"}}, seq(a("g2", {v("x"), v("y2")})));
  TypedTerm a1 = typed(sig, {}, get_r("y", "A", seq(a("g2", {v("y"), a("mkB", {})}))));
  TermContext empty_ctx{{}, {Binder{"x", "A"}, Binder{"y2", "B"}}, {}, body,
                        {{receive("A")}, {receive("A")}, {}}};
  validate_context(sig, empty_ctx);
  CHECK_THROWS_AS(reduce_to_active(sig, empty_ctx), Error);

  TermContext lazy{{}, {Binder{"x", "A"}, Binder{"y2", "B"}},
                   {typed(sig, {}, seq(a("mkA", {})))}, body, {{}, {}}};
  validate_context(sig, lazy);
  CHECK_THROWS_AS(reduce_to_active(sig, lazy), Error);
}
