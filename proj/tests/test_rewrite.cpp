#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "corner/rewrite.hpp"
#include "fixtures.hpp"

using namespace corner;
using namespace corner::fixtures;

namespace {

std::vector<Rule> rule_sequence(const Trace& tr) {
  std::vector<Rule> out;
  for (const TraceStep& s : tr.steps) out.push_back(s.redex.rule);
  return out;
}

}  // namespace

TEST_CASE("golden: clothes example normalizes in two steps, R1 then R0") {
  Signature sig = clothes();
  ValueContext ctx = {{"p", "Pants"}, {"f", "Fabric"}, {"t", "Thread"}};
  Judgment before = check_term(sig, ctx, clothes_main());

  Trace tr = normalize(clothes_main());
  CHECK(tr.steps.size() == 2);
  CHECK(rule_sequence(tr) == std::vector<Rule>{Rule::R1, Rule::R0});
  CHECK(tr.steps[0].redex.path.empty());
  CHECK(tr.steps[0].redex.detail == 0);
  CHECK(tr.steps[1].redex.path.empty());

  // Intermediate and final forms, exactly as in the worked reduction.
  CHECK(print_term(tr.steps[0].term) ==
        "let x:Pants, y:Shirt <- ([p] | [sew(cut(f), t)]) in [pack(x, y)]");
  CHECK(print_term(tr.result()) == "[pack(p, sew(cut(f), t))]");

  // Subject reduction along the trace.
  for (const TraceStep& s : tr.steps) CHECK(check_term(sig, ctx, s.term) == before);
}

TEST_CASE("golden: coffee example normalizes in four steps, R1 R6 R2 R0") {
  Signature sig = coffee();
  ValueContext ctx = {{"p", "Person"}, {"m", "Money"}, {"b", "Beans"}};
  Judgment before = check_term(sig, ctx, coffee_main());

  Trace tr = normalize(coffee_main());
  CHECK(tr.steps.size() == 4);
  CHECK(rule_sequence(tr) == std::vector<Rule>{Rule::R1, Rule::R6, Rule::R2, Rule::R0});

  TermPtr expect = get_r(
      "w", "Water",
      seq(a("pair", {a("drink", {v("p"), a("brew", {v("m"), v("b"), v("w")})}), a("done", {})})));
  CHECK(alpha_eq(tr.result(), expect));
  CHECK(print_term(tr.result()) == "getR(w:Water. [pair(drink(p, brew(m, b, w)), done())])");

  for (const TraceStep& s : tr.steps) CHECK(check_term(sig, ctx, s.term) == before);
}

TEST_CASE("redex enumeration basics") {
  CHECK(redexes(seq(v("u"))).empty());

  // putR | getL adjacent inside a let: an R1 redex at the root, pair 0.
  std::vector<Redex> rs = redexes(clothes_main());
  REQUIRE(!rs.empty());
  CHECK(rs.front().rule == Rule::R1);
  CHECK(rs.front().path.empty());
  CHECK(rs.front().detail == 0);

  TermPtr r7 = put_r(v("x"), put_l(v("y"), seq(v("u"))));
  std::vector<Redex> rs7 = redexes(r7);
  REQUIRE(rs7.size() == 1);
  CHECK(rs7.front().rule == Rule::R7);
  CHECK(rs7.front().path.empty());
}

TEST_CASE("redexes are ordered by path, then rule, then pair index") {
  // let a,b,c,d <- (putR|getL|putR|getL) in r has two R1 pairs.
  Signature sig = clothes();
  TermPtr pr1 = put_r(a("cut", {v("f1")}), seq(v("p1")));
  TermPtr gl1 = get_l("a1", "Pattern", seq(a("sew", {v("a1"), v("t1")})));
  TermPtr pr2 = put_r(a("cut", {v("f2")}), seq(v("p2")));
  TermPtr gl2 = get_l("a2", "Pattern", seq(a("sew", {v("a2"), v("t2")})));
  TermPtr t = let_in({Binder{"w", "Pants"}, Binder{"x", "Shirt"}, Binder{"y", "Pants"},
                      Binder{"z", "Shirt"}},
                     {pr1, gl1, pr2, gl2}, seq(a("pack", {v("w"), v("x")})));
  (void)sig;
  std::vector<Redex> rs = redexes(t);
  REQUIRE(rs.size() >= 2);
  CHECK(rs[0].rule == Rule::R1);
  CHECK(rs[0].detail == 0);
  CHECK(rs[1].rule == Rule::R1);
  CHECK(rs[1].detail == 2);
}

TEST_CASE("apply: R0 is value substitution") {
  TermPtr t = let_in({Binder{"x", "Pants"}, Binder{"y", "Shirt"}},
                     {seq(v("p")), seq(a("sew", {a("cut", {v("f")}), v("t")}))},
                     seq(a("pack", {v("x"), v("y")})));
  std::vector<Redex> rs = redexes(t);
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].rule == Rule::R0);
  CHECK(print_term(corner::apply(t, rs[0])) == "[pack(p, sew(cut(f), t))]");
}

TEST_CASE("apply: R7 commutes puts and preserves the judgment") {
  Signature sig = abstract2();
  TermPtr t = put_r(a("mkA", {}), put_l(a("mkB", {}), seq(v("u"))));
  ValueContext ctx = {{"u", "A"}};
  Judgment before = check_term(sig, ctx, t);
  std::vector<Redex> rs = redexes(t);
  REQUIRE(rs.size() == 1);
  TermPtr rewritten = corner::apply(t, rs[0]);
  CHECK(print_term(rewritten) == "putL(mkB(), putR(mkA(), [u]))");
  CHECK(check_term(sig, ctx, rewritten) == before);
  CHECK(term_size(rewritten) < term_size(t));
}

TEST_CASE("R8 fires only when the binder does not occur in the value") {
  // putR(fab(x), getL(x:A. [x])) is well-typed with a free x that the
  // getL binder shadows textually; the side condition blocks R8.
  TermPtr blocked = put_r(a("fab", {v("x")}), get_l("x", "A", seq(v("x"))));
  CHECK(redexes(blocked).empty());
  // After cleansing the binder is renamed and R8 fires.
  TermPtr clean = cleanse(blocked);
  std::vector<Redex> rs = redexes(clean);
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].rule == Rule::R8);

  TermPtr ok = put_r(a("fab", {v("y")}), get_l("x", "A", seq(a("g2", {v("x"), a("mkB", {})}))));
  std::vector<Redex> rs2 = redexes(ok);
  REQUIRE(rs2.size() == 1);
  CHECK(rs2[0].rule == Rule::R8);
  CHECK(print_term(corner::apply(ok, rs2[0])) ==
        "getL(x:A. putR(fab(y), [g2(x, mkB())]))");
}

TEST_CASE("R9 is genuinely blocked when the received value is sent back") {
  // getR(x:A. putL(x, [u])) is the horizontal identity on A?; it is normal.
  TermPtr idar = get_r("x", "A", put_l(v("x"), seq(v("u"))));
  CHECK(redexes(idar).empty());

  TermPtr movable = get_r("x", "A", put_l(v("w"), get_r("z", "B", seq(a("h2", {v("z"), v("x")})))));
  std::vector<Redex> rs = redexes(movable);
  REQUIRE(!rs.empty());
  CHECK(rs[0].rule == Rule::R9);
}

TEST_CASE("R10 commutes gets") {
  TermPtr t = get_r("x", "A", get_l("y", "B", seq(a("h2", {v("y"), v("x")}))));
  std::vector<Redex> rs = redexes(t);
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].rule == Rule::R10);
  CHECK(print_term(corner::apply(t, rs[0])) == "getL(y:B. getR(x:A. [h2(y, x)]))");
}

TEST_CASE("normalize: already-normal terms take zero steps") {
  Trace tr = normalize(seq(v("u")));
  CHECK(tr.steps.empty());
  CHECK(tr.result() == tr.start);
}

TEST_CASE("normal forms are let-free and redex-free on the goldens") {
  for (TermPtr t : {clothes_main(), coffee_main()}) {
    TermPtr nf = normal_form(t);
    CHECK(redexes(nf).empty());
    // No let node anywhere.
    std::vector<TermPtr> stack{nf};
    while (!stack.empty()) {
      TermPtr cur = stack.back();
      stack.pop_back();
      CHECK(cur->kind != TermKind::Let);
      if (cur->cont) stack.push_back(cur->cont);
      for (const TermPtr& in : cur->inputs) stack.push_back(in);
    }
  }
}

TEST_CASE("termination bound: step count <= size - 2") {
  for (TermPtr t : {clothes_main(), coffee_main()}) {
    Trace tr = normalize(t);
    CHECK(tr.steps.size() <= term_size(t) - 2);
    unsigned long long prev = term_size(t);
    for (const TraceStep& s : tr.steps) {
      unsigned long long next = term_size(s.term);
      CHECK(next < prev);
      prev = next;
    }
  }
}

TEST_CASE("convertible: one-step reducts and distinct normal forms") {
  Signature sig = clothes();
  ValueContext ctx = {{"p", "Pants"}, {"f", "Fabric"}, {"t", "Thread"}};
  TypedTerm whole = typed(sig, ctx, clothes_main());
  TermPtr stepped = corner::apply(whole.term, redexes(whole.term).front());
  CHECK(convertible(whole, typed(sig, ctx, stepped)));

  Signature ab = abstract2();
  TypedTerm u1 = typed(ab, {{"x", "A"}}, seq(a("g2", {v("x"), a("mkB", {})})));
  TypedTerm u2 = typed(ab, {{"x", "A"}}, seq(a("fba", {a("fab", {v("x")})})));
  CHECK_FALSE(convertible(u1, u2));
  CHECK(joinable(u1, u1));
  CHECK_FALSE(joinable(u1, u2));

  TypedTerm other = typed(ab, {{"y", "A"}}, seq(v("y")));
  CHECK_THROWS_AS(convertible(u1, other), Error);
}

TEST_CASE("trace line format") {
  Trace tr = normalize(clothes_main());
  std::vector<std::string> lines = trace_lines(tr);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] ==
        "step 0: R1 at [] :: let x:Pants, y:Shirt <- ([p] | [sew(cut(f), t)]) in [pack(x, y)]");
  CHECK(lines[1] == "step 1: R0 at [] :: [pack(p, sew(cut(f), t))]");
}

TEST_CASE("max-steps safety valve") {
  Trace tr = normalize(coffee_main(), 2);
  CHECK(tr.truncated);
  CHECK(tr.steps.size() == 2);
}

TEST_CASE("cleanse: establishes the binder invariant without touching clean terms") {
  TermPtr t = coffee_main();
  CHECK(alpha_eq(cleanse(t), t));
  CHECK(print_term(cleanse(t)) == print_term(t));  // untouched when already clean

  TermPtr shadowy = get_l("x", "A", let_in({Binder{"x", "B"}}, {seq(a("fab", {v("x")}))},
                                           seq(v("x"))));
  TermPtr c = cleanse(shadowy);
  CHECK(alpha_eq(c, shadowy));
  CHECK(c->binder.name == "x");
  CHECK(c->cont->binders[0].name != "x");
}
