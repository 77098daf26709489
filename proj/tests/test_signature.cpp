#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "corner/signature.hpp"
#include "fixtures.hpp"

using namespace corner;
using namespace corner::fixtures;

TEST_CASE("check_value: VAR rule instance") {
  Signature sig = abstract2();
  CHECK(check_value({{"x", "A"}}, v("x"), sig) == "A");
}

TEST_CASE("check_value: worked example values") {
  Signature sig = clothes();
  CHECK(check_value({{"f", "Fabric"}}, a("cut", {v("f")}), sig) == "Pattern");
  CHECK(check_value({{"a", "Pattern"}, {"t", "Thread"}}, a("sew", {v("a"), v("t")}), sig) ==
        "Shirt");
}

TEST_CASE("check_value: linear in-order context use") {
  Signature sig = abstract2();
  // y unused, x reused.
  CHECK_THROWS_AS(check_value({{"x", "A"}, {"y", "A"}}, a("g2", {v("x"), a("fab", {v("x")})}), sig),
                  Error);
  try {
    check_value({{"x", "A"}, {"y", "A"}}, a("g2", {v("x"), a("fab", {v("x")})}), sig);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ContextMismatch);
  }
  // Out of order use.
  CHECK_THROWS_AS(check_value({{"x", "A"}, {"y", "B"}}, a("g2", {a("fba", {v("y")}), a("fab", {v("x")})}), sig),
                  Error);
}

TEST_CASE("check_value: error taxonomy") {
  Signature sig = clothes();
  try {
    check_value({}, v("zz"), sig);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownVariable);
  }
  try {
    check_value({{"f", "Fabric"}}, a("shred", {v("f")}), sig);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownOp);
  }
  try {
    check_value({{"f", "Fabric"}}, a("sew", {v("f")}), sig);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ArityMismatch);
  }
  try {
    check_value({{"f", "Fabric"}, {"t", "Thread"}}, a("sew", {v("f"), v("t")}), sig);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SortMismatch);
  }
}

TEST_CASE("subst_value: identity and worked example") {
  Signature sig = clothes();
  ValueTerm t = a("cut", {v("f")});
  CHECK(subst_value(v("x"), {{"x", t}}) == t);
  ValueTerm sew_at = a("sew", {v("a"), v("t")});
  CHECK(subst_value(sew_at, {{"a", a("cut", {v("f")})}, {"t", v("t")}}) ==
        a("sew", {a("cut", {v("f")}), v("t")}));
  CHECK(subst_value(a("g2", {v("x"), v("y")}), {{"x", v("u")}, {"y", v("w")}}) ==
        a("g2", {v("u"), v("w")}));
  CHECK_THROWS_AS(subst_value(v("x"), {{"y", v("u")}}), Error);
}

TEST_CASE("subst_value respects typing") {
  Signature sig = abstract2();
  // x:A |- g2(x, mkB()) : A  composed with  y:B |- fba(y) : A
  ValueTerm body = a("g2", {v("x"), a("mkB", {})});
  ValueTerm arg = a("fba", {v("y")});
  ValueTerm result = subst_value(body, {{"x", arg}});
  CHECK(check_value({{"y", "B"}}, result, sig) == "A");
}

TEST_CASE("subst_value associativity when the inner variable is nested") {
  // v[u/x][w/y] == v[u[w/y]/x] when y occurs only in u.
  ValueTerm vterm = a("fab", {v("x")});
  ValueTerm u = a("g2", {v("y"), a("mkB", {})});
  ValueTerm w = a("mkA", {});
  ValueTerm lhs = subst_value(subst_value(vterm, {{"x", u}}), {{"y", w}});
  ValueTerm rhs = subst_value(vterm, {{"x", subst_value(u, {{"y", w}})}});
  CHECK(lhs == rhs);
}

TEST_CASE("value_free_vars occurrence order") {
  CHECK(value_free_vars(v("x")) == std::vector<std::string>{"x"});
  CHECK(value_free_vars(a("pack", {v("x"), v("y")})) == std::vector<std::string>{"x", "y"});
  CHECK(value_free_vars(a("sew", {a("cut", {v("f")}), v("t")})) ==
        std::vector<std::string>{"f", "t"});
}

TEST_CASE("signature invariants") {
  Signature sig;
  sig.add_sort("A");
  CHECK_THROWS_AS(sig.add_op(OpSymbol{"f", {"Nope"}, "A"}), Error);
  CHECK_THROWS_AS(sig.add_sort("A"), Error);
  sig.add_op(OpSymbol{"c", {}, "A"});
  CHECK_THROWS_AS(sig.add_op(OpSymbol{"c", {}, "A"}), Error);
  CHECK_THROWS_AS(sig.add_sort("_gensym"), Error);
}
