#pragma once

#include "corner/signature.hpp"
#include "corner/term.hpp"

namespace corner::fixtures {

// The garment workshop signature of the first worked example.
inline Signature clothes() {
  Signature sig;
  for (const char* s : {"Pants", "Shirt", "Clothes", "Pattern", "Thread", "Fabric"})
    sig.add_sort(s);
  sig.add_op(OpSymbol{"cut", {"Fabric"}, "Pattern"});
  sig.add_op(OpSymbol{"sew", {"Pattern", "Thread"}, "Shirt"});
  sig.add_op(OpSymbol{"pack", {"Pants", "Shirt"}, "Clothes"});
  return sig;
}

// The coffee machine signature of the second worked example.
inline Signature coffee() {
  Signature sig;
  for (const char* s : {"Person", "Money", "Beans", "Water", "Coffee", "Ready", "Done"})
    sig.add_sort(s);
  sig.add_op(OpSymbol{"brew", {"Money", "Beans", "Water"}, "Coffee"});
  sig.add_op(OpSymbol{"drink", {"Person", "Coffee"}, "Person"});
  sig.add_op(OpSymbol{"done", {}, "Ready"});
  sig.add_op(OpSymbol{"pair", {"Person", "Ready"}, "Done"});
  return sig;
}

// A small abstract signature with enough structure for the property suites:
// constants, unary and binary ops, and two sorts connected both ways.
inline Signature abstract2() {
  Signature sig;
  sig.add_sort("A");
  sig.add_sort("B");
  sig.add_op(OpSymbol{"mkA", {}, "A"});
  sig.add_op(OpSymbol{"mkB", {}, "B"});
  sig.add_op(OpSymbol{"fab", {"A"}, "B"});
  sig.add_op(OpSymbol{"fba", {"B"}, "A"});
  sig.add_op(OpSymbol{"g2", {"A", "B"}, "A"});
  sig.add_op(OpSymbol{"h2", {"B", "A"}, "B"});
  return sig;
}

inline ValueTerm v(const std::string& name) { return ValueTerm::var(name); }
inline ValueTerm a(const std::string& op, std::vector<ValueTerm> args) {
  return ValueTerm::app(op, std::move(args));
}

// putR(cut(f), [p]) -- the tailor sending a pattern rightward.
inline TermPtr clothes_left() { return put_r(a("cut", {v("f")}), seq(v("p"))); }

// getL(a. [sew(a, t)]) -- the seamster receiving the pattern.
inline TermPtr clothes_right() {
  return get_l("a", "Pattern", seq(a("sew", {v("a"), v("t")})));
}

// The full example: let x,y <- (A | B) in [pack(x,y)].
inline TermPtr clothes_main() {
  return let_in({Binder{"x", "Pants"}, Binder{"y", "Shirt"}}, {clothes_left(), clothes_right()},
                seq(a("pack", {v("x"), v("y")})));
}

// putR(m, getR(c. [drink(p, c)])) -- pay, then wait for the coffee.
inline TermPtr coffee_customer() {
  return put_r(v("m"), get_r("c", "Coffee", seq(a("drink", {v("p"), v("c")}))));
}

// getL(n. getR(w. putL(brew(n, b, w), [done()]))) -- the machine.
inline TermPtr coffee_machine() {
  return get_l("n", "Money",
               get_r("w", "Water",
                     put_l(a("brew", {v("n"), v("b"), v("w")}), seq(a("done", {})))));
}

// let x,y <- (customer | machine) in [pair(x, y)].
inline TermPtr coffee_main() {
  return let_in({Binder{"x", "Person"}, Binder{"y", "Ready"}},
                {coffee_customer(), coffee_machine()}, seq(a("pair", {v("x"), v("y")})));
}

}  // namespace corner::fixtures
