#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "corner/context.hpp"
#include "corner/typecheck.hpp"

namespace corner {

// Counter-based splittable PRNG (splitmix64). Children derived from (state,
// index) keep subterm generation reproducible across refactors.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  SplitRng child(std::uint64_t index) const {
    return SplitRng(mix(state_ ^ (0x94d049bb133111ebULL * (index + 1))));
  }

  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

  bool coin() { return (next() & 1) != 0; }

  // True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  template <typename T>
  const T& pick(const std::vector<T>& xs) {
    return xs[below(xs.size())];
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t state_;
};

struct GenConfig {
  std::uint64_t seed = 0;
  int max_term_size = 40;    // budget steering let nesting
  int max_protocol_len = 3;  // intermediate protocols in generated lets
  int max_let_width = 3;

  GenConfig with_seed(std::uint64_t s) const {
    GenConfig c = *this;
    c.seed = s;
    return c;
  }
};

// A context requirement for generation: required entries must be consumed in
// order; gaps may be filled with any number of fresh variables.
struct Slot {
  bool gap = true;
  CtxEntry entry;

  static Slot make_gap() { return Slot{true, {}}; }
  static Slot required(std::string name, Sort sort) {
    return Slot{false, CtxEntry{std::move(name), std::move(sort)}};
  }
};

using Slots = std::vector<Slot>;

namespace gendetail {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

inline Slots squeeze(Slots s) {
  Slots out;
  for (Slot& x : s) {
    if (x.gap && !out.empty() && out.back().gap) continue;
    out.push_back(std::move(x));
  }
  return out;
}

// Ways to cut a slot sequence in two; a gap may be shared by both halves.
inline std::vector<std::pair<Slots, Slots>> cuts(const Slots& s) {
  std::vector<std::pair<Slots, Slots>> out;
  for (size_t pos = 0; pos <= s.size(); ++pos)
    out.emplace_back(Slots(s.begin(), s.begin() + pos), Slots(s.begin() + pos, s.end()));
  for (size_t g = 0; g < s.size(); ++g) {
    if (!s[g].gap) continue;
    Slots left(s.begin(), s.begin() + g + 1);
    Slots right(s.begin() + g, s.end());
    out.emplace_back(std::move(left), std::move(right));
  }
  return out;
}

inline std::string slots_key(const Slots& s) {
  std::string k;
  for (const Slot& x : s) k += x.gap ? "?" : ("[" + x.entry.sort + "]");
  return k;
}

}  // namespace gendetail

// Seeded generation of well-typed values, terms, and term contexts. All
// choices are guided by a cost table so a feasible branch is always taken;
// Unsatisfiable is raised when no term of the requested shape exists.
class Generator {
 public:
  Generator(const Signature& sig, GenConfig cfg) : sig_(sig), cfg_(cfg) {
    compute_closed_costs();
  }

  const GenConfig& config() const { return cfg_; }

  // --- feasibility -------------------------------------------------------

  int closed_cost(const Sort& s) const {
    auto it = closed_cost_.find(s);
    return it == closed_cost_.end() ? gendetail::kInf : it->second;
  }

  int value_cost(const Slots& raw, const Sort& target, int fuel) {
    Slots slots = gendetail::squeeze(raw);
    std::string key = "v|" + target + "|" + std::to_string(fuel) + "|" + gendetail::slots_key(slots);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    memo_[key] = gendetail::kInf;  // assume infeasible on cycles
    int best = gendetail::kInf;
    size_t required = 0;
    for (const Slot& s : slots) required += s.gap ? 0 : 1;
    bool has_gap = slots.size() != required;
    if (required == 0) {
      best = has_gap ? 0 : closed_cost(target);
    } else {
      if (required == 1 && has_gap_only_around(slots) && single_required(slots).sort == target)
        best = 0;
      if (slots.size() == 1 && !slots[0].gap && slots[0].entry.sort == target) best = 0;
      if (fuel > 0) {
        for (const std::string& name : sig_.op_names()) {
          const OpSymbol& op = sig_.op(name);
          if (op.result != target) continue;
          int c = distribute_cost(slots, op.arity, 0, fuel - 1);
          if (c < gendetail::kInf) best = std::min(best, 1 + c);
        }
      }
    }
    memo_[key] = best;
    return best;
  }

  // Cost of a let-free term of shape (U, B, W) over the slots; by cut
  // elimination this decides feasibility for terms in general.
  int term_cost(const Slots& raw, const Protocol& u, const Sort& b, const Protocol& w, int fuel) {
    Slots slots = gendetail::squeeze(raw);
    std::string key = "t|" + b + "|" + std::to_string(fuel) + "|" + print_protocol(u) + "|" +
                      print_protocol(w) + "|" + gendetail::slots_key(slots);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    memo_[key] = gendetail::kInf;
    int best = gendetail::kInf;
    if (u.empty() && w.empty()) best = value_cost(slots, b, fuel);
    if (fuel > 0) {
      if (!u.empty()) {
        if (u.front().pol == Polarity::Send) {
          Slots inner = slots;
          inner.insert(inner.begin(), Slot::required("_", u.front().sort));
          int c = term_cost(inner, tail(u), b, w, fuel - 1);
          if (c < gendetail::kInf) best = std::min(best, 1 + c);
        } else {
          for (auto& [left, right] : gendetail::cuts(slots)) {
            int cv = value_cost(left, u.front().sort, fuel - 1);
            if (cv >= gendetail::kInf) continue;
            int ct = term_cost(right, tail(u), b, w, fuel - 1);
            if (ct < gendetail::kInf) best = std::min(best, 1 + cv + ct);
          }
        }
      }
      if (!w.empty()) {
        if (w.front().pol == Polarity::Receive) {
          Slots inner = slots;
          inner.push_back(Slot::required("_", w.front().sort));
          int c = term_cost(inner, u, b, tail(w), fuel - 1);
          if (c < gendetail::kInf) best = std::min(best, 1 + c);
        } else {
          for (auto& [left, right] : gendetail::cuts(slots)) {
            int cv = value_cost(right, w.front().sort, fuel - 1);
            if (cv >= gendetail::kInf) continue;
            int ct = term_cost(left, u, b, tail(w), fuel - 1);
            if (ct < gendetail::kInf) best = std::min(best, 1 + cv + ct);
          }
        }
      }
    }
    memo_[key] = best;
    return best;
  }

  // --- generation --------------------------------------------------------

  std::string fresh_var(const Sort& sort) {
    std::string name = "v" + std::to_string(var_counter_++);
    var_sorts_[name] = sort;
    return name;
  }

  void register_var(const std::string& name, const Sort& sort) { var_sorts_[name] = sort; }

  // Depth is a free-exploration allowance; at zero the walk follows a
  // minimal-cost witness, so generation always terminates.
  ValueTerm gen_value(const Slots& raw, const Sort& target, SplitRng& rng, int depth = 6) {
    Slots slots = gendetail::squeeze(raw);
    int full = value_cost(slots, target, kFuel);
    if (full >= gendetail::kInf)
      fail(Errc::Unsatisfiable, "no value of sort " + target + " fits the required context");
    size_t required = 0;
    for (const Slot& s : slots) required += s.gap ? 0 : 1;
    bool has_gap = slots.size() != required;

    bool var_ok = false;
    std::string var_name;
    if (required == 0 && has_gap) {
      var_ok = true;
    } else if (required == 1 && single_required(slots).sort == target) {
      var_ok = true;
      var_name = single_required(slots).name;
    }

    std::vector<std::string> op_choices;
    for (const std::string& name : sig_.op_names()) {
      const OpSymbol& op = sig_.op(name);
      if (op.result != target) continue;
      int c = distribute_cost(slots, op.arity, 0, kFuel - 1);
      if (c >= gendetail::kInf) continue;
      if (depth <= 0 && 1 + c > full) continue;  // stick to a minimal witness
      op_choices.push_back(name);
    }
    // Geometric depth bias: stop at a variable half the time when possible.
    bool take_var = var_ok && (op_choices.empty() || depth <= 0 || rng.coin());
    if (take_var) {
      if (!var_name.empty()) return ValueTerm::var(var_name);
      return ValueTerm::var(fresh_var(target));
    }
    if (op_choices.empty())
      fail(Errc::Unsatisfiable, "no op available for sort " + target);
    const std::string& opname = rng.pick(op_choices);
    const OpSymbol& op = sig_.op(opname);
    std::vector<ValueTerm> args;
    Slots rest = slots;
    for (size_t i = 0; i < op.arity.size(); ++i) {
      if (i + 1 == op.arity.size()) {
        args.push_back(gen_value(rest, op.arity[i], rng, depth - 1));
        rest.clear();
      } else {
        std::vector<std::pair<Slots, Slots>> options;
        int best = gendetail::kInf;
        for (auto& cut : gendetail::cuts(rest)) {
          int cl = value_cost(cut.first, op.arity[i], kFuel - 1);
          if (cl >= gendetail::kInf) continue;
          int cr = distribute_cost(cut.second, op.arity, i + 1, kFuel - 1);
          if (cr >= gendetail::kInf) continue;
          best = std::min(best, cl + cr);
          options.push_back(cut);
        }
        if (depth <= 0) {
          // Keep only cuts on a minimal witness.
          std::vector<std::pair<Slots, Slots>> minimal;
          for (auto& cut : options) {
            int cl = value_cost(cut.first, op.arity[i], kFuel - 1);
            int cr = distribute_cost(cut.second, op.arity, i + 1, kFuel - 1);
            if (cl + cr <= best) minimal.push_back(cut);
          }
          options = std::move(minimal);
        }
        if (options.empty()) fail(Errc::Unsatisfiable, "no feasible argument split");
        auto& cut = options[rng.below(options.size())];
        args.push_back(gen_value(cut.first, op.arity[i], rng, depth - 1));
        rest = cut.second;
      }
    }
    return ValueTerm::app(opname, std::move(args));
  }

  TermPtr gen_term_slots(const Slots& raw, const Protocol& u, const Sort& b, const Protocol& w,
                         int budget, SplitRng& rng) {
    Slots slots = gendetail::squeeze(raw);
    if (term_cost(slots, u, b, w, kFuel) >= gendetail::kInf)
      fail(Errc::Unsatisfiable, "no term of shape (" + print_protocol(u) + ", " + b + ", " +
                                    print_protocol(w) + ") fits the required context");

    enum Choice { Seq_, GetL_, PutL_, GetR_, PutR_, Let_ };
    std::vector<Choice> choices;
    if (u.empty() && w.empty() && value_cost(slots, b, kFuel) < gendetail::kInf)
      choices.push_back(Seq_);
    if (!u.empty()) {
      if (u.front().pol == Polarity::Send) {
        Slots inner = slots;
        inner.insert(inner.begin(), Slot::required("_", u.front().sort));
        if (term_cost(inner, tail(u), b, w, kFuel) < gendetail::kInf) choices.push_back(GetL_);
      } else if (put_cuts(slots, u, b, w, /*left_side=*/true).size() > 0) {
        choices.push_back(PutL_);
      }
    }
    if (!w.empty()) {
      if (w.front().pol == Polarity::Receive) {
        Slots inner = slots;
        inner.push_back(Slot::required("_", w.front().sort));
        if (term_cost(inner, u, b, tail(w), kFuel) < gendetail::kInf) choices.push_back(GetR_);
      } else if (put_cuts(slots, u, b, w, /*left_side=*/false).size() > 0) {
        choices.push_back(PutR_);
      }
    }
    bool allow_let = budget >= 8;

    Choice choice;
    if (allow_let && !choices.empty() && rng.chance(2, 5)) {
      choice = Let_;
    } else if (!choices.empty()) {
      // Under a small budget, prefer to finish with a neutral term.
      if (budget <= 2) {
        choice = choices.front();
        for (Choice c : choices)
          if (c == Seq_) choice = c;
      } else {
        choice = choices[rng.below(choices.size())];
      }
    } else {
      choice = Let_;  // protocols force nothing; a let must do the work
      if (!allow_let) fail(Errc::Unsatisfiable, "budget exhausted with no direct constructor");
    }

    if (choice == Let_) {
      std::optional<TermPtr> made = try_gen_let(slots, u, b, w, budget, rng);
      if (made) return *made;
      // Fall back to a direct constructor.
      if (choices.empty())
        fail(Errc::Unsatisfiable, "no feasible let configuration and no direct constructor");
      SplitRng sub = rng.child(17);
      choice = choices[sub.below(choices.size())];
    }

    int vdepth = budget > 2 ? 6 : 2;
    switch (choice) {
      case Seq_: return seq(gen_value(slots, b, rng, vdepth));
      case GetL_: {
        std::string x = fresh_var(u.front().sort);
        Slots inner = slots;
        inner.insert(inner.begin(), Slot::required(x, u.front().sort));
        return get_l(x, u.front().sort, gen_term_slots(inner, tail(u), b, w, budget - 1, rng));
      }
      case GetR_: {
        std::string x = fresh_var(w.front().sort);
        Slots inner = slots;
        inner.push_back(Slot::required(x, w.front().sort));
        return get_r(x, w.front().sort, gen_term_slots(inner, u, b, tail(w), budget - 1, rng));
      }
      case PutL_: {
        auto options = put_cuts(slots, u, b, w, true);
        auto& cut = options[rng.below(options.size())];
        ValueTerm val = gen_value(cut.first, u.front().sort, rng, vdepth);
        return put_l(std::move(val), gen_term_slots(cut.second, tail(u), b, w, budget - 1, rng));
      }
      case PutR_: {
        auto options = put_cuts(slots, u, b, w, false);
        auto& cut = options[rng.below(options.size())];
        ValueTerm val = gen_value(cut.second, w.front().sort, rng, vdepth);
        return put_r(std::move(val), gen_term_slots(cut.first, u, b, tail(w), budget - 1, rng));
      }
      default: fail(Errc::Unsatisfiable, "unreachable");
    }
  }

  // Generates a term of the requested boundary shape. The context is
  // synthesized: free variables are invented as needed unless closed.
  TypedTerm gen_term(const Protocol& u, const Sort& b, const Protocol& w, bool closed,
                     SplitRng& rng) {
    Slots slots = closed ? Slots{} : Slots{Slot::make_gap()};
    TermPtr t = gen_term_slots(slots, u, b, w, cfg_.max_term_size, rng);
    return type_with_known_vars(t);
  }

  // Typechecks a generated term, deriving the context from the recorded
  // sorts of generated variables.
  TypedTerm type_with_known_vars(const TermPtr& t) {
    ValueContext ctx;
    for (const std::string& x : term_free_vars(t)) {
      auto it = var_sorts_.find(x);
      if (it == var_sorts_.end()) fail(Errc::UnknownVariable, x + " has no recorded sort");
      ctx.push_back(CtxEntry{x, it->second});
    }
    return typed(sig_, ctx, t);
  }

  Protocol gen_protocol(SplitRng& rng, int min_len = 0) {
    int len = min_len + static_cast<int>(rng.below(cfg_.max_protocol_len + 1 - min_len));
    Protocol p;
    for (int i = 0; i < len; ++i) {
      Sort s = rng.pick(sig_.sorts());
      p.push_back(rng.coin() ? send(s) : receive(s));
    }
    return p;
  }

  Sort gen_sort(SplitRng& rng) { return rng.pick(sig_.sorts()); }

  // A random well-formed term context; effectful means the hole's left
  // protocol is nonempty.
  TermContext gen_context(bool effectful, SplitRng& rng) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      SplitRng r = rng.child(1000 + attempt);
      try {
        return gen_context_once(effectful, r);
      } catch (const Error& e) {
        if (e.code() != Errc::Unsatisfiable) throw;
      }
    }
    fail(Errc::Unsatisfiable, "no feasible term context under the configured bounds");
  }

 private:
  static constexpr int kFuel = 10;

  static bool has_gap_only_around(const Slots& slots) {
    size_t required = 0;
    for (const Slot& s : slots) required += s.gap ? 0 : 1;
    return required == 1;
  }

  static const CtxEntry& single_required(const Slots& slots) {
    for (const Slot& s : slots)
      if (!s.gap) return s.entry;
    fail(Errc::Unsatisfiable, "no required slot");
  }

  void compute_closed_costs() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const std::string& name : sig_.op_names()) {
        const OpSymbol& op = sig_.op(name);
        int total = 1;
        bool ok = true;
        for (const Sort& a : op.arity) {
          int c = closed_cost(a);
          if (c >= gendetail::kInf) {
            ok = false;
            break;
          }
          total += c;
        }
        if (!ok) continue;
        auto it = closed_cost_.find(op.result);
        if (it == closed_cost_.end() || total < it->second) {
          closed_cost_[op.result] = total;
          changed = true;
        }
      }
    }
  }

  int distribute_cost(const Slots& slots, const std::vector<Sort>& arity, size_t idx, int fuel) {
    if (arity.empty()) {
      Slots s = gendetail::squeeze(slots);
      bool any_required = false;
      for (const Slot& x : s) any_required |= !x.gap;
      return any_required ? gendetail::kInf : 0;
    }
    if (idx + 1 == arity.size()) return value_cost(slots, arity[idx], fuel);
    int best = gendetail::kInf;
    for (auto& [left, right] : gendetail::cuts(slots)) {
      int cl = value_cost(left, arity[idx], fuel);
      if (cl >= gendetail::kInf) continue;
      int cr = distribute_cost(right, arity, idx + 1, fuel);
      if (cr < gendetail::kInf) best = std::min(best, cl + cr);
    }
    return best;
  }

  std::vector<std::pair<Slots, Slots>> put_cuts(const Slots& slots, const Protocol& u,
                                                const Sort& b, const Protocol& w, bool left_side) {
    std::vector<std::pair<Slots, Slots>> out;
    for (auto& cut : gendetail::cuts(slots)) {
      if (left_side) {
        if (value_cost(cut.first, u.front().sort, kFuel) >= gendetail::kInf) continue;
        if (term_cost(cut.second, tail(u), b, w, kFuel) >= gendetail::kInf) continue;
      } else {
        if (value_cost(cut.second, w.front().sort, kFuel) >= gendetail::kInf) continue;
        if (term_cost(cut.first, u, b, tail(w), kFuel) >= gendetail::kInf) continue;
      }
      out.push_back(cut);
    }
    return out;
  }

  std::optional<TermPtr> try_gen_let(const Slots& slots, const Protocol& u, const Sort& b,
                                     const Protocol& w, int budget, SplitRng& rng) {
    for (int attempt = 0; attempt < 6; ++attempt) {
      SplitRng r = rng.child(100 + attempt);
      size_t n = 1 + r.below(cfg_.max_let_width);
      size_t u0len = r.below(u.size() + 1);
      size_t unlen = r.below(w.size() + 1);
      Protocol u0(u.begin(), u.begin() + u0len);
      Protocol v(u.begin() + u0len, u.end());
      Protocol un(w.begin(), w.begin() + unlen);
      Protocol w2(w.begin() + unlen, w.end());
      std::vector<Protocol> chain;  // U_0 .. U_n
      chain.push_back(u0);
      for (size_t i = 1; i < n; ++i) chain.push_back(gen_protocol(r));
      chain.push_back(un);
      std::vector<Sort> input_sorts;
      for (size_t i = 0; i < n; ++i) input_sorts.push_back(gen_sort(r));

      // Split the slots across the inputs.
      std::vector<Slots> parts;
      Slots rest = slots;
      bool ok = true;
      for (size_t i = 0; i < n && ok; ++i) {
        if (i + 1 == n) {
          parts.push_back(rest);
          break;
        }
        std::vector<std::pair<Slots, Slots>> options;
        for (auto& cut : gendetail::cuts(rest)) {
          if (term_cost(cut.first, chain[i], input_sorts[i], chain[i + 1], kFuel) <
              gendetail::kInf)
            options.push_back(cut);
        }
        if (options.empty()) {
          ok = false;
          break;
        }
        auto& cut = options[r.below(options.size())];
        parts.push_back(cut.first);
        rest = cut.second;
      }
      if (!ok) continue;
      for (size_t i = 0; i < n; ++i)
        if (term_cost(parts[i], chain[i], input_sorts[i], chain[i + 1], kFuel) >=
            gendetail::kInf)
          ok = false;
      if (!ok) continue;

      std::vector<Binder> binders;
      Slots body_slots;
      for (size_t i = 0; i < n; ++i) {
        std::string x = fresh_var(input_sorts[i]);
        binders.push_back(Binder{x, input_sorts[i]});
        body_slots.push_back(Slot::required(x, input_sorts[i]));
      }
      if (term_cost(body_slots, v, b, w2, kFuel) >= gendetail::kInf) continue;

      int child_budget = std::max(1, budget / static_cast<int>(n + 1));
      std::vector<TermPtr> inputs;
      for (size_t i = 0; i < n; ++i) {
        SplitRng ri = r.child(i);
        inputs.push_back(
            gen_term_slots(parts[i], chain[i], input_sorts[i], chain[i + 1], child_budget, ri));
      }
      SplitRng rb = r.child(n);
      TermPtr body = gen_term_slots(body_slots, v, b, w2, child_budget, rb);
      return let_in(std::move(binders), std::move(inputs), std::move(body));
    }
    return std::nullopt;
  }

  TermContext gen_context_once(bool effectful, SplitRng& rng) {
    size_t width = std::max(2, cfg_.max_let_width);
    size_t n = 2 + rng.below(width - 1);
    size_t kmin = effectful ? 1 : 0;
    size_t k = kmin + rng.below(n - kmin);  // k < n

    // Chain protocols U_0..U_n; the hole part starts at U_k.
    std::vector<Protocol> chain;
    for (size_t i = 0; i <= n; ++i) chain.push_back(gen_protocol(rng));
    if (effectful && chain[k].empty()) chain[k] = gen_protocol(rng, 1);
    if (!effectful) chain[k] = {};

    // Frames: putL frames outermost, getL frames innermost; each getL frame
    // binder becomes a required leading slot of the first input.
    size_t n_put = rng.below(2), n_get = rng.below(2);
    std::vector<CtxFrame> frames;
    std::vector<Slot> lead;  // leading required slots of input 1 (innermost first)
    for (size_t i = 0; i < n_put; ++i) {
      Sort s = gen_sort(rng);
      SplitRng rv = rng.child(200 + i);
      ValueTerm val = gen_value({Slot::make_gap()}, s, rv);
      ValueContext vctx;
      for (const std::string& x : value_free_vars(val)) vctx.push_back(CtxEntry{x, var_sorts_[x]});
      frames.push_back(CtxFrame{true, val, vctx, Binder{}});
    }
    for (size_t i = 0; i < n_get; ++i) {
      Sort s = gen_sort(rng);
      std::string x = fresh_var(s);
      frames.push_back(CtxFrame{false, ValueTerm{}, {}, Binder{x, s}});
      lead.insert(lead.begin(), Slot::required(x, s));
    }
    if (k == 0 && !lead.empty()) fail(Errc::Unsatisfiable, "getL frames need a first input");

    std::vector<Binder> binders;
    Slots body_slots;
    std::vector<Sort> input_sorts;
    for (size_t i = 0; i < n; ++i) {
      Sort s = gen_sort(rng);
      std::string x = fresh_var(s);
      input_sorts.push_back(s);
      binders.push_back(Binder{x, s});
      body_slots.push_back(Slot::required(x, s));
    }
    Protocol body_v = gen_protocol(rng), body_w = gen_protocol(rng);
    Sort body_b = gen_sort(rng);
    if (term_cost(body_slots, body_v, body_b, body_w, kFuel) >= gendetail::kInf)
      fail(Errc::Unsatisfiable, "no body for the sampled sorts");

    std::vector<TypedTerm> inputs;
    for (size_t i = 0; i < k; ++i) {
      Slots s = i == 0 ? lead : Slots{};
      s.push_back(Slot::make_gap());
      if (term_cost(s, chain[i], input_sorts[i], chain[i + 1], kFuel) >= gendetail::kInf)
        fail(Errc::Unsatisfiable, "no input for the sampled protocols");
      SplitRng ri = rng.child(300 + i);
      TermPtr t = gen_term_slots(s, chain[i], input_sorts[i], chain[i + 1],
                                 cfg_.max_term_size / 2, ri);
      inputs.push_back(type_with_known_vars(t));
    }
    SplitRng rb = rng.child(400);
    TermPtr body = gen_term_slots(body_slots, body_v, body_b, body_w, cfg_.max_term_size / 2, rb);
    ValueContext body_ctx;
    for (const Binder& bd : binders) body_ctx.push_back(CtxEntry{bd.name, bd.sort});
    TypedTerm typed_body = typed(sig_, body_ctx, body);

    std::vector<Protocol> hole(chain.begin() + k, chain.end());
    TermContext L{std::move(frames), std::move(binders), std::move(inputs), std::move(typed_body),
                  std::move(hole)};
    validate_context(sig_, L);
    return L;
  }

  const Signature& sig_;
  GenConfig cfg_;
  std::map<Sort, int> closed_cost_;
  std::map<std::string, int> memo_;
  std::map<std::string, Sort> var_sorts_;
  unsigned long var_counter_ = 0;
};

// Convenience wrappers matching the module surface.
inline TypedTerm gen_term(const Signature& sig, const GenConfig& cfg) {
  Generator g(sig, cfg);
  SplitRng rng(cfg.seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    SplitRng r = rng.child(attempt);
    Protocol u = g.gen_protocol(r);
    Protocol w = g.gen_protocol(r);
    Sort b = g.gen_sort(r);
    try {
      return g.gen_term(u, b, w, false, r);
    } catch (const Error& e) {
      if (e.code() != Errc::Unsatisfiable) throw;
    }
  }
  fail(Errc::Unsatisfiable, "no term under the configured bounds");
}

inline TypedTerm gen_term_shaped(const Signature& sig, const Protocol& u, const Sort& b,
                                 const Protocol& w, const GenConfig& cfg, bool closed = false) {
  Generator g(sig, cfg);
  SplitRng rng(cfg.seed);
  return g.gen_term(u, b, w, closed, rng);
}

inline TermContext gen_context(const Signature& sig, bool effectful, const GenConfig& cfg) {
  Generator g(sig, cfg);
  SplitRng rng(cfg.seed);
  return g.gen_context(effectful, rng);
}

}  // namespace corner
