#include "fixtures.hpp"

#include <algorithm>
#include <functional>
#include <utility>

#include "tpkit/validator.hpp"

namespace tpkit::fixtures {

using minsky::Instruction;
using minsky::OpKind;
using minsky::Transition;

minsky::Machine m1() {
  return minsky::make_machine("qi", "qh",
                              {Transition{"qi", {OpKind::inc, 1}, "q1"}, Transition{"q1", {OpKind::dec, 1}, "q2"},
                               Transition{"q2", {OpKind::zero, 1}, "qh"}});
}

minsky::Machine m2() {
  return minsky::make_machine("qi", "qh",
                              {Transition{"qi", {OpKind::inc, 1}, "q1"}, Transition{"q1", {OpKind::inc, 1}, "q1"}});
}

minsky::Machine m3() {
  return minsky::make_machine("qi", "qh",
                              {Transition{"qi", {OpKind::inc, 1}, "a"}, Transition{"a", {OpKind::inc, 1}, "a"},
                               Transition{"a", {OpKind::zero, 2}, "b"}, Transition{"b", {OpKind::dec, 1}, "c"},
                               Transition{"c", {OpKind::dec, 1}, "d"}, Transition{"d", {OpKind::dec, 1}, "e"},
                               Transition{"e", {OpKind::zero, 1}, "qh"}});
}

minsky::Machine m4() {
  return minsky::make_machine(
      "qi", "qh",
      {Transition{"qi", {OpKind::inc, 1}, "p1"}, Transition{"p1", {OpKind::inc, 1}, "p2"},
       Transition{"p2", {OpKind::inc, 1}, "loop"}, Transition{"loop", {OpKind::dec, 1}, "move"},
       Transition{"move", {OpKind::inc, 2}, "loop"}, Transition{"loop", {OpKind::zero, 1}, "drain"},
       Transition{"drain", {OpKind::dec, 2}, "drain"}, Transition{"drain", {OpKind::zero, 2}, "qh"}});
}

std::vector<std::pair<std::string, minsky::Machine>> halting_machines() {
  return {{"M1", m1()}, {"M3", m3()}, {"M4", m4()}};
}

StateVariable abc_variable() {
  StateVariable x;
  x.name = "x";
  x.values = {"a", "b", "c"};
  x.transitions = {{"a", {"b"}}, {"b", {"c"}}, {"c", {}}};
  x.durations = {{"a", Interval::closed(5, 8)}, {"b", Interval::closed(1, 3)}, {"c", Interval::closed(2, 4)}};
  return x;
}

Timeline abc_timeline() { return Timeline{"x", {{"a", 7}, {"b", 3}, {"c", Rational(39, 10)}}}; }

Interval random_interval(Rng& rng, std::uint64_t max_endpoint) {
  for (;;) {
    const auto lo = static_cast<std::uint64_t>(rng.uniform(0, static_cast<std::int64_t>(max_endpoint)));
    const bool lo_open = rng.chance(0.3);
    if (rng.chance(0.35)) return Interval::make(lo, lo_open, std::nullopt, true);
    const auto hi = static_cast<std::uint64_t>(rng.uniform(static_cast<std::int64_t>(lo),
                                                           static_cast<std::int64_t>(max_endpoint)));
    const bool hi_open = rng.chance(0.3);
    if (lo == hi && (lo_open || hi_open)) continue;
    return Interval::make(lo, lo_open, hi, hi_open);
  }
}

namespace {

Event random_event(Rng& rng) { return rng.chance(0.5) ? Event::start : Event::end; }

Atom random_atom(Rng& rng, const std::vector<std::string>& names, std::uint64_t max_endpoint,
                 std::uint64_t max_bound) {
  const auto kind = rng.uniform(0, 5);
  if (kind <= 3) {
    return IntervalAtom{rng.pick(names), random_event(rng), rng.pick(names), random_event(rng),
                        random_interval(rng, max_endpoint)};
  }
  const auto bound = static_cast<std::uint64_t>(rng.uniform(0, static_cast<std::int64_t>(max_bound)));
  if (kind == 4) return TokenBeforeConstant{rng.pick(names), random_event(rng), bound, random_interval(rng, max_endpoint)};
  return ConstantBeforeToken{bound, rng.pick(names), random_event(rng), random_interval(rng, max_endpoint)};
}

ExistentialStatement random_statement(Rng& rng, const Domain& domain, std::vector<std::string> names,
                                      std::size_t max_quantifiers, std::size_t max_atoms,
                                      std::uint64_t max_endpoint, std::uint64_t max_bound) {
  ExistentialStatement st;
  const auto quantifiers = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(max_quantifiers)));
  for (std::size_t i = 0; i < quantifiers; ++i) {
    const auto& var = rng.pick(domain.variables);
    st.quantifiers.push_back({"o" + std::to_string(i + 1), var.name, rng.pick(var.values)});
    names.push_back(st.quantifiers.back().name);
  }
  if (names.empty()) return st;
  const auto atoms = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(max_atoms)));
  for (std::size_t i = 0; i < atoms; ++i) st.atoms.push_back(random_atom(rng, names, max_endpoint, max_bound));
  return st;
}

}  // namespace

RuleInstance random_rule_instance(Rng& rng, std::size_t max_tokens, std::size_t max_quantifiers) {
  RuleInstance inst;
  const std::vector<std::string> values{"a", "b", "c"};
  const std::size_t variables = rng.chance(0.5) ? 1 : 2;
  for (std::size_t v = 0; v < variables; ++v) {
    StateVariable var;
    var.name = v == 0 ? "x" : "y";
    var.values = values;
    for (const auto& a : values) {
      var.transitions[a] = values;
      var.durations[a] = Interval::non_negative();
    }
    inst.domain.variables.push_back(var);

    Timeline tl{var.name, {}};
    const auto n = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(max_tokens)));
    for (std::size_t i = 0; i < n; ++i) tl.tokens.push_back({rng.pick(values), Rational(rng.uniform(1, 4), 2)});
    inst.plan.emplace(var.name, std::move(tl));
  }

  const auto& tvar = rng.pick(inst.domain.variables);
  inst.rule.trigger = Quantifier{"o0", tvar.name, rng.pick(tvar.values)};
  const auto disjuncts = rng.uniform(1, 2);
  for (std::int64_t d = 0; d < disjuncts; ++d) {
    inst.rule.disjuncts.push_back(random_statement(rng, inst.domain, {"o0"}, max_quantifiers, 3, 3, 6));
  }
  inst.rule.label = "random";
  return inst;
}

Domain random_small_domain(Rng& rng, std::size_t variables) {
  Domain domain;
  const std::vector<std::string> pool{"a", "b", "c"};
  for (std::size_t v = 0; v < variables; ++v) {
    StateVariable var;
    var.name = v == 0 ? "x" : "y";
    const auto count = static_cast<std::size_t>(rng.uniform(2, 3));
    var.values.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count));
    for (const auto& a : var.values) {
      auto& next = var.transitions[a];
      for (const auto& b : var.values) {
        if (rng.chance(0.5)) next.push_back(b);
      }
      // Bounded duration intervals keep the exhaustive oracle finite.
      const auto lo = static_cast<std::uint64_t>(rng.uniform(0, 1));
      const auto hi = static_cast<std::uint64_t>(rng.uniform(static_cast<std::int64_t>(std::max<std::uint64_t>(lo, 1)), 2));
      const bool lo_open = rng.chance(0.5);
      const bool hi_open = lo < hi && rng.chance(0.3);
      var.durations[a] = Interval::make(lo, lo_open && lo < hi, hi, hi_open);
    }
    domain.variables.push_back(std::move(var));
  }

  const auto rules = rng.uniform(1, 2);
  for (std::int64_t r = 0; r < rules; ++r) {
    SynchronizationRule rule;
    if (rng.chance(0.5)) {
      const auto& var = rng.pick(domain.variables);
      rule.trigger = Quantifier{"o0", var.name, rng.pick(var.values)};
      const auto disjuncts = rng.uniform(1, 2);
      for (std::int64_t d = 0; d < disjuncts; ++d) {
        rule.disjuncts.push_back(random_statement(rng, domain, {"o0"}, 1, 2, 2, 3));
      }
    } else {
      const auto disjuncts = rng.uniform(1, 2);
      for (std::int64_t d = 0; d < disjuncts; ++d) {
        auto st = random_statement(rng, domain, {}, 2, 2, 2, 3);
        if (st.quantifiers.empty()) {
          const auto& var = rng.pick(domain.variables);
          st.quantifiers.push_back({"o1", var.name, rng.pick(var.values)});
        }
        rule.disjuncts.push_back(std::move(st));
      }
    }
    rule.label = "r" + std::to_string(r);
    domain.rules.push_back(std::move(rule));
  }
  return domain;
}

solver::ConstraintSystem random_system(Rng& rng, std::size_t max_variables, std::int64_t max_bound) {
  solver::ConstraintSystem system;
  const auto n = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(max_variables) - 1));
  for (std::size_t i = 0; i < n; ++i) system.add_variable("v" + std::to_string(i + 1));
  const auto m = rng.uniform(1, 2 * static_cast<std::int64_t>(system.size()));
  for (std::int64_t k = 0; k < m; ++k) {
    const auto x = rng.index(system.size());
    auto y = rng.index(system.size());
    if (x == y) y = (y + 1) % system.size();
    system.add(x, y, Rational(rng.uniform(-max_bound, max_bound)), rng.chance(0.5));
  }
  return system;
}

std::optional<std::vector<Rational>> grid_feasible(const solver::ConstraintSystem& system) {
  // A feasible system with integer bounds has a solution whose fractional parts
  // take at most n distinct values (n variables, zero included) and whose
  // distances to the zero variable stay within a chain of n-1 bounds plus one:
  // rounding to the grid k/(n+1) preserves the order of fractional parts and so
  // every integer-bounded difference constraint.
  const std::size_t n = system.size();
  std::int64_t max_bound = 0;
  for (const auto& c : system.constraints) {
    max_bound = std::max(max_bound, std::abs(c.bound.numerator() / c.bound.denominator()) +
                                        (c.bound.is_integer() ? 0 : 1));
  }
  const auto denominator = static_cast<std::int64_t>(n + 1);
  const std::int64_t limit = ((static_cast<std::int64_t>(n) - 1) * max_bound + 1) * denominator;

  std::vector<Rational> values(n, Rational(0));
  std::vector<std::vector<const solver::DifferenceConstraint*>> closing(n);
  for (const auto& c : system.constraints) closing[std::max(c.x, c.y)].push_back(&c);

  const auto holds = [&](std::size_t upto) {
    for (const auto* c : closing[upto]) {
      const Rational diff = values[c->x] - values[c->y];
      if (c->strict ? !(diff < c->bound) : !(diff <= c->bound)) return false;
    }
    return true;
  };
  if (!holds(0)) return std::nullopt;

  std::function<bool(std::size_t)> assign = [&](std::size_t i) {
    if (i == n) return true;
    for (std::int64_t k = -limit; k <= limit; ++k) {
      values[i] = Rational(k, denominator);
      if (holds(i) && assign(i + 1)) return true;
    }
    return false;
  };
  if (!assign(1)) return std::nullopt;
  return values;
}

namespace {

void sequences(const StateVariable& var, std::size_t length, std::vector<std::string>& current,
               std::vector<std::vector<std::string>>& out) {
  if (current.size() == length) {
    out.push_back(current);
    return;
  }
  const auto& candidates = current.empty() ? var.values : var.successors(current.back());
  for (const auto& v : candidates) {
    current.push_back(v);
    sequences(var, length, current, out);
    current.pop_back();
  }
}

}  // namespace

std::optional<MultiTimeline> exhaustive_plan(const Domain& domain, std::size_t bound, Semantics semantics) {
  std::vector<std::vector<std::vector<std::string>>> per_variable;
  for (const auto& var : domain.variables) {
    std::vector<std::vector<std::string>> all;
    for (std::size_t len = 1; len <= bound; ++len) {
      std::vector<std::string> current;
      sequences(var, len, current, all);
    }
    per_variable.push_back(std::move(all));
  }

  std::vector<std::size_t> pick(per_variable.size(), 0);
  for (const auto& options : per_variable) {
    if (options.empty()) return std::nullopt;
  }
  for (;;) {
    // Flatten the skeleton into (variable, value) slots.
    std::vector<std::pair<std::size_t, std::string>> slots;
    for (std::size_t v = 0; v < per_variable.size(); ++v) {
      for (const auto& value : per_variable[v][pick[v]]) slots.emplace_back(v, value);
    }
    const auto denominator = static_cast<std::int64_t>(slots.size() + 1);
    std::vector<std::vector<Rational>> choices;
    for (const auto& [v, value] : slots) {
      const Interval& d = domain.variables[v].duration(value);
      std::vector<Rational> ok;
      for (std::int64_t k = 0; k <= static_cast<std::int64_t>(*d.hi()) * denominator; ++k) {
        const Rational q(k, denominator);
        if (d.contains(q)) ok.push_back(q);
      }
      choices.push_back(std::move(ok));
    }

    std::vector<std::size_t> idx(slots.size(), 0);
    const bool any = std::all_of(choices.begin(), choices.end(), [](const auto& c) { return !c.empty(); });
    while (any) {
      MultiTimeline plan;
      for (std::size_t v = 0; v < domain.variables.size(); ++v) {
        plan[domain.variables[v].name] = Timeline{domain.variables[v].name, {}};
      }
      for (std::size_t s = 0; s < slots.size(); ++s) {
        const auto& name = domain.variables[slots[s].first].name;
        plan[name].tokens.push_back({slots[s].second, choices[s][idx[s]]});
      }
      if (is_plan(domain, plan, semantics).verdict) return plan;
      std::size_t s = 0;
      while (s < idx.size() && ++idx[s] == choices[s].size()) idx[s++] = 0;
      if (s == idx.size()) break;
    }

    std::size_t v = 0;
    while (v < pick.size() && ++pick[v] == per_variable[v].size()) pick[v++] = 0;
    if (v == pick.size()) return std::nullopt;
  }
}

}  // namespace tpkit::fixtures
