#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tpkit/minsky.hpp"
#include "tpkit/model.hpp"
#include "tpkit/solver.hpp"

namespace tpkit::fixtures {

// --- machines -------------------------------------------------------------

/// d1 = (qi, inc 1, q1), d2 = (q1, dec 1, q2), d3 = (q2, zero 1, qh).
minsky::Machine m1();
/// Never halts: qi -inc1-> q1 -inc1-> q1.
minsky::Machine m2();
/// Nondeterministic pump of counter 1 up to 3, then three decrements.
minsky::Machine m3();
/// Loads counter 1 with 3, transfers it to counter 2, then drains counter 2.
minsky::Machine m4();

/// The halting machines used by the reduction checks.
std::vector<std::pair<std::string, minsky::Machine>> halting_machines();

// --- a -> b -> c sample variable -------------------------------------

/// x over {a, b, c}: a -> b -> c, D(a) = [5,8], D(b) = [1,3], D(c) = [2,4].
StateVariable abc_variable();
Timeline abc_timeline();  // (a,7)(b,3)(c,3.9)

// --- randomness ------------------------------------------------------------

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(n) - 1)); }
  bool chance(double p) { return std::bernoulli_distribution(p)(engine_); }

  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[index(items.size())];
  }

 private:
  std::mt19937_64 engine_;
};

Interval random_interval(Rng& rng, std::uint64_t max_endpoint);

struct RuleInstance {
  Domain domain;  // variables only; the rule is kept separately
  MultiTimeline plan;
  SynchronizationRule rule;
};

/// Random domain over one or two fully connected variables, a random
/// multi-timeline (at most `max_tokens` tokens per timeline, durations in
/// halves) and a random trigger rule with at most `max_quantifiers`
/// quantifiers per disjunct.
RuleInstance random_rule_instance(Rng& rng, std::size_t max_tokens, std::size_t max_quantifiers);

/// Random well-formed small domain for bounded-solve completeness checks:
/// `variables` variables with 2-3 values, random transitions, duration
/// intervals bounded by 2, one or two rules.
Domain random_small_domain(Rng& rng, std::size_t variables);

/// Random difference-constraint system.
solver::ConstraintSystem random_system(Rng& rng, std::size_t max_variables, std::int64_t max_bound);

// --- independent oracles -----------------------------------------------------

/// Exhaustive feasibility search on the grid k/(n+1), n = number of variables,
/// zero variable fixed at 0.
std::optional<std::vector<Rational>> grid_feasible(const solver::ConstraintSystem& system);

/// Exhaustive plan search: every skeleton with 1..bound tokens per variable and
/// every duration vector on the grid (1/(T+1))Z inside the duration
/// intervals, T the total token count, checked with is_plan. Requires bounded
/// duration intervals.
std::optional<MultiTimeline> exhaustive_plan(const Domain& domain, std::size_t bound, Semantics semantics);

}  // namespace tpkit::fixtures
