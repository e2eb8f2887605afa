#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tpkit/model.hpp"

namespace tpkit {

/// Position of a token inside a multi-timeline.
struct TokenRef {
  std::string variable;
  std::size_t index = 0;

  friend bool operator==(const TokenRef&, const TokenRef&) = default;
  friend auto operator<=>(const TokenRef&, const TokenRef&) = default;
};

/// Partial Sigma-assignment covering the names of the statement under
/// evaluation.
using Assignment = std::map<std::string, TokenRef>;

struct RuleOutcome {
  std::size_t rule = 0;
  std::string label;
  bool satisfied = false;
  /// For a failed trigger rule: the first trigger-valued position (timeline
  /// order) for which no disjunct can be satisfied.
  std::optional<std::size_t> failing_position;
};

struct TimelineFailure {
  std::string variable;
  TimelineViolation violation;
};

struct ValidationReport {
  bool verdict = true;
  std::vector<TimelineFailure> timelines;
  std::vector<RuleOutcome> rules;
};

/// Evaluates one atom under an assignment. Throws std::invalid_argument when a
/// referenced name is unbound or points outside the multi-timeline.
bool atom_satisfied(const Atom& atom, const Assignment& assignment, const MultiTimeline& plan);

/// Searches for an extension of `fixed` binding every quantifier of the
/// statement so that all atoms hold. The search is complete: nullopt means no
/// such extension exists.
std::optional<Assignment> satisfies_existential(const MultiTimeline& plan,
                                                const ExistentialStatement& statement,
                                                const Assignment& fixed);

/// Satisfaction of a single rule. Under the future semantics quantified tokens
/// of a trigger rule must not start before the trigger token.
ValidationReport satisfies_rule(const MultiTimeline& plan, const SynchronizationRule& rule,
                                Semantics semantics);

/// Plan (or future plan) check: every timeline is consistent with its state
/// variable and every rule is satisfied. Throws std::invalid_argument when the
/// multi-timeline's variables differ from the domain's.
ValidationReport is_plan(const Domain& domain, const MultiTimeline& plan, Semantics semantics);

/// Exhaustive twin of satisfies_rule used as a test oracle. Enumerates every
/// value-consistent assignment; throws std::length_error when the number of
/// candidate assignments exceeds `cap`.
bool brute_force_satisfies(const MultiTimeline& plan, const SynchronizationRule& rule,
                           Semantics semantics, std::size_t cap = 1'000'000);

}  // namespace tpkit
