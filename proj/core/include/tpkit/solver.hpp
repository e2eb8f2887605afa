#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tpkit/model.hpp"
#include "tpkit/rational.hpp"
#include "tpkit/validator.hpp"

namespace tpkit::solver {

/// x - y <= bound, or x - y < bound when strict.
struct DifferenceConstraint {
  std::size_t x = 0;
  std::size_t y = 0;
  Rational bound;
  bool strict = false;

  friend bool operator==(const DifferenceConstraint&, const DifferenceConstraint&) = default;
};

/// Conjunction of difference constraints. Variable 0 is the zero reference;
/// infinite bounds are simply not stored.
struct ConstraintSystem {
  static constexpr std::size_t kZero = 0;

  std::vector<std::string> variables{"zero"};
  std::vector<DifferenceConstraint> constraints;

  std::size_t add_variable(std::string name);
  void add(std::size_t x, std::size_t y, Rational bound, bool strict = false);
  std::size_t size() const { return variables.size(); }
};

/// True when every constraint holds for `values` (indexed like variables),
/// checked exactly.
bool satisfies(const ConstraintSystem& system, const std::vector<Rational>& values);

/// A satisfying assignment with the zero variable at 0, or nullopt when some
/// cycle has negative weight or zero weight through a strict edge. Strict
/// constraints are met by perturbing the shortest-path potentials with
/// eps = (least positive slack) / (variables + 1).
std::optional<std::vector<Rational>> feasible(const ConstraintSystem& system);

/// Untimed candidate: per state variable, a transition-consistent value
/// sequence.
using Skeleton = std::map<std::string, std::vector<std::string>>;

struct Choice {
  std::size_t disjunct = 0;
  /// Binds the statement's quantified names (and the trigger, if any).
  Assignment assignment;
};

/// One choice per trigger-less rule and one per trigger occurrence.
struct ChoiceStructure {
  std::map<std::size_t, Choice> triggerless;
  std::map<std::size_t, std::map<std::size_t, Choice>> triggered;  // rule -> position -> choice
};

/// Names of the endpoint variables used by atoms_to_constraints.
std::string start_variable(const std::string& variable, std::size_t index);
std::string end_variable(const std::string& variable, std::size_t index);

/// Timing constraints for a skeleton under fixed rule choices: first tokens
/// start at 0, tokens are chained end-to-start, durations lie in D, and every
/// atom of every chosen disjunct holds. Variables are zero followed by
/// (start, end) of each token, state variables in domain order. Throws
/// std::invalid_argument when the choices do not fit the skeleton.
ConstraintSystem atoms_to_constraints(const Domain& domain, const Skeleton& skeleton,
                                      const ChoiceStructure& choices, Semantics semantics);

struct SolveStats {
  std::size_t skeletons = 0;
  std::size_t search_nodes = 0;
};

/// Searches skeletons with at most `token_bound` tokens per variable (fewest
/// tokens first, then lexicographically by value declaration order) and rule
/// choices for one whose timing constraints are feasible, and returns it as a
/// multi-timeline. nullopt only means no plan exists within the bound.
std::optional<MultiTimeline> bounded_solve(const Domain& domain, std::size_t token_bound,
                                           Semantics semantics, SolveStats* stats = nullptr);

}  // namespace tpkit::solver
