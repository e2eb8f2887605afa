#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tpkit/interval.hpp"
#include "tpkit/rational.hpp"

namespace tpkit {

// ---------------------------------------------------------------------------
// State variables and timelines
// ---------------------------------------------------------------------------

/// A state variable (V, T, D): finite value domain in declaration order, value
/// transition function, and per-value duration constraint.
struct StateVariable {
  std::string name;
  std::vector<std::string> values;
  std::map<std::string, std::vector<std::string>> transitions;
  std::map<std::string, Interval> durations;

  bool has_value(const std::string& value) const;
  /// Empty when the value has no successors or is unknown.
  const std::vector<std::string>& successors(const std::string& value) const;
  bool allows(const std::string& from, const std::string& to) const;
  const Interval& duration(const std::string& value) const;

  friend bool operator==(const StateVariable&, const StateVariable&) = default;
};

struct Token {
  std::string value;
  Rational duration;

  friend bool operator==(const Token&, const Token&) = default;
};

struct Timeline {
  std::string variable;
  std::vector<Token> tokens;

  friend bool operator==(const Timeline&, const Timeline&) = default;
};

/// One timeline per state variable, keyed by variable name.
using MultiTimeline = std::map<std::string, Timeline>;

struct TokenTimes {
  Rational start;
  Rational end;

  friend bool operator==(const TokenTimes&, const TokenTimes&) = default;
};

/// Start and end time of every token: the first token starts at 0 and each
/// token starts where its predecessor ends.
std::vector<TokenTimes> token_times(const Timeline& timeline);

struct TimelineViolation {
  enum class Kind { variable_mismatch, empty, unknown_value, transition, duration };
  Kind kind;
  std::size_t index = 0;
  std::string message;
};

/// First violation of the variable's value domain, transition function or
/// duration constraints along the timeline; nullopt when consistent.
std::optional<TimelineViolation> check_timeline(const StateVariable& variable,
                                                const Timeline& timeline);

/// Totality of T and D over the value set, successors drawn from the values,
/// no duplicate values. Returns a description of the first problem.
std::optional<std::string> check_variable(const StateVariable& variable);

// ---------------------------------------------------------------------------
// Synchronization rules
// ---------------------------------------------------------------------------

enum class Event { start, end };

const char* to_string(Event event);

/// left <=^{left_event,right_event}_I right : right_event(right) - left_event(left) in I.
struct IntervalAtom {
  std::string left;
  Event left_event = Event::start;
  std::string right;
  Event right_event = Event::start;
  Interval interval;

  friend bool operator==(const IntervalAtom&, const IntervalAtom&) = default;
};

/// token <=^{event}_I bound : bound - event(token) in I.
struct TokenBeforeConstant {
  std::string token;
  Event event = Event::start;
  std::uint64_t bound = 0;
  Interval interval;

  friend bool operator==(const TokenBeforeConstant&, const TokenBeforeConstant&) = default;
};

/// bound <=^{event}_I token : event(token) - bound in I.
struct ConstantBeforeToken {
  std::uint64_t bound = 0;
  std::string token;
  Event event = Event::start;
  Interval interval;

  friend bool operator==(const ConstantBeforeToken&, const ConstantBeforeToken&) = default;
};

using Atom = std::variant<IntervalAtom, TokenBeforeConstant, ConstantBeforeToken>;

const Interval& atom_interval(const Atom& atom);
/// Token names referenced by the atom (one or two).
std::vector<std::string> atom_names(const Atom& atom);

/// name[variable = value]
struct Quantifier {
  std::string name;
  std::string variable;
  std::string value;

  friend bool operator==(const Quantifier&, const Quantifier&) = default;
};

struct ExistentialStatement {
  std::vector<Quantifier> quantifiers;
  std::vector<Atom> atoms;

  /// Names used in atoms but not quantified, in first-use order.
  std::vector<std::string> free_names() const;

  friend bool operator==(const ExistentialStatement&, const ExistentialStatement&) = default;
};

/// Trigger rule when `trigger` is set, trigger-less rule otherwise. The label
/// is free-form and only used for reporting.
struct SynchronizationRule {
  std::optional<Quantifier> trigger;
  std::vector<ExistentialStatement> disjuncts;
  std::string label;

  bool is_trigger() const { return trigger.has_value(); }

  friend bool operator==(const SynchronizationRule&, const SynchronizationRule&) = default;
};

struct Domain {
  std::vector<StateVariable> variables;
  std::vector<SynchronizationRule> rules;

  const StateVariable* find_variable(const std::string& name) const;

  friend bool operator==(const Domain&, const Domain&) = default;
};

struct RuleViolation {
  std::optional<std::size_t> disjunct;
  std::string name;
  std::string message;
};

/// Free-name discipline (only the trigger may be free in a trigger rule,
/// nothing in a trigger-less rule), distinct quantified names that do not
/// rebind the trigger, and declared (variable, value) pairs.
std::optional<RuleViolation> well_formed_rule(const Domain& domain,
                                              const SynchronizationRule& rule);

/// Every variable passes check_variable and every rule is well formed.
/// Throws std::invalid_argument naming the first offender.
void check_domain(const Domain& domain);

/// Future-semantics transform: every disjunct of a trigger rule gains
/// trigger <=^{s,s}_[0,inf[ o for each of its quantified names o.
/// Trigger-less rules are returned unchanged.
SynchronizationRule futurize(const SynchronizationRule& rule);

enum class Semantics { standard, future };

const char* to_string(Semantics semantics);

}  // namespace tpkit
