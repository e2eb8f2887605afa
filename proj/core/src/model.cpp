#include "tpkit/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace tpkit {

bool StateVariable::has_value(const std::string& value) const {
  return std::find(values.begin(), values.end(), value) != values.end();
}

const std::vector<std::string>& StateVariable::successors(const std::string& value) const {
  static const std::vector<std::string> none;
  const auto it = transitions.find(value);
  return it == transitions.end() ? none : it->second;
}

bool StateVariable::allows(const std::string& from, const std::string& to) const {
  const auto& next = successors(from);
  return std::find(next.begin(), next.end(), to) != next.end();
}

const Interval& StateVariable::duration(const std::string& value) const {
  const auto it = durations.find(value);
  if (it == durations.end()) {
    throw std::out_of_range("no duration constraint for value '" + value + "' of '" + name + "'");
  }
  return it->second;
}

std::vector<TokenTimes> token_times(const Timeline& timeline) {
  std::vector<TokenTimes> times;
  times.reserve(timeline.tokens.size());
  Rational clock;
  for (const auto& token : timeline.tokens) {
    const Rational end = clock + token.duration;
    times.push_back({clock, end});
    clock = end;
  }
  return times;
}

std::optional<TimelineViolation> check_timeline(const StateVariable& variable,
                                                const Timeline& timeline) {
  using Kind = TimelineViolation::Kind;
  if (timeline.variable != variable.name) {
    return TimelineViolation{Kind::variable_mismatch, 0,
                             "timeline for '" + timeline.variable + "' checked against '" +
                                 variable.name + "'"};
  }
  if (timeline.tokens.empty()) {
    return TimelineViolation{Kind::empty, 0, "timeline for '" + variable.name + "' is empty"};
  }
  for (std::size_t i = 0; i < timeline.tokens.size(); ++i) {
    const Token& token = timeline.tokens[i];
    if (!variable.has_value(token.value)) {
      return TimelineViolation{Kind::unknown_value, i,
                               "value '" + token.value + "' is not in the domain of '" +
                                   variable.name + "'"};
    }
    if (i > 0 && !variable.allows(timeline.tokens[i - 1].value, token.value)) {
      return TimelineViolation{Kind::transition, i,
                               "'" + token.value + "' may not follow '" +
                                   timeline.tokens[i - 1].value + "'"};
    }
    const Interval& allowed = variable.duration(token.value);
    if (!allowed.contains(token.duration)) {
      return TimelineViolation{Kind::duration, i,
                               "duration " + token.duration.to_string() + " of '" + token.value +
                                   "' is outside " + allowed.to_string()};
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_variable(const StateVariable& variable) {
  if (variable.name.empty()) return "state variable with an empty name";
  std::set<std::string> seen;
  for (const auto& v : variable.values) {
    if (v.empty()) return "empty value name in '" + variable.name + "'";
    if (!seen.insert(v).second) return "duplicate value '" + v + "' in '" + variable.name + "'";
  }
  for (const auto& v : variable.values) {
    const auto t = variable.transitions.find(v);
    if (t == variable.transitions.end()) {
      return "no transitions given for value '" + v + "' of '" + variable.name + "'";
    }
    for (const auto& next : t->second) {
      if (!seen.contains(next)) {
        return "successor '" + next + "' of '" + v + "' is not a value of '" + variable.name + "'";
      }
    }
    if (!variable.durations.contains(v)) {
      return "no duration given for value '" + v + "' of '" + variable.name + "'";
    }
  }
  for (const auto& [v, _] : variable.transitions) {
    if (!seen.contains(v)) return "transitions given for unknown value '" + v + "'";
  }
  for (const auto& [v, _] : variable.durations) {
    if (!seen.contains(v)) return "duration given for unknown value '" + v + "'";
  }
  return std::nullopt;
}

const char* to_string(Event event) { return event == Event::start ? "start" : "end"; }

const char* to_string(Semantics semantics) {
  return semantics == Semantics::standard ? "standard" : "future";
}

const Interval& atom_interval(const Atom& atom) {
  return std::visit([](const auto& a) -> const Interval& { return a.interval; }, atom);
}

std::vector<std::string> atom_names(const Atom& atom) {
  if (const auto* a = std::get_if<IntervalAtom>(&atom)) return {a->left, a->right};
  if (const auto* a = std::get_if<TokenBeforeConstant>(&atom)) return {a->token};
  return {std::get<ConstantBeforeToken>(atom).token};
}

std::vector<std::string> ExistentialStatement::free_names() const {
  std::vector<std::string> result;
  for (const auto& atom : atoms) {
    for (auto& name : atom_names(atom)) {
      const bool quantified = std::any_of(quantifiers.begin(), quantifiers.end(),
                                          [&](const Quantifier& q) { return q.name == name; });
      if (!quantified && std::find(result.begin(), result.end(), name) == result.end()) {
        result.push_back(std::move(name));
      }
    }
  }
  return result;
}

const StateVariable* Domain::find_variable(const std::string& name) const {
  for (const auto& v : variables) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

namespace {

std::optional<std::string> check_quantifier(const Domain& domain, const Quantifier& q) {
  if (q.name.empty()) return std::string("empty token name");
  const StateVariable* var = domain.find_variable(q.variable);
  if (var == nullptr) return "undeclared state variable '" + q.variable + "'";
  if (!var->has_value(q.value)) {
    return "value '" + q.value + "' is not in the domain of '" + q.variable + "'";
  }
  return std::nullopt;
}

}  // namespace

std::optional<RuleViolation> well_formed_rule(const Domain& domain,
                                              const SynchronizationRule& rule) {
  if (rule.trigger) {
    if (auto problem = check_quantifier(domain, *rule.trigger)) {
      return RuleViolation{std::nullopt, rule.trigger->name, "trigger: " + *problem};
    }
  }
  for (std::size_t d = 0; d < rule.disjuncts.size(); ++d) {
    const auto& statement = rule.disjuncts[d];
    std::set<std::string> bound;
    for (const auto& q : statement.quantifiers) {
      if (auto problem = check_quantifier(domain, q)) {
        return RuleViolation{d, q.name, *problem};
      }
      if (rule.trigger && q.name == rule.trigger->name) {
        return RuleViolation{d, q.name, "trigger name '" + q.name + "' is re-quantified"};
      }
      if (!bound.insert(q.name).second) {
        return RuleViolation{d, q.name, "token name '" + q.name + "' is quantified twice"};
      }
    }
    for (const auto& name : statement.free_names()) {
      if (!rule.trigger) {
        return RuleViolation{d, name, "free token name '" + name + "' in a trigger-less rule"};
      }
      if (name != rule.trigger->name) {
        return RuleViolation{d, name, "free token name '" + name + "' is not the trigger"};
      }
    }
  }
  return std::nullopt;
}

void check_domain(const Domain& domain) {
  std::set<std::string> names;
  for (const auto& var : domain.variables) {
    if (auto problem = check_variable(var)) throw std::invalid_argument(*problem);
    if (!names.insert(var.name).second) {
      throw std::invalid_argument("duplicate state variable '" + var.name + "'");
    }
  }
  for (std::size_t r = 0; r < domain.rules.size(); ++r) {
    if (auto v = well_formed_rule(domain, domain.rules[r])) {
      std::string where = "rule " + std::to_string(r);
      if (!domain.rules[r].label.empty()) where += " (" + domain.rules[r].label + ")";
      if (v->disjunct) where += ", disjunct " + std::to_string(*v->disjunct);
      throw std::invalid_argument(where + ": " + v->message);
    }
  }
}

SynchronizationRule futurize(const SynchronizationRule& rule) {
  if (!rule.trigger) return rule;
  SynchronizationRule result = rule;
  for (auto& statement : result.disjuncts) {
    for (const auto& q : statement.quantifiers) {
      statement.atoms.push_back(IntervalAtom{rule.trigger->name, Event::start, q.name,
                                             Event::start, Interval::non_negative()});
    }
  }
  return result;
}

}  // namespace tpkit
