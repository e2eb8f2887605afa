#include "tpkit/validator.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace tpkit {

namespace {

class TimedPlan {
 public:
  explicit TimedPlan(const MultiTimeline& plan) : plan_(plan) {
    for (const auto& [name, timeline] : plan) times_.emplace(name, token_times(timeline));
  }

  const MultiTimeline& plan() const { return plan_; }

  const TokenTimes& at(const TokenRef& ref) const {
    const auto it = times_.find(ref.variable);
    if (it == times_.end() || ref.index >= it->second.size()) {
      throw std::invalid_argument("token reference " + ref.variable + "[" +
                                  std::to_string(ref.index) + "] is outside the multi-timeline");
    }
    return it->second[ref.index];
  }

  const std::vector<TokenTimes>* times_of(const std::string& variable) const {
    const auto it = times_.find(variable);
    return it == times_.end() ? nullptr : &it->second;
  }

 private:
  const MultiTimeline& plan_;
  std::map<std::string, std::vector<TokenTimes>> times_;
};

const Rational& event_time(const TokenTimes& times, Event event) {
  return event == Event::start ? times.start : times.end;
}

Rational natural(std::uint64_t n) {
  if (n > static_cast<std::uint64_t>(INT64_MAX)) throw std::overflow_error("time-point bound too large");
  return Rational(static_cast<std::int64_t>(n));
}

template <typename Lookup>
bool evaluate_atom(const Atom& atom, Lookup&& lookup) {
  if (const auto* a = std::get_if<IntervalAtom>(&atom)) {
    const Rational diff = event_time(lookup(a->right), a->right_event) -
                          event_time(lookup(a->left), a->left_event);
    return a->interval.contains(diff);
  }
  if (const auto* a = std::get_if<TokenBeforeConstant>(&atom)) {
    return a->interval.contains(natural(a->bound) - event_time(lookup(a->token), a->event));
  }
  const auto& a = std::get<ConstantBeforeToken>(atom);
  return a.interval.contains(event_time(lookup(a.token), a.event) - natural(a.bound));
}

std::vector<std::size_t> positions_with_value(const TimedPlan& timed, const Quantifier& q,
                                              const std::optional<Rational>& not_before) {
  std::vector<std::size_t> result;
  const auto it = timed.plan().find(q.variable);
  if (it == timed.plan().end()) return result;
  const auto& tokens = it->second.tokens;
  const auto* times = timed.times_of(q.variable);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].value != q.value) continue;
    if (not_before && (*times)[i].start < *not_before) continue;
    result.push_back(i);
  }
  return result;
}

/// Backtracking over quantifiers, most constrained first; an atom is checked
/// as soon as every name it mentions is bound.
class ExistentialSearch {
 public:
  ExistentialSearch(const TimedPlan& timed, const ExistentialStatement& statement,
                    const Assignment& fixed, std::optional<Rational> not_before)
      : timed_(timed), statement_(statement), assignment_(fixed) {
    const std::size_t n = statement.quantifiers.size();
    candidates_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      candidates_[i] = positions_with_value(timed, statement.quantifiers[i], not_before);
    }
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return candidates_[a].size() < candidates_[b].size();
    });

    std::map<std::string, std::size_t> level_of;
    for (const auto& [name, _] : fixed) level_of[name] = 0;
    for (std::size_t depth = 0; depth < n; ++depth) {
      level_of[statement.quantifiers[order_[depth]].name] = depth + 1;
    }
    atoms_at_level_.resize(n + 1);
    for (const auto& atom : statement.atoms) {
      std::size_t level = 0;
      for (const auto& name : atom_names(atom)) {
        const auto it = level_of.find(name);
        if (it == level_of.end()) {
          throw std::invalid_argument("token name '" + name + "' is neither bound nor quantified");
        }
        level = std::max(level, it->second);
      }
      atoms_at_level_[level].push_back(&atom);
    }
  }

  std::optional<Assignment> run() {
    if (!atoms_hold(0)) return std::nullopt;
    if (extend(0)) return assignment_;
    return std::nullopt;
  }

 private:
  bool atoms_hold(std::size_t level) const {
    const auto lookup = [&](const std::string& name) -> const TokenTimes& {
      return timed_.at(assignment_.at(name));
    };
    return std::all_of(atoms_at_level_[level].begin(), atoms_at_level_[level].end(),
                       [&](const Atom* atom) { return evaluate_atom(*atom, lookup); });
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size()) return true;
    const Quantifier& q = statement_.quantifiers[order_[depth]];
    for (const std::size_t pos : candidates_[order_[depth]]) {
      assignment_[q.name] = TokenRef{q.variable, pos};
      if (atoms_hold(depth + 1) && extend(depth + 1)) return true;
    }
    assignment_.erase(q.name);
    return false;
  }

  const TimedPlan& timed_;
  const ExistentialStatement& statement_;
  Assignment assignment_;
  std::vector<std::vector<std::size_t>> candidates_;
  std::vector<std::size_t> order_;
  std::vector<std::vector<const Atom*>> atoms_at_level_;
};

ValidationReport evaluate_rule(const TimedPlan& timed, const SynchronizationRule& rule,
                               Semantics semantics) {
  ValidationReport report;
  RuleOutcome outcome;
  outcome.label = rule.label;

  if (!rule.trigger) {
    outcome.satisfied = std::any_of(
        rule.disjuncts.begin(), rule.disjuncts.end(), [&](const ExistentialStatement& st) {
          return ExistentialSearch(timed, st, {}, std::nullopt).run().has_value();
        });
  } else {
    outcome.satisfied = true;
    const Quantifier& trigger = *rule.trigger;
    const auto it = timed.plan().find(trigger.variable);
    if (it != timed.plan().end()) {
      const auto& tokens = it->second.tokens;
      const auto& times = *timed.times_of(trigger.variable);
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i].value != trigger.value) continue;
        const Assignment fixed{{trigger.name, TokenRef{trigger.variable, i}}};
        std::optional<Rational> not_before;
        if (semantics == Semantics::future) not_before = times[i].start;
        const bool some = std::any_of(
            rule.disjuncts.begin(), rule.disjuncts.end(), [&](const ExistentialStatement& st) {
              return ExistentialSearch(timed, st, fixed, not_before).run().has_value();
            });
        if (!some) {
          outcome.satisfied = false;
          outcome.failing_position = i;
          break;
        }
      }
    }
  }
  report.verdict = outcome.satisfied;
  report.rules.push_back(std::move(outcome));
  return report;
}

}  // namespace

bool atom_satisfied(const Atom& atom, const Assignment& assignment, const MultiTimeline& plan) {
  const auto lookup = [&](const std::string& name) -> TokenTimes {
    const auto it = assignment.find(name);
    if (it == assignment.end()) throw std::invalid_argument("unbound token name '" + name + "'");
    const auto tl = plan.find(it->second.variable);
    if (tl == plan.end() || it->second.index >= tl->second.tokens.size()) {
      throw std::invalid_argument("token name '" + name + "' is bound outside the multi-timeline");
    }
    Rational start;
    for (std::size_t i = 0; i < it->second.index; ++i) start += tl->second.tokens[i].duration;
    return TokenTimes{start, start + tl->second.tokens[it->second.index].duration};
  };
  return evaluate_atom(atom, lookup);
}

std::optional<Assignment> satisfies_existential(const MultiTimeline& plan,
                                                const ExistentialStatement& statement,
                                                const Assignment& fixed) {
  const TimedPlan timed(plan);
  return ExistentialSearch(timed, statement, fixed, std::nullopt).run();
}

ValidationReport satisfies_rule(const MultiTimeline& plan, const SynchronizationRule& rule,
                                Semantics semantics) {
  const TimedPlan timed(plan);
  return evaluate_rule(timed, rule, semantics);
}

ValidationReport is_plan(const Domain& domain, const MultiTimeline& plan, Semantics semantics) {
  if (plan.size() != domain.variables.size()) {
    throw std::invalid_argument("multi-timeline has " + std::to_string(plan.size()) +
                                " timelines but the domain declares " +
                                std::to_string(domain.variables.size()) + " state variables");
  }
  for (const auto& var : domain.variables) {
    if (!plan.contains(var.name)) {
      throw std::invalid_argument("multi-timeline has no timeline for '" + var.name + "'");
    }
  }

  ValidationReport report;
  for (const auto& var : domain.variables) {
    if (auto violation = check_timeline(var, plan.at(var.name))) {
      report.verdict = false;
      report.timelines.push_back({var.name, std::move(*violation)});
    }
  }
  const TimedPlan timed(plan);
  for (std::size_t r = 0; r < domain.rules.size(); ++r) {
    auto single = evaluate_rule(timed, domain.rules[r], semantics);
    single.rules.front().rule = r;
    report.verdict = report.verdict && single.verdict;
    report.rules.push_back(std::move(single.rules.front()));
  }
  return report;
}

bool brute_force_satisfies(const MultiTimeline& plan, const SynchronizationRule& rule,
                           Semantics semantics, std::size_t cap) {
  // Deliberately naive: recomputes token times from scratch and walks every
  // combination of value-matching positions.
  const auto start_of = [&](const TokenRef& ref) {
    Rational t;
    const auto& tokens = plan.at(ref.variable).tokens;
    for (std::size_t i = 0; i < ref.index; ++i) t += tokens[i].duration;
    return t;
  };
  const auto matching = [&](const Quantifier& q) {
    std::vector<std::size_t> out;
    const auto it = plan.find(q.variable);
    if (it == plan.end()) return out;
    for (std::size_t i = 0; i < it->second.tokens.size(); ++i) {
      if (it->second.tokens[i].value == q.value) out.push_back(i);
    }
    return out;
  };

  std::size_t budget = 0;
  const auto statement_holds = [&](const ExistentialStatement& st, const Assignment& fixed,
                                   const std::optional<TokenRef>& trigger) {
    std::vector<std::vector<std::size_t>> choices;
    std::size_t combos = 1;
    for (const auto& q : st.quantifiers) {
      choices.push_back(matching(q));
      combos *= choices.back().size();
      if (combos > cap) throw std::length_error("brute-force candidate cap exceeded");
    }
    budget += combos;
    if (budget > cap) throw std::length_error("brute-force candidate cap exceeded");
    if (combos == 0) return false;

    std::vector<std::size_t> odometer(st.quantifiers.size(), 0);
    while (true) {
      Assignment a = fixed;
      bool future_ok = true;
      for (std::size_t k = 0; k < odometer.size(); ++k) {
        const TokenRef ref{st.quantifiers[k].variable, choices[k][odometer[k]]};
        a[st.quantifiers[k].name] = ref;
        if (semantics == Semantics::future && trigger && start_of(ref) < start_of(*trigger)) {
          future_ok = false;
        }
      }
      if (future_ok && std::all_of(st.atoms.begin(), st.atoms.end(), [&](const Atom& atom) {
            return atom_satisfied(atom, a, plan);
          })) {
        return true;
      }
      std::size_t k = 0;
      while (k < odometer.size() && ++odometer[k] == choices[k].size()) {
        odometer[k] = 0;
        ++k;
      }
      if (k == odometer.size()) return false;
    }
  };

  if (!rule.trigger) {
    for (const auto& st : rule.disjuncts) {
      if (statement_holds(st, {}, std::nullopt)) return true;
    }
    return false;
  }
  for (const std::size_t i : matching(*rule.trigger)) {
    const TokenRef trig{rule.trigger->variable, i};
    const Assignment fixed{{rule.trigger->name, trig}};
    bool some = false;
    for (const auto& st : rule.disjuncts) {
      if (statement_holds(st, fixed, trig)) {
        some = true;
        break;
      }
    }
    if (!some) return false;
  }
  return true;
}

}  // namespace tpkit
