#include "tpkit/solver.hpp"

#include <algorithm>
#include <stdexcept>

namespace tpkit::solver {

std::size_t ConstraintSystem::add_variable(std::string name) {
  variables.push_back(std::move(name));
  return variables.size() - 1;
}

void ConstraintSystem::add(std::size_t x, std::size_t y, Rational bound, bool strict) {
  if (x >= variables.size() || y >= variables.size()) {
    throw std::out_of_range("difference constraint over an unknown variable");
  }
  constraints.push_back({x, y, std::move(bound), strict});
}

bool satisfies(const ConstraintSystem& system, const std::vector<Rational>& values) {
  if (values.size() != system.size()) return false;
  return std::all_of(system.constraints.begin(), system.constraints.end(),
                     [&](const DifferenceConstraint& c) {
                       const Rational diff = values[c.x] - values[c.y];
                       return c.strict ? diff < c.bound : diff <= c.bound;
                     });
}

namespace {

/// a + b*eps with eps an infinitesimal; strict edges weigh -eps.
struct Potential {
  Rational a;
  std::int64_t b = 0;

  friend bool operator<(const Potential& l, const Potential& r) {
    return l.a < r.a || (l.a == r.a && l.b < r.b);
  }
};

}  // namespace

std::optional<std::vector<Rational>> feasible(const ConstraintSystem& system) {
  const std::size_t n = system.size();
  // Bellman-Ford from a virtual source joined to every variable by 0-weight edges.
  std::vector<Potential> dist(n);
  for (std::size_t round = 0; round <= n; ++round) {
    bool changed = false;
    for (const auto& c : system.constraints) {
      // x <= y + bound  : edge y -> x
      Potential via{dist[c.y].a + c.bound, dist[c.y].b - (c.strict ? 1 : 0)};
      if (via < dist[c.x]) {
        dist[c.x] = std::move(via);
        changed = true;
      }
    }
    if (!changed) break;
    if (round == n) return std::nullopt;
  }

  const Potential origin = dist[ConstraintSystem::kZero];
  std::vector<Potential> relative(n);
  for (std::size_t v = 0; v < n; ++v) relative[v] = {dist[v].a - origin.a, dist[v].b - origin.b};

  std::optional<Rational> least_slack;
  for (const auto& c : system.constraints) {
    const Rational slack = c.bound - (relative[c.x].a - relative[c.y].a);
    if (slack > Rational(0) && (!least_slack || slack < *least_slack)) least_slack = slack;
  }
  const Rational eps =
      least_slack ? *least_slack / Rational(static_cast<std::int64_t>(n + 1)) : Rational(1);

  std::vector<Rational> values(n);
  for (std::size_t v = 0; v < n; ++v) values[v] = relative[v].a + eps * Rational(relative[v].b);
  if (!satisfies(system, values)) {
    throw std::logic_error("difference-constraint solution failed its exact re-check");
  }
  return values;
}

std::string start_variable(const std::string& variable, std::size_t index) {
  return "s(" + variable + "," + std::to_string(index) + ")";
}

std::string end_variable(const std::string& variable, std::size_t index) {
  return "e(" + variable + "," + std::to_string(index) + ")";
}

namespace {

/// Maps token endpoints to constraint variables: zero, then (start, end) per
/// token, state variables in domain order.
class EndpointIndex {
 public:
  EndpointIndex(const Domain& domain, const Skeleton& skeleton) {
    std::size_t next = 1;
    for (const auto& var : domain.variables) {
      const auto it = skeleton.find(var.name);
      if (it == skeleton.end() || it->second.empty()) {
        throw std::invalid_argument("skeleton has no tokens for '" + var.name + "'");
      }
      offsets_[var.name] = {next, it->second.size()};
      next += 2 * it->second.size();
    }
    if (skeleton.size() != domain.variables.size()) {
      throw std::invalid_argument("skeleton variables differ from the domain's");
    }
    size_ = next;
  }

  std::size_t size() const { return size_; }

  std::size_t id(const TokenRef& ref, Event event) const {
    const auto it = offsets_.find(ref.variable);
    if (it == offsets_.end() || ref.index >= it->second.second) {
      throw std::invalid_argument("token " + ref.variable + "[" + std::to_string(ref.index) +
                                  "] is outside the skeleton");
    }
    return it->second.first + 2 * ref.index + (event == Event::end ? 1 : 0);
  }

 private:
  std::map<std::string, std::pair<std::size_t, std::size_t>> offsets_;
  std::size_t size_ = 1;
};

Rational natural(std::uint64_t n) {
  if (n > static_cast<std::uint64_t>(INT64_MAX)) throw std::overflow_error("bound too large");
  return Rational(static_cast<std::int64_t>(n));
}

/// (u - w + k) in I as one or two difference constraints.
void encode_membership(std::size_t u, std::size_t w, const Rational& k, const Interval& interval,
                       std::vector<DifferenceConstraint>& out) {
  out.push_back({w, u, k - natural(interval.lo()), interval.lo_open()});
  if (interval.hi()) out.push_back({u, w, natural(*interval.hi()) - k, interval.hi_open()});
}

void encode_atom(const Atom& atom, const Assignment& assignment, const EndpointIndex& index,
                 std::vector<DifferenceConstraint>& out) {
  const auto ref = [&](const std::string& name) -> const TokenRef& {
    const auto it = assignment.find(name);
    if (it == assignment.end()) throw std::invalid_argument("unbound token name '" + name + "'");
    return it->second;
  };
  constexpr std::size_t zero = ConstraintSystem::kZero;
  if (const auto* a = std::get_if<IntervalAtom>(&atom)) {
    encode_membership(index.id(ref(a->right), a->right_event), index.id(ref(a->left), a->left_event),
                      Rational(0), a->interval, out);
  } else if (const auto* a = std::get_if<TokenBeforeConstant>(&atom)) {
    encode_membership(zero, index.id(ref(a->token), a->event), natural(a->bound), a->interval, out);
  } else {
    const auto& p = std::get<ConstantBeforeToken>(atom);
    encode_membership(index.id(ref(p.token), p.event), zero, -natural(p.bound), p.interval, out);
  }
}

void encode_timelines(const Domain& domain, const Skeleton& skeleton, const EndpointIndex& index,
                      std::vector<DifferenceConstraint>& out) {
  constexpr std::size_t zero = ConstraintSystem::kZero;
  for (const auto& var : domain.variables) {
    const auto& values = skeleton.at(var.name);
    for (std::size_t i = 0; i < values.size(); ++i) {
      const std::size_t s = index.id({var.name, i}, Event::start);
      const std::size_t e = index.id({var.name, i}, Event::end);
      const std::size_t anchor = i == 0 ? zero : index.id({var.name, i - 1}, Event::end);
      out.push_back({s, anchor, Rational(0), false});
      out.push_back({anchor, s, Rational(0), false});
      encode_membership(e, s, Rational(0), var.duration(values[i]), out);
    }
  }
}

void check_values(const Domain& domain, const Skeleton& skeleton) {
  for (const auto& var : domain.variables) {
    const auto& values = skeleton.at(var.name);
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!var.has_value(values[i])) {
        throw std::invalid_argument("skeleton value '" + values[i] + "' not in '" + var.name + "'");
      }
      if (i > 0 && !var.allows(values[i - 1], values[i])) {
        throw std::invalid_argument("skeleton for '" + var.name + "' breaks the transition function");
      }
    }
  }
}

void check_choice(const Skeleton& skeleton, const SynchronizationRule& rule, const Choice& choice,
                  std::size_t rule_index) {
  const std::string where = "rule " + std::to_string(rule_index);
  if (choice.disjunct >= rule.disjuncts.size()) {
    throw std::invalid_argument(where + ": disjunct index out of range");
  }
  for (const auto& q : rule.disjuncts[choice.disjunct].quantifiers) {
    const auto it = choice.assignment.find(q.name);
    if (it == choice.assignment.end()) {
      throw std::invalid_argument(where + ": quantifier '" + q.name + "' is unassigned");
    }
    const auto& seq = skeleton.at(q.variable);
    if (it->second.variable != q.variable || it->second.index >= seq.size() ||
        seq[it->second.index] != q.value) {
      throw std::invalid_argument(where + ": '" + q.name + "' is bound to a token of the wrong value");
    }
  }
}

}  // namespace

ConstraintSystem atoms_to_constraints(const Domain& domain, const Skeleton& skeleton,
                                      const ChoiceStructure& choices, Semantics semantics) {
  const EndpointIndex index(domain, skeleton);
  check_values(domain, skeleton);

  ConstraintSystem system;
  for (const auto& var : domain.variables) {
    for (std::size_t i = 0; i < skeleton.at(var.name).size(); ++i) {
      system.add_variable(start_variable(var.name, i));
      system.add_variable(end_variable(var.name, i));
    }
  }

  std::vector<DifferenceConstraint> out;
  encode_timelines(domain, skeleton, index, out);

  for (std::size_t r = 0; r < domain.rules.size(); ++r) {
    const SynchronizationRule rule =
        semantics == Semantics::future ? futurize(domain.rules[r]) : domain.rules[r];
    if (!rule.trigger) {
      const auto it = choices.triggerless.find(r);
      if (it == choices.triggerless.end()) {
        throw std::invalid_argument("no choice for trigger-less rule " + std::to_string(r));
      }
      check_choice(skeleton, rule, it->second, r);
      for (const auto& atom : rule.disjuncts[it->second.disjunct].atoms) {
        encode_atom(atom, it->second.assignment, index, out);
      }
      continue;
    }
    const auto& seq = skeleton.at(rule.trigger->variable);
    const auto per_rule = choices.triggered.find(r);
    for (std::size_t pos = 0; pos < seq.size(); ++pos) {
      if (seq[pos] != rule.trigger->value) continue;
      const Choice* choice = nullptr;
      if (per_rule != choices.triggered.end()) {
        if (const auto it = per_rule->second.find(pos); it != per_rule->second.end()) {
          choice = &it->second;
        }
      }
      if (choice == nullptr) {
        throw std::invalid_argument("no choice for rule " + std::to_string(r) + " at position " +
                                    std::to_string(pos));
      }
      check_choice(skeleton, rule, *choice, r);
      const auto trig = choice->assignment.find(rule.trigger->name);
      if (trig == choice->assignment.end() ||
          trig->second != TokenRef{rule.trigger->variable, pos}) {
        throw std::invalid_argument("rule " + std::to_string(r) +
                                    ": trigger is not bound to its occurrence");
      }
      for (const auto& atom : rule.disjuncts[choice->disjunct].atoms) {
        encode_atom(atom, choice->assignment, index, out);
      }
    }
  }
  for (auto& c : out) system.add(c.x, c.y, std::move(c.bound), c.strict);
  return system;
}

namespace {

struct Weight {
  Rational value;
  bool strict = false;
};

bool tighter(const Weight& a, const Weight& b) {
  return a.value < b.value || (a.value == b.value && a.strict && !b.strict);
}

/// Closed difference-bound matrix; cell (i, j) bounds x_i - x_j.
class Dbm {
 public:
  explicit Dbm(std::size_t n) : n_(n), cells_(n * n) {
    for (std::size_t i = 0; i < n; ++i) at(i, i) = Weight{Rational(0), false};
  }

  /// Adds x - y <= w and restores closure; false when that makes it empty.
  bool add(const DifferenceConstraint& c) {
    const Weight w{c.bound, c.strict};
    if (const auto& back = at(c.y, c.x)) {
      const Weight cycle{back->value + w.value, back->strict || w.strict};
      if (cycle.value < Rational(0) || (cycle.value == Rational(0) && cycle.strict)) return false;
    }
    if (const auto& current = at(c.x, c.y); current && !tighter(w, *current)) return true;
    for (std::size_t i = 0; i < n_; ++i) {
      const auto& to_x = at(i, c.x);
      if (!to_x) continue;
      const Weight head{to_x->value + w.value, to_x->strict || w.strict};
      for (std::size_t j = 0; j < n_; ++j) {
        const auto& from_y = at(c.y, j);
        if (!from_y) continue;
        Weight candidate{head.value + from_y->value, head.strict || from_y->strict};
        auto& cell = at(i, j);
        if (!cell || tighter(candidate, *cell)) cell = std::move(candidate);
      }
    }
    return true;
  }

 private:
  std::optional<Weight>& at(std::size_t i, std::size_t j) { return cells_[i * n_ + j]; }

  std::size_t n_;
  std::vector<std::optional<Weight>> cells_;
};

struct Candidate {
  Choice choice;
  std::vector<DifferenceConstraint> constraints;
};

/// A trigger occurrence (or a trigger-less rule) that needs one choice.
struct Occurrence {
  std::size_t rule = 0;
  std::optional<std::size_t> position;
  std::vector<Candidate> candidates;
};

std::vector<std::vector<std::string>> sequences(const StateVariable& var, std::size_t length) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> current;
  const auto extend = [&](auto&& self) -> void {
    if (current.size() == length) {
      out.push_back(current);
      return;
    }
    for (const auto& v : var.values) {
      if (!current.empty() && !var.allows(current.back(), v)) continue;
      current.push_back(v);
      self(self);
      current.pop_back();
    }
  };
  extend(extend);
  return out;
}

/// Lexicographic compositions of `total` into `parts` values in [1, cap].
void compositions(std::size_t total, std::size_t parts, std::size_t cap,
                  std::vector<std::size_t>& prefix, std::vector<std::vector<std::size_t>>& out) {
  if (parts == 0) {
    if (total == 0) out.push_back(prefix);
    return;
  }
  for (std::size_t k = 1; k <= cap && k <= total; ++k) {
    if (total - k < parts - 1 || total - k > (parts - 1) * cap) continue;
    prefix.push_back(k);
    compositions(total - k, parts - 1, cap, prefix, out);
    prefix.pop_back();
  }
}

std::vector<Choice> value_consistent_choices(const SynchronizationRule& rule, const Skeleton& skeleton,
                                             const Assignment& fixed) {
  std::vector<Choice> out;
  for (std::size_t d = 0; d < rule.disjuncts.size(); ++d) {
    const auto& quantifiers = rule.disjuncts[d].quantifiers;
    std::vector<std::vector<std::size_t>> options;
    bool empty = false;
    for (const auto& q : quantifiers) {
      std::vector<std::size_t> positions;
      const auto& seq = skeleton.at(q.variable);
      for (std::size_t i = 0; i < seq.size(); ++i) {
        if (seq[i] == q.value) positions.push_back(i);
      }
      empty = empty || positions.empty();
      options.push_back(std::move(positions));
    }
    if (empty) continue;
    // Lexicographic over quantifiers in declaration order.
    std::vector<std::size_t> odometer(quantifiers.size(), 0);
    while (true) {
      Choice choice{d, fixed};
      for (std::size_t k = 0; k < quantifiers.size(); ++k) {
        choice.assignment[quantifiers[k].name] = TokenRef{quantifiers[k].variable, options[k][odometer[k]]};
      }
      out.push_back(std::move(choice));
      std::size_t k = quantifiers.size();
      while (k > 0 && ++odometer[k - 1] == options[k - 1].size()) {
        odometer[k - 1] = 0;
        --k;
      }
      if (k == 0) break;
    }
  }
  return out;
}

class SkeletonSearch {
 public:
  SkeletonSearch(const Domain& domain, const std::vector<SynchronizationRule>& rules,
                 const Skeleton& skeleton, Semantics semantics, SolveStats& stats)
      : domain_(domain), rules_(rules), skeleton_(skeleton), semantics_(semantics),
        index_(domain, skeleton), stats_(stats) {}

  std::optional<MultiTimeline> run() {
    if (!collect_occurrences()) return std::nullopt;
    Dbm dbm(index_.size());
    std::vector<DifferenceConstraint> base;
    encode_timelines(domain_, skeleton_, index_, base);
    for (const auto& c : base) {
      if (!dbm.add(c)) return std::nullopt;
    }
    chosen_.assign(occurrences_.size(), nullptr);
    return descend(0, dbm);
  }

 private:
  bool collect_occurrences() {
    // Trigger-less rules first: they are the cheapest to refute.
    for (std::size_t r = 0; r < rules_.size(); ++r) {
      if (rules_[r].trigger) continue;
      Occurrence occ{r, std::nullopt, {}};
      for (auto& choice : value_consistent_choices(rules_[r], skeleton_, {})) {
        occ.candidates.push_back(make_candidate(r, std::move(choice)));
      }
      if (occ.candidates.empty()) return false;
      occurrences_.push_back(std::move(occ));
    }
    for (const auto& var : domain_.variables) {
      const auto& seq = skeleton_.at(var.name);
      for (std::size_t pos = 0; pos < seq.size(); ++pos) {
        for (std::size_t r = 0; r < rules_.size(); ++r) {
          const auto& trigger = rules_[r].trigger;
          if (!trigger || trigger->variable != var.name || trigger->value != seq[pos]) continue;
          Occurrence occ{r, pos, {}};
          const Assignment fixed{{trigger->name, TokenRef{var.name, pos}}};
          for (auto& choice : value_consistent_choices(rules_[r], skeleton_, fixed)) {
            occ.candidates.push_back(make_candidate(r, std::move(choice)));
          }
          if (occ.candidates.empty()) return false;
          occurrences_.push_back(std::move(occ));
        }
      }
    }
    return true;
  }

  Candidate make_candidate(std::size_t rule, Choice choice) const {
    Candidate candidate{std::move(choice), {}};
    for (const auto& atom : rules_[rule].disjuncts[candidate.choice.disjunct].atoms) {
      encode_atom(atom, candidate.choice.assignment, index_, candidate.constraints);
    }
    return candidate;
  }

  std::optional<MultiTimeline> descend(std::size_t depth, const Dbm& dbm) {
    ++stats_.search_nodes;
    if (depth == occurrences_.size()) return materialize();
    for (const auto& candidate : occurrences_[depth].candidates) {
      Dbm next = dbm;
      const bool consistent = std::all_of(candidate.constraints.begin(), candidate.constraints.end(),
                                          [&](const DifferenceConstraint& c) { return next.add(c); });
      if (!consistent) continue;
      chosen_[depth] = &candidate;
      if (auto plan = descend(depth + 1, next)) return plan;
    }
    chosen_[depth] = nullptr;
    return std::nullopt;
  }

  std::optional<MultiTimeline> materialize() const {
    ChoiceStructure choices;
    for (std::size_t i = 0; i < occurrences_.size(); ++i) {
      const auto& occ = occurrences_[i];
      if (occ.position) {
        choices.triggered[occ.rule][*occ.position] = chosen_[i]->choice;
      } else {
        choices.triggerless[occ.rule] = chosen_[i]->choice;
      }
    }
    const ConstraintSystem system = atoms_to_constraints(domain_, skeleton_, choices, semantics_);
    const auto values = feasible(system);
    if (!values) throw std::logic_error("closed difference-bound matrix disagrees with feasible()");

    MultiTimeline plan;
    for (const auto& var : domain_.variables) {
      Timeline timeline{var.name, {}};
      const auto& seq = skeleton_.at(var.name);
      for (std::size_t i = 0; i < seq.size(); ++i) {
        const Rational duration = (*values)[index_.id({var.name, i}, Event::end)] -
                                  (*values)[index_.id({var.name, i}, Event::start)];
        timeline.tokens.push_back(Token{seq[i], duration});
      }
      plan.emplace(var.name, std::move(timeline));
    }
    return plan;
  }

  const Domain& domain_;
  const std::vector<SynchronizationRule>& rules_;
  const Skeleton& skeleton_;
  Semantics semantics_;
  EndpointIndex index_;
  SolveStats& stats_;
  std::vector<Occurrence> occurrences_;
  std::vector<const Candidate*> chosen_;
};

}  // namespace

std::optional<MultiTimeline> bounded_solve(const Domain& domain, std::size_t token_bound,
                                           Semantics semantics, SolveStats* stats) {
  SolveStats local;
  SolveStats& counters = stats ? *stats : local;
  check_domain(domain);
  if (domain.variables.empty() || token_bound == 0) return std::nullopt;

  for (const auto& rule : domain.rules) {
    if (!rule.trigger && rule.disjuncts.empty()) return std::nullopt;
  }

  std::vector<SynchronizationRule> rules;
  for (const auto& rule : domain.rules) {
    rules.push_back(semantics == Semantics::future ? futurize(rule) : rule);
  }

  const std::size_t parts = domain.variables.size();
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::vector<std::string>>> cache;
  const auto sequences_of = [&](std::size_t var, std::size_t length)
      -> const std::vector<std::vector<std::string>>& {
    auto [it, fresh] = cache.try_emplace({var, length});
    if (fresh) it->second = sequences(domain.variables[var], length);
    return it->second;
  };

  for (std::size_t total = parts; total <= parts * token_bound; ++total) {
    std::vector<std::vector<std::size_t>> shapes;
    std::vector<std::size_t> prefix;
    compositions(total, parts, token_bound, prefix, shapes);
    for (const auto& lengths : shapes) {
      std::vector<const std::vector<std::vector<std::string>>*> pools;
      bool empty = false;
      for (std::size_t v = 0; v < parts; ++v) {
        pools.push_back(&sequences_of(v, lengths[v]));
        empty = empty || pools.back()->empty();
      }
      if (empty) continue;
      std::vector<std::size_t> odometer(parts, 0);
      while (true) {
        Skeleton skeleton;
        for (std::size_t v = 0; v < parts; ++v) {
          skeleton.emplace(domain.variables[v].name, (*pools[v])[odometer[v]]);
        }
        ++counters.skeletons;
        if (auto plan = SkeletonSearch(domain, rules, skeleton, semantics, counters).run()) {
          return plan;
        }
        std::size_t k = parts;
        while (k > 0 && ++odometer[k - 1] == pools[k - 1]->size()) {
          odometer[k - 1] = 0;
          --k;
        }
        if (k == 0) break;
      }
    }
  }
  return std::nullopt;
}

}  // namespace tpkit::solver
