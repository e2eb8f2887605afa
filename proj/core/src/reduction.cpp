#include "tpkit/reduction.hpp"

#include <algorithm>
#include <stdexcept>

namespace tpkit::reduction {

using minsky::Configuration;
using minsky::Machine;
using minsky::OpKind;
using minsky::Transition;

namespace {

constexpr std::array<Tag, 3> kTags{Tag::beg, Tag::hash, Tag::end};

bool zero_tests(const Transition& t, int counter) {
  return t.op.kind == OpKind::zero && t.op.counter == counter;
}

/// Counter left untouched by the transition (the "equality" counters).
bool preserves(const Transition& t, int counter) {
  return t.op.counter != counter || t.op.kind == OpKind::zero;
}

std::vector<Atom> punctual(const std::string& left, Event left_event, const std::string& right,
                           Event right_event, std::uint64_t distance) {
  return {IntervalAtom{left, left_event, right, right_event, Interval::at_least(distance)},
          IntervalAtom{left, left_event, right, right_event, Interval::at_most(distance)}};
}

void append(std::vector<Atom>& atoms, std::vector<Atom> more) {
  atoms.insert(atoms.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

const std::string kTrigger = "o";
const std::string kWitness = "o'";

SynchronizationRule trigger_rule(const ReductionValue& trigger,
                                 const std::vector<ReductionValue>& targets,
                                 const std::vector<Atom>& atoms, std::string label) {
  SynchronizationRule rule;
  rule.trigger = Quantifier{kTrigger, kVariableName, value_name(trigger)};
  for (const auto& target : targets) {
    rule.disjuncts.push_back(
        ExistentialStatement{{Quantifier{kWitness, kVariableName, value_name(target)}}, atoms});
  }
  rule.label = std::move(label);
  return rule;
}

std::vector<ReductionValue> sec_family(std::size_t transitions, int counter, Tag tag) {
  std::vector<ReductionValue> out;
  for (std::size_t u = 0; u < transitions; ++u) out.push_back(ReductionValue::sec(u, counter, tag));
  return out;
}

std::string describe(const ReductionValue& v) { return value_name(v); }

std::invalid_argument shape_failure(const ShapeError& e) {
  return std::invalid_argument("word position " + std::to_string(e.position) + ": " + e.message);
}

ParsedCode parse_or_throw(const Machine& machine, const CodeWord& word) {
  auto parsed = parse_code(machine, word);
  if (const auto* err = std::get_if<ShapeError>(&parsed)) throw shape_failure(*err);
  return std::get<ParsedCode>(std::move(parsed));
}

}  // namespace

const char* to_string(Tag tag) {
  switch (tag) {
    case Tag::beg:
      return "beg";
    case Tag::hash:
      return "#";
    case Tag::end:
      return "end";
  }
  return "?";
}

const char* to_string(Requirement requirement) {
  switch (requirement) {
    case Requirement::equality:
      return "equality";
    case Requirement::increment:
      return "increment";
    case Requirement::decrement:
      return "decrement";
  }
  return "?";
}

const char* to_string(Mutation mutation) {
  switch (mutation) {
    case Mutation::insert_hash:
      return "insert_hash";
    case Mutation::delete_hash:
      return "delete_hash";
    case Mutation::stretch_config:
      return "stretch_config";
    case Mutation::swap_tags:
      return "swap_tags";
  }
  return "?";
}

std::string value_name(const ReductionValue& value) {
  std::string name = "d" + std::to_string(value.transition + 1);
  if (value.is_main()) return name;
  return name + "." + std::to_string(value.counter) + "." + to_string(value.tag);
}

ReductionValue parse_value_name(const std::string& name) {
  const auto fail = [&] { return std::invalid_argument("'" + name + "' is not a reduction value"); };
  if (name.size() < 2 || name[0] != 'd') throw fail();
  std::size_t pos = 1;
  std::size_t index = 0;
  std::size_t digits = 0;
  while (pos < name.size() && name[pos] >= '0' && name[pos] <= '9') {
    index = index * 10 + static_cast<std::size_t>(name[pos] - '0');
    ++pos;
    ++digits;
  }
  if (digits == 0 || index == 0 || name[1] == '0') throw fail();
  if (pos == name.size()) return ReductionValue::main(index - 1);
  if (name.size() < pos + 4 || name[pos] != '.' || (name[pos + 1] != '1' && name[pos + 1] != '2') ||
      name[pos + 2] != '.') {
    throw fail();
  }
  const int counter = name[pos + 1] - '0';
  const std::string tag = name.substr(pos + 3);
  for (const Tag t : kTags) {
    if (tag == to_string(t)) return ReductionValue::sec(index - 1, counter, t);
  }
  throw fail();
}

std::vector<ReductionValue> value_alphabet(const Machine& machine) {
  std::vector<ReductionValue> out;
  const std::size_t n = machine.transitions.size();
  for (std::size_t d = 0; d < n; ++d) out.push_back(ReductionValue::main(d));
  for (std::size_t d = 0; d < n; ++d) {
    for (int c = 1; c <= 2; ++c) {
      for (const Tag t : kTags) out.push_back(ReductionValue::sec(d, c, t));
    }
  }
  return out;
}

Domain compile(const Machine& machine) {
  if (auto problem = validate_machine(machine)) {
    throw std::invalid_argument("invalid machine: " + *problem);
  }
  const auto& delta = machine.transitions;
  const std::size_t n = delta.size();
  const std::size_t init = machine.initial_transition();
  const auto halts = [&](std::size_t d) { return delta[d].to == machine.halting; };

  // The value transition function: main -> counter-1 block -> counter-2 block
  // -> next main. Zero tests and the initial configuration force empty blocks.
  StateVariable x;
  x.name = kVariableName;
  for (const auto& v : value_alphabet(machine)) {
    const std::string name = value_name(v);
    x.values.push_back(name);
    x.durations.emplace(name, Interval::positive());
    std::vector<ReductionValue> next;
    if (v.is_main()) {
      next.push_back(ReductionValue::sec(v.transition, 1, Tag::beg));
    } else if (v.tag == Tag::beg) {
      if (!zero_tests(delta[v.transition], v.counter) && v.transition != init) {
        next.push_back(ReductionValue::sec(v.transition, v.counter, Tag::hash));
      }
      next.push_back(ReductionValue::sec(v.transition, v.counter, Tag::end));
    } else if (v.tag == Tag::hash) {
      next.push_back(ReductionValue::sec(v.transition, v.counter, Tag::hash));
      next.push_back(ReductionValue::sec(v.transition, v.counter, Tag::end));
    } else if (v.counter == 1) {
      next.push_back(ReductionValue::sec(v.transition, 2, Tag::beg));
    } else {
      for (std::size_t u = 0; u < n; ++u) {
        if (u != init && delta[u].from == delta[v.transition].to) {
          next.push_back(ReductionValue::main(u));
        }
      }
    }
    auto& successors = x.transitions[name];
    for (const auto& s : next) successors.push_back(value_name(s));
  }

  Domain domain;
  domain.variables.push_back(std::move(x));
  auto& rules = domain.rules;

  {
    SynchronizationRule r;
    r.label = "initial";
    r.disjuncts.push_back(
        {{Quantifier{kTrigger, kVariableName, value_name(ReductionValue::main(init))}}, {}});
    rules.push_back(std::move(r));
  }
  {
    SynchronizationRule r;
    r.label = "halting";
    for (std::size_t d = 0; d < n; ++d) {
      if (halts(d)) {
        r.disjuncts.push_back(
            {{Quantifier{kTrigger, kVariableName, value_name(ReductionValue::main(d))}}, {}});
      }
    }
    rules.push_back(std::move(r));
  }

  std::vector<ReductionValue> mains;
  for (std::size_t u = 0; u < n; ++u) mains.push_back(ReductionValue::main(u));

  const auto start_shift = punctual(kTrigger, Event::start, kWitness, Event::start, 1);
  auto both_shift = start_shift;
  append(both_shift, punctual(kTrigger, Event::end, kWitness, Event::end, 1));

  for (std::size_t d = 0; d < n; ++d) {
    if (halts(d)) continue;
    const auto v = ReductionValue::main(d);
    rules.push_back(trigger_rule(v, mains, start_shift, "unit-distance " + describe(v)));
  }

  for (std::size_t d = 0; d < n; ++d) {
    if (halts(d)) continue;
    for (int c = 1; c <= 2; ++c) {
      if (!preserves(delta[d], c)) continue;
      for (const Tag t : kTags) {
        const auto v = ReductionValue::sec(d, c, t);
        rules.push_back(trigger_rule(v, sec_family(n, c, t), t == Tag::end ? start_shift : both_shift,
                                     "equality " + describe(v)));
      }
    }
  }

  for (std::size_t d = 0; d < n; ++d) {
    if (halts(d) || delta[d].op.kind != OpKind::inc) continue;
    const int c = delta[d].op.counter;
    const auto beg = ReductionValue::sec(d, c, Tag::beg);
    const auto hash = ReductionValue::sec(d, c, Tag::hash);
    const auto end = ReductionValue::sec(d, c, Tag::end);
    // (i) a new beg ends exactly one unit after the old beg starts
    rules.push_back(trigger_rule(beg, sec_family(n, c, Tag::beg),
                                 punctual(kTrigger, Event::start, kWitness, Event::end, 1),
                                 "increment(i) " + describe(beg)));
    // (ii) the old beg and every old # reappear as # one unit later
    rules.push_back(trigger_rule(beg, sec_family(n, c, Tag::hash), both_shift,
                                 "increment(ii) " + describe(beg)));
    rules.push_back(trigger_rule(hash, sec_family(n, c, Tag::hash), both_shift,
                                 "increment(ii) " + describe(hash)));
    // (iii)
    rules.push_back(trigger_rule(end, sec_family(n, c, Tag::end), start_shift,
                                 "increment(iii) " + describe(end)));
  }

  for (std::size_t d = 0; d < n; ++d) {
    if (halts(d) || delta[d].op.kind != OpKind::dec) continue;
    const int c = delta[d].op.counter;
    const auto beg = ReductionValue::sec(d, c, Tag::beg);
    const auto hash = ReductionValue::sec(d, c, Tag::hash);
    const auto end = ReductionValue::sec(d, c, Tag::end);
    // (i) the new beg starts exactly one unit after the old beg ends
    rules.push_back(trigger_rule(beg, sec_family(n, c, Tag::beg),
                                 punctual(kTrigger, Event::end, kWitness, Event::start, 1),
                                 "decrement(i) " + describe(beg)));
    // (ii) every old # reappears as a beg or # one unit later
    auto targets = sec_family(n, c, Tag::beg);
    const auto hashes = sec_family(n, c, Tag::hash);
    targets.insert(targets.end(), hashes.begin(), hashes.end());
    rules.push_back(trigger_rule(hash, targets, both_shift, "decrement(ii) " + describe(hash)));
    // (iii)
    rules.push_back(trigger_rule(end, sec_family(n, c, Tag::end), start_shift,
                                 "decrement(iii) " + describe(end)));
  }
  return domain;
}

std::variant<ParsedCode, ShapeError> parse_code(const Machine& machine, const CodeWord& word,
                                                bool allow_prefix) {
  ParsedCode out;
  const auto& delta = machine.transitions;
  if (word.empty()) {
    if (allow_prefix) return out;
    return ShapeError{0, "empty word"};
  }
  std::size_t pos = 0;
  const auto truncated = [&](ConfigurationCode code) -> std::variant<ParsedCode, ShapeError> {
    if (!allow_prefix) return ShapeError{pos, "word ends inside a configuration-code"};
    out.codes.push_back(code);
    out.truncated = true;
    return out;
  };

  while (pos < word.size()) {
    const ReductionValue& head = word[pos];
    if (!head.is_main()) {
      return ShapeError{pos, "expected a main value, found " + value_name(head)};
    }
    if (head.transition >= delta.size()) {
      return ShapeError{pos, "unknown transition in " + value_name(head)};
    }
    ConfigurationCode code{head.transition, {0, 0}};
    if (!out.codes.empty() && delta[out.codes.back().transition].to != delta[head.transition].from) {
      return ShapeError{pos, "configuration-code " + value_name(head) +
                                 " does not continue from the previous transition's target"};
    }
    ++pos;
    for (int c = 1; c <= 2; ++c) {
      const auto expect = [&](Tag tag) { return ReductionValue::sec(code.transition, c, tag); };
      if (pos == word.size()) return truncated(code);
      if (word[pos] != expect(Tag::beg)) {
        return ShapeError{pos, "expected " + value_name(expect(Tag::beg)) + ", found " +
                                   value_name(word[pos])};
      }
      ++pos;
      while (pos < word.size() && word[pos] == expect(Tag::hash)) {
        ++code.hashes[static_cast<std::size_t>(c - 1)];
        ++pos;
      }
      if (code.hashes[static_cast<std::size_t>(c - 1)] > 0 && zero_tests(delta[code.transition], c)) {
        return ShapeError{pos - 1, "counter " + std::to_string(c) + " is zero-tested by d" +
                                       std::to_string(code.transition + 1) + " but encodes " +
                                       std::to_string(code.hashes[static_cast<std::size_t>(c - 1)])};
      }
      if (pos == word.size()) return truncated(code);
      if (word[pos] != expect(Tag::end)) {
        return ShapeError{pos, "expected " + value_name(expect(Tag::end)) + ", found " +
                                   value_name(word[pos])};
      }
      ++pos;
    }
    out.codes.push_back(code);
  }
  return out;
}

bool is_initial_prefix(const Machine& machine, const CodeWord& word) {
  const auto parsed = parse_code(machine, word, /*allow_prefix=*/true);
  const auto* code = std::get_if<ParsedCode>(&parsed);
  if (code == nullptr) return false;
  if (code->codes.empty()) return true;
  const auto& first = code->codes.front();
  return first.transition == machine.initial_transition() && first.hashes[0] == 0 &&
         first.hashes[1] == 0;
}

CodeWord encode_computation(const Machine& machine, const minsky::Computation& computation) {
  const auto& configs = computation.configurations;
  if (configs.empty()) throw std::invalid_argument("empty computation");
  const auto& delta = machine.transitions;

  std::vector<std::size_t> steps;
  if (!computation.steps.empty()) {
    if (computation.steps.size() + 1 != configs.size()) {
      throw std::invalid_argument("computation records the wrong number of transitions");
    }
    for (std::size_t i = 0; i < computation.steps.size(); ++i) {
      const std::size_t t = computation.steps[i];
      const auto next = t < delta.size() ? minsky::apply(delta[t], configs[i]) : std::nullopt;
      if (!next || *next != configs[i + 1]) {
        throw std::invalid_argument("recorded transition " + std::to_string(i + 1) +
                                    " does not justify step " + std::to_string(i + 1));
      }
    }
    steps = computation.steps;
  } else {
    for (std::size_t i = 0; i + 1 < configs.size(); ++i) {
      std::vector<std::size_t> admissible;
      for (std::size_t t = 0; t < delta.size(); ++t) {
        const auto next = minsky::apply(delta[t], configs[i]);
        if (next && *next == configs[i + 1]) admissible.push_back(t);
      }
      if (admissible.empty()) {
        throw std::invalid_argument("no transition justifies step " + std::to_string(i + 1));
      }
      if (admissible.size() > 1) {
        throw std::invalid_argument("step " + std::to_string(i + 1) +
                                    " is justified by several transitions");
      }
      steps.push_back(admissible.front());
    }
  }

  const bool halting = configs.back().location == machine.halting;
  if (!halting) {
    // The last configuration still needs a main value: the first transition
    // leaving its location whose zero test is compatible with the counters.
    const Configuration& last = configs.back();
    std::optional<std::size_t> pick;
    for (std::size_t t = 0; t < delta.size() && !pick; ++t) {
      if (delta[t].from != last.location) continue;
      if (zero_tests(delta[t], delta[t].op.counter) && last.counter(delta[t].op.counter) != 0) continue;
      pick = t;
    }
    if (!pick) {
      throw std::invalid_argument("no admissible transition for the last configuration " +
                                  minsky::to_string(last));
    }
    steps.push_back(*pick);
  }

  CodeWord word;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::size_t d = steps[i];
    word.push_back(ReductionValue::main(d));
    for (int c = 1; c <= 2; ++c) {
      word.push_back(ReductionValue::sec(d, c, Tag::beg));
      for (std::uint64_t h = 0; h < configs[i].counter(c); ++h) {
        word.push_back(ReductionValue::sec(d, c, Tag::hash));
      }
      word.push_back(ReductionValue::sec(d, c, Tag::end));
    }
  }
  return word;
}

std::vector<Configuration> decode(const Machine& machine, const CodeWord& word) {
  const ParsedCode parsed = parse_or_throw(machine, word);
  std::vector<Configuration> out;
  for (const auto& code : parsed.codes) {
    out.push_back(Configuration{machine.transitions[code.transition].from, code.hashes});
  }
  return out;
}

WellFormedness check_well_formed_code(const Machine& machine, const CodeWord& word) {
  const ParsedCode parsed = parse_or_throw(machine, word);
  const auto& codes = parsed.codes;
  const auto& delta = machine.transitions;

  WellFormedness result;
  result.initial = codes.front().transition == machine.initial_transition() &&
                   codes.front().hashes == std::array<std::uint64_t, 2>{0, 0};
  result.halting = delta[codes.back().transition].to == machine.halting;

  for (std::size_t j = 0; j + 1 < codes.size(); ++j) {
    const Transition& t = delta[codes[j].transition];
    for (int c = 1; c <= 2; ++c) {
      const auto now = codes[j].hashes[static_cast<std::size_t>(c - 1)];
      const auto next = codes[j + 1].hashes[static_cast<std::size_t>(c - 1)];
      Requirement requirement = Requirement::equality;
      bool holds = true;
      if (preserves(t, c)) {
        holds = next == now;
      } else if (t.op.kind == OpKind::inc) {
        requirement = Requirement::increment;
        holds = next == now + 1;
      } else {
        requirement = Requirement::decrement;
        holds = now > 0 && next + 1 == now;
      }
      if (!holds) {
        result.violation = RequirementViolation{
            j + 1, requirement, c,
            std::string(to_string(requirement)) + " requirement fails for counter " +
                std::to_string(c) + " between configurations " + std::to_string(j + 1) + " (" +
                std::to_string(now) + ") and " + std::to_string(j + 2) + " (" +
                std::to_string(next) + ")"};
        return result;
      }
    }
  }
  return result;
}

CodeWord untimed(const MultiTimeline& plan) {
  const auto it = plan.find(kVariableName);
  if (it == plan.end()) throw std::invalid_argument("plan has no timeline for x_M");
  CodeWord word;
  for (const auto& token : it->second.tokens) word.push_back(parse_value_name(token.value));
  return word;
}

namespace {

/// Start times of one counter block of a configuration-code.
struct Block {
  Rational beg;
  std::vector<Rational> hashes;
  Rational end;
};

struct Layout {
  Rational main;
  std::array<Block, 2> blocks;
};

Layout seed_layout(const ConfigurationCode& code) {
  const std::size_t tokens = 1 + (code.hashes[0] + 2) + (code.hashes[1] + 2);
  const Rational step(1, static_cast<std::int64_t>(tokens));
  std::int64_t k = 0;
  const auto next = [&] { return step * Rational(k++); };
  Layout layout;
  layout.main = next();
  for (std::size_t c = 0; c < 2; ++c) {
    layout.blocks[c].beg = next();
    for (std::uint64_t h = 0; h < code.hashes[c]; ++h) layout.blocks[c].hashes.push_back(next());
    layout.blocks[c].end = next();
  }
  return layout;
}

Layout shifted_layout(const Layout& old, const Transition& via) {
  const Rational one(1);
  Layout layout;
  layout.main = old.main + one;
  Rational previous_start = layout.main;
  for (int c = 1; c <= 2; ++c) {
    const Block& ob = old.blocks[static_cast<std::size_t>(c - 1)];
    Block nb;
    if (preserves(via, c)) {
      nb.beg = ob.beg + one;
      for (const auto& h : ob.hashes) nb.hashes.push_back(h + one);
    } else if (via.op.kind == OpKind::inc) {
      // The old beg slot becomes a #; a fresh beg is squeezed in before it.
      nb.beg = midpoint(previous_start, ob.beg + one);
      nb.hashes.push_back(ob.beg + one);
      for (const auto& h : ob.hashes) nb.hashes.push_back(h + one);
    } else {
      // The first # slot becomes the new beg.
      if (ob.hashes.empty()) throw std::logic_error("decrement of an empty counter block");
      nb.beg = ob.hashes.front() + one;
      for (std::size_t i = 1; i < ob.hashes.size(); ++i) nb.hashes.push_back(ob.hashes[i] + one);
    }
    nb.end = ob.end + one;
    previous_start = nb.end;
    layout.blocks[static_cast<std::size_t>(c - 1)] = std::move(nb);
  }
  return layout;
}

}  // namespace

MultiTimeline generate_witness(const Machine& machine, const minsky::Computation& computation) {
  if (computation.configurations.empty() ||
      computation.configurations.back().location != machine.halting) {
    throw std::invalid_argument("witness generation needs a halting computation");
  }
  const CodeWord word = encode_computation(machine, computation);
  const ParsedCode parsed = parse_or_throw(machine, word);
  const auto& codes = parsed.codes;

  std::vector<std::pair<ReductionValue, Rational>> starts;
  Layout layout = seed_layout(codes.front());
  for (std::size_t j = 0; j < codes.size(); ++j) {
    if (j > 0) layout = shifted_layout(layout, machine.transitions[codes[j - 1].transition]);
    const std::size_t d = codes[j].transition;
    for (std::size_t c = 0; c < 2; ++c) {
      if (layout.blocks[c].hashes.size() != codes[j].hashes[c]) {
        throw std::logic_error("witness layout disagrees with the computation-code");
      }
    }
    starts.emplace_back(ReductionValue::main(d), layout.main);
    for (int c = 1; c <= 2; ++c) {
      const Block& b = layout.blocks[static_cast<std::size_t>(c - 1)];
      starts.emplace_back(ReductionValue::sec(d, c, Tag::beg), b.beg);
      for (const auto& h : b.hashes) starts.emplace_back(ReductionValue::sec(d, c, Tag::hash), h);
      starts.emplace_back(ReductionValue::sec(d, c, Tag::end), b.end);
    }
  }

  Timeline timeline;
  timeline.variable = kVariableName;
  const Rational horizon(static_cast<std::int64_t>(codes.size()));
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const Rational end = i + 1 < starts.size() ? starts[i + 1].second : horizon;
    timeline.tokens.push_back(Token{value_name(starts[i].first), end - starts[i].second});
  }
  return MultiTimeline{{kVariableName, std::move(timeline)}};
}

std::optional<std::string> check_unit_spanning(const MultiTimeline& plan) {
  const auto it = plan.find(kVariableName);
  if (it == plan.end()) return std::string("plan has no timeline for x_M");
  const auto times = token_times(it->second);
  std::int64_t expected = 0;
  for (std::size_t i = 0; i < it->second.tokens.size(); ++i) {
    if (!parse_value_name(it->second.tokens[i].value).is_main()) continue;
    if (times[i].start != Rational(expected)) {
      return "configuration " + std::to_string(expected + 1) + " starts at " +
             times[i].start.to_string() + ", expected " + std::to_string(expected);
    }
    ++expected;
  }
  return std::nullopt;
}

MultiTimeline mutate_witness(const Machine& machine, const MultiTimeline& witness, Mutation mutation,
                             std::size_t configuration, int counter) {
  if (counter != 1 && counter != 2) throw std::invalid_argument("counter must be 1 or 2");
  MultiTimeline result = witness;
  const auto it = result.find(kVariableName);
  if (it == result.end()) throw std::invalid_argument("plan has no timeline for x_M");
  auto& tokens = it->second.tokens;

  std::vector<std::size_t> mains;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (parse_value_name(tokens[i].value).is_main()) mains.push_back(i);
  }
  if (configuration == 0 || configuration > mains.size()) {
    throw std::invalid_argument("no configuration " + std::to_string(configuration));
  }
  const std::size_t first = mains[configuration - 1];
  const std::size_t last = configuration < mains.size() ? mains[configuration] : tokens.size();

  const auto find_tag = [&](Tag tag) -> std::size_t {
    for (std::size_t i = first; i < last; ++i) {
      const auto v = parse_value_name(tokens[i].value);
      if (v.counter == counter && v.tag == tag) return i;
    }
    throw std::invalid_argument("configuration " + std::to_string(configuration) +
                                " has no counter-" + std::to_string(counter) + " " + to_string(tag));
  };
  const std::size_t beg = find_tag(Tag::beg);

  switch (mutation) {
    case Mutation::insert_hash: {
      const auto v = parse_value_name(tokens[beg].value);
      const Rational half = tokens[beg].duration / Rational(2);
      tokens[beg].duration = half;
      tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(beg + 1),
                    Token{value_name(ReductionValue::sec(v.transition, counter, Tag::hash)), half});
      break;
    }
    case Mutation::delete_hash: {
      const std::size_t hash = beg + 1;
      if (hash >= last || parse_value_name(tokens[hash].value).tag != Tag::hash) {
        throw std::invalid_argument("configuration " + std::to_string(configuration) +
                                    " has no # for counter " + std::to_string(counter));
      }
      tokens[beg].duration += tokens[hash].duration;
      tokens.erase(tokens.begin() + static_cast<std::ptrdiff_t>(hash));
      break;
    }
    case Mutation::stretch_config:
      if (configuration == mains.size()) {
        throw std::invalid_argument("stretching the final configuration violates no requirement");
      }
      tokens[last - 1].duration += Rational(1, 10);
      break;
    case Mutation::swap_tags:
      std::swap(tokens[beg].value, tokens[find_tag(Tag::end)].value);
      break;
  }

  const Domain domain = compile(machine);
  if (auto v = check_timeline(domain.variables.front(), it->second)) {
    throw std::invalid_argument(std::string(to_string(mutation)) + " is inapplicable here: " +
                                v->message);
  }
  return result;
}

}  // namespace tpkit::reduction
