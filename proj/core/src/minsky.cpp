#include "tpkit/minsky.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <stdexcept>

namespace tpkit::minsky {

const char* to_string(OpKind kind) {
  switch (kind) {
    case OpKind::inc:
      return "inc";
    case OpKind::dec:
      return "dec";
    case OpKind::zero:
      return "zero";
  }
  return "?";
}

std::size_t Machine::initial_transition() const {
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    if (transitions[i].from == initial) return i;
  }
  throw std::logic_error("machine has no transition leaving the initial location");
}

Machine make_machine(std::string initial, std::string halting, std::vector<Transition> transitions) {
  Machine m;
  const auto add = [&](const std::string& loc) {
    if (std::find(m.locations.begin(), m.locations.end(), loc) == m.locations.end()) {
      m.locations.push_back(loc);
    }
  };
  add(initial);
  add(halting);
  for (const auto& t : transitions) {
    add(t.from);
    add(t.to);
  }
  m.initial = std::move(initial);
  m.halting = std::move(halting);
  m.transitions = std::move(transitions);
  return m;
}

std::optional<std::string> validate_machine(const Machine& machine) {
  const auto declared = [&](const std::string& loc) {
    return std::find(machine.locations.begin(), machine.locations.end(), loc) !=
           machine.locations.end();
  };
  if (!declared(machine.initial)) return "initial location '" + machine.initial + "' is not declared";
  if (!declared(machine.halting)) return "halting location '" + machine.halting + "' is not declared";
  if (machine.initial == machine.halting) return std::string("initial and halting locations coincide");

  std::size_t from_initial = 0;
  for (std::size_t i = 0; i < machine.transitions.size(); ++i) {
    const auto& t = machine.transitions[i];
    const std::string where = "transition " + std::to_string(i + 1);
    if (!declared(t.from) || !declared(t.to)) return where + " uses an undeclared location";
    if (t.op.counter != 1 && t.op.counter != 2) return where + " names counter other than 1 or 2";
    if (t.from == machine.halting) return where + " leaves the halting location";
    if (t.to == machine.initial) return where + " enters the initial location";
    if (t.from == machine.initial) ++from_initial;
  }
  if (from_initial != 1) {
    return "exactly one transition must leave the initial location (found " +
           std::to_string(from_initial) + ")";
  }
  return std::nullopt;
}

std::optional<Configuration> apply(const Transition& transition, const Configuration& config) {
  if (transition.from != config.location) return std::nullopt;
  Configuration next{transition.to, config.counters};
  auto& value = next.counters[static_cast<std::size_t>(transition.op.counter - 1)];
  switch (transition.op.kind) {
    case OpKind::inc:
      if (value == std::numeric_limits<std::uint64_t>::max()) {
        throw std::overflow_error("counter overflow");
      }
      ++value;
      break;
    case OpKind::dec:
      if (value == 0) return std::nullopt;
      --value;
      break;
    case OpKind::zero:
      if (value != 0) return std::nullopt;
      break;
  }
  return next;
}

std::vector<Successor> successors(const Machine& machine, const Configuration& config) {
  std::vector<Successor> out;
  for (std::size_t i = 0; i < machine.transitions.size(); ++i) {
    if (auto next = apply(machine.transitions[i], config)) out.push_back({i, std::move(*next)});
  }
  return out;
}

std::vector<Configuration> step(const Machine& machine, const Configuration& config) {
  std::vector<Configuration> out;
  for (auto& s : successors(machine, config)) out.push_back(std::move(s.configuration));
  return out;
}

Configuration initial_configuration(const Machine& machine) {
  return Configuration{machine.initial, {0, 0}};
}

std::optional<Computation> run(const Machine& machine, std::size_t max_steps) {
  struct Node {
    Configuration config;
    std::size_t parent;
    std::size_t transition;
    std::size_t depth;
  };
  constexpr std::size_t kRoot = std::numeric_limits<std::size_t>::max();

  std::vector<Node> nodes;
  std::map<Configuration, std::size_t> visited;
  std::deque<std::size_t> frontier;

  const auto rebuild = [&](std::size_t idx) {
    Computation comp;
    for (std::size_t i = idx; i != kRoot; i = nodes[i].parent) {
      comp.configurations.push_back(nodes[i].config);
      if (nodes[i].parent != kRoot) comp.steps.push_back(nodes[i].transition);
    }
    std::reverse(comp.configurations.begin(), comp.configurations.end());
    std::reverse(comp.steps.begin(), comp.steps.end());
    return comp;
  };

  nodes.push_back({initial_configuration(machine), kRoot, 0, 0});
  visited.emplace(nodes.front().config, 0);
  if (nodes.front().config.location == machine.halting) return rebuild(0);
  frontier.push_back(0);

  while (!frontier.empty()) {
    const std::size_t current = frontier.front();
    frontier.pop_front();
    if (nodes[current].depth == max_steps) continue;
    for (auto& s : successors(machine, nodes[current].config)) {
      if (visited.contains(s.configuration)) continue;
      nodes.push_back({s.configuration, current, s.transition, nodes[current].depth + 1});
      const std::size_t idx = nodes.size() - 1;
      visited.emplace(std::move(s.configuration), idx);
      if (nodes[idx].config.location == machine.halting) return rebuild(idx);
      frontier.push_back(idx);
    }
  }
  return std::nullopt;
}

bool is_computation(const Machine& machine, const Computation& computation) {
  const auto& cs = computation.configurations;
  if (cs.empty()) return false;
  if (!computation.steps.empty() && computation.steps.size() + 1 != cs.size()) return false;
  for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
    if (!computation.steps.empty()) {
      const std::size_t t = computation.steps[i];
      if (t >= machine.transitions.size()) return false;
      const auto next = apply(machine.transitions[t], cs[i]);
      if (!next || *next != cs[i + 1]) return false;
    } else {
      const auto next = step(machine, cs[i]);
      if (std::find(next.begin(), next.end(), cs[i + 1]) == next.end()) return false;
    }
  }
  return true;
}

std::string to_string(const Configuration& config) {
  return "(" + config.location + ", " + std::to_string(config.counters[0]) + ", " +
         std::to_string(config.counters[1]) + ")";
}

}  // namespace tpkit::minsky
