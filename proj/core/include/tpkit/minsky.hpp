#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tpkit::minsky {

enum class OpKind { inc, dec, zero };

const char* to_string(OpKind kind);

struct Instruction {
  OpKind kind = OpKind::inc;
  int counter = 1;  // 1 or 2

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

struct Transition {
  std::string from;
  Instruction op;
  std::string to;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Two-counter machine <Q, q_init, q_halt, Delta>. Transitions keep their
/// declaration order, which fixes every deterministic choice downstream.
struct Machine {
  std::vector<std::string> locations;
  std::string initial;
  std::string halting;
  std::vector<Transition> transitions;

  /// Index of the unique transition leaving the initial location.
  std::size_t initial_transition() const;

  friend bool operator==(const Machine&, const Machine&) = default;
};

/// Builds a machine whose location set is every location mentioned, in order
/// of first appearance (initial, halting, then transition endpoints).
Machine make_machine(std::string initial, std::string halting, std::vector<Transition> transitions);

struct Configuration {
  std::string location;
  std::array<std::uint64_t, 2> counters{0, 0};

  std::uint64_t counter(int c) const { return counters[static_cast<std::size_t>(c - 1)]; }

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

struct Computation {
  std::vector<Configuration> configurations;
  /// Transition index justifying each step; empty when unknown (then it is
  /// recovered where needed).
  std::vector<std::size_t> steps;

  friend bool operator==(const Computation&, const Computation&) = default;
};

/// nullopt when the machine satisfies the structural assumptions: q_init and
/// q_halt differ, no transition leaves q_halt or enters q_init, exactly one
/// transition leaves q_init, every location is declared and counters are 1|2.
std::optional<std::string> validate_machine(const Machine& machine);

/// Effect of a single transition, if it is enabled in `config`.
std::optional<Configuration> apply(const Transition& transition, const Configuration& config);

struct Successor {
  std::size_t transition = 0;
  Configuration configuration;
};

/// All successors of `config`, in transition declaration order.
std::vector<Successor> successors(const Machine& machine, const Configuration& config);

/// Successor configurations, without the transitions that produced them.
std::vector<Configuration> step(const Machine& machine, const Configuration& config);

Configuration initial_configuration(const Machine& machine);

/// Breadth-first search from the all-zero initial configuration for a shortest
/// computation reaching q_halt within `max_steps` steps.
std::optional<Computation> run(const Machine& machine, std::size_t max_steps);

/// True when consecutive configurations are related by the step relation (and
/// by the recorded transitions, when present).
bool is_computation(const Machine& machine, const Computation& computation);

std::string to_string(const Configuration& config);

}  // namespace tpkit::minsky
