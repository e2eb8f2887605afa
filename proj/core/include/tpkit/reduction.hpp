#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tpkit/minsky.hpp"
#include "tpkit/model.hpp"

// Compilation of a two-counter machine into a one-variable timeline domain
// whose future plans are exactly the timed encodings of halting computations.
//
// A computation is written as a word over V = Delta + Delta x {1,2} x {beg,#,end}:
// each configuration (from(d), n1, n2) becomes the configuration-code
//
//   d (d,1,beg) (d,1,#)^n1 (d,1,end) (d,2,beg) (d,2,#)^n2 (d,2,end)
//
// and a computation is the concatenation of the codes of its steps. In a plan
// every configuration-code occupies exactly one time unit, and trigger rules
// with punctual (exactly-one-unit) shifts tie each code's counter blocks to the
// next code's.
namespace tpkit::reduction {

enum class Tag { beg, hash, end };

const char* to_string(Tag tag);

/// Main value (counter == 0) for a transition, or a secondary value
/// (transition, counter, tag).
struct ReductionValue {
  std::size_t transition = 0;
  int counter = 0;
  Tag tag = Tag::beg;

  static ReductionValue main(std::size_t transition) { return {transition, 0, Tag::beg}; }
  static ReductionValue sec(std::size_t transition, int counter, Tag tag) {
    return {transition, counter, tag};
  }

  bool is_main() const { return counter == 0; }

  friend bool operator==(const ReductionValue&, const ReductionValue&) = default;
};

using CodeWord = std::vector<ReductionValue>;

/// Value identifiers used in compiled domains: "d3" for the main value of the
/// third transition, "d3.1.beg", "d3.1.#", "d3.1.end" for secondary values.
std::string value_name(const ReductionValue& value);
/// Inverse of value_name; throws std::invalid_argument.
ReductionValue parse_value_name(const std::string& name);

/// Name of the single state variable of a compiled domain.
inline constexpr const char* kVariableName = "x_M";

/// Compiles M into a domain over the single variable x_M. Throws
/// std::invalid_argument when validate_machine fails.
Domain compile(const minsky::Machine& machine);

/// Values in the order compile declares them: every main value, then
/// (d,1,beg),(d,1,#),(d,1,end),(d,2,beg),(d,2,#),(d,2,end) per transition d.
std::vector<ReductionValue> value_alphabet(const minsky::Machine& machine);

/// One parsed configuration-code.
struct ConfigurationCode {
  std::size_t transition = 0;
  std::array<std::uint64_t, 2> hashes{0, 0};
};

struct ShapeError {
  std::size_t position = 0;
  std::string message;
};

struct ParsedCode {
  std::vector<ConfigurationCode> codes;
  /// Set when the word is a proper prefix that ends inside a configuration-code.
  bool truncated = false;
};

/// Parses a computation-code (or, with allow_prefix, a prefix of one). On
/// failure the error names the offending word position.
std::variant<ParsedCode, ShapeError> parse_code(const minsky::Machine& machine, const CodeWord& word,
                                                bool allow_prefix = false);

/// True when `word` is a prefix of some initial computation-code.
bool is_initial_prefix(const minsky::Machine& machine, const CodeWord& word);

/// Word for a computation. A computation ending in q_halt drops that final
/// configuration: its last code carries the transition entering q_halt.
/// Throws std::invalid_argument when no admissible transition exists for a
/// step or the recovered transition is ambiguous.
CodeWord encode_computation(const minsky::Machine& machine, const minsky::Computation& computation);

/// Configurations encoded by a computation-code. Throws std::invalid_argument
/// (with the word position) on shape violations.
std::vector<minsky::Configuration> decode(const minsky::Machine& machine, const CodeWord& word);

enum class Requirement { equality, increment, decrement };

const char* to_string(Requirement requirement);

struct RequirementViolation {
  /// 1-based j: the pair (configuration j, configuration j+1).
  std::size_t step = 0;
  Requirement requirement = Requirement::equality;
  int counter = 1;
  std::string message;
};

struct WellFormedness {
  bool initial = false;
  bool halting = false;
  std::optional<RequirementViolation> violation;

  bool ok() const { return !violation.has_value(); }
};

/// Word-level arithmetic check of adjacent configuration-codes, independent of
/// the rule machinery. Throws std::invalid_argument if the word does not parse.
WellFormedness check_well_formed_code(const minsky::Machine& machine, const CodeWord& word);

/// Untimed part of a compiled-domain plan.
CodeWord untimed(const MultiTimeline& plan);

/// Timed witness for a halting computation: configuration-code i occupies
/// [i-1, i], the first configuration is spread evenly over the unit, and each
/// later one is derived from its predecessor by the exact shifts the rules
/// demand.
MultiTimeline generate_witness(const minsky::Machine& machine, const minsky::Computation& computation);

/// Timed check that the i-th main token starts exactly at i-1. Returns a
/// description of the first offending configuration.
std::optional<std::string> check_unit_spanning(const MultiTimeline& plan);

enum class Mutation { insert_hash, delete_hash, stretch_config, swap_tags };

const char* to_string(Mutation mutation);

/// Applies a mutation to configuration `configuration` (1-based) at counter
/// `counter`:
///  - insert_hash splits the beg token in half, the second half becoming a #;
///  - delete_hash merges the first # into the preceding beg token;
///  - stretch_config lengthens the configuration's last token by 1/10, so the
///    configuration spans 11/10 (not allowed on the final configuration);
///  - swap_tags exchanges the beg and end values of the counter block.
/// The result must be transition-consistent; otherwise, or when the mutation
/// has nothing to act on, std::invalid_argument is thrown.
MultiTimeline mutate_witness(const minsky::Machine& machine, const MultiTimeline& witness,
                             Mutation mutation, std::size_t configuration, int counter);

}  // namespace tpkit::reduction
