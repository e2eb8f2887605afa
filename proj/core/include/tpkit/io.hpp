#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "tpkit/minsky.hpp"
#include "tpkit/model.hpp"

// Text formats:
//   domain  - JSON object {"variables": [...], "rules": [...]}
//   plan    - JSON object {"timelines": {"<variable>": [{"value", "duration"}, ...]}}
//   machine - lines "init <loc>", "halt <loc>", "trans <from> <inc|dec|zero> <1|2> <to>",
//             '#' starts a comment
// Durations are exact: integers or "p/q" strings, decimal strings like "3.9"
// are read exactly; JSON floating-point numbers are rejected.
namespace tpkit::io {

/// Malformed input. The message carries a position (byte offset, line, or
/// JSON path) where one is known.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Domain parse_domain(std::string_view text);
std::string serialize_domain(const Domain& domain);

MultiTimeline parse_plan(std::string_view text, const Domain& domain);
/// Same format without value checking (e.g. for rendering).
MultiTimeline parse_plan(std::string_view text);
std::string serialize_plan(const MultiTimeline& plan);

minsky::Machine parse_machine(std::string_view text);
std::string serialize_machine(const minsky::Machine& machine);

/// One lane per state variable, one labelled rectangle per token, x linear in
/// time.
std::string render_svg(const MultiTimeline& plan);

std::string read_file(const std::string& path);

}  // namespace tpkit::io
