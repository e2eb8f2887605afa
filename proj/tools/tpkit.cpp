// tpkit: command-line front end for timeline validation, bounded solving and
// the two-counter-machine reduction.
//
// Exit codes: 0 accepted / found, 1 rejected / none, 2 input error.

#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tpkit/io.hpp"
#include "tpkit/minsky.hpp"
#include "tpkit/reduction.hpp"
#include "tpkit/solver.hpp"
#include "tpkit/validator.hpp"

namespace {

using namespace tpkit;

constexpr int kAccepted = 0;
constexpr int kRejected = 1;
constexpr int kInputError = 2;

Semantics semantics_of(bool future) { return future ? Semantics::future : Semantics::standard; }

void print_report(const Domain& domain, const ValidationReport& report, std::ostream& out) {
  for (const auto& f : report.timelines) {
    out << "timeline " << f.variable << ": token " << f.violation.index << ": " << f.violation.message
        << "\n";
  }
  for (const auto& r : report.rules) {
    out << (r.satisfied ? "ok   " : "FAIL ") << "rule " << r.rule;
    if (!r.label.empty()) out << " (" << r.label << ")";
    if (r.failing_position) {
      const auto& trigger = domain.rules[r.rule].trigger;
      out << ": no disjunct holds for trigger " << trigger->variable << "[" << *r.failing_position << "]";
    }
    out << "\n";
  }
  out << "verdict: " << (report.verdict ? "plan" : "not a plan") << "\n";
}

minsky::Machine load_machine(const std::string& path) {
  auto machine = io::parse_machine(io::read_file(path));
  if (const auto problem = minsky::validate_machine(machine)) throw io::FormatError(*problem);
  return machine;
}

int cmd_validate(const std::string& domain_path, const std::string& plan_path, bool future) {
  const Domain domain = io::parse_domain(io::read_file(domain_path));
  const MultiTimeline plan = io::parse_plan(io::read_file(plan_path), domain);
  const auto report = is_plan(domain, plan, semantics_of(future));
  std::cout << "semantics: " << to_string(semantics_of(future)) << "\n";
  print_report(domain, report, std::cout);
  return report.verdict ? kAccepted : kRejected;
}

int cmd_compile(const std::string& machine_path) {
  std::cout << io::serialize_domain(reduction::compile(load_machine(machine_path)));
  return kAccepted;
}

int cmd_simulate(const std::string& machine_path, std::size_t max_steps) {
  const auto machine = load_machine(machine_path);
  const auto computation = minsky::run(machine, max_steps);
  if (!computation) {
    std::cout << "no halting computation within " << max_steps << " steps\n";
    return kRejected;
  }
  for (std::size_t i = 0; i < computation->configurations.size(); ++i) {
    std::cout << i << ": " << minsky::to_string(computation->configurations[i]);
    if (i < computation->steps.size()) std::cout << "  via d" << computation->steps[i] + 1;
    std::cout << "\n";
  }
  return kAccepted;
}

int cmd_witness(const std::string& machine_path, std::size_t max_steps, bool future,
                const std::string& svg_path) {
  const auto machine = load_machine(machine_path);
  const auto computation = minsky::run(machine, max_steps);
  if (!computation) {
    std::cerr << "no halting computation within " << max_steps << " steps\n";
    return kRejected;
  }
  const Domain domain = reduction::compile(machine);
  const MultiTimeline witness = reduction::generate_witness(machine, *computation);
  const auto report = is_plan(domain, witness, semantics_of(future));
  std::cout << io::serialize_plan(witness);
  if (!svg_path.empty()) {
    std::ofstream(svg_path) << io::render_svg(witness);
  }
  std::cerr << "witness: " << witness.begin()->second.tokens.size() << " tokens, "
            << (report.verdict ? "accepted" : "rejected") << " under " << to_string(semantics_of(future))
            << " semantics\n";
  if (!report.verdict) print_report(domain, report, std::cerr);
  return report.verdict ? kAccepted : kRejected;
}

int cmd_solve(const std::string& domain_path, std::size_t bound, bool future) {
  const Domain domain = io::parse_domain(io::read_file(domain_path));
  solver::SolveStats stats;
  const auto plan = solver::bounded_solve(domain, bound, semantics_of(future), &stats);
  std::cerr << "skeletons: " << stats.skeletons << ", search nodes: " << stats.search_nodes << "\n";
  if (!plan) {
    std::cout << "none within " << bound << " tokens per variable\n";
    return kRejected;
  }
  std::cout << io::serialize_plan(*plan);
  return kAccepted;
}

int cmd_render(const std::string& plan_path) {
  const MultiTimeline plan = io::parse_plan(io::read_file(plan_path));
  if (plan.empty()) throw io::FormatError("plan has no timelines");
  std::cout << io::render_svg(plan);
  return kAccepted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Timeline-based planning toolkit"};
  app.require_subcommand(1);

  std::string domain_path, plan_path, machine_path, svg_path;
  bool future = false;
  std::size_t max_steps = 10000;
  std::size_t bound = 0;

  auto* validate = app.add_subcommand("validate", "Check a plan against a domain");
  validate->add_option("domain", domain_path)->required();
  validate->add_option("plan", plan_path)->required();
  validate->add_flag("--future", future, "Use the future semantics");

  auto* compile = app.add_subcommand("compile-minsky", "Compile a two-counter machine into a domain");
  compile->add_option("machine", machine_path)->required();

  auto* simulate = app.add_subcommand("simulate", "Search for a halting computation");
  simulate->add_option("machine", machine_path)->required();
  simulate->add_option("--max-steps", max_steps)->capture_default_str();

  auto* witness = app.add_subcommand("witness", "Simulate, compile, build and validate a timed witness");
  witness->add_option("machine", machine_path)->required();
  witness->add_option("--max-steps", max_steps)->capture_default_str();
  witness->add_flag("--future", future, "Validate under the future semantics");
  witness->add_option("--svg", svg_path, "Also write the witness as SVG");

  auto* solve = app.add_subcommand("solve", "Bounded plan search");
  solve->add_option("domain", domain_path)->required();
  solve->add_option("--bound", bound, "Maximum tokens per timeline")->required();
  solve->add_flag("--future", future, "Use the future semantics");

  auto* render = app.add_subcommand("render", "Render a plan as SVG");
  render->add_option("plan", plan_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*validate) return cmd_validate(domain_path, plan_path, future);
    if (*compile) return cmd_compile(machine_path);
    if (*simulate) return cmd_simulate(machine_path, max_steps);
    if (*witness) return cmd_witness(machine_path, max_steps, future, svg_path);
    if (*solve) return cmd_solve(domain_path, bound, future);
    if (*render) return cmd_render(plan_path);
  } catch (const io::FormatError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
