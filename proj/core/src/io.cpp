#include "tpkit/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace tpkit::io {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw FormatError(path + ": " + message);
}

const Json& member(const Json& object, const char* key, const std::string& path) {
  if (!object.is_object()) fail(path, "expected an object");
  const auto it = object.find(key);
  if (it == object.end()) fail(path, std::string("missing \"") + key + "\"");
  return *it;
}

std::string string_at(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

std::uint64_t natural_at(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    fail(path, "expected a natural number");
  }
  return j.get<std::uint64_t>();
}

const Json& array_at(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

Interval interval_at(const Json& j, const std::string& path) {
  try {
    return Interval::parse(string_at(j, path));
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

Event event_at(const Json& j, const std::string& path) {
  const std::string s = string_at(j, path);
  if (s == "start" || s == "s") return Event::start;
  if (s == "end" || s == "e") return Event::end;
  fail(path, "event must be \"start\" or \"end\", got \"" + s + "\"");
}

Quantifier quantifier_at(const Json& j, const std::string& path) {
  return Quantifier{string_at(member(j, "name", path), path + ".name"),
                    string_at(member(j, "variable", path), path + ".variable"),
                    string_at(member(j, "value", path), path + ".value")};
}

Atom atom_at(const Json& j, const std::string& path) {
  const std::string type = string_at(member(j, "type", path), path + ".type");
  const Interval interval = interval_at(member(j, "interval", path), path + ".interval");
  if (type == "interval") {
    return IntervalAtom{string_at(member(j, "left", path), path + ".left"),
                        event_at(member(j, "left_event", path), path + ".left_event"),
                        string_at(member(j, "right", path), path + ".right"),
                        event_at(member(j, "right_event", path), path + ".right_event"), interval};
  }
  if (type == "token_before") {
    return TokenBeforeConstant{string_at(member(j, "token", path), path + ".token"),
                               event_at(member(j, "event", path), path + ".event"),
                               natural_at(member(j, "bound", path), path + ".bound"), interval};
  }
  if (type == "constant_before") {
    return ConstantBeforeToken{natural_at(member(j, "bound", path), path + ".bound"),
                               string_at(member(j, "token", path), path + ".token"),
                               event_at(member(j, "event", path), path + ".event"), interval};
  }
  fail(path + ".type", "unknown atom type \"" + type + "\"");
}

Json quantifier_json(const Quantifier& q) {
  return Json{{"name", q.name}, {"variable", q.variable}, {"value", q.value}};
}

Json atom_json(const Atom& atom) {
  if (const auto* a = std::get_if<IntervalAtom>(&atom)) {
    return Json{{"type", "interval"},
                {"left", a->left},
                {"left_event", to_string(a->left_event)},
                {"right", a->right},
                {"right_event", to_string(a->right_event)},
                {"interval", a->interval.to_string()}};
  }
  if (const auto* a = std::get_if<TokenBeforeConstant>(&atom)) {
    return Json{{"type", "token_before"},
                {"token", a->token},
                {"event", to_string(a->event)},
                {"bound", a->bound},
                {"interval", a->interval.to_string()}};
  }
  const auto& a = std::get<ConstantBeforeToken>(atom);
  return Json{{"type", "constant_before"},
              {"bound", a.bound},
              {"token", a.token},
              {"event", to_string(a.event)},
              {"interval", a.interval.to_string()}};
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw FormatError("byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

Rational duration_at(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number_float()) fail(path, "floating-point durations are not accepted; use \"p/q\"");
  try {
    return Rational::parse(string_at(j, path));
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

Domain parse_domain(std::string_view text) {
  const Json root = parse_json(text);
  Domain domain;

  const Json& variables = array_at(member(root, "variables", "$"), "$.variables");
  for (std::size_t i = 0; i < variables.size(); ++i) {
    const std::string path = "$.variables[" + std::to_string(i) + "]";
    const Json& jv = variables[i];
    StateVariable var;
    var.name = string_at(member(jv, "name", path), path + ".name");
    const Json& values = array_at(member(jv, "values", path), path + ".values");
    for (std::size_t k = 0; k < values.size(); ++k) {
      var.values.push_back(string_at(values[k], path + ".values[" + std::to_string(k) + "]"));
    }
    const Json& transitions = member(jv, "transitions", path);
    if (!transitions.is_object()) fail(path + ".transitions", "expected an object");
    for (const auto& [from, next] : transitions.items()) {
      const std::string tpath = path + ".transitions." + from;
      auto& successors = var.transitions[from];
      for (const auto& s : array_at(next, tpath)) successors.push_back(string_at(s, tpath));
    }
    const Json& durations = member(jv, "durations", path);
    if (!durations.is_object()) fail(path + ".durations", "expected an object");
    for (const auto& [value, interval] : durations.items()) {
      var.durations.emplace(value, interval_at(interval, path + ".durations." + value));
    }
    domain.variables.push_back(std::move(var));
  }

  const Json& rules = array_at(member(root, "rules", "$"), "$.rules");
  for (std::size_t r = 0; r < rules.size(); ++r) {
    const std::string path = "$.rules[" + std::to_string(r) + "]";
    const Json& jr = rules[r];
    if (!jr.is_object()) fail(path, "expected an object");
    SynchronizationRule rule;
    if (const auto it = jr.find("label"); it != jr.end()) rule.label = string_at(*it, path + ".label");
    if (const auto it = jr.find("trigger"); it != jr.end() && !it->is_null()) {
      rule.trigger = quantifier_at(*it, path + ".trigger");
    }
    const Json& disjuncts = array_at(member(jr, "disjuncts", path), path + ".disjuncts");
    for (std::size_t d = 0; d < disjuncts.size(); ++d) {
      const std::string dpath = path + ".disjuncts[" + std::to_string(d) + "]";
      ExistentialStatement statement;
      const Json& qs = array_at(member(disjuncts[d], "quantifiers", dpath), dpath + ".quantifiers");
      for (std::size_t k = 0; k < qs.size(); ++k) {
        statement.quantifiers.push_back(
            quantifier_at(qs[k], dpath + ".quantifiers[" + std::to_string(k) + "]"));
      }
      const Json& atoms = array_at(member(disjuncts[d], "atoms", dpath), dpath + ".atoms");
      for (std::size_t k = 0; k < atoms.size(); ++k) {
        statement.atoms.push_back(atom_at(atoms[k], dpath + ".atoms[" + std::to_string(k) + "]"));
      }
      rule.disjuncts.push_back(std::move(statement));
    }
    domain.rules.push_back(std::move(rule));
  }

  try {
    check_domain(domain);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return domain;
}

std::string serialize_domain(const Domain& domain) {
  Json root;
  Json variables = Json::array();
  for (const auto& var : domain.variables) {
    Json transitions = Json::object();
    Json durations = Json::object();
    for (const auto& v : var.values) {
      transitions[v] = var.successors(v);
      durations[v] = var.duration(v).to_string();
    }
    variables.push_back(Json{{"name", var.name},
                             {"values", var.values},
                             {"transitions", std::move(transitions)},
                             {"durations", std::move(durations)}});
  }
  Json rules = Json::array();
  for (const auto& rule : domain.rules) {
    Json jr = Json::object();
    if (!rule.label.empty()) jr["label"] = rule.label;
    jr["trigger"] = rule.trigger ? quantifier_json(*rule.trigger) : Json(nullptr);
    Json disjuncts = Json::array();
    for (const auto& st : rule.disjuncts) {
      Json qs = Json::array();
      for (const auto& q : st.quantifiers) qs.push_back(quantifier_json(q));
      Json atoms = Json::array();
      for (const auto& a : st.atoms) atoms.push_back(atom_json(a));
      disjuncts.push_back(Json{{"quantifiers", std::move(qs)}, {"atoms", std::move(atoms)}});
    }
    jr["disjuncts"] = std::move(disjuncts);
    rules.push_back(std::move(jr));
  }
  root["variables"] = std::move(variables);
  root["rules"] = std::move(rules);
  return root.dump(2) + "\n";
}

namespace {

MultiTimeline read_plan(std::string_view text, const Domain* domain) {
  const Json root = parse_json(text);
  const Json& timelines = member(root, "timelines", "$");
  if (!timelines.is_object()) fail("$.timelines", "expected an object");
  MultiTimeline plan;
  for (const auto& [name, tokens] : timelines.items()) {
    const std::string path = "$.timelines." + name;
    const StateVariable* var = domain != nullptr ? domain->find_variable(name) : nullptr;
    if (domain != nullptr && var == nullptr) fail(path, "unknown state variable '" + name + "'");
    Timeline timeline{name, {}};
    const Json& list = array_at(tokens, path);
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string tpath = path + "[" + std::to_string(i) + "]";
      std::string value = string_at(member(list[i], "value", tpath), tpath + ".value");
      if (var != nullptr && !var->has_value(value)) fail(tpath + ".value", "unknown value '" + value + "' of '" + name + "'");
      timeline.tokens.push_back(
          Token{std::move(value), duration_at(member(list[i], "duration", tpath), tpath + ".duration")});
    }
    plan.emplace(name, std::move(timeline));
  }
  return plan;
}

}  // namespace

MultiTimeline parse_plan(std::string_view text, const Domain& domain) { return read_plan(text, &domain); }

MultiTimeline parse_plan(std::string_view text) { return read_plan(text, nullptr); }

std::string serialize_plan(const MultiTimeline& plan) {
  Json timelines = Json::object();
  for (const auto& [name, timeline] : plan) {
    Json tokens = Json::array();
    for (const auto& t : timeline.tokens) {
      tokens.push_back(Json{{"value", t.value}, {"duration", t.duration.to_string()}});
    }
    timelines[name] = std::move(tokens);
  }
  return Json{{"timelines", std::move(timelines)}}.dump(2) + "\n";
}

minsky::Machine parse_machine(std::string_view text) {
  std::optional<std::string> initial;
  std::optional<std::string> halting;
  std::vector<minsky::Transition> transitions;

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string where = "line " + std::to_string(number);
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::vector<std::string> w;
    for (std::string s; words >> s;) w.push_back(s);
    if (w.empty()) continue;
    if (w[0] == "init" || w[0] == "halt") {
      if (w.size() != 2) throw FormatError(where + ": expected '" + w[0] + " <location>'");
      auto& slot = w[0] == "init" ? initial : halting;
      if (slot) throw FormatError(where + ": duplicate '" + w[0] + "'");
      slot = w[1];
    } else if (w[0] == "trans") {
      if (w.size() != 5) {
        throw FormatError(where + ": expected 'trans <from> <inc|dec|zero> <1|2> <to>'");
      }
      minsky::Instruction op;
      if (w[2] == "inc") {
        op.kind = minsky::OpKind::inc;
      } else if (w[2] == "dec") {
        op.kind = minsky::OpKind::dec;
      } else if (w[2] == "zero") {
        op.kind = minsky::OpKind::zero;
      } else {
        throw FormatError(where + ": unknown instruction '" + w[2] + "'");
      }
      if (w[3] != "1" && w[3] != "2") throw FormatError(where + ": counter must be 1 or 2");
      op.counter = w[3] == "1" ? 1 : 2;
      transitions.push_back({w[1], op, w[4]});
    } else {
      throw FormatError(where + ": unknown directive '" + w[0] + "'");
    }
  }
  if (!initial) throw FormatError("missing 'init <location>'");
  if (!halting) throw FormatError("missing 'halt <location>'");
  return minsky::make_machine(*initial, *halting, std::move(transitions));
}

std::string serialize_machine(const minsky::Machine& machine) {
  std::string out = "init " + machine.initial + "\nhalt " + machine.halting + "\n";
  for (const auto& t : machine.transitions) {
    out += "trans " + t.from + " " + minsky::to_string(t.op.kind) + " " +
           std::to_string(t.op.counter) + " " + t.to + "\n";
  }
  return out;
}

std::string render_svg(const MultiTimeline& plan) {
  constexpr double kLeft = 120.0;
  constexpr double kWidth = 1000.0;
  constexpr double kLane = 50.0;
  constexpr double kBox = 30.0;
  constexpr double kTop = 20.0;

  Rational horizon;
  for (const auto& [_, timeline] : plan) {
    const auto times = token_times(timeline);
    if (!times.empty()) horizon = std::max(horizon, times.back().end);
  }
  const double scale = horizon.is_zero() ? 1.0 : kWidth / horizon.to_double();
  const double height = kTop + kLane * static_cast<double>(plan.size()) + 30.0;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(kLeft + kWidth + 20.0)
      << "\" height=\"" << fixed(height) << "\">\n";
  svg << "<style>.token{fill:#dbe9f6;stroke:#1f4e79;stroke-width:1}"
         ".label{font:11px sans-serif;text-anchor:middle}.lane{font:13px sans-serif}"
         ".tick{font:10px sans-serif;text-anchor:middle}</style>\n";

  double y = kTop;
  for (const auto& [name, timeline] : plan) {
    svg << "<text class=\"lane\" x=\"10\" y=\"" << fixed(y + kBox * 0.65) << "\">"
        << escape_xml(name) << "</text>\n";
    const auto times = token_times(timeline);
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double x = kLeft + times[i].start.to_double() * scale;
      const double w = timeline.tokens[i].duration.to_double() * scale;
      svg << "<rect class=\"token\" x=\"" << fixed(x) << "\" y=\"" << fixed(y) << "\" width=\""
          << fixed(w) << "\" height=\"" << fixed(kBox) << "\"><title>"
          << escape_xml(timeline.tokens[i].value) << " [" << times[i].start << ", " << times[i].end
          << "]</title></rect>\n";
      svg << "<text class=\"label\" x=\"" << fixed(x + w / 2) << "\" y=\"" << fixed(y + kBox * 0.65)
          << "\">" << escape_xml(timeline.tokens[i].value) << "</text>\n";
    }
    y += kLane;
  }

  // Integer ticks along the time axis, thinned out for long horizons.
  const std::int64_t last = horizon.numerator() / horizon.denominator();
  const std::int64_t stride = std::max<std::int64_t>(1, last / 20);
  svg << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(y) << "\" x2=\""
      << fixed(kLeft + kWidth) << "\" y2=\"" << fixed(y) << "\" stroke=\"#333\"/>\n";
  for (std::int64_t t = 0; t <= last; t += stride) {
    const double x = kLeft + static_cast<double>(t) * scale;
    svg << "<text class=\"tick\" x=\"" << fixed(x) << "\" y=\"" << fixed(y + 14) << "\">" << t
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace tpkit::io
