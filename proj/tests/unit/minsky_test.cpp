#include <gtest/gtest.h>
#include <algorithm>

#include "fixtures.hpp"
#include "tpkit/minsky.hpp"

namespace {

using namespace tpkit::minsky;
namespace tt = tpkit::fixtures;

TEST(ValidateMachine, StructuralAssumptions) {
  EXPECT_FALSE(validate_machine(tt::m1()).has_value());
  for (const auto& [name, m] : tt::halting_machines()) EXPECT_FALSE(validate_machine(m).has_value()) << name;

  auto two_initial = tt::m1();
  two_initial.transitions.push_back({"qi", {OpKind::inc, 2}, "q2"});
  EXPECT_TRUE(validate_machine(two_initial).has_value());

  auto from_halt = tt::m1();
  from_halt.transitions.push_back({"qh", {OpKind::inc, 2}, "q2"});
  EXPECT_TRUE(validate_machine(from_halt).has_value());

  auto into_initial = tt::m1();
  into_initial.transitions.push_back({"q2", {OpKind::inc, 2}, "qi"});
  EXPECT_TRUE(validate_machine(into_initial).has_value());

  EXPECT_TRUE(validate_machine(make_machine("q", "q", {{"q", {OpKind::inc, 1}, "r"}})).has_value());
  EXPECT_TRUE(validate_machine(make_machine("qi", "qh", {{"qi", {OpKind::inc, 3}, "qh"}})).has_value());
}

TEST(Step, SingleInstructions) {
  const Machine inc = make_machine("q", "h", {{"q", {OpKind::inc, 1}, "r"}});
  EXPECT_EQ(step(inc, {"q", {0, 2}}), (std::vector<Configuration>{{"r", {1, 2}}}));
  const Machine dec = make_machine("q", "h", {{"q", {OpKind::dec, 1}, "r"}});
  EXPECT_TRUE(step(dec, {"q", {0, 2}}).empty());
  EXPECT_EQ(step(dec, {"q", {3, 2}}), (std::vector<Configuration>{{"r", {2, 2}}}));
  const Machine zero = make_machine("q", "h", {{"q", {OpKind::zero, 1}, "r"}});
  EXPECT_TRUE(step(zero, {"q", {2, 0}}).empty());
  EXPECT_EQ(step(zero, {"q", {0, 5}}), (std::vector<Configuration>{{"r", {0, 5}}}));
}

TEST(Run, M1ShortestComputation) {
  const auto c = run(tt::m1(), 10);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->configurations,
            (std::vector<Configuration>{{"qi", {0, 0}}, {"q1", {1, 0}}, {"q2", {0, 0}}, {"qh", {0, 0}}}));
  EXPECT_EQ(c->steps, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Run, M2NeverHalts) {
  EXPECT_FALSE(run(tt::m2(), 100).has_value());
  EXPECT_FALSE(run(tt::m1(), 0).has_value());
  EXPECT_FALSE(run(tt::m1(), 2).has_value());
  EXPECT_TRUE(run(tt::m1(), 3).has_value());
}

TEST(Run, LargerMachinesReachThree) {
  for (const auto& [name, m] : tt::halting_machines()) {
    const auto c = run(m, 200);
    ASSERT_TRUE(c.has_value()) << name;
    std::uint64_t peak = 0;
    for (const auto& conf : c->configurations) peak = std::max({peak, conf.counters[0], conf.counters[1]});
    if (name != "M1") EXPECT_GE(peak, 3u) << name;
    EXPECT_GE(m.locations.size(), name == "M1" ? 4u : 6u);
  }
}

TEST(IsComputation, RejectsBrokenSteps) {
  auto c = *run(tt::m1(), 10);
  EXPECT_TRUE(is_computation(tt::m1(), c));
  c.configurations[1].counters[0] = 2;
  EXPECT_FALSE(is_computation(tt::m1(), c));
  c = *run(tt::m1(), 10);
  c.steps[0] = 1;
  EXPECT_FALSE(is_computation(tt::m1(), c));
}

// Random machines: every returned computation is a computation from the
// initial configuration, counters never underflow, and BFS is monotone in the
// step budget.
Machine random_machine(tt::Rng& rng) {
  const std::vector<std::string> inner{"a", "b", "c", "d"};
  std::vector<Transition> ts{{"qi", {OpKind::inc, static_cast<int>(rng.uniform(1, 2))}, "a"}};
  const auto n = rng.uniform(2, 7);
  for (std::int64_t i = 0; i < n; ++i) {
    const OpKind kind = static_cast<OpKind>(rng.uniform(0, 2));
    const std::string to = rng.chance(0.2) ? "qh" : rng.pick(inner);
    ts.push_back({rng.pick(inner), {kind, static_cast<int>(rng.uniform(1, 2))}, to});
  }
  return make_machine("qi", "qh", ts);
}

TEST(RunProperty, ComputationsAreValidAndMonotone) {
  tt::Rng rng(41);
  int halting = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Machine m = random_machine(rng);
    ASSERT_FALSE(validate_machine(m).has_value());
    const auto c = run(m, 30);
    if (!c) continue;
    ++halting;
    EXPECT_TRUE(is_computation(m, *c));
    EXPECT_EQ(c->configurations.front(), initial_configuration(m));
    EXPECT_EQ(c->configurations.back().location, "qh");
    for (std::size_t b = c->configurations.size() - 1; b <= 40; b += 3) {
      EXPECT_EQ(run(m, b), c) << "bound " << b;
    }
  }
  EXPECT_GT(halting, 20);
}

}  // namespace
