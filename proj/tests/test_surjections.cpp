#include <algorithm>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qfiber/surjections.hpp"

using namespace qfiber;

namespace {
std::vector<StepSequence> all_steps(std::int64_t k, std::int64_t l) {
  std::vector<StepSequence> out;
  for_each_step_sequence(k, l, [&](StepSequence s) { out.push_back(std::move(s)); });
  return out;
}
} // namespace

TEST(Thresholds, FigureExample) {
  const ThresholdSequence t({4, 5, 7}, 15);
  EXPECT_EQ(t.t(4), 4);
  EXPECT_EQ(t.t(2), 7);
  EXPECT_EQ(t.t(1), 15);
  const auto s = thresholds_to_steps(t);
  EXPECT_EQ(s.vector(), (std::vector<std::int64_t>{4, 1, 2, 8}));
  EXPECT_EQ(steps_to_thresholds(s), t);
}

TEST(Thresholds, MinimalAndMalformed) {
  // l = 5, k = 3: thresholds 1..4 give (1,1,1,1,k+1).
  const auto s = thresholds_to_steps(ThresholdSequence({1, 2, 3, 4}, 8));
  EXPECT_EQ(s.vector(), (std::vector<std::int64_t>{1, 1, 1, 1, 4}));
  EXPECT_THROW(ThresholdSequence({2, 2}, 5), std::invalid_argument);
  EXPECT_THROW(ThresholdSequence({0, 2}, 5), std::invalid_argument);
  EXPECT_THROW(ThresholdSequence({2, 5}, 5), std::invalid_argument);
  EXPECT_THROW(StepSequence({}), std::invalid_argument);
  EXPECT_THROW(StepSequence({2, 0}), std::invalid_argument);
  EXPECT_EQ(thresholds_to_steps(ThresholdSequence({}, 6)).vector(), (std::vector<std::int64_t>{6}));
}

TEST(Integral, Values) {
  EXPECT_EQ(integral(StepSequence({4, 1, 2, 8})), 31);
  EXPECT_EQ(integral(StepSequence({9})), 9);
  for (std::int64_t l = 1; l <= 8; ++l)
    for (std::int64_t k = 0; k <= 6; ++k) {
      std::vector<std::int64_t> minimal(static_cast<std::size_t>(l), 1);
      minimal.back() = k + 1;
      ASSERT_EQ(integral(StepSequence(minimal)), l * (l - 1) / 2 + k + l);
    }
  for (const auto &s : all_steps(5, 4))
    ASSERT_EQ(integral(s), oracle::area_by_cells(s.vector()));
}

TEST(Bijection, FigureExample) {
  const ThresholdSequence t({4, 5, 7}, 15);
  const auto pi = surjection_to_partition(t);
  EXPECT_EQ(pi, Partition({4, 3, 3}));
  EXPECT_EQ(pi.weight(), 10);
  EXPECT_EQ(integral(thresholds_to_steps(t)), 4 * 3 / 2 + 11 + 4 + 10);
  EXPECT_EQ(partition_to_surjection(pi, 11, 4), t);
  EXPECT_EQ(partition_to_surjection(Partition(), 11, 4), ThresholdSequence({1, 2, 3}, 15));
  EXPECT_TRUE(surjection_to_partition(ThresholdSequence({1, 2, 3}, 15)).empty());
}

TEST(Bijection, MaximalPartition) {
  for (std::int64_t k = 0; k <= 5; ++k)
    for (std::int64_t l = 1; l <= 5; ++l) {
      const Partition top(std::vector<std::int64_t>(static_cast<std::size_t>(l - 1), k));
      const auto t = partition_to_surjection(top, k, l);
      std::vector<std::int64_t> expected;
      for (std::int64_t i = 1; i <= l - 1; ++i)
        expected.push_back(k + i);
      EXPECT_EQ(std::vector<std::int64_t>(t.thresholds().begin(), t.thresholds().end()), expected);
      EXPECT_EQ(surjection_to_partition(t), top);
    }
}

TEST(Bijection, RejectsOutOfBox) {
  EXPECT_THROW(partition_to_surjection(Partition({5}), 4, 3), std::invalid_argument);
  EXPECT_THROW(partition_to_surjection(Partition({1, 1, 1}), 4, 3), std::invalid_argument);
}

TEST(Bijection, ExhaustiveSmall) {
  for (std::int64_t k = 0; k <= 7; ++k)
    for (std::int64_t l = 1; l <= 7; ++l) {
      std::set<Partition> seen;
      for (const auto &s : all_steps(k, l)) {
        const auto pi = surjection_to_partition(s);
        ASSERT_TRUE(pi.fits({k, l - 1}));
        ASSERT_EQ(integral(s), l * (l - 1) / 2 + k + l + pi.weight());
        ASSERT_EQ(thresholds_to_steps(partition_to_surjection(pi, k, l)), s);
        seen.insert(pi);
      }
      ASSERT_EQ(BigInt(seen.size()), oracle::choose(k + l - 1, l - 1));
    }
}

TEST(ActCyclic, Examples) {
  const StepSequence s({4, 1, 2, 8});
  EXPECT_EQ(act_cyclic(s, 1).vector(), (std::vector<std::int64_t>{8, 4, 1, 2}));
  EXPECT_EQ(act_cyclic(s, 4), s);
  EXPECT_EQ(act_cyclic(s, -1), act_cyclic(s, 3));
  const auto moved = act_cyclic(s, 1);
  EXPECT_EQ(integral(moved), 48);
  EXPECT_EQ(mod_floor(integral(moved), 4), mod_floor(integral(s) - 15, 4));
}

TEST(ActUnit, Examples) {
  const StepSequence s({10, 20, 30, 40});
  EXPECT_EQ(act_unit(s, 1), s);
  EXPECT_EQ(act_unit(s, 3).vector(), (std::vector<std::int64_t>{30, 20, 10, 40}));
  EXPECT_THROW(act_unit(s, 2), std::invalid_argument);
  EXPECT_EQ(act_unit(StepSequence({5}), 7), StepSequence({5}));
}

TEST(ActUnit, IndexMapMatchesDirectFormula) {
  // Position i receives n_j where u * j = i mod l.
  for (std::int64_t l = 1; l <= 12; ++l) {
    std::vector<std::int64_t> base(static_cast<std::size_t>(l));
    for (std::int64_t i = 0; i < l; ++i)
      base[static_cast<std::size_t>(i)] = 100 + i;
    for (std::int64_t u = 1; u <= l; ++u) {
      if (oracle::gcd(u, l) != 1)
        continue;
      const auto out = act_unit(StepSequence(base), u);
      for (std::int64_t i = 1; i <= l; ++i) {
        std::int64_t j = 1;
        while ((u * j - i) % l != 0)
          ++j;
        ASSERT_EQ(out.step(i), base[static_cast<std::size_t>(j - 1)]);
      }
    }
  }
}

TEST(ActSymmetric, ConventionAndCyclicCrossCheck) {
  const StepSequence s({1, 2, 3});
  EXPECT_EQ(act_symmetric(s, Permutation::identity(3)), s);
  // sigma: 1 -> 2 -> 3 -> 1 (0-based 0 -> 1 -> 2 -> 0).
  const Permutation sigma({1, 2, 0});
  EXPECT_EQ(act_symmetric(s, sigma).vector(), (std::vector<std::int64_t>{2, 3, 1}));
  EXPECT_EQ(act_symmetric(s, sigma), act_cyclic(s, -1));
  EXPECT_THROW(Permutation({0, 0, 1}), std::invalid_argument);
  EXPECT_THROW(Permutation({0, 3, 1}), std::invalid_argument);
  EXPECT_THROW(act_symmetric(s, Permutation::identity(2)), std::invalid_argument);
}

TEST(GroupLaws, RandomizedProperties) {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::int64_t l = std::uniform_int_distribution<std::int64_t>(1, 9)(rng);
    std::vector<std::int64_t> steps(static_cast<std::size_t>(l));
    for (auto &x : steps)
      x = std::uniform_int_distribution<std::int64_t>(1, 6)(rng);
    const StepSequence s(steps);

    ASSERT_EQ(act_cyclic(s, l), s);
    const auto a = std::uniform_int_distribution<std::int64_t>(-20, 20)(rng);
    const auto b = std::uniform_int_distribution<std::int64_t>(-20, 20)(rng);
    ASSERT_EQ(act_cyclic(act_cyclic(s, a), b), act_cyclic(s, a + b));

    std::vector<std::int64_t> units;
    for (std::int64_t u = 1; u <= l; ++u)
      if (oracle::gcd(u, l) == 1)
        units.push_back(u);
    const auto u = units[rng() % units.size()], v = units[rng() % units.size()];
    ASSERT_EQ(act_unit(act_unit(s, v), u), act_unit(s, u * v));

    std::vector<std::int64_t> p1(static_cast<std::size_t>(l)), p2(static_cast<std::size_t>(l));
    std::iota(p1.begin(), p1.end(), 0);
    std::iota(p2.begin(), p2.end(), 0);
    std::shuffle(p1.begin(), p1.end(), rng);
    std::shuffle(p2.begin(), p2.end(), rng);
    const Permutation tau(p1), sigma(p2);
    const auto once = act_symmetric(act_symmetric(s, tau), sigma);
    ASSERT_EQ(once, act_symmetric(s, tau.compose(sigma)));
    auto sorted_in = steps, sorted_out = once.vector();
    std::sort(sorted_in.begin(), sorted_in.end());
    std::sort(sorted_out.begin(), sorted_out.end());
    ASSERT_EQ(sorted_in, sorted_out);
  }
}

TEST(CyclicShift, ResidueLawExhaustive) {
  for (std::int64_t k = 0; k <= 8; ++k)
    for (std::int64_t l = 1; l <= 8; ++l)
      for (const auto &s : all_steps(k, l))
        ASSERT_EQ(mod_floor(integral(act_cyclic(s, 1)), l), mod_floor(integral(s) - (k + l), l));
}

TEST(CyclicShift, CoprimeHistogramIsFlat) {
  for (std::int64_t k = 1; k <= 8; ++k)
    for (std::int64_t l = 1; l <= 8; ++l) {
      if (oracle::gcd(k, l) != 1)
        continue;
      FiberTable hist(l);
      for (const auto &s : all_steps(k, l))
        hist.accumulate(integral(s));
      ASSERT_TRUE(hist.is_constant()) << k << ' ' << l;
    }
}

TEST(ActOnPartition, TransportsActions) {
  const Partition zero;
  EXPECT_EQ(act_on_partition(zero, CyclicShift{0}, 11, 4), zero);
  EXPECT_EQ(act_on_partition(Partition({4, 3, 3}), UnitScale{1}, 11, 4), Partition({4, 3, 3}));
  const auto minimal = thresholds_to_steps(partition_to_surjection(zero, 11, 4));
  EXPECT_EQ(act_on_partition(zero, CyclicShift{1}, 11, 4),
            surjection_to_partition(act_cyclic(minimal, 1)));
  // Minimal steps (1,1,1,12) rotate to (12,1,1,1): thresholds (12,13,14) -> <11,11,11>.
  EXPECT_EQ(act_on_partition(zero, CyclicShift{1}, 11, 4), Partition({11, 11, 11}));

  for (std::int64_t k = 0; k <= 6; ++k)
    for (std::int64_t l = 1; l <= 6; ++l)
      for (const auto &pi : enumerate_restricted(k, l - 1)) {
        const auto moved = act_on_partition(pi, CyclicShift{1}, k, l);
        ASSERT_TRUE(moved.fits({k, l - 1}));
        ASSERT_EQ(mod_floor(moved.weight(), l), mod_floor(pi.weight() - (k + l), l));
        ASSERT_EQ(act_on_partition(moved, CyclicShift{-1}, k, l), pi);
      }
}

TEST(Orbits, SizesAndTotals) {
  for (auto group : {GroupKind::cyclic, GroupKind::units, GroupKind::symmetric})
    for (std::int64_t k = 0; k <= 6; ++k)
      for (std::int64_t l = 1; l <= 6; ++l) {
        const auto os = orbits(k, l, group);
        BigInt total = 0;
        for (const auto &o : os) {
          ASSERT_FALSE(o.elements.empty());
          ASSERT_EQ(group_order(group, l) % o.elements.size(), 0);
          ASSERT_TRUE(std::is_sorted(o.elements.begin(), o.elements.end()));
          total += o.elements.size();
        }
        ASSERT_EQ(total, oracle::choose(k + l - 1, l - 1));
        for (std::size_t i = 1; i < os.size(); ++i)
          ASSERT_LT(os[i - 1].elements.front(), os[i].elements.front());
      }
}

TEST(Orbits, CyclicOrbitsCoverResidues) {
  // gcd(k + l, l) = 1: every cyclic orbit has l elements hitting each class once.
  for (std::int64_t k = 1; k <= 7; ++k)
    for (std::int64_t l = 1; l <= 7; ++l) {
      if (oracle::gcd(k + l, l) != 1)
        continue;
      for (const auto &o : orbits(k, l, GroupKind::cyclic)) {
        ASSERT_EQ(static_cast<std::int64_t>(o.elements.size()), l);
        std::set<std::int64_t> classes;
        for (const auto &s : o.elements)
          classes.insert(mod_floor(integral(s), l));
        ASSERT_EQ(static_cast<std::int64_t>(classes.size()), l);
      }
    }
}

TEST(Orbits, HistogramsFrozenFromEnumeration) {
  EXPECT_EQ(orbit_size_histogram(5, 3, GroupKind::cyclic), (std::map<std::int64_t, std::int64_t>{{3, 7}}));
  EXPECT_EQ(orbit_size_histogram(5, 3, GroupKind::symmetric),
            (std::map<std::int64_t, std::int64_t>{{3, 3}, {6, 2}}));
  const auto units66 = orbit_size_histogram(6, 6, GroupKind::units);
  EXPECT_EQ(units66, (std::map<std::int64_t, std::int64_t>{{1, 30}, {2, 216}}));
  EXPECT_EQ(units66.at(1) + 2 * units66.at(2), 462);
  EXPECT_EQ(orbit_size_histogram(9, 10, GroupKind::units),
            (std::map<std::int64_t, std::int64_t>{{1, 28}, {2, 112}, {4, 12092}}));
  const auto single = orbits(0, 1, GroupKind::cyclic);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].elements.front(), StepSequence({1}));
  for (std::int64_t k = 0; k <= 5; ++k)
    EXPECT_EQ(orbit_size_histogram(k, 1, GroupKind::symmetric),
              (std::map<std::int64_t, std::int64_t>{{1, 1}}));
}

TEST(Orbits, CapIsEnforced) {
  EXPECT_THROW(orbits(10, 10, GroupKind::cyclic, 1000), EnumerationCapExceeded);
  EXPECT_NO_THROW(orbits(3, 3, GroupKind::cyclic, 10));
  EXPECT_THROW(orbits(-1, 3, GroupKind::cyclic), std::invalid_argument);
  EXPECT_THROW(parse_group_kind("dihedral"), std::invalid_argument);
}
