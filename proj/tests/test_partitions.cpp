#include <map>
#include <thread>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qfiber/partitions.hpp"

using namespace qfiber;

TEST(Partition, StripsTrailingZerosAndValidates) {
  Partition p({3, 1, 0, 0});
  EXPECT_EQ(p.length(), 2);
  EXPECT_EQ(p.weight(), 4);
  EXPECT_TRUE(Partition({0, 0}).empty());
  EXPECT_THROW(Partition({1, 2}), std::invalid_argument);
  EXPECT_THROW(Partition({2, -1}), std::invalid_argument);
  EXPECT_TRUE(p.fits({3, 2}));
  EXPECT_FALSE(p.fits({2, 2}));
  EXPECT_FALSE(p.fits({3, 1}));
  EXPECT_TRUE(Partition().fits({0, 0}));
}

TEST(CountRestricted, Examples) {
  for (std::int64_t a = 0; a < 5; ++a)
    for (std::int64_t b = 0; b < 5; ++b)
      EXPECT_EQ(count_restricted(a, b, 0), 1);
  EXPECT_EQ(count_restricted(2, 2, 2), 2);
  BigInt total = 0;
  for (std::int64_t n = 0; n <= 9; ++n)
    total += count_restricted(3, 3, n);
  EXPECT_EQ(total, 20);
  EXPECT_EQ(count_restricted(3, 3, -1), 0);
  EXPECT_EQ(count_restricted(3, 3, 10), 0);
  EXPECT_THROW(count_restricted(-1, 3, 1), std::invalid_argument);
}

TEST(CountRestricted, MatchesBruteForce) {
  for (std::int64_t a = 0; a <= 7; ++a)
    for (std::int64_t b = 0; b <= 7; ++b) {
      const auto h = oracle::weight_histogram(a, b);
      for (std::int64_t n = 0; n <= a * b; ++n)
        ASSERT_EQ(count_restricted(a, b, n), h[static_cast<std::size_t>(n)]) << a << 'x' << b;
    }
}

TEST(CountRestricted, ConjugationComplementAndRecurrence) {
  for (std::int64_t a = 0; a <= 10; ++a)
    for (std::int64_t b = 0; b <= 10; ++b)
      for (std::int64_t n = -2; n <= a * b + 2; ++n) {
        ASSERT_EQ(count_restricted(a, b, n), count_restricted(b, a, n));
        ASSERT_EQ(count_restricted(a, b, n), count_restricted(a, b, a * b - n));
        if (a >= 1 && b >= 1) {
          ASSERT_EQ(count_restricted(a, b, n),
                    count_restricted(a, b - 1, n) + count_restricted(a - 1, b, n - b));
        }
      }
}

TEST(CountRestricted, LargeBoxExceeds64Bits) {
  // Central coefficient of a 60 x 60 box is far beyond 2^64.
  const auto c = count_restricted(60, 60, 1800);
  EXPECT_GT(c, BigInt(std::numeric_limits<std::uint64_t>::max()));
  EXPECT_EQ(c, count_restricted(60, 60, 1800));
}

TEST(CountRestricted, ConcurrentCallsAgree) {
  std::vector<BigInt> results(8);
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < results.size(); ++i)
    threads.emplace_back([&, i] { results[i] = count_restricted(25, 20 + static_cast<std::int64_t>(i % 2), 200); });
  for (auto &t : threads)
    t.join();
  for (std::size_t i = 0; i < results.size(); ++i)
    EXPECT_EQ(results[i], results[i % 2]);
}

TEST(EnumerateRestricted, SmallCases) {
  std::vector<Partition> got;
  for (const auto &p : enumerate_restricted(0, 0))
    got.push_back(p);
  ASSERT_EQ(got.size(), 1u);
  EXPECT_TRUE(got[0].empty());

  std::vector<Partition> one;
  for (const auto &p : enumerate_restricted(1, 1))
    one.push_back(p);
  ASSERT_EQ(one.size(), 2u);
  EXPECT_TRUE(one[0].empty());
  EXPECT_EQ(one[1], Partition({1}));

  std::vector<Partition> box;
  for (const auto &p : enumerate_restricted(2, 2))
    box.push_back(p);
  const std::vector<Partition> expected{Partition(), Partition({1}), Partition({1, 1}),
                                        Partition({2}), Partition({2, 1}), Partition({2, 2})};
  EXPECT_EQ(box, expected);
}

TEST(EnumerateRestricted, LexOrderCountAndWeights) {
  for (std::int64_t a = 0; a <= 6; ++a)
    for (std::int64_t b = 0; b <= 6; ++b) {
      std::map<std::int64_t, BigInt> weights;
      std::vector<std::int64_t> prev;
      std::size_t count = 0;
      for (const auto &p : enumerate_restricted(a, b)) {
        ASSERT_TRUE(p.fits({a, b}));
        auto padded = p.padded(b);
        if (count > 0) {
          ASSERT_LT(prev, padded);
        }
        prev = padded;
        ++weights[p.weight()];
        ++count;
      }
      ASSERT_EQ(BigInt(count), oracle::choose(a + b, b));
      for (auto &[w, c] : weights)
        ASSERT_EQ(c, count_restricted(a, b, w));
    }
}

TEST(CountByResidue, PaperExamples) {
  EXPECT_EQ(count_by_residue(3, 3, 4), FiberTable({5, 5, 5, 5}));
  EXPECT_EQ(count_by_residue(5, 2, 3), FiberTable({7, 7, 7}));
  EXPECT_EQ(count_by_residue(6, 5, 6), FiberTable({80, 75, 78, 76, 78, 75}));
}

TEST(CountByResidue, DegenerateAndErrors) {
  EXPECT_EQ(count_by_residue(0, 4, 3), FiberTable({1, 0, 0}));
  EXPECT_EQ(count_by_residue(4, 0, 3), FiberTable({1, 0, 0}));
  EXPECT_THROW(count_by_residue(2, 2, 0), std::invalid_argument);
}

TEST(CountByResidue, TotalsAndOracle) {
  for (std::int64_t a = 0; a <= 6; ++a)
    for (std::int64_t b = 0; b <= 6; ++b)
      for (std::int64_t r = 1; r <= 7; ++r) {
        const auto t = count_by_residue(a, b, r);
        ASSERT_EQ(t.total(), oracle::choose(a + b, b));
        ASSERT_EQ(t.entries(), oracle::residue_histogram(a, b, r));
      }
}

TEST(CountExactParts, Examples) {
  EXPECT_EQ(count_exact_parts_by_residue(2, 1, 3), FiberTable({0, 1, 1}));
  EXPECT_EQ(count_exact_parts_by_residue(2, 2, 3), FiberTable({1, 1, 1}));
  // Frozen from brute-force enumeration.
  EXPECT_EQ(count_exact_parts_by_residue(4, 2, 5), FiberTable({2, 2, 2, 2, 2}));
  EXPECT_EQ(count_exact_parts_by_residue(0, 2, 3), FiberTable({0, 0, 0}));
  EXPECT_THROW(count_exact_parts_by_residue(2, 0, 3), std::invalid_argument);
  EXPECT_THROW(count_exact_parts_by_residue(2, 1, 0), std::invalid_argument);
}

TEST(CountExactParts, DecomposesResidueTable) {
  for (std::int64_t k = 0; k <= 7; ++k)
    for (std::int64_t l = 1; l <= 6; ++l)
      for (std::int64_t p = 1; p <= 7; ++p) {
        FiberTable sum(p);
        sum[0] += 1; // zero partition
        for (std::int64_t m = 1; m <= l; ++m) {
          const auto s = count_exact_parts_by_residue(k, m, p);
          for (std::int64_t i = 0; i < p; ++i)
            sum[i] += s[i];
        }
        ASSERT_EQ(sum, count_by_residue(k, l, p)) << k << ' ' << l << ' ' << p;
      }
}
