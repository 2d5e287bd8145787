#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qfiber/common.hpp"
#include "qfiber/heisenberg.hpp"
#include "qfiber/partitions.hpp"
#include "qfiber/qbinomial.hpp"
#include "qfiber/surjections.hpp"

namespace qfiber {

enum class CheckStatus { pass, fail };

/// Outcome of one identity at one parameter point. Boolean facts (e.g.
/// "the table is not constant") are encoded as 0/1 integers so that status
/// is always componentwise equality of expected and actual.
struct CheckReport {
  std::string check_id;
  std::vector<std::pair<std::string, std::int64_t>> parameters;
  std::vector<BigInt> expected;
  std::vector<BigInt> actual;
  CheckStatus status = CheckStatus::fail;
  std::chrono::nanoseconds elapsed{0};

  bool passed() const noexcept { return status == CheckStatus::pass; }
};

using Parameters = std::vector<std::pair<std::string, std::int64_t>>;

namespace detail {

class Timer {
public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  std::chrono::nanoseconds elapsed() const {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
        std::chrono::steady_clock::now() - start_);
  }

private:
  std::chrono::steady_clock::time_point start_;
};

inline CheckReport make_report(std::string id, Parameters params, std::vector<BigInt> expected,
                               std::vector<BigInt> actual, const Timer &timer) {
  CheckReport rep;
  rep.check_id = std::move(id);
  rep.parameters = std::move(params);
  rep.status = expected == actual ? CheckStatus::pass : CheckStatus::fail;
  rep.expected = std::move(expected);
  rep.actual = std::move(actual);
  rep.elapsed = timer.elapsed();
  return rep;
}

/// Runs a prediction; a non-exact division inside it becomes the sentinel
/// {-1}, which no count can equal, so the sweep records a failure and goes on.
template <typename Fn> std::vector<BigInt> predicted_or_sentinel(Fn &&fn) {
  try {
    return fn();
  } catch (const InexactDivision &) {
    return {BigInt(-1)};
  }
}

inline std::vector<BigInt> repeated(const BigInt &value, std::int64_t count) {
  return std::vector<BigInt>(static_cast<std::size_t>(count), value);
}

inline BigInt flag(bool b) { return b ? 1 : 0; }

inline void sort_reports(std::vector<CheckReport> &reports) {
  std::stable_sort(reports.begin(), reports.end(), [](const auto &a, const auto &b) {
    return std::tie(a.check_id, a.parameters) < std::tie(b.check_id, b.parameters);
  });
}

inline void check_primes(const std::vector<std::int64_t> &primes) {
  if (primes.empty())
    throw std::invalid_argument("at least one prime required");
  for (auto p : primes)
    if (!is_odd_prime(p))
      throw std::invalid_argument(std::to_string(p) + " is not an odd prime");
}

} // namespace detail

/// Equal residue-class sums of [k + l - 1 choose l - 1]_q for coprime (k, l)
/// and every divisor r of l. Also cross-checks the q-Pascal sums against the
/// partition-count route for r = l.
inline std::vector<CheckReport> check_main1(std::int64_t k_max, std::int64_t l_max) {
  if (k_max < 2 || l_max < 2)
    throw std::invalid_argument("check_main1: bounds must be at least 2");
  std::vector<CheckReport> reports;
  for (std::int64_t k = 1; k <= k_max; ++k) {
    for (std::int64_t l = 1; l <= l_max; ++l) {
      if (std::gcd(k, l) != 1)
        continue;
      detail::Timer poly_timer;
      const auto poly = gaussian_coefficients(k, l - 1);
      {
        const auto pascal = residue_sums(poly, l);
        const auto oracle = count_by_residue(k, l - 1, l);
        reports.push_back(detail::make_report("main1.oracle", {{"k", k}, {"l", l}},
                                              oracle.entries(), pascal.entries(), poly_timer));
      }
      for (std::int64_t r = 1; r <= l; ++r) {
        if (l % r != 0)
          continue;
        detail::Timer timer;
        const auto sums = residue_sums(poly, r);
        auto expected = detail::predicted_or_sentinel(
            [&] { return detail::repeated(theorem_main1_prediction(k, l, r), r); });
        reports.push_back(detail::make_report("main1", {{"k", k}, {"l", l}, {"r", r}},
                                              std::move(expected), sums.entries(), timer));
      }
    }
  }
  detail::sort_reports(reports);
  return reports;
}

/// Residue sums of [Mp + N choose N]_q and [p - 1 + N choose N]_q mod p.
inline std::vector<CheckReport> check_therm(const std::vector<std::int64_t> &primes,
                                            std::int64_t m_max) {
  detail::check_primes(primes);
  if (m_max < 1)
    throw std::invalid_argument("check_therm: M bound must be at least 1");
  std::vector<CheckReport> reports;
  for (auto p : primes) {
    for (std::int64_t n = 1; n <= p - 1; ++n) {
      for (std::int64_t m = 1; m <= m_max; ++m) {
        detail::Timer timer;
        auto expected = detail::predicted_or_sentinel([&] {
          std::vector<BigInt> values;
          for (std::int64_t j = 0; j < p; ++j)
            values.push_back(theorem_therm_prediction(p, m, n, j));
          return values;
        });
        const auto actual = residue_sums(m * p, n, p);
        reports.push_back(detail::make_report("therm", {{"p", p}, {"M", m}, {"N", n}},
                                              std::move(expected), actual.entries(), timer));

        detail::Timer oracle_timer;
        reports.push_back(detail::make_report("therm.oracle", {{"p", p}, {"M", m}, {"N", n}},
                                              count_by_residue(m * p, n, p).entries(),
                                              actual.entries(), oracle_timer));
      }
      detail::Timer timer;
      const auto actual = residue_sums(p - 1, n, p);
      reports.push_back(detail::make_report("therm.suma1", {{"p", p}, {"N", n}},
                                            detail::predicted_or_sentinel([&] {
                                              return detail::repeated(
                                                  theorem_suma1_prediction(p, n), p);
                                            }),
                                            actual.entries(), timer));
    }
  }
  detail::sort_reports(reports);
  return reports;
}

/// Example tables for non-coprime (k, l), and the fact that they are not
/// constant.
inline std::vector<CheckReport> check_counterexamples() {
  struct Case {
    const char *id;
    std::int64_t m, n, r;
    std::vector<BigInt> table;
  };
  const std::vector<Case> cases = {
      {"counterexample.ex1", 6, 5, 6, {80, 75, 78, 76, 78, 75}},
      {"counterexample.ex2", 10, 9, 10,
       {9252, 9225, 9250, 9225, 9250, 9226, 9250, 9225, 9250, 9225}},
  };
  std::vector<CheckReport> reports;
  for (const auto &c : cases) {
    const Parameters params{{"m", c.m}, {"n", c.n}, {"r", c.r}};
    detail::Timer timer;
    const auto sums = residue_sums(c.m, c.n, c.r);
    reports.push_back(detail::make_report(c.id, params, c.table, sums.entries(), timer));

    detail::Timer total_timer;
    reports.push_back(detail::make_report(std::string(c.id) + ".total", params,
                                          {binomial(c.m + c.n, c.n)}, {sums.total()},
                                          total_timer));

    detail::Timer flag_timer;
    reports.push_back(detail::make_report(std::string(c.id) + ".nonconstant", params,
                                          {1}, {detail::flag(!sums.is_constant())},
                                          flag_timer));
  }
  detail::sort_reports(reports);
  return reports;
}

/// Class counts of partitions with exactly k parts:
///  S_{1,p-1} = [0, 1, ..., 1]; S_{k,p-1} constant for 2 <= k <= p-1;
///  S_{k,Mp} constant for 1 <= k <= p-1. The constant is the class total / p.
inline std::vector<CheckReport> check_lemma_thmp(const std::vector<std::int64_t> &primes,
                                                 std::int64_t m_max) {
  detail::check_primes(primes);
  if (m_max < 1)
    throw std::invalid_argument("check_lemma_thmp: M bound must be at least 1");
  std::vector<CheckReport> reports;
  // Partitions with exactly k parts each <= b: C(b - 1 + k, k).
  // A non-exact quotient cannot match every class, so it still reports a failure.
  auto uniform = [](std::int64_t bound, std::int64_t k, std::int64_t p) {
    return detail::repeated(binomial(bound - 1 + k, k) / p, p);
  };
  for (auto p : primes) {
    {
      detail::Timer timer;
      auto expected = detail::repeated(1, p);
      expected[0] = 0;
      reports.push_back(detail::make_report("thmp.a111", {{"p", p}}, std::move(expected),
                                            count_exact_parts_by_residue(p - 1, 1, p).entries(),
                                            timer));
    }
    for (std::int64_t k = 2; k <= p - 1; ++k) {
      detail::Timer timer;
      reports.push_back(detail::make_report("thmp.a11", {{"p", p}, {"k", k}},
                                            uniform(p - 1, k, p),
                                            count_exact_parts_by_residue(p - 1, k, p).entries(),
                                            timer));
    }
    for (std::int64_t m = 1; m <= m_max; ++m) {
      for (std::int64_t k = 1; k <= p - 1; ++k) {
        detail::Timer timer;
        reports.push_back(detail::make_report(
            "thmp.a122", {{"p", p}, {"M", m}, {"k", k}}, uniform(m * p, k, p),
            count_exact_parts_by_residue(m * p, k, p).entries(), timer));
      }
    }
  }
  detail::sort_reports(reports);
  return reports;
}

/// Fibration sweep over 1 <= r <= N <= n_max: the two routes to the Delta
/// fibers agree, totals are C(N-1, r-1), coprime (N, r) gives constant fibers,
/// N = Mp with r = p an odd prime gives one fiber larger by exactly 1, and
/// every covering point with j_1 in [1, N] survives reconstruct and L.
inline std::vector<CheckReport> check_fibrations(std::int64_t n_max) {
  if (n_max < 3)
    throw std::invalid_argument("check_fibrations: N bound must be at least 3");
  std::vector<CheckReport> reports;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    for (std::int64_t r = 1; r <= n; ++r) {
      const Parameters params{{"N", n}, {"r", r}};
      detail::Timer timer;
      const auto enumerated = delta_fiber_sizes(n, r);
      const auto chained = delta_fiber_sizes_chained(n, r);
      reports.push_back(detail::make_report("fibrations.chained", params, chained.entries(),
                                            enumerated.entries(), timer));

      detail::Timer total_timer;
      reports.push_back(detail::make_report("fibrations.total", params,
                                            {binomial(n - 1, r - 1)}, {enumerated.total()},
                                            total_timer));

      if (std::gcd(n, r) == 1) {
        detail::Timer t;
        reports.push_back(detail::make_report(
            "fibrations.coprime", params,
            detail::repeated(binomial(n - 1, r - 1) / r, r), enumerated.entries(), t));
      }
      if (is_odd_prime(r) && n % r == 0) {
        detail::Timer t;
        // A non-exact quotient makes the expected total disagree, so it reports as
        // a failure instead of aborting the sweep.
        const BigInt common = (binomial(n - 1, r - 1) - 1) / r;
        auto expected = detail::repeated(common, r);
        expected[0] += 1;
        reports.push_back(
            detail::make_report("fibrations.prime_gap", params, std::move(expected),
                                enumerated.entries(), t));
      }

      // Round trips over all covering points with j_1 in [1, N]: the j_1 = 1
      // configurations translated by 0..N-1.
      detail::Timer rt_timer;
      std::int64_t points = 0, reconstructed = 0, shifted = 0;
      for (auto it = enumerate_configurations(n, r).begin(); it != std::default_sentinel; ++it) {
        if (it.nodes().front() != 1)
          break;
        for (std::int64_t offset = 0; offset < n; ++offset) {
          auto pos = it.nodes();
          for (auto &j : pos)
            j += offset;
          const CoveringPoint point(pos, n);
          ++points;
          const auto s = covering_projection(point);
          if (reconstruct(s, relative_positions(point)) == point)
            ++reconstructed;
          const auto moved = shift_action(point, 1);
          const auto rel = relative_positions(point);
          std::vector<std::int64_t> rot(rel.gaps().begin(), rel.gaps().end());
          std::rotate(rot.begin(), rot.begin() + 1, rot.end());
          if (covering_projection(moved) == s + n &&
              relative_positions(moved) == RelativePositions(rot, n) &&
              shift_action(moved, -1) == point)
            ++shifted;
        }
      }
      reports.push_back(detail::make_report("fibrations.roundtrip", params,
                                            {BigInt(n) * binomial(n - 1, r - 1), points, points},
                                            {points, reconstructed, shifted}, rt_timer));
    }
  }
  detail::sort_reports(reports);
  return reports;
}

enum class Suite { main1, therm, thmp, counterexamples, fibrations, all };

inline Suite parse_suite(const std::string &name) {
  static const std::map<std::string, Suite> names = {
      {"main1", Suite::main1},           {"therm", Suite::therm},
      {"thmp", Suite::thmp},             {"counterexamples", Suite::counterexamples},
      {"fibrations", Suite::fibrations}, {"all", Suite::all}};
  auto it = names.find(name);
  if (it == names.end())
    throw std::invalid_argument("unknown suite '" + name + "'");
  return it->second;
}

struct VerifyBounds {
  std::int64_t k_max = 24;
  std::int64_t l_max = 24;
  std::vector<std::int64_t> primes{3, 5, 7, 11};
  std::int64_t m_max = 3;
  std::int64_t n_max = 14;
};

inline void validate(Suite suite, const VerifyBounds &b) {
  const bool all = suite == Suite::all;
  if ((all || suite == Suite::main1) && (b.k_max < 2 || b.l_max < 2))
    throw std::invalid_argument("k and l bounds must be at least 2");
  if (all || suite == Suite::therm || suite == Suite::thmp) {
    detail::check_primes(b.primes);
    if (b.m_max < 1)
      throw std::invalid_argument("M bound must be at least 1");
  }
  if ((all || suite == Suite::fibrations) && b.n_max < 3)
    throw std::invalid_argument("N bound must be at least 3");
}

/// Runs one suite (or all of them). The result is ordered by suite, then by
/// check id and parameters.
inline std::vector<CheckReport> run_suite(Suite suite, const VerifyBounds &bounds) {
  std::vector<CheckReport> out;
  auto append = [&](std::vector<CheckReport> part) {
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  };
  validate(suite, bounds);
  const bool all = suite == Suite::all;
  if (all || suite == Suite::main1)
    append(check_main1(bounds.k_max, bounds.l_max));
  if (all || suite == Suite::therm)
    append(check_therm(bounds.primes, bounds.m_max));
  if (all || suite == Suite::thmp)
    append(check_lemma_thmp(bounds.primes, bounds.m_max));
  if (all || suite == Suite::counterexamples)
    append(check_counterexamples());
  if (all || suite == Suite::fibrations)
    append(check_fibrations(bounds.n_max));
  return out;
}

} // namespace qfiber
