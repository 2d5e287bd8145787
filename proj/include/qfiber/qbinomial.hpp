#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "qfiber/common.hpp"

namespace qfiber {

/// Coefficients a_0..a_{m n} of the Gaussian polynomial [m + n choose n]_q.
/// Coefficient j counts partitions of j fitting an m x n box.
class CoefficientVector {
public:
  CoefficientVector(std::int64_t width, std::int64_t height, std::vector<BigInt> coeffs)
      : width_(width), height_(height), coeffs_(std::move(coeffs)) {
    if (static_cast<std::int64_t>(coeffs_.size()) != width_ * height_ + 1)
      throw std::invalid_argument("CoefficientVector: length must be m*n + 1");
  }

  std::int64_t width() const noexcept { return width_; }
  std::int64_t height() const noexcept { return height_; }
  std::int64_t degree() const noexcept { return width_ * height_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  const BigInt &operator[](std::int64_t j) const {
    return coeffs_.at(static_cast<std::size_t>(j));
  }
  std::span<const BigInt> coeffs() const noexcept { return coeffs_; }

  BigInt sum() const { return std::accumulate(coeffs_.begin(), coeffs_.end(), BigInt(0)); }

  bool operator==(const CoefficientVector &) const = default;

private:
  std::int64_t width_;
  std::int64_t height_;
  std::vector<BigInt> coeffs_;
};

/// Gaussian polynomial [m + n choose n]_q by the q-Pascal rule
///   [T choose j] = [T-1 choose j-1] + q^j [T-1 choose j],
/// run as an in-place row update over j = n..1 for T = 1..m+n.
inline CoefficientVector gaussian_coefficients(std::int64_t m, std::int64_t n) {
  if (m < 0 || n < 0)
    throw std::invalid_argument("gaussian_coefficients: dimensions must be nonnegative");
  const std::int64_t total = m + n;
  // row[j] holds [T choose j] as a coefficient list of length j (T - j) + 1.
  std::vector<std::vector<BigInt>> row(static_cast<std::size_t>(n + 1));
  row[0] = {1};
  for (std::int64_t t = 1; t <= total; ++t) {
    const std::int64_t hi = std::min(t, n);
    // Columns with t - j > m never feed the final entry.
    const std::int64_t lo = std::max<std::int64_t>(1, t - m);
    for (std::int64_t j = hi; j >= lo; --j) {
      const auto uj = static_cast<std::size_t>(j);
      std::vector<BigInt> next(static_cast<std::size_t>(j * (t - j) + 1));
      const auto &left = row[uj - 1];
      for (std::size_t d = 0; d < left.size(); ++d)
        next[d] += left[d];
      const auto &up = row[uj];
      for (std::size_t d = 0; d < up.size(); ++d)
        next[d + uj] += up[d];
      row[uj] = std::move(next);
    }
  }
  return CoefficientVector(m, n, std::move(row[static_cast<std::size_t>(n)]));
}

/// Sums of coefficients over each residue class of the exponent mod r.
inline FiberTable residue_sums(const CoefficientVector &poly, std::int64_t modulus) {
  if (modulus < 1)
    throw std::invalid_argument("residue_sums: modulus must be positive");
  FiberTable table(modulus);
  for (std::int64_t j = 0; j <= poly.degree(); ++j)
    table.accumulate(j, poly[j]);
  return table;
}

inline FiberTable residue_sums(std::int64_t m, std::int64_t n, std::int64_t modulus) {
  if (modulus < 1)
    throw std::invalid_argument("residue_sums: modulus must be positive");
  return residue_sums(gaussian_coefficients(m, n), modulus);
}

/// Deterministic trial division; intended for the small moduli used here.
inline bool is_prime(std::int64_t value) {
  if (value < 2)
    return false;
  for (std::int64_t d = 2; d * d <= value; ++d)
    if (value % d == 0)
      return false;
  return true;
}

inline bool is_odd_prime(std::int64_t value) { return value != 2 && is_prime(value); }

/// Common residue-class sum of [k + l - 1 choose l - 1]_q mod r when
/// gcd(k, l) = 1 and r | l: C(k + l - 1, l - 1) / r.
inline BigInt theorem_main1_prediction(std::int64_t k, std::int64_t l, std::int64_t r) {
  if (k < 1 || l < 1 || r < 1)
    throw std::invalid_argument("main1 prediction: k, l, r must be positive");
  if (std::gcd(k, l) != 1)
    throw std::invalid_argument("main1 prediction: k and l must be coprime");
  if (l % r != 0)
    throw std::invalid_argument("main1 prediction: r must divide l");
  return exact_divide(binomial(k + l - 1, l - 1), r);
}

namespace detail {
inline void check_prime_and_height(std::int64_t p, std::int64_t height) {
  if (!is_odd_prime(p))
    throw std::invalid_argument("p must be an odd prime");
  if (height < 1 || height > p - 1)
    throw std::invalid_argument("N must lie in [1, p - 1]");
}
} // namespace detail

/// Residue-class sum of [Mp + N choose N]_q mod p in class j:
/// (C(Mp + N, N) - 1) / p, plus one for j = 0.
inline BigInt theorem_therm_prediction(std::int64_t p, std::int64_t multiplier,
                                       std::int64_t height, std::int64_t residue) {
  detail::check_prime_and_height(p, height);
  if (multiplier < 1)
    throw std::invalid_argument("therm prediction: M must be positive");
  if (residue < 0 || residue >= p)
    throw std::invalid_argument("therm prediction: residue must lie in [0, p - 1]");
  BigInt value = exact_divide(binomial(multiplier * p + height, height) - 1, p);
  if (residue == 0)
    value += 1;
  return value;
}

/// Residue-class sum of [p - 1 + N choose N]_q mod p, the same in every class.
inline BigInt theorem_suma1_prediction(std::int64_t p, std::int64_t height) {
  detail::check_prime_and_height(p, height);
  return exact_divide(binomial(p - 1 + height, height), p);
}

} // namespace qfiber
