#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qfiber {

/// Exact arbitrary-precision integer used for every count in the library.
using BigInt = boost::multiprecision::cpp_int;

/// Thrown when an enumeration would exceed its configured element cap.
class EnumerationCapExceeded : public std::runtime_error {
public:
  EnumerationCapExceeded(const BigInt &requested, std::uint64_t cap)
      : std::runtime_error("enumeration of " + requested.str() +
                           " elements exceeds cap " + std::to_string(cap)),
        requested_(requested), cap_(cap) {}

  const BigInt &requested() const noexcept { return requested_; }
  std::uint64_t cap() const noexcept { return cap_; }

private:
  BigInt requested_;
  std::uint64_t cap_;
};

/// A division that must be exact left a remainder.
class InexactDivision : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// C(n, k); zero outside 0 <= k <= n.
inline BigInt binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n)
    return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

/// Quotient of an exact division. A nonzero remainder is an invariant
/// violation and throws InexactDivision.
inline BigInt exact_divide(const BigInt &numerator, const BigInt &denominator) {
  if (denominator == 0)
    throw std::logic_error("exact_divide: division by zero");
  BigInt quotient, remainder;
  boost::multiprecision::divide_qr(numerator, denominator, quotient, remainder);
  if (remainder != 0)
    throw InexactDivision("exact_divide: " + numerator.str() +
                           " is not divisible by " + denominator.str());
  return quotient;
}

/// Least nonnegative residue of value modulo a positive modulus.
inline std::int64_t mod_floor(std::int64_t value, std::int64_t modulus) {
  std::int64_t r = value % modulus;
  return r < 0 ? r + modulus : r;
}

/// Exact cardinalities indexed by residue class 0..modulus-1.
class FiberTable {
public:
  FiberTable() = default;

  explicit FiberTable(std::int64_t modulus) {
    if (modulus < 1)
      throw std::invalid_argument("FiberTable: modulus must be positive");
    entries_.assign(static_cast<std::size_t>(modulus), BigInt(0));
  }

  explicit FiberTable(std::vector<BigInt> entries) : entries_(std::move(entries)) {
    if (entries_.empty())
      throw std::invalid_argument("FiberTable: modulus must be positive");
  }

  std::int64_t modulus() const noexcept {
    return static_cast<std::int64_t>(entries_.size());
  }

  const BigInt &operator[](std::int64_t residue) const {
    return entries_.at(static_cast<std::size_t>(residue));
  }
  BigInt &operator[](std::int64_t residue) {
    return entries_.at(static_cast<std::size_t>(residue));
  }

  /// Adds `amount` to the class of `value` (any integer, reduced here).
  void accumulate(std::int64_t value, const BigInt &amount = 1) {
    entries_[static_cast<std::size_t>(mod_floor(value, modulus()))] += amount;
  }

  const std::vector<BigInt> &entries() const noexcept { return entries_; }

  BigInt total() const {
    return std::accumulate(entries_.begin(), entries_.end(), BigInt(0));
  }

  bool is_constant() const {
    return std::adjacent_find(entries_.begin(), entries_.end(),
                              std::not_equal_to<>()) == entries_.end();
  }

  bool operator==(const FiberTable &) const = default;

private:
  std::vector<BigInt> entries_;
};

inline std::ostream &operator<<(std::ostream &os, const FiberTable &table) {
  os << '[';
  for (std::size_t i = 0; i < table.entries().size(); ++i)
    os << (i ? ", " : "") << table.entries()[i];
  return os << ']';
}

namespace detail {

/// Visits every composition of `total` into `parts` positive parts in
/// lexicographically increasing order. The callback receives a const
/// reference to the current composition.
template <typename Fn>
void for_each_composition(std::int64_t total, std::int64_t parts, Fn &&fn) {
  if (parts < 1 || total < parts)
    return;
  std::vector<std::int64_t> c(static_cast<std::size_t>(parts), 1);
  c.back() = total - (parts - 1);
  while (true) {
    fn(static_cast<const std::vector<std::int64_t> &>(c));
    // Lex successor: bump the rightmost slot j whose tail (slots after j)
    // holds more than one unit per slot, then reset the tail to 1,...,1,rest.
    std::int64_t tail = c.back();
    std::size_t j = c.size() - 1;
    bool advanced = false;
    while (j > 0) {
      --j;
      const auto tail_len = static_cast<std::int64_t>(c.size() - 1 - j);
      if (tail > tail_len) {
        ++c[j];
        for (std::size_t q = j + 1; q < c.size(); ++q)
          c[q] = 1;
        c.back() = tail - tail_len;
        advanced = true;
        break;
      }
      tail += c[j];
    }
    if (!advanced)
      return;
  }
}

} // namespace detail

} // namespace qfiber
