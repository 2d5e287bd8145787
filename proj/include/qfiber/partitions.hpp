#pragma once

#include <compare>
#include <cstdint>
#include <iterator>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qfiber/common.hpp"

namespace qfiber {

/// Bounding box for restricted partitions: at most `max_count` parts,
/// each at most `max_part`.
struct Rectangle {
  std::int64_t max_part = 0;
  std::int64_t max_count = 0;

  bool operator==(const Rectangle &) const = default;
};

/// Weakly decreasing list of positive parts. Trailing zeros given to the
/// constructor are stripped, so the empty list is the zero partition.
class Partition {
public:
  Partition() = default;

  explicit Partition(std::vector<std::int64_t> parts) : parts_(std::move(parts)) {
    while (!parts_.empty() && parts_.back() == 0)
      parts_.pop_back();
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 0)
        throw std::invalid_argument("Partition: negative part");
      if (i > 0 && parts_[i] > parts_[i - 1])
        throw std::invalid_argument("Partition: parts must be weakly decreasing");
    }
  }

  std::span<const std::int64_t> parts() const noexcept { return parts_; }
  std::int64_t length() const noexcept {
    return static_cast<std::int64_t>(parts_.size());
  }
  bool empty() const noexcept { return parts_.empty(); }

  /// Part i (0-based); zero past the last nonzero part.
  std::int64_t part(std::int64_t i) const noexcept {
    return i < length() ? parts_[static_cast<std::size_t>(i)] : 0;
  }

  std::int64_t weight() const noexcept {
    std::int64_t w = 0;
    for (auto p : parts_)
      w += p;
    return w;
  }

  bool fits(const Rectangle &box) const noexcept {
    return length() <= box.max_count && (empty() || parts_.front() <= box.max_part);
  }

  /// Parts padded with zeros to `count` entries.
  std::vector<std::int64_t> padded(std::int64_t count) const {
    std::vector<std::int64_t> out(parts_);
    out.resize(static_cast<std::size_t>(std::max<std::int64_t>(count, length())), 0);
    return out;
  }

  auto operator<=>(const Partition &) const = default;

private:
  std::vector<std::int64_t> parts_;
};

namespace detail {

inline void check_box(std::int64_t max_part, std::int64_t max_count) {
  if (max_part < 0 || max_count < 0)
    throw std::invalid_argument("rectangle dimensions must be nonnegative");
}

/// Weight distribution of partitions in a max_part x max_count box, filled
/// iteratively from p(a, b, n) = p(a, b - 1, n) + p(a - 1, b, n - b).
inline std::vector<BigInt> fill_restricted_table(std::int64_t max_part,
                                                 std::int64_t max_count) {
  const std::int64_t top = max_part * max_count;
  const auto width = static_cast<std::size_t>(top + 1);
  const auto rows = static_cast<std::size_t>(max_count + 1);

  // layer[b][n] = p(a, b, n) for the current a.
  std::vector<std::vector<BigInt>> prev(rows, std::vector<BigInt>(width));
  for (auto &row : prev)
    row[0] = 1;
  for (std::int64_t a = 1; a <= max_part; ++a) {
    std::vector<std::vector<BigInt>> cur(rows, std::vector<BigInt>(width));
    cur[0][0] = 1;
    for (std::size_t b = 1; b < rows; ++b) {
      const auto limit = static_cast<std::size_t>(a) * b;
      for (std::size_t n = 0; n <= limit; ++n) {
        cur[b][n] = cur[b - 1][n];
        if (n >= b)
          cur[b][n] += prev[b][n - b];
      }
    }
    prev = std::move(cur);
  }
  return std::move(prev[rows - 1]);
}

/// Process-wide memo of weight tables keyed on (max_part, max_count). Values
/// are immutable once published, so concurrent readers see identical data.
inline std::shared_ptr<const std::vector<BigInt>>
restricted_table(std::int64_t max_part, std::int64_t max_count) {
  static std::mutex mutex;
  static std::map<std::pair<std::int64_t, std::int64_t>,
                  std::shared_ptr<const std::vector<BigInt>>>
      cache;
  const auto key = std::make_pair(max_part, max_count);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end())
      return it->second;
  }
  auto table = std::make_shared<const std::vector<BigInt>>(
      fill_restricted_table(max_part, max_count));
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(table)).first->second;
}

} // namespace detail

/// Number of partitions of `weight` into at most `max_count` parts, each at
/// most `max_part`. Zero for weights outside [0, max_part * max_count].
inline BigInt count_restricted(std::int64_t max_part, std::int64_t max_count,
                               std::int64_t weight) {
  detail::check_box(max_part, max_count);
  if (weight < 0 || weight > max_part * max_count)
    return 0;
  if (weight == 0)
    return 1;
  return (*detail::restricted_table(max_part, max_count))[static_cast<std::size_t>(weight)];
}

/// Every partition fitting a rectangle, in lexicographically increasing
/// order of the zero-padded part vector. Single pass.
class RestrictedPartitions {
public:
  class iterator {
  public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Partition;
    using difference_type = std::ptrdiff_t;

    iterator() = default;

    const Partition &operator*() const { return current_; }
    const Partition *operator->() const { return &current_; }

    iterator &operator++() {
      advance();
      return *this;
    }
    void operator++(int) { advance(); }

    bool operator==(std::default_sentinel_t) const { return done_; }

  private:
    friend class RestrictedPartitions;

    iterator(std::int64_t max_part, std::int64_t max_count)
        : max_part_(max_part), padded_(static_cast<std::size_t>(max_count), 0) {}

    void advance() {
      // Rightmost slot that can grow without breaking monotonicity; the
      // suffix after it resets to zero.
      for (std::size_t i = padded_.size(); i-- > 0;) {
        if (padded_[i] < max_part_ && (i == 0 || padded_[i] < padded_[i - 1])) {
          ++padded_[i];
          std::fill(padded_.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                    padded_.end(), 0);
          current_ = Partition(padded_);
          return;
        }
      }
      done_ = true;
    }

    std::int64_t max_part_ = 0;
    std::vector<std::int64_t> padded_;
    Partition current_;
    bool done_ = false;
  };

  RestrictedPartitions(std::int64_t max_part, std::int64_t max_count)
      : box_{max_part, max_count} {
    detail::check_box(max_part, max_count);
  }

  iterator begin() const { return iterator(box_.max_part, box_.max_count); }
  std::default_sentinel_t end() const { return {}; }

  const Rectangle &box() const noexcept { return box_; }

private:
  Rectangle box_;
};

inline RestrictedPartitions enumerate_restricted(std::int64_t max_part,
                                                 std::int64_t max_count) {
  return {max_part, max_count};
}

/// Number of partitions in the box with weight in each class mod r.
/// The zero partition lands in class 0.
inline FiberTable count_by_residue(std::int64_t max_part, std::int64_t max_count,
                                   std::int64_t modulus) {
  detail::check_box(max_part, max_count);
  if (modulus < 1)
    throw std::invalid_argument("count_by_residue: modulus must be positive");
  FiberTable table(modulus);
  const auto weights = detail::restricted_table(max_part, max_count);
  for (std::size_t n = 0; n < weights->size(); ++n)
    table.accumulate(static_cast<std::int64_t>(n), (*weights)[n]);
  return table;
}

/// Partitions with exactly `parts` nonzero parts, each at most `part_bound`,
/// tallied by weight mod `modulus`. Removing one cell from each part maps
/// them onto partitions of weight - parts in a (part_bound - 1) x parts box.
inline FiberTable count_exact_parts_by_residue(std::int64_t part_bound,
                                               std::int64_t parts,
                                               std::int64_t modulus) {
  if (part_bound < 0)
    throw std::invalid_argument("count_exact_parts_by_residue: negative part bound");
  if (parts < 1)
    throw std::invalid_argument("count_exact_parts_by_residue: part count must be positive");
  if (modulus < 1)
    throw std::invalid_argument("count_exact_parts_by_residue: modulus must be positive");
  FiberTable table(modulus);
  if (part_bound == 0)
    return table;
  const auto weights = detail::restricted_table(part_bound - 1, parts);
  for (std::size_t n = 0; n < weights->size(); ++n)
    table.accumulate(static_cast<std::int64_t>(n) + parts, (*weights)[n]);
  return table;
}

} // namespace qfiber
