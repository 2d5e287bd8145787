#pragma once

#include <cstdint>
#include <iterator>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "qfiber/common.hpp"
#include "qfiber/partitions.hpp"

// Configuration spaces of a ring of N nodes carrying r indistinguishable
// reversed spins, their covering space, and the relative-position fibration.

namespace qfiber {

/// Strictly increasing r-tuple of node indices 1 <= j_1 < ... < j_r <= N.
class Configuration {
public:
  Configuration(std::vector<std::int64_t> nodes, std::int64_t ring_size)
      : nodes_(std::move(nodes)), ring_size_(ring_size) {
    if (ring_size_ < 1)
      throw std::invalid_argument("Configuration: ring size must be positive");
    std::int64_t last = 0;
    for (auto j : nodes_) {
      if (j <= last || j > ring_size_)
        throw std::invalid_argument("Configuration: nodes must be strictly increasing in [1, N]");
      last = j;
    }
  }

  std::span<const std::int64_t> nodes() const noexcept { return nodes_; }
  std::int64_t ring_size() const noexcept { return ring_size_; }
  std::int64_t particles() const noexcept { return static_cast<std::int64_t>(nodes_.size()); }

  auto operator<=>(const Configuration &) const = default;

private:
  std::vector<std::int64_t> nodes_;
  std::int64_t ring_size_;
};

/// Point of the covering space: j_1 < ... < j_r < j_1 + N, integers unbounded.
class CoveringPoint {
public:
  CoveringPoint(std::vector<std::int64_t> positions, std::int64_t ring_size)
      : positions_(std::move(positions)), ring_size_(ring_size) {
    if (ring_size_ < 1)
      throw std::invalid_argument("CoveringPoint: ring size must be positive");
    for (std::size_t i = 1; i < positions_.size(); ++i)
      if (positions_[i] <= positions_[i - 1])
        throw std::invalid_argument("CoveringPoint: positions must be strictly increasing");
    if (!positions_.empty() && positions_.back() >= positions_.front() + ring_size_)
      throw std::invalid_argument("CoveringPoint: span must be less than N");
  }

  explicit CoveringPoint(const Configuration &c)
      : CoveringPoint({c.nodes().begin(), c.nodes().end()}, c.ring_size()) {}

  std::span<const std::int64_t> positions() const noexcept { return positions_; }
  std::int64_t ring_size() const noexcept { return ring_size_; }
  std::int64_t particles() const noexcept { return static_cast<std::int64_t>(positions_.size()); }

  auto operator<=>(const CoveringPoint &) const = default;

private:
  std::vector<std::int64_t> positions_;
  std::int64_t ring_size_;
};

/// Gaps (t_1, ..., t_r) between consecutive occupied nodes around the ring;
/// all positive and summing to N.
class RelativePositions {
public:
  RelativePositions(std::vector<std::int64_t> gaps, std::int64_t ring_size)
      : gaps_(std::move(gaps)), ring_size_(ring_size) {
    if (gaps_.empty())
      throw std::invalid_argument("RelativePositions: need at least one gap");
    std::int64_t sum = 0;
    for (auto t : gaps_) {
      if (t < 1)
        throw std::invalid_argument("RelativePositions: gaps must be positive");
      sum += t;
    }
    if (sum != ring_size_)
      throw std::invalid_argument("RelativePositions: gaps must sum to N");
  }

  std::span<const std::int64_t> gaps() const noexcept { return gaps_; }
  std::int64_t ring_size() const noexcept { return ring_size_; }
  std::int64_t particles() const noexcept { return static_cast<std::int64_t>(gaps_.size()); }

  /// sum over beta of beta * t_beta (1-based beta).
  std::int64_t weighted_sum() const noexcept {
    std::int64_t w = 0;
    for (std::size_t b = 0; b < gaps_.size(); ++b)
      w += static_cast<std::int64_t>(b + 1) * gaps_[b];
    return w;
  }

  auto operator<=>(const RelativePositions &) const = default;

private:
  std::vector<std::int64_t> gaps_;
  std::int64_t ring_size_;
};

/// All C(N, r) configurations in lexicographic order. Single pass.
class Configurations {
public:
  class iterator {
  public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Configuration;
    using difference_type = std::ptrdiff_t;

    iterator() = default;

    Configuration operator*() const { return Configuration(nodes_, ring_size_); }
    const std::vector<std::int64_t> &nodes() const noexcept { return nodes_; }

    iterator &operator++() {
      advance();
      return *this;
    }
    void operator++(int) { advance(); }

    bool operator==(std::default_sentinel_t) const { return done_; }

  private:
    friend class Configurations;

    iterator(std::int64_t ring_size, std::int64_t particles)
        : ring_size_(ring_size), nodes_(static_cast<std::size_t>(particles)) {
      std::iota(nodes_.begin(), nodes_.end(), std::int64_t{1});
    }

    void advance() {
      const auto r = static_cast<std::int64_t>(nodes_.size());
      for (std::int64_t i = r; i-- > 0;) {
        auto &slot = nodes_[static_cast<std::size_t>(i)];
        if (slot < ring_size_ - (r - 1 - i)) {
          ++slot;
          for (std::int64_t q = i + 1; q < r; ++q)
            nodes_[static_cast<std::size_t>(q)] = nodes_[static_cast<std::size_t>(q - 1)] + 1;
          return;
        }
      }
      done_ = true;
    }

    std::int64_t ring_size_ = 1;
    std::vector<std::int64_t> nodes_;
    bool done_ = false;
  };

  Configurations(std::int64_t ring_size, std::int64_t particles)
      : ring_size_(ring_size), particles_(particles) {
    if (ring_size < 1 || particles < 0 || particles > ring_size)
      throw std::invalid_argument("enumerate_configurations: need N >= 1 and 0 <= r <= N");
  }

  iterator begin() const { return iterator(ring_size_, particles_); }
  std::default_sentinel_t end() const { return {}; }

private:
  std::int64_t ring_size_;
  std::int64_t particles_;
};

inline Configurations enumerate_configurations(std::int64_t ring_size, std::int64_t particles) {
  return {ring_size, particles};
}

/// Rescaled center of mass on the covering space: sum of j_alpha.
inline std::int64_t covering_projection(const CoveringPoint &p) {
  return std::accumulate(p.positions().begin(), p.positions().end(), std::int64_t{0});
}

/// Rescaled center of mass on the ring: (sum of j_alpha) mod N.
inline std::int64_t center_projection(const Configuration &c) {
  const auto sum = std::accumulate(c.nodes().begin(), c.nodes().end(), std::int64_t{0});
  return mod_floor(sum, c.ring_size());
}

inline RelativePositions relative_positions(const CoveringPoint &p) {
  const auto pos = p.positions();
  if (pos.empty())
    throw std::invalid_argument("relative_positions: need r >= 1");
  std::vector<std::int64_t> gaps(pos.size());
  for (std::size_t a = 0; a + 1 < pos.size(); ++a)
    gaps[a] = pos[a + 1] - pos[a];
  gaps.back() = p.ring_size() + pos.front() - pos.back();
  return RelativePositions(std::move(gaps), p.ring_size());
}

inline RelativePositions relative_positions(const Configuration &c) {
  return relative_positions(CoveringPoint(c));
}

/// Whether s + sum(beta t_beta) is divisible by r, the condition for
/// (s, t) to come from a covering point.
inline bool is_compatible(std::int64_t s, const RelativePositions &t) {
  return mod_floor(s + t.weighted_sum(), t.particles()) == 0;
}

/// Covering point with center of mass s and relative positions t:
///   j_alpha = (s + sum_beta beta t_beta) / r - sum_{beta >= alpha} t_beta.
inline CoveringPoint reconstruct(std::int64_t s, const RelativePositions &t) {
  if (!is_compatible(s, t))
    throw std::invalid_argument("reconstruct: s + sum(beta * t_beta) is not divisible by r");
  const std::int64_t r = t.particles();
  const std::int64_t base = (s + t.weighted_sum()) / r;
  const auto gaps = t.gaps();
  std::vector<std::int64_t> pos(gaps.size());
  std::int64_t suffix = 0;
  for (std::int64_t a = r; a-- > 0;) {
    suffix += gaps[static_cast<std::size_t>(a)];
    pos[static_cast<std::size_t>(a)] = base - suffix;
  }
  CoveringPoint point(std::move(pos), t.ring_size());
  if (covering_projection(point) != s)
    throw std::logic_error("reconstruct: center of mass not reproduced");
  return point;
}

/// L^steps with L(j_1, ..., j_r) = (j_2, ..., j_r, j_1 + N). Negative steps
/// apply the inverse.
inline CoveringPoint shift_action(const CoveringPoint &p, std::int64_t steps) {
  const std::int64_t r = p.particles();
  if (r == 0)
    return p;
  const std::int64_t n = p.ring_size();
  const std::int64_t rem = mod_floor(steps, r);
  const std::int64_t laps = (steps - rem) / r;
  std::vector<std::int64_t> pos(static_cast<std::size_t>(r));
  for (std::int64_t a = 0; a < r; ++a) {
    const std::int64_t src = a + rem;
    const std::int64_t wrap = src >= r ? n : 0;
    pos[static_cast<std::size_t>(a)] =
        p.positions()[static_cast<std::size_t>(src % r)] + wrap + laps * n;
  }
  return CoveringPoint(std::move(pos), n);
}

/// |Q_{N,r,s}| for s in Z/NZ: configurations by center_projection.
inline FiberTable center_fiber_sizes(std::int64_t ring_size, std::int64_t particles) {
  FiberTable table(ring_size);
  for (auto it = enumerate_configurations(ring_size, particles).begin();
       it != std::default_sentinel; ++it) {
    std::int64_t sum = 0;
    for (auto j : it.nodes())
      sum += j;
    table.accumulate(sum);
  }
  return table;
}

namespace detail {
inline void check_fiber_args(std::int64_t ring_size, std::int64_t particles) {
  if (particles < 1 || particles > ring_size)
    throw std::invalid_argument("delta fibers: need 1 <= r <= N");
}
} // namespace detail

/// |Delta_{N,r,s}| for s in Z/rZ by direct enumeration of the compositions t
/// of N into r positive parts: t lies in fiber s iff s + sum(beta t_beta) = 0 mod r.
/// The condition only sees s mod r, so fibers are indexed by s mod r.
inline FiberTable delta_fiber_sizes(std::int64_t ring_size, std::int64_t particles) {
  detail::check_fiber_args(ring_size, particles);
  FiberTable table(particles);
  detail::for_each_composition(ring_size, particles, [&](const std::vector<std::int64_t> &t) {
    std::int64_t w = 0;
    for (std::size_t b = 0; b < t.size(); ++b)
      w += static_cast<std::int64_t>(b + 1) * t[b];
    table.accumulate(-w);
  });
  return table;
}

/// Same table computed without touching compositions: |Delta_{N,r,s}| equals
/// the number of step sequences (r parts summing to N) whose integral is
/// r - s mod r, and those correspond to partitions in an (N - r) x (r - 1)
/// box with integral = r(r-1)/2 + N + weight.
inline FiberTable delta_fiber_sizes_chained(std::int64_t ring_size, std::int64_t particles) {
  detail::check_fiber_args(ring_size, particles);
  const std::int64_t r = particles;
  const auto by_weight = count_by_residue(ring_size - r, r - 1, r);
  const std::int64_t offset = r * (r - 1) / 2 + ring_size;
  FiberTable table(r);
  for (std::int64_t s = 0; s < r; ++s) {
    const std::int64_t integral_class = mod_floor(r - s, r);
    table[s] = by_weight[mod_floor(integral_class - offset, r)];
  }
  return table;
}

} // namespace qfiber
