#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include "qfiber/common.hpp"
#include "qfiber/partitions.hpp"

namespace qfiber {

/// Lengths (n_1, ..., n_l) of the level intervals of a non-increasing
/// surjection [0, D] -> {1, ..., l}: the function equals l on the first n_1
/// units, l - 1 on the next n_2, and so on. Every n_i >= 1 and they sum to D.
class StepSequence {
public:
  explicit StepSequence(std::vector<std::int64_t> steps) : steps_(std::move(steps)) {
    if (steps_.empty())
      throw std::invalid_argument("StepSequence: at least one step required");
    for (auto n : steps_)
      if (n < 1)
        throw std::invalid_argument("StepSequence: steps must be positive");
  }

  std::span<const std::int64_t> steps() const noexcept { return steps_; }
  const std::vector<std::int64_t> &vector() const noexcept { return steps_; }

  /// Number of levels l.
  std::int64_t levels() const noexcept { return static_cast<std::int64_t>(steps_.size()); }

  std::int64_t domain_length() const noexcept {
    return std::accumulate(steps_.begin(), steps_.end(), std::int64_t{0});
  }

  /// 1-based access matching n_1..n_l.
  std::int64_t step(std::int64_t i) const { return steps_.at(static_cast<std::size_t>(i - 1)); }

  auto operator<=>(const StepSequence &) const = default;

private:
  std::vector<std::int64_t> steps_;
};

/// Breakpoints 0 < t_l < ... < t_2 < D of a non-increasing surjection,
/// stored in increasing order (t_l first). t_1 = D is implicit.
class ThresholdSequence {
public:
  ThresholdSequence(std::vector<std::int64_t> thresholds, std::int64_t domain_length)
      : thresholds_(std::move(thresholds)), domain_length_(domain_length) {
    std::int64_t last = 0;
    for (auto t : thresholds_) {
      if (t <= last)
        throw std::invalid_argument("ThresholdSequence: thresholds must be positive and strictly increasing");
      last = t;
    }
    if (last >= domain_length_)
      throw std::invalid_argument("ThresholdSequence: thresholds must be below the domain length");
  }

  std::span<const std::int64_t> thresholds() const noexcept { return thresholds_; }
  std::int64_t domain_length() const noexcept { return domain_length_; }
  std::int64_t levels() const noexcept { return static_cast<std::int64_t>(thresholds_.size()) + 1; }

  /// t_i for i in 1..l, with t_1 = D.
  std::int64_t t(std::int64_t i) const {
    if (i == 1)
      return domain_length_;
    return thresholds_.at(static_cast<std::size_t>(levels() - i));
  }

  auto operator<=>(const ThresholdSequence &) const = default;

private:
  std::vector<std::int64_t> thresholds_;
  std::int64_t domain_length_;
};

inline StepSequence thresholds_to_steps(const ThresholdSequence &t) {
  std::vector<std::int64_t> steps;
  steps.reserve(static_cast<std::size_t>(t.levels()));
  std::int64_t prev = 0;
  for (auto v : t.thresholds()) {
    steps.push_back(v - prev);
    prev = v;
  }
  steps.push_back(t.domain_length() - prev);
  return StepSequence(std::move(steps));
}

inline ThresholdSequence steps_to_thresholds(const StepSequence &s) {
  std::vector<std::int64_t> thresholds;
  thresholds.reserve(static_cast<std::size_t>(s.levels() - 1));
  std::int64_t acc = 0;
  for (std::size_t i = 0; i + 1 < s.vector().size(); ++i) {
    acc += s.vector()[i];
    thresholds.push_back(acc);
  }
  return ThresholdSequence(std::move(thresholds), s.domain_length());
}

/// Area under the step function: sum of n_i * (l + 1 - i).
inline std::int64_t integral(const StepSequence &s) {
  const std::int64_t l = s.levels();
  std::int64_t area = 0;
  for (std::int64_t i = 1; i <= l; ++i)
    area += s.step(i) * (l + 1 - i);
  return area;
}

/// Surjection on [0, k + l] with l levels -> partition in a k x (l - 1) box:
/// pi_j = t_{j+1} - (l - j).
inline Partition surjection_to_partition(const ThresholdSequence &t) {
  const std::int64_t l = t.levels();
  std::vector<std::int64_t> parts;
  parts.reserve(static_cast<std::size_t>(l - 1));
  for (std::int64_t j = 1; j <= l - 1; ++j)
    parts.push_back(t.t(j + 1) - (l - j));
  return Partition(std::move(parts));
}

inline Partition surjection_to_partition(const StepSequence &s) {
  return surjection_to_partition(steps_to_thresholds(s));
}

/// Inverse of surjection_to_partition for the k x (l - 1) box.
inline ThresholdSequence partition_to_surjection(const Partition &pi, std::int64_t k,
                                                 std::int64_t l) {
  if (k < 0 || l < 1)
    throw std::invalid_argument("partition_to_surjection: need k >= 0 and l >= 1");
  if (!pi.fits({k, l - 1}))
    throw std::invalid_argument("partition_to_surjection: partition does not fit the k x (l-1) box");
  std::vector<std::int64_t> thresholds(static_cast<std::size_t>(l - 1));
  // thresholds[idx] = t_{l - idx}; t_{j+1} = pi_j + (l - j).
  for (std::int64_t j = 1; j <= l - 1; ++j)
    thresholds[static_cast<std::size_t>(l - j - 1)] = pi.part(j - 1) + (l - j);
  return ThresholdSequence(std::move(thresholds), k + l);
}

/// Rotation by the generator C of Z/lZ: C.(n_1, ..., n_l) = (n_l, n_1, ..., n_{l-1}),
/// applied `power` times (negative powers rotate the other way).
inline StepSequence act_cyclic(const StepSequence &s, std::int64_t power) {
  auto steps = s.vector();
  const std::int64_t l = s.levels();
  const auto shift = static_cast<std::ptrdiff_t>(mod_floor(power, l));
  std::rotate(steps.begin(), steps.end() - shift, steps.end());
  return StepSequence(std::move(steps));
}

namespace detail {
/// Inverse of u modulo l via extended Euclid; requires gcd(u, l) = 1.
inline std::int64_t inverse_mod(std::int64_t u, std::int64_t l) {
  std::int64_t a = mod_floor(u, l), b = l, x0 = 1, x1 = 0;
  while (b != 0) {
    std::int64_t q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
  }
  if (a != 1 && l != 1)
    throw std::invalid_argument("inverse_mod: not a unit");
  return mod_floor(x0, l);
}
} // namespace detail

/// Unit u of Z/lZ acting by u.(n_1, ..., n_l) = (n_{u^-1 * 1}, ..., n_{u^-1 * l}).
/// Indices are reduced into {1, ..., l}, with l standing for 0.
inline StepSequence act_unit(const StepSequence &s, std::int64_t u) {
  const std::int64_t l = s.levels();
  if (std::gcd(mod_floor(u, l), l) != 1)
    throw std::invalid_argument("act_unit: u is not a unit modulo l");
  const std::int64_t inv = detail::inverse_mod(u, l);
  std::vector<std::int64_t> out(static_cast<std::size_t>(l));
  for (std::int64_t i = 1; i <= l; ++i) {
    std::int64_t src = mod_floor(inv * i, l);
    if (src == 0)
      src = l;
    out[static_cast<std::size_t>(i - 1)] = s.step(src);
  }
  return StepSequence(std::move(out));
}

/// Permutation of {0, ..., l-1} stored as its image list.
class Permutation {
public:
  explicit Permutation(std::vector<std::int64_t> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (auto v : images_) {
      if (v < 0 || v >= static_cast<std::int64_t>(images_.size()) ||
          seen[static_cast<std::size_t>(v)])
        throw std::invalid_argument("Permutation: images must be a rearrangement of 0..l-1");
      seen[static_cast<std::size_t>(v)] = true;
    }
  }

  static Permutation identity(std::int64_t l) {
    std::vector<std::int64_t> images(static_cast<std::size_t>(l));
    std::iota(images.begin(), images.end(), std::int64_t{0});
    return Permutation(std::move(images));
  }

  std::int64_t size() const noexcept { return static_cast<std::int64_t>(images_.size()); }
  std::int64_t operator()(std::int64_t i) const { return images_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::int64_t> &images() const noexcept { return images_; }

  /// (*this o other)(i) = (*this)(other(i)).
  Permutation compose(const Permutation &other) const {
    if (other.size() != size())
      throw std::invalid_argument("Permutation::compose: size mismatch");
    std::vector<std::int64_t> images(images_.size());
    for (std::size_t i = 0; i < images.size(); ++i)
      images[i] = (*this)(other(static_cast<std::int64_t>(i)));
    return Permutation(std::move(images));
  }

  bool operator==(const Permutation &) const = default;

private:
  std::vector<std::int64_t> images_;
};

/// Position i receives n_{sigma(i)}. This is a right action:
/// act_symmetric(act_symmetric(s, tau), sigma) == act_symmetric(s, tau.compose(sigma)).
inline StepSequence act_symmetric(const StepSequence &s, const Permutation &sigma) {
  if (sigma.size() != s.levels())
    throw std::invalid_argument("act_symmetric: permutation size differs from l");
  std::vector<std::int64_t> out(s.vector().size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = s.vector()[static_cast<std::size_t>(sigma(static_cast<std::int64_t>(i)))];
  return StepSequence(std::move(out));
}

struct CyclicShift {
  std::int64_t power = 1;
};
struct UnitScale {
  std::int64_t unit = 1;
};

using GroupElement = std::variant<CyclicShift, UnitScale, Permutation>;

inline StepSequence act(const StepSequence &s, const GroupElement &g) {
  return std::visit(
      [&](const auto &e) -> StepSequence {
        using E = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<E, CyclicShift>)
          return act_cyclic(s, e.power);
        else if constexpr (std::is_same_v<E, UnitScale>)
          return act_unit(s, e.unit);
        else
          return act_symmetric(s, e);
      },
      g);
}

/// Transports a step-sequence action to partitions in the k x (l - 1) box.
inline Partition act_on_partition(const Partition &pi, const GroupElement &g,
                                  std::int64_t k, std::int64_t l) {
  const auto steps = thresholds_to_steps(partition_to_surjection(pi, k, l));
  return surjection_to_partition(act(steps, g));
}

enum class GroupKind { cyclic, units, symmetric };

inline std::string_view to_string(GroupKind g) {
  switch (g) {
  case GroupKind::cyclic:
    return "cyclic";
  case GroupKind::units:
    return "units";
  case GroupKind::symmetric:
    return "symmetric";
  }
  return "?";
}

inline GroupKind parse_group_kind(std::string_view name) {
  if (name == "cyclic")
    return GroupKind::cyclic;
  if (name == "units")
    return GroupKind::units;
  if (name == "symmetric")
    return GroupKind::symmetric;
  throw std::invalid_argument("unknown group '" + std::string(name) + "'");
}

/// Order of the acting group on sequences of length l.
inline BigInt group_order(GroupKind g, std::int64_t l) {
  switch (g) {
  case GroupKind::cyclic:
    return l;
  case GroupKind::units: {
    std::int64_t phi = 0;
    for (std::int64_t u = 1; u <= l; ++u)
      phi += std::gcd(u, l) == 1;
    return phi;
  }
  case GroupKind::symmetric: {
    BigInt f = 1;
    for (std::int64_t i = 2; i <= l; ++i)
      f *= i;
    return f;
  }
  }
  return 1;
}

struct Orbit {
  std::vector<StepSequence> elements; // sorted ascending
  GroupKind group;
};

/// Every step sequence of l positive parts summing to k + l, in lex order.
template <typename Fn>
void for_each_step_sequence(std::int64_t k, std::int64_t l, Fn &&fn) {
  detail::for_each_composition(k + l, l, [&](const std::vector<std::int64_t> &c) {
    fn(StepSequence(c));
  });
}

namespace detail {

/// Generators whose orbits coincide with the group's orbits.
inline std::vector<GroupElement> orbit_generators(GroupKind g, std::int64_t l) {
  std::vector<GroupElement> gens;
  switch (g) {
  case GroupKind::cyclic:
    gens.emplace_back(CyclicShift{1});
    break;
  case GroupKind::units:
    for (std::int64_t u = 1; u <= l; ++u)
      if (std::gcd(u, l) == 1 && mod_floor(u, l) != mod_floor(1, l))
        gens.emplace_back(UnitScale{u});
    break;
  case GroupKind::symmetric:
    for (std::int64_t i = 0; i + 1 < l; ++i) {
      auto p = Permutation::identity(l).images();
      std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(i + 1)]);
      gens.emplace_back(Permutation(std::move(p)));
    }
    break;
  }
  return gens;
}

/// Saturating table of C(n, j) for n < rows, j < cols.
inline std::vector<std::vector<std::uint64_t>> small_binomials(std::int64_t rows,
                                                               std::int64_t cols) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::vector<std::uint64_t>> c(static_cast<std::size_t>(rows),
                                            std::vector<std::uint64_t>(static_cast<std::size_t>(cols), 0));
  for (std::size_t n = 0; n < c.size(); ++n) {
    c[n][0] = 1;
    for (std::size_t j = 1; j < c[n].size() && j <= n; ++j) {
      const std::uint64_t a = c[n - 1][j - 1], b = c[n - 1][j];
      c[n][j] = a > kMax - b ? kMax : a + b;
    }
  }
  return c;
}

/// Colex rank of a composition via its partial-sum subset of {1, ..., D-1}.
/// Every term is bounded by the rank itself, so saturated entries never
/// contribute.
inline std::uint64_t composition_rank(const std::vector<std::int64_t> &steps,
                                      const std::vector<std::vector<std::uint64_t>> &binom) {
  std::uint64_t rank = 0;
  std::int64_t acc = 0;
  for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
    acc += steps[i];
    rank += binom[static_cast<std::size_t>(acc - 1)][i + 1];
  }
  return rank;
}

template <typename Fn>
void for_each_orbit(std::int64_t k, std::int64_t l, GroupKind group, std::uint64_t cap,
                    Fn &&on_orbit) {
  if (k < 0 || l < 1)
    throw std::invalid_argument("orbits: need k >= 0 and l >= 1");
  const BigInt count = binomial(k + l - 1, l - 1);
  if (count > cap)
    throw EnumerationCapExceeded(count, cap);
  const auto gens = orbit_generators(group, l);
  const auto binom = small_binomials(k + l, l + 1);
  std::vector<bool> visited(static_cast<std::size_t>(count), false);
  for_each_step_sequence(k, l, [&](const StepSequence &seed) {
    const auto seed_rank = composition_rank(seed.vector(), binom);
    if (visited[seed_rank])
      return;
    visited[seed_rank] = true;
    std::vector<StepSequence> members{seed};
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (const auto &g : gens) {
        auto next = act(members[head], g);
        const auto r = composition_rank(next.vector(), binom);
        if (!visited[r]) {
          visited[r] = true;
          members.push_back(std::move(next));
        }
      }
    }
    std::sort(members.begin(), members.end());
    on_orbit(Orbit{std::move(members), group});
  });
}

} // namespace detail

/// Orbits of the chosen group on all step sequences with l parts summing to
/// k + l. Orbits come out ordered by their least element; elements within an
/// orbit are sorted. Throws EnumerationCapExceeded if C(k + l - 1, l - 1) > cap.
inline std::vector<Orbit> orbits(std::int64_t k, std::int64_t l, GroupKind group,
                                 std::uint64_t cap = kDefaultEnumerationCap) {
  std::vector<Orbit> out;
  detail::for_each_orbit(k, l, group, cap, [&](Orbit o) { out.push_back(std::move(o)); });
  return out;
}

/// Orbit size -> number of orbits of that size.
inline std::map<std::int64_t, std::int64_t>
orbit_size_histogram(std::int64_t k, std::int64_t l, GroupKind group,
                     std::uint64_t cap = kDefaultEnumerationCap) {
  std::map<std::int64_t, std::int64_t> hist;
  detail::for_each_orbit(k, l, group, cap, [&](const Orbit &o) {
    ++hist[static_cast<std::int64_t>(o.elements.size())];
  });
  return hist;
}

} // namespace qfiber
