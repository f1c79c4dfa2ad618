#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "pcaerg/rng.hpp"

namespace pcaerg {

/// Displacement arithmetic used by GeometricLaw. Specialised for int64 and HalfInt.
template <typename Delta>
struct DeltaTraits;

template <>
struct DeltaTraits<std::int64_t> {
  static double value(std::int64_t d) { return static_cast<double>(d); }
  static std::int64_t advance(std::int64_t d, std::int64_t k) { return d + k; }
};

/// Law of a (displacement, next state) pair: a finite head of atoms plus
/// geometric families P(delta = start + direction * k, state) = weight * ratio^k,
/// k >= 0, all sharing one ratio in [0, 1) and one direction (+1 or -1).
template <typename Delta, typename State>
struct GeometricLaw {
  struct Atom {
    Delta delta;
    State to;
    double prob;
  };
  struct TailFamily {
    Delta start;
    State to;
    double weight;
  };

  std::vector<Atom> head;
  std::vector<TailFamily> tail;
  double ratio = 0.0;
  int direction = 1;

  double head_mass() const {
    double m = 0.0;
    for (const auto& a : head) m += a.prob;
    return m;
  }

  double family_mass(const TailFamily& f) const { return f.weight / (1.0 - ratio); }

  double total_mass() const {
    double m = head_mass();
    for (const auto& f : tail) m += family_mass(f);
    return m;
  }

  /// Closed-form mean displacement: w (start/(1-rho) + direction rho/(1-rho)^2) per family.
  double expectation() const {
    using T = DeltaTraits<Delta>;
    double e = 0.0;
    for (const auto& a : head) e += T::value(a.delta) * a.prob;
    const double one_minus = 1.0 - ratio;
    for (const auto& f : tail) {
      e += f.weight * (T::value(f.start) / one_minus + direction * ratio / (one_minus * one_minus));
    }
    return e;
  }

  /// Probability of moving to `s`, displacement marginalised out.
  double state_mass(const State& s) const {
    double m = 0.0;
    for (const auto& a : head)
      if (a.to == s) m += a.prob;
    for (const auto& f : tail)
      if (f.to == s) m += family_mass(f);
    return m;
  }

  /// Exact draw: head atoms and tail families by cumulative lookup, then the
  /// family index k by inverse transform of the geometric law.
  std::pair<Delta, State> sample(Rng& rng) const {
    using T = DeltaTraits<Delta>;
    double u = rng.uniform() * total_mass();
    for (const auto& a : head) {
      if (u < a.prob) return {a.delta, a.to};
      u -= a.prob;
    }
    const TailFamily* chosen = nullptr;
    for (const auto& f : tail) {
      chosen = &f;
      const double m = family_mass(f);
      if (u < m) break;
      u -= m;
    }
    if (chosen == nullptr) return {head.back().delta, head.back().to};
    std::int64_t k = 0;
    if (ratio > 0.0) k = static_cast<std::int64_t>(std::floor(std::log(rng.open_uniform()) / std::log(ratio)));
    return {T::advance(chosen->start, direction * k), chosen->to};
  }
};

}  // namespace pcaerg
