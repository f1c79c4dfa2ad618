#pragma once

#include <cstdint>
#include <string>

#include "pcaerg/boundary_chain.hpp"
#include "pcaerg/errors.hpp"
#include "pcaerg/geometric_law.hpp"
#include "pcaerg/params.hpp"
#include "pcaerg/stats.hpp"

// Size-two boundary analysis of CA 1000 with error eps in (0, 1/2).
//
// Without errors the boundary cells of a CA 1000 island alternate with period
// two, so the outer position j oscillates. Shifting j by an offset that
// depends on the two outermost cells (the "tilde" position) removes the
// oscillation; its increments then have the laws built below.

namespace pcaerg {

/// Exact multiple of one half.
struct HalfInt {
  std::int64_t doubled = 0;

  static constexpr HalfInt halves(std::int64_t n) { return HalfInt{n}; }
  static constexpr HalfInt whole(std::int64_t n) { return HalfInt{2 * n}; }

  constexpr double value() const { return static_cast<double>(doubled) / 2.0; }

  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return {a.doubled + b.doubled}; }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return {a.doubled - b.doubled}; }
  friend constexpr HalfInt operator-(HalfInt a) { return {-a.doubled}; }
  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

  std::string str() const;
};

template <>
struct DeltaTraits<HalfInt> {
  static double value(HalfInt d) { return d.value(); }
  static HalfInt advance(HalfInt d, std::int64_t k) { return d + HalfInt::whole(k); }
};

/// Two outermost island cells, ordered outward: (inner, outer).
struct PairState {
  BoundaryState3 inner = BoundaryState3::Zero;
  BoundaryState3 outer = BoundaryState3::Zero;

  friend constexpr bool operator==(PairState, PairState) = default;
  std::string str() const;
};

constexpr PairState pair(int inner, int outer) {
  auto st = [](int v) { return v == 0 ? BoundaryState3::Zero : v == 1 ? BoundaryState3::One : BoundaryState3::Star; };
  return {st(inner), st(outer)};
}
// Shorthand for the star component in pair(): pair(kStarBit, 0) is (*,0).
inline constexpr int kStarBit = 2;

/// Which refined law governs a pair state.
enum class PairClass {
  S1,          // (0,1), (1,1), (*,1), (1,0)
  DoubleZero,  // (0,0)
  StarZero,    // (*,0)
  Other,       // never reached from {0,1}^2 starts
};

PairClass classify(PairState s);

/// Offset added to the outer position to obtain the tilde position.
/// Right: 0 for (0,1),(1,1),(*,1); -1/2 for (0,0); -1 otherwise. Left: negated.
HalfInt tilde_offset(PairState s, Side side);

struct RefinedLaw : GeometricLaw<HalfInt, PairState> {
  Side side = Side::RightBoundary;
  PairClass from_class = PairClass::S1;
};

/// Right tilde-boundary law from any state of S1 (12 scenarios, ratio 2 eps).
RefinedLaw refined_law_s1(double eps);
/// Right tilde-boundary law from (0,0) (14 scenarios, ratio 2 eps).
RefinedLaw refined_law_00(double eps);

/// Left-boundary law obtained by reflection: delta -> -delta - 1, pair states
/// kept in outward order.
RefinedLaw mirror_to_left(const RefinedLaw& right);

namespace detail {
template <typename Scalar>
void require_open_eps(Scalar eps) {
  if (!(eps > Scalar(0) && eps < Scalar(0.5))) {
    throw InvalidInput("refined analysis needs eps in (0, 1/2): " + std::to_string(static_cast<double>(eps)));
  }
}
}  // namespace detail

/// -1/2 + 5e/2 + 7e^2/2 + 8e^3/(1-2e)
template <typename Scalar>
Scalar mean_s1(Scalar eps) {
  detail::require_open_eps(eps);
  return Scalar(-0.5) + 5 * eps / 2 + 7 * eps * eps / 2 + 8 * eps * eps * eps / (1 - 2 * eps);
}

/// -1/2 + 15e^2/2 + 6e^3 + 16e^4/(1-2e)
template <typename Scalar>
Scalar mean_00(Scalar eps) {
  detail::require_open_eps(eps);
  const Scalar e2 = eps * eps;
  return Scalar(-0.5) + 15 * e2 / 2 + 6 * e2 * eps + 16 * e2 * e2 / (1 - 2 * eps);
}

/// Lower bound on the tilde island-size drift: 15e^2 + 12e^3 + 32e^4/(1-2e).
template <typename Scalar>
Scalar refined_drift_bound(Scalar eps) {
  detail::require_open_eps(eps);
  const Scalar e2 = eps * eps;
  return 15 * e2 + 12 * e2 * eps + 32 * e2 * e2 / (1 - 2 * eps);
}

/// Same bound for CA 1110, whose dynamics are CA 1000's with 0 and 1 exchanged.
double drift_for_1110(double eps);

/// Right tilde-boundary chain started in (0,0): S1 states use the S1 law,
/// (0,0) and (*,0) use the (0,0) law. Throws std::logic_error if a pair state
/// outside those classes is ever produced.
DriftEstimate simulate_refined(double eps, std::uint64_t steps, std::uint64_t burn_in, std::uint64_t seed);

}  // namespace pcaerg
