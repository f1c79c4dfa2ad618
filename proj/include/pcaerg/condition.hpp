#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "pcaerg/boundary_chain.hpp"
#include "pcaerg/errors.hpp"
#include "pcaerg/gamma.hpp"
#include "pcaerg/params.hpp"

namespace pcaerg {

namespace detail {
template <typename Scalar>
void require_positive_r(const DerivedParams<Scalar>& d, const char* what) {
  if (!(d.r > Scalar(0))) throw DivisionByZero(std::string(what) + " requires r > 0");
}
}  // namespace detail

/// Expected one-step displacement of a boundary in state y.
///
/// Right: -1 + (1 - r_side(0,y)) / r. Left: -(1 - r_side(1,y)) / r; the left
/// boundary cannot move right, hence the offset of one between the two.
/// For Star the less favourable of the two known states is returned (min on
/// the right, max on the left).
template <typename Scalar>
Scalar mean_increment(const DerivedParams<Scalar>& d, Side s, BoundaryState3 y) {
  detail::require_positive_r(d, "mean_increment");
  const int i = known_parent(s);
  auto known = [&](int x) {
    return s == Side::RightBoundary ? Scalar(-1) + (1 - d.r_side(i, x)) / d.r : -(1 - d.r_side(i, x)) / d.r;
  };
  if (y != BoundaryState3::Star) return known(index(y));
  return s == Side::RightBoundary ? std::min(known(0), known(1)) : std::max(known(0), known(1));
}

/// The (min r) + (1 - gamma)|delta r| term of one side.
template <typename Scalar>
Scalar forgetting_term(const DerivedParams<Scalar>& d, Side s, Scalar gamma) {
  const int i = known_parent(s);
  const Scalar r0 = d.r_side(i, 0), r1 = d.r_side(i, 1);
  return std::min(r0, r1) + (1 - gamma) * std::abs(r0 - r1);
}

/// Lower bound (right) or upper bound (left) on the long-run mean increment.
template <typename Scalar>
Scalar asymptotic_increment_bound(const DerivedParams<Scalar>& d, Side s) {
  detail::require_positive_r(d, "asymptotic_increment_bound");
  const Scalar term = forgetting_term(d, s, gamma_table(d, s));
  if (s == Side::RightBoundary) return Scalar(-1) + 1 / d.r - term / d.r;
  return -1 / d.r + term / d.r;
}

template <typename Scalar = double>
struct ConditionReport {
  Scalar gamma0 = 0, gamma1 = 0;
  Scalar lhs = 0, rhs = 0;
  bool holds = false;
  BoundaryState3 w0 = BoundaryState3::Zero, w1 = BoundaryState3::Zero;
  // (lhs - rhs) / r, a lower bound on the island-size drift; +inf when r = 0.
  Scalar drift_bound = 0;

  Scalar margin() const { return lhs - rhs; }
};

/// Evaluates the ergodicity criterion 2 - r > sum over both sides of
/// min(r0, r1) + (1 - gamma)|r0 - r1|.
///
/// The criterion has no division, so r = 0 is evaluated directly (every
/// r_side entry vanishes and the criterion reads 2 > 0).
template <typename Scalar>
ConditionReport<Scalar> condition_check(const DerivedParams<Scalar>& d) {
  ConditionReport<Scalar> rep;
  rep.gamma0 = gamma_table(d, Side::RightBoundary);
  rep.gamma1 = gamma_table(d, Side::LeftBoundary);
  rep.w0 = favourable_state(d, Side::RightBoundary);
  rep.w1 = favourable_state(d, Side::LeftBoundary);
  rep.lhs = 2 - d.r;
  rep.rhs = forgetting_term(d, Side::RightBoundary, rep.gamma0) + forgetting_term(d, Side::LeftBoundary, rep.gamma1);
  rep.holds = rep.lhs > rep.rhs;
  rep.drift_bound = d.r > Scalar(0) ? (rep.lhs - rep.rhs) / d.r : std::numeric_limits<Scalar>::infinity();
  return rep;
}

template <typename Scalar>
ConditionReport<Scalar> condition_check(const ParamQuad<Scalar>& q) {
  return condition_check(derive(q));
}

}  // namespace pcaerg
