#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcaerg/boundary_chain.hpp"
#include "pcaerg/errors.hpp"
#include "pcaerg/params.hpp"
#include "pcaerg/tolerance.hpp"

namespace pcaerg {

/// The favourable boundary state on side s: the one with the smaller chance
/// of being forgotten. Ties pick Zero.
template <typename Scalar>
BoundaryState3 favourable_state(const DerivedParams<Scalar>& d, Side s) {
  const int i = known_parent(s);
  return d.r_side(i, 0) <= d.r_side(i, 1) ? BoundaryState3::Zero : BoundaryState3::One;
}

/// One cell of the gamma table: which closed form applies, and which of the
/// three stationary-measure situations it belongs to.
///
///   case 1: the transitions (1-w) -> w and * -> w coincide;
///   case 2: the transitions w -> (1-w) and * -> (1-w) coincide;
///   case 3: Q1 >= Q0 and P0 >= P1, the full two-equation solve.
struct GammaCell {
  BoundaryState3 w = BoundaryState3::Zero;
  int stationary_case = 1;
  const char* name = "";
};

template <typename Scalar = double>
struct GammaValue {
  Scalar value = 0;
  GammaCell cell;
};

namespace detail {

template <typename Scalar>
struct GammaCandidate {
  GammaCell cell;
  Scalar numerator;
  Scalar denominator;
};

template <typename Scalar>
std::vector<GammaCandidate<Scalar>> applicable_gamma_cells(const DerivedParams<Scalar>& d, Side s) {
  const int i = known_parent(s);
  const Scalar Q0 = d.Q(i, 0), Q1 = d.Q(i, 1), P0 = d.P(i, 0), P1 = d.P(i, 1);
  const BoundaryState3 w = favourable_state(d, s);
  std::vector<GammaCandidate<Scalar>> out;
  if (w == BoundaryState3::Zero) {
    if (Q1 <= Q0) out.push_back({{w, 1, "r0<=r1 Q1<=Q0"}, Q1, 1 - (Q0 - Q1)});
    if (Q1 >= Q0 && P0 <= P1)
      out.push_back({{w, 2, "r0<=r1 Q1>=Q0 P0<=P1"}, Q1 * P0 + Q0 * (1 - P1), 1 - (P1 - P0)});
    if (Q1 >= Q0 && P0 >= P1)
      out.push_back({{w, 3, "r0<=r1 Q1>=Q0 P0>=P1"}, Q0 + P1 * (Q1 - Q0), 1 - (Q1 - Q0) * (P0 - P1)});
  } else {
    if (P0 <= P1) out.push_back({{w, 1, "r0>=r1 P0<=P1"}, P0, 1 - (P1 - P0)});
    if (P0 >= P1 && Q1 <= Q0)
      out.push_back({{w, 2, "r0>=r1 Q1<=Q0 P0>=P1"}, P0 * Q1 + P1 * (1 - Q0), 1 - (Q0 - Q1)});
    if (P0 >= P1 && Q1 >= Q0)
      out.push_back({{w, 3, "r0>=r1 Q1>=Q0 P0>=P1"}, P1 + Q0 * (P0 - P1), 1 - (Q1 - Q0) * (P0 - P1)});
  }
  return out;
}

template <typename Scalar>
bool degenerate(Scalar denominator) {
  return !(denominator > Scalar(8) * std::numeric_limits<Scalar>::epsilon());
}

}  // namespace detail

/// Closed-form stationary mass of the favourable state, with the table cell used.
///
/// On a case boundary every applicable cell is evaluated and must agree to
/// 1e-12; the first one is returned. Throws DegenerateDenominator when every
/// applicable cell has a vanishing denominator.
template <typename Scalar>
GammaValue<Scalar> gamma_cell(const DerivedParams<Scalar>& d, Side s) {
  const auto candidates = detail::applicable_gamma_cells(d, s);
  const GammaValue<Scalar>* first = nullptr;
  std::vector<GammaValue<Scalar>> values;
  for (const auto& c : candidates) {
    if (!detail::degenerate(c.denominator)) values.push_back({c.numerator / c.denominator, c.cell});
  }
  if (values.empty()) throw DegenerateDenominator(candidates.front().cell.name);
  first = &values.front();
  for (const auto& v : values) {
    if (std::abs(static_cast<double>(v.value - first->value)) > tol::kIdentity) {
      throw std::logic_error(std::string("gamma table cells disagree on a tie: ") + first->cell.name + " vs " +
                             v.cell.name);
    }
  }
  return *first;
}

template <typename Scalar>
Scalar gamma_table(const DerivedParams<Scalar>& d, Side s) {
  return gamma_cell(d, s).value;
}

}  // namespace pcaerg
