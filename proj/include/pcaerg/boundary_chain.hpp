#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstdint>

#include "pcaerg/errors.hpp"
#include "pcaerg/params.hpp"

namespace pcaerg {

/// State of the outermost island cell. Star means "known to be decorrelated,
/// value forgotten"; it is not the envelope's unknown symbol.
enum class BoundaryState3 : std::uint8_t { Zero = 0, One = 1, Star = 2 };

inline constexpr std::array<BoundaryState3, 3> kBoundaryStates = {
    BoundaryState3::Zero, BoundaryState3::One, BoundaryState3::Star};

constexpr int index(BoundaryState3 s) { return static_cast<int>(s); }
constexpr BoundaryState3 bit_state(int bit) { return bit ? BoundaryState3::One : BoundaryState3::Zero; }

constexpr char to_char(BoundaryState3 s) {
  switch (s) {
    case BoundaryState3::Zero: return '0';
    case BoundaryState3::One: return '1';
    case BoundaryState3::Star: return '*';
  }
  return '?';
}

/// Markov chain of one boundary's state, row-stochastic over (Zero, One, Star).
template <typename Scalar = double>
struct BoundaryChain {
  using Matrix = Eigen::Matrix<Scalar, 3, 3>;

  Side side = Side::RightBoundary;
  Matrix rows = Matrix::Zero();

  Scalar operator()(BoundaryState3 from, BoundaryState3 to) const { return rows(index(from), index(to)); }
};

template <typename Scalar>
BoundaryChain<Scalar> boundary_chain(const DerivedParams<Scalar>& d, Side s) {
  const int i = known_parent(s);
  BoundaryChain<Scalar> chain;
  chain.side = s;
  for (int x = 0; x < 2; ++x) chain.rows.row(x) << d.Q(i, x), d.P(i, x), d.R(x);
  chain.rows.row(2) << d.Q_star(i), d.P_star(i), d.R_star(i);
  return chain;
}

/// Stationary mass per boundary state.
template <typename Scalar = double>
struct StationaryDist {
  Eigen::Matrix<Scalar, 3, 1> mass = Eigen::Matrix<Scalar, 3, 1>::Zero();

  Scalar operator()(BoundaryState3 s) const { return mass(index(s)); }
};

inline constexpr double kPowerIterationTolerance = 1e-13;
inline constexpr long kPowerIterationCap = 1'000'000;

/// Distribution reached by iterating the chain from the point mass on `start`.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Derived::RowsAtCompileTime, 1> power_iterate(
    const Eigen::MatrixBase<Derived>& transition, Eigen::Index start) {
  using Scalar = typename Derived::Scalar;
  using Row = Eigen::Matrix<Scalar, 1, Derived::ColsAtCompileTime>;
  Row v = Row::Zero(transition.cols());
  v(start) = 1;
  for (long it = 0; it < kPowerIterationCap; ++it) {
    Row next = v * transition;
    if ((next - v).cwiseAbs().sum() < Scalar(kPowerIterationTolerance)) return next.transpose();
    v = next;
  }
  throw ConvergenceError("power iteration did not converge within the iteration cap");
}

/// Stationary distribution of a row-stochastic matrix.
///
/// A unique stationary law is found by a direct solve of nu (M - I) = 0 with
/// sum(nu) = 1. When the solve is singular (several closed classes), the limit
/// reached from `start` is returned instead.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Derived::RowsAtCompileTime, 1> stationary_solve(
    const Eigen::MatrixBase<Derived>& transition, Eigen::Index start) {
  using Scalar = typename Derived::Scalar;
  using Square = Eigen::Matrix<Scalar, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime>;
  using Vec = Eigen::Matrix<Scalar, Derived::RowsAtCompileTime, 1>;
  const Eigen::Index n = transition.rows();

  Square system = transition.transpose() - Square::Identity(n, n);
  system.row(n - 1).setOnes();
  Vec rhs = Vec::Zero(n);
  rhs(n - 1) = 1;

  Eigen::FullPivLU<Square> lu(system);
  Vec nu;
  if (lu.isInvertible()) {
    nu = lu.solve(rhs);
  } else {
    nu = power_iterate(transition, start);
  }
  nu = nu.cwiseMax(Scalar(0)).cwiseMin(Scalar(1));
  return nu / nu.sum();
}

/// Stationary law of a boundary chain; reducible chains start from Star,
/// matching an envelope that begins with every cell unknown.
template <typename Scalar>
StationaryDist<Scalar> stationary_solve(const BoundaryChain<Scalar>& chain) {
  StationaryDist<Scalar> dist;
  dist.mass = stationary_solve(chain.rows, index(BoundaryState3::Star));
  return dist;
}

}  // namespace pcaerg
