#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>

#include "pcaerg/errors.hpp"

namespace pcaerg {

/// A real number in [0, 1]; the range is checked on construction.
template <typename Scalar = double>
class Probability {
 public:
  constexpr Probability() = default;
  explicit Probability(Scalar value) : value_(value) {
    if (!(value >= Scalar(0) && value <= Scalar(1))) {
      throw InvalidInput("probability out of [0,1]: " + std::to_string(static_cast<double>(value)));
    }
  }

  constexpr Scalar value() const noexcept { return value_; }
  constexpr operator Scalar() const noexcept { return value_; }

 private:
  Scalar value_ = 0;
};

/// PCA parameter (p00, p01, p10, p11): probability that a cell becomes 1
/// given its (left, right) parents, i.e. the cell itself and its right neighbour.
template <typename Scalar = double>
class ParamQuad {
 public:
  using Table = Eigen::Matrix<Scalar, 2, 2>;

  ParamQuad() : table_(Table::Zero()) {}
  ParamQuad(Scalar p00, Scalar p01, Scalar p10, Scalar p11) {
    table_ << Probability<Scalar>(p00), Probability<Scalar>(p01), Probability<Scalar>(p10),
        Probability<Scalar>(p11);
  }
  explicit ParamQuad(const Table& table)
      : ParamQuad(table(0, 0), table(0, 1), table(1, 0), table(1, 1)) {}

  /// p_{left,right}
  Scalar operator()(int left, int right) const { return table_(left, right); }
  const Table& table() const noexcept { return table_; }

  bool positive_rates() const {
    return (table_.array() > Scalar(0)).all() && (table_.array() < Scalar(1)).all();
  }

  friend bool operator==(const ParamQuad& a, const ParamQuad& b) { return a.table_ == b.table_; }

  template <typename Other>
  ParamQuad<Other> cast() const {
    return ParamQuad<Other>(table_.template cast<Other>());
  }

 private:
  Table table_;
};

/// Deterministic rule given by the concatenated word p00 p01 p10 p11.
class CaCode {
 public:
  constexpr CaCode() = default;
  explicit constexpr CaCode(std::uint8_t bits) : bits_(bits & 0xF) {}

  static CaCode parse(std::string_view word) {
    if (word.size() != 4) throw InvalidInput("CA code must have 4 binary digits: " + std::string(word));
    std::uint8_t bits = 0;
    for (char c : word) {
      if (c != '0' && c != '1') throw InvalidInput("CA code must be binary: " + std::string(word));
      bits = static_cast<std::uint8_t>((bits << 1) | (c == '1'));
    }
    return CaCode(bits);
  }

  /// Output bit for parents (left, right).
  constexpr bool bit(int left, int right) const { return (bits_ >> (3 - (2 * left + right))) & 1; }
  constexpr std::uint8_t bits() const { return bits_; }

  std::string str() const {
    std::string s(4, '0');
    for (int k = 0; k < 4; ++k) s[k] = ((bits_ >> (3 - k)) & 1) ? '1' : '0';
    return s;
  }

  friend constexpr bool operator==(CaCode, CaCode) = default;

 private:
  std::uint8_t bits_ = 0;
};

/// CA `code` with each output flipped independently with probability eps.
template <typename Scalar = double>
ParamQuad<Scalar> ca_with_error(CaCode code, Scalar eps) {
  if (!(eps >= Scalar(0) && eps <= Scalar(0.5))) {
    throw InvalidInput("error rate must lie in [0, 1/2]: " + std::to_string(static_cast<double>(eps)));
  }
  auto entry = [&](int a, int b) { return code.bit(a, b) ? Scalar(1) - eps : eps; };
  return {entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1)};
}

/// Parameter of the PCA conjugated by the global bit flip 0 <-> 1.
template <typename Scalar>
ParamQuad<Scalar> flip_conjugate(const ParamQuad<Scalar>& q) {
  return {1 - q(1, 1), 1 - q(1, 0), 1 - q(0, 1), 1 - q(0, 0)};
}

/// Parameter of the PCA observed in a mirror: p01 and p10 exchange roles.
template <typename Scalar>
ParamQuad<Scalar> mirror(const ParamQuad<Scalar>& q) {
  return {q(0, 0), q(1, 0), q(0, 1), q(1, 1)};
}

/// Which island boundary a quantity refers to.
///
/// The right boundary's outer cell updates with its left parent known and its
/// right parent unknown, so it reads the superscript-0 quantities. The left
/// boundary reads superscript 1 (right parent known).
enum class Side { RightBoundary, LeftBoundary };

constexpr int known_parent(Side s) { return s == Side::RightBoundary ? 0 : 1; }
constexpr Side other(Side s) { return s == Side::RightBoundary ? Side::LeftBoundary : Side::RightBoundary; }

/// Every quantity derived from a parameter quadruplet.
///
/// Per-side entries are indexed (i, x): i = 0 when the left parent is known and
/// equal to x, i = 1 when the right parent is. p_side is the smallest chance of
/// producing a 1, q_side the smallest chance of a 0, r_side what is left over.
template <typename Scalar = double>
struct DerivedParams {
  using Mat2 = Eigen::Matrix<Scalar, 2, 2>;
  using Vec2 = Eigen::Matrix<Scalar, 2, 1>;

  ParamQuad<Scalar> params;
  Mat2 p_side, q_side, r_side;
  Scalar p = 0, q = 0, r = 0;
  // Boundary chain entries from a known state x: P(i, x) to One, Q(i, x) to Zero.
  Mat2 P, Q;
  // R(x) = r_side(0, x) * r_side(1, x), the chance of forgetting the state.
  Vec2 R;
  // Row of the boundary chain leaving the forgotten state, per side.
  Vec2 P_star, Q_star, R_star;
};

template <typename Scalar>
DerivedParams<Scalar> derive(const ParamQuad<Scalar>& quad) {
  DerivedParams<Scalar> d;
  d.params = quad;
  const auto& t = quad.table();
  for (int x = 0; x < 2; ++x) {
    // i = 0: left parent is x, right parent free -> row x of the table.
    d.p_side(0, x) = t.row(x).minCoeff();
    d.q_side(0, x) = 1 - t.row(x).maxCoeff();
    // i = 1: right parent is x -> column x.
    d.p_side(1, x) = t.col(x).minCoeff();
    d.q_side(1, x) = 1 - t.col(x).maxCoeff();
  }
  d.r_side = Eigen::Matrix<Scalar, 2, 2>::Ones() - d.p_side - d.q_side;
  d.p = t.minCoeff();
  d.q = 1 - t.maxCoeff();
  d.r = 1 - d.p - d.q;

  for (int i = 0; i < 2; ++i) {
    for (int x = 0; x < 2; ++x) {
      const Scalar ri = d.r_side(i, x);
      d.P(i, x) = d.r * d.p_side(i, x) + (1 - ri) * d.p + ri * d.p_side(1 - i, x);
      d.Q(i, x) = d.r * d.q_side(i, x) + (1 - ri) * d.q + ri * d.q_side(1 - i, x);
    }
  }
  for (int x = 0; x < 2; ++x) d.R(x) = d.r_side(0, x) * d.r_side(1, x);
  for (int i = 0; i < 2; ++i) {
    d.Q_star(i) = std::min(d.Q(i, 0), d.Q(i, 1));
    d.P_star(i) = std::min(d.P(i, 0), d.P(i, 1));
    d.R_star(i) = 1 - d.Q_star(i) - d.P_star(i);
  }
  return d;
}

}  // namespace pcaerg
