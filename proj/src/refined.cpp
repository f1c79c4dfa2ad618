#include "pcaerg/refined.hpp"

#include <stdexcept>

#include "pcaerg/rng.hpp"
#include "pcaerg/tolerance.hpp"

namespace pcaerg {

std::string HalfInt::str() const {
  if (doubled % 2 == 0) return std::to_string(doubled / 2);
  return std::to_string(doubled) + "/2";
}

std::string PairState::str() const { return {'(', to_char(inner), ',', to_char(outer), ')'}; }

namespace {

constexpr PairState k00 = pair(0, 0);
constexpr PairState k01 = pair(0, 1);
constexpr PairState k10 = pair(1, 0);
constexpr PairState k11 = pair(1, 1);
constexpr PairState kS0 = pair(kStarBit, 0);
constexpr PairState kS1 = pair(kStarBit, 1);

constexpr HalfInt h(std::int64_t halves) { return HalfInt::halves(halves); }

}  // namespace

PairClass classify(PairState s) {
  if (s == k01 || s == k11 || s == kS1 || s == k10) return PairClass::S1;
  if (s == k00) return PairClass::DoubleZero;
  if (s == kS0) return PairClass::StarZero;
  return PairClass::Other;
}

HalfInt tilde_offset(PairState s, Side side) {
  HalfInt right;
  if (s == k01 || s == k11 || s == kS1) {
    right = h(0);
  } else if (s == k00) {
    right = h(-1);
  } else {
    right = h(-2);
  }
  return side == Side::RightBoundary ? right : -right;
}

RefinedLaw refined_law_s1(double eps) {
  detail::require_open_eps(eps);
  const double e = eps, f = 1.0 - eps, g = 1.0 - 2.0 * eps;
  RefinedLaw law;
  law.from_class = PairClass::S1;
  law.ratio = 2.0 * eps;
  law.head = {
      {h(-2), k10, e * f * g},  //
      {h(-1), k00, f * f * g},  //
      {h(0), k01, f * e * g},   //
      {h(0), k11, e * e * g},   //
      {h(0), k10, e * e * g},   //
      {h(1), k00, f * e * g},   //
      {h(2), k01, f * e * g},   //
      {h(2), k11, e * e * g},
  };
  const double w = e * e * g;
  law.tail = {{h(2), k10, w}, {h(3), k00, w}, {h(4), k01, w}, {h(4), k11, w}};
  return law;
}

RefinedLaw refined_law_00(double eps) {
  detail::require_open_eps(eps);
  const double e = eps, f = 1.0 - eps, g = 1.0 - 2.0 * eps;
  RefinedLaw law;
  law.from_class = PairClass::DoubleZero;
  law.ratio = 2.0 * eps;
  law.head = {
      {h(-3), kS0, g * e * g},  //
      {h(-3), k10, e * e * g},  //
      {h(-2), k00, e * e * g},  //
      {h(-1), kS1, g * f * g},  //
      {h(-1), k01, e * f * g},  //
      {h(-1), k11, e * f * g},  //
      {h(-1), k10, f * e * g},  //
      {h(0), k00, e * e * g},   //
      {h(1), k01, e * e * g},   //
      {h(1), k11, f * e * g},
  };
  const double w = e * e * g;
  law.tail = {{h(1), k10, w}, {h(2), k00, w}, {h(3), k01, w}, {h(3), k11, w}};
  return law;
}

RefinedLaw mirror_to_left(const RefinedLaw& right) {
  RefinedLaw left = right;
  left.side = other(right.side);
  left.direction = -right.direction;
  for (auto& a : left.head) a.delta = -a.delta - h(2);
  for (auto& f : left.tail) f.start = -f.start - h(2);
  return left;
}

double drift_for_1110(double eps) {
  detail::require_open_eps(eps);
  const auto flipped = flip_conjugate(ca_with_error(CaCode::parse("1000"), eps)).table();
  if ((flipped - ca_with_error(CaCode::parse("1110"), eps).table()).cwiseAbs().maxCoeff() > tol::kIdentity) {
    throw std::logic_error("CA 1110 is not the flip conjugate of CA 1000");
  }
  return refined_drift_bound(eps);
}

DriftEstimate simulate_refined(double eps, std::uint64_t steps, std::uint64_t burn_in, std::uint64_t seed) {
  const RefinedLaw s1 = refined_law_s1(eps);
  const RefinedLaw d00 = refined_law_00(eps);
  auto law_for = [&](PairState s) -> const RefinedLaw& {
    switch (classify(s)) {
      case PairClass::S1: return s1;
      case PairClass::DoubleZero:
      case PairClass::StarZero: return d00;
      case PairClass::Other: break;
    }
    throw std::logic_error("refined boundary reached unexpected pair state " + s.str());
  };

  Rng rng(seed);
  PairState state = k00;
  for (std::uint64_t t = 0; t < burn_in; ++t) state = law_for(state).sample(rng).second;
  BatchMeans acc(steps);
  for (std::uint64_t t = 0; t < steps; ++t) {
    auto [delta, next] = law_for(state).sample(rng);
    acc.push(delta.value());
    state = next;
  }
  return {acc.mean(), acc.std_error(), steps, seed};
}

}  // namespace pcaerg
