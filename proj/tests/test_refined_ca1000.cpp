#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pcaerg/pcaerg.hpp"

using namespace pcaerg;

namespace {

std::vector<double> eps_grid() {
  std::vector<double> g{0.01};
  for (int k = 1; k <= 9; ++k) g.push_back(0.05 * k);
  g.push_back(0.49);
  return g;
}

double prob_at(const RefinedLaw& law, HalfInt delta, PairState to) {
  double p = 0.0;
  for (const auto& a : law.head)
    if (a.delta == delta && a.to == to) p += a.prob;
  for (const auto& f : law.tail) {
    const std::int64_t k = (delta - f.start).doubled * law.direction;
    if (f.to == to && k >= 0 && k % 2 == 0) p += f.weight * std::pow(law.ratio, static_cast<double>(k / 2));
  }
  return p;
}

const RefinedLaw& law_for(PairState s, const RefinedLaw& s1, const RefinedLaw& d00) {
  return classify(s) == PairClass::S1 ? s1 : d00;
}

double exact_refined_mean(double eps) {
  const auto s1 = refined_law_s1(eps);
  const auto d00 = refined_law_00(eps);
  return oracle::chain_mean(pair(0, 0), [&](PairState s) { return law_for(s, s1, d00); });
}

}  // namespace

TEST_CASE("HalfInt arithmetic is exact") {
  HalfInt x = HalfInt::whole(0);
  for (int k = 0; k < 1'000'001; ++k) x = x + HalfInt::halves(1);
  for (int k = 0; k < 1'000'000; ++k) x = x - HalfInt::halves(1);
  CHECK(x == HalfInt::halves(1));
  CHECK(x.value() == 0.5);
  CHECK(HalfInt::halves(-3).str() == "-3/2");
  CHECK(HalfInt::whole(2).str() == "2");
  CHECK(-HalfInt::halves(3) == HalfInt::halves(-3));
}

TEST_CASE("tilde offsets") {
  CHECK(tilde_offset(pair(0, 0), Side::RightBoundary) == HalfInt::halves(-1));
  CHECK(tilde_offset(pair(1, 1), Side::RightBoundary) == HalfInt::whole(0));
  CHECK(tilde_offset(pair(0, 1), Side::RightBoundary) == HalfInt::whole(0));
  CHECK(tilde_offset(pair(kStarBit, 1), Side::RightBoundary) == HalfInt::whole(0));
  for (auto s : {pair(1, 0), pair(1, kStarBit), pair(kStarBit, 0), pair(kStarBit, kStarBit), pair(0, kStarBit)}) {
    CHECK(tilde_offset(s, Side::RightBoundary) == HalfInt::whole(-1));
  }
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      const auto s = pair(a, b);
      const auto right = tilde_offset(s, Side::RightBoundary);
      CHECK(tilde_offset(s, Side::LeftBoundary) == -right);
      CHECK(right >= HalfInt::whole(-1));
      CHECK(right <= HalfInt::whole(0));
    }
  }
}

TEST_CASE("refined laws: scenario probabilities") {
  const auto s1 = refined_law_s1(0.1);
  CHECK(std::abs(prob_at(s1, HalfInt::halves(-1), pair(0, 0)) - 0.648) < 1e-15);
  const auto d00 = refined_law_00(0.1);
  CHECK(std::abs(prob_at(d00, HalfInt::halves(-3), pair(kStarBit, 0)) - 0.064) < 1e-15);
  CHECK(s1.head.size() + s1.tail.size() == 12);
  CHECK(d00.head.size() + d00.tail.size() == 14);
  CHECK(s1.ratio == 0.2);
  for (const auto& f : d00.tail) CHECK(std::abs(f.weight - 0.01 * 0.8) < 1e-16);
}

TEST_CASE("refined laws: masses and expectations over the eps grid") {
  for (double eps : eps_grid()) {
    for (const auto& law : {refined_law_s1(eps), refined_law_00(eps)}) {
      CHECK(std::abs(law.total_mass() - 1) < tol::kIdentity);
      CHECK(std::abs(oracle::truncated_mass(law) - 1) < tol::kSeries);
      CHECK(std::abs(law.expectation() - oracle::truncated_expectation(law)) < tol::kSeries);
    }
    CHECK(std::abs(refined_law_s1(eps).expectation() - mean_s1(eps)) < tol::kSeries);
    CHECK(std::abs(refined_law_00(eps).expectation() - mean_00(eps)) < tol::kSeries);
    // The S1 mass identity (1 - 2e)(1 + 2e) + 4e^2 = 1.
    const auto s1 = refined_law_s1(eps);
    CHECK(std::abs(s1.head_mass() - (1 - 2 * eps) * (1 + 2 * eps)) < tol::kIdentity);
  }
}

TEST_CASE("refined means and drift bound") {
  CHECK(std::abs(mean_s1(0.1) - (-0.205)) < 1e-14);
  CHECK(std::abs(mean_00(0.1) - (-0.417)) < 1e-14);
  CHECK(std::abs(refined_drift_bound(0.25) - 1.375) < 1e-14);
  for (int k = 1; k < 500; ++k) {
    const double eps = k / 1000.0;
    CHECK(mean_00(eps) <= mean_s1(eps));
    CHECK(refined_drift_bound(eps) > 0);
    CHECK(std::abs(refined_drift_bound(eps) - 2 * (mean_00(eps) + 0.5)) < tol::kIdentity);
  }
  CHECK(refined_drift_bound(1e-4) / 1.5e-7 == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(std::abs(static_cast<double>(mean_s1<long double>(0.1L)) - mean_s1(0.1)) < 1e-15);
  for (double bad : {0.0, 0.5, -0.1, 0.7}) {
    CHECK_THROWS_AS(mean_s1(bad), InvalidInput);
    CHECK_THROWS_AS(refined_law_00(bad), InvalidInput);
    CHECK_THROWS_AS(refined_drift_bound(bad), InvalidInput);
  }
}

TEST_CASE("mirror_to_left") {
  for (double eps : eps_grid()) {
    for (const auto& right : {refined_law_s1(eps), refined_law_00(eps)}) {
      const auto left = mirror_to_left(right);
      CHECK(left.side == Side::LeftBoundary);
      CHECK(std::abs(left.total_mass() - 1) < tol::kIdentity);
      CHECK(std::abs(left.expectation() + right.expectation() + 1) < tol::kSeries);
      CHECK(std::abs(left.expectation() - oracle::truncated_expectation(left)) < tol::kSeries);
      const auto back = mirror_to_left(left);
      for (std::size_t k = 0; k < right.head.size(); ++k) CHECK(back.head[k].delta == right.head[k].delta);
      CHECK(back.direction == right.direction);
    }
  }
}

TEST_CASE("CA 1110 drift through flip conjugation") {
  for (double eps : eps_grid()) {
    CHECK(drift_for_1110(eps) == refined_drift_bound(eps));
    const auto flipped = flip_conjugate(ca_with_error(CaCode::parse("1000"), eps));
    CHECK(flipped.table().isApprox(ca_with_error(CaCode::parse("1110"), eps).table(), 1e-15));
  }
}

TEST_CASE("CA 1110 and CA 1000 envelopes have the same hit-time law") {
  const double eps = 0.2;
  const auto d1000 = derive(ca_with_error(CaCode::parse("1000"), eps));
  const auto d1110 = derive(ca_with_error(CaCode::parse("1110"), eps));
  std::vector<double> a, b;
  constexpr int kRuns = 2000;
  for (int k = 0; k < kRuns; ++k) {
    const auto ra = run_to_decorrelation(d1000, 64, 100'000, substream_seed(41, k));
    const auto rb = run_to_decorrelation(d1110, 64, 100'000, substream_seed(42, k));
    REQUIRE(ra.hit_time.has_value());
    REQUIRE(rb.hit_time.has_value());
    a.push_back(static_cast<double>(*ra.hit_time));
    b.push_back(static_cast<double>(*rb.hit_time));
  }
  const double ks = oracle::ks_statistic(a, b);
  MESSAGE("KS statistic " << ks << ", 1% critical value " << oracle::ks_critical_1pct(kRuns, kRuns));
  CHECK(ks < oracle::ks_critical_1pct(kRuns, kRuns));
}

TEST_CASE("simulate_refined") {
  const double eps = 0.2;
  const auto est = simulate_refined(eps, 1'000'000, 1000, 43);
  CHECK(est.mean >= mean_00(eps) - 3 * est.std_error);
  CHECK(std::abs(est.mean - exact_refined_mean(eps)) <= 3 * est.std_error);
  const auto again = simulate_refined(eps, 1'000'000, 1000, 43);
  CHECK(again.mean == est.mean);
  CHECK(again.std_error == est.std_error);
  CHECK_THROWS_AS(simulate_refined(0.5, 10, 0, 1), InvalidInput);
}

TEST_CASE("refined chain stays inside S1, (0,0) and (*,0)") {
  for (double eps : eps_grid()) {
    const auto s1 = refined_law_s1(eps);
    const auto d00 = refined_law_00(eps);
    for (const auto* law : {&s1, &d00}) {
      for (const auto& a : law->head) CHECK(classify(a.to) != PairClass::Other);
      for (const auto& f : law->tail) CHECK(classify(f.to) != PairClass::Other);
    }
  }
}
