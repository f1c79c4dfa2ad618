#include "pcaerg/envelope.hpp"

#include <algorithm>
#include <string>

#include "pcaerg/errors.hpp"
#include "pcaerg/rng.hpp"

namespace pcaerg {

std::size_t RingState::unknown_count() const {
  return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), CellState::Q));
}

EnvelopeThresholds::EnvelopeThresholds(const DerivedParams<double>& d) {
  const auto& q = d.params;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) table_[a][b] = {q(a, b), q(a, b)};
  }
  const int unknown = static_cast<int>(CellState::Q);
  for (int x = 0; x < 2; ++x) {
    table_[x][unknown] = {d.p_side(0, x), 1.0 - d.q_side(0, x)};
    table_[unknown][x] = {d.p_side(1, x), 1.0 - d.q_side(1, x)};
  }
  table_[unknown][unknown] = {d.p, 1.0 - d.q};
}

namespace {

void check_sizes(const RingState& ring, std::span<const double> uniforms) {
  if (ring.size() < 3) throw InvalidInput("ring must have at least 3 cells");
  if (uniforms.size() != ring.size()) throw InvalidInput("need exactly one uniform per cell");
}

}  // namespace

RingState pca_step(const RingState& ring, const ParamQuad<double>& q, std::span<const double> uniforms) {
  if (uniforms.size() != ring.size()) throw InvalidInput("need exactly one uniform per cell");
  const std::size_t n = ring.size();
  RingState next(n, CellState::Zero, ring.time + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const CellState a = ring.cells[i], b = ring.cells[(i + 1) % n];
    if (a == CellState::Q || b == CellState::Q) throw InvalidInput("pca_step needs a binary ring");
    next.cells[i] = uniforms[i] < q(static_cast<int>(a), static_cast<int>(b)) ? CellState::One : CellState::Zero;
  }
  return next;
}

namespace {

RingState threshold_step(const RingState& ring, const EnvelopeThresholds& th, std::span<const double> uniforms) {
  const std::size_t n = ring.size();
  RingState next(n, CellState::Q, ring.time + 1);
  for (std::size_t i = 0; i < n; ++i) next.cells[i] = th.apply(ring.cells[i], ring.cells[(i + 1) % n], uniforms[i]);
  return next;
}

}  // namespace

RingState envelope_step(const RingState& ring, const DerivedParams<double>& d, std::span<const double> uniforms) {
  check_sizes(ring, uniforms);
  return threshold_step(ring, EnvelopeThresholds(d), uniforms);
}

bool CoupledTriple::dominated() const {
  if (copy_a.size() != envelope.size() || copy_b.size() != envelope.size()) return false;
  for (std::size_t i = 0; i < envelope.size(); ++i) {
    const CellState e = envelope.cells[i];
    if (copy_a.cells[i] == CellState::Q || copy_b.cells[i] == CellState::Q) return false;
    if (e != CellState::Q && (copy_a.cells[i] != e || copy_b.cells[i] != e)) return false;
  }
  return true;
}

CoupledTriple coupled_step(const CoupledTriple& t, const DerivedParams<double>& d, std::span<const double> uniforms) {
  if (!t.dominated()) throw DominanceViolation("coupled_step input violates envelope dominance");
  CoupledTriple next{envelope_step(t.envelope, d, uniforms), pca_step(t.copy_a, d.params, uniforms),
                     pca_step(t.copy_b, d.params, uniforms)};
  if (!next.dominated()) {
    throw DominanceViolation("envelope dominance lost at time " + std::to_string(next.envelope.time));
  }
  return next;
}

void fill_step_uniforms(std::uint64_t seed, std::uint64_t step, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = counter_uniform(seed, step, i);
}

DecorrelationRun run_to_decorrelation(const DerivedParams<double>& d, std::size_t ring_size, std::uint64_t max_steps,
                                      std::uint64_t seed, std::size_t keep_rows) {
  if (ring_size < 3) throw InvalidInput("ring must have at least 3 cells");
  const EnvelopeThresholds th(d);
  DecorrelationRun run;
  RingState ring(ring_size, CellState::Q);
  std::vector<double> uniforms(ring_size);

  auto record = [&](const RingState& r) {
    run.density.push_back({r.time, r.unknown_count(), ring_size});
    if (run.history.size() < keep_rows) run.history.push_back(r);
  };
  record(ring);
  for (std::uint64_t t = 0; t < max_steps; ++t) {
    fill_step_uniforms(seed, t, uniforms);
    ring = threshold_step(ring, th, uniforms);
    record(ring);
    if (run.density.back().unknown == 0) {
      run.hit_time = ring.time;
      break;
    }
  }
  return run;
}

}  // namespace pcaerg
