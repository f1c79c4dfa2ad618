#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "pcaerg/params.hpp"

namespace pcaerg {

/// Cell of the envelope PCA. Q stands for "still depends on the initial condition".
enum class CellState : std::uint8_t { Zero = 0, One = 1, Q = 2 };

constexpr char to_char(CellState c) { return c == CellState::Zero ? '0' : c == CellState::One ? '1' : '?'; }

/// Periodic configuration; cell i reads its parents i and i+1 (mod N).
struct RingState {
  std::vector<CellState> cells;
  std::uint64_t time = 0;

  RingState() = default;
  RingState(std::size_t n, CellState fill, std::uint64_t t = 0) : cells(n, fill), time(t) {}
  explicit RingState(std::vector<CellState> c, std::uint64_t t = 0) : cells(std::move(c)), time(t) {}

  std::size_t size() const { return cells.size(); }
  std::size_t unknown_count() const;
  bool is_binary() const { return unknown_count() == 0; }
};

/// Thrown when the coupled copies disagree with a known envelope cell.
class DominanceViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Single-uniform thresholds realising the envelope transitions.
///
/// For parents (a, b) with uniform u: One iff u < one_below, Zero iff
/// u >= zero_from, Q otherwise. Known-known pairs have one_below == zero_from
/// = p_ab; a known left parent a uses min/max of row a, a known right parent b
/// uses column b, two unknown parents use the global min/max.
class EnvelopeThresholds {
 public:
  explicit EnvelopeThresholds(const DerivedParams<double>& d);

  CellState apply(CellState left, CellState right, double u) const {
    const auto& t = table_[static_cast<int>(left)][static_cast<int>(right)];
    if (u < t.one_below) return CellState::One;
    if (u >= t.zero_from) return CellState::Zero;
    return CellState::Q;
  }

 private:
  struct Entry {
    double one_below;
    double zero_from;
  };
  std::array<std::array<Entry, 3>, 3> table_{};
};

/// Real PCA step: cell i becomes One iff uniforms[i] < p(cell i, cell i+1).
RingState pca_step(const RingState& ring, const ParamQuad<double>& q, std::span<const double> uniforms);

/// Envelope step with the threshold coupling above.
RingState envelope_step(const RingState& ring, const DerivedParams<double>& d, std::span<const double> uniforms);

/// Envelope plus two real copies driven by the same uniforms.
struct CoupledTriple {
  RingState envelope;
  RingState copy_a, copy_b;

  /// Every known envelope cell equals both copies.
  bool dominated() const;
};

/// Advances all three rings with shared uniforms. Throws DominanceViolation if
/// the invariant fails on input or output.
CoupledTriple coupled_step(const CoupledTriple& t, const DerivedParams<double>& d, std::span<const double> uniforms);

/// Uniforms for one step, cell-major, from the counter-based stream (seed, step, cell).
void fill_step_uniforms(std::uint64_t seed, std::uint64_t step, std::span<double> out);

/// Unknown-cell density count / ring_size after a given number of steps.
struct DensityPoint {
  std::uint64_t step = 0;
  std::uint64_t unknown = 0;
  std::uint64_t ring_size = 0;
};

struct DecorrelationRun {
  std::optional<std::uint64_t> hit_time;
  std::vector<DensityPoint> density;
  std::vector<RingState> history;
};

/// Envelope from the all-unknown ring until no unknown cell is left or
/// `max_steps` is reached. Keeps the first `keep_rows` configurations (time 0
/// included) for rendering.
DecorrelationRun run_to_decorrelation(const DerivedParams<double>& d, std::size_t ring_size, std::uint64_t max_steps,
                                      std::uint64_t seed, std::size_t keep_rows = 0);

}  // namespace pcaerg
