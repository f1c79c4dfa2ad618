#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "pcaerg/boundary_chain.hpp"
#include "pcaerg/geometric_law.hpp"
#include "pcaerg/params.hpp"
#include "pcaerg/rng.hpp"
#include "pcaerg/stats.hpp"

namespace pcaerg {

/// One-step law of a single-cell island boundary leaving `from_state`.
struct IncrementLaw : GeometricLaw<std::int64_t, BoundaryState3> {
  Side side = Side::RightBoundary;
  BoundaryState3 from_state = BoundaryState3::Zero;
};

/// Exact boundary increment law.
///
/// Right boundary leaving y: the outer cell is lost with probability
/// r_side(0,y) and the boundary steps back onto its neighbour; otherwise it
/// stays, and fresh cells from two unknown parents attach one by one while each
/// succeeds (probability 1 - r), giving the geometric tail starting at +1.
/// The left boundary is the mirror image: deltas 0, -1, then a tail from -2,
/// with the superscripts exchanged. Star uses the law of the known state with
/// the larger r_side (the worse case). Requires r > 0.
IncrementLaw increment_law(const DerivedParams<double>& d, Side s, BoundaryState3 y);

std::pair<std::int64_t, BoundaryState3> sample_increment(const IncrementLaw& law, Rng& rng);

/// Minimum distance between the two boundaries for them to move independently.
inline constexpr std::int64_t kIndependenceGap = 3;

struct IslandState {
  std::int64_t i = 0, j = 0;
  BoundaryState3 x = BoundaryState3::Zero, y = BoundaryState3::Zero;
  bool alive = true;

  std::int64_t gap() const { return j - i; }
};

/// Applies one pair of boundary moves and refreshes the alive flag.
IslandState advance_island(IslandState s, std::pair<std::int64_t, BoundaryState3> left,
                           std::pair<std::int64_t, BoundaryState3> right);

/// Fresh island of gap n0 whose boundary states are drawn from the envelope's
/// conditional law on {0,1}: Zero with q/(p+q), One with p/(p+q).
IslandState create_island(const DerivedParams<double>& d, std::int64_t n0, Rng& rng);

/// Trajectory starting at the created island, one entry per step, ending at
/// death (gap < 3) or after `horizon` steps.
std::vector<IslandState> simulate_island(const DerivedParams<double>& d, std::int64_t n0, std::uint64_t horizon,
                                         std::uint64_t seed);

enum class IslandOutcome { Died, ReachedTarget, Horizon };

struct IslandRun {
  IslandOutcome outcome = IslandOutcome::Horizon;
  std::uint64_t steps = 0;
  IslandState final_state;
};

/// Runs one island without storing its trajectory, stopping at death, at
/// gap >= target_gap (if given), or at the horizon.
IslandRun run_island(const DerivedParams<double>& d, std::int64_t n0, std::uint64_t horizon,
                     std::optional<std::int64_t> target_gap, Rng& rng);

/// Mean one-step displacement of a single boundary whose state follows the
/// increment laws, after `burn_in` discarded steps; starts from Star.
DriftEstimate empirical_drift(const DerivedParams<double>& d, Side s, std::uint64_t steps, std::uint64_t burn_in,
                              std::uint64_t seed);

/// CSV with header t,i,j,x,y,alive; states written as 0, 1 or *.
void write_trajectory_csv(std::ostream& out, const std::vector<IslandState>& trajectory);

}  // namespace pcaerg
