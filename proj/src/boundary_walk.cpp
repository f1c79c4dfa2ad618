#include "pcaerg/boundary_walk.hpp"

#include <ostream>

#include "pcaerg/errors.hpp"

namespace pcaerg {

namespace {

BoundaryState3 worse_known_state(const DerivedParams<double>& d, Side s) {
  const int i = known_parent(s);
  return d.r_side(i, 1) > d.r_side(i, 0) ? BoundaryState3::One : BoundaryState3::Zero;
}

}  // namespace

IncrementLaw increment_law(const DerivedParams<double>& d, Side s, BoundaryState3 y) {
  if (!(d.r > 0.0)) throw DivisionByZero("increment_law requires r > 0");
  if (y == BoundaryState3::Star) {
    IncrementLaw law = increment_law(d, s, worse_known_state(d, s));
    law.from_state = BoundaryState3::Star;
    return law;
  }

  const int i = known_parent(s);
  const int o = 1 - i;
  const int x = index(y);
  const double lost = d.r_side(i, x);

  IncrementLaw law;
  law.side = s;
  law.from_state = y;
  law.ratio = 1.0 - d.r;

  // Right: outer cell lost -> -1; kept -> 0; kept plus k+1 fresh cells -> k+1.
  // Left: outer neighbour not gained -> 0; gained -> -1; gained plus k+1 fresh cells -> -(k+2).
  // The probabilities coincide once i and o are swapped.
  const bool right = s == Side::RightBoundary;
  const std::int64_t back = right ? -1 : 0;
  const std::int64_t stay = right ? 0 : -1;
  law.head = {
      {back, BoundaryState3::Star, d.r_side(o, x) * lost},
      {back, BoundaryState3::Zero, d.q_side(o, x) * lost},
      {back, BoundaryState3::One, d.p_side(o, x) * lost},
      {stay, BoundaryState3::Zero, d.q_side(i, x) * d.r},
      {stay, BoundaryState3::One, d.p_side(i, x) * d.r},
  };
  const std::int64_t start = right ? 1 : -2;
  law.direction = right ? 1 : -1;
  law.tail = {
      {start, BoundaryState3::Zero, (1.0 - lost) * d.q * d.r},
      {start, BoundaryState3::One, (1.0 - lost) * d.p * d.r},
  };
  return law;
}

std::pair<std::int64_t, BoundaryState3> sample_increment(const IncrementLaw& law, Rng& rng) {
  return law.sample(rng);
}

IslandState advance_island(IslandState s, std::pair<std::int64_t, BoundaryState3> left,
                           std::pair<std::int64_t, BoundaryState3> right) {
  s.i += left.first;
  s.x = left.second;
  s.j += right.first;
  s.y = right.second;
  s.alive = s.gap() >= kIndependenceGap;
  return s;
}

IslandState create_island(const DerivedParams<double>& d, std::int64_t n0, Rng& rng) {
  if (n0 < kIndependenceGap) throw InvalidInput("initial island gap must be at least 3");
  const double known = d.p + d.q;
  if (!(known > 0.0)) throw InvalidInput("no island can be created when p + q = 0");
  const double zero_prob = d.q / known;
  IslandState s;
  s.i = 0;
  s.j = n0;
  s.x = rng.uniform() < zero_prob ? BoundaryState3::Zero : BoundaryState3::One;
  s.y = rng.uniform() < zero_prob ? BoundaryState3::Zero : BoundaryState3::One;
  s.alive = true;
  return s;
}

namespace {

struct IslandLaws {
  IncrementLaw left[3];
  IncrementLaw right[3];

  explicit IslandLaws(const DerivedParams<double>& d) {
    for (auto st : kBoundaryStates) {
      left[index(st)] = increment_law(d, Side::LeftBoundary, st);
      right[index(st)] = increment_law(d, Side::RightBoundary, st);
    }
  }

  IslandState step(const IslandState& s, Rng& rng) const {
    auto l = left[index(s.x)].sample(rng);
    auto r = right[index(s.y)].sample(rng);
    return advance_island(s, l, r);
  }
};

}  // namespace

std::vector<IslandState> simulate_island(const DerivedParams<double>& d, std::int64_t n0, std::uint64_t horizon,
                                         std::uint64_t seed) {
  const IslandLaws laws(d);
  Rng rng(seed);
  std::vector<IslandState> trajectory{create_island(d, n0, rng)};
  for (std::uint64_t t = 0; t < horizon && trajectory.back().alive; ++t) {
    trajectory.push_back(laws.step(trajectory.back(), rng));
  }
  return trajectory;
}

IslandRun run_island(const DerivedParams<double>& d, std::int64_t n0, std::uint64_t horizon,
                     std::optional<std::int64_t> target_gap, Rng& rng) {
  const IslandLaws laws(d);
  IslandRun run;
  run.final_state = create_island(d, n0, rng);
  while (true) {
    const auto& s = run.final_state;
    if (!s.alive) {
      run.outcome = IslandOutcome::Died;
      break;
    }
    if (target_gap && s.gap() >= *target_gap) {
      run.outcome = IslandOutcome::ReachedTarget;
      break;
    }
    if (run.steps >= horizon) {
      run.outcome = IslandOutcome::Horizon;
      break;
    }
    run.final_state = laws.step(s, rng);
    ++run.steps;
  }
  return run;
}

DriftEstimate empirical_drift(const DerivedParams<double>& d, Side s, std::uint64_t steps, std::uint64_t burn_in,
                              std::uint64_t seed) {
  IncrementLaw laws[3];
  for (auto st : kBoundaryStates) laws[index(st)] = increment_law(d, s, st);

  Rng rng(seed);
  BoundaryState3 state = BoundaryState3::Star;
  for (std::uint64_t t = 0; t < burn_in; ++t) state = laws[index(state)].sample(rng).second;

  BatchMeans acc(steps);
  for (std::uint64_t t = 0; t < steps; ++t) {
    auto [delta, next] = laws[index(state)].sample(rng);
    acc.push(static_cast<double>(delta));
    state = next;
  }
  return {acc.mean(), acc.std_error(), steps, seed};
}

void write_trajectory_csv(std::ostream& out, const std::vector<IslandState>& trajectory) {
  out << "t,i,j,x,y,alive\n";
  for (std::size_t t = 0; t < trajectory.size(); ++t) {
    const auto& s = trajectory[t];
    out << t << ',' << s.i << ',' << s.j << ',' << to_char(s.x) << ',' << to_char(s.y) << ','
        << (s.alive ? 1 : 0) << '\n';
  }
}

}  // namespace pcaerg
