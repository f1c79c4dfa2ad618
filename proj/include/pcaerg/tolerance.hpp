#pragma once

namespace pcaerg::tol {

// Exact algebraic identities (partition sums, row sums, law masses).
inline constexpr double kIdentity = 1e-12;
// Agreement between a closed form and a linear solve.
inline constexpr double kSolve = 1e-10;
// Agreement with truncated geometric series.
inline constexpr double kSeries = 1e-9;
// Tail mass below which a truncated enumeration stops.
inline constexpr double kTailCutoff = 1e-12;

}  // namespace pcaerg::tol
