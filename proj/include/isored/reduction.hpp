#pragma once

// Numeric isospectral reduction at lambda = 1.
//
// For a kept set S with complement E = S^c,
//
//     R = A_SS + A_SE (I - A_EE)^{-1} A_ES,
//
// is again column-stochastic, and a stationary vector v_R of R lifts to the
// stationary vector of A as v = [v_R ; (I - A_EE)^{-1} A_ES v_R]. The lift
// matrix (I - A_EE)^{-1} A_ES is kept in the record for that reconstruction.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "isored/matrix.hpp"

namespace isored {

/// Elimination is refused when the 1-norm condition number of (I - A_EE)
/// exceeds this.
inline constexpr double kSingularEliminationThreshold = 1e14;
inline constexpr double kDefaultPivotDelta = 1e-8;

struct ReductionRecord {
  IndexSet kept;                        // S
  StochasticMatrix reduced;             // R, |S| x |S|
  DenseMatrix lift;                     // |E| x |S|, rows follow kept.complement()
  std::vector<std::size_t> pivot_order;  // eliminated vertices (0-based) in order
  /// Block mode: 1-norm condition number of (I - A_EE).
  /// Sequential mode: largest pivot amplification 1 / (1 - m_kk).
  double condition_estimate = 1.0;
  /// Largest |column sum - 1| of R before re-projection.
  double column_sum_drift = 0.0;
};

enum class SelectionKind { First, Random, PivotGreedy };

struct SelectionStrategy {
  SelectionKind kind = SelectionKind::Random;
  std::size_t keep = 1;
  std::uint64_t seed = 0;
  double delta = kDefaultPivotDelta;

  static SelectionStrategy first(std::size_t s) { return {SelectionKind::First, s, 0, kDefaultPivotDelta}; }
  static SelectionStrategy random(std::size_t s, std::uint64_t seed) {
    return {SelectionKind::Random, s, seed, kDefaultPivotDelta};
  }
  static SelectionStrategy pivot_greedy(std::size_t s, double delta = kDefaultPivotDelta) {
    return {SelectionKind::PivotGreedy, s, 0, delta};
  }
};

enum class ReductionMode { Block, Sequential };

/// Schur-complement formula with one LU factorization of (I - A_EE).
/// Throws SingularElimination when (I - A_EE) is numerically singular, which
/// happens exactly when E contains a closed class.
ReductionRecord reduce_block(const StochasticMatrix& a, const IndexSet& kept);

/// Eliminates vertex k: r_ij = a_ij + a_ik a_kj / (1 - a_kk).
/// Throws AbsorbingPivot when a_kk >= 1 - 1e-12.
ReductionRecord eliminate_node(const StochasticMatrix& a, std::size_t k);

/// Eliminates the complement one vertex at a time, always taking the
/// remaining vertex with the smallest current diagonal. Throws NoViablePivot
/// once every remaining diagonal is >= 1 - delta.
ReductionRecord reduce_sequential(const StochasticMatrix& a, const IndexSet& kept,
                                  double delta = kDefaultPivotDelta);
/// Same, in a caller-given elimination order (a permutation of the complement).
ReductionRecord reduce_sequential(const StochasticMatrix& a, const IndexSet& kept,
                                  const std::vector<std::size_t>& order,
                                  double delta = kDefaultPivotDelta);

ReductionRecord reduce(const StochasticMatrix& a, const IndexSet& kept, ReductionMode mode);

/// General reduction R = M_SS + M_SE (lambda I - M_EE)^{-1} M_ES of any square
/// matrix, for spectral parameters other than 1. No stochasticity assumed.
DenseMatrix reduce_block_at(const DenseMatrix& m, const IndexSet& kept, double lambda);

IndexSet select_subset(const StochasticMatrix& a, const SelectionStrategy& strategy);

/// v = [v_R ; lift v_R] in original vertex order, renormalized to the simplex.
ProbabilityVector reconstruct_stationary(const ReductionRecord& rec,
                                         const ProbabilityVector& v_reduced);

/// Operation counts of the two reduction modes for keeping s of n vertices.
std::uint64_t reduction_cost(std::uint64_t n, std::uint64_t s, ReductionMode mode);

}  // namespace isored
