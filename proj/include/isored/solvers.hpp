#pragma once

// Stationary-vector solvers: power iteration, the isospectral scheme and a
// direct LU baseline.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "isored/matrix.hpp"
#include "isored/reduction.hpp"

namespace isored {

enum class SolveMethod { PerronFrobenius, Isospectral, Direct };
std::string_view to_string(SolveMethod m) noexcept;

/// Which solver runs on the reduced matrix.
enum class InnerSolver { Automatic, PerronFrobenius, Direct };

struct SolverConfig {
  int precision = 8;  // stop once |v_{k+1} - v_k|^2 < 10^(-2 precision)
  std::size_t max_iters = 1'000'000;
  std::uint64_t seed = 0;  // random start on the simplex
  SelectionStrategy strategy = SelectionStrategy::random(1, 0);
  ReductionMode mode = ReductionMode::Block;
  InnerSolver inner = InnerSolver::Automatic;
  std::size_t direct_threshold = 200;  // Automatic: direct when |S| <= this
  double regap_threshold = 0.999;
  std::size_t max_rereductions = 0;
  std::size_t max_singular_retries = 5;
};

struct SolveOutcome {
  ProbabilityVector v;
  std::size_t iterations = 0;
  double residual = 0.0;   // |A v - v|_2 on the input matrix
  double wall_time = 0.0;  // seconds
  SolveMethod method = SolveMethod::PerronFrobenius;
  bool converged = true;   // false when max_iters ran out
  std::optional<ReductionRecord> reduction;
  std::size_t singular_retries = 0;
  std::size_t rereductions = 0;
  std::optional<double> reduced_radius;  // estimate, when re-reduction is enabled
};

/// Uniform point on the simplex (normalized i.i.d. exponentials).
ProbabilityVector random_simplex_point(std::size_t n, std::uint64_t seed);

/// v <- A v from a random start until the squared update norm drops below
/// 10^(-2p). Running out of iterations returns the last iterate with
/// converged == false.
SolveOutcome perron_frobenius(const StochasticMatrix& a, const SolverConfig& cfg);
SolveOutcome perron_frobenius(const StochasticMatrix& a, const ProbabilityVector& start,
                              const SolverConfig& cfg);

/// Solves (A - I) v = 0 with the last equation replaced by sum(v) = 1.
/// Throws SingularSystem when that system is numerically singular.
SolveOutcome direct_stationary(const StochasticMatrix& a);

/// Select S, reduce, solve the reduced chain, lift back. A SingularElimination
/// (or NoViablePivot) draws a fresh random S, up to max_singular_retries times.
SolveOutcome isospectral_stationary(const StochasticMatrix& a, const SolverConfig& cfg);

/// Inner spectral radius estimate by power iteration on x -> A x - v*(sum x)
/// over zero-sum vectors. Throws NoConvergence.
double estimate_inner_radius(const StochasticMatrix& a, const ProbabilityVector& v_star,
                             std::uint64_t seed, std::size_t max_iters = 100'000);

}  // namespace isored
