#pragma once

// Random stochastic matrices: the heavy-tailed sparse benchmark family and
// the structured families used to exercise the reduction theorems.
//
// Every generator is a pure function of its arguments; the same seed always
// yields the same matrix.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "isored/matrix.hpp"

namespace isored {

using Rng = std::mt19937_64;

/// Independent stream `stream` of a base seed (splitmix64 mixing).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

/// Burr law with F(x) = 1 - 1 / (1 + x^alpha), x > 0.
struct BurrConfig {
  double alpha = 0.2;
};

double burr_cdf(double alpha, double x);
/// Inverse CDF: (u / (1 - u))^(1 / alpha).
double burr_quantile(double alpha, double u);
double burr_sample(const BurrConfig& cfg, Rng& rng);

struct SparseGenConfig {
  std::size_t n = 1000;
  std::size_t nnz_per_col = 4;
  BurrConfig burr;
  std::uint64_t seed = 1;
};

/// nnz_per_col distinct uniformly chosen rows per column, Burr values,
/// columns normalized. Stored sparse when below kSparseDensityThreshold.
StochasticMatrix gen_sparse_stochastic(const SparseGenConfig& cfg);

/// Same support law plus a random Hamiltonian cycle, so the result is
/// irreducible. Values are Burr when `burr` is set, uniform on (0, 1] otherwise.
StochasticMatrix gen_irreducible_sparse(std::size_t n, std::size_t nnz_per_col,
                                        std::optional<BurrConfig> burr, std::uint64_t seed);

/// Entries uniform on (0, 1), columns normalized.
StochasticMatrix gen_dense_stochastic(std::size_t n, std::uint64_t seed);

enum class TwoBlockVariant { Padded, LWeighted, SingleRow };

/// Two-block families built around q B, q = 1 - p, with a small block of
/// weight a in front (two vertices, or one for SingleRow). `row_means`
/// (the L_k) defaults to the row averages of B and is used by LWeighted and
/// SingleRow. Requires a in (0, 1/2), p in (0, 1) (Padded also allows p = 1)
/// and L_k - a/m > 0 where L is used.
StochasticMatrix make_two_block(double a, double p, const StochasticMatrix& b,
                                TwoBlockVariant variant,
                                std::optional<Vector> row_means = std::nullopt);
/// Vertices of the q B block inside make_two_block's output.
IndexSet two_block_kept(std::size_t m, TwoBlockVariant variant);

/// a_ik > 0 iff |i - k| <= m - 1. Requires 1 <= m <= n.
StochasticMatrix make_banded(std::size_t n, std::size_t m, std::uint64_t seed = 0);

/// Entries in [1/n - O(e^{-cn}), 1/n + e^{-cn}]. Requires
/// 16 e^{-cn/2} + 3n e^{-cn} <= 1.
StochasticMatrix make_near_averaging(std::size_t n, double c, std::uint64_t seed = 0);

/// Non-negative irreducible matrix with at most one zero per row and column,
/// a positive row `pivot`, and column `pivot` of strictly lowest sum.
struct OneZeroInstance {
  DenseMatrix a;
  std::size_t pivot = 0;
};
OneZeroInstance gen_one_zero_irreducible(std::size_t n, std::uint64_t seed);

/// Stochastic, at most m zeros per row and column, zero-free diagonal < 1.
/// Requires n >= m + 2.
StochasticMatrix gen_bounded_zeros(std::size_t n, std::size_t m, std::uint64_t seed);

/// Stochastic matrix whose block on `eliminated` is positive with column
/// sums below one, every column of A_{E,S} and every row of A_{S,E} having a
/// positive entry.
struct PrimitiveBlockInstance {
  StochasticMatrix a;
  IndexSet kept;
};
PrimitiveBlockInstance gen_primitive_block(std::size_t n, std::size_t kept, std::uint64_t seed);

/// Positive, symmetric before balancing, row and column sums one after
/// Sinkhorn scaling.
StochasticMatrix gen_doubly_stochastic(std::size_t n, std::uint64_t seed);

/// One communicating class of a chain to be assembled by make_class_structured.
struct ClassSpec {
  std::size_t size = 1;
  std::size_t period = 1;  // 1 <= period <= size
  bool essential = true;
};

/// Chain with the given classes plus `transients` transient vertices, vertex
/// labels shuffled. Non-essential classes leak into an earlier class, so the
/// first class must be essential.
StochasticMatrix make_class_structured(const std::vector<ClassSpec>& classes,
                                       std::size_t transients, std::uint64_t seed);

}  // namespace isored
