#include "isored/randgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace isored {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Uniform on the open interval (0, 1).
double open_unit(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double x = 0.0;
  while (x == 0.0) x = u(rng);
  return x;
}

std::vector<std::size_t> permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// First k entries of `pool` become a uniform random k-subset.
void partial_shuffle(std::vector<std::size_t>& pool, std::size_t k, Rng& rng) {
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw Error(ErrorCode::PreconditionViolation, "Burr alpha must lie in (0, 1)", 0, 0, alpha);
}

StochasticMatrix sparse_support(std::size_t n, std::size_t k, std::optional<BurrConfig> burr,
                                std::uint64_t seed, bool add_cycle) {
  if (n == 0) throw Error(ErrorCode::PreconditionViolation, "n must be positive");
  if (k < 1 || k > n)
    throw Error(ErrorCode::PreconditionViolation,
                "nnz per column " + std::to_string(k) + " outside 1.." + std::to_string(n));
  if (burr) check_alpha(burr->alpha);
  Rng rng(derive_seed(seed, 0));
  std::vector<std::size_t> rows(n);
  std::iota(rows.begin(), rows.end(), 0);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(n * (k + 1));
  std::vector<double> column_max(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    partial_shuffle(rows, k, rng);
    for (std::size_t t = 0; t < k; ++t) {
      const double v = burr ? burr_sample(*burr, rng) : open_unit(rng);
      column_max[j] = std::max(column_max[j], v);
      triplets.emplace_back(idx(rows[t]), idx(j), v);
    }
  }
  if (add_cycle && n > 1) {
    Rng cycle_rng(derive_seed(seed, 1));
    const auto order = permutation(n, cycle_rng);
    for (std::size_t t = 0; t < n; ++t) {
      const std::size_t from = order[t], to = order[(t + 1) % n];
      triplets.emplace_back(idx(to), idx(from), column_max[from]);
    }
  }
  SparseMatrix m(idx(n), idx(n));
  // Duplicates (cycle edge on an existing entry) keep the larger value.
  m.setFromTriplets(triplets.begin(), triplets.end(),
                    [](double x, double y) { return std::max(x, y); });
  return project_columns(NonNegativeMatrix(std::move(m))).with_auto_storage();
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double burr_cdf(double alpha, double x) {
  if (x <= 0.0) return 0.0;
  return 1.0 - 1.0 / (1.0 + std::pow(x, alpha));
}

double burr_quantile(double alpha, double u) {
  check_alpha(alpha);
  if (!(u > 0.0 && u < 1.0))
    throw Error(ErrorCode::PreconditionViolation, "Burr quantile needs u in (0, 1)", 0, 0, u);
  return std::pow(u / (1.0 - u), 1.0 / alpha);
}

double burr_sample(const BurrConfig& cfg, Rng& rng) {
  check_alpha(cfg.alpha);
  return burr_quantile(cfg.alpha, open_unit(rng));
}

StochasticMatrix gen_sparse_stochastic(const SparseGenConfig& cfg) {
  return sparse_support(cfg.n, cfg.nnz_per_col, cfg.burr, cfg.seed, false);
}

StochasticMatrix gen_irreducible_sparse(std::size_t n, std::size_t nnz_per_col,
                                        std::optional<BurrConfig> burr, std::uint64_t seed) {
  return sparse_support(n, nnz_per_col, burr, seed, true);
}

StochasticMatrix gen_dense_stochastic(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::PreconditionViolation, "n must be positive");
  Rng rng(derive_seed(seed, 0));
  DenseMatrix m(idx(n), idx(n));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) m(i, j) = open_unit(rng);
  return project_columns(NonNegativeMatrix(std::move(m)));
}

StochasticMatrix make_two_block(double a, double p, const StochasticMatrix& b,
                                TwoBlockVariant variant, std::optional<Vector> row_means) {
  if (!(a > 0.0 && a < 0.5))
    throw Error(ErrorCode::PreconditionViolation, "a must lie in (0, 1/2)", 0, 0, a);
  const bool p_ok = variant == TwoBlockVariant::Padded ? (p > 0.0 && p <= 1.0) : (p > 0.0 && p < 1.0);
  if (!p_ok) throw Error(ErrorCode::PreconditionViolation, "p out of range", 0, 0, p);
  const double q = 1.0 - p;
  const std::size_t m = b.size();
  const DenseMatrix bd = b.to_dense();

  Vector l = row_means ? *row_means : Vector(bd.rowwise().mean());
  if (variant != TwoBlockVariant::Padded) {
    if (static_cast<std::size_t>(l.size()) != m)
      throw Error(ErrorCode::DimensionMismatch, "row means length");
    if (std::abs(l.sum() - 1.0) > kStochasticTolerance)
      throw Error(ErrorCode::PreconditionViolation, "row means must sum to one", 0, 0, l.sum());
    for (std::size_t k = 0; k < m; ++k)
      if (!(l(idx(k)) - a / static_cast<double>(m) > 0.0))
        throw Error(ErrorCode::PreconditionViolation, "L_k - a/m must be positive", k + 1, 0,
                    l(idx(k)));
  }

  const std::size_t head = variant == TwoBlockVariant::SingleRow ? 1 : 2;
  DenseMatrix out = DenseMatrix::Zero(idx(head + m), idx(head + m));
  out.bottomRightCorner(idx(m), idx(m)) = q * bd;
  for (std::size_t j = 0; j < m; ++j) out(0, idx(head + j)) = p;
  const double md = static_cast<double>(m);

  switch (variant) {
    case TwoBlockVariant::Padded:
      out.topLeftCorner(2, 2).setConstant(a);
      for (std::size_t k = 0; k < m; ++k) out(idx(head + k), 0) = (1.0 - 2.0 * a) / md;
      out(idx(head), 1) = 1.0 - 2.0 * a;
      break;
    case TwoBlockVariant::LWeighted:
      out.topLeftCorner(2, 2).setConstant(a);
      for (std::size_t k = 0; k < m; ++k) {
        out(idx(head + k), 0) = (1.0 - 2.0 * a) / (1.0 - a) * (l(idx(k)) - a / md);
        out(idx(head + k), 1) = (1.0 - 2.0 * a) / md;
      }
      break;
    case TwoBlockVariant::SingleRow:
      out(0, 0) = a;
      for (std::size_t k = 0; k < m; ++k) out(idx(head + k), 0) = l(idx(k)) - a / md;
      break;
  }
  return validate_stochastic(NonNegativeMatrix(std::move(out)));
}

IndexSet two_block_kept(std::size_t m, TwoBlockVariant variant) {
  const std::size_t head = variant == TwoBlockVariant::SingleRow ? 1 : 2;
  std::vector<std::size_t> kept(m);
  std::iota(kept.begin(), kept.end(), head);
  return IndexSet::from_zero_based(std::move(kept), head + m);
}

StochasticMatrix make_banded(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m < 1 || m > n)
    throw Error(ErrorCode::PreconditionViolation, "half-bandwidth must lie in 1..n");
  Rng rng(derive_seed(seed, 0));
  DenseMatrix a = DenseMatrix::Zero(idx(n), idx(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if ((i > k ? i - k : k - i) <= m - 1) a(idx(i), idx(k)) = uniform(rng, 0.1, 1.0);
  return project_columns(NonNegativeMatrix(std::move(a)));
}

StochasticMatrix make_near_averaging(std::size_t n, double c, std::uint64_t seed) {
  if (n == 0 || !(c > 0.0)) throw Error(ErrorCode::PreconditionViolation, "need n >= 1, c > 0");
  const double nd = static_cast<double>(n);
  const double eps = std::exp(-c * nd);
  const double lhs = 16.0 * std::exp(-c * nd / 2.0) + 3.0 * nd * eps;
  if (lhs > 1.0)
    throw Error(ErrorCode::PreconditionViolation,
                "n = " + std::to_string(n) + " is too small for this decay rate", n, 0, lhs);
  Rng rng(derive_seed(seed, 0));
  DenseMatrix a(idx(n), idx(n));
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) a(i, j) = 1.0 / nd + uniform(rng, 0.0, 1.0) * eps;
  // Column sums are >= 1, so normalizing only shrinks entries.
  return project_columns(NonNegativeMatrix(std::move(a)));
}

OneZeroInstance gen_one_zero_irreducible(std::size_t n, std::uint64_t seed) {
  if (n < 3) throw Error(ErrorCode::PreconditionViolation, "need n >= 3");
  Rng rng(derive_seed(seed, 0));
  DenseMatrix a(idx(n), idx(n));
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) a(i, j) = uniform(rng, 0.1, 1.0);
  const auto zeros = permutation(n, rng);
  for (std::size_t i = 0; i < n; ++i)
    if (std::bernoulli_distribution(0.5)(rng)) a(idx(i), idx(zeros[i])) = 0.0;

  const std::size_t pivot = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  if (a(idx(pivot), idx(zeros[pivot])) == 0.0)
    a(idx(pivot), idx(zeros[pivot])) = uniform(rng, 0.1, 1.0);
  const Eigen::RowVectorXd sums = a.colwise().sum();
  double others = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j)
    if (j != pivot) others = std::min(others, sums(idx(j)));
  if (!(sums(idx(pivot)) < others)) a.col(idx(pivot)) *= 0.9 * others / sums(idx(pivot));
  return {std::move(a), pivot};
}

StochasticMatrix gen_bounded_zeros(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < m + 2) throw Error(ErrorCode::PreconditionViolation, "need n >= m + 2");
  Rng rng(derive_seed(seed, 0));
  DenseMatrix a(idx(n), idx(n));
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) a(i, j) = uniform(rng, 0.1, 1.0);
  // Each permutation removes at most one entry per row and per column.
  for (std::size_t t = 0; t < m; ++t) {
    const auto perm = permutation(n, rng);
    for (std::size_t i = 0; i < n; ++i)
      if (std::bernoulli_distribution(0.5)(rng)) a(idx(i), idx(perm[i])) = 0.0;
  }
  return project_columns(NonNegativeMatrix(std::move(a)));
}

PrimitiveBlockInstance gen_primitive_block(std::size_t n, std::size_t kept, std::uint64_t seed) {
  if (kept < 1 || kept >= n) throw Error(ErrorCode::PreconditionViolation, "need 1 <= kept < n");
  Rng rng(derive_seed(seed, 0));
  DenseMatrix a = DenseMatrix::Zero(idx(n), idx(n));
  // Vertices 0..kept-1 form S, the rest S̄.
  for (std::size_t i = kept; i < n; ++i)
    for (std::size_t j = kept; j < n; ++j) a(idx(i), idx(j)) = uniform(rng, 0.1, 1.0);
  for (std::size_t i = 0; i < kept; ++i)
    for (std::size_t j = 0; j < kept; ++j)
      if (std::bernoulli_distribution(0.3)(rng)) a(idx(i), idx(j)) = uniform(rng, 0.1, 1.0);
  std::uniform_int_distribution<std::size_t> pick_e(kept, n - 1), pick_s(0, kept - 1);
  for (std::size_t j = 0; j < kept; ++j) a(idx(pick_e(rng)), idx(j)) = uniform(rng, 0.1, 1.0);
  for (std::size_t i = 0; i < kept; ++i) a(idx(i), idx(pick_e(rng))) = uniform(rng, 0.1, 1.0);
  for (std::size_t j = kept; j < n; ++j) a(idx(pick_s(rng)), idx(j)) = uniform(rng, 0.1, 1.0);
  for (std::size_t i = 0; i < kept; ++i)
    for (std::size_t j = kept; j < n; ++j)
      if (std::bernoulli_distribution(0.2)(rng)) a(idx(i), idx(j)) = uniform(rng, 0.1, 1.0);
  return {project_columns(NonNegativeMatrix(std::move(a))), IndexSet::leading(kept, n)};
}

StochasticMatrix gen_doubly_stochastic(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::PreconditionViolation, "n must be positive");
  Rng rng(derive_seed(seed, 0));
  DenseMatrix x(idx(n), idx(n));
  for (Index i = 0; i < x.rows(); ++i)
    for (Index j = 0; j < x.cols(); ++j) x(i, j) = uniform(rng, 0.1, 1.0);
  DenseMatrix m = 0.5 * (x + x.transpose());
  for (int sweep = 0; sweep < 10000; ++sweep) {
    for (Index i = 0; i < m.rows(); ++i) m.row(i) /= m.row(i).sum();
    for (Index j = 0; j < m.cols(); ++j) m.col(j) /= m.col(j).sum();
    if ((m.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-15) break;
  }
  return project_columns(NonNegativeMatrix(std::move(m)));
}

StochasticMatrix make_class_structured(const std::vector<ClassSpec>& classes,
                                       std::size_t transients, std::uint64_t seed) {
  if (classes.empty()) throw Error(ErrorCode::PreconditionViolation, "need at least one class");
  if (!classes.front().essential)
    throw Error(ErrorCode::PreconditionViolation, "the first class must be essential");
  std::size_t n = transients;
  for (const auto& c : classes) {
    if (c.size == 0 || c.period == 0 || c.period > c.size)
      throw Error(ErrorCode::PreconditionViolation, "class needs 1 <= period <= size");
    n += c.size;
  }
  Rng rng(derive_seed(seed, 0));
  const auto weight = [&] { return uniform(rng, 0.2, 1.0); };
  DenseMatrix a = DenseMatrix::Zero(idx(n), idx(n));

  std::size_t offset = 0;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const auto [size, period, essential] = classes[c];
    // Vertex t of the class sits in cyclic group t % period; edges step
    // group g -> g + 1, so every cycle length is a multiple of the period.
    for (std::size_t j = 0; j < size; ++j)
      for (std::size_t i = 0; i < size; ++i)
        if (period == 1 || i % period == (j % period + 1) % period)
          a(idx(offset + i), idx(offset + j)) = weight();
    if (!essential) {
      std::uniform_int_distribution<std::size_t> leaker(0, size - 1), target(0, offset - 1);
      const std::size_t leaks = 1 + leaker(rng) % 2;
      for (std::size_t t = 0; t < leaks; ++t)
        a(idx(target(rng)), idx(offset + leaker(rng))) = weight();
    }
    offset += size;
  }
  const std::size_t class_vertices = offset;
  std::uniform_int_distribution<std::size_t> target(0, class_vertices - 1), count(1, 3);
  for (std::size_t t = 0; t < transients; ++t) {
    const std::size_t j = class_vertices + t;
    const std::size_t k = count(rng);
    for (std::size_t r = 0; r < k; ++r) a(idx(target(rng)), idx(j)) = weight();
  }

  const auto perm = permutation(n, rng);
  DenseMatrix shuffled(idx(n), idx(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) shuffled(idx(perm[i]), idx(perm[j])) = a(idx(i), idx(j));
  return project_columns(NonNegativeMatrix(std::move(shuffled)));
}

}  // namespace isored
