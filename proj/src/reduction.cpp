#include "isored/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>
#include <string>

#include <Eigen/LU>
#include <Eigen/SparseLU>

#include "isored/kernels.hpp"

namespace isored {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

void check_kept(const StochasticMatrix& a, const IndexSet& kept) {
  if (kept.universe() != a.size())
    throw Error(ErrorCode::DimensionMismatch,
                "kept set over " + std::to_string(kept.universe()) + " vertices, matrix has " +
                    std::to_string(a.size()));
  if (kept.empty()) throw Error(ErrorCode::PreconditionViolation, "kept set is empty");
}

double max_column_drift(const DenseMatrix& r) {
  double drift = 0.0;
  for (Index j = 0; j < r.cols(); ++j) drift = std::max(drift, std::abs(r.col(j).sum() - 1.0));
  return drift;
}

ReductionRecord finish(IndexSet kept, DenseMatrix r, DenseMatrix lift,
                       std::vector<std::size_t> pivots, double condition) {
  const double drift = max_column_drift(r);
  StochasticMatrix reduced = project_columns(NonNegativeMatrix(std::move(r)));
  return ReductionRecord{std::move(kept), std::move(reduced), std::move(lift),
                         std::move(pivots), condition, drift};
}

ReductionRecord identity_record(const StochasticMatrix& a, const IndexSet& kept) {
  return ReductionRecord{kept, a, DenseMatrix(0, idx(a.size())), {}, 1.0, 0.0};
}

// Eliminates the complement of `kept` from a dense working copy of `a`.
// `next` picks the following pivot among `remaining` given the current matrix.
template <typename PickPivot>
ReductionRecord sequential_impl(const StochasticMatrix& a, const IndexSet& kept, double delta,
                                PickPivot next) {
  const std::size_t n = a.size();
  const IndexSet eliminated = kept.complement();
  if (eliminated.empty()) return identity_record(a, kept);

  DenseMatrix m = a.to_dense();
  std::vector<std::size_t> alive(n);
  std::iota(alive.begin(), alive.end(), 0);
  std::vector<std::size_t> remaining(eliminated.begin(), eliminated.end());
  std::vector<std::size_t> pivots;
  pivots.reserve(remaining.size());
  // factors.row(t): m_{k,.} / (1 - m_kk) at the time pivot t was removed.
  DenseMatrix factors = DenseMatrix::Zero(idx(remaining.size()), idx(n));
  double amplification = 1.0;

  while (!remaining.empty()) {
    const std::size_t k = next(m, remaining);
    const double diag = m(idx(k), idx(k));
    if (!(diag < 1.0 - delta))
      throw Error(ErrorCode::NoViablePivot,
                  "vertex " + std::to_string(k + 1) + " has diagonal " + std::to_string(diag),
                  k + 1, 0, diag);
    const double inv = 1.0 / (1.0 - diag);
    amplification = std::max(amplification, inv);
    const std::size_t t = pivots.size();
    for (std::size_t j : alive)
      if (j != k) factors(idx(t), idx(j)) = m(idx(k), idx(j)) * inv;

    kernels::eliminate(m, alive, k, 1.0);
    alive.erase(std::find(alive.begin(), alive.end(), k));
    remaining.erase(std::find(remaining.begin(), remaining.end(), k));
    pivots.push_back(k);
  }

  // Back-substitute: each eliminated vertex is a combination of vertices that
  // were still alive when it was removed.
  const std::size_t s = kept.size();
  DenseMatrix lift = DenseMatrix::Zero(idx(eliminated.size()), idx(s));
  for (std::size_t t = pivots.size(); t-- > 0;) {
    const std::size_t k = pivots[t];
    auto row = lift.row(idx(eliminated.position(k)));
    for (std::size_t b = 0; b < s; ++b) row(idx(b)) = factors(idx(t), idx(kept[b]));
    for (std::size_t u = t + 1; u < pivots.size(); ++u) {
      const double f = factors(idx(t), idx(pivots[u]));
      if (f != 0.0) row += f * lift.row(idx(eliminated.position(pivots[u])));
    }
  }

  return finish(kept, submatrix(m, kept, kept), std::move(lift), std::move(pivots),
                amplification);
}

// Same formula with a sparse LU of (I - A_EE); used when A is stored sparse.
ReductionRecord reduce_block_sparse(const StochasticMatrix& a, const IndexSet& kept,
                                    const IndexSet& eliminated) {
  const SparseMatrix& sa = a.sparse();
  const std::size_t n = a.size();
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> pos_s(n, none), pos_e(n, none);
  for (std::size_t b = 0; b < kept.size(); ++b) pos_s[kept[b]] = b;
  for (std::size_t e = 0; e < eliminated.size(); ++e) pos_e[eliminated[e]] = e;

  const Index s = idx(kept.size()), m = idx(eliminated.size());
  DenseMatrix r = DenseMatrix::Zero(s, s);
  Eigen::MatrixXd a_es = Eigen::MatrixXd::Zero(m, s);
  std::vector<Eigen::Triplet<double>> b_entries, se_entries;
  for (Index e = 0; e < m; ++e) b_entries.emplace_back(e, e, 1.0);
  for (Index j = 0; j < sa.outerSize(); ++j) {
    const auto cj = static_cast<std::size_t>(j);
    for (SparseMatrix::InnerIterator it(sa, j); it; ++it) {
      const auto ri = static_cast<std::size_t>(it.row());
      if (pos_s[ri] != none && pos_s[cj] != none)
        r(idx(pos_s[ri]), idx(pos_s[cj])) = it.value();
      else if (pos_e[ri] != none && pos_s[cj] != none)
        a_es(idx(pos_e[ri]), idx(pos_s[cj])) = it.value();
      else if (pos_s[ri] != none)
        se_entries.emplace_back(idx(pos_s[ri]), idx(pos_e[cj]), it.value());
      else
        b_entries.emplace_back(idx(pos_e[ri]), idx(pos_e[cj]), -it.value());
    }
  }
  SparseMatrix b(m, m), a_se(s, m);
  b.setFromTriplets(b_entries.begin(), b_entries.end());
  a_se.setFromTriplets(se_entries.begin(), se_entries.end());

  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(b);
  if (lu.info() != Eigen::Success)
    throw Error(ErrorCode::SingularElimination, "sparse LU of (I - A_EE) failed: " + lu.lastErrorMessage());
  const Eigen::VectorXd exit_mass = lu.transpose().solve(Eigen::VectorXd::Ones(m));
  double b_norm = 0.0;
  for (Index j = 0; j < b.outerSize(); ++j) {
    double col = 0.0;
    for (SparseMatrix::InnerIterator it(b, j); it; ++it) col += std::abs(it.value());
    b_norm = std::max(b_norm, col);
  }
  const double condition = b_norm * exit_mass.cwiseAbs().maxCoeff();
  if (!std::isfinite(condition) || condition > kSingularEliminationThreshold)
    throw Error(ErrorCode::SingularElimination,
                "(I - A_EE) has condition " + std::to_string(condition), 0, 0, condition);

  Eigen::MatrixXd x = lu.solve(a_es);
  if (!x.allFinite()) throw Error(ErrorCode::SingularElimination, "non-finite lift", 0, 0, condition);
  DenseMatrix lift = x.cwiseMax(0.0);
  r += a_se * lift;
  return finish(kept, std::move(r), std::move(lift),
                std::vector<std::size_t>(eliminated.begin(), eliminated.end()), condition);
}

}  // namespace

ReductionRecord reduce_block(const StochasticMatrix& a, const IndexSet& kept) {
  check_kept(a, kept);
  const IndexSet eliminated = kept.complement();
  if (eliminated.empty()) return identity_record(a, kept);
  if (a.is_sparse()) return reduce_block_sparse(a, kept, eliminated);

  const DenseMatrix a_ss = submatrix(a, kept, kept);
  const DenseMatrix a_se = submatrix(a, kept, eliminated);
  const DenseMatrix a_es = submatrix(a, eliminated, kept);
  const Eigen::MatrixXd b =
      Eigen::MatrixXd::Identity(idx(eliminated.size()), idx(eliminated.size())) -
      Eigen::MatrixXd(submatrix(a, eliminated, eliminated));

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
  // (I - A_EE)^{-1} is entrywise non-negative, so its 1-norm is the largest
  // entry of (I - A_EE)^{-T} 1.
  const Eigen::VectorXd exit_mass =
      lu.transpose().solve(Eigen::VectorXd::Ones(idx(eliminated.size())));
  const double condition =
      b.cwiseAbs().colwise().sum().maxCoeff() * exit_mass.cwiseAbs().maxCoeff();
  if (!std::isfinite(condition) || condition > kSingularEliminationThreshold)
    throw Error(ErrorCode::SingularElimination,
                "(I - A_EE) has condition " + std::to_string(condition), 0, 0, condition);

  DenseMatrix lift = lu.solve(Eigen::MatrixXd(a_es));
  if (!lift.allFinite())
    throw Error(ErrorCode::SingularElimination, "non-finite lift", 0, 0, condition);
  lift = lift.cwiseMax(0.0);

  DenseMatrix r = a_ss + a_se * lift;
  return finish(kept, std::move(r), std::move(lift),
                std::vector<std::size_t>(eliminated.begin(), eliminated.end()), condition);
}

ReductionRecord eliminate_node(const StochasticMatrix& a, std::size_t k) {
  const std::size_t n = a.size();
  if (k >= n)
    throw Error(ErrorCode::IndexOutOfRange, "vertex " + std::to_string(k + 1), k + 1);
  if (n < 2) throw Error(ErrorCode::PreconditionViolation, "cannot eliminate the only vertex");
  const double diag = a(k, k);
  if (!(diag < 1.0 - kStochasticTolerance))
    throw Error(ErrorCode::AbsorbingPivot,
                "vertex " + std::to_string(k + 1) + " has a_kk = " + std::to_string(diag), k + 1,
                0, diag);

  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i)
    if (i != k) rest.push_back(i);
  IndexSet kept = IndexSet::from_zero_based(rest, n);

  DenseMatrix m = a.to_dense();
  std::vector<std::size_t> alive(n);
  std::iota(alive.begin(), alive.end(), 0);
  const double inv = 1.0 / (1.0 - diag);
  DenseMatrix lift(1, idx(n - 1));
  for (std::size_t b = 0; b < rest.size(); ++b) lift(0, idx(b)) = m(idx(k), idx(rest[b])) * inv;
  kernels::eliminate(m, alive, k, 1.0);
  DenseMatrix r = submatrix(m, kept, kept);
  return finish(std::move(kept), std::move(r), std::move(lift), {k}, inv);
}

ReductionRecord reduce_sequential(const StochasticMatrix& a, const IndexSet& kept, double delta) {
  check_kept(a, kept);
  return sequential_impl(a, kept, delta,
                         [](const DenseMatrix& m, const std::vector<std::size_t>& remaining) {
                           return *std::min_element(
                               remaining.begin(), remaining.end(),
                               [&](std::size_t x, std::size_t y) {
                                 return m(idx(x), idx(x)) < m(idx(y), idx(y));
                               });
                         });
}

ReductionRecord reduce_sequential(const StochasticMatrix& a, const IndexSet& kept,
                                  const std::vector<std::size_t>& order, double delta) {
  check_kept(a, kept);
  std::vector<std::size_t> sorted(order);
  std::sort(sorted.begin(), sorted.end());
  const IndexSet eliminated = kept.complement();
  if (!std::equal(sorted.begin(), sorted.end(), eliminated.begin(), eliminated.end()))
    throw Error(ErrorCode::PreconditionViolation,
                "elimination order is not a permutation of the complement");
  std::size_t step = 0;
  return sequential_impl(a, kept, delta,
                         [&](const DenseMatrix&, const std::vector<std::size_t>&) {
                           return order[step++];
                         });
}

ReductionRecord reduce(const StochasticMatrix& a, const IndexSet& kept, ReductionMode mode) {
  return mode == ReductionMode::Block ? reduce_block(a, kept) : reduce_sequential(a, kept);
}

DenseMatrix reduce_block_at(const DenseMatrix& m, const IndexSet& kept, double lambda) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NotSquare, "reduce_block_at");
  if (kept.universe() != static_cast<std::size_t>(m.rows()))
    throw Error(ErrorCode::DimensionMismatch, "kept set universe");
  if (kept.empty()) throw Error(ErrorCode::PreconditionViolation, "kept set is empty");
  const IndexSet eliminated = kept.complement();
  if (eliminated.empty()) return submatrix(m, kept, kept);
  const Eigen::MatrixXd b =
      lambda * Eigen::MatrixXd::Identity(idx(eliminated.size()), idx(eliminated.size())) -
      Eigen::MatrixXd(submatrix(m, eliminated, eliminated));
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
  const double rcond = lu.rcond();
  if (!(rcond > 1.0 / kSingularEliminationThreshold))
    throw Error(ErrorCode::SingularElimination, "lambda I - M_EE is singular", 0, 0,
                1.0 / rcond);
  const Eigen::MatrixXd x = lu.solve(Eigen::MatrixXd(submatrix(m, eliminated, kept)));
  return submatrix(m, kept, kept) + submatrix(m, kept, eliminated) * x;
}

IndexSet select_subset(const StochasticMatrix& a, const SelectionStrategy& strategy) {
  const std::size_t n = a.size();
  const std::size_t s = strategy.keep;
  if (s == 0 || s > n)
    throw Error(ErrorCode::PreconditionViolation,
                "kept size " + std::to_string(s) + " outside 1.." + std::to_string(n));
  switch (strategy.kind) {
    case SelectionKind::First:
      return IndexSet::leading(s, n);

    case SelectionKind::Random: {
      std::mt19937_64 rng(strategy.seed);
      std::vector<std::size_t> v(n);
      std::iota(v.begin(), v.end(), 0);
      for (std::size_t i = 0; i < s; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(v[i], v[pick(rng)]);
      }
      v.resize(s);
      return IndexSet::from_zero_based(std::move(v), n);
    }

    case SelectionKind::PivotGreedy: {
      if (!(strategy.delta > 0.0 && strategy.delta < 1.0))
        throw Error(ErrorCode::PreconditionViolation, "pivot delta outside (0, 1)");
      DenseMatrix m = a.to_dense();
      const DenseMatrix original = m;
      std::vector<std::size_t> alive(n);
      std::iota(alive.begin(), alive.end(), 0);
      while (alive.size() > s) {
        std::optional<std::size_t> best;
        for (std::size_t k : alive) {
          const double d = m(idx(k), idx(k));
          if (d < 1.0 - strategy.delta && (!best || d < m(idx(*best), idx(*best)))) best = k;
        }
        if (best) {
          kernels::eliminate(m, alive, *best, 1.0);
        } else {
          // Nothing left is safely eliminable; fall back to the original
          // diagonal so vertices absorbing in A itself are dropped last.
          best = *std::min_element(alive.begin(), alive.end(), [&](std::size_t x, std::size_t y) {
            const double dx = original(idx(x), idx(x)), dy = original(idx(y), idx(y));
            return dx != dy ? dx < dy : x > y;
          });
        }
        alive.erase(std::find(alive.begin(), alive.end(), *best));
      }
      return IndexSet::from_zero_based(std::move(alive), n);
    }
  }
  throw Error(ErrorCode::PreconditionViolation, "unknown selection strategy");
}

ProbabilityVector reconstruct_stationary(const ReductionRecord& rec,
                                         const ProbabilityVector& v_reduced) {
  const std::size_t s = rec.kept.size();
  if (v_reduced.size() != s)
    throw Error(ErrorCode::DimensionMismatch,
                "reduced vector has length " + std::to_string(v_reduced.size()) + ", expected " +
                    std::to_string(s));
  const IndexSet eliminated = rec.kept.complement();
  Vector full = Vector::Zero(idx(rec.kept.universe()));
  for (std::size_t b = 0; b < s; ++b) full(idx(rec.kept[b])) = v_reduced[b];
  if (!eliminated.empty()) {
    const Vector tail = rec.lift * v_reduced.values();
    for (std::size_t e = 0; e < eliminated.size(); ++e) full(idx(eliminated[e])) = tail(idx(e));
  }
  return ProbabilityVector::normalized(std::move(full));
}

std::uint64_t reduction_cost(std::uint64_t n, std::uint64_t s, ReductionMode mode) {
  if (s < 1 || s >= n)
    throw Error(ErrorCode::PreconditionViolation, "reduction cost needs 1 <= s < n");
  if (mode == ReductionMode::Block) {
    const std::uint64_t e = n - s;
    return e * e * e + e * e * s + s * s * e + s * s;
  }
  return ((n + 1) * n * (n - 1) - (s + 1) * s * (s - 1)) / 3;
}

}  // namespace isored
