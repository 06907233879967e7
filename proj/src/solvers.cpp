#include "isored/solvers.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <string>
#include <utility>

#include <Eigen/LU>

#include "isored/kernels.hpp"
#include "isored/randgen.hpp"

namespace isored {

namespace {

using Clock = std::chrono::steady_clock;
using Index = Eigen::Index;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void validate(const SolverConfig& cfg) {
  if (cfg.precision < 1) throw Error(ErrorCode::PreconditionViolation, "precision must be >= 1");
  if (cfg.max_iters < 1) throw Error(ErrorCode::PreconditionViolation, "max_iters must be >= 1");
  if (!(cfg.regap_threshold > 0.0 && cfg.regap_threshold < 1.0))
    throw Error(ErrorCode::PreconditionViolation, "regap threshold must lie in (0, 1)");
}

void step(const StochasticMatrix& a, const Vector& x, Vector& y) {
  if (a.is_sparse())
    kernels::matvec(a.sparse(), x, y);
  else
    kernels::matvec(a.dense(), x, y);
}

SolveOutcome make_outcome(const StochasticMatrix& a, Vector v, SolveMethod method) {
  ProbabilityVector p = ProbabilityVector::normalized(std::move(v));
  const double r = residual(a, p);
  return SolveOutcome{std::move(p), 0, r, 0.0, method, true, std::nullopt, 0, 0, std::nullopt};
}

}  // namespace

std::string_view to_string(SolveMethod m) noexcept {
  switch (m) {
    case SolveMethod::PerronFrobenius: return "pf";
    case SolveMethod::Isospectral: return "iso";
    case SolveMethod::Direct: return "direct";
  }
  return "unknown";
}

ProbabilityVector random_simplex_point(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::PreconditionViolation, "empty simplex");
  Rng rng(derive_seed(seed, 0x5eed));
  std::exponential_distribution<double> exp1(1.0);
  Vector x(static_cast<Index>(n));
  for (Index i = 0; i < x.size(); ++i) x(i) = exp1(rng);
  return ProbabilityVector::normalized(std::move(x));
}

SolveOutcome perron_frobenius(const StochasticMatrix& a, const SolverConfig& cfg) {
  return perron_frobenius(a, random_simplex_point(a.size(), cfg.seed), cfg);
}

SolveOutcome perron_frobenius(const StochasticMatrix& a, const ProbabilityVector& start,
                              const SolverConfig& cfg) {
  validate(cfg);
  if (start.size() != a.size())
    throw Error(ErrorCode::DimensionMismatch, "start vector length");
  const auto t0 = Clock::now();
  const double threshold = std::pow(10.0, -2.0 * cfg.precision);
  Vector v = start.values();
  Vector next(v.size());
  std::size_t iterations = 0;
  bool converged = false;
  while (iterations < cfg.max_iters) {
    step(a, v, next);
    ++iterations;
    next /= next.sum();
    const double delta = (next - v).squaredNorm();
    v.swap(next);
    if (delta < threshold) {
      converged = true;
      break;
    }
  }
  SolveOutcome out = make_outcome(a, std::move(v), SolveMethod::PerronFrobenius);
  out.iterations = iterations;
  out.converged = converged;
  out.wall_time = seconds_since(t0);
  return out;
}

SolveOutcome direct_stationary(const StochasticMatrix& a) {
  const auto t0 = Clock::now();
  const auto n = static_cast<Index>(a.size());
  Eigen::MatrixXd m = a.to_dense();
  m -= Eigen::MatrixXd::Identity(n, n);
  m.row(n - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(n - 1) = 1.0;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  const double rcond = lu.rcond();
  if (!(rcond > 1.0 / kSingularEliminationThreshold))
    throw Error(ErrorCode::SingularSystem,
                "stationary system is singular (more than one stationary measure?)", 0, 0, rcond);
  Vector x = lu.solve(rhs);
  if (!x.allFinite()) throw Error(ErrorCode::SingularSystem, "non-finite solution");
  SolveOutcome out = make_outcome(a, std::move(x), SolveMethod::Direct);
  out.wall_time = seconds_since(t0);
  return out;
}

SolveOutcome isospectral_stationary(const StochasticMatrix& a, const SolverConfig& cfg) {
  validate(cfg);
  const auto t0 = Clock::now();
  const std::size_t n = a.size();

  const auto solve_inner = [&](const StochasticMatrix& r) {
    const bool direct = cfg.inner == InnerSolver::Direct ||
                        (cfg.inner == InnerSolver::Automatic && r.size() <= cfg.direct_threshold);
    return direct ? direct_stationary(r) : perron_frobenius(r, cfg);
  };

  if (cfg.strategy.keep >= n) {
    SolveOutcome out = solve_inner(a);
    out.method = SolveMethod::Isospectral;
    out.wall_time = seconds_since(t0);
    return out;
  }

  SelectionStrategy strategy = cfg.strategy;
  const bool redrawable = strategy.kind == SelectionKind::Random;
  std::size_t draw = 0, singular_retries = 0, rereductions = 0;
  std::optional<ReductionRecord> rec;
  std::optional<SolveOutcome> inner;
  std::optional<double> radius;
  for (;;) {
    if (draw > 0) strategy.seed = derive_seed(cfg.strategy.seed, draw);
    const IndexSet kept = select_subset(a, strategy);
    try {
      rec = reduce(a, kept, cfg.mode);
    } catch (const Error& e) {
      const bool singular =
          e.code() == ErrorCode::SingularElimination || e.code() == ErrorCode::NoViablePivot;
      if (singular && redrawable && singular_retries < cfg.max_singular_retries) {
        ++singular_retries;
        ++draw;
        continue;
      }
      throw;
    }
    inner = solve_inner(rec->reduced);
    if (cfg.max_rereductions > 0) {
      bool slow = false;
      try {
        radius = estimate_inner_radius(rec->reduced, inner->v, derive_seed(cfg.seed, draw));
        slow = *radius > cfg.regap_threshold;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoConvergence) throw;
        radius.reset();
        slow = true;
      }
      if (slow && redrawable && rereductions < cfg.max_rereductions) {
        ++rereductions;
        ++draw;
        continue;
      }
    }
    break;
  }

  ProbabilityVector v = reconstruct_stationary(*rec, inner->v);
  const double r = residual(a, v);
  SolveOutcome out{std::move(v),          inner->iterations, r,
                   0.0,                   SolveMethod::Isospectral,
                   inner->converged,      std::move(rec),
                   singular_retries,      rereductions,
                   radius};
  out.wall_time = seconds_since(t0);
  return out;
}

double estimate_inner_radius(const StochasticMatrix& a, const ProbabilityVector& v_star,
                             std::uint64_t seed, std::size_t max_iters) {
  const std::size_t n = a.size();
  if (v_star.size() != n) throw Error(ErrorCode::DimensionMismatch, "stationary vector length");
  if (n == 1) return 0.0;
  Rng rng(derive_seed(seed, 0x1a2b));
  std::normal_distribution<double> normal;
  Vector x(static_cast<Index>(n));
  for (Index i = 0; i < x.size(); ++i) x(i) = normal(rng);
  x.array() -= x.mean();
  x.normalize();
  const Vector& vs = v_star.values();

  // log_norm[k] = log |B^k x_0|; the estimate over the window (k/2, k] is
  // exp of the mean log growth, robust to complex or negative lambda_2.
  std::vector<double> log_norm{0.0};
  Vector y(x.size());
  double previous = -1.0;
  std::size_t checkpoint = 64;
  for (std::size_t k = 1; k <= max_iters; ++k) {
    step(a, x, y);
    y -= vs * x.sum();
    const double norm = y.norm();
    if (!(norm > 1e-300)) return 0.0;
    log_norm.push_back(log_norm.back() + std::log(norm));
    x = y / norm;
    if (k == checkpoint) {
      const std::size_t half = k / 2;
      const double estimate =
          std::exp((log_norm[k] - log_norm[half]) / static_cast<double>(k - half));
      if (previous >= 0.0 && std::abs(estimate - previous) <= 1e-3 * std::max(estimate, 1e-12))
        return estimate;
      previous = estimate;
      checkpoint *= 2;
    }
  }
  throw Error(ErrorCode::NoConvergence,
              "inner radius estimate did not settle in " + std::to_string(max_iters) + " steps", 0,
              0, previous);
}

}  // namespace isored
