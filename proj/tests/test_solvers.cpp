#include <catch_amalgamated.hpp>

#include <cmath>

#include "helpers.hpp"
#include "isored/randgen.hpp"
#include "isored/solvers.hpp"
#include "oracles.hpp"

using namespace isored;
using testing::error_code;
using testing::stochastic;

namespace {

const StochasticMatrix kTwo = stochastic({{0, 0.9}, {1, 0.1}});

double dist(const ProbabilityVector& v, const Vector& w) { return (v.values() - w).norm(); }

Vector example_star() {
  Vector v(3);
  v << 0.9, 1.0, 0.55;
  return v / v.sum();
}

}  // namespace

TEST_CASE("random simplex points", "[solvers]") {
  const auto p = random_simplex_point(50, 4);
  CHECK(p.values().sum() == Catch::Approx(1.0));
  CHECK(p.values().minCoeff() > 0.0);
  CHECK(random_simplex_point(50, 4).values() == p.values());
  CHECK(random_simplex_point(50, 5).values() != p.values());
}

TEST_CASE("power iteration", "[solvers]") {
  SolverConfig cfg;
  cfg.seed = 3;
  const auto avg = perron_frobenius(testing::averaging(4), cfg);
  CHECK(avg.iterations <= 2);
  CHECK(dist(avg.v, Vector::Constant(4, 0.25)) <= 1e-15);

  const auto two = perron_frobenius(kTwo, cfg);
  Vector star(2);
  star << 0.9 / 1.9, 1.0 / 1.9;
  CHECK(two.converged);
  CHECK(dist(two.v, star) <= 1e-7);
  const double predicted = std::log(1e-8) / std::log(0.9);
  CHECK(std::abs(static_cast<double>(two.iterations) - predicted) <= 0.15 * predicted);

  Vector start(2);
  start << 0.3, 0.7;
  const auto fixed = perron_frobenius(testing::identity(2), ProbabilityVector::validated(start), cfg);
  CHECK(fixed.converged);
  CHECK(fixed.iterations == 1);
  CHECK(fixed.v.values() == start);

  SolverConfig capped = cfg;
  capped.max_iters = 5;
  const auto short_run = perron_frobenius(kTwo, capped);
  CHECK_FALSE(short_run.converged);
  CHECK(short_run.iterations == 5);

  SolverConfig bad = cfg;
  bad.precision = 0;
  CHECK(error_code([&] { perron_frobenius(kTwo, bad); }) == ErrorCode::PreconditionViolation);
}

TEST_CASE("direct solve", "[solvers]") {
  Vector star(2);
  star << 0.9 / 1.9, 1.0 / 1.9;
  CHECK(dist(direct_stationary(kTwo).v, star) <= 1e-15);
  CHECK(dist(direct_stationary(testing::example_a()).v, example_star()) <= 1e-14);
  CHECK(error_code([] { direct_stationary(testing::identity(2)); }) == ErrorCode::SingularSystem);
}

TEST_CASE("isospectral scheme on the three-state example", "[solvers]") {
  SolverConfig cfg;
  cfg.precision = 10;
  cfg.strategy = SelectionStrategy::first(2);
  for (auto inner : {InnerSolver::PerronFrobenius, InnerSolver::Direct}) {
    cfg.inner = inner;
    for (auto mode : {ReductionMode::Block, ReductionMode::Sequential}) {
      cfg.mode = mode;
      const auto out = isospectral_stationary(testing::example_a(), cfg);
      CHECK(out.method == SolveMethod::Isospectral);
      CHECK(out.residual <= 1e-9);
      CHECK(dist(out.v, example_star()) <= 1e-9);
      REQUIRE(out.reduction);
      CHECK(out.reduction->reduced.size() == 2);
    }
  }
}

TEST_CASE("keeping every vertex falls back to the inner solver", "[solvers]") {
  SolverConfig cfg;
  cfg.seed = 9;
  cfg.inner = InnerSolver::PerronFrobenius;
  cfg.strategy = SelectionStrategy::first(3);
  const auto iso = isospectral_stationary(testing::example_a(), cfg);
  const auto pf = perron_frobenius(testing::example_a(), cfg);
  CHECK(iso.v.values() == pf.v.values());
  CHECK(iso.iterations == pf.iterations);
  CHECK_FALSE(iso.reduction);
}

TEST_CASE("scheme agrees with an eigenvector oracle", "[solvers]") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const std::size_t n = 20 + 10 * seed;
    const auto a = gen_irreducible_sparse(n, 3, BurrConfig{0.5}, seed);
    SolverConfig cfg;
    cfg.strategy = SelectionStrategy::random(n / 10, seed);
    const auto out = isospectral_stationary(a, cfg);
    const Vector expected = oracle::stationary_by_eigenvector(a.to_dense());
    CHECK(out.residual <= 1e-12);
    CHECK(dist(out.v, expected) <= 1e-9);
    CHECK(dist(direct_stationary(a).v, expected) <= 1e-9);
  }
}

TEST_CASE("singular selections are redrawn", "[solvers]") {
  // Vertices 3 and 4 form a closed pair; any S missing both is singular.
  DenseMatrix m = DenseMatrix::Zero(5, 5);
  m(2, 3) = 1;
  m(3, 2) = 1;
  m.col(0) << 0.2, 0.2, 0.2, 0.2, 0.2;
  m.col(1) << 0.5, 0, 0.5, 0, 0;
  m.col(4) << 0, 0.5, 0, 0, 0.5;
  const auto a = StochasticMatrix::from_dense(m);
  bool saw_retry = false;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    SolverConfig cfg;
    cfg.inner = InnerSolver::Direct;
    cfg.strategy = SelectionStrategy::random(2, seed);
    cfg.max_singular_retries = 50;
    const auto out = isospectral_stationary(a, cfg);
    saw_retry = saw_retry || out.singular_retries > 0;
    CHECK((out.reduction->kept.contains(2) || out.reduction->kept.contains(3)));
    CHECK(out.residual <= 1e-12);
  }
  CHECK(saw_retry);

  SolverConfig fixed;
  fixed.strategy = SelectionStrategy::first(2);
  CHECK(error_code([&] { isospectral_stationary(a, fixed); }) == ErrorCode::SingularElimination);
}

TEST_CASE("inner radius estimates", "[solvers]") {
  Vector two(2);
  two << 0.9 / 1.9, 1.0 / 1.9;
  CHECK(estimate_inner_radius(kTwo, ProbabilityVector::validated(two), 1) ==
        Catch::Approx(0.9).margin(2e-3));
  CHECK(estimate_inner_radius(testing::averaging(5), ProbabilityVector::uniform(5), 1) <= 1e-6);
  CHECK(estimate_inner_radius(stochastic({{0, 1}, {1, 0}}), ProbabilityVector::uniform(2), 1) ==
        Catch::Approx(1.0).margin(1e-3));
  CHECK(estimate_inner_radius(testing::example_a(), ProbabilityVector::validated(example_star()), 2) ==
        Catch::Approx(std::sqrt(0.45)).margin(2e-3));
}

TEST_CASE("re-reduction triggers on a slow reduced chain", "[solvers]") {
  const auto a = gen_irreducible_sparse(60, 2, BurrConfig{0.2}, 17);
  SolverConfig cfg;
  cfg.strategy = SelectionStrategy::random(6, 1);
  cfg.max_rereductions = 3;
  cfg.regap_threshold = 1e-9;
  const auto out = isospectral_stationary(a, cfg);
  CHECK(out.rereductions == 3);
  CHECK(out.reduced_radius.has_value());
  CHECK(out.residual <= 1e-10);
}
