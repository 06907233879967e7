#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "isored/randgen.hpp"
#include "isored/reduction.hpp"
#include "isored/spectral.hpp"
#include "oracles.hpp"

using namespace isored;
using testing::dense;
using testing::error_code;
using testing::stochastic;

namespace {

double max_diff(const DenseMatrix& a, const DenseMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

const DenseMatrix kExampleR = dense({{0, 0.9}, {1, 0.1}});

}  // namespace

TEST_CASE("block reduction of the three-state example", "[reduction]") {
  const auto rec = reduce_block(testing::example_a(), IndexSet::from_one_based({1, 2}, 3));
  CHECK(max_diff(rec.reduced.to_dense(), kExampleR) == 0.0);
  CHECK(rec.pivot_order == std::vector<std::size_t>{2});
  REQUIRE(rec.lift.rows() == 1);
  CHECK(rec.lift(0, 0) == Catch::Approx(0.5));
  CHECK(rec.lift(0, 1) == Catch::Approx(0.1));
}

TEST_CASE("trivial reductions", "[reduction]") {
  const auto a = testing::example_a();
  const auto whole = reduce_block(a, IndexSet::all(3));
  CHECK(whole.reduced.to_dense() == a.to_dense());
  CHECK(whole.lift.rows() == 0);
  CHECK(whole.pivot_order.empty());

  const auto half = reduce_block(testing::averaging(2), IndexSet::from_one_based({1}, 2));
  CHECK(half.reduced(0, 0) == Catch::Approx(1.0).margin(1e-15));

  const auto seq = reduce_sequential(a, IndexSet::all(3));
  CHECK(seq.reduced.to_dense() == a.to_dense());
}

TEST_CASE("single node elimination", "[reduction]") {
  const auto rec = eliminate_node(testing::example_a(), 2);
  CHECK(max_diff(rec.reduced.to_dense(), kExampleR) <= 1e-15);

  const auto avg = eliminate_node(testing::averaging(3), 2);
  CHECK(max_diff(avg.reduced.to_dense(), DenseMatrix::Constant(2, 2, 0.5)) <= 1e-15);

  auto err = testing::caught([] { eliminate_node(testing::identity(2), 0); });
  REQUIRE(err);
  CHECK(err->code() == ErrorCode::AbsorbingPivot);
  CHECK(err->first_index() == 1);
  CHECK(error_code([] { eliminate_node(testing::example_a(), 3); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("sequential reduction matches the block formula", "[reduction]") {
  const auto seq = reduce_sequential(testing::example_a(), IndexSet::from_one_based({1, 2}, 3));
  CHECK(max_diff(seq.reduced.to_dense(), kExampleR) <= 1e-15);

  const auto a = gen_dense_stochastic(5, 42);
  const auto kept = IndexSet::from_one_based({1, 2, 5}, 5);
  const auto r34 = reduce_sequential(a, kept, std::vector<std::size_t>{2, 3});
  const auto r43 = reduce_sequential(a, kept, std::vector<std::size_t>{3, 2});
  CHECK(max_diff(r34.reduced.to_dense(), r43.reduced.to_dense()) <= 1e-10);
  CHECK(r43.pivot_order == std::vector<std::size_t>{3, 2});
  const auto block = reduce_block(a, kept);
  CHECK(max_diff(r34.reduced.to_dense(), block.reduced.to_dense()) <= 1e-12);
  CHECK(max_diff(r34.lift, block.lift) <= 1e-12);

  CHECK(error_code([&] { reduce_sequential(a, kept, std::vector<std::size_t>{2, 2}); }) ==
        ErrorCode::PreconditionViolation);
}

TEST_CASE("reductions match the textbook Schur complement", "[reduction]") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 4 + seed % 20;
    const auto a = seed % 2 ? gen_dense_stochastic(n, seed)
                            : gen_irreducible_sparse(n, 2, BurrConfig{0.5}, seed);
    const auto kept = select_subset(a, SelectionStrategy::random(1 + seed % (n - 1), seed));
    std::vector<int> s(kept.begin(), kept.end());
    const auto expected = oracle::schur_complement(a.to_dense(), s);
    const auto block = reduce_block(a, kept);
    const auto seq = reduce_sequential(a, kept);
    CHECK(max_diff(block.reduced.to_dense(), expected) <= 1e-10);
    CHECK(max_diff(seq.reduced.to_dense(), expected) <= 1e-10);
    CHECK(block.lift.minCoeff() >= 0.0);
    CHECK(diameter_tau(block.reduced) <= diameter_tau(a) + 1e-10);
  }
}

TEST_CASE("sparse and dense block paths agree", "[reduction]") {
  const auto a = gen_sparse_stochastic({400, 4, {0.2}, 8});
  REQUIRE(a.is_sparse());
  const auto kept = select_subset(a, SelectionStrategy::random(40, 3));
  const auto sparse = reduce_block(a, kept);
  const auto dense_rec = reduce_block(a.with_dense_storage(), kept);
  CHECK(max_diff(sparse.reduced.to_dense(), dense_rec.reduced.to_dense()) <= 1e-10);
  CHECK(max_diff(sparse.lift, dense_rec.lift) <= 1e-10);
}

TEST_CASE("singular elimination is refused", "[reduction]") {
  // Vertices 2 and 3 form a closed class outside S.
  const auto a = stochastic({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}});
  const auto kept = IndexSet::from_one_based({1}, 3);
  CHECK(error_code([&] { reduce_block(a, kept); }) == ErrorCode::SingularElimination);
  CHECK(error_code([&] { reduce_sequential(a, kept); }) == ErrorCode::NoViablePivot);
}

TEST_CASE("general reduction at a shift", "[reduction]") {
  const DenseMatrix m = testing::example_a().to_dense();
  const auto kept = IndexSet::from_one_based({1, 2}, 3);
  const DenseMatrix at2 = reduce_block_at(m, kept, 2.0);
  CHECK(max_diff(at2, oracle::schur_complement(m, {0, 1}, 2.0)) <= 1e-14);
  CHECK(error_code([&] { reduce_block_at(m, kept, 0.0); }) == ErrorCode::SingularElimination);
}

TEST_CASE("subset selection", "[reduction]") {
  const auto a = gen_dense_stochastic(5, 1);
  CHECK(select_subset(a, SelectionStrategy::first(2)).to_one_based() ==
        std::vector<std::size_t>{1, 2});
  const auto r1 = select_subset(a, SelectionStrategy::random(3, 7));
  const auto r2 = select_subset(a, SelectionStrategy::random(3, 7));
  CHECK(r1 == r2);
  CHECK(r1.size() == 3);

  DenseMatrix m = DenseMatrix::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 1) = 1;
  m.bottomRightCorner(2, 2).setConstant(0.5);
  const auto greedy = select_subset(StochasticMatrix::from_dense(m), SelectionStrategy::pivot_greedy(2));
  CHECK(greedy.to_one_based() == std::vector<std::size_t>{1, 2});
}

TEST_CASE("stationary reconstruction", "[reduction]") {
  const auto rec = reduce_block(testing::example_a(), IndexSet::from_one_based({1, 2}, 3));
  Vector vr(2);
  vr << 0.9, 1.0;
  const auto v = reconstruct_stationary(rec, ProbabilityVector::normalized(vr));
  CHECK(v[0] == Catch::Approx(0.9 / 2.45).margin(1e-12));
  CHECK(v[1] == Catch::Approx(1.0 / 2.45).margin(1e-12));
  CHECK(v[2] == Catch::Approx(0.55 / 2.45).margin(1e-12));

  const auto whole = reduce_block(testing::example_a(), IndexSet::all(3));
  Vector u(3);
  u << 0.2, 0.3, 0.5;
  const auto same = reconstruct_stationary(whole, ProbabilityVector::validated(u));
  CHECK(same.values() == u);

  const auto avg = reduce_block(testing::averaging(3), IndexSet::from_one_based({1, 2}, 3));
  const auto third = reconstruct_stationary(avg, ProbabilityVector::uniform(2));
  for (std::size_t i = 0; i < 3; ++i) CHECK(third[i] == Catch::Approx(1.0 / 3.0));
}

TEST_CASE("reduction cost", "[reduction]") {
  CHECK(reduction_cost(1000, 90, ReductionMode::Block) == 835479100u);
  CHECK(reduction_cost(1000, 90, ReductionMode::Sequential) == 333090030u);
  for (std::uint64_t n : {2u, 5u, 40u}) CHECK(reduction_cost(n, n - 1, ReductionMode::Sequential) == n * (n - 1));
  CHECK(error_code([] { reduction_cost(10, 10, ReductionMode::Block); }) ==
        ErrorCode::PreconditionViolation);
}
