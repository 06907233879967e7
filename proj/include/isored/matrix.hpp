#pragma once

// Value types shared by every module: square non-negative / column-stochastic
// matrices (dense or CSC sparse), probability vectors and vertex index sets.
//
// Convention: a_ij is the probability of the transition j -> i, so columns
// are probability distributions. Indices are 0-based inside the library and
// 1-based at every external interface.

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "isored/error.hpp"

namespace isored {

using DenseMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor>;
using Vector = Eigen::VectorXd;

inline constexpr double kStochasticTolerance = 1e-12;
/// Below this fraction of non-zeros a matrix is stored sparse.
inline constexpr double kSparseDensityThreshold = 0.05;

/// Sorted, duplicate-free subset of {0, ..., universe - 1}.
class IndexSet {
 public:
  IndexSet() = default;

  static IndexSet from_zero_based(std::vector<std::size_t> indices,
                                  std::size_t universe);
  static IndexSet from_one_based(const std::vector<std::size_t>& indices,
                                 std::size_t universe);
  static IndexSet all(std::size_t universe);
  /// {0, ..., count - 1}
  static IndexSet leading(std::size_t count, std::size_t universe);

  IndexSet complement() const;

  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  std::size_t universe() const noexcept { return universe_; }
  std::size_t operator[](std::size_t k) const { return indices_[k]; }
  bool contains(std::size_t i) const;
  /// Position of `i` inside the set, or size() when absent.
  std::size_t position(std::size_t i) const;

  std::span<const std::size_t> indices() const noexcept { return indices_; }
  std::vector<std::size_t> to_one_based() const;

  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  IndexSet(std::vector<std::size_t> sorted, std::size_t universe)
      : indices_(std::move(sorted)), universe_(universe) {}

  std::vector<std::size_t> indices_;
  std::size_t universe_ = 0;
};

/// Square matrix held either densely (row-major) or as compressed columns.
class SquareMatrix {
 public:
  std::size_t size() const noexcept;
  bool is_sparse() const noexcept {
    return std::holds_alternative<SparseMatrix>(storage_);
  }
  std::size_t nonzeros() const;

  double operator()(std::size_t i, std::size_t j) const;

  /// Throws PreconditionViolation when the storage is the other kind.
  const DenseMatrix& dense() const;
  const SparseMatrix& sparse() const;

  DenseMatrix to_dense() const;
  double column_sum(std::size_t j) const;

  /// y = M x.
  Vector apply(const Vector& x) const;

 protected:
  SquareMatrix() = default;
  explicit SquareMatrix(DenseMatrix m) : storage_(std::move(m)) {}
  explicit SquareMatrix(SparseMatrix m) : storage_(std::move(m)) {}

  std::variant<DenseMatrix, SparseMatrix> storage_;
};

/// Square matrix with non-negative finite entries.
class NonNegativeMatrix : public SquareMatrix {
 public:
  explicit NonNegativeMatrix(DenseMatrix m);
  explicit NonNegativeMatrix(SparseMatrix m);

  /// Stores sparse when the density is below kSparseDensityThreshold.
  static NonNegativeMatrix with_auto_storage(const DenseMatrix& m);
};

class StochasticMatrix;
StochasticMatrix validate_stochastic(const NonNegativeMatrix& m);
StochasticMatrix project_columns(const NonNegativeMatrix& m);

/// Column-stochastic matrix. Only obtainable through validate_stochastic or
/// project_columns, so every instance satisfies the column-sum invariant.
class StochasticMatrix : public SquareMatrix {
 public:
  /// Shorthand for validate_stochastic(NonNegativeMatrix(m)).
  static StochasticMatrix from_dense(const DenseMatrix& m);

  StochasticMatrix with_dense_storage() const;
  StochasticMatrix with_auto_storage() const;

 private:
  struct Checked {};
  StochasticMatrix(Checked, DenseMatrix m) : SquareMatrix(std::move(m)) {}
  StochasticMatrix(Checked, SparseMatrix m) : SquareMatrix(std::move(m)) {}

  friend StochasticMatrix validate_stochastic(const NonNegativeMatrix& m);
  friend StochasticMatrix project_columns(const NonNegativeMatrix& m);
};

/// Non-negative vector summing to one.
class ProbabilityVector {
 public:
  /// Strict: throws InvalidProbabilityVector unless entries are >= 0 and the
  /// sum is within kStochasticTolerance of one.
  static ProbabilityVector validated(Vector v);
  /// Clamps negative entries to zero and rescales; requires a positive sum.
  static ProbabilityVector normalized(Vector v);
  static ProbabilityVector uniform(std::size_t n);

  std::size_t size() const noexcept { return static_cast<std::size_t>(v_.size()); }
  double operator[](std::size_t i) const { return v_(static_cast<Eigen::Index>(i)); }
  const Vector& values() const noexcept { return v_; }

 private:
  explicit ProbabilityVector(Vector v) : v_(std::move(v)) {}
  Vector v_;
};

/// Rows and columns of `m` selected by the two index sets, order preserved.
DenseMatrix submatrix(const DenseMatrix& m, const IndexSet& rows,
                      const IndexSet& cols);
DenseMatrix submatrix(const SquareMatrix& m, const IndexSet& rows,
                      const IndexSet& cols);

double one_norm(const Vector& v);
/// Euclidean norm of A v - v.
double residual(const StochasticMatrix& a, const Vector& v);
double residual(const StochasticMatrix& a, const ProbabilityVector& v);

}  // namespace isored
