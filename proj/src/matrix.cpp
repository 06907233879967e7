#include "isored/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isored/kernels.hpp"

namespace isored {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

template <typename F>
void for_each_nonzero(const SparseMatrix& m, F&& f) {
  for (Index j = 0; j < m.outerSize(); ++j)
    for (SparseMatrix::InnerIterator it(m, j); it; ++it) f(it.row(), j, it.value());
}

void check_entries(const DenseMatrix& m) {
  if (m.rows() != m.cols())
    throw Error(ErrorCode::NotSquare, std::to_string(m.rows()) + "x" +
                                          std::to_string(m.cols()));
  if (m.rows() == 0) throw Error(ErrorCode::EmptyInput, "matrix has dimension 0");
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      if (!std::isfinite(v))
        throw Error(ErrorCode::NonFiniteEntry, "non-finite entry",
                    static_cast<std::size_t>(i) + 1, static_cast<std::size_t>(j) + 1);
      if (v < 0.0)
        throw Error(ErrorCode::NegativeEntry,
                    "entry (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")",
                    static_cast<std::size_t>(i) + 1, static_cast<std::size_t>(j) + 1, v);
    }
}

void check_entries(const SparseMatrix& m) {
  if (m.rows() != m.cols())
    throw Error(ErrorCode::NotSquare, std::to_string(m.rows()) + "x" +
                                          std::to_string(m.cols()));
  if (m.rows() == 0) throw Error(ErrorCode::EmptyInput, "matrix has dimension 0");
  for_each_nonzero(m, [](Index i, Index j, double v) {
    if (!std::isfinite(v))
      throw Error(ErrorCode::NonFiniteEntry, "non-finite entry",
                  static_cast<std::size_t>(i) + 1, static_cast<std::size_t>(j) + 1);
    if (v < 0.0)
      throw Error(ErrorCode::NegativeEntry,
                  "entry (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")",
                  static_cast<std::size_t>(i) + 1, static_cast<std::size_t>(j) + 1, v);
  });
}

Vector column_sums(const SquareMatrix& m) {
  Vector sums = Vector::Zero(idx(m.size()));
  if (m.is_sparse()) {
    for_each_nonzero(m.sparse(), [&](Index, Index j, double v) { sums(j) += v; });
  } else {
    const DenseMatrix& d = m.dense();
    for (Index i = 0; i < d.rows(); ++i) sums += d.row(i).transpose();
  }
  return sums;
}

SparseMatrix to_sparse(const DenseMatrix& m) {
  SparseMatrix s = m.sparseView();
  s.makeCompressed();
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// IndexSet

IndexSet IndexSet::from_zero_based(std::vector<std::size_t> indices,
                                   std::size_t universe) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  if (!indices.empty() && indices.back() >= universe)
    throw Error(ErrorCode::IndexOutOfRange,
                "index " + std::to_string(indices.back() + 1) + " exceeds " +
                    std::to_string(universe),
                indices.back() + 1);
  return IndexSet(std::move(indices), universe);
}

IndexSet IndexSet::from_one_based(const std::vector<std::size_t>& indices,
                                  std::size_t universe) {
  std::vector<std::size_t> zero;
  zero.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i == 0 || i > universe)
      throw Error(ErrorCode::IndexOutOfRange,
                  "index " + std::to_string(i) + " outside 1.." + std::to_string(universe), i);
    zero.push_back(i - 1);
  }
  return from_zero_based(std::move(zero), universe);
}

IndexSet IndexSet::all(std::size_t universe) { return leading(universe, universe); }

IndexSet IndexSet::leading(std::size_t count, std::size_t universe) {
  if (count > universe)
    throw Error(ErrorCode::IndexOutOfRange, "leading set larger than universe", count);
  std::vector<std::size_t> v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = i;
  return IndexSet(std::move(v), universe);
}

IndexSet IndexSet::complement() const {
  std::vector<std::size_t> rest;
  rest.reserve(universe_ - indices_.size());
  std::size_t next = 0;
  for (std::size_t i = 0; i < universe_; ++i) {
    if (next < indices_.size() && indices_[next] == i) {
      ++next;
      continue;
    }
    rest.push_back(i);
  }
  return IndexSet(std::move(rest), universe_);
}

bool IndexSet::contains(std::size_t i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

std::size_t IndexSet::position(std::size_t i) const {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), i);
  if (it == indices_.end() || *it != i) return indices_.size();
  return static_cast<std::size_t>(it - indices_.begin());
}

std::vector<std::size_t> IndexSet::to_one_based() const {
  std::vector<std::size_t> out(indices_);
  for (auto& i : out) ++i;
  return out;
}

// ---------------------------------------------------------------------------
// SquareMatrix

std::size_t SquareMatrix::size() const noexcept {
  return std::visit([](const auto& m) { return static_cast<std::size_t>(m.rows()); },
                    storage_);
}

std::size_t SquareMatrix::nonzeros() const {
  if (is_sparse()) return static_cast<std::size_t>(sparse().nonZeros());
  const DenseMatrix& d = dense();
  return static_cast<std::size_t>((d.array() != 0.0).count());
}

double SquareMatrix::operator()(std::size_t i, std::size_t j) const {
  if (is_sparse()) return sparse().coeff(idx(i), idx(j));
  return dense()(idx(i), idx(j));
}

const DenseMatrix& SquareMatrix::dense() const {
  if (const auto* d = std::get_if<DenseMatrix>(&storage_)) return *d;
  throw Error(ErrorCode::PreconditionViolation, "matrix is stored sparse");
}

const SparseMatrix& SquareMatrix::sparse() const {
  if (const auto* s = std::get_if<SparseMatrix>(&storage_)) return *s;
  throw Error(ErrorCode::PreconditionViolation, "matrix is stored dense");
}

DenseMatrix SquareMatrix::to_dense() const {
  if (is_sparse()) return DenseMatrix(sparse());
  return dense();
}

double SquareMatrix::column_sum(std::size_t j) const {
  if (is_sparse()) return sparse().col(idx(j)).sum();
  return dense().col(idx(j)).sum();
}

Vector SquareMatrix::apply(const Vector& x) const {
  Vector y;
  std::visit([&](const auto& m) { kernels::matvec(m, x, y); }, storage_);
  return y;
}

// ---------------------------------------------------------------------------
// NonNegativeMatrix / StochasticMatrix

NonNegativeMatrix::NonNegativeMatrix(DenseMatrix m) : SquareMatrix(std::move(m)) {
  check_entries(dense());
}

NonNegativeMatrix::NonNegativeMatrix(SparseMatrix m) : SquareMatrix(std::move(m)) {
  std::get<SparseMatrix>(storage_).makeCompressed();
  check_entries(sparse());
}

NonNegativeMatrix NonNegativeMatrix::with_auto_storage(const DenseMatrix& m) {
  const double cells = static_cast<double>(m.rows()) * static_cast<double>(m.cols());
  const double nnz = static_cast<double>((m.array() != 0.0).count());
  if (cells > 0 && nnz / cells < kSparseDensityThreshold)
    return NonNegativeMatrix(to_sparse(m));
  return NonNegativeMatrix(m);
}

StochasticMatrix validate_stochastic(const NonNegativeMatrix& m) {
  const Vector sums = column_sums(m);
  for (Index j = 0; j < sums.size(); ++j) {
    if (std::abs(sums(j) - 1.0) > kStochasticTolerance)
      throw Error(ErrorCode::ColumnSumViolation,
                  "column " + std::to_string(j + 1) + " sums to " + std::to_string(sums(j)),
                  static_cast<std::size_t>(j) + 1, 0, sums(j));
  }
  if (m.is_sparse()) return StochasticMatrix(StochasticMatrix::Checked{}, m.sparse());
  return StochasticMatrix(StochasticMatrix::Checked{}, m.dense());
}

StochasticMatrix project_columns(const NonNegativeMatrix& m) {
  const Vector sums = column_sums(m);
  for (Index j = 0; j < sums.size(); ++j)
    if (!(sums(j) > 0.0))
      throw Error(ErrorCode::ZeroColumn, "column " + std::to_string(j + 1) + " is zero",
                  static_cast<std::size_t>(j) + 1);
  if (m.is_sparse()) {
    SparseMatrix s = m.sparse();
    for (Index j = 0; j < s.outerSize(); ++j)
      for (SparseMatrix::InnerIterator it(s, j); it; ++it) it.valueRef() /= sums(j);
    return StochasticMatrix(StochasticMatrix::Checked{}, std::move(s));
  }
  DenseMatrix d = m.dense();
  for (Index j = 0; j < d.cols(); ++j) d.col(j) /= sums(j);
  return StochasticMatrix(StochasticMatrix::Checked{}, std::move(d));
}

StochasticMatrix StochasticMatrix::from_dense(const DenseMatrix& m) {
  return validate_stochastic(NonNegativeMatrix(m));
}

StochasticMatrix StochasticMatrix::with_dense_storage() const {
  if (!is_sparse()) return *this;
  return StochasticMatrix(Checked{}, to_dense());
}

StochasticMatrix StochasticMatrix::with_auto_storage() const {
  const double cells = static_cast<double>(size()) * static_cast<double>(size());
  const bool want_sparse =
      static_cast<double>(nonzeros()) / cells < kSparseDensityThreshold;
  if (want_sparse == is_sparse()) return *this;
  if (want_sparse) return StochasticMatrix(Checked{}, to_sparse(dense()));
  return StochasticMatrix(Checked{}, to_dense());
}

// ---------------------------------------------------------------------------
// ProbabilityVector

ProbabilityVector ProbabilityVector::validated(Vector v) {
  if (v.size() == 0) throw Error(ErrorCode::EmptyInput, "empty probability vector");
  for (Index i = 0; i < v.size(); ++i)
    if (!(v(i) >= 0.0) || !std::isfinite(v(i)))
      throw Error(ErrorCode::InvalidProbabilityVector,
                  "entry " + std::to_string(i + 1) + " is " + std::to_string(v(i)),
                  static_cast<std::size_t>(i) + 1, 0, v(i));
  const double sum = v.sum();
  if (std::abs(sum - 1.0) > kStochasticTolerance)
    throw Error(ErrorCode::InvalidProbabilityVector, "sum is " + std::to_string(sum), 0, 0,
                sum);
  return ProbabilityVector(std::move(v));
}

ProbabilityVector ProbabilityVector::normalized(Vector v) {
  if (v.size() == 0) throw Error(ErrorCode::EmptyInput, "empty probability vector");
  for (Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v(i)))
      throw Error(ErrorCode::InvalidProbabilityVector, "non-finite entry",
                  static_cast<std::size_t>(i) + 1);
    if (v(i) < 0.0) v(i) = 0.0;
  }
  const double sum = v.sum();
  if (!(sum > 0.0))
    throw Error(ErrorCode::InvalidProbabilityVector, "no positive mass", 0, 0, sum);
  v /= sum;
  return ProbabilityVector(std::move(v));
}

ProbabilityVector ProbabilityVector::uniform(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::EmptyInput, "empty probability vector");
  return ProbabilityVector(Vector::Constant(idx(n), 1.0 / static_cast<double>(n)));
}

// ---------------------------------------------------------------------------
// free functions

DenseMatrix submatrix(const DenseMatrix& m, const IndexSet& rows, const IndexSet& cols) {
  if (rows.universe() > static_cast<std::size_t>(m.rows()) ||
      cols.universe() > static_cast<std::size_t>(m.cols()))
    throw Error(ErrorCode::IndexOutOfRange, "index set universe exceeds matrix shape");
  DenseMatrix out(idx(rows.size()), idx(cols.size()));
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b)
      out(idx(a), idx(b)) = m(idx(rows[a]), idx(cols[b]));
  return out;
}

DenseMatrix submatrix(const SquareMatrix& m, const IndexSet& rows, const IndexSet& cols) {
  if (!m.is_sparse()) return submatrix(m.dense(), rows, cols);
  if (rows.universe() > m.size() || cols.universe() > m.size())
    throw Error(ErrorCode::IndexOutOfRange, "index set universe exceeds matrix shape");
  DenseMatrix out = DenseMatrix::Zero(idx(rows.size()), idx(cols.size()));
  const SparseMatrix& s = m.sparse();
  for (std::size_t b = 0; b < cols.size(); ++b)
    for (SparseMatrix::InnerIterator it(s, idx(cols[b])); it; ++it) {
      const std::size_t a = rows.position(static_cast<std::size_t>(it.row()));
      if (a < rows.size()) out(idx(a), idx(b)) = it.value();
    }
  return out;
}

double one_norm(const Vector& v) { return v.cwiseAbs().sum(); }

double residual(const StochasticMatrix& a, const Vector& v) {
  if (static_cast<std::size_t>(v.size()) != a.size())
    throw Error(ErrorCode::DimensionMismatch,
                "vector length " + std::to_string(v.size()) + " vs n = " +
                    std::to_string(a.size()));
  return (a.apply(v) - v).norm();
}

double residual(const StochasticMatrix& a, const ProbabilityVector& v) {
  return residual(a, v.values());
}

}  // namespace isored
