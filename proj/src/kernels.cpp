#include "isored/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <omp.h>

namespace isored::kernels {

namespace {

using Index = Eigen::Index;

// Pairwise column statistics of a dense matrix are taken on the transpose so
// that each column is contiguous.
using ColumnMajor = Eigen::MatrixXd;

double pair_distance(const ColumnMajor& c, Index i, Index j) {
  double sum = 0.0;
  const double* ci = c.col(i).data();
  const double* cj = c.col(j).data();
  for (Index k = 0; k < c.rows(); ++k) sum += std::abs(ci[k] - cj[k]);
  return 0.5 * sum;
}

double pair_overlap(const ColumnMajor& c, Index i, Index j) {
  double sum = 0.0;
  const double* ci = c.col(i).data();
  const double* cj = c.col(j).data();
  for (Index k = 0; k < c.rows(); ++k) sum += std::min(ci[k], cj[k]);
  return sum;
}

// Merge of two sorted sparse columns.
template <typename Op>
double sparse_pair(const SparseMatrix& a, Index i, Index j, Op op) {
  SparseMatrix::InnerIterator it(a, i);
  SparseMatrix::InnerIterator jt(a, j);
  double sum = 0.0;
  while (it || jt) {
    if (it && (!jt || it.row() < jt.row())) {
      sum += op(it.value(), 0.0);
      ++it;
    } else if (jt && (!it || jt.row() < it.row())) {
      sum += op(0.0, jt.value());
      ++jt;
    } else {
      sum += op(it.value(), jt.value());
      ++it;
      ++jt;
    }
  }
  return sum;
}

double sparse_distance(const SparseMatrix& a, Index i, Index j) {
  return 0.5 * sparse_pair(a, i, j,
                           [](double x, double y) { return std::abs(x - y); });
}

// Rows missing from either column contribute min(x, 0) = 0, so only the
// common support matters.
double sparse_overlap(const SparseMatrix& a, Index i, Index j) {
  return sparse_pair(a, i, j, [](double x, double y) { return std::min(x, y); });
}

void check_matvec(Index rows, Index cols, const Vector& x) {
  if (x.size() != cols)
    throw Error(ErrorCode::DimensionMismatch,
                "matvec: vector length " + std::to_string(x.size()) +
                    " vs " + std::to_string(cols) + " columns");
  (void)rows;
}

void check_pivot(const DenseMatrix& m, std::size_t k, double shift) {
  const double denom = shift - m(static_cast<Index>(k), static_cast<Index>(k));
  if (!(denom != 0.0) || !std::isfinite(denom))
    throw Error(ErrorCode::AbsorbingPivot, "zero elimination denominator",
                k + 1, 0, denom);
}

}  // namespace

// ---------------------------------------------------------------------------
// serial reference

namespace serial {

void matvec(const DenseMatrix& a, const Vector& x, Vector& y) {
  check_matvec(a.rows(), a.cols(), x);
  y.resize(a.rows());
  for (Index i = 0; i < a.rows(); ++i) {
    const double* row = a.row(i).data();
    double sum = 0.0;
    for (Index j = 0; j < a.cols(); ++j) sum += row[j] * x(j);
    y(i) = sum;
  }
}

void matvec(const SparseMatrix& a, const Vector& x, Vector& y) {
  check_matvec(a.rows(), a.cols(), x);
  y.setZero(a.rows());
  for (Index j = 0; j < a.outerSize(); ++j)
    for (SparseMatrix::InnerIterator it(a, j); it; ++it)
      y(it.row()) += it.value() * x(j);
}

double max_half_column_distance(const DenseMatrix& a) {
  const ColumnMajor c = a;
  double best = 0.0;
  for (Index i = 0; i < c.cols(); ++i)
    for (Index j = i + 1; j < c.cols(); ++j)
      best = std::max(best, pair_distance(c, i, j));
  return best;
}

double max_half_column_distance(const SparseMatrix& a) {
  double best = 0.0;
  for (Index i = 0; i < a.cols(); ++i)
    for (Index j = i + 1; j < a.cols(); ++j)
      best = std::max(best, sparse_distance(a, i, j));
  return best;
}

double min_column_overlap(const DenseMatrix& a) {
  const ColumnMajor c = a;
  double best = 1.0;
  for (Index i = 0; i < c.cols(); ++i)
    for (Index j = i + 1; j < c.cols(); ++j)
      best = std::min(best, pair_overlap(c, i, j));
  return best;
}

double min_column_overlap(const SparseMatrix& a) {
  double best = 1.0;
  for (Index i = 0; i < a.cols(); ++i)
    for (Index j = i + 1; j < a.cols(); ++j)
      best = std::min(best, sparse_overlap(a, i, j));
  return best;
}

void eliminate(DenseMatrix& m, std::span<const std::size_t> alive,
               std::size_t k, double shift) {
  check_pivot(m, k, shift);
  const Index kk = static_cast<Index>(k);
  const double inv = 1.0 / (shift - m(kk, kk));
  for (std::size_t i : alive) {
    if (i == k) continue;
    const double factor = m(static_cast<Index>(i), kk) * inv;
    if (factor == 0.0) continue;
    double* row = m.row(static_cast<Index>(i)).data();
    const double* pivot_row = m.row(kk).data();
    for (std::size_t j : alive) {
      if (j == k) continue;
      row[j] += factor * pivot_row[j];
    }
  }
}

}  // namespace serial

// ---------------------------------------------------------------------------
// OpenMP

namespace parallel {

void matvec(const DenseMatrix& a, const Vector& x, Vector& y) {
  check_matvec(a.rows(), a.cols(), x);
  y.resize(a.rows());
  const Index rows = a.rows();
  const Index cols = a.cols();
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < rows; ++i) {
    const double* row = a.row(i).data();
    double sum = 0.0;
    for (Index j = 0; j < cols; ++j) sum += row[j] * x(j);
    y(i) = sum;
  }
}

// Each thread owns a contiguous block of output rows and scans every column,
// binary-searching its block inside the (row-sorted) column. Accumulation order
// per output row is the same as in the serial scatter.
void matvec(const SparseMatrix& a, const Vector& x, Vector& y) {
  check_matvec(a.rows(), a.cols(), x);
  y.setZero(a.rows());
  const Index rows = a.rows();
  const Index cols = a.cols();
  const auto* outer = a.outerIndexPtr();
  const auto* inner = a.innerIndexPtr();
  const double* values = a.valuePtr();
  const bool compressed = a.isCompressed();
  const auto* nnz = a.innerNonZeroPtr();
#pragma omp parallel
  {
    const int threads = omp_get_num_threads();
    const int tid = omp_get_thread_num();
    const Index lo = rows * tid / threads;
    const Index hi = rows * (tid + 1) / threads;
    for (Index j = 0; j < cols; ++j) {
      const auto begin = outer[j];
      const auto end = compressed ? outer[j + 1] : begin + nnz[j];
      const auto* first = std::lower_bound(inner + begin, inner + end,
                                           static_cast<int>(lo));
      for (const auto* p = first; p != inner + end && *p < hi; ++p)
        y(*p) += values[p - inner] * x(j);
    }
  }
}

double max_half_column_distance(const DenseMatrix& a) {
  const ColumnMajor c = a;
  const Index n = c.cols();
  double best = 0.0;
#pragma omp parallel for schedule(dynamic, 8) reduction(max : best)
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      best = std::max(best, pair_distance(c, i, j));
  return best;
}

double max_half_column_distance(const SparseMatrix& a) {
  const Index n = a.cols();
  double best = 0.0;
#pragma omp parallel for schedule(dynamic, 8) reduction(max : best)
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      best = std::max(best, sparse_distance(a, i, j));
  return best;
}

double min_column_overlap(const DenseMatrix& a) {
  const ColumnMajor c = a;
  const Index n = c.cols();
  double best = 1.0;
#pragma omp parallel for schedule(dynamic, 8) reduction(min : best)
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      best = std::min(best, pair_overlap(c, i, j));
  return best;
}

double min_column_overlap(const SparseMatrix& a) {
  const Index n = a.cols();
  double best = 1.0;
#pragma omp parallel for schedule(dynamic, 8) reduction(min : best)
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      best = std::min(best, sparse_overlap(a, i, j));
  return best;
}

void eliminate(DenseMatrix& m, std::span<const std::size_t> alive,
               std::size_t k, double shift) {
  check_pivot(m, k, shift);
  const Index kk = static_cast<Index>(k);
  const double inv = 1.0 / (shift - m(kk, kk));
  const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(alive.size());
  const double* pivot_row = m.row(kk).data();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t a = 0; a < count; ++a) {
    const std::size_t i = alive[static_cast<std::size_t>(a)];
    if (i == k) continue;
    const double factor = m(static_cast<Index>(i), kk) * inv;
    if (factor == 0.0) continue;
    double* row = m.row(static_cast<Index>(i)).data();
    for (std::size_t j : alive) {
      if (j == k) continue;
      row[j] += factor * pivot_row[j];
    }
  }
}

}  // namespace parallel

// ---------------------------------------------------------------------------
// dispatch

namespace {
bool go_parallel(std::size_t work) {
  return work >= kParallelWorkThreshold && omp_get_max_threads() > 1 &&
         !omp_in_parallel();
}
std::size_t sq(Index n) { return static_cast<std::size_t>(n) * static_cast<std::size_t>(n); }
}  // namespace

void matvec(const DenseMatrix& a, const Vector& x, Vector& y) {
  go_parallel(sq(a.rows())) ? parallel::matvec(a, x, y) : serial::matvec(a, x, y);
}
void matvec(const SparseMatrix& a, const Vector& x, Vector& y) {
  go_parallel(static_cast<std::size_t>(a.nonZeros()) * 4)
      ? parallel::matvec(a, x, y)
      : serial::matvec(a, x, y);
}
double max_half_column_distance(const DenseMatrix& a) {
  return go_parallel(sq(a.cols()) * static_cast<std::size_t>(a.rows()) / 2)
             ? parallel::max_half_column_distance(a)
             : serial::max_half_column_distance(a);
}
double max_half_column_distance(const SparseMatrix& a) {
  return go_parallel(sq(a.cols()))
             ? parallel::max_half_column_distance(a)
             : serial::max_half_column_distance(a);
}
double min_column_overlap(const DenseMatrix& a) {
  return go_parallel(sq(a.cols()) * static_cast<std::size_t>(a.rows()) / 2)
             ? parallel::min_column_overlap(a)
             : serial::min_column_overlap(a);
}
double min_column_overlap(const SparseMatrix& a) {
  return go_parallel(sq(a.cols())) ? parallel::min_column_overlap(a)
                                   : serial::min_column_overlap(a);
}
void eliminate(DenseMatrix& m, std::span<const std::size_t> alive,
               std::size_t k, double shift) {
  go_parallel(alive.size() * alive.size())
      ? parallel::eliminate(m, alive, k, shift)
      : serial::eliminate(m, alive, k, shift);
}

}  // namespace isored::kernels
