#pragma once

// Data-parallel inner loops. Every kernel has a plain serial reference in
// `kernels::serial` and an OpenMP version in `kernels::parallel`; the two
// produce bit-identical results (each output element is accumulated in the
// same order). The unqualified entry points pick one by problem size.

#include <cstddef>
#include <span>

#include "isored/matrix.hpp"

namespace isored::kernels {

/// Work (in multiply-adds) above which the dispatchers go parallel.
inline constexpr std::size_t kParallelWorkThreshold = 1u << 16;

namespace serial {

void matvec(const DenseMatrix& a, const Vector& x, Vector& y);
void matvec(const SparseMatrix& a, const Vector& x, Vector& y);

/// max over column pairs of (1/2) sum_k |a_ki - a_kj|.
double max_half_column_distance(const DenseMatrix& a);
double max_half_column_distance(const SparseMatrix& a);

/// min over column pairs i < j of sum_k min(a_ki, a_kj); 1 when n == 1.
double min_column_overlap(const DenseMatrix& a);
double min_column_overlap(const SparseMatrix& a);

/// One-node elimination restricted to the `alive` rows/columns:
///   m_ij += m_ik m_kj / (shift - m_kk)   for i, j in alive, i, j != k.
/// Entries outside `alive` are left untouched.
void eliminate(DenseMatrix& m, std::span<const std::size_t> alive,
               std::size_t k, double shift);

}  // namespace serial

namespace parallel {

void matvec(const DenseMatrix& a, const Vector& x, Vector& y);
void matvec(const SparseMatrix& a, const Vector& x, Vector& y);
double max_half_column_distance(const DenseMatrix& a);
double max_half_column_distance(const SparseMatrix& a);
double min_column_overlap(const DenseMatrix& a);
double min_column_overlap(const SparseMatrix& a);
void eliminate(DenseMatrix& m, std::span<const std::size_t> alive,
               std::size_t k, double shift);

}  // namespace parallel

void matvec(const DenseMatrix& a, const Vector& x, Vector& y);
void matvec(const SparseMatrix& a, const Vector& x, Vector& y);
double max_half_column_distance(const DenseMatrix& a);
double max_half_column_distance(const SparseMatrix& a);
double min_column_overlap(const DenseMatrix& a);
double min_column_overlap(const SparseMatrix& a);
void eliminate(DenseMatrix& m, std::span<const std::size_t> alive,
               std::size_t k, double shift);

}  // namespace isored::kernels
