#pragma once

// Spectral measurements of column-stochastic matrices: the diameter
// semi-norm tau, the inner spectral radius, the spectral gap, the smallest
// entry, Gershgorin disks and the communicating-class decomposition.

#include <complex>
#include <cstddef>
#include <vector>

#include "isored/matrix.hpp"

namespace isored {

struct GershgorinDisk {
  double center = 0.0;
  double radius = 0.0;
};

/// Communicating classes of the transition digraph (edge j -> i iff a_ij > eps).
/// Transient vertices (i does not lead back to i) belong to no class.
struct ClassDecomposition {
  std::vector<IndexSet> classes;
  std::vector<bool> essential;
  std::vector<std::size_t> periods;
  IndexSet transient;

  std::size_t num_essential() const;
};

struct SpectralReport {
  std::size_t n = 0;
  double tau = 0.0;
  double rho_i = 0.0;
  double gap = 0.0;
  double m = 0.0;
  std::vector<std::complex<double>> eigenvalues;  // decreasing modulus
  std::size_t num_classes = 0;
  std::size_t num_essential = 0;
  bool non_critical = false;
};

/// tau(A) = max_{i,j} 1/2 sum_k |a_ki - a_kj|.
double diameter_tau(const SquareMatrix& a);
/// Same quantity through 1 - min_{i,j} sum_k min(a_ki, a_kj).
double diameter_tau_by_overlap(const SquareMatrix& a);

double min_entry(const SquareMatrix& a);

/// All eigenvalues sorted by decreasing modulus, ties by decreasing real part.
std::vector<std::complex<double>> sorted_eigenvalues(const DenseMatrix& a);

/// |lambda_2| of the sorted spectrum (0 for n == 1). A repeated eigenvalue 1
/// therefore yields 1.
double inner_spectral_radius(const StochasticMatrix& a);
double spectral_gap(const StochasticMatrix& a);

ClassDecomposition classify(const SquareMatrix& a, double edge_eps = 0.0);

/// Unique essential class, and that class is aperiodic. Decided on the
/// digraph alone.
bool is_non_critical(const StochasticMatrix& a, double edge_eps = 0.0);

std::vector<GershgorinDisk> gershgorin(const DenseMatrix& a);
/// Distance from z to the union of the disks (0 when inside).
double distance_to_union(const std::vector<GershgorinDisk>& disks,
                         std::complex<double> z);

struct ContractionCheck {
  double lhs = 0.0;  // |Ax - Ay|_1
  double rhs = 0.0;  // tau(A) |x - y|_1
};
ContractionCheck contraction_check(const StochasticMatrix& a,
                                   const ProbabilityVector& x,
                                   const ProbabilityVector& y);

SpectralReport spectral_report(const StochasticMatrix& a, double edge_eps = 0.0);

}  // namespace isored
