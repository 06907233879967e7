#pragma once

// Exact graph reduction over rational-function edge weights.
//
// A weighted digraph on n vertices has adjacency M(i, j) = w(i, j), zero off
// the edge set. For a structural set S, the reduced graph on S has
//
//     R_ij(lambda) = sum over branches beta from i to j of w(beta, lambda),
//     w(beta) = w(i0, i1) * prod_{l >= 1} w(i_l, i_{l+1}) / (lambda - w(i_l, i_l)).

#include <complex>
#include <cstddef>
#include <istream>
#include <string>
#include <vector>

#include "isored/matrix.hpp"
#include "isored/polynomial.hpp"

namespace isored {

class WeightedDigraph {
 public:
  explicit WeightedDigraph(std::size_t n = 0);
  /// Edge (i, j) for every non-zero m(i, j); doubles are converted exactly.
  static WeightedDigraph from_matrix(const DenseMatrix& m);
  static WeightedDigraph from_rational(const std::vector<std::vector<mpq_class>>& m);

  std::size_t size() const noexcept { return n_; }
  /// A zero weight removes the edge.
  void set_weight(std::size_t i, std::size_t j, RationalFunction w);
  const RationalFunction& weight(std::size_t i, std::size_t j) const;
  bool has_edge(std::size_t i, std::size_t j) const { return !weight(i, j).is_zero(); }
  std::size_t edge_count() const;

  friend bool operator==(const WeightedDigraph&, const WeightedDigraph&) = default;

 private:
  std::size_t n_;
  std::vector<RationalFunction> w_;  // row-major n x n
};

/// Path (i0, ..., ip), p >= 1, interior vertices outside S and pairwise
/// distinct; i0 == ip is allowed (a cycle through S̄).
struct Branch {
  std::vector<std::size_t> vertices;
  friend bool operator==(const Branch&, const Branch&) = default;
};

/// Every non-loop cycle meets S, and no vertex outside S carries a loop of
/// weight exactly lambda.
bool is_structural_set(const WeightedDigraph& g, const IndexSet& s);

/// All branches of (G, S), ordered by start vertex then depth-first.
/// Throws NotStructural.
std::vector<Branch> branches(const WeightedDigraph& g, const IndexSet& s);

RationalFunction branch_weight(const WeightedDigraph& g, const Branch& beta);

/// Reduced graph on S (vertex b is s[b]). Throws NotStructural.
WeightedDigraph graph_reduce(const WeightedDigraph& g, const IndexSet& s);

/// Entry values at lambda0. Throws PoleAtLambda(i, j) (1-based).
std::vector<std::vector<mpq_class>> evaluate_exact(const WeightedDigraph& g,
                                                   const mpq_class& lambda0);
DenseMatrix evaluate_at(const WeightedDigraph& g, const mpq_class& lambda0);

/// det(M(lambda) - lambda I) over the rational-function field.
RationalFunction characteristic_function(const WeightedDigraph& g);

/// Roots of the numerator of det(M(lambda) - lambda I), with multiplicity.
/// Throws DegenerateDeterminant when the determinant vanishes identically.
std::vector<std::complex<double>> reduced_spectrum(const WeightedDigraph& g);

/// Line per edge: `i j c0 c1 ... / d0 d1 ...` with 1-based vertices and
/// ascending rational coefficients; `/ d...` may be omitted for polynomials.
/// Blank lines and lines starting with '#' or '%' are skipped. An optional
/// `vertices N` line fixes the vertex count, which otherwise is the largest
/// index seen.
WeightedDigraph parse_graph(std::istream& in);
WeightedDigraph read_graph_file(const std::string& path);

}  // namespace isored
