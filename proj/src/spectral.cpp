#include "isored/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <utility>

#include <Eigen/Eigenvalues>

#include "isored/kernels.hpp"

namespace isored {

namespace {

using Index = Eigen::Index;
using Adjacency = std::vector<std::vector<std::size_t>>;

// succ[j] lists i with a_ij > eps, i.e. the chain can step j -> i.
Adjacency transition_graph(const SquareMatrix& a, double eps) {
  const std::size_t n = a.size();
  Adjacency succ(n);
  if (a.is_sparse()) {
    const SparseMatrix& s = a.sparse();
    for (Index j = 0; j < s.outerSize(); ++j)
      for (SparseMatrix::InnerIterator it(s, j); it; ++it)
        if (it.value() > eps)
          succ[static_cast<std::size_t>(j)].push_back(static_cast<std::size_t>(it.row()));
  } else {
    const DenseMatrix& d = a.dense();
    for (Index i = 0; i < d.rows(); ++i)
      for (Index j = 0; j < d.cols(); ++j)
        if (d(i, j) > eps)
          succ[static_cast<std::size_t>(j)].push_back(static_cast<std::size_t>(i));
  }
  return succ;
}

// Iterative Tarjan; returns the component id of every vertex.
std::vector<std::size_t> strongly_connected(const Adjacency& succ, std::size_t& count) {
  const std::size_t n = succ.size();
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> order(n, unvisited), low(n, 0), comp(n, unvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> frames;  // (vertex, next edge)
  std::size_t counter = 0;
  count = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (order[root] != unvisited) continue;
    frames.emplace_back(root, 0);
    order[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, e] = frames.back();
      if (e < succ[v].size()) {
        const std::size_t w = succ[v][e++];
        if (order[w] == unvisited) {
          order[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], order[w]);
        }
        continue;
      }
      const std::size_t done = v;
      frames.pop_back();
      if (!frames.empty()) {
        const std::size_t parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == order[done]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = count;
        } while (w != done);
        ++count;
      }
    }
  }
  return comp;
}

// gcd of cycle lengths inside one strongly connected component, via BFS
// levels: every edge u -> w inside the component contributes level(u)+1-level(w).
std::size_t component_period(const Adjacency& succ, const std::vector<std::size_t>& comp,
                             std::size_t id, std::size_t root) {
  constexpr long unset = -1;
  std::vector<long> level(succ.size(), unset);
  std::queue<std::size_t> frontier;
  level[root] = 0;
  frontier.push(root);
  long g = 0;
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop();
    for (std::size_t w : succ[u]) {
      if (comp[w] != id) continue;
      if (level[w] == unset) {
        level[w] = level[u] + 1;
        frontier.push(w);
      } else {
        g = std::gcd(g, std::labs(level[u] + 1 - level[w]));
      }
    }
  }
  return static_cast<std::size_t>(g);
}

}  // namespace

std::size_t ClassDecomposition::num_essential() const {
  return static_cast<std::size_t>(std::count(essential.begin(), essential.end(), true));
}

double diameter_tau(const SquareMatrix& a) {
  if (a.is_sparse()) return kernels::max_half_column_distance(a.sparse());
  return kernels::max_half_column_distance(a.dense());
}

double diameter_tau_by_overlap(const SquareMatrix& a) {
  if (a.is_sparse()) return 1.0 - kernels::min_column_overlap(a.sparse());
  return 1.0 - kernels::min_column_overlap(a.dense());
}

double min_entry(const SquareMatrix& a) {
  if (a.is_sparse()) {
    const SparseMatrix& s = a.sparse();
    const auto cells = static_cast<std::size_t>(s.rows()) * static_cast<std::size_t>(s.cols());
    double m = s.nonZeros() > 0 ? s.coeffs().minCoeff() : 0.0;
    if (static_cast<std::size_t>(s.nonZeros()) < cells) m = std::min(m, 0.0);
    return m;
  }
  return a.dense().minCoeff();
}

std::vector<std::complex<double>> sorted_eigenvalues(const DenseMatrix& a) {
  if (a.rows() != a.cols())
    throw Error(ErrorCode::NotSquare, "eigenvalues of a non-square matrix");
  const Eigen::MatrixXd m = a;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::EigensolverFailure, "QR iteration did not converge");
  const Eigen::VectorXcd& ev = solver.eigenvalues();
  std::vector<std::complex<double>> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    const double ax = std::abs(x), ay = std::abs(y);
    if (ax != ay) return ax > ay;
    return x.real() > y.real();
  });
  return out;
}

double inner_spectral_radius(const StochasticMatrix& a) {
  if (a.size() == 1) return 0.0;
  return std::abs(sorted_eigenvalues(a.to_dense())[1]);
}

double spectral_gap(const StochasticMatrix& a) { return 1.0 - inner_spectral_radius(a); }

ClassDecomposition classify(const SquareMatrix& a, double edge_eps) {
  const Adjacency succ = transition_graph(a, edge_eps);
  const std::size_t n = succ.size();
  std::size_t count = 0;
  const std::vector<std::size_t> comp = strongly_connected(succ, count);

  std::vector<std::vector<std::size_t>> members(count);
  for (std::size_t v = 0; v < n; ++v) members[comp[v]].push_back(v);

  std::vector<bool> closed(count, true);
  std::vector<bool> self_loop(n, false);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w : succ[v]) {
      if (w == v) self_loop[v] = true;
      if (comp[w] != comp[v]) closed[comp[v]] = false;
    }

  ClassDecomposition out;
  std::vector<std::size_t> transient;
  // Order classes by their smallest vertex for stable output.
  std::vector<std::size_t> ids(count);
  std::iota(ids.begin(), ids.end(), 0);
  std::sort(ids.begin(), ids.end(),
            [&](std::size_t x, std::size_t y) { return members[x].front() < members[y].front(); });
  for (std::size_t id : ids) {
    const auto& vs = members[id];
    if (vs.size() == 1 && !self_loop[vs.front()]) {
      transient.push_back(vs.front());
      continue;
    }
    out.classes.push_back(IndexSet::from_zero_based(vs, n));
    out.essential.push_back(closed[id]);
    out.periods.push_back(component_period(succ, comp, id, vs.front()));
  }
  out.transient = IndexSet::from_zero_based(std::move(transient), n);
  return out;
}

bool is_non_critical(const StochasticMatrix& a, double edge_eps) {
  const ClassDecomposition d = classify(a, edge_eps);
  std::size_t essential = 0;
  std::size_t period = 0;
  for (std::size_t c = 0; c < d.classes.size(); ++c)
    if (d.essential[c]) {
      ++essential;
      period = d.periods[c];
    }
  return essential == 1 && period == 1;
}

std::vector<GershgorinDisk> gershgorin(const DenseMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::NotSquare, "Gershgorin disks");
  std::vector<GershgorinDisk> disks(static_cast<std::size_t>(a.rows()));
  for (Index i = 0; i < a.rows(); ++i) {
    double r = 0.0;
    for (Index j = 0; j < a.cols(); ++j)
      if (j != i) r += std::abs(a(i, j));
    disks[static_cast<std::size_t>(i)] = {a(i, i), r};
  }
  return disks;
}

double distance_to_union(const std::vector<GershgorinDisk>& disks, std::complex<double> z) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& d : disks)
    best = std::min(best, std::max(0.0, std::abs(z - d.center) - d.radius));
  return best;
}

ContractionCheck contraction_check(const StochasticMatrix& a, const ProbabilityVector& x,
                                   const ProbabilityVector& y) {
  if (x.size() != a.size() || y.size() != a.size())
    throw Error(ErrorCode::DimensionMismatch, "contraction check vectors");
  const double lhs = one_norm(a.apply(x.values()) - a.apply(y.values()));
  const double rhs = diameter_tau(a) * one_norm(x.values() - y.values());
  return {lhs, rhs};
}

SpectralReport spectral_report(const StochasticMatrix& a, double edge_eps) {
  SpectralReport r;
  r.n = a.size();
  r.tau = diameter_tau(a);
  r.m = min_entry(a);
  r.eigenvalues = sorted_eigenvalues(a.to_dense());
  r.rho_i = r.n == 1 ? 0.0 : std::abs(r.eigenvalues[1]);
  r.gap = 1.0 - r.rho_i;
  const ClassDecomposition d = classify(a, edge_eps);
  r.num_classes = d.classes.size();
  r.num_essential = d.num_essential();
  std::size_t period = 0;
  for (std::size_t c = 0; c < d.classes.size(); ++c)
    if (d.essential[c]) period = d.periods[c];
  r.non_critical = r.num_essential == 1 && period == 1;
  return r;
}

}  // namespace isored
