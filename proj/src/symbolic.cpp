#include "isored/symbolic.hpp"

#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

namespace isored {

namespace {

void check_vertex(std::size_t i, std::size_t n) {
  if (i >= n) throw Error(ErrorCode::IndexOutOfRange, "vertex " + std::to_string(i + 1), i + 1);
}

void require_structural(const WeightedDigraph& g, const IndexSet& s) {
  if (!is_structural_set(g, s))
    throw Error(ErrorCode::NotStructural, "kept set is not structural for this graph");
}

RationalFunction lambda_minus(const RationalFunction& w) {
  return RationalFunction(Polynomial::lambda()) - w;
}

}  // namespace

WeightedDigraph::WeightedDigraph(std::size_t n) : n_(n), w_(n * n) {}

WeightedDigraph WeightedDigraph::from_matrix(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NotSquare, "graph adjacency");
  WeightedDigraph g(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0.0)
        g.set_weight(static_cast<std::size_t>(i), static_cast<std::size_t>(j), mpq_class(m(i, j)));
  return g;
}

WeightedDigraph WeightedDigraph::from_rational(const std::vector<std::vector<mpq_class>>& m) {
  WeightedDigraph g(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != m.size()) throw Error(ErrorCode::NotSquare, "graph adjacency");
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m[i][j] != 0) g.set_weight(i, j, m[i][j]);
  }
  return g;
}

void WeightedDigraph::set_weight(std::size_t i, std::size_t j, RationalFunction w) {
  check_vertex(i, n_);
  check_vertex(j, n_);
  w_[i * n_ + j] = std::move(w);
}

const RationalFunction& WeightedDigraph::weight(std::size_t i, std::size_t j) const {
  check_vertex(i, n_);
  check_vertex(j, n_);
  return w_[i * n_ + j];
}

std::size_t WeightedDigraph::edge_count() const {
  std::size_t c = 0;
  for (const auto& w : w_) c += w.is_zero() ? 0 : 1;
  return c;
}

bool is_structural_set(const WeightedDigraph& g, const IndexSet& s) {
  const std::size_t n = g.size();
  if (s.universe() != n)
    throw Error(ErrorCode::DimensionMismatch, "kept set universe differs from graph size");
  if (s.empty()) return false;
  const IndexSet out = s.complement();
  const RationalFunction lam(Polynomial::lambda());
  for (std::size_t v : out)
    if (g.weight(v, v) == lam) return false;

  // Kahn's algorithm on the subgraph induced by the complement, loops ignored.
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t u : out)
    for (std::size_t v : out)
      if (u != v && g.has_edge(u, v)) ++indegree[v];
  std::vector<std::size_t> ready;
  for (std::size_t v : out)
    if (indegree[v] == 0) ready.push_back(v);
  std::size_t removed = 0;
  while (!ready.empty()) {
    const std::size_t u = ready.back();
    ready.pop_back();
    ++removed;
    for (std::size_t v : out)
      if (u != v && g.has_edge(u, v) && --indegree[v] == 0) ready.push_back(v);
  }
  return removed == out.size();
}

std::vector<Branch> branches(const WeightedDigraph& g, const IndexSet& s) {
  require_structural(g, s);
  const std::size_t n = g.size();
  std::vector<Branch> out;
  std::vector<std::size_t> path;
  std::vector<bool> on_path(n, false);

  std::function<void(std::size_t)> extend = [&](std::size_t u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (v == u || !g.has_edge(u, v)) continue;
      if (on_path[v] && v != path.front()) continue;
      path.push_back(v);
      out.push_back(Branch{path});
      if (!s.contains(v) && v != path.front()) {
        on_path[v] = true;
        extend(v);
        on_path[v] = false;
      }
      path.pop_back();
    }
  };

  for (std::size_t start = 0; start < n; ++start) {
    for (std::size_t v = 0; v < n; ++v) {
      if (!g.has_edge(start, v)) continue;
      path = {start, v};
      out.push_back(Branch{path});
      if (v == start || s.contains(v)) continue;
      on_path.assign(n, false);
      on_path[start] = on_path[v] = true;
      extend(v);
    }
  }
  return out;
}

RationalFunction branch_weight(const WeightedDigraph& g, const Branch& beta) {
  const auto& p = beta.vertices;
  if (p.size() < 2) throw Error(ErrorCode::PreconditionViolation, "branch needs at least one edge");
  RationalFunction w = g.weight(p[0], p[1]);
  for (std::size_t l = 1; l + 1 < p.size(); ++l)
    w = w * g.weight(p[l], p[l + 1]) / lambda_minus(g.weight(p[l], p[l]));
  return w;
}

WeightedDigraph graph_reduce(const WeightedDigraph& g, const IndexSet& s) {
  require_structural(g, s);
  const std::size_t n = g.size();
  const std::size_t k = s.size();

  // exits[u][b]: total weight of paths from u (outside S) through the
  // complement to s[b], including u's own 1 / (lambda - w(u, u)) factor.
  std::vector<std::optional<std::vector<RationalFunction>>> exits(n);
  std::function<const std::vector<RationalFunction>&(std::size_t)> exit_weights =
      [&](std::size_t u) -> const std::vector<RationalFunction>& {
    if (exits[u]) return *exits[u];
    std::vector<RationalFunction> acc(k);
    for (std::size_t b = 0; b < k; ++b) acc[b] = g.weight(u, s[b]);
    for (std::size_t v = 0; v < n; ++v) {
      if (v == u || s.contains(v) || !g.has_edge(u, v)) continue;
      const auto& tail = exit_weights(v);
      for (std::size_t b = 0; b < k; ++b)
        if (!tail[b].is_zero()) acc[b] += g.weight(u, v) * tail[b];
    }
    const RationalFunction scale = lambda_minus(g.weight(u, u));
    for (auto& x : acc) x = x / scale;
    exits[u] = std::move(acc);
    return *exits[u];
  };

  WeightedDigraph r(k);
  for (std::size_t a = 0; a < k; ++a) {
    std::vector<RationalFunction> row(k);
    for (std::size_t b = 0; b < k; ++b) row[b] = g.weight(s[a], s[b]);
    for (std::size_t v = 0; v < n; ++v) {
      if (s.contains(v) || !g.has_edge(s[a], v)) continue;
      const auto& tail = exit_weights(v);
      for (std::size_t b = 0; b < k; ++b)
        if (!tail[b].is_zero()) row[b] += g.weight(s[a], v) * tail[b];
    }
    for (std::size_t b = 0; b < k; ++b) r.set_weight(a, b, std::move(row[b]));
  }
  return r;
}

std::vector<std::vector<mpq_class>> evaluate_exact(const WeightedDigraph& g,
                                                   const mpq_class& lambda0) {
  const std::size_t n = g.size();
  std::vector<std::vector<mpq_class>> out(n, std::vector<mpq_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const RationalFunction& w = g.weight(i, j);
      if (w.has_pole_at(lambda0))
        throw Error(ErrorCode::PoleAtLambda,
                    "entry (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                        ") has a pole at " + lambda0.get_str(),
                    i + 1, j + 1, lambda0.get_d());
      out[i][j] = w.evaluate(lambda0);
    }
  return out;
}

DenseMatrix evaluate_at(const WeightedDigraph& g, const mpq_class& lambda0) {
  const auto exact = evaluate_exact(g, lambda0);
  const auto n = static_cast<Eigen::Index>(g.size());
  DenseMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = exact[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].get_d();
  return m;
}

RationalFunction characteristic_function(const WeightedDigraph& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<RationalFunction>> m(n, std::vector<RationalFunction>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m[i][j] = i == j ? -lambda_minus(g.weight(i, j)) : g.weight(i, j);

  RationalFunction det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && m[pivot][c].is_zero()) ++pivot;
    if (pivot == n) return RationalFunction();
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      const RationalFunction f = m[r][c] / m[c][c];
      for (std::size_t j = c + 1; j < n; ++j)
        if (!m[c][j].is_zero()) m[r][j] = m[r][j] - f * m[c][j];
    }
  }
  return det;
}

std::vector<std::complex<double>> reduced_spectrum(const WeightedDigraph& g) {
  const RationalFunction det = characteristic_function(g);
  if (det.is_zero())
    throw Error(ErrorCode::DegenerateDeterminant, "det(M(lambda) - lambda I) is identically zero");
  return roots(det.num());
}

WeightedDigraph parse_graph(std::istream& in) {
  struct Entry {
    std::size_t i, j;
    RationalFunction w;
  };
  std::vector<Entry> entries;
  std::size_t declared = 0, largest = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '#' || tok[0][0] == '%') continue;
    const auto where = " on line " + std::to_string(lineno);
    const auto index = [&](const std::string& t) {
      const mpq_class q = parse_rational(t);
      if (q.get_den() != 1 || q < 1)
        throw Error(ErrorCode::ParseError, "bad vertex '" + t + "'" + where);
      return static_cast<std::size_t>(q.get_num().get_ui());
    };
    if (tok[0] == "vertices") {
      if (tok.size() != 2) throw Error(ErrorCode::ParseError, "expected `vertices N`" + where);
      declared = index(tok[1]);
      continue;
    }
    if (tok.size() < 3) throw Error(ErrorCode::ParseError, "expected `i j coefficients`" + where);
    const std::size_t i = index(tok[0]), j = index(tok[1]);
    std::vector<mpq_class> num, den;
    bool in_den = false;
    for (std::size_t t = 2; t < tok.size(); ++t) {
      if (tok[t] == "/") {
        if (in_den) throw Error(ErrorCode::ParseError, "second '/'" + where);
        in_den = true;
        continue;
      }
      (in_den ? den : num).push_back(parse_rational(tok[t]));
    }
    if (in_den && den.empty()) throw Error(ErrorCode::ParseError, "empty denominator" + where);
    Polynomial d = in_den ? Polynomial(den) : Polynomial(1);
    if (d.is_zero()) throw Error(ErrorCode::DivisionByZeroFunction, "zero denominator" + where);
    entries.push_back({i - 1, j - 1, RationalFunction(Polynomial(num), d)});
    largest = std::max({largest, i, j});
  }
  if (declared != 0 && largest > declared)
    throw Error(ErrorCode::IndexOutOfRange, "vertex " + std::to_string(largest) + " exceeds `vertices`",
                largest);
  const std::size_t n = declared != 0 ? declared : largest;
  if (n == 0) throw Error(ErrorCode::EmptyInput, "graph has no vertices");
  WeightedDigraph g(n);
  for (auto& e : entries) g.set_weight(e.i, e.j, g.weight(e.i, e.j) + e.w);
  return g;
}

WeightedDigraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  return parse_graph(in);
}

}  // namespace isored
