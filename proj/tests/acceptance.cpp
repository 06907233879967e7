// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit status
// when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "isored/bench.hpp"
#include "isored/randgen.hpp"
#include "isored/reduction.hpp"
#include "isored/solvers.hpp"
#include "isored/spectral.hpp"
#include "isored/symbolic.hpp"
#include "oracles.hpp"

using namespace isored;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double max_diff(const DenseMatrix& a, const DenseMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

std::size_t draw(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

IndexSet random_subset(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(k);
  return IndexSet::from_zero_based(all, n);
}

// Removes from `pool` the nearest match of every value in `drop` closer than tol.
std::vector<std::complex<double>> multiset_minus(std::vector<std::complex<double>> pool,
                                                 const std::vector<std::complex<double>>& drop,
                                                 double tol) {
  for (auto z : drop) {
    auto it = std::min_element(pool.begin(), pool.end(), [&](auto p, auto q) {
      return std::abs(p - z) < std::abs(q - z);
    });
    if (it != pool.end() && std::abs(*it - z) <= tol) pool.erase(it);
  }
  return pool;
}

// Largest distance in a greedy nearest pairing; infinity on size mismatch.
double pairing_distance(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (auto z : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](auto p, auto q) {
      return std::abs(p - z) < std::abs(q - z);
    });
    worst = std::max(worst, std::abs(*it - z));
    b.erase(it);
  }
  return worst;
}

StochasticMatrix example_a() {
  DenseMatrix m(3, 3);
  m << 0, 0.9, 0, 0.5, 0, 1, 0.5, 0.1, 0;
  return StochasticMatrix::from_dense(m);
}

// ---------------------------------------------------------------------------

Verdict three_state_example() {
  const auto t0 = Clock::now();
  const auto a = example_a();
  const double tau_a = diameter_tau(a);
  const double rho_a = inner_spectral_radius(a);
  const auto r = reduce_block(a, IndexSet::from_one_based({1, 2}, 3)).reduced;
  DenseMatrix expected(2, 2);
  expected << 0, 0.9, 1, 0.1;
  const double tau_r = diameter_tau(r);
  const double rho_r = inner_spectral_radius(r);
  const double elapsed = seconds_since(t0);

  Verdict v;
  v.pass = tau_a == 1.0 && std::abs(rho_a - 0.6708) <= 1e-3 && r.to_dense() == expected &&
           std::abs(tau_r - 0.9) <= 1e-12 && std::abs(rho_r - 0.9) <= 1e-9 && elapsed < 1.0;
  v.detail = "tau(A)=" + fmt("%.17g", tau_a) + " rho_i(A)=" + fmt("%.6f", rho_a) +
             " R exact=" + (r.to_dense() == expected ? "yes" : "no") + " tau(R)=" +
             fmt("%.15g", tau_r) + " rho_i(R)=" + fmt("%.12f", rho_r) + " time=" +
             fmt("%.3fs", elapsed);
  return v;
}

struct Pair {
  StochasticMatrix a;
  IndexSet kept;
};

Pair random_pair(std::uint64_t k) {
  Rng rng(derive_seed(0xA11CE, k));
  const std::size_t n = draw(rng, 3, 60);
  const std::size_t s = draw(rng, 1, n - 1);
  switch (k % 3) {
    case 0: return {gen_dense_stochastic(n, k), random_subset(rng, n, s)};
    case 1: return {gen_irreducible_sparse(n, draw(rng, 1, 3), BurrConfig{0.5}, k), random_subset(rng, n, s)};
    default: return {gen_irreducible_sparse(n, draw(rng, 1, 3), std::nullopt, k), random_subset(rng, n, s)};
  }
}

struct CorpusResult {
  std::size_t pairs = 0, stochastic_violations = 0, tau_violations = 0, growth_violations = 0,
              errors = 0;
  double worst_drift = 0.0;
  double seconds = 0.0;
};

const CorpusResult& corpus() {
  static const CorpusResult result = [] {
    CorpusResult c;
    const auto t0 = Clock::now();
    for (std::uint64_t k = 0; k < 10000; ++k) {
      const Pair p = random_pair(k);
      ++c.pairs;
      try {
        const auto rec = reduce_block(p.a, p.kept);
        c.worst_drift = std::max(c.worst_drift, rec.column_sum_drift);
        if (rec.column_sum_drift > 1e-10) ++c.stochastic_violations;
        if (diameter_tau(rec.reduced) > diameter_tau(p.a) + 1e-10) ++c.tau_violations;
        const double m = min_entry(p.a);
        const double e = static_cast<double>(p.a.size() - p.kept.size());
        if (min_entry(rec.reduced) < m / (1.0 - e * m) - 1e-12) ++c.growth_violations;
      } catch (const Error&) {
        ++c.errors;
      }
    }
    c.seconds = seconds_since(t0);
    return c;
  }();
  return result;
}

Verdict seminorm_property() {
  const auto& c = corpus();
  Verdict v;
  v.pass = c.stochastic_violations == 0 && c.tau_violations == 0 && c.errors == 0 && c.seconds < 60.0;
  v.detail = std::to_string(c.pairs) + " pairs, column-sum violations " +
             std::to_string(c.stochastic_violations) + " (worst drift " + fmt("%.2e", c.worst_drift) +
             "), tau violations " + std::to_string(c.tau_violations) + ", errors " +
             std::to_string(c.errors) + ", time " + fmt("%.1fs", c.seconds);
  return v;
}

Verdict min_entry_growth() {
  const auto& c = corpus();
  Verdict v;
  v.pass = c.growth_violations == 0 && c.errors == 0;
  v.detail = std::to_string(c.pairs) + " pairs, violations " + std::to_string(c.growth_violations);
  return v;
}

Verdict path_independence() {
  double worst = 0.0;
  std::size_t errors = 0;
  for (std::uint64_t k = 0; k < 500; ++k) {
    Rng rng(derive_seed(0xBEEF, k));
    const std::size_t n = draw(rng, 3, 40);
    const auto a = k % 2 ? gen_dense_stochastic(n, k)
                         : gen_irreducible_sparse(n, draw(rng, 1, std::min<std::size_t>(4, n)), std::nullopt, k);
    const auto kept = random_subset(rng, n, draw(rng, 1, n - 1));
    const auto rest = kept.complement();
    std::vector<std::size_t> o1(rest.begin(), rest.end()), o2 = o1;
    std::shuffle(o1.begin(), o1.end(), rng);
    std::shuffle(o2.begin(), o2.end(), rng);
    try {
      const DenseMatrix r1 = reduce_sequential(a, kept, o1).reduced.to_dense();
      const DenseMatrix r2 = reduce_sequential(a, kept, o2).reduced.to_dense();
      const DenseMatrix rb = reduce_block(a, kept).reduced.to_dense();
      worst = std::max({worst, max_diff(r1, r2), max_diff(r1, rb), max_diff(r2, rb)});
    } catch (const Error&) {
      ++errors;
    }
  }
  Verdict v;
  v.pass = worst <= 1e-9 && errors == 0;
  v.detail = "500 matrices, max discrepancy " + fmt("%.2e", worst) + ", errors " + std::to_string(errors);
  return v;
}

Verdict reconstruction() {
  std::size_t accepted = 0, residual_fail = 0, distance_fail = 0, errors = 0;
  double worst_res = 0.0, worst_dist = 0.0;
  for (std::uint64_t k = 0; accepted < 200; ++k) {
    Rng rng(derive_seed(0xC0FFEE, k));
    const std::size_t n = draw(rng, 20, 300);
    StochasticMatrix a = [&] {
      switch (k % 4) {
        case 0: return gen_irreducible_sparse(n, 4, BurrConfig{0.2}, k);
        case 1: return gen_irreducible_sparse(n, draw(rng, 1, 5), std::nullopt, k);
        case 2: return gen_dense_stochastic(n, k);
        default: {
          const std::size_t transients = draw(rng, 1, n / 3);
          return make_class_structured({{n - transients, 1, true}}, transients, k);
        }
      }
    }();
    if (!is_non_critical(a) || !oracle::non_critical(a.to_dense())) continue;
    ++accepted;
    SolverConfig cfg;
    cfg.seed = k;
    cfg.strategy = SelectionStrategy::random(n / 10, derive_seed(k, 7));
    try {
      const auto iso = isospectral_stationary(a, cfg);
      const auto direct = direct_stationary(a);
      const double res = residual(a, iso.v);
      const double dist = (iso.v.values() - direct.v.values()).norm();
      worst_res = std::max(worst_res, res);
      worst_dist = std::max(worst_dist, dist);
      if (res > 1e-8) ++residual_fail;
      if (dist > 1e-6) ++distance_fail;
    } catch (const Error&) {
      ++errors;
    }
  }
  Verdict v;
  v.pass = residual_fail == 0 && distance_fail == 0 && errors == 0;
  v.detail = "200 matrices, worst residual " + fmt("%.2e", worst_res) + ", worst distance to direct " +
             fmt("%.2e", worst_dist) + ", errors " + std::to_string(errors);
  return v;
}

struct RationalInstance {
  oracle::QMatrix q;
  IndexSet kept;
};

// Column-stochastic rational matrix whose eliminated part is acyclic apart
// from distinct non-zero loops, so the kept set is structural.
RationalInstance random_rational_graph(std::uint64_t k) {
  Rng rng(derive_seed(0xD1CE, k));
  const std::size_t n = draw(rng, 3, 7);
  const std::size_t s = draw(rng, 1, n - 1);
  const IndexSet kept = random_subset(rng, n, s);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::size_t> rank(n);
  for (std::size_t t = 0; t < n; ++t) rank[order[t]] = t;

  std::vector<std::vector<long>> w(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      // Edges inside the eliminated part only go forward in a random order.
      if (!kept.contains(i) && !kept.contains(j) && rank[j] > rank[i]) continue;
      if (std::bernoulli_distribution(0.6)(rng)) w[i][j] = static_cast<long>(draw(rng, 1, 9));
    }
  for (std::size_t j = 0; j < n; ++j) {
    if (kept.contains(j)) {
      if (std::bernoulli_distribution(0.5)(rng)) w[j][j] = static_cast<long>(draw(rng, 1, 9));
    }
    // Every column reaches a kept vertex.
    bool to_kept = false;
    for (std::size_t i : kept) to_kept = to_kept || w[i][j] > 0;
    if (!to_kept) w[kept[draw(rng, 0, s - 1)]][j] = static_cast<long>(draw(rng, 1, 9));
  }

  oracle::QMatrix q(n, std::vector<mpq_class>(n, 0));
  std::vector<long> loops;
  for (std::size_t j = 0; j < n; ++j) {
    long total = 0;
    for (std::size_t i = 0; i < n; ++i) total += w[i][j];
    for (std::size_t i = 0; i < n; ++i) q[i][j] = mpq_class(w[i][j], total);
    if (!kept.contains(j)) {
      // Distinct loop weight in (0, 1/2), the rest of the column rescaled.
      long num;
      do num = static_cast<long>(draw(rng, 1, 49));
      while (std::find(loops.begin(), loops.end(), num) != loops.end());
      loops.push_back(num);
      const mpq_class loop(num, 100);
      for (std::size_t i = 0; i < n; ++i) q[i][j] *= 1 - loop;
      q[j][j] = loop;
    }
    for (auto& x : q) x[j].canonicalize();
  }
  return {q, kept};
}

Verdict symbolic_equivalence() {
  double worst_value = 0.0, worst_root = 0.0;
  std::size_t failures = 0, not_structural = 0;
  for (std::uint64_t k = 0; k < 100; ++k) {
    const auto inst = random_rational_graph(k);
    const auto g = WeightedDigraph::from_rational(inst.q);
    if (!is_structural_set(g, inst.kept)) {
      ++not_structural;
      continue;
    }
    try {
      const auto reduced = graph_reduce(g, inst.kept);
      const DenseMatrix exact = evaluate_at(reduced, 1);
      const DenseMatrix a = evaluate_at(g, 0);
      const auto numeric = reduce_block(StochasticMatrix::from_dense(a), inst.kept).reduced.to_dense();
      const double value_gap = max_diff(exact, numeric);
      worst_value = std::max(worst_value, value_gap);

      std::vector<std::complex<double>> loops;
      for (std::size_t e : inst.kept.complement()) loops.emplace_back(a(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(e)), 0.0);
      const auto expected = multiset_minus(sorted_eigenvalues(a), loops, 1e-6);
      const double root_gap = pairing_distance(reduced_spectrum(reduced), expected);
      worst_root = std::max(worst_root, root_gap);
      if (value_gap > 1e-10 || root_gap > 1e-6) ++failures;
    } catch (const Error&) {
      ++failures;
    }
  }
  Verdict v;
  v.pass = failures == 0 && not_structural == 0;
  v.detail = "100 graphs, worst value gap " + fmt("%.2e", worst_value) + ", worst root gap " +
             fmt("%.2e", worst_root) + ", failures " + std::to_string(failures);
  return v;
}

Verdict family_examples() {
  std::vector<std::string> failed;

  double spectrum_gap = 0.0;
  for (double a : {0.1, 0.25, 0.4}) {
    DenseMatrix one(1, 1);
    one << 1.0;
    const auto m = make_two_block(a, 1.0, StochasticMatrix::from_dense(one), TwoBlockVariant::Padded);
    spectrum_gap = std::max(spectrum_gap, pairing_distance(sorted_eigenvalues(m.to_dense()),
                                                           {2 * a - 1, 0.0, 1.0}));
    const mpq_class qa(static_cast<long>(std::lround(a * 100)), 100);
    const auto g = WeightedDigraph::from_rational({{qa, qa, 1}, {qa, qa, 0}, {1 - 2 * qa, 1 - 2 * qa, 0}});
    spectrum_gap = std::max(spectrum_gap, pairing_distance(reduced_spectrum(g), {2 * a - 1, 0.0, 1.0}));
  }
  if (spectrum_gap > 1e-9) failed.push_back("spectrum");

  double google_gap = 0.0, tau_gap = 0.0;
  for (std::uint64_t k = 0; k < 50; ++k) {
    Rng rng(derive_seed(0xF00D, k));
    const std::size_t m = draw(rng, 2, 12);
    const auto b = gen_dense_stochastic(m, k);
    const double a = std::uniform_real_distribution<double>(0.05, 0.45)(rng);
    const double p = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
    const double q = 1.0 - p;
    const Vector flat = Vector::Constant(static_cast<Eigen::Index>(m), 1.0 / static_cast<double>(m));
    const auto google = make_two_block(a, p, b, TwoBlockVariant::LWeighted, flat);
    const auto r = reduce_block(google, two_block_kept(m, TwoBlockVariant::LWeighted)).reduced.to_dense();
    const auto mi = static_cast<Eigen::Index>(m);
    const DenseMatrix expected =
        q * b.to_dense() + DenseMatrix::Constant(mi, mi, (1.0 - q) / static_cast<double>(m));
    google_gap = std::max(google_gap, max_diff(r, expected));
    for (auto variant : {TwoBlockVariant::Padded, TwoBlockVariant::LWeighted, TwoBlockVariant::SingleRow}) {
      try {
        const auto blk = make_two_block(a, p, b, variant);
        const auto r = reduce_block(blk, two_block_kept(m, variant)).reduced;
        tau_gap = std::max(tau_gap, std::abs(diameter_tau(r) - q * diameter_tau(b)));
      } catch (const Error& e) {
        // Row means of B may violate L_k > a/m; those instances are outside the family.
        if (e.code() != ErrorCode::PreconditionViolation) tau_gap = INFINITY;
      }
    }
  }
  if (google_gap > 1e-12) failed.push_back("google");
  if (tau_gap > 1e-12) failed.push_back("tau");

  std::size_t one_zero_bad = 0, bounded_bad = 0, block_bad = 0;
  for (std::uint64_t k = 0; k < 500; ++k) {
    Rng rng(derive_seed(0x5EED, k));
    const std::size_t n = draw(rng, 3, 50);
    const auto inst = gen_one_zero_irreducible(n, k);
    const double lambda = std::abs(sorted_eigenvalues(inst.a)[0]);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i)
      if (i != inst.pivot) keep.push_back(i);
    if (!(reduce_block_at(inst.a, IndexSet::from_zero_based(keep, n), lambda).minCoeff() > 0.0)) ++one_zero_bad;

    const std::size_t zeros = draw(rng, 1, 5);
    const std::size_t n2 = draw(rng, 2 * zeros + 1, 40);
    const auto b = gen_bounded_zeros(n2, zeros, k);
    const std::size_t removed = draw(rng, 2 * (zeros - 1) + 1, n2 - 1);
    const auto kept = random_subset(rng, n2, n2 - removed);
    if (!(reduce_block(b, kept).reduced.to_dense().minCoeff() > 0.0)) ++bounded_bad;

    const std::size_t n3 = draw(rng, 3, 40);
    const auto blk = gen_primitive_block(n3, draw(rng, 1, n3 - 1), k);
    if (!(reduce_block(blk.a, blk.kept).reduced.to_dense().minCoeff() > 0.0)) ++block_bad;
  }
  if (one_zero_bad) failed.push_back("one-zero");
  if (bounded_bad) failed.push_back("bounded-zeros");
  if (block_bad) failed.push_back("primitive-block");

  Verdict v;
  v.pass = failed.empty();
  v.detail = "spectrum gap " + fmt("%.1e", spectrum_gap) + ", google gap " + fmt("%.1e", google_gap) +
             ", tau gap " + fmt("%.1e", tau_gap) + ", non-positive reductions " +
             std::to_string(one_zero_bad) + "/" + std::to_string(bounded_bad) + "/" +
             std::to_string(block_bad) + " of 500 each";
  return v;
}

Verdict gershgorin_decrease() {
  std::size_t violations = 0;
  double tightest = INFINITY;
  for (std::uint64_t k = 0; k < 500; ++k) {
    Rng rng(derive_seed(0x6E85, k));
    const std::size_t n = draw(rng, 3, 30);
    const auto a = gen_doubly_stochastic(n, k);
    const std::size_t node = draw(rng, 0, n - 1);
    const auto rec = eliminate_node(a, node);
    const auto before = gershgorin(a.to_dense());
    const auto after = gershgorin(rec.reduced.to_dense());
    for (std::size_t i = 0; i < rec.kept.size(); ++i) {
      const double drop = before[rec.kept[i]].radius - after[i].radius;
      tightest = std::min(tightest, drop);
      if (!(drop > 0.0)) ++violations;
    }
  }
  Verdict v;
  v.pass = violations == 0;
  v.detail = "500 matrices, violations " + std::to_string(violations) + ", smallest decrease " +
             fmt("%.2e", tightest);
  return v;
}

Verdict benchmark_trends() {
  const auto t0 = Clock::now();
  RunConfig cfg;
  const auto direct = summarize(run_comparison(cfg));
  RunConfig pf = cfg;
  pf.baseline = Baseline::PerronFrobenius;
  pf.compute_rho = false;
  const auto power = summarize(run_comparison(pf));
  const double elapsed = seconds_since(t0);

  const bool a = direct.rho_i.median >= 0.93;
  const bool b = direct.fraction_e2_le_e1 >= 0.8;
  const bool c = power.time_ratio.median < 1.0;
  Verdict v;
  v.pass = a && b && c && elapsed < 600.0;
  v.detail = std::string("(a) median rho_i ") + fmt("%.4f", direct.rho_i.median) + (a ? " ok" : " FAIL") +
             "; (b) e2<=e1 in " + fmt("%.1f%%", 100 * direct.fraction_e2_le_e1) + " of " +
             std::to_string(direct.convergent) + (b ? " ok" : " FAIL") + "; (c) median t2/t1 vs power " +
             fmt("%.3f", power.time_ratio.median) + (c ? " ok" : " FAIL") + " (vs direct " +
             fmt("%.3f", direct.time_ratio.median) + "); time " + fmt("%.0fs", elapsed);
  return v;
}

Verdict burr_sampler() {
  double worst = 0.0, worst_inverse = 0.0;
  for (double alpha : {0.2, 0.5, 0.8}) {
    Rng rng(derive_seed(0xB022, static_cast<std::uint64_t>(alpha * 10)));
    std::vector<double> xs(100000), inv(100000);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      xs[i] = burr_sample({alpha}, rng);
      inv[i] = 1.0 / xs[i];
    }
    const auto cdf = [alpha](double x) { return 1.0 - 1.0 / (1.0 + std::pow(x, alpha)); };
    worst = std::max(worst, oracle::ks_distance(xs, cdf));
    worst_inverse = std::max(worst_inverse, oracle::ks_distance(inv, cdf));
  }
  Verdict v;
  v.pass = worst <= 0.01 && worst_inverse <= 0.01;
  v.detail = "worst KS " + fmt("%.4f", worst) + ", of 1/X " + fmt("%.4f", worst_inverse);
  return v;
}

Verdict non_criticality() {
  std::size_t disagreements = 0, critical = 0;
  for (std::uint64_t k = 0; k < 2000; ++k) {
    Rng rng(derive_seed(0x0C1A55, k));
    StochasticMatrix a = [&] {
      switch (k % 4) {
        case 0: {
          const std::size_t n = draw(rng, 2, 40);
          return gen_irreducible_sparse(n, draw(rng, 1, std::min<std::size_t>(3, n)), std::nullopt, k);
        }
        case 1: {
          const std::size_t size = draw(rng, 2, 12);
          return make_class_structured({{size, draw(rng, 1, size), true}}, draw(rng, 0, 4), k);
        }
        default: {
          std::vector<ClassSpec> classes;
          const std::size_t count = draw(rng, 1, 4);
          for (std::size_t c = 0; c < count; ++c) {
            const std::size_t size = draw(rng, 1, 8);
            classes.push_back({size, draw(rng, 1, size), c == 0 || std::bernoulli_distribution(0.5)(rng)});
          }
          return make_class_structured(classes, draw(rng, 0, 5), k);
        }
      }
    }();
    const bool by_graph = is_non_critical(a);
    const bool by_spectrum = oracle::second_modulus(a.to_dense()) < 1.0 - 1e-9;
    if (by_graph != by_spectrum) ++disagreements;
    if (!by_graph) ++critical;
  }
  Verdict v;
  v.pass = disagreements == 0;
  v.detail = "2000 matrices (" + std::to_string(critical) + " critical), disagreements " +
             std::to_string(disagreements);
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"three-state example", three_state_example},
      {"reduced matrix stochastic, tau non-increasing", seminorm_property},
      {"minimum entry growth", min_entry_growth},
      {"elimination order independence", path_independence},
      {"stationary vector reconstruction", reconstruction},
      {"exact graph reduction equivalence", symbolic_equivalence},
      {"structured families", family_examples},
      {"gershgorin radius decrease", gershgorin_decrease},
      {"benchmark trends", benchmark_trends},
      {"burr sampler", burr_sampler},
      {"non-criticality equivalence", non_criticality},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Verdict v;
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failures;
    std::printf("%s %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
