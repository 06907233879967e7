#include "isored/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>

#include "isored/matrix_io.hpp"
#include "isored/randgen.hpp"
#include "isored/solvers.hpp"
#include "isored/spectral.hpp"

namespace isored {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr const char* kHeader = "rho_i,t1,t2,e1,e2,d,flags";

void add_flag(std::string& flags, const std::string& f) {
  if (!flags.empty()) flags += ';';
  flags += f;
}

Quartiles quartiles_or_nan(std::vector<double> values) {
  std::erase_if(values, [](double x) { return !std::isfinite(x); });
  if (values.empty()) return {kNaN, kNaN, kNaN};
  return quartiles(std::move(values));
}

}  // namespace

bool BenchRecord::convergent() const {
  for (double x : {t1, t2, e1, e2, d})
    if (!std::isfinite(x)) return false;
  return flags.find("max_iters") == std::string::npos;
}

BenchRecord compare_on(const StochasticMatrix& a, const RunConfig& cfg, std::uint64_t trial_seed) {
  BenchRecord r{kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, {}};
  if (cfg.compute_rho) {
    try {
      r.rho_i = inner_spectral_radius(a);
    } catch (const Error& e) {
      add_flag(r.flags, "rho:" + std::string(to_string(e.code())));
    }
  }

  SolverConfig base;
  base.precision = cfg.precision;
  base.max_iters = cfg.max_iters;
  base.seed = derive_seed(trial_seed, 2);
  const bool direct = cfg.baseline == Baseline::Direct;

  std::optional<SolveOutcome> first, second;
  try {
    first = direct ? direct_stationary(a) : perron_frobenius(a, base);
  } catch (const Error& e) {
    add_flag(r.flags, "baseline:" + std::string(to_string(e.code())));
  }

  SolverConfig scheme = base;
  scheme.strategy = SelectionStrategy::random(cfg.keep, derive_seed(trial_seed, 1));
  scheme.inner = InnerSolver::Automatic;
  try {
    second = isospectral_stationary(a, scheme);
  } catch (const Error& e) {
    add_flag(r.flags, "scheme:" + std::string(to_string(e.code())));
  }

  if (first) {
    r.t1 = first->wall_time;
    r.e1 = first->residual;
    if (!first->converged) add_flag(r.flags, "baseline_max_iters");
  }
  if (second) {
    r.t2 = second->wall_time;
    r.e2 = second->residual;
    if (!second->converged) add_flag(r.flags, "scheme_max_iters");
    if (second->singular_retries > 0)
      add_flag(r.flags, "retries=" + std::to_string(second->singular_retries));
  }
  if (first && second) r.d = (first->v.values() - second->v.values()).norm();
  return r;
}

std::vector<BenchRecord> run_comparison(const RunConfig& cfg) {
  if (cfg.trials < 1) throw Error(ErrorCode::PreconditionViolation, "trials must be >= 1");
  if (cfg.keep < 1 || cfg.keep > cfg.n)
    throw Error(ErrorCode::PreconditionViolation, "keep must lie in 1..n");
  std::vector<BenchRecord> records(cfg.trials);
  const auto trials = static_cast<long>(cfg.trials);
  const int workers = static_cast<int>(std::max<std::size_t>(1, cfg.parallel));
#pragma omp parallel for num_threads(workers) schedule(dynamic, 1) if (workers > 1)
  for (long t = 0; t < trials; ++t) {
    const std::uint64_t seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(t));
    SparseGenConfig gen{cfg.n, cfg.nnz, BurrConfig{cfg.alpha}, seed};
    try {
      const StochasticMatrix a = gen_sparse_stochastic(gen);
      records[static_cast<std::size_t>(t)] = compare_on(a, cfg, seed);
    } catch (const Error& e) {
      records[static_cast<std::size_t>(t)] =
          BenchRecord{kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, "generate:" + std::string(to_string(e.code()))};
    }
  }
  if (!cfg.output.empty()) {
    std::ofstream out(cfg.output);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + cfg.output + "'");
    write_csv(out, records);
  }
  return records;
}

Quartiles quartiles(std::vector<double> values) {
  std::erase_if(values, [](double x) { return !std::isfinite(x); });
  if (values.empty()) throw Error(ErrorCode::EmptyInput, "no finite values");
  std::sort(values.begin(), values.end());
  const auto at = [&](double p) {
    const double h = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  return {at(0.25), at(0.5), at(0.75)};
}

BenchSummary summarize(const std::vector<BenchRecord>& records) {
  if (records.empty()) throw Error(ErrorCode::EmptyInput, "no benchmark records");
  BenchSummary s;
  s.trials = records.size();
  std::vector<double> rho, time, err, dist;
  std::size_t better = 0;
  for (const auto& r : records) {
    rho.push_back(r.rho_i);
    time.push_back(r.t2 / r.t1);
    err.push_back(r.e2 / r.e1);
    dist.push_back(r.d);
    if (r.convergent()) {
      ++s.convergent;
      if (r.e2 <= r.e1) ++better;
    }
  }
  s.rho_i = quartiles_or_nan(rho);
  s.time_ratio = quartiles_or_nan(time);
  s.error_ratio = quartiles_or_nan(err);
  s.distance = quartiles_or_nan(dist);
  s.fraction_e2_le_e1 =
      s.convergent == 0 ? kNaN : static_cast<double>(better) / static_cast<double>(s.convergent);
  return s;
}

std::string format_summary(const BenchSummary& s) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "trials %zu, convergent %zu\n", s.trials, s.convergent);
  out += line;
  std::snprintf(line, sizeof line, "%-8s %12s %12s %12s\n", "", "q1", "median", "q3");
  out += line;
  const auto row = [&](const char* name, const Quartiles& q) {
    std::snprintf(line, sizeof line, "%-8s %12.4g %12.4g %12.4g\n", name, q.q1, q.median, q.q3);
    out += line;
  };
  row("rho_i", s.rho_i);
  row("t2/t1", s.time_ratio);
  row("e2/e1", s.error_ratio);
  row("d", s.distance);
  std::snprintf(line, sizeof line, "e2 <= e1 in %.1f%% of convergent trials\n",
                100.0 * s.fraction_e2_le_e1);
  out += line;
  return out;
}

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << kHeader << '\n';
  for (const auto& r : records) {
    for (double x : {r.rho_i, r.t1, r.t2, r.e1, r.e2, r.d}) out << io::format_double(x) << ',';
    out << r.flags << '\n';
  }
}

std::vector<BenchRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::EmptyInput, "empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) throw Error(ErrorCode::ParseError, "unexpected CSV header '" + line + "'");
  std::vector<BenchRecord> records;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    double v[6];
    std::size_t pos = 0;
    for (double& x : v) {
      const std::size_t comma = line.find(',', pos);
      if (comma == std::string::npos)
        throw Error(ErrorCode::ParseError, "CSV row has too few fields: '" + line + "'");
      x = io::parse_double(std::string_view(line).substr(pos, comma - pos));
      pos = comma + 1;
    }
    records.push_back({v[0], v[1], v[2], v[3], v[4], v[5], line.substr(pos)});
  }
  return records;
}

}  // namespace isored
