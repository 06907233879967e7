#pragma once

// Baseline-versus-isospectral comparison on random heavy-tailed chains.

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "isored/matrix.hpp"

namespace isored {

enum class Baseline { Direct, PerronFrobenius };

struct RunConfig {
  std::size_t trials = 36;
  std::size_t n = 1000;
  std::size_t nnz = 4;
  double alpha = 0.2;
  std::size_t keep = 90;
  std::uint64_t seed = 1;
  Baseline baseline = Baseline::Direct;
  std::string output;        // CSV path, empty for none
  std::size_t parallel = 1;  // concurrent trials
  int precision = 8;
  std::size_t max_iters = 1'000'000;
  bool compute_rho = true;
};

struct BenchRecord {
  double rho_i = 0.0;
  double t1 = 0.0;  // baseline seconds
  double t2 = 0.0;  // isospectral scheme seconds, reduction and lift included
  double e1 = 0.0;  // baseline residual
  double e2 = 0.0;  // scheme residual
  double d = 0.0;   // |v1 - v2|_2
  std::string flags;  // ';'-separated warnings, empty when clean

  /// Both solves finished, converged and produced finite residuals.
  bool convergent() const;
};

/// One trial on a given matrix. Failures land in `flags` with NaN fields.
BenchRecord compare_on(const StochasticMatrix& a, const RunConfig& cfg, std::uint64_t trial_seed);

/// cfg.trials independent trials; trial t uses seed derive_seed(cfg.seed, t).
std::vector<BenchRecord> run_comparison(const RunConfig& cfg);

struct Quartiles {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
};

struct BenchSummary {
  std::size_t trials = 0;
  std::size_t convergent = 0;
  Quartiles rho_i;
  Quartiles time_ratio;   // t2 / t1
  Quartiles error_ratio;  // e2 / e1
  Quartiles distance;     // d
  double fraction_e2_le_e1 = 0.0;  // over convergent trials
};

/// Linear-interpolation quartiles of the finite values. Throws EmptyInput.
Quartiles quartiles(std::vector<double> values);
BenchSummary summarize(const std::vector<BenchRecord>& records);
std::string format_summary(const BenchSummary& s);

/// Header `rho_i,t1,t2,e1,e2,d,flags`, shortest round-trip decimals.
void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);
std::vector<BenchRecord> read_csv(std::istream& in);

}  // namespace isored
