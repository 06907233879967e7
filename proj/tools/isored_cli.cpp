#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "isored/bench.hpp"
#include "isored/matrix_io.hpp"
#include "isored/randgen.hpp"
#include "isored/reduction.hpp"
#include "isored/solvers.hpp"
#include "isored/spectral.hpp"
#include "isored/symbolic.hpp"

namespace {

using namespace isored;
using json = nlohmann::json;

// "1,3,5-8" -> {1, 3, 5, 6, 7, 8}
std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) {
    if (part.empty()) continue;
    const auto dash = part.find('-');
    const auto number = [&](const std::string& s) {
      const mpq_class q = parse_rational(s);
      if (q.get_den() != 1 || q < 1) throw Error(ErrorCode::ParseError, "bad index '" + s + "'");
      return static_cast<std::size_t>(q.get_num().get_ui());
    };
    if (dash == std::string::npos) {
      out.push_back(number(part));
    } else {
      const std::size_t lo = number(part.substr(0, dash)), hi = number(part.substr(dash + 1));
      if (hi < lo) throw Error(ErrorCode::ParseError, "empty range '" + part + "'");
      for (std::size_t i = lo; i <= hi; ++i) out.push_back(i);
    }
  }
  return out;
}

SelectionKind parse_strategy(const std::string& s) {
  if (s == "first") return SelectionKind::First;
  if (s == "random") return SelectionKind::Random;
  if (s == "pivot") return SelectionKind::PivotGreedy;
  throw Error(ErrorCode::ParseError, "unknown strategy '" + s + "'");
}

ReductionMode parse_mode(const std::string& s) {
  if (s == "block") return ReductionMode::Block;
  if (s == "seq") return ReductionMode::Sequential;
  throw Error(ErrorCode::ParseError, "unknown mode '" + s + "'");
}

StochasticMatrix load_stochastic(const std::string& path, bool transpose) {
  return validate_stochastic(io::read_matrix_file(path, transpose));
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

std::string vector_line(const Vector& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) out += (i ? " " : "") + io::format_double(v(i));
  return out;
}

// ---------------------------------------------------------------- spectral

struct SpectralArgs {
  std::string matrix;
  bool json = false;
  double edge_eps = 0.0;
};

int run_spectral(const SpectralArgs& args, bool transpose) {
  const StochasticMatrix a = load_stochastic(args.matrix, transpose);
  const SpectralReport r = spectral_report(a, args.edge_eps);
  const ClassDecomposition d = classify(a, args.edge_eps);
  if (args.json) {
    json j{{"n", r.n},         {"tau", r.tau},
           {"rho_i", r.rho_i}, {"gap", r.gap},
           {"m", r.m},         {"num_classes", r.num_classes},
           {"num_essential", r.num_essential}, {"non_critical", r.non_critical}};
    j["eigenvalues"] = json::array();
    for (auto z : r.eigenvalues) j["eigenvalues"].push_back(complex_json(z));
    j["classes"] = json::array();
    for (std::size_t c = 0; c < d.classes.size(); ++c)
      j["classes"].push_back({{"vertices", d.classes[c].to_one_based()},
                              {"essential", static_cast<bool>(d.essential[c])},
                              {"period", d.periods[c]}});
    j["transient"] = d.transient.to_one_based();
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  std::cout << "n             " << r.n << '\n'
            << "tau           " << io::format_double(r.tau) << '\n'
            << "rho_i         " << io::format_double(r.rho_i) << '\n'
            << "gap           " << io::format_double(r.gap) << '\n'
            << "m             " << io::format_double(r.m) << '\n'
            << "classes       " << r.num_classes << " (" << r.num_essential << " essential)\n"
            << "non-critical  " << (r.non_critical ? "yes" : "no") << '\n';
  return 0;
}

// ------------------------------------------------------------------ reduce

struct ReduceArgs {
  std::string matrix;
  std::string keep;
  std::size_t size = 0;
  std::string strategy = "random";
  std::uint64_t seed = 0;
  std::string mode = "block";
  std::string output = "reduced";
};

int run_reduce(const ReduceArgs& args, bool transpose) {
  const StochasticMatrix a = load_stochastic(args.matrix, transpose);
  IndexSet kept;
  if (!args.keep.empty()) {
    kept = IndexSet::from_one_based(parse_index_list(args.keep), a.size());
  } else {
    if (args.size == 0) throw Error(ErrorCode::PreconditionViolation, "give --keep or --size");
    kept = select_subset(a, {parse_strategy(args.strategy), args.size, args.seed, kDefaultPivotDelta});
  }
  const ReductionRecord rec = reduce(a, kept, parse_mode(args.mode));
  io::write_matrix_file(args.output + ".R.mtx", rec.reduced);
  {
    std::ofstream out(args.output + ".lift.mtx");
    if (!out) throw Error(ErrorCode::ParseError, "cannot write lift matrix");
    io::write_array(out, rec.lift);
  }
  std::vector<std::size_t> pivots;
  for (auto k : rec.pivot_order) pivots.push_back(k + 1);
  json j{{"kept", rec.kept.to_one_based()},
         {"eliminated", rec.kept.complement().to_one_based()},
         {"pivot_order", pivots},
         {"condition_estimate", rec.condition_estimate},
         {"column_sum_drift", rec.column_sum_drift},
         {"reduced", args.output + ".R.mtx"},
         {"lift", args.output + ".lift.mtx"}};
  std::ofstream(args.output + ".json") << j.dump(2) << '\n';
  std::cout << j.dump(2) << '\n';
  return 0;
}

// --------------------------------------------------------------- symreduce

struct SymArgs {
  std::string graph;
  std::string keep;
  std::string eval;
  bool spectrum = false;
};

int run_symreduce(const SymArgs& args) {
  const WeightedDigraph g = read_graph_file(args.graph);
  const IndexSet kept = IndexSet::from_one_based(parse_index_list(args.keep), g.size());
  const WeightedDigraph r = graph_reduce(g, kept);
  const auto labels = kept.to_one_based();
  for (std::size_t a = 0; a < r.size(); ++a)
    for (std::size_t b = 0; b < r.size(); ++b)
      if (r.has_edge(a, b))
        std::cout << "R(" << labels[a] << ", " << labels[b] << ") = " << to_string(r.weight(a, b))
                  << '\n';
  if (!args.eval.empty()) {
    const mpq_class lambda0 = parse_rational(args.eval);
    const auto values = evaluate_exact(r, lambda0);
    std::cout << "at lambda = " << lambda0.get_str() << ":\n";
    for (const auto& row : values) {
      for (std::size_t b = 0; b < row.size(); ++b)
        std::cout << (b ? "  " : "") << row[b].get_str();
      std::cout << '\n';
    }
  }
  if (args.spectrum) {
    std::cout << "spectrum:";
    for (auto z : reduced_spectrum(r)) {
      std::cout << ' ' << io::format_double(z.real());
      if (z.imag() != 0.0) std::cout << (z.imag() > 0 ? "+" : "") << io::format_double(z.imag()) << 'i';
    }
    std::cout << '\n';
  }
  return 0;
}

// -------------------------------------------------------------- stationary

struct StationaryArgs {
  std::string matrix;
  std::string method = "iso";
  int precision = 8;
  std::size_t keep = 0;
  std::string strategy = "random";
  std::uint64_t seed = 0;
  std::string mode = "block";
  std::string inner = "auto";
  std::size_t max_iters = 1'000'000;
  std::size_t rereductions = 0;
  bool json = false;
  std::string output;
};

int run_stationary(const StationaryArgs& args, bool transpose) {
  const StochasticMatrix a = load_stochastic(args.matrix, transpose);
  SolverConfig cfg;
  cfg.precision = args.precision;
  cfg.seed = args.seed;
  cfg.max_iters = args.max_iters;
  cfg.mode = parse_mode(args.mode);
  cfg.max_rereductions = args.rereductions;
  const std::size_t keep =
      args.keep != 0 ? args.keep : std::max<std::size_t>(1, a.size() / 10);
  cfg.strategy = {parse_strategy(args.strategy), keep, args.seed, kDefaultPivotDelta};
  if (args.inner == "auto") cfg.inner = InnerSolver::Automatic;
  else if (args.inner == "pf") cfg.inner = InnerSolver::PerronFrobenius;
  else if (args.inner == "direct") cfg.inner = InnerSolver::Direct;
  else throw Error(ErrorCode::ParseError, "unknown inner solver '" + args.inner + "'");

  SolveOutcome out = [&] {
    if (args.method == "pf") return perron_frobenius(a, cfg);
    if (args.method == "direct") return direct_stationary(a);
    if (args.method == "iso") return isospectral_stationary(a, cfg);
    throw Error(ErrorCode::ParseError, "unknown method '" + args.method + "'");
  }();

  if (!args.output.empty()) {
    std::ofstream f(args.output);
    io::write_vector(f, out.v.values());
  }
  if (args.json) {
    json j{{"method", std::string(to_string(out.method))},
           {"v", std::vector<double>(out.v.values().begin(), out.v.values().end())},
           {"residual", out.residual},
           {"iterations", out.iterations},
           {"wall_time", out.wall_time},
           {"converged", out.converged}};
    if (out.reduction) {
      j["kept"] = out.reduction->kept.to_one_based();
      j["condition_estimate"] = out.reduction->condition_estimate;
      j["singular_retries"] = out.singular_retries;
    }
    std::cout << j.dump(2) << '\n';
  } else {
    if (args.output.empty()) std::cout << "v           " << vector_line(out.v.values()) << '\n';
    std::cout << "residual    " << io::format_double(out.residual) << '\n'
              << "iterations  " << out.iterations << (out.converged ? "" : " (max_iters reached)")
              << '\n'
              << "wall_time   " << io::format_double(out.wall_time) << '\n';
  }
  return out.converged ? 0 : 3;
}

// --------------------------------------------------------------------- gen

struct GenArgs {
  std::string kind = "burr-sparse";
  std::size_t n = 1000;
  std::size_t nnz = 4;
  double alpha = 0.2;
  std::uint64_t seed = 1;
  std::size_t m = 3;
  double a = 0.25;
  double p = 0.15;
  std::string variant = "padded";
  double c = 1.0;
  std::string output;
};

int run_gen(const GenArgs& args) {
  if (args.output.empty()) throw Error(ErrorCode::PreconditionViolation, "-o is required");
  const StochasticMatrix m = [&] {
    if (args.kind == "burr-sparse")
      return gen_sparse_stochastic({args.n, args.nnz, BurrConfig{args.alpha}, args.seed});
    if (args.kind == "banded") return make_banded(args.n, args.m, args.seed);
    if (args.kind == "near-avg") return make_near_averaging(args.n, args.c, args.seed);
    if (args.kind == "two-block") {
      TwoBlockVariant v;
      if (args.variant == "padded") v = TwoBlockVariant::Padded;
      else if (args.variant == "l-weighted") v = TwoBlockVariant::LWeighted;
      else if (args.variant == "single-row") v = TwoBlockVariant::SingleRow;
      else throw Error(ErrorCode::ParseError, "unknown variant '" + args.variant + "'");
      return make_two_block(args.a, args.p, gen_dense_stochastic(args.m, args.seed), v);
    }
    throw Error(ErrorCode::ParseError, "unknown kind '" + args.kind + "'");
  }();
  io::write_matrix_file(args.output, m);
  return 0;
}

// ------------------------------------------------------------------- bench

struct BenchArgs {
  RunConfig run;
  std::string baseline = "direct";
  std::string matrix;
  bool no_rho = false;
};

int run_bench(BenchArgs args, bool transpose) {
  if (args.baseline == "direct") args.run.baseline = Baseline::Direct;
  else if (args.baseline == "pf") args.run.baseline = Baseline::PerronFrobenius;
  else throw Error(ErrorCode::ParseError, "unknown baseline '" + args.baseline + "'");
  args.run.compute_rho = !args.no_rho;

  std::vector<BenchRecord> records;
  if (!args.matrix.empty()) {
    const StochasticMatrix a = load_stochastic(args.matrix, transpose);
    RunConfig cfg = args.run;
    cfg.keep = std::min(cfg.keep, a.size());
    for (std::size_t t = 0; t < cfg.trials; ++t)
      records.push_back(compare_on(a, cfg, derive_seed(cfg.seed, t)));
    if (!cfg.output.empty()) {
      std::ofstream out(cfg.output);
      write_csv(out, records);
    }
  } else {
    records = run_comparison(args.run);
  }
  if (args.run.output.empty()) write_csv(std::cout, records);
  std::cout << format_summary(summarize(records));
  for (const auto& r : records)
    if (!std::isfinite(r.e1) || !std::isfinite(r.e2)) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stationary measures of column-stochastic matrices by isospectral reduction"};
  app.require_subcommand(1);
  bool transpose = false;
  app.add_flag("--transpose", transpose, "Input matrices are row-stochastic; transpose on load");

  SpectralArgs spectral;
  auto* sp = app.add_subcommand("spectral", "tau, inner spectral radius, gap, classes");
  sp->add_option("matrix", spectral.matrix, "MatrixMarket file")->required();
  sp->add_flag("--json", spectral.json);
  sp->add_option("--edge-eps", spectral.edge_eps, "Entries at or below this are not edges");

  ReduceArgs reduce_args;
  auto* rd = app.add_subcommand("reduce", "Isospectral reduction at lambda = 1");
  rd->add_option("matrix", reduce_args.matrix)->required();
  rd->add_option("--keep", reduce_args.keep, "Kept vertices, 1-based, e.g. 1,2,5-9");
  rd->add_option("--size", reduce_args.size, "Kept set size for --strategy");
  rd->add_option("--strategy", reduce_args.strategy, "first | random | pivot");
  rd->add_option("--seed", reduce_args.seed);
  rd->add_option("--mode", reduce_args.mode, "block | seq");
  rd->add_option("-o,--output", reduce_args.output, "Output prefix");

  SymArgs sym;
  auto* sr = app.add_subcommand("symreduce", "Exact graph reduction over rational functions");
  sr->add_option("graph", sym.graph, "Edge list `i j num... / den...`")->required();
  sr->add_option("--keep", sym.keep, "Kept vertices, 1-based")->required();
  sr->add_option("--eval", sym.eval, "Evaluate the reduced matrix at this lambda");
  sr->add_flag("--spectrum", sym.spectrum, "Print the roots of det(R(lambda) - lambda I)");

  StationaryArgs st;
  auto* sv = app.add_subcommand("stationary", "Stationary vector");
  sv->add_option("matrix", st.matrix)->required();
  sv->add_option("--method", st.method, "pf | iso | direct");
  sv->add_option("--p", st.precision, "Precision exponent");
  sv->add_option("--keep", st.keep, "Kept set size (default n/10)");
  sv->add_option("--strategy", st.strategy, "first | random | pivot");
  sv->add_option("--seed", st.seed);
  sv->add_option("--mode", st.mode, "block | seq");
  sv->add_option("--inner", st.inner, "auto | pf | direct");
  sv->add_option("--max-iters", st.max_iters);
  sv->add_option("--rereductions", st.rereductions, "Redraw S while the reduced gap is tiny");
  sv->add_option("-o,--output", st.output, "Write v to this file");
  sv->add_flag("--json", st.json);

  GenArgs gen;
  auto* gn = app.add_subcommand("gen", "Generate a test matrix");
  gn->add_option("--kind", gen.kind, "burr-sparse | two-block | banded | near-avg");
  gn->add_option("--n", gen.n);
  gn->add_option("--nnz", gen.nnz);
  gn->add_option("--alpha", gen.alpha);
  gn->add_option("--seed", gen.seed);
  gn->add_option("--m", gen.m, "Half-bandwidth, or size of B for two-block");
  gn->add_option("--a", gen.a);
  gn->add_option("--p", gen.p);
  gn->add_option("--variant", gen.variant, "padded | l-weighted | single-row");
  gn->add_option("--c", gen.c, "Decay rate for near-avg");
  gn->add_option("-o,--output", gen.output)->required();

  BenchArgs bench;
  auto* bn = app.add_subcommand("bench", "Baseline vs isospectral scheme on random chains");
  bn->add_option("--n", bench.run.n);
  bn->add_option("--nnz", bench.run.nnz);
  bn->add_option("--alpha", bench.run.alpha);
  bn->add_option("--keep", bench.run.keep);
  bn->add_option("--trials", bench.run.trials);
  bn->add_option("--seed", bench.run.seed);
  bn->add_option("--precision", bench.run.precision);
  bn->add_option("--max-iters", bench.run.max_iters);
  bn->add_option("-o,--output", bench.run.output, "CSV output (stdout when omitted)");
  bn->add_option("--baseline", bench.baseline, "direct | pf");
  bn->add_option("--parallel", bench.run.parallel, "Concurrent trials");
  bn->add_option("--matrix", bench.matrix, "Run the trials on this matrix instead");
  bn->add_flag("--no-rho", bench.no_rho, "Skip the dense eigenvalue computation");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sp) return run_spectral(spectral, transpose);
    if (*rd) return run_reduce(reduce_args, transpose);
    if (*sr) return run_symreduce(sym);
    if (*sv) return run_stationary(st, transpose);
    if (*gn) return run_gen(gen);
    if (*bn) return run_bench(bench, transpose);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return 2;
  }
  return 0;
}
