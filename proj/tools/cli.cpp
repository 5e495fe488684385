#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mmexp/conditioning.hpp"
#include "mmexp/errors.hpp"
#include "mmexp/experiment.hpp"
#include "mmexp/matrix_market.hpp"

namespace mmexp::cli {

namespace {

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string a, b, e, f, out;
  double tol = 1e-1;
  int max_iter = 20;
  bool exact = false;
  bool json = false;
  std::uint64_t seed = 42;
  std::string name;
  Index n = 0;
};

void emit_matrix(const ComplexMatrix& m, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    write_matrix(out, m);
  } else {
    write_matrix(std::filesystem::path(path), m);
  }
}

MatrixPair load_pair(const Options& o) {
  return MatrixPair::create(read_matrix(std::filesystem::path(o.a)),
                            read_matrix(std::filesystem::path(o.b)));
}

void run_compute(const Options& o, std::ostream& out) {
  emit_matrix(mm_exp(load_pair(o)), o.out, out);
}

void run_frechet(const Options& o, std::ostream& out) {
  const MatrixPair pair = load_pair(o);
  const ComplexMatrix e = read_matrix(std::filesystem::path(o.e));
  const ComplexMatrix f = read_matrix(std::filesystem::path(o.f));
  emit_matrix(frechet_mmexp(pair, e, f), o.out, out);
}

void run_cond(const Options& o, std::ostream& out) {
  const MatrixPair pair = load_pair(o);
  PowerMethodOptions pm;
  pm.tol = o.tol;
  pm.max_iter = o.max_iter;
  const ConditionReport est = power_method_estimate(pair, pm);
  std::optional<ConditionReport> exact;
  if (o.exact) {
    ExactCondOptions ex;
    ex.compute_upper_bound = false;
    exact = exact_cond(pair, ex);
  }

  if (o.json) {
    nlohmann::ordered_json doc;
    doc["n"] = pair.n();
    doc["tol"] = o.tol;
    doc["estimate_opnorm"] = est.estimate_opnorm;
    doc["kappa_estimate"] = est.kappa;
    doc["iterations"] = est.iterations;
    doc["converged"] = est.converged;
    doc["gammas"] = est.gammas;
    if (exact) {
      doc["exact_opnorm"] = exact->estimate_opnorm;
      doc["kappa_exact"] = exact->kappa;
      doc["rel_error"] = std::abs(est.kappa - exact->kappa) / exact->kappa;
      doc["exact_converged"] = exact->converged;
    }
    out << doc.dump(2) << '\n';
    return;
  }

  out << std::setprecision(17);
  out << "estimate_opnorm " << est.estimate_opnorm << '\n'
      << "kappa_estimate  " << est.kappa << '\n'
      << "iterations      " << est.iterations << '\n'
      << "converged       " << (est.converged ? "yes" : "no") << '\n';
  if (exact) {
    out << "exact_opnorm    " << exact->estimate_opnorm << '\n'
        << "kappa_exact     " << exact->kappa << '\n'
        << "rel_error       " << std::abs(est.kappa - exact->kappa) / exact->kappa << '\n';
  }
}

void run_experiment_cmd(const Options& o, std::ostream& out) {
  ExperimentOptions opts;
  opts.tol = o.tol;
  opts.max_iter = o.max_iter;
  const auto records = run_experiment(default_experiment_spec(o.seed), opts, o.out);
  char line[160];
  std::snprintf(line, sizeof(line), "%-14s %3s %12s %12s %12s %10s %4s\n", "pair", "n",
                "norm_logA", "kappa_est", "kappa_exact", "rel_error", "it");
  out << line;
  for (const auto& r : records) {
    if (!r.error.empty() && std::isnan(r.kappa_exact)) {
      out << r.pair_id << "  error: " << r.error << '\n';
      continue;
    }
    std::snprintf(line, sizeof(line), "%-14s %3ld %12.4e %12.4e %12.4e %10.2e %4d\n",
                  r.pair_id.c_str(), static_cast<long>(r.n), r.norm_logA, r.kappa_estimate,
                  r.kappa_exact, r.rel_error, r.iterations);
    out << line;
  }
  out << "wrote " << o.out << ".csv and " << o.out << ".json\n";
}

void run_gallery(const Options& o, std::ostream& out) {
  emit_matrix(gallery(o.name, o.n, o.seed), o.out, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Matrix-matrix exponentiation A^B = exp(log(A) B), its Frechet derivative "
               "and condition number",
               "mmexp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", library_version());

  Options o;
  auto* compute = app.add_subcommand("compute", "Compute A^B");
  compute->add_option("--a", o.a, "Matrix Market file for A")->required();
  compute->add_option("--b", o.b, "Matrix Market file for B")->required();
  compute->add_option("--out", o.out, "Output file (default: standard output)");

  auto* frechet = app.add_subcommand("frechet", "Frechet derivative L(A, B; E, F)");
  frechet->add_option("--a", o.a, "Matrix Market file for A")->required();
  frechet->add_option("--b", o.b, "Matrix Market file for B")->required();
  frechet->add_option("--e", o.e, "Direction for A")->required();
  frechet->add_option("--f", o.f, "Direction for B")->required();
  frechet->add_option("--out", o.out, "Output file (default: standard output)");

  auto* cond = app.add_subcommand("cond", "Estimate the relative condition number of A^B");
  cond->add_option("--a", o.a, "Matrix Market file for A")->required();
  cond->add_option("--b", o.b, "Matrix Market file for B")->required();
  cond->add_option("--tol", o.tol, "Power method tolerance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cond->add_option("--max-iter", o.max_iter, "Power method iteration limit")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cond->add_flag("--exact", o.exact, "Also compute the exact value (n <= 16)");
  cond->add_flag("--json", o.json, "Print JSON");

  auto* experiment = app.add_subcommand("experiment", "Run the gallery experiment");
  experiment->add_option("--seed", o.seed, "Gallery seed")->capture_default_str();
  experiment->add_option("--tol", o.tol, "Power method tolerance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  experiment->add_option("--max-iter", o.max_iter, "Power method iteration limit")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  experiment->add_option("--out", o.out, "Output prefix for .csv and .json")->required();

  auto* gal = app.add_subcommand("gallery", "Write a gallery matrix");
  gal->add_option("--name", o.name, "Generator name")->required();
  gal->add_option("--n", o.n, "Dimension (2..32)")->required();
  gal->add_option("--seed", o.seed, "Seed for random generators")->capture_default_str();
  gal->add_option("--out", o.out, "Output file (default: standard output)");

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("mmexp");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (compute->parsed()) {
      run_compute(o, out);
    } else if (frechet->parsed()) {
      run_frechet(o, out);
    } else if (cond->parsed()) {
      run_cond(o, out);
    } else if (experiment->parsed()) {
      run_experiment_cmd(o, out);
    } else if (gal->parsed()) {
      run_gallery(o, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return 0;
}

}  // namespace mmexp::cli
