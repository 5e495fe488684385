#include "mmexp/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "mmexp/conditioning.hpp"
#include "mmexp/errors.hpp"

#ifndef MMEXP_VERSION
#define MMEXP_VERSION "unknown"
#endif

namespace mmexp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ExperimentRecord run_pair(const GallerySpec& spec, std::size_t j, const ExperimentOptions& opts) {
  ExperimentRecord rec;
  char id[16];
  std::snprintf(id, sizeof(id), "%02zu", j + 1);
  rec.pair_id = std::string(id) + "-" + spec.names[j];
  rec.n = spec.sizes[j];

  const auto start = std::chrono::steady_clock::now();
  try {
    const GalleryPair gp = make_gallery_pair(spec, j);
    rec.pair_id = gp.id;
    rec.norm_logA = fro_norm(logm(gp.pair.a()));

    PowerMethodOptions pm;
    pm.tol = opts.tol;
    pm.max_iter = opts.max_iter;
    const ConditionReport estimate = power_method_estimate(gp.pair, pm);

    ExactCondOptions ex;
    ex.compute_upper_bound = false;
    const ConditionReport exact = exact_cond(gp.pair, ex);

    rec.kappa_estimate = estimate.kappa;
    rec.kappa_exact = exact.kappa;
    rec.rel_error = exact.kappa > 0.0
                        ? std::abs(estimate.kappa - exact.kappa) / exact.kappa
                        : kNaN;
    rec.iterations = estimate.iterations;
    if (!exact.converged) rec.error = "exact_cond: power iteration did not converge";
  } catch (const std::exception& e) {
    rec.norm_logA = rec.kappa_estimate = rec.kappa_exact = rec.rel_error = kNaN;
    rec.iterations = 0;
    rec.error = e.what();
  }
  rec.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// Quote a CSV field when it holds a separator, quote or line break.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::json number_or_null(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

}  // namespace

const char* library_version() noexcept { return MMEXP_VERSION; }

std::vector<ExperimentRecord> run_experiment(const GallerySpec& spec,
                                             const ExperimentOptions& opts) {
  if (spec.names.size() != spec.sizes.size()) {
    throw PreconditionFailed("run_experiment: names and sizes differ in length");
  }
  if (!(opts.tol > 0.0)) throw PreconditionFailed("run_experiment: tol must be positive");
  std::vector<ExperimentRecord> records;
  records.reserve(spec.size());
  for (std::size_t j = 0; j < spec.size(); ++j) records.push_back(run_pair(spec, j, opts));
  return records;
}

std::vector<ExperimentRecord> run_experiment(const GallerySpec& spec, const ExperimentOptions& opts,
                                             const std::string& out_prefix) {
  auto records = run_experiment(spec, opts);
  const std::string csv_path = out_prefix + ".csv";
  const std::string json_path = out_prefix + ".json";
  std::ofstream csv(csv_path);
  if (!csv) throw Error("cannot open " + csv_path + " for writing");
  write_csv(csv, records);
  std::ofstream json(json_path);
  if (!json) throw Error("cannot open " + json_path + " for writing");
  write_json(json, records, spec.seed, opts);
  return records;
}

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << "pair_id,n,norm_logA,kappa_estimate,kappa_exact,rel_error,iterations,wall_time_ms,error\n";
  for (const auto& r : records) {
    out << csv_field(r.pair_id) << ',' << r.n << ',' << format_double(r.norm_logA) << ','
        << format_double(r.kappa_estimate) << ',' << format_double(r.kappa_exact) << ','
        << format_double(r.rel_error) << ',' << r.iterations << ','
        << format_double(r.wall_time_ms) << ',' << csv_field(r.error) << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<ExperimentRecord>& records,
                std::uint64_t seed, const ExperimentOptions& opts) {
  nlohmann::ordered_json doc;
  doc["metadata"] = {{"seed", seed},
                     {"tol", opts.tol},
                     {"max_iter", opts.max_iter},
                     {"prng", std::string(GalleryRng::name())},
                     {"version", library_version()}};
  doc["records"] = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json rec;
    rec["pair_id"] = r.pair_id;
    rec["n"] = r.n;
    rec["norm_logA"] = number_or_null(r.norm_logA);
    rec["kappa_estimate"] = number_or_null(r.kappa_estimate);
    rec["kappa_exact"] = number_or_null(r.kappa_exact);
    rec["rel_error"] = number_or_null(r.rel_error);
    rec["iterations"] = r.iterations;
    rec["wall_time_ms"] = r.wall_time_ms;
    rec["error"] = r.error.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.error);
    doc["records"].push_back(std::move(rec));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace mmexp
