#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mmexp/gallery.hpp"

namespace mmexp {

struct ExperimentRecord {
  std::string pair_id;
  Index n = 0;
  double norm_logA = 0.0;
  double kappa_estimate = 0.0;
  double kappa_exact = 0.0;
  double rel_error = 0.0;
  int iterations = 0;
  double wall_time_ms = 0.0;
  std::string error;  // empty on success; numeric fields are NaN otherwise
};

struct ExperimentOptions {
  double tol = 1e-1;
  int max_iter = 20;
};

// Runs the power method and the exact oracle on every pair of the spec.
// A pair that throws is recorded with its message and the run continues.
std::vector<ExperimentRecord> run_experiment(const GallerySpec& spec,
                                             const ExperimentOptions& opts = {});

// Writes <prefix>.csv and <prefix>.json.
std::vector<ExperimentRecord> run_experiment(const GallerySpec& spec, const ExperimentOptions& opts,
                                             const std::string& out_prefix);

// Header: pair_id,n,norm_logA,kappa_estimate,kappa_exact,rel_error,iterations,wall_time_ms,error
void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);

// {"metadata": {"seed", "tol", "max_iter", "prng", "version"}, "records": [...]}
void write_json(std::ostream& out, const std::vector<ExperimentRecord>& records,
                std::uint64_t seed, const ExperimentOptions& opts);

const char* library_version() noexcept;

}  // namespace mmexp
