// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "mmexp/conditioning.hpp"
#include "mmexp/experiment.hpp"
#include "support.hpp"

using namespace mmexp;
using mmexp::testing::all_gallery_pairs;
using mmexp::testing::central_difference;
using mmexp::testing::random_matrix;
using mmexp::testing::random_pair;
using mmexp::testing::random_with_norm;
using mmexp::testing::rel_diff;
using mmexp::testing::spectrum_gap;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, x);
  return buf;
}

// Worst value seen, with the label of where it occurred.
struct Worst {
  double value = 0.0;
  std::string where;
  void update(double v, const std::string& label) {
    if (!(v <= value)) {
      value = v;
      where = label;
    }
  }
};

std::vector<MatrixPair> identity_suite_pairs(std::vector<std::string>& labels) {
  std::vector<MatrixPair> pairs;
  GalleryRng rng(2024);
  for (int k = 0; k < 20; ++k) {
    const Index n = 2 + k % 7;
    pairs.push_back(random_pair(rng, n, 0.2 + 1.8 * rng.uniform(), 0.5 + rng.uniform()).pair);
    labels.push_back("random#" + std::to_string(k));
  }
  for (auto& gp : all_gallery_pairs()) {
    pairs.push_back(gp.pair);
    labels.push_back(gp.id + "/n=" + std::to_string(gp.pair.n()));
  }
  return pairs;
}

Outcome ac1_identities() {
  Stopwatch clock;
  std::vector<std::string> labels;
  const auto pairs = identity_suite_pairs(labels);
  GalleryRng rng(7);
  Worst w1, w2, w3, w4, w5, w6;
  int strip_cases = 0;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const MatrixPair& p = pairs[k];
    const Index n = p.n();
    const ComplexMatrix& a = p.a().matrix();
    const ComplexMatrix eye = identity(n);
    const ComplexMatrix ab = mm_exp(p);

    // (i)
    w1.update(rel_diff(mm_exp(MatrixPair(p.a(), ComplexMatrix::Zero(n, n))), eye), labels[k]);
    w1.update(rel_diff(mm_exp(MatrixPair::create(eye, p.b())), eye), labels[k]);
    // (ii)
    w2.update(rel_diff(mm_exp(MatrixPair(p.a(), -eye)), solve(a, eye)), labels[k] + " a=-1");
    w2.update(rel_diff(mm_exp(MatrixPair(p.a(), 0.5 * eye)), sqrtm(a)), labels[k] + " a=1/2");
    w2.update(rel_diff(mm_exp(MatrixPair(p.a(), 2.0 * eye)), a * a), labels[k] + " a=2");
    // (iii) only under the strip hypothesis with margin 0.1
    const ComplexMatrix m = logm(p.a()) * p.b();
    bool in_strip = true;
    for (const Complex& z : eigenvalues(m).values()) {
      if (std::abs(z.imag()) >= M_PI - 0.1) in_strip = false;
    }
    if (in_strip) {
      ++strip_cases;
      const ComplexMatrix c = random_with_norm(rng, n, 0.5);
      const ComplexMatrix lhs = mm_exp(MatrixPair(p.a(), p.b() * c));
      const ComplexMatrix rhs = mm_exp(MatrixPair::create(ab, c));
      w3.update(rel_diff(lhs, rhs), labels[k]);
    }
    // (iv)
    const ComplexMatrix inv = mm_exp(MatrixPair(p.a(), -p.b()));
    w4.update(std::max(rel_diff(inv * ab, eye), rel_diff(ab * inv, eye)), labels[k]);
    // (v)
    const ComplexMatrix left_adj =
        mm_exp_left(MatrixPair::create(a.adjoint(), p.b().adjoint()));
    w5.update(rel_diff(ab.adjoint(), left_adj), labels[k]);
    // (vi)
    const ComplexMatrix s = eye + random_with_norm(rng, n, 0.5);
    const ComplexMatrix s_inv = solve(s, eye);
    const ComplexMatrix sim =
        mm_exp(MatrixPair::create(s * a * s_inv, s * p.b() * s_inv));
    w6.update(rel_diff(sim, s * ab * s_inv), labels[k]);
  }
  const double t = clock.seconds();
  Outcome o;
  o.pass = w1.value <= 1e-9 && w2.value <= 1e-9 && w3.value <= 1e-8 && w4.value <= 1e-9 &&
           w5.value <= 1e-9 && w6.value <= 1e-9 && strip_cases > 0 && t < 10.0;
  o.detail = std::to_string(pairs.size()) + " pairs; max rel err (i) " + fmt("%.1e", w1.value) +
             ", (ii) " + fmt("%.1e", w2.value) + " [" + w2.where + "], (iii) " +
             fmt("%.1e", w3.value) + " on " + std::to_string(strip_cases) + " strip cases, (iv) " +
             fmt("%.1e", w4.value) + " [" + w4.where + "], (v) " + fmt("%.1e", w5.value) +
             ", (vi) " + fmt("%.1e", w6.value) + " [" + w6.where + "]; " + fmt("%.2f s", t);
  return o;
}

Outcome ac2_spectra() {
  std::vector<std::string> labels;
  const auto pairs = identity_suite_pairs(labels);
  Worst spec, inter;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const MatrixPair& p = pairs[k];
    const ComplexMatrix ab = mm_exp(p);
    const ComplexMatrix ba = mm_exp_left(p);
    spec.update(spectrum_gap(ab, ba), labels[k]);
    inter.update(rel_diff(p.b() * ab, ba * p.b()), labels[k]);
  }

  // Commuting diagonalizable pairs A = V D_a V^-1, B = V D_b V^-1.
  GalleryRng rng(11);
  double membership = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 2 + trial % 5;
    const ComplexMatrix v = identity(n) + random_with_norm(rng, n, 0.5);
    const ComplexMatrix v_inv = solve(v, identity(n));
    ComplexVector alpha(n), beta(n);
    for (Index i = 0; i < n; ++i) {
      alpha(i) = Complex(0.5 + 2.0 * rng.uniform(), rng.symmetric());
      beta(i) = Complex(rng.symmetric(), rng.symmetric());
    }
    const MatrixPair p = MatrixPair::create(v * alpha.asDiagonal() * v_inv,
                                            v * beta.asDiagonal() * v_inv);
    std::vector<Complex> candidates;
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) candidates.push_back(std::exp(beta(j) * std::log(alpha(i))));
    }
    for (const Complex& z : eigenvalues(mm_exp(p)).values()) {
      double best = INFINITY;
      for (const Complex& c : candidates) best = std::min(best, std::abs(z - c));
      membership = std::max(membership, best / std::max(1.0, std::abs(z)));
    }
  }
  Outcome o;
  o.pass = spec.value <= 1e-6 && inter.value <= 1e-9 && membership <= 1e-6;
  o.detail = "spectra gap " + fmt("%.1e", spec.value) + " [" + spec.where + "], B A^B vs ^BA B " +
             fmt("%.1e", inter.value) + " [" + inter.where + "], commuting membership " +
             fmt("%.1e", membership);
  return o;
}

Outcome ac3_frechet() {
  Stopwatch clock;
  GalleryRng rng(3);
  Worst block, fd, vec_id;
  for (const auto& gp : make_gallery_pairs(small_gallery_spec())) {
    const MatrixPair& p = gp.pair;
    const Index n = p.n();
    const MatrixPowerDerivative op(p);
    const ComplexMatrix k = build_K_f(p).matrix;
    for (int r = 0; r < 20; ++r) {
      const ComplexMatrix e = random_matrix(rng, n);
      const ComplexMatrix f = random_matrix(rng, n);
      const ComplexMatrix l = op.apply(e, f);
      ComplexVector ef(2 * n * n);
      ef << vec(e), vec(f);
      vec_id.update((k * ef - vec(l)).norm() / vec(l).norm(), gp.id);
      if (r < 5) {
        block.update(rel_diff(frechet_mmexp_block(p, e, f), l), gp.id);
        fd.update(rel_diff(central_difference(p, e, f), l), gp.id);
      }
    }
  }
  const double t = clock.seconds();
  Outcome o;
  o.pass = block.value <= 1e-8 && fd.value <= 1e-5 && vec_id.value <= 1e-10 && t < 30.0;
  o.detail = "block route " + fmt("%.1e", block.value) + " [" + block.where + "], finite diff " +
             fmt("%.1e", fd.value) + " [" + fd.where + "], vec identity " +
             fmt("%.1e", vec_id.value) + " [" + vec_id.where + "]; " + fmt("%.2f s", t);
  return o;
}

Outcome ac4_adjoint() {
  GalleryRng rng(4);
  Worst worst;
  for (const auto& gp : make_gallery_pairs(small_gallery_spec())) {
    const MatrixPowerDerivative op(gp.pair);
    const Index n = gp.pair.n();
    for (int r = 0; r < 50; ++r) {
      const ComplexMatrix e = random_matrix(rng, n);
      const ComplexMatrix f = random_matrix(rng, n);
      const ComplexMatrix w = random_matrix(rng, n);
      const DirectionPair z = op.adjoint(w);
      const double gap = std::abs(inner(op.apply(e, f), w) - inner(e, z.e) - inner(f, z.f));
      worst.update(gap / (std::hypot(e.norm(), f.norm()) * w.norm()), gp.id);
    }
  }
  Outcome o;
  o.pass = worst.value <= 1e-10;
  o.detail = "max |<L(E,F),W> - <(E,F),L*(W)>| / (||(E,F)|| ||W||) = " + fmt("%.1e", worst.value) +
             " [" + worst.where + "]";
  return o;
}

Outcome ac5_power_method() {
  Stopwatch clock;
  const GallerySpec spec = default_experiment_spec();
  int max_it = 0;
  Worst coarse, fine;
  std::string failures;
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const GalleryPair gp = make_gallery_pair(spec, j);
    ExactCondOptions ex;
    ex.compute_upper_bound = false;
    const ConditionReport exact = exact_cond(gp.pair, ex);
    PowerMethodOptions pm;
    const ConditionReport est = power_method_estimate(gp.pair, pm);
    pm.tol = 1e-3;
    const ConditionReport est_fine = power_method_estimate(gp.pair, pm);
    const double e1 = std::abs(est.kappa - exact.kappa) / exact.kappa;
    const double e2 = std::abs(est_fine.kappa - exact.kappa) / exact.kappa;
    max_it = std::max(max_it, est.iterations);
    coarse.update(e1, gp.id);
    fine.update(e2, gp.id);
    if (!est.converged || est.iterations > 5 || !(e1 < 1e-2) || !(e2 < 1e-3)) {
      failures += " " + gp.id + "(it " + std::to_string(est.iterations) + ", " +
                  fmt("%.1e", e1) + ", tol 1e-3: " + fmt("%.1e", e2) + ")";
    }
  }
  const double t = clock.seconds();
  Outcome o;
  o.pass = failures.empty() && t < 120.0;
  o.detail = "max iterations " + std::to_string(max_it) + ", max rel err at tol 1e-1 " +
             fmt("%.1e", coarse.value) + " [" + coarse.where + "], at tol 1e-3 " +
             fmt("%.1e", fine.value) + " [" + fine.where + "]; " + fmt("%.1f s", t);
  if (!failures.empty()) o.detail += "; failing:" + failures;
  return o;
}

Outcome ac6_upper_bound() {
  Worst ratio;
  int count = 0;
  bool all = true;
  for (const auto& gp : all_gallery_pairs()) {
    const ConditionReport r = exact_cond(gp.pair);
    const double q = *r.exact_opnorm / *r.upper_bound;
    ratio.update(q, gp.id + "/n=" + std::to_string(gp.pair.n()));
    if (!(*r.exact_opnorm <= *r.upper_bound * (1.0 + 1e-8))) all = false;
    ++count;
  }
  Outcome o;
  o.pass = all;
  o.detail = std::to_string(count) + " pairs; max exact/bound " + fmt("%.2e", ratio.value) + " [" +
             ratio.where + "]";
  return o;
}

Outcome ac7_perturbation() {
  GalleryRng rng(77);
  Worst printed, weighted;
  for (int k = 0; k < 50; ++k) {
    const Index n = 2 + k % 7;
    // ||log A||_F <= 1, so ||log A||_2 <= 1 as well.
    const auto rp = random_pair(rng, n, 0.1 + 0.9 * rng.uniform(), 0.5 + rng.uniform());
    const ComplexMatrix b2 = rp.pair.b() + random_with_norm(rng, n, 0.3 * rng.uniform() + 1e-3);
    const MatrixPair p2(rp.pair.a(), b2);
    const ComplexMatrix log_a = logm(rp.pair.a());
    const double lhs = (mm_exp(rp.pair) - mm_exp(p2)).norm();
    const double growth =
        std::exp(std::max((log_a * rp.pair.b()).norm(), (log_a * b2).norm()));
    printed.update(lhs / ((rp.pair.b() - b2).norm() * growth), "triple#" + std::to_string(k));
    weighted.update(lhs / ((log_a * (rp.pair.b() - b2)).norm() * growth),
                    "triple#" + std::to_string(k));
  }
  // Unrestricted log A: only the form carrying log(A) is a theorem.
  GalleryRng rng2(78);
  Worst general;
  for (int k = 0; k < 50; ++k) {
    const Index n = 2 + k % 7;
    const auto rp = random_pair(rng2, n, 0.5 + 2.5 * rng2.uniform(), 0.5 + rng2.uniform());
    const ComplexMatrix b2 = rp.pair.b() + random_with_norm(rng2, n, 0.3 * rng2.uniform() + 1e-3);
    const MatrixPair p2(rp.pair.a(), b2);
    const ComplexMatrix log_a = logm(rp.pair.a());
    const double lhs = (mm_exp(rp.pair) - mm_exp(p2)).norm();
    const double growth =
        std::exp(std::max((log_a * rp.pair.b()).norm(), (log_a * b2).norm()));
    general.update(lhs / ((log_a * (rp.pair.b() - b2)).norm() * growth),
                   "triple#" + std::to_string(k));
  }
  Outcome o;
  o.pass = printed.value <= 1.0 && weighted.value <= 1.0 && general.value <= 1.0;
  o.detail = "50 triples with ||log A||_F <= 1: max lhs/rhs " + fmt("%.3f", printed.value) +
             " (with log A factor " + fmt("%.3f", weighted.value) +
             "); 50 triples with ||log A||_F up to 3, log A factor kept: " +
             fmt("%.3f", general.value);
  return o;
}

Outcome ac8_oracles() {
  GalleryRng rng(8);
  double series = 0.0;
  for (int k = 0; k < 20; ++k) {
    const Index n = 2 + k % 7;
    const auto rp = random_pair(rng, n, 0.05 + 0.5 * rng.uniform(), 0.5 + 0.5 * rng.uniform());
    if (!((rp.log_a * rp.pair.b()).norm() < 1.0)) continue;
    series = std::max(series, rel_diff(series_oracle(rp.pair, 30), mm_exp(rp.pair)));
  }
  double closed = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double a = 4.0 * rng.symmetric();
    const double b = 4.0 * rng.symmetric();
    const ComplexMatrix bm = random_matrix(rng, 2);
    ComplexMatrix am(2, 2);
    am << a, b, -b, a;
    closed = std::max(closed, rel_diff(closed_form_2x2(a, b, bm), mm_exp(MatrixPair::create(am, bm))));
  }
  Worst round_trip;
  for (const auto& gp : all_gallery_pairs()) {
    round_trip.update(rel_diff(expm(logm(gp.pair.a())), gp.pair.a().matrix()), gp.id);
  }
  Outcome o;
  o.pass = series <= 1e-12 && closed <= 1e-10 && round_trip.value <= 1e-9;
  o.detail = "series " + fmt("%.1e", series) + ", 2x2 closed form " + fmt("%.1e", closed) +
             ", expm(logm(A)) round trip " + fmt("%.1e", round_trip.value) + " [" +
             round_trip.where + "]";
  return o;
}

// Drops the wall_time_ms column (CSV) or field (JSON).
std::string without_timing(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  std::string line;
  const bool csv = path.size() > 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  while (std::getline(in, line)) {
    if (csv) {
      std::vector<std::string> cells;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) cells.push_back(cell);
      if (cells.size() > 7) cells.erase(cells.begin() + 7);
      for (const auto& c : cells) out << c << ',';
    } else if (line.find("\"wall_time_ms\"") == std::string::npos) {
      out << line;
    }
    out << '\n';
  }
  return out.str();
}

Outcome ac9_determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "mmexp_acceptance";
  std::filesystem::create_directories(dir);
  const std::string first = (dir / "run1").string();
  const std::string second = (dir / "run2").string();
  std::ostringstream sink;
  const int rc1 = cli::run({"experiment", "--out", first}, sink, sink);
  const int rc2 = cli::run({"experiment", "--out", second}, sink, sink);
  const bool csv_same = without_timing(first + ".csv") == without_timing(second + ".csv");
  const bool json_same = without_timing(first + ".json") == without_timing(second + ".json");
  const bool nonempty = !without_timing(first + ".csv").empty();
  std::filesystem::remove_all(dir);
  Outcome o;
  o.pass = rc1 == 0 && rc2 == 0 && csv_same && json_same && nonempty;
  o.detail = std::string("exit codes ") + std::to_string(rc1) + "/" + std::to_string(rc2) +
             ", CSV " + (csv_same ? "identical" : "DIFFERENT") + ", JSON " +
             (json_same ? "identical" : "DIFFERENT") + " (wall_time_ms excluded)";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1 identity suite", ac1_identities},
      {"AC2 spectra and intertwining", ac2_spectra},
      {"AC3 Frechet derivative correctness", ac3_frechet},
      {"AC4 adjoint identity", ac4_adjoint},
      {"AC5 power method experiment", ac5_power_method},
      {"AC6 upper bound", ac6_upper_bound},
      {"AC7 perturbation inequality", ac7_perturbation},
      {"AC8 oracles", ac8_oracles},
      {"AC9 determinism", ac9_determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
