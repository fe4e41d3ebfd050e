// Acceptance gate: one PASS/FAIL line per criterion.
//
//   sgp_acceptance            run every criterion
//   sgp_acceptance 3 9        run the listed criteria
//   sgp_acceptance --list

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sgp/bench/config.hpp"
#include "sgp/bench/csv.hpp"
#include "sgp/bench/runner.hpp"
#include "sgp/discrepancy.hpp"
#include "sgp/imaging/blur.hpp"
#include "sgp/imaging/hypersurface.hpp"
#include "sgp/imaging/poisson.hpp"
#include "sgp/metric.hpp"
#include "sgp/projection.hpp"
#include "sgp/quadratic.hpp"
#include "sgp/solver.hpp"
#include "support/frozen_values.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;
namespace st = sgp::testing;
using sgp::Vector;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sgp_acceptance_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// ---------------------------------------------------------------- quadratics

struct BoxQp {
  std::shared_ptr<sgp::Quadratic> q;
  sgp::FeasibleRegion region;
  Vector xstar;
  double fstar;
  Vector x0;
};

// Strongly convex QP (spectrum in [1, 100], unconstrained minimizer in
// [-1, 1]^n) with random lower bounds; x* from active-set enumeration.
BoxQp make_qp(std::uint64_t seed, Eigen::Index n) {
  std::mt19937_64 rng(seed);
  const auto h = st::random_spd(rng, n, 1.0, 100.0);
  const Vector c = h * st::random_vector(rng, n, -1.0, 1.0);
  const Vector lower = st::random_vector(rng, n, -1.0, 0.5);
  const Vector upper = Vector::Constant(n, std::numeric_limits<double>::infinity());
  const auto xs = st::kkt_enumerate(h, c, lower);
  if (!xs) throw std::runtime_error("KKT enumeration found no solution");
  auto q = std::make_shared<sgp::Quadratic>(h, c);
  sgp::FeasibleRegion region(lower, upper);
  const Vector x0 = region.project(st::random_vector(rng, n, -2.0, 5.0));
  return {q, region, *xs, q->value(*xs), x0};
}

std::unique_ptr<sgp::MetricProvider> qp_metric(const sgp::Quadratic& q, const std::string& mode) {
  if (mode == "identity") return std::make_unique<sgp::IdentityMetric>();
  const Vector raw = q.jacobi_scaling();
  return std::make_unique<sgp::ScheduledMetric>(
      sgp::BoundSchedule::parse(mode), [raw](const Vector&, const Vector&) { return raw; });
}

const std::vector<std::string> kModes = {"identity", "fixed:1e5", "summable:1e10"};

// ---------------------------------------------------------------- criteria

Outcome descent_inequality() {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Eigen::Index dims[] = {2, 5, 50};
  int violations = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index n = dims[t % 3];
    const double mu = std::pow(10.0, 5.0 * u(rng));
    Vector diag(n);
    for (Eigen::Index i = 0; i < n; ++i) diag[i] = std::pow(mu, 2.0 * u(rng) - 1.0);
    const sgp::DiagonalMetric d(diag.cwiseMax(1.0 / mu).cwiseMin(mu), mu);
    const double alpha = std::pow(10.0, -5.0 + 10.0 * u(rng));
    const Vector lo = st::random_vector(rng, n, -2.0, 0.0);
    const Vector hi = lo + st::random_vector(rng, n, 0.1, 3.0);
    const sgp::FeasibleRegion region(lo, hi);
    const auto h = st::random_spd(rng, n, 0.01, 100.0);
    const Vector c = st::random_vector(rng, n, -10.0, 10.0);
    const Vector x = region.project(st::random_vector(rng, n, -3.0, 3.0));
    const Vector g = h * x - c;
    const auto dir = sgp::descent_direction(x, g, alpha, d, region);
    const double slack = dir.directional + d.inverse_norm_squared(dir.d) / alpha;
    worst = std::max(worst, slack);
    if (slack > 1e-10) ++violations;
  }
  return {violations == 0, fmt("200 instances, %d violations, max(grad'd + |d|^2/alpha) = %.3e",
                               violations, worst)};
}

Outcome armijo_lower_bound() {
  const sgp::LineSearchParams ls;
  const sgp::SteplengthConfig sc;
  int runs_violating = 0;
  std::size_t steps = 0, backtracked = 0, below_stated = 0, below_corrected = 0;
  double min_ratio = std::numeric_limits<double>::infinity();
  for (int t = 0; t < 100; ++t) {
    const auto p = make_qp(2000 + t, 10);
    const std::string& mode = kModes[t % 3];
    auto metric = qp_metric(*p.q, mode);
    const double mu = metric->mu(1);
    const double L = *p.q->lipschitz();
    const double stated = std::min(1.0, mu * sc.alpha_max * (1.0 - ls.beta) * ls.delta / L);
    const double corrected = std::min(1.0, 2.0 * (1.0 - ls.beta) * ls.delta / (L * mu * sc.alpha_max));
    bool violated = false;
    sgp::SolverOptions opt;
    opt.record_time = false;
    opt.observer = [&](const sgp::IterateState& s) {
      ++steps;
      if (s.backtracks > 0) ++backtracked;
      min_ratio = std::min(min_ratio, s.lambda / stated);
      if (s.lambda < stated) {
        ++below_stated;
        violated = true;
      }
      if (s.lambda < corrected) ++below_corrected;
    };
    sgp::BBSteplength rule(sc);
    sgp::StoppingRule stop;
    stop.max_iterations = 5000;
    stop.stationarity = 1e-6;  // beyond this, f differences approach rounding resolution
    sgp::sgp_solve(*p.q, p.region, *metric, rule, ls, stop, p.x0, opt);
    if (violated) ++runs_violating;
  }
  return {runs_violating == 0,
          fmt("%d/100 runs with lambda < min{1, mu*alpha_max*(1-beta)*delta/L}; %zu of %zu steps "
              "backtracked, %zu below that bound (min lambda/bound = %.3g); %zu below "
              "min{1, 2(1-beta)delta/(L*mu*alpha_max)}",
              runs_violating, backtracked, steps, below_stated, min_ratio, below_corrected)};
}

Outcome oracle_equivalence() {
  int failures = 0;
  std::size_t worst_k = 0;
  double worst_err = 0.0;
  for (int t = 0; t < 50; ++t) {
    const auto p = make_qp(3000 + t, 10);
    for (const auto& mode : kModes) {
      auto metric = qp_metric(*p.q, mode);
      std::size_t reached = 0;
      sgp::SolverOptions opt;
      opt.record_time = false;
      opt.observer = [&](const sgp::IterateState& s) {
        if (reached == 0 && (s.x + s.lambda * s.d - p.xstar).norm() <= 1e-6) reached = s.k + 1;
      };
      sgp::BBSteplength rule;
      sgp::StoppingRule stop;
      stop.max_iterations = 5000;
      stop.stationarity = 1e-10;
      const auto r = sgp::sgp_solve(*p.q, p.region, *metric, rule, {}, stop, p.x0, opt);
      const double err = (r.x - p.xstar).norm();
      worst_err = std::max(worst_err, err);
      if (reached == 0 || err > 1e-6) {
        ++failures;
      } else {
        worst_k = std::max(worst_k, reached);
      }
    }
  }
  return {failures == 0, fmt("150 runs (50 QPs x 3 metric modes), %d failures, slowest reached "
                             "1e-6 at k = %zu, max final error %.2e",
                             failures, worst_k, worst_err)};
}

Outcome rate_envelope() {
  int failures = 0, nonempty = 0;
  double worst_ratio = 0.0;
  std::size_t longest = 0;
  for (int t = 0; t < 50; ++t) {
    const auto p = make_qp(3000 + t, 10);
    auto metric = qp_metric(*p.q, "summable:1e10");
    sgp::BBSteplength rule;
    sgp::StoppingRule stop;
    stop.max_iterations = 5000;
    stop.stationarity = 1e-10;
    sgp::SolverOptions opt;
    opt.record_time = false;
    const auto r = sgp::sgp_solve(*p.q, p.region, *metric, rule, {}, stop, p.x0, opt);
    const auto& e = r.record.entries;
    longest = std::max(longest, r.record.iterations());
    if (e.size() <= 50) continue;
    ++nonempty;
    const double at50 = 50.0 * (e[50].f - p.fstar);
    double envelope = at50;
    for (std::size_t k = 50; k < e.size() && k <= 5000; ++k) {
      envelope = std::max(envelope, static_cast<double>(k) * (e[k].f - p.fstar));
    }
    const double ratio = at50 > 0.0 ? envelope / at50 : (envelope > 0.0 ? INFINITY : 1.0);
    worst_ratio = std::max(worst_ratio, ratio);
    if (ratio > 10.0) ++failures;
  }
  return {failures == 0, fmt("%d of 50 runs extend past k = 50 (longest %zu), %d exceed 10x; "
                             "max envelope/value-at-50 = %.3g",
                             nonempty, longest, failures, worst_ratio)};
}

Outcome theta_monitor() {
  const std::pair<double, double> cases[] = {{1.0, st::frozen::kLogThetaSeriesC1},
                                             {1e4, st::frozen::kLogThetaSeriesC1e4},
                                             {1e10, st::frozen::kLogThetaSeriesC1e10}};
  bool ok = true;
  std::ostringstream detail;
  for (const auto& [c, series] : cases) {
    const auto s = sgp::BoundSchedule::summable(c);
    sgp::ThetaMonitor m(s.log_theta_bound());
    double worst = -INFINITY;
    for (std::size_t k = 1; k <= 100000; ++k) {
      m = sgp::theta_update(m, sgp::mu_at(s, k));
      worst = std::max(worst, m.log_theta() - series);
    }
    const bool pass = worst <= 1e-9 && !m.flagged();
    ok = ok && pass;
    detail << fmt("c=%g: max(log theta_k - series) = %.3g%s; ", c, worst, m.flagged() ? " FLAGGED" : "");
  }
  const auto fixed = sgp::BoundSchedule::fixed(1e5);
  sgp::ThetaMonitor m(fixed.log_theta_bound());
  for (std::size_t k = 1; k <= 10 && !m.flagged(); ++k) m = sgp::theta_update(m, sgp::mu_at(fixed, k));
  ok = ok && m.flagged() && m.flagged_at() <= 10;
  detail << fmt("fixed mu=1e5 flagged at k=%zu (%s)", m.flagged_at(), m.reason().c_str());
  return {ok, detail.str()};
}

Outcome gradient_check() {
  using namespace sgp::imaging;
  const ImageShape shape{16, 16};
  auto op = std::make_shared<FftBlurOperator>(shape, gaussian_psf(9.0, 33));
  std::mt19937_64 rng(606);
  double worst_kl = 0.0, worst_hs = 0.0;
  for (int t = 0; t < 20; ++t) {
    const Vector truth = st::random_vector(rng, 256, 0.0, 200.0);
    Vector g = op->apply(truth).array() + 10.0;
    std::poisson_distribution<int> noise;
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      g[i] = std::poisson_distribution<int>(g[i])(rng);
    }
    const PoissonModel model(op, g, 10.0);
    const HSRegularizer hs(shape, 1.0);
    const Vector x = st::random_vector(rng, 256, 0.5, 200.0);
    const Vector fd_kl = st::central_difference([&](const Vector& y) { return kl_value(model, y); }, x);
    const Vector fd_hs = st::central_difference([&](const Vector& y) { return hs.value(y); }, x);
    worst_kl = std::max(worst_kl, (kl_gradient(model, x) - fd_kl).norm() / fd_kl.norm());
    worst_hs = std::max(worst_hs, (hs_gradient(hs, x) - fd_hs).norm() / fd_hs.norm());
  }
  return {worst_kl <= 1e-5 && worst_hs <= 1e-5,
          fmt("20 trials each: max relative error KL %.2e, HS %.2e", worst_kl, worst_hs)};
}

Outcome split_identity() {
  using namespace sgp::imaging;
  const ImageShape shape{16, 16};
  const HSRegularizer hs(shape, 1.0);
  std::mt19937_64 rng(707);
  std::bernoulli_distribution zero(0.2);
  double worst = 0.0, min_v = INFINITY, min_u = INFINITY;
  for (int t = 0; t < 20; ++t) {
    Vector x = st::random_vector(rng, 256, 0.0, 500.0);
    for (Eigen::Index i = 0; i < x.size(); ++i)
      if (zero(rng)) x[i] = 0.0;
    const auto s = split_gradient(hs, x);
    worst = std::max(worst, ((s.V - s.U) - hs_gradient(hs, x)).lpNorm<Eigen::Infinity>());
    min_v = std::min(min_v, s.V.minCoeff());
    min_u = std::min(min_u, s.U.minCoeff());
  }
  return {worst <= 1e-12 && min_v >= 0.0 && min_u >= 0.0,
          fmt("max |(V-U) - grad HS| = %.2e, min V = %.3g, min U = %.3g", worst, min_v, min_u)};
}

Outcome operator_suite() {
  using namespace sgp::imaging;
  const ImageShape shape{16, 16};
  const Image psf = gaussian_psf(9.0, 33);
  const FftBlurOperator fft(shape, psf);
  const DenseBlurOperator dense(shape, psf);
  std::mt19937_64 rng(808);
  double adj = 0.0, cross = 0.0;
  for (int t = 0; t < 50; ++t) {
    const Vector u = st::random_vector(rng, 256, -1.0, 1.0);
    const Vector v = st::random_vector(rng, 256, -1.0, 1.0);
    adj = std::max(adj, std::abs(fft.apply(u).dot(v) - u.dot(fft.apply_adjoint(v))) / (u.norm() * v.norm()));
    cross = std::max({cross, (fft.apply(u) - dense.apply(u)).lpNorm<Eigen::Infinity>(),
                      (fft.apply_adjoint(v) - dense.apply_adjoint(v)).lpNorm<Eigen::Infinity>()});
  }
  const Vector e = Vector::Ones(256);
  const double ae = (fft.apply(e) - e).lpNorm<Eigen::Infinity>();
  const double ate = (fft.apply_adjoint(e) - e).lpNorm<Eigen::Infinity>();
  const double dense_sym = (dense.matrix() - dense.matrix().transpose()).lpNorm<Eigen::Infinity>();
  const double dense_e = (dense.apply(e) - e).lpNorm<Eigen::Infinity>();
  const bool ok = adj <= 1e-10 && ae <= 1e-12 && ate <= 1e-12 && cross <= 1e-12 && dense_e <= 1e-12;
  return {ok, fmt("adjoint gap %.2e, |Ae-e| %.2e, |A'e-e| %.2e, |fft-dense| %.2e, dense |Ae-e| %.2e "
                  "(dense asymmetry %.1e)",
                  adj, ae, ate, cross, dense_e, dense_sym)};
}

sgp::bench::BenchConfig figure_config(std::uint64_t seed, const fs::path& dir) {
  sgp::bench::BenchConfig c;  // 64x64 phantom, Gaussian variance 9, b = 10, (nu, rho) = (0.0415, 1)
  c.problem.seed = seed;
  c.run.max_iters = 2000;
  c.run.record_time = false;
  c.output.dir = dir;
  return c;
}

Outcome figure_ordering() {
  int ordered = 0;
  std::ostringstream detail;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto r = sgp::bench::run_benchmark(figure_config(seed, scratch("fig_" + std::to_string(seed))));
    auto its = [&](const char* m) {
      const auto* res = r.find(m);
      return res && res->ok && res->iterations_to_gap ? *res->iterations_to_gap
                                                      : std::numeric_limits<std::size_t>::max();
    };
    const std::size_t sgp = its("sgp"), fixed = its("sgp_fixed"), gp = its("gp");
    const bool ok = sgp <= fixed && fixed <= gp && gp != std::numeric_limits<std::size_t>::max();
    if (ok) ++ordered;
    detail << fmt("seed %d: %zu/%zu/%zu%s; ", static_cast<int>(seed), sgp, fixed, gp, ok ? "" : " (x)");
  }
  detail << "(iterations to gap 1e-6, SGP/SGP*/GP)";
  return {ordered >= 4, fmt("%d/5 seeds ordered; ", ordered) + detail.str()};
}

Outcome table_ordering() {
  int ordered = 0, converged = 0;
  std::ostringstream detail;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    sgp::bench::BenchConfig c;
    c.problem.seed = seed;
    c.solver.methods = {sgp::bench::parse_method("gp"), sgp::bench::parse_method("sgp_fixed"),
                        sgp::bench::parse_method("sgp")};
    c.run.record_time = false;
    c.output.dir = scratch("tab_" + std::to_string(seed));
    const auto r = sgp::bench::run_autoparam(c);
    bool all_converged = r.all_ok();
    for (const auto& m : r.methods) {
      if (!m.ok) continue;
      const auto& tr = m.solution.trace();
      const bool pred = tr.size() >= 2
                            ? sgp::discrepancy_converged(c.discrepancy, tr.back().nu,
                                                         tr[tr.size() - 2].nu, true, tr.back().discrepancy)
                            : sgp::discrepancy_converged(c.discrepancy, tr.back().nu, 0.0, false,
                                                         tr.back().discrepancy);
      all_converged = all_converged && m.solution.converged && pred;
    }
    if (all_converged) ++converged;
    const auto* gp = r.find("gp");
    const auto* fixed = r.find("sgp_fixed");
    const auto* sgp = r.find("sgp");
    const std::size_t kg = gp && gp->ok ? gp->solution.total_inner() : 0;
    const std::size_t kf = fixed && fixed->ok ? fixed->solution.total_inner() : 0;
    const std::size_t ks = sgp && sgp->ok ? sgp->solution.total_inner() : 0;
    const bool ok = all_converged && ks < kg;
    if (ok) ++ordered;
    detail << fmt("seed %d: k_tot %zu/%zu/%zu nu %.4g%s; ", static_cast<int>(seed), ks, kf, kg,
                  sgp && sgp->ok ? sgp->solution.nu : 0.0, ok ? "" : " (x)");
  }
  detail << "(SGP/SGP*/GP)";
  return {converged == 5 && ordered >= 4,
          fmt("%d/5 seeds converged, %d/5 with SGP k_tot < GP k_tot; ", converged, ordered) + detail.str()};
}

Outcome secant_stub() {
  auto curve = [](double nu) { return 2.0 - 1.0 / (1.0 + nu); };
  const sgp::NuEvaluator eval = [&](double nu, const Vector& warm) {
    return sgp::NuEvaluation{warm, curve(nu), 1, 0.0};
  };
  bool ok = true;
  std::ostringstream detail;
  for (double hi : {1.0, 10.0}) {
    sgp::DiscrepancyConfig c;
    c.eta = 1.5;
    c.nu_hi = hi;
    const auto s = sgp::solve_for_nu(eval, Vector::Zero(1), c, false);
    std::size_t secant = 0;
    bool bracketed = false;
    for (const auto& step : s.trace()) {
      if (bracketed) ++secant;
      bracketed = bracketed || step.bracket_hi > 0.0;
    }
    const bool pass = s.converged && std::abs(curve(s.nu) - 1.5) <= 5e-4 && secant <= 8;
    ok = ok && pass;
    detail << fmt("bracket (1e-6, %g): nu = %.6f, |D-eta| = %.2e, %zu secant steps after %zu "
                  "bracketing evaluations; ",
                  hi, s.nu, std::abs(curve(s.nu) - 1.5), secant, s.trace().size() - secant);
  }
  return {ok, detail.str()};
}

Outcome determinism() {
  std::vector<std::map<std::string, std::string>> outputs;
  for (int run = 0; run < 2; ++run) {
    const fs::path dir = scratch("det_" + std::to_string(run));
    sgp::bench::run_benchmark(figure_config(1, dir));
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.path().extension() == ".csv") {
        files[entry.path().filename().string()] = sgp::bench::read_text_file(entry.path());
      }
    }
    outputs.push_back(std::move(files));
  }
  const bool same = !outputs[0].empty() && outputs[0] == outputs[1];
  std::size_t bytes = 0;
  for (const auto& [name, text] : outputs[0]) bytes += text.size();
  return {same, fmt("%zu CSV files, %zu bytes, %s", outputs[0].size(), bytes,
                    same ? "byte-identical" : "DIFFER")};
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "descent inequality suite", 5, descent_inequality},
      {2, "Armijo lambda lower bound", 5, armijo_lower_bound},
      {3, "oracle equivalence on box QPs", 60, oracle_equivalence},
      {4, "O(1/k) rate envelope", 60, rate_envelope},
      {5, "theta_k monitor", 10, theta_monitor},
      {6, "KL/HS gradient check", 10, gradient_check},
      {7, "split-gradient identity", 5, split_identity},
      {8, "blur operator suite", 5, operator_suite},
      {9, "64x64 convergence ordering", 300, figure_ordering},
      {10, "64x64 discrepancy pipeline", 600, table_ordering},
      {11, "discrepancy secant on analytic stub", 1, secant_stub},
      {12, "determinism of benchmark CSVs", 600, determinism},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--list") {
      for (const auto& c : criteria()) std::printf("%2d  %s (limit %.0f s)\n", c.id, c.title, c.limit_seconds);
      return 0;
    }
    selected.push_back(std::stoi(arg));
  }
  int failed = 0, ran = 0;
  for (const auto& c : criteria()) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_seconds;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("[%s] %2d %s: %s [%.2f s, limit %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.title,
                o.detail.c_str(), secs, c.limit_seconds, in_time ? "" : ", TOO SLOW");
    std::fflush(stdout);
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criteria selected\n");
    return 2;
  }
  std::printf("%d/%d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
