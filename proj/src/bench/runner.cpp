#include "sgp/bench/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <random>
#include <sstream>

#include "sgp/bench/csv.hpp"
#include "sgp/errors.hpp"
#include "sgp/imaging/image_io.hpp"
#include "sgp/quadratic.hpp"

namespace sgp::bench {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << v;
  return os.str();
}

double elapsed(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double relative_error(const Vector& x, const Vector& truth) {
  const double denom = truth.norm();
  return denom > 0.0 ? (x - truth).norm() / denom : (x - truth).norm();
}

imaging::Image load_psf(const ProblemSpec& p) {
  if (!p.psf_file.empty()) return imaging::normalize_psf(imaging::read_image(p.psf_file));
  return imaging::gaussian_psf(p.psf_variance, p.psf_size);
}

// Separable box QP with a closed-form minimizer: diagonal Hessian with
// log-spaced curvatures in [1, 100] and a random linear term.
BenchProblem quadratic_problem(const BenchConfig& config) {
  const auto n = static_cast<Eigen::Index>(config.problem.quadratic_dim);
  std::mt19937_64 rng(config.problem.seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Vector h(n), c(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
    h[i] = std::pow(100.0, t);
    c[i] = unif(rng) * h[i];
  }
  auto q = std::make_shared<Quadratic>(Eigen::MatrixXd(h.asDiagonal()), c);
  const Vector xstar = c.cwiseQuotient(h).cwiseMax(0.0);
  BenchProblem p{q, FeasibleRegion::nonnegative(static_cast<std::size_t>(n)),
                 Vector::Ones(n), xstar, nullptr, std::nullopt, q->value(xstar), xstar,
                 q->jacobi_scaling()};
  return p;
}

}  // namespace

std::unique_ptr<MetricProvider> BenchProblem::metric(const std::string& schedule_spec) const {
  BoundSchedule schedule = BoundSchedule::parse(schedule_spec);
  if (schedule.mode() == BoundSchedule::Mode::kFixed && schedule.parameter() == 1.0) {
    return std::make_unique<IdentityMetric>();
  }
  if (const auto* composite = dynamic_cast<const imaging::CompositeObjective*>(objective.get())) {
    return std::make_unique<imaging::SplitGradientMetric>(*composite, std::move(schedule));
  }
  Vector raw = jacobi;
  return std::make_unique<ScheduledMetric>(std::move(schedule),
                                           [raw](const Vector&, const Vector&) { return raw; });
}

BenchProblem build_problem(const BenchConfig& config) {
  const ProblemSpec& p = config.problem;
  if (p.kind == "quadratic") return quadratic_problem(config);

  imaging::Image object;
  if (p.kind == "file") {
    object = imaging::read_image(p.truth_file);
  } else {
    object = imaging::shepp_logan_phantom({p.rows, p.cols});
  }
  object.pixels *= p.intensity;
  imaging::Image psf = load_psf(p);
  auto op = std::make_shared<imaging::FftBlurOperator>(object.shape, psf);
  imaging::SimulationOptions sim;
  sim.background = p.background;
  sim.scale = p.scale;
  sim.seed = p.seed;
  sim.noise = p.noise;
  imaging::SimulatedProblem simulated = imaging::simulate_problem(object, op, sim);
  const double rho = p.rho_relative > 0.0 ? p.rho_relative * simulated.model->data().maxCoeff() : p.rho;
  auto objective = std::make_shared<imaging::CompositeObjective>(
      simulated.model, imaging::HSRegularizer(object.shape, rho), p.nu);

  BenchProblem out{objective,
                   FeasibleRegion::nonnegative(object.shape.size()),
                   flat_start(*simulated.model),
                   simulated.truth.pixels,
                   simulated.model,
                   psf,
                   std::nullopt,
                   std::nullopt,
                   Vector()};
  return out;
}

std::filesystem::path ground_truth_path(const BenchConfig& config) {
  const auto dir = config.output.cache_dir.empty() ? config.output.dir : config.output.cache_dir;
  return dir / ("groundtruth_" + hex(fnv1a(problem_fingerprint(config))) + ".bin");
}

GroundTruth compute_ground_truth(const BenchConfig& config, const BenchProblem& problem) {
  if (problem.exact_minimizer) {
    return {*problem.exact_minimizer, *problem.exact_optimum, false};
  }
  const auto path = ground_truth_path(config);
  const auto n = static_cast<Eigen::Index>(problem.objective->dimension());
  if (std::filesystem::exists(path)) {
    imaging::Image cached = imaging::read_raw(path);
    if (cached.pixels.size() == n) {
      return {cached.pixels, problem.objective->value(cached.pixels), true};
    }
  }
  auto metric = problem.metric(config.run.groundtruth_metric);
  auto steplength = parse_steplength(config.solver.steplength, config.solver.steplength_config);
  StoppingRule stop;
  stop.max_iterations = config.run.groundtruth_iters;
  SolverOptions options;
  options.record_time = false;
  SolveResult r = sgp_solve(*problem.objective, problem.region, *metric, *steplength,
                            config.solver.linesearch, stop, problem.x0, options);
  std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  imaging::ImageShape shape = problem.model ? problem.model->shape()
                                            : imaging::ImageShape{static_cast<std::size_t>(n), 1};
  imaging::write_raw(path, imaging::Image(shape, r.x));
  return {r.x, r.f, false};
}

double relative_gap(double f, double f_ref) {
  return f_ref != 0.0 ? (f - f_ref) / std::abs(f_ref) : f - f_ref;
}

bool BenchResult::all_ok() const {
  return std::all_of(methods.begin(), methods.end(), [](const MethodResult& m) { return m.ok; });
}

const MethodResult* BenchResult::find(const std::string& name) const {
  for (const auto& m : methods) {
    if (m.method.name == name) return &m;
  }
  return nullptr;
}

std::string history_csv(const RunRecord& record, double f_reference) {
  std::ostringstream os;
  os << "k,rel_gap,f,lambda,alpha,mu,rate_envelope,seconds\n";
  double envelope = 0.0;
  for (const RunEntry& e : record.entries) {
    envelope = std::max(envelope, static_cast<double>(e.k) * (e.f - f_reference));
    os << e.k << ',' << format_double(relative_gap(e.f, f_reference)) << ',' << format_double(e.f)
       << ',' << format_double(e.lambda) << ',' << format_double(e.alpha) << ','
       << format_double(e.mu) << ',' << format_double(envelope) << ',' << format_double(e.seconds)
       << '\n';
  }
  return os.str();
}

std::string emit_plotdata(const std::vector<PlotSeries>& series) {
  struct Row {
    const PlotSeries* s;
    const RunEntry* e;
  };
  std::vector<Row> rows;
  for (const auto& s : series) {
    for (const auto& e : s.record.entries) rows.push_back({&s, &e});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.s->method != b.s->method) return a.s->method < b.s->method;
    return a.e->k < b.e->k;
  });
  std::ostringstream os;
  os << "method,k,f,rel_gap,lambda,alpha,d_norm,mu,seconds\n";
  for (const Row& r : rows) {
    const RunEntry& e = *r.e;
    os << r.s->method << ',' << e.k << ',' << format_double(e.f) << ','
       << format_double(relative_gap(e.f, r.s->f_reference)) << ',' << format_double(e.lambda)
       << ',' << format_double(e.alpha) << ',' << format_double(e.d_norm) << ','
       << format_double(e.mu) << ',' << format_double(e.seconds) << '\n';
  }
  return os.str();
}

std::vector<PlotSeries> parse_plotdata(const std::string& csv, double f_reference) {
  std::vector<PlotSeries> out;
  std::istringstream is(csv);
  std::string line;
  if (!std::getline(is, line) || line != "method,k,f,rel_gap,lambda,alpha,d_norm,mu,seconds") {
    throw InvalidInput("plot data: unexpected header");
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 9) throw InvalidInput("plot data: expected 9 fields");
    if (out.empty() || out.back().method != f[0]) {
      out.push_back({f[0], f_reference, {}});
      out.back().record.label = f[0];
    }
    RunEntry e{};
    e.k = static_cast<std::size_t>(std::stoull(f[1]));
    e.f = parse_double(f[2]);
    e.lambda = parse_double(f[4]);
    e.alpha = parse_double(f[5]);
    e.d_norm = parse_double(f[6]);
    e.mu = parse_double(f[7]);
    e.seconds = parse_double(f[8]);
    out.back().record.entries.push_back(e);
  }
  return out;
}

namespace {

MethodResult run_method(const BenchConfig& config, const BenchProblem& problem,
                        const MethodSpec& method, double f_reference) {
  MethodResult res;
  res.method = method;
  const auto start = Clock::now();
  try {
    auto metric = problem.metric(method.metric);
    auto steplength = parse_steplength(config.solver.steplength, config.solver.steplength_config);
    StoppingRule stop;
    stop.max_iterations = config.run.max_iters;
    stop.relative_f_change = config.run.rel_f_tol;
    stop.stationarity = config.run.stationarity_tol;
    SolverOptions options;
    options.record_time = config.run.record_time;
    SolveResult r = sgp_solve(*problem.objective, problem.region, *metric, *steplength,
                              config.solver.linesearch, stop, problem.x0, options);
    res.record = std::move(r.record);
    res.record.label = method.name;
    res.x = std::move(r.x);
    if (!res.record.monotone()) throw Error("objective values increased along the run");
    for (const RunEntry& e : res.record.entries) {
      if (relative_gap(e.f, f_reference) <= config.run.gap_tol) {
        res.iterations_to_gap = e.k;
        break;
      }
    }
    res.final_gap = relative_gap(res.record.entries.back().f, f_reference);
    res.rel_error = relative_error(res.x, problem.truth);
    res.ok = true;
  } catch (const Error& e) {
    res.ok = false;
    res.error = e.what();
  }
  res.seconds = config.run.record_time ? elapsed(start) : 0.0;
  return res;
}

std::string summary_csv(const BenchResult& result) {
  std::ostringstream os;
  os << "method,metric,status,iterations,iterations_to_gap,final_rel_gap,rel_error,wall_seconds,"
        "termination\n";
  for (const MethodResult& m : result.methods) {
    os << m.method.name << ',' << m.method.metric << ',' << (m.ok ? "ok" : "failed") << ','
       << m.record.iterations() << ','
       << (m.iterations_to_gap ? std::to_string(*m.iterations_to_gap) : std::string("none")) << ','
       << format_double(m.final_gap) << ',' << format_double(m.rel_error) << ','
       << format_double(m.seconds) << ',' << (m.ok ? to_string(m.record.termination) : "error")
       << '\n';
  }
  return os.str();
}

}  // namespace

BenchResult run_benchmark(const BenchConfig& config) {
  const BenchProblem problem = build_problem(config);
  const GroundTruth truth = compute_ground_truth(config, problem);

  BenchResult result;
  result.f_reference = truth.f;
  if (config.run.parallel && config.solver.methods.size() > 1) {
    std::vector<std::future<MethodResult>> jobs;
    for (const auto& m : config.solver.methods) {
      jobs.push_back(std::async(std::launch::async, [&config, &problem, m, f = truth.f] {
        return run_method(config, problem, m, f);
      }));
    }
    for (auto& j : jobs) result.methods.push_back(j.get());
  } else {
    for (const auto& m : config.solver.methods) {
      result.methods.push_back(run_method(config, problem, m, truth.f));
    }
  }

  std::filesystem::create_directories(config.output.dir);
  std::vector<PlotSeries> series;
  for (const MethodResult& m : result.methods) {
    if (!m.ok) continue;
    write_text_file(config.output.dir / ("history_" + m.method.name + ".csv"),
                    history_csv(m.record, truth.f));
    series.push_back({m.method.name, truth.f, m.record});
  }
  write_text_file(config.output.dir / "summary.csv", summary_csv(result));
  write_text_file(config.output.dir / "plotdata.csv", emit_plotdata(series));
  return result;
}

bool AutoparamResult::all_ok() const {
  return std::all_of(methods.begin(), methods.end(),
                     [](const AutoparamMethodResult& m) { return m.ok; });
}

const AutoparamMethodResult* AutoparamResult::find(const std::string& name) const {
  for (const auto& m : methods) {
    if (m.method.name == name) return &m;
  }
  return nullptr;
}

std::string discrepancy_csv(const std::vector<DiscrepancyStep>& trace) {
  std::ostringstream os;
  os << "outer_step,nu,discrepancy,inner_iters,f_value,seconds\n";
  for (const DiscrepancyStep& s : trace) {
    os << s.outer_step << ',' << format_double(s.nu) << ',' << format_double(s.discrepancy) << ','
       << s.inner_iters << ',' << format_double(s.f_value) << ',' << format_double(s.seconds)
       << '\n';
  }
  return os.str();
}

AutoparamResult run_autoparam_with(const BenchConfig& config, const BenchProblem& problem,
                                   const std::function<NuEvaluator(const MethodSpec&)>& make) {
  AutoparamResult result;
  if (const auto* composite =
          dynamic_cast<const imaging::CompositeObjective*>(problem.objective.get())) {
    result.rho = composite->regularizer().rho();
  }
  std::filesystem::create_directories(config.output.dir);
  for (const MethodSpec& method : config.solver.methods) {
    AutoparamMethodResult r;
    r.method = method;
    const auto start = Clock::now();
    try {
      const NuEvaluator evaluate = make(method);
      r.solution = solve_for_nu(evaluate, problem.x0, config.discrepancy, config.run.record_time);
      r.rel_error = relative_error(r.solution.x, problem.truth);
      r.ok = true;
    } catch (const Error& e) {
      r.error = e.what();
    }
    r.seconds = config.run.record_time ? elapsed(start) : 0.0;
    if (r.ok) {
      write_text_file(config.output.dir / ("autoparam_" + method.name + ".csv"),
                      discrepancy_csv(r.solution.trace()));
      if (problem.model) {
        const imaging::Image rec(problem.model->shape(), r.solution.x);
        imaging::write_raw(config.output.dir / ("reconstruction_" + method.name + ".bin"), rec);
        imaging::write_pgm(config.output.dir / ("reconstruction_" + method.name + ".pgm"), rec);
      }
    }
    result.methods.push_back(std::move(r));
  }

  std::ostringstream os;
  os << "method,metric,status,outer_steps,k_tot,nu,discrepancy,converged,rel_error,wall_seconds\n";
  for (const auto& m : result.methods) {
    os << m.method.name << ',' << m.method.metric << ',' << (m.ok ? "ok" : "failed") << ','
       << m.solution.trace().size() << ',' << m.solution.total_inner() << ','
       << format_double(m.solution.nu) << ',' << format_double(m.solution.discrepancy) << ','
       << (m.solution.converged ? "true" : "false") << ',' << format_double(m.rel_error) << ','
       << format_double(m.seconds) << '\n';
  }
  write_text_file(config.output.dir / "autoparam_summary.csv", os.str());
  return result;
}

AutoparamResult run_autoparam(const BenchConfig& config) {
  const BenchProblem problem = build_problem(config);
  if (!problem.model) throw ConfigError("autoparam needs an imaging problem");
  const auto* composite = dynamic_cast<const imaging::CompositeObjective*>(problem.objective.get());
  return run_autoparam_with(config, problem, [&](const MethodSpec& method) {
    InnerSolverSpec spec;
    spec.schedule = BoundSchedule::parse(method.metric);
    spec.steplength = config.solver.steplength_config;
    spec.linesearch = config.solver.linesearch;
    spec.record_time = config.run.record_time;
    return imaging_evaluator(problem.model, composite->regularizer(), config.discrepancy, spec);
  });
}

void write_simulation(const BenchConfig& config, const BenchProblem& problem) {
  if (!problem.model) throw ConfigError("simulate needs an imaging problem");
  std::filesystem::create_directories(config.output.dir);
  const auto shape = problem.model->shape();
  const imaging::Image truth(shape, problem.truth);
  const imaging::Image data(shape, problem.model->data());
  imaging::write_raw(config.output.dir / "truth.bin", truth);
  imaging::write_pgm(config.output.dir / "truth.pgm", truth);
  imaging::write_raw(config.output.dir / "data.bin", data);
  imaging::write_pgm(config.output.dir / "data.pgm", data);
  if (problem.psf) {
    imaging::write_raw(config.output.dir / "psf.bin", *problem.psf);
    imaging::write_pgm(config.output.dir / "psf.pgm", *problem.psf);
  }
}

}  // namespace sgp::bench
