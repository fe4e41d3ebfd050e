#include "sgp/bench/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "sgp/bench/csv.hpp"
#include "sgp/errors.hpp"
#include "sgp/metric.hpp"

namespace sgp::bench {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    return parse_double(v);
  } catch (const Error&) {
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  }
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
    throw ConfigError(key + ": expected a nonnegative integer, got '" + v + "'");
  }
  return out;
}

std::size_t to_size(const std::string& key, const std::string& v) {
  return static_cast<std::size_t>(to_u64(key, v));
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(key + ": expected a boolean, got '" + v + "'");
}

std::vector<MethodSpec> to_methods(const std::string& key, const std::string& v) {
  std::vector<MethodSpec> out;
  std::istringstream is(v);
  std::string token;
  while (std::getline(is, token, ',')) {
    token = trim(token);
    if (token.empty()) continue;
    try {
      out.push_back(parse_method(token));
    } catch (const Error& e) {
      throw ConfigError(key + ": " + e.what());
    }
  }
  if (out.empty()) throw ConfigError(key + ": no methods given");
  return out;
}

using Setter = std::function<void(BenchConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto dbl = [&t](const std::string& key, auto member) {
      t[key] = [member](BenchConfig& c, const std::string& k, const std::string& v) {
        member(c) = to_double(k, v);
      };
    };
    auto sz = [&t](const std::string& key, auto member) {
      t[key] = [member](BenchConfig& c, const std::string& k, const std::string& v) {
        member(c) = to_size(k, v);
      };
    };
    auto str = [&t](const std::string& key, auto member) {
      t[key] = [member](BenchConfig& c, const std::string&, const std::string& v) { member(c) = v; };
    };
    auto flag = [&t](const std::string& key, auto member) {
      t[key] = [member](BenchConfig& c, const std::string& k, const std::string& v) {
        member(c) = to_bool(k, v);
      };
    };

    str("problem.kind", [](BenchConfig& c) -> std::string& { return c.problem.kind; });
    sz("problem.rows", [](BenchConfig& c) -> std::size_t& { return c.problem.rows; });
    sz("problem.cols", [](BenchConfig& c) -> std::size_t& { return c.problem.cols; });
    t["problem.size"] = [](BenchConfig& c, const std::string& k, const std::string& v) {
      c.problem.rows = c.problem.cols = to_size(k, v);
    };
    str("problem.truth_file", [](BenchConfig& c) -> std::string& { return c.problem.truth_file; });
    dbl("problem.psf_variance", [](BenchConfig& c) -> double& { return c.problem.psf_variance; });
    sz("problem.psf_size", [](BenchConfig& c) -> std::size_t& { return c.problem.psf_size; });
    str("problem.psf_file", [](BenchConfig& c) -> std::string& { return c.problem.psf_file; });
    dbl("problem.background", [](BenchConfig& c) -> double& { return c.problem.background; });
    dbl("problem.intensity", [](BenchConfig& c) -> double& { return c.problem.intensity; });
    dbl("problem.scale", [](BenchConfig& c) -> double& { return c.problem.scale; });
    t["problem.seed"] = [](BenchConfig& c, const std::string& k, const std::string& v) {
      c.problem.seed = to_u64(k, v);
    };
    flag("problem.noise", [](BenchConfig& c) -> bool& { return c.problem.noise; });
    dbl("problem.nu", [](BenchConfig& c) -> double& { return c.problem.nu; });
    dbl("problem.rho", [](BenchConfig& c) -> double& { return c.problem.rho; });
    dbl("problem.rho_relative", [](BenchConfig& c) -> double& { return c.problem.rho_relative; });
    sz("problem.quadratic_dim", [](BenchConfig& c) -> std::size_t& { return c.problem.quadratic_dim; });

    t["solver.methods"] = [](BenchConfig& c, const std::string& k, const std::string& v) {
      c.solver.methods = to_methods(k, v);
    };
    str("solver.steplength", [](BenchConfig& c) -> std::string& { return c.solver.steplength; });
    dbl("solver.alpha_min", [](BenchConfig& c) -> double& { return c.solver.steplength_config.alpha_min; });
    dbl("solver.alpha_max", [](BenchConfig& c) -> double& { return c.solver.steplength_config.alpha_max; });
    dbl("solver.alpha0", [](BenchConfig& c) -> double& { return c.solver.steplength_config.alpha0; });
    sz("solver.bb_memory", [](BenchConfig& c) -> std::size_t& { return c.solver.steplength_config.memory; });
    dbl("solver.tau0", [](BenchConfig& c) -> double& { return c.solver.steplength_config.tau0; });
    dbl("solver.beta", [](BenchConfig& c) -> double& { return c.solver.linesearch.beta; });
    dbl("solver.delta", [](BenchConfig& c) -> double& { return c.solver.linesearch.delta; });
    sz("solver.max_backtracks", [](BenchConfig& c) -> std::size_t& { return c.solver.linesearch.max_backtracks; });

    sz("run.max_iters", [](BenchConfig& c) -> std::size_t& { return c.run.max_iters; });
    dbl("run.gap_tol", [](BenchConfig& c) -> double& { return c.run.gap_tol; });
    sz("run.groundtruth_iters", [](BenchConfig& c) -> std::size_t& { return c.run.groundtruth_iters; });
    str("run.groundtruth_metric", [](BenchConfig& c) -> std::string& { return c.run.groundtruth_metric; });
    dbl("run.rel_f_tol", [](BenchConfig& c) -> double& { return c.run.rel_f_tol; });
    dbl("run.stationarity_tol", [](BenchConfig& c) -> double& { return c.run.stationarity_tol; });
    flag("run.parallel", [](BenchConfig& c) -> bool& { return c.run.parallel; });
    flag("run.record_time", [](BenchConfig& c) -> bool& { return c.run.record_time; });

    t["output.dir"] = [](BenchConfig& c, const std::string&, const std::string& v) { c.output.dir = v; };
    t["output.cache_dir"] = [](BenchConfig& c, const std::string&, const std::string& v) {
      c.output.cache_dir = v;
    };

    dbl("discrepancy.eta", [](BenchConfig& c) -> double& { return c.discrepancy.eta; });
    dbl("discrepancy.eps_inner", [](BenchConfig& c) -> double& { return c.discrepancy.eps_inner; });
    dbl("discrepancy.eps1", [](BenchConfig& c) -> double& { return c.discrepancy.eps1; });
    dbl("discrepancy.eps2", [](BenchConfig& c) -> double& { return c.discrepancy.eps2; });
    sz("discrepancy.max_inner_iters", [](BenchConfig& c) -> std::size_t& { return c.discrepancy.max_inner_iters; });
    sz("discrepancy.max_outer_steps", [](BenchConfig& c) -> std::size_t& { return c.discrepancy.max_outer_steps; });
    dbl("discrepancy.nu_lo", [](BenchConfig& c) -> double& { return c.discrepancy.nu_lo; });
    dbl("discrepancy.nu_hi", [](BenchConfig& c) -> double& { return c.discrepancy.nu_hi; });
    dbl("discrepancy.expand_factor", [](BenchConfig& c) -> double& { return c.discrepancy.expand_factor; });
    sz("discrepancy.max_expansions", [](BenchConfig& c) -> std::size_t& { return c.discrepancy.max_expansions; });
    return t;
  }();
  return table;
}

void validate(const BenchConfig& c) {
  static const std::set<std::string> kinds{"shepp_logan", "file", "quadratic"};
  if (!kinds.contains(c.problem.kind)) {
    throw ConfigError("problem.kind must be shepp_logan | file | quadratic");
  }
  if (c.problem.kind == "file" && c.problem.truth_file.empty()) {
    throw ConfigError("problem.kind = file needs problem.truth_file");
  }
  if (c.problem.rows == 0 || c.problem.cols == 0) throw ConfigError("problem size must be positive");
  if (c.problem.quadratic_dim == 0) throw ConfigError("problem.quadratic_dim must be positive");
  if (!(c.problem.intensity >= 0.0) || !(c.problem.scale > 0.0) || !(c.problem.background > 0.0)) {
    throw ConfigError("problem.intensity must be nonnegative, problem.scale and problem.background positive");
  }
  if (!(c.problem.psf_variance > 0.0) || c.problem.psf_size % 2 == 0) {
    throw ConfigError("problem.psf_variance must be positive and problem.psf_size odd");
  }
  if (!(c.problem.nu > 0.0)) throw ConfigError("problem.nu must be positive");
  if (!(c.problem.rho > 0.0) || c.problem.rho_relative < 0.0) {
    throw ConfigError("problem.rho must be positive and problem.rho_relative nonnegative");
  }
  if (c.run.max_iters == 0 || c.run.groundtruth_iters == 0) {
    throw ConfigError("run iteration counts must be positive");
  }
  try {
    BoundSchedule::parse(c.run.groundtruth_metric);
    for (const auto& m : c.solver.methods) BoundSchedule::parse(m.metric);
    parse_steplength(c.solver.steplength, c.solver.steplength_config);
    c.solver.linesearch.validate();
    c.discrepancy.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

BenchConfig::BenchConfig() {
  solver.methods = {parse_method("gp"), parse_method("sgp_fixed"), parse_method("sgp")};
}

MethodSpec parse_method(const std::string& token) {
  if (token == "gp") return {"gp", "identity"};
  if (token == "sgp_fixed") return {"sgp_fixed", "fixed:1e5"};
  if (token == "sgp") return {"sgp", "summable:1e10"};
  const auto eq = token.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("unknown method '" + token + "' (use gp | sgp_fixed | sgp | name=metric)");
  }
  MethodSpec m{trim(token.substr(0, eq)), trim(token.substr(eq + 1))};
  if (!std::all_of(m.name.begin(), m.name.end(),
                   [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-'; })) {
    throw ConfigError("method names may contain only letters, digits, '_' and '-'");
  }
  try {
    BoundSchedule::parse(m.metric);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return m;
}

BenchConfig parse_config(const std::string& text) {
  BenchConfig config;
  std::istringstream is(text);
  std::string line;
  std::string section;
  std::set<std::string> seen;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": bad section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!section.empty()) key = section + "." + key;
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (!seen.insert(key).second) {
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    it->second(config, key, value);
  }
  validate(config);
  return config;
}

BenchConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const IoError& e) {
    throw ConfigError(e.what());
  }
  return parse_config(text);
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, _] : setters()) keys.push_back(k);
  return keys;
}

std::string problem_fingerprint(const BenchConfig& c) {
  std::ostringstream os;
  const auto& p = c.problem;
  os << "kind=" << p.kind << ";rows=" << p.rows << ";cols=" << p.cols << ";truth=" << p.truth_file
     << ";psf_var=" << format_double(p.psf_variance) << ";psf_size=" << p.psf_size
     << ";psf_file=" << p.psf_file << ";b=" << format_double(p.background)
     << ";intensity=" << format_double(p.intensity) << ";scale=" << format_double(p.scale) << ";seed=" << p.seed << ";noise=" << p.noise
     << ";nu=" << format_double(p.nu) << ";rho=" << format_double(p.rho)
     << ";rho_rel=" << format_double(p.rho_relative) << ";qdim=" << p.quadratic_dim
     << ";gt_iters=" << c.run.groundtruth_iters << ";gt_metric=" << c.run.groundtruth_metric
     << ";steplength=" << c.solver.steplength
     << ";amin=" << format_double(c.solver.steplength_config.alpha_min)
     << ";amax=" << format_double(c.solver.steplength_config.alpha_max)
     << ";a0=" << format_double(c.solver.steplength_config.alpha0)
     << ";mem=" << c.solver.steplength_config.memory
     << ";tau0=" << format_double(c.solver.steplength_config.tau0)
     << ";beta=" << format_double(c.solver.linesearch.beta)
     << ";delta=" << format_double(c.solver.linesearch.delta);
  return os.str();
}

}  // namespace sgp::bench
