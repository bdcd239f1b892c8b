#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include "gtoda/errors.hpp"
#include "gtoda/gibbs.hpp"
#include "gtoda/grsk.hpp"
#include "gtoda/polymer.hpp"
#include "gtoda/rmt.hpp"
#include "gtoda/sde.hpp"
#include "gtoda/whittaker.hpp"
#include "json.hpp"

namespace gtoda::cli {

namespace {

TimeGrid grid_for(double horizon, double dt) {
  if (!(horizon > 0.0) || !(dt > 0.0) || dt > horizon) throw ArgumentError("need 0 < dt <= horizon");
  return TimeGrid(horizon, static_cast<std::size_t>(std::llround(horizon / dt)));
}

std::vector<double> or_zero(const std::vector<double>& v, std::size_t n, const char* what) {
  if (v.empty()) return std::vector<double>(n, 0.0);
  if (v.size() != n) throw ArgumentError(std::string(what) + ": expected " + std::to_string(n) + " values");
  return v;
}

}  // namespace

int simulate(const Globals& g, const SimulateOpts& o, std::ostream& out) {
  RngStream rng(g.seed, 0);
  const std::vector<double> nu = or_zero(o.nu, o.n, "--nu");
  const TimeGrid grid = grid_for(o.horizon, o.dt);
  if (o.kind == "brownian" || o.kind == "polymer" || o.kind == "ground-state") {
    const VectorPath env = sample_brownian_path(o.n, DriftVector(nu), grid, rng);
    if (o.kind == "brownian") write_path_csv(out, env);
    else if (o.kind == "polymer") write_log_partition_csv(out, log_partition(env, o.beta));
    else write_ground_state_csv(out, ground_state(env));
    return 0;
  }
  SdeConfig cfg;
  cfg.horizon = o.horizon;
  cfg.dt = o.dt;
  if (o.kind == "whittaker") {
    if (o.n != 2) throw UnsupportedSize("simulate whittaker: --n 2 only");
    std::optional<std::vector<double>> x0;
    if (!o.x0.empty()) x0 = or_zero(o.x0, 2, "--x0");
    write_path_csv(out, simulate_whittaker_diffusion_n2(nu, x0, cfg, rng));
    return 0;
  }
  if (o.kind == "z-pattern") {
    const std::vector<double> x0 = or_zero(o.x0, o.n, "--x0");
    const TriangularArray init = sample_sigma(GibbsPatternLaw(x0, nu), rng, 1).samples.front();
    write_pattern_csv(out, simulate_triangular_z(nu, init, cfg, rng));
    return 0;
  }
  throw ArgumentError("simulate: unknown --kind " + o.kind);
}

int transform(const Globals&, const TransformOpts& o, std::ostream& out) {
  VectorPath path;
  if (o.in.empty() || o.in == "-") {
    path = read_path_csv(std::cin);
  } else {
    std::ifstream f(o.in);
    if (!f) throw ArgumentError("transform: cannot open " + o.in);
    path = read_path_csv(f);
  }
  if (o.kind == "grsk") write_path_csv(out, transform_t(path));
  else if (o.kind == "beta") write_path_csv(out, transform_t_beta(path, o.beta));
  else if (o.kind == "pitman") write_path_csv(out, pitman_transform(path));
  else throw ArgumentError("transform: unknown --kind " + o.kind);
  return 0;
}

int whittaker_eval(const Globals& g, const PsiOpts& o, std::ostream& out) {
  const std::vector<double> x = or_zero(o.x, o.n, "--x");
  const std::vector<double> re = or_zero(o.re, o.n, "--lambda-re");
  const std::vector<double> im = or_zero(o.im, o.n, "--lambda-im");
  const PsiValue v = whittaker_psi(x, SpectralParam::from_parts(re, im), parse_psi_method(o.method));
  if (g.json) {
    nlohmann::json j{{"n", o.n},         {"x", x},
                     {"lambda_re", re},  {"lambda_im", im},
                     {"method", to_string(v.method)},
                     {"value_re", v.value.real()}, {"value_im", v.value.imag()},
                     {"est_error", v.est_error}};
    out << j.dump(2) << '\n';
  } else {
    out.precision(15);
    out << v.value.real() << ' ' << v.value.imag() << " (" << to_string(v.method) << ", error " << v.est_error
        << ")\n";
  }
  return 0;
}

int rmt_sample(const Globals& g, const RmtOpts& o, std::ostream& out) {
  const auto lam = largest_eigenvalue_samples(o.n, o.reps, g.seed);
  if (g.json) {
    out << nlohmann::json{{"n", o.n}, {"reps", o.reps}, {"seed", g.seed}, {"lambda_max", lam}}.dump(2) << '\n';
  } else {
    out.precision(15);
    for (double v : lam) out << v << '\n';
  }
  return 0;
}

int verify(const Globals& g, const VerifyOpts& o, const SuiteConfig& file_cfg, std::ostream& out) {
  if (o.list) {
    for (const auto& name : suite_names()) out << name << '\n';
    return 0;
  }
  SuiteConfig overrides = file_cfg;
  for (const auto& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw ArgumentError("--set expects key=value, got " + kv);
    overrides[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  if (g.seed_given) overrides["seed"] = std::to_string(g.seed);
  const SuiteReport r = run_suite(o.suite, overrides);
  if (g.json) {
    out << r.to_json() << '\n';
  } else {
    for (const auto& c : r.checks)
      out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.statistic << " (threshold " << c.threshold
          << ")\n";
    out << r.suite << ": " << (r.passed() ? "passed" : "FAILED") << " in " << r.runtime_s << " s\n";
  }
  return r.passed() ? 0 : 1;
}

int moments(const Globals& g, const MomentOpts& o, std::ostream& out) {
  const double v = moment_transform(o.s, o.t, o.n, default_moment_contour(o.n));
  if (g.json) {
    out << nlohmann::json{{"n", o.n}, {"s", o.s}, {"t", o.t}, {"laplace_transform", v}}.dump(2) << '\n';
  } else {
    out.precision(15);
    out << v << '\n';
  }
  return 0;
}

}  // namespace gtoda::cli
