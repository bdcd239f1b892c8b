#include <cmath>

#include "gtoda/gibbs.hpp"
#include "gtoda/grsk.hpp"
#include "gtoda/parallel.hpp"
#include "gtoda/sde.hpp"
#include "gtoda/whittaker.hpp"
#include "suite_kit.hpp"

namespace gtoda::suite {

namespace {

std::vector<double> column(const std::vector<std::vector<double>>& rows, std::size_t j) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[j]);
  return out;
}

}  // namespace

void matsumoto_yor(Ctx& c) {
  const std::size_t n = c.ks_count("n");
  const double dt = c.real("dt"), alpha = c.real("alpha");
  std::uint64_t k = 0;
  for (double mu : c.reals("mus")) {
    ++k;
    // D(2)/2 - log 2 has the law of log Z^(mu)_1 when nu1 - nu2 = mu
    SdeConfig cfg;
    cfg.horizon = 2.0;
    cfg.dt = dt;
    const auto ends = whittaker_n2_endpoints({mu, 0.0}, std::nullopt, cfg, c.sub_seed(2 * k), n);
    std::vector<double> diffusion;
    for (const auto& e : ends) diffusion.push_back(0.5 * (e[0] - e[1]) - std::log(2.0));
    const auto direct = parallel_map(n, [&](std::size_t r) {
      RngStream rng(c.sub_seed(2 * k + 1), r);
      return log_exponential_functional(mu, 1.0, dt, rng);
    });
    c.report.add_ks("direct-vs-diffusion mu=" + fmt(mu), ks_two_sample(direct, diffusion, alpha));
  }
}

void entrance_law(Ctx& c) {
  const std::size_t n = c.ks_count("n");
  const double dt = c.real("dt");
  const TimeGrid grid(1.0, static_cast<std::size_t>(std::llround(1.0 / dt)));
  const EntranceMarginalN2 marginal(1.0);
  c.report.statistics["mass"] = marginal.total_mass();
  c.report.add_max("mass", std::abs(marginal.total_mass() - 1.0), 1e-3);
  const auto x1 = parallel_map(n, [&](std::size_t r) {
    RngStream rng(c.seed(), r);
    return transform_t(sample_brownian_path(2, DriftVector::zero(2), grid, rng))(grid.steps, 0);
  });
  c.report.add_ks("first-coordinate", ks_one_sample(x1, [&](double u) { return marginal.cdf_x1(u); }, c.real("alpha")));
}

void gibbs_gig(Ctx& c) {
  const std::size_t n = c.ks_count("n");
  const std::vector<double> x{0.3, -0.5}, nu{0.4, -0.2};
  RngStream rng(c.seed(), 0);
  const SigmaSamples s = sample_sigma(GibbsPatternLaw(x, nu), rng, n);
  // T11 - (x1 + x2)/2 is GIG/cosh with index nu1 - nu2 and scale 1/(2 e^{(x2 - x1)/2})
  std::vector<double> u;
  for (const auto& t : s.samples) u.push_back(t(1, 1) - 0.5 * (x[0] + x[1]));
  const double mu = nu[0] - nu[1], z = 0.5 * std::exp(0.5 * (x[0] - x[1]));
  c.report.add_ks("top-entry-vs-gig", ks_one_sample(u, [&](double v) { return gig_cdf(mu, z, v); }, c.real("alpha")));
}

void symmetric_pair_suite(Ctx& c) {
  const std::size_t n = c.ks_count("n");
  const double dt = c.real("dt"), alpha = c.real("alpha");
  const TimeGrid grid(1.0, static_cast<std::size_t>(std::llround(1.0 / dt)));
  const std::size_t end = grid.steps, mid = grid.steps / 2;
  const auto pts = parallel_map(n, [&](std::size_t r) {
    RngStream rng(c.sub_seed(1), r);
    const VectorPath p = symmetric_pair_n2(grid, rng);
    return std::vector<double>{p(end, 0), p(end, 1), p(mid, 0), p(mid, 1)};
  });
  std::vector<double> inc, sum, dif;
  for (const auto& p : pts) {
    inc.push_back((p[0] + p[1] - p[2] - p[3]) / std::sqrt(2.0));
    sum.push_back(p[0] + p[1]);
    dif.push_back((p[0] - p[1]) / std::sqrt(2.0));
  }
  const double span = grid.t(end) - grid.t(mid);
  c.report.add_ks("sum-increment-normal",
                  ks_one_sample(inc, [&](double v) { return normal_cdf(v / std::sqrt(span)); }, alpha));
  const double corr = pearson_correlation(sum, dif);
  c.report.statistics["sum-difference correlation"] = corr;
  c.report.add_max("sum-difference |correlation|", std::abs(corr), 0.03);

  SdeConfig cfg;
  cfg.dt = dt;
  std::vector<double> k0;
  for (const auto& e : whittaker_n2_endpoints({0.0, 0.0}, std::nullopt, cfg, c.sub_seed(2), n))
    k0.push_back((e[0] - e[1]) / std::sqrt(2.0));
  c.report.add_ks("difference-vs-k0-diffusion", ks_two_sample(dif, k0, alpha));
}

void markov_functions(Ctx& c) {
  const std::size_t n = c.ks_count("n");
  const double alpha = c.real("alpha");
  const std::vector<double> x0{0.5, -0.3}, nu{0.2, -0.1};
  SdeConfig cfg;
  cfg.dt = c.real("dt");
  const std::size_t end = static_cast<std::size_t>(std::llround(cfg.horizon / cfg.dt));

  const auto reference = whittaker_n2_endpoints(nu, x0, cfg, c.sub_seed(1), n);
  const auto xy = parallel_map(n, [&](std::size_t r) {
    RngStream rng(c.sub_seed(2), r);
    const XyPath p = simulate_xy_pair_n2(nu, x0, cfg, rng);
    return std::vector<double>{p.x(end, 0), p.x(end, 1)};
  });
  RngStream init_rng(c.sub_seed(3), 0);
  const SigmaSamples inits = sample_sigma(GibbsPatternLaw(x0, nu), init_rng, n);
  const auto z = parallel_map(n, [&](std::size_t r) {
    RngStream rng(c.sub_seed(4), r);
    const VectorPath b = simulate_triangular_z(nu, inits.samples[r], cfg, rng).bottom();
    return std::vector<double>{b(end, 0), b(end, 1)};
  });
  for (std::size_t j = 0; j < 2; ++j) {
    const std::string coord = " x" + std::to_string(j + 1);
    c.report.add_ks("xy-system" + coord, ks_two_sample(column(xy, j), column(reference, j), alpha));
    c.report.add_ks("z-bottom-row" + coord, ks_two_sample(column(z, j), column(reference, j), alpha));
  }
}

}  // namespace gtoda::suite
