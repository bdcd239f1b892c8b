#include "gtoda/cli.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "gtoda/errors.hpp"
#include "gtoda/parallel.hpp"

namespace gtoda {

SuiteConfig parse_config_text(std::istream& in) {
  SuiteConfig cfg;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string key = eq == std::string::npos ? "" : trim(line.substr(0, eq));
    if (key.empty()) throw ArgumentError("config line " + std::to_string(lineno) + ": expected key = value");
    cfg[key] = trim(line.substr(eq + 1));
  }
  return cfg;
}

SuiteConfig read_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ArgumentError("cannot open config file " + path);
  return parse_config_text(f);
}

namespace {

CLI::Option* find_option(CLI::App* app, const std::string& key) {
  for (CLI::Option* o : app->get_options())
    if (o->check_lname(key)) return o;
  return nullptr;
}

std::string current_value(const CLI::Option* o) {
  if (o->count() == 0) return o->get_default_str();
  std::string s;
  for (const auto& r : o->results()) s += (s.empty() ? "" : ",") + r;
  return s;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  cli::Globals g;
  std::string config_path;
  bool print_config = false, fresh_seed = false;

  CLI::App app{"Geometric RSK transforms, Whittaker functions and Toda-type diffusions", "gtoda"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", g.seed, "Base seed");
  app.add_option("--threads", g.threads, "Worker threads (0: OpenMP default)")->check(CLI::NonNegativeNumber);
  app.add_option("--out", g.out, "Write output to this file");
  app.add_flag("--json", g.json, "JSON output");
  app.add_option("--config", config_path, "key=value config file, overridden by explicit flags");
  app.add_flag("--print-config", print_config, "Print the merged configuration and exit");
  app.add_flag("--fresh-seed", fresh_seed, "Draw a fresh seed from the OS");

  cli::SimulateOpts sim;
  auto* s_sim = app.add_subcommand("simulate", "Simulate paths, polymers and diffusions (CSV)");
  s_sim->add_option("--kind", sim.kind)->check(
      CLI::IsMember({"brownian", "polymer", "ground-state", "whittaker", "z-pattern"}));
  s_sim->add_option("--n", sim.n)->check(CLI::PositiveNumber);
  s_sim->add_option("--horizon", sim.horizon);
  s_sim->add_option("--dt", sim.dt);
  s_sim->add_option("--beta", sim.beta);
  s_sim->add_option("--nu", sim.nu)->delimiter(',');
  s_sim->add_option("--x0", sim.x0)->delimiter(',');

  cli::TransformOpts tr;
  auto* s_tr = app.add_subcommand("transform", "Apply the path transforms to a CSV path");
  s_tr->add_option("--in", tr.in, "Input CSV ('-' for stdin)");
  s_tr->add_option("--kind", tr.kind)->check(CLI::IsMember({"grsk", "beta", "pitman"}));
  s_tr->add_option("--beta", tr.beta);

  cli::PsiOpts psi;
  auto* s_wh = app.add_subcommand("whittaker", "Whittaker functions");
  s_wh->require_subcommand(1);
  auto* s_eval = s_wh->add_subcommand("eval", "Evaluate psi_lambda(x)");
  s_eval->add_option("--n", psi.n)->check(CLI::PositiveNumber);
  s_eval->add_option("--x", psi.x)->delimiter(',');
  s_eval->add_option("--lambda-re", psi.re)->delimiter(',');
  s_eval->add_option("--lambda-im", psi.im)->delimiter(',');
  s_eval->add_option("--method", psi.method)->check(CLI::IsMember({"closed-form", "givental", "mellin-barnes", "auto"}));

  cli::RmtOpts rmt;
  auto* s_rmt = app.add_subcommand("rmt", "Random matrices");
  s_rmt->require_subcommand(1);
  auto* s_sample = s_rmt->add_subcommand("sample", "Largest GUE eigenvalues");
  s_sample->add_option("--n", rmt.n)->check(CLI::PositiveNumber);
  s_sample->add_option("--reps", rmt.reps)->check(CLI::PositiveNumber);

  cli::VerifyOpts ver;
  auto* s_ver = app.add_subcommand("verify", "Run a named verification suite");
  s_ver->add_option("suite", ver.suite, "Suite name");
  s_ver->add_option("--set", ver.sets, "Suite config override key=value (repeatable)");
  s_ver->add_flag("--list", ver.list, "List suite names");

  cli::MomentOpts mom;
  auto* s_mom = app.add_subcommand("moments", "Laplace transform E exp(-s Z) by the contour formula");
  s_mom->add_option("--n", mom.n)->check(CLI::Range(1, 2));
  s_mom->add_option("--s", mom.s);
  s_mom->add_option("--t", mom.t);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    err << app.help();
    return kExitUsage;
  }

  // innermost invoked subcommand
  CLI::App* leaf = &app;
  while (!leaf->get_subcommands().empty()) leaf = leaf->get_subcommands().front();

  try {
    g.seed_given = app.get_option("--seed")->count() > 0;
    SuiteConfig leftover;
    if (!config_path.empty()) {
      for (const auto& [k, v] : read_config_file(config_path)) {
        CLI::Option* o = find_option(&app, k);
        if (!o && leaf != &app) o = find_option(leaf, k);
        if (!o) {
          leftover[k] = v;
          continue;
        }
        if (o->count() > 0) continue;  // explicit flag wins
        o->add_result(v);
        o->run_callback();
        if (k == "seed") g.seed_given = true;
      }
    }
    if (!leftover.empty() && leaf != s_ver)
      throw ArgumentError("config file: unknown key " + leftover.begin()->first);
    if (leaf == s_ver && !ver.list && ver.suite.empty()) throw ArgumentError("verify: missing suite name");
    if (fresh_seed) {
      std::random_device rd;
      g.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
      g.seed_given = true;
    }
    if (g.threads > 0) set_default_threads(g.threads);

    if (print_config) {
      auto dump = [&](CLI::App* a) {
        for (CLI::Option* o : a->get_options()) {
          if (o->get_lnames().empty() || o->get_lnames().front() == "help") continue;
          out << o->get_lnames().front() << '=' << current_value(o) << '\n';
        }
      };
      dump(&app);
      if (leaf != &app) dump(leaf);
      if (leaf == s_ver && !ver.suite.empty()) {
        SuiteConfig merged = suite_defaults(ver.suite);
        for (const auto& [k, v] : leftover) merged[k] = v;
        if (g.seed_given) merged["seed"] = std::to_string(g.seed);
        out << "[" << ver.suite << "]\n";
        for (const auto& [k, v] : merged) out << k << '=' << v << '\n';
      }
      return kExitOk;
    }

    std::ofstream file;
    if (!g.out.empty()) {
      file.open(g.out);
      if (!file) throw ArgumentError("cannot write " + g.out);
    }
    std::ostream& sink = g.out.empty() ? out : file;

    if (leaf == s_sim) return cli::simulate(g, sim, sink);
    if (leaf == s_tr) return cli::transform(g, tr, sink);
    if (leaf == s_eval) return cli::whittaker_eval(g, psi, sink);
    if (leaf == s_sample) return cli::rmt_sample(g, rmt, sink);
    if (leaf == s_ver) return cli::verify(g, ver, leftover, sink);
    if (leaf == s_mom) return cli::moments(g, mom, sink);
    throw ArgumentError("no command");
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedSize& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace gtoda
