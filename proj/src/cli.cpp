#include "vertexlab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "vertexlab/checks.hpp"
#include "vertexlab/constants.hpp"
#include "vertexlab/errors.hpp"
#include "vertexlab/grenander.hpp"
#include "vertexlab/special_fns.hpp"
#include "vertexlab/suite_cache.hpp"
#include "vertexlab/vertex_sim.hpp"

#ifndef VERTEXLAB_VERSION
#define VERTEXLAB_VERSION "0.0.0"
#endif

namespace vertexlab::cli {
namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 20240601;
  std::string out;
  std::string json_path;
  double table_range = 8.0;
  double table_step = 1e-3;
  std::string cache_dir;
  bool no_cache = false;
  int threads = 0;

  SuiteConfig suite_config() const {
    SuiteConfig c;
    c.x_min = -table_range;
    c.x_max = table_range;
    c.step = table_step;
    return c;
  }

  json to_json() const {
    return {{"seed", seed},
            {"out", out},
            {"json", json_path},
            {"table_range", table_range},
            {"table_step", table_step},
            {"no_cache", no_cache},
            {"threads", threads}};
  }
};

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

class Session {
 public:
  Session(std::string command, const std::vector<std::string>& argv, const Globals& g)
      : command_(std::move(command)), argv_(argv), globals_(g), start_(std::chrono::steady_clock::now()) {}

  CoreFnSuite suite() const {
    const SuiteConfig config = globals_.suite_config();
    if (globals_.no_cache) return CoreFnSuite::build(config);
    std::string dir = globals_.cache_dir;
    if (dir.empty()) {
      const char* env = std::getenv("VERTEXLAB_CACHE_DIR");
      dir = env ? env : ".vertexlab-cache";
    }
    return SuiteCache(dir).load_or_build(config);
  }

  /// Prints the summary and writes the JSON file (and manifest) when requested.
  void emit(const json& summary, const json& config, std::ostream& out) {
    out << summary.dump(2) << "\n";
    if (!globals_.json_path.empty()) {
      write_text(globals_.json_path, summary.dump(2) + "\n");
      write_manifest(globals_.json_path, config);
    }
  }

  void write_csv(const std::string& header, const std::vector<std::vector<double>>& rows, const json& config,
                 bool integers = false) {
    if (globals_.out.empty()) return;
    std::string text = header + "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) text += ',';
        text += integers ? std::to_string(static_cast<long long>(row[i])) : csv_number(row[i]);
      }
      text += '\n';
    }
    write_text(globals_.out, text);
    write_manifest(globals_.out, config);
  }

 private:
  static void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot write " + path);
    f << text;
  }

  void write_manifest(const std::string& path, const json& config) const {
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    json m;
    m["command"] = command_;
    m["version"] = VERTEXLAB_VERSION;
    m["argv"] = argv_;
    m["config"] = config;
    m["seed"] = globals_.seed;
    m["output"] = path;
    m["wall_seconds"] = seconds;
    write_text(path + ".manifest.json", m.dump(2) + "\n");
  }

  std::string command_;
  std::vector<std::string> argv_;
  Globals globals_;
  std::chrono::steady_clock::time_point start_;
};

// ---------------------------------------------------------------------------

struct ConstantsOpts {
  bool skip_covariance = false;
  double cov_bound = 6.0;
  double cov_step = 1e-2;
};

int cmd_constants(const ConstantsOpts& o, Session& s, const Globals& g, std::ostream& out) {
  const CoreFnSuite suite = s.suite();
  const auto k1 = constants::k1_airy();
  const auto ev0 = constants::ev0_sq();
  const auto em = constants::e_max();
  double min_integrand = 0.0;
  const auto k1d = constants::k1_double_integral(suite, &min_integrand);

  json checks;
  checks["k1_airy_vs_double"] = std::fabs(k1.value - k1d.value) < 5e-3;
  checks["k1_airy_vs_8_ev0_sq"] = std::fabs(k1.value - 8.0 * ev0.value) < 1e-4;
  checks["e_max_vs_3_ev0_sq"] = std::fabs(em.value - 3.0 * ev0.value) < 1e-4;
  checks["k1_imag_residue"] = k1.imag_residue < 1e-8;
  checks["double_integrand_nonnegative"] = min_integrand >= 0.0;

  json summary;
  summary["k1_airy"] = num(k1.value);
  summary["k1_double"] = num(k1d.value);
  summary["ev0_sq"] = num(ev0.value);
  summary["e_max"] = num(em.value);
  summary["k1_half"] = num(constants::k_scaled(0.5, constants::Which::k1));
  std::optional<constants::CovarianceResult> cov;
  if (!o.skip_covariance) cov = constants::covariance_kernel(suite, o.cov_bound, o.cov_step);
  summary["two_int_cov"] = cov ? num(cov->two_int_cov) : json(nullptr);
  summary["k2_analytic"] = cov ? num(cov->k2_analytic) : json(nullptr);
  summary["error_estimates"] = {
      {"k1_airy", k1.error},
      {"k1_double", k1d.error},
      {"ev0_sq", ev0.error},
      {"e_max", em.error},
      {"two_int_cov", cov ? num(std::fabs(cov->two_int_cov - cov->two_int_cov_coarse)) : json(nullptr)}};
  if (cov) {
    summary["covariance"] = {{"grid_bound", o.cov_bound},
                             {"step", o.cov_step},
                             {"two_int_cov_at_double_step", cov->two_int_cov_coarse},
                             {"relative_change", cov->relative_change},
                             {"warning", cov->warning.empty() ? json(nullptr) : json(cov->warning)}};
  }
  summary["checks"] = checks;
  bool ok = true;
  for (const auto& [name, pass] : checks.items()) ok = ok && pass.get<bool>();
  summary["passed"] = ok;

  json config = g.to_json();
  config["skip_covariance"] = o.skip_covariance;
  config["cov_bound"] = o.cov_bound;
  config["cov_step"] = o.cov_step;
  s.emit(summary, config, out);
  if (cov) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < cov->b.size(); ++i) rows.push_back({cov->b[i], cov->cov[i]});
    s.write_csv("b,cov", rows, config);
  }
  return ok ? kExitOk : kExitGolden;
}

// ---------------------------------------------------------------------------

struct TabulateOpts {
  std::string fn;
  double from = -4.0;
  double to = 4.0;
  double step = 0.01;
  std::string transform = "none";
};

int cmd_tabulate(const TabulateOpts& o, Session& s, const Globals& g, std::ostream& out) {
  if (!(o.step > 0.0)) throw UsageError("tabulate: --step must be positive");
  if (!(o.to >= o.from)) throw UsageError("tabulate: --to must not be below --from");
  if (o.transform != "none" && o.fn != "p") throw UsageError("tabulate: --transform applies to p only");
  const double cells = (o.to - o.from) / o.step;
  if (cells > 1e7) throw UsageError("tabulate: too many rows");
  const auto n = static_cast<std::size_t>(std::floor(cells + 1e-9)) + 1;

  const CoreFnSuite suite = s.suite();
  std::vector<double> xs(n), vs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = o.from + o.step * static_cast<double>(i);
    double v = 0.0;
    if (o.fn == "g") {
      v = suite.g(x);
    } else if (o.fn == "p") {
      v = suite.p_fn().p(x);
      if (o.transform == "u32") v *= x * std::sqrt(x);
    } else if (o.fn == "phi") {
      v = suite.phi(x);
    } else if (o.fn == "Phi") {
      v = suite.Phi(x);
    } else if (o.fn == "fv0") {
      v = suite.f_v0(x);
    } else {
      v = suite.g_fn().u2(x);
    }
    xs[i] = x;
    vs[i] = v;
  }
  json config = g.to_json();
  config["fn"] = o.fn;
  config["from"] = o.from;
  config["to"] = o.to;
  config["step"] = o.step;
  config["transform"] = o.transform;
  if (g.out.empty()) {
    write_table_csv(out, xs, vs);
  } else {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < n; ++i) rows.push_back({xs[i], vs[i]});
    s.write_csv("x,value", rows, config);
    json summary{{"fn", o.fn}, {"transform", o.transform}, {"rows", n}, {"out", g.out}};
    s.emit(summary, config, out);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct SimulateOpts {
  double horizon = 2000.0;
  int reps = 100;
  double window = 50.0;
  double k1 = 2.10848;
  double k2 = 1.029;
};

int cmd_simulate(const SimulateOpts& o, Session& s, const Globals& g, std::ostream& out) {
  sim::SimConfig config;
  config.horizon = o.horizon;
  config.replications = o.reps;
  config.window = o.window;
  config.seed = g.seed;
  config.threads = g.threads;
  config.validate();
  const CoreFnSuite suite = s.suite();
  const sim::VertexSampler sampler(suite);
  const auto stats = sim::estimate_rates(sampler, config);
  const auto clt = sim::clt_check(stats, o.k1, o.k2);

  json summary;
  summary["horizon"] = o.horizon;
  summary["reps"] = o.reps;
  summary["window"] = o.window;
  summary["seed"] = g.seed;
  summary["k1_hat"] = stats.mean_rate;
  summary["k1_se"] = stats.mean_rate_se;
  summary["k2_hat"] = stats.var_rate;
  summary["k2_se"] = stats.var_rate_se;
  summary["windows"] = stats.window_counts.size();
  summary["extended_waits"] = stats.extended_waits;
  summary["clt"] = {{"mean", clt.mean},
                    {"var", clt.variance},
                    {"skew", clt.skewness},
                    {"kurt", clt.excess_kurtosis},
                    {"ks", clt.ks_distance}};
  json cfg = g.to_json();
  cfg["horizon"] = o.horizon;
  cfg["reps"] = o.reps;
  cfg["window"] = o.window;
  cfg["k1"] = o.k1;
  cfg["k2"] = o.k2;
  s.emit(summary, cfg, out);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < stats.window_counts.size(); ++i) {
    rows.push_back({double(i), double(stats.window_counts[i])});
  }
  s.write_csv("window_index,count", rows, cfg, true);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct GrenanderOpts {
  std::string model = "triangular";
  int n = 1000;
  int reps = 1000;
};

int cmd_grenander(const GrenanderOpts& o, Session& s, const Globals& g, std::ostream& out) {
  if (o.n < 1 || o.reps < 2) throw UsageError("grenander: need --n >= 1 and --reps >= 2");
  const auto model = grenander::model_by_name(o.model);
  const auto r = grenander::mc_jump_study(model, o.n, o.reps, g.seed, g.threads);
  const double theory = grenander::theory_coefficient(model);
  json summary;
  summary["model"] = o.model;
  summary["n"] = o.n;
  summary["reps"] = o.reps;
  summary["seed"] = g.seed;
  summary["mean_coeff"] = r.mean_coeff;
  summary["mean_se"] = r.mean_se;
  summary["var_coeff"] = r.var_coeff;
  summary["var_se"] = r.var_se;
  summary["theory_coefficient"] = theory;
  summary["theory_mean_coeff"] = constants::kK1Reference * theory;
  summary["skewness"] = r.skewness;
  summary["excess_kurtosis"] = r.excess_kurtosis;
  json cfg = g.to_json();
  cfg["model"] = o.model;
  cfg["n"] = o.n;
  cfg["reps"] = o.reps;
  s.emit(summary, cfg, out);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < r.counts.size(); ++i) rows.push_back({double(i), double(r.counts[i])});
  s.write_csv("replication,count", rows, cfg, true);
  return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_selftest(bool quick, Session& s, const Globals& g, std::ostream& out) {
  const CoreFnSuite suite = s.suite();
  const auto results = checks::invariant_suite(suite, quick);
  json list = json::array();
  bool ok = true;
  for (const auto& c : results) {
    list.push_back({{"name", c.name}, {"value", num(c.value)}, {"target", c.target}, {"tolerance", c.tolerance},
                    {"pass", c.pass}});
    ok = ok && c.pass;
  }
  json summary{{"quick", quick}, {"passed", ok}, {"checks", list}};
  json cfg = g.to_json();
  cfg["quick"] = quick;
  s.emit(summary, cfg, out);
  return ok ? kExitOk : kExitGolden;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vertex process, Chernoff-type special functions and Grenander jump counts"};
  app.name("vertexlab");
  app.set_version_flag("--version", VERTEXLAB_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Base seed for seeded commands")->capture_default_str();
  app.add_option("--out", g.out, "CSV output path");
  app.add_option("--json", g.json_path, "Also write the JSON summary to this path");
  app.add_option("--table-range", g.table_range, "Tables cover [-R, R]")->capture_default_str();
  app.add_option("--table-step", g.table_step, "Table grid step")->capture_default_str();
  app.add_option("--cache-dir", g.cache_dir, "Suite cache directory (default $VERTEXLAB_CACHE_DIR or .vertexlab-cache)");
  app.add_flag("--no-cache", g.no_cache, "Always rebuild the function tables");
  app.add_option("--threads", g.threads, "Worker threads (0 = hardware concurrency)")->capture_default_str();

  ConstantsOpts co;
  auto* c_const = app.add_subcommand("constants", "k1, EV(0)^2, E max and the covariance-kernel k2");
  c_const->add_flag("--skip-covariance", co.skip_covariance, "Skip the covariance-kernel solve");
  c_const->add_option("--cov-bound", co.cov_bound, "Covariance grid bound")->capture_default_str();
  c_const->add_option("--cov-step", co.cov_step, "Covariance grid step")->capture_default_str();

  TabulateOpts to;
  auto* c_tab = app.add_subcommand("tabulate", "Tabulate g, p, phi, Phi, fv0 or u2 as CSV");
  c_tab->add_option("fn", to.fn, "Function name")->required()->check(CLI::IsMember({"g", "p", "phi", "Phi", "fv0", "u2"}));
  c_tab->add_option("--from", to.from)->capture_default_str();
  c_tab->add_option("--to", to.to)->capture_default_str();
  c_tab->add_option("--step", to.step)->capture_default_str();
  c_tab->add_option("--transform", to.transform, "u32 emits u^{3/2} p(u)")
      ->check(CLI::IsMember({"none", "u32"}))
      ->capture_default_str();

  SimulateOpts so;
  auto* c_sim = app.add_subcommand("simulate", "Simulate the vertex process and estimate k1, k2");
  c_sim->add_option("--horizon", so.horizon)->capture_default_str();
  c_sim->add_option("--reps", so.reps)->capture_default_str();
  c_sim->add_option("--window", so.window)->capture_default_str();
  c_sim->add_option("--k1", so.k1, "k1 used to standardize counts")->capture_default_str();
  c_sim->add_option("--k2", so.k2, "k2 used to standardize counts")->capture_default_str();

  GrenanderOpts go;
  auto* c_gren = app.add_subcommand("grenander", "Monte Carlo jump counts of the Grenander estimator");
  c_gren->add_option("--model", go.model)->check(CLI::IsMember({"triangular", "exponential"}))->capture_default_str();
  c_gren->add_option("--n", go.n)->capture_default_str();
  c_gren->add_option("--reps", go.reps)->capture_default_str();

  bool quick = false;
  auto* c_self = app.add_subcommand("selftest", "Run the invariant suite");
  c_self->add_flag("--quick", quick, "Smaller hull-oracle sample");

  std::string manifest_path;
  auto* c_replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  c_replay->add_option("manifest", manifest_path)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c_replay->parsed()) {
      std::ifstream f(manifest_path);
      if (!f) throw UsageError("cannot read manifest " + manifest_path);
      const json m = json::parse(f);
      const auto argv = m.at("argv").get<std::vector<std::string>>();
      if (!argv.empty() && argv.front() == "replay") throw UsageError("refusing to replay a replay");
      return run(argv, out, err);
    }
    Session session(app.get_subcommands().front()->get_name(), args, g);
    if (c_const->parsed()) return cmd_constants(co, session, g, out);
    if (c_tab->parsed()) return cmd_tabulate(to, session, g, out);
    if (c_sim->parsed()) return cmd_simulate(so, session, g, out);
    if (c_gren->parsed()) return cmd_grenander(go, session, g, out);
    if (c_self->parsed()) return cmd_selftest(quick, session, g, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "usage error: bad manifest: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace vertexlab::cli
