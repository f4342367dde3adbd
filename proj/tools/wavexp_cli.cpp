#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wavexp/admissibility.hpp"
#include "wavexp/config.hpp"
#include "wavexp/constants.hpp"
#include "wavexp/io.hpp"
#include "wavexp/quadrature.hpp"
#include "wavexp/rng.hpp"
#include "wavexp/sampler.hpp"

namespace {

constexpr const char* kVersion = "wavexp 1.0.0";

using nlohmann::json;
using namespace wavexp;

struct RunContext {
  ExperimentConfig cfg;
  std::string config_text;
  std::filesystem::path out;
  bool plots = false;
  bool dump_cov = false;
  json manifest_outputs = json::object();
  std::map<std::string, double> timings;

  void write_output(const std::string& name, const std::string& content) {
    io::atomic_write(out / name, content);
    manifest_outputs[name] = io::sha256_hex(content);
  }

  void write_manifest(const std::string& subcommand) {
    json m;
    m["tool"] = kVersion;
    m["subcommand"] = subcommand;
    m["rng"] = NormalStream::identifier();
    m["config"] = json::parse(config_text);
    m["outputs"] = manifest_outputs;
    m["timings_seconds"] = timings;
    io::atomic_write(out / "manifest.json", m.dump(2) + "\n");
  }
};

class Stopwatch {
 public:
  Stopwatch(RunContext& ctx, std::string label)
      : ctx_(ctx), label_(std::move(label)),
        start_(std::chrono::steady_clock::now()) {}
  ~Stopwatch() {
    const auto dt = std::chrono::steady_clock::now() - start_;
    ctx_.timings[label_] =
        std::chrono::duration<double>(dt).count();
  }

 private:
  RunContext& ctx_;
  std::string label_;
  std::chrono::steady_clock::time_point start_;
};

std::string verdict_str(Verdict v) { return to_string(v); }

json report_to_json(const ConditionReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    json je;
    je["id"] = e.id;
    je["verdict"] = verdict_str(e.verdict);
    je["description"] = e.description;
    je["diagnostics"] = e.diagnostics;
    entries.push_back(je);
  }
  json out;
  out["entries"] = entries;
  out["all_pass"] = r.all_pass();
  return out;
}

int cmd_check(RunContext& ctx) {
  const auto pair = ctx.cfg.build_pair();
  const auto model = ctx.cfg.build_model();
  ConditionReport wavelet_report, spectral_report;
  {
    Stopwatch sw(ctx, "check");
    wavelet_report =
        check_wavelet_conditions(pair, ctx.cfg.gamma, ctx.cfg.alpha);
    spectral_report = check_spectral_conditions(model, 64.0, 1e-10);
  }
  json out;
  out["wavelet"] = report_to_json(wavelet_report);
  out["spectral"] = report_to_json(spectral_report);
  ctx.write_output("conditions.json", out.dump(2) + "\n");
  ctx.write_manifest("check");
  const bool pass = wavelet_report.all_pass() && spectral_report.all_pass();
  std::cout << (pass ? "all conditions PASS" : "condition FAIL") << "\n";
  return pass ? 0 : 3;
}

json ledger_to_json(const ConstantsLedger& g) {
  json j;
  j["alpha"] = g.alpha;
  j["gamma"] = g.gamma;
  j["beta"] = g.beta;
  j["delta"] = g.delta;
  j["T"] = g.T;
  j["c0"] = g.c0;
  j["c1"] = g.c1;
  j["c2"] = g.c2;
  j["c3"] = g.c3;
  j["c_phi0"] = g.c_phi0;
  j["c_phi1"] = g.c_phi1;
  j["c_phi2"] = g.c_phi2;
  j["c_phi3"] = g.c_phi3;
  j["c_phi"] = g.c_phi;
  j["c_phi_d1"] = g.c_phi_d1;
  j["c_psi_d1"] = g.c_psi_d1;
  j["c_psi_d2"] = g.c_psi_d2;
  j["A_psi"] = g.a_psi;
  j["A1_psi"] = g.a1_psi;
  j["A_phi"] = g.a_phi;
  j["A1_phi"] = g.a1_phi;
  j["c_alpha"] = g.c_alpha;
  j["K"] = g.K;
  j["K_phi"] = g.K_phi;
  j["Q_direct"] = g.Q_direct;
  j["Q"] = g.Q;
  j["q"] = g.q;
  j["q1"] = g.q1;
  j["q2"] = g.q2;
  j["q_phi"] = g.q_phi;
  j["q_phi1"] = g.q_phi1;
  j["q_phi2"] = g.q_phi2;
  j["B1"] = g.B1;
  j["B2"] = g.B2;
  j["B"] = g.B;
  return j;
}

ConstantsLedger make_ledger(RunContext& ctx, const WaveletPair& pair,
                            const SpectralModel& model) {
  Stopwatch sw(ctx, "constants");
  return compute_constants(pair, model, ctx.cfg.alpha, ctx.cfg.gamma,
                           ctx.cfg.T);
}

int cmd_constants(RunContext& ctx) {
  const auto pair = ctx.cfg.build_pair();
  const auto model = ctx.cfg.build_model();
  const auto ledger = make_ledger(ctx, pair, model);
  ctx.write_output("constants.json", ledger_to_json(ledger).dump(2) + "\n");
  ctx.write_manifest("constants");
  std::cout << "B = " << io::format_double(ledger.B) << "\n";
  return 0;
}

std::string scheme_k_label(const TruncationScheme& s) {
  return std::to_string(s.kj.empty() ? s.k0 : s.kj.front());
}

void maybe_dump_cov(RunContext& ctx, const CovEngine& engine,
                    const TruncationScheme& scheme) {
  if (!ctx.dump_cov) return;
  const auto idx = scheme.indices();
  io::CsvTable t;
  t.header = {"row", "col", "value"};
  for (size_t a = 0; a < idx.size(); ++a)
    for (size_t b = a; b < idx.size(); ++b)
      t.rows.push_back({std::to_string(a), std::to_string(b),
                        io::format_double(engine.coeff(idx[a], idx[b]))});
  ctx.write_output("cov_n" + std::to_string(scheme.n) + "_k" +
                       scheme_k_label(scheme) + ".csv",
                   t.to_string());
}

int cmd_mse_curve(RunContext& ctx) {
  const auto pair = ctx.cfg.build_pair();
  const auto model = ctx.cfg.build_model();
  CovEngine engine(model, pair);
  const auto grid = uniform_grid(0.0, ctx.cfg.T, 33);
  io::CsvTable t;
  t.header = {"n", "k", "t", "mse"};
  {
    Stopwatch sw(ctx, "mse-curve");
    for (const auto& scheme : ctx.cfg.schedule) {
      for (double ti : grid)
        t.rows.push_back({std::to_string(scheme.n), scheme_k_label(scheme),
                          io::format_double(ti),
                          io::format_double(pointwise_mse(engine, scheme, ti))});
      maybe_dump_cov(ctx, engine, scheme);
    }
  }
  ctx.write_output("mse_curve.csv", t.to_string());
  if (ctx.plots) ctx.write_output("mse_curve.svg", io::render_mse_svg(t));
  ctx.write_manifest("mse-curve");
  return 0;
}

int cmd_sup_prob(RunContext& ctx) {
  const auto pair = ctx.cfg.build_pair();
  const auto model = ctx.cfg.build_model();
  CovEngine engine(model, pair);
  const auto grid =
      uniform_grid(0.0, ctx.cfg.T, static_cast<size_t>(ctx.cfg.grid_points));
  const double sd = std::sqrt(std::max(model.variance, 0.0));
  io::CsvTable t;
  t.header = {"n", "k",     "eps",        "p_hat", "ci_lo",
              "ci_hi", "replicates", "seed"};
  {
    Stopwatch sw(ctx, "sup-prob");
    for (const auto& scheme : ctx.cfg.schedule) {
      for (double e : ctx.cfg.eps) {
        const auto est = sup_exceedance(engine, scheme, grid, e * sd,
                                        ctx.cfg.replicates, ctx.cfg.seed);
        t.rows.push_back({std::to_string(scheme.n), scheme_k_label(scheme),
                          io::format_double(e), io::format_double(est.p_hat),
                          io::format_double(est.ci_lo),
                          io::format_double(est.ci_hi),
                          std::to_string(est.replicates),
                          std::to_string(est.seed)});
      }
      maybe_dump_cov(ctx, engine, scheme);
    }
  }
  ctx.write_output("sup_prob.csv", t.to_string());
  if (ctx.plots) ctx.write_output("sup_prob.svg", io::render_sup_prob_svg(t));
  ctx.write_manifest("sup-prob");
  return 0;
}

int cmd_modulus(RunContext& ctx) {
  const auto pair = ctx.cfg.build_pair();
  const auto model = ctx.cfg.build_model();
  CovEngine engine(model, pair);
  const auto ledger = make_ledger(ctx, pair, model);

  std::vector<std::pair<double, double>> pairs;
  NormalStream rng(ctx.cfg.seed, 0x300d);
  for (int i = 0; i < 200; ++i)
    pairs.emplace_back(rng.next_uniform() * ctx.cfg.T,
                       rng.next_uniform() * ctx.cfg.T);

  ModulusReport report;
  {
    Stopwatch sw(ctx, "modulus");
    report = verify_modulus_bound(engine, ctx.cfg.schedule, ledger, pairs);
  }
  io::CsvTable t;
  t.header = {"n", "k", "t", "s", "lhs", "bound", "margin"};
  for (const auto& e : report.entries)
    t.rows.push_back({std::to_string(e.n), std::to_string(e.k),
                      io::format_double(e.t), io::format_double(e.s),
                      io::format_double(e.lhs), io::format_double(e.bound),
                      io::format_double(e.margin)});
  ctx.write_output("modulus_check.csv", t.to_string());
  ctx.write_output("constants.json", ledger_to_json(ledger).dump(2) + "\n");
  if (ctx.plots)
    ctx.write_output("modulus_check.svg", io::render_modulus_svg(t));
  ctx.write_manifest("modulus");
  std::cout << "min margin " << io::format_double(report.min_margin)
            << ", empirical envelope "
            << io::format_double(report.empirical_envelope) << " vs B "
            << io::format_double(ledger.B) << "\n";
  return report.pass ? 0 : 3;
}

int cmd_expand_demo(RunContext& ctx) {
  const auto pair = ctx.cfg.build_pair();
  FunctionSpec f;
  f.kind = FunctionSpec::Kind::GaussianBump;
  f.center = 0.5 * ctx.cfg.T;
  f.width = 1.0;
  const auto grid = uniform_grid(0.0, ctx.cfg.T, 257);
  const auto& scheme = ctx.cfg.schedule.back();
  ExpansionResult res;
  {
    Stopwatch sw(ctx, "expand-demo");
    res = deterministic_expand(pair, f, scheme, grid);
  }
  io::CsvTable t;
  t.header = {"t", "f", "reconstruction"};
  for (size_t i = 0; i < grid.size(); ++i)
    t.rows.push_back({io::format_double(grid[i]), io::format_double(f(grid[i])),
                      io::format_double(res.reconstruction[i])});
  ctx.write_output("expand_demo.csv", t.to_string());
  ctx.write_manifest("expand-demo");
  std::cout << "l2 error " << io::format_double(res.l2_error) << "\n";
  return 0;
}

int cmd_certify_decay(RunContext& ctx) {
  const auto pair = ctx.cfg.build_pair();
  const auto model = ctx.cfg.build_model();
  const auto ledger = make_ledger(ctx, pair, model);
  CovEngine engine(model, pair);
  DecayReport report;
  {
    Stopwatch sw(ctx, "certify-decay");
    report = decay_certificate(engine, {0, 1, 2, 3, 4, 5}, 32, ledger.a_psi,
                               ledger.a1_psi, ledger.a_phi, ledger.a1_phi);
  }
  io::CsvTable t;
  t.header = {"bound", "j", "k", "l", "actual", "bound_value", "margin"};
  for (const auto& e : report.entries)
    t.rows.push_back({e.bound_id, std::to_string(e.j), std::to_string(e.k),
                      std::to_string(e.l), io::format_double(e.actual),
                      io::format_double(e.bound),
                      io::format_double(e.margin)});
  ctx.write_output("decay_certificate.csv", t.to_string());
  ctx.write_manifest("certify-decay");
  if (!report.pass) {
    std::cerr << report.first_failure << "\n";
    return 3;
  }
  std::cout << "all decay margins >= 1 (min "
            << io::format_double(report.min_margin) << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wavelet expansion convergence experiments"};
  app.set_version_flag("--version", kVersion);

  std::string config_path, out_dir, subcommand;
  uint64_t seed = 0;
  bool seed_set = false, plots = false, dump_cov = false;
  int threads = 1;

  app.add_option("subcommand", subcommand,
                 "one of: check, constants, mse-curve, sup-prob, modulus, "
                 "expand-demo, certify-decay")
      ->required();
  app.add_option("--config", config_path, "experiment config JSON");
  app.add_option("--out", out_dir, "output directory (overrides config)");
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed (overrides config)");
  app.add_option("--threads", threads, "worker count (results are identical "
                                       "for any value)");
  app.add_flag("--plots", plots, "emit SVG charts next to the CSVs");
  app.add_flag("--dump-cov", dump_cov, "dump coefficient covariance CSVs");

  CLI11_PARSE(app, argc, argv);
  seed_set = seed_opt->count() > 0;
  if (threads < 1) {
    std::cerr << "--threads must be >= 1\n";
    return 2;
  }

  RunContext ctx;
  try {
    ctx.config_text = config_path.empty()
                          ? wavexp::default_config_json()
                          : [&] {
                              std::ifstream in(config_path, std::ios::binary);
                              if (!in)
                                throw std::invalid_argument(
                                    "cannot open config file: " + config_path);
                              std::ostringstream buf;
                              buf << in.rdbuf();
                              return buf.str();
                            }();
    ctx.cfg = wavexp::parse_config(ctx.config_text);
    if (seed_set) ctx.cfg.seed = seed;
    if (!out_dir.empty()) ctx.cfg.out_dir = out_dir;
    ctx.out = ctx.cfg.out_dir;
    ctx.plots = plots;
    ctx.dump_cov = dump_cov;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (subcommand == "check") return cmd_check(ctx);
    if (subcommand == "constants") return cmd_constants(ctx);
    if (subcommand == "mse-curve") return cmd_mse_curve(ctx);
    if (subcommand == "sup-prob") return cmd_sup_prob(ctx);
    if (subcommand == "modulus") return cmd_modulus(ctx);
    if (subcommand == "expand-demo") return cmd_expand_demo(ctx);
    if (subcommand == "certify-decay") return cmd_certify_decay(ctx);
    std::cerr << "unknown subcommand: " << subcommand << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const wavexp::quad::ConvergenceError& e) {
    std::cerr << "numerical error: " << e.what() << " (coarse "
              << e.coarse_value << ", fine " << e.fine_value << ")\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  }
}
