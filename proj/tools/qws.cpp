// qws: command-line front end for the quantum-walk localization library.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qws/closed_forms.hpp"
#include "qws/dynamics.hpp"
#include "qws/evolution.hpp"
#include "qws/io.hpp"
#include "qws/model.hpp"
#include "qws/presets.hpp"
#include "qws/spectrum.hpp"

namespace fs = std::filesystem;
using namespace qws;

namespace {

enum Exit { kOk = 0, kInvalidModel = 1, kParseError = 2, kNoClosedForm = 3, kDisagreement = 4 };

constexpr double kVerifyTol = 1e-7;

class InvalidModel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string model_path;
  int grid = 16384;
  double tol = 1e-10;
  long long t = 70;
  std::optional<long long> T;
  std::string window = "-70:70";
  std::string out = ".";
  unsigned long long seed = 0;

  Site lo = -70;
  Site hi = 70;
};

struct Loaded {
  ModelSpec spec;
  StateVector psi0;
};

void parse_window(RunConfig& cfg) {
  const auto colon = cfg.window.find(':', 1);
  if (colon == std::string::npos) throw io::ParseError("--window: expected LO:HI");
  try {
    std::size_t used = 0;
    cfg.lo = std::stoll(cfg.window.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument("lo");
    const std::string rest = cfg.window.substr(colon + 1);
    cfg.hi = std::stoll(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("hi");
  } catch (const std::logic_error&) {
    throw io::ParseError("--window: expected LO:HI with integer bounds, got '" + cfg.window + "'");
  }
  if (cfg.hi < cfg.lo) throw io::ParseError("--window: empty window " + cfg.window);
}

void check_config(RunConfig& cfg) {
  if (cfg.grid < 256) throw io::ParseError("--grid must be >= 256");
  if (!(cfg.tol > 0.0)) throw io::ParseError("--tol must be > 0");
  if (cfg.t < 0) throw io::ParseError("--t must be >= 0");
  if (cfg.T && *cfg.T < 1) throw io::ParseError("--T must be >= 1");
  parse_window(cfg);
}

Loaded load(const RunConfig& cfg) {
  const io::json j = io::read_json_file(cfg.model_path);
  Loaded l{io::parse_model(j), presets::origin_state()};
  if (j.contains("initial_state")) {
    const io::InitialState init = io::parse_initial_state(j["initial_state"]);
    if (init.renormalized)
      std::fprintf(stderr, "warning: initial state had norm^2 %.15g; normalized\n", init.input_norm_sq);
    l.psi0 = init.state;
  }
  const auto violations = validate(l.spec);
  if (!violations.empty()) {
    std::string msg = "invalid model:";
    for (const Violation& v : violations) msg += "\n  " + v.where + ": " + v.what;
    throw InvalidModel(msg);
  }
  return l;
}

std::ofstream open_out(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.out);
  const fs::path p = fs::path(cfg.out) / name;
  std::ofstream os(p, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  return os;
}

SpectrumReport scan(const RunConfig& cfg, const ModelSpec& spec) {
  ScanOptions opt;
  opt.grid = cfg.grid;
  opt.tol = cfg.tol;
  return scan_spectrum(spec, opt);
}

void print_angles(const std::vector<double>& lambdas) {
  for (double l : lambdas) std::printf("  %s\n", io::fmt_angle(l).c_str());
}

int cmd_validate(const RunConfig& cfg) {
  const io::json j = io::read_json_file(cfg.model_path);
  const ModelSpec spec = io::parse_model(j);
  if (j.contains("initial_state")) io::parse_initial_state(j["initial_state"]);
  const auto violations = validate(spec);
  if (violations.empty()) {
    std::printf("valid: x_minus=%lld x_plus=%lld n_minus=%zu n_plus=%zu defects=%zu\n",
                static_cast<long long>(spec.x_minus), static_cast<long long>(spec.x_plus), spec.n_minus(),
                spec.n_plus(), spec.defects.size());
    return kOk;
  }
  std::printf("invalid model: %zu violation(s)\n", violations.size());
  for (const Violation& v : violations) std::printf("  %s: %s\n", v.where.c_str(), v.what.c_str());
  return kInvalidModel;
}

int cmd_spectrum(const RunConfig& cfg) {
  const Loaded l = load(cfg);
  const SpectrumReport r = scan(cfg, l.spec);
  {
    auto os = open_out(cfg, "spectrum.json");
    os << io::to_json(r).dump(2) << '\n';
  }
  {
    auto os = open_out(cfg, "spectrum.csv");
    io::write_spectrum_csv(os, r);
  }
  if (!r.localizes()) {
    std::printf("no eigenvalues: model does not localize\n");
    return kOk;
  }
  std::printf("%zu eigenvalue(s):\n", r.eigenpoints.size());
  print_angles(r.lambdas());
  return kOk;
}

int cmd_verify(const RunConfig& cfg) {
  const Loaded l = load(cfg);
  const auto match = match_closed_form(l.spec);
  if (!match) {
    std::printf("no matching closed form for this model\n");
    return kNoClosedForm;
  }
  const SpectrumReport r = scan(cfg, l.spec);
  const auto& expected = match->spectrum.eigen_lambdas;
  const SpectrumComparison c = compare_spectra(expected, r.lambdas(), kVerifyTol);
  std::printf("closed form: %s (%s)\n", to_string(match->form), match->spectrum.case_label.c_str());
  std::printf("expected %zu, scanned %zu, matched %zu, max error %s\n", expected.size(), r.eigenpoints.size(),
              c.matched, io::fmt(c.max_error, 3).c_str());
  for (double m : c.missing) std::printf("  missing %s\n", io::fmt_angle(m).c_str());
  for (double e : c.extra) std::printf("  extra   %s\n", io::fmt_angle(e).c_str());
  {
    auto os = open_out(cfg, "verify.json");
    io::json j = io::to_json(match->spectrum);
    j["form"] = to_string(match->form);
    j["scan"] = io::to_json(r);
    j["agree"] = c.agree();
    os << j.dump(2) << '\n';
  }
  if (!c.agree()) {
    std::printf("DISAGREE\n");
    return kDisagreement;
  }
  std::printf("AGREE\n");
  return kOk;
}

int cmd_simulate(const RunConfig& cfg) {
  const Loaded l = load(cfg);
  const DistributionSeries mu = distribution(evolve(l.spec, l.psi0, cfg.t), cfg.t);
  {
    auto os = open_out(cfg, "mu_t.csv");
    io::write_distribution_csv(os, mu, cfg.lo, cfg.hi);
  }
  std::printf("t=%lld total probability %s\n", cfg.t, io::fmt(mu.sum(), 12).c_str());
  if (cfg.T) {
    const DistributionSeries avg = time_average(l.spec, l.psi0, *cfg.T, cfg.lo, cfg.hi);
    auto os = open_out(cfg, "running_average.csv");
    io::write_distribution_csv(os, avg, cfg.lo, cfg.hi);
    std::printf("T=%lld running average written\n", *cfg.T);
  }
  return kOk;
}

int cmd_limitdist(const RunConfig& cfg) {
  const Loaded l = load(cfg);
  const SpectrumReport r = scan(cfg, l.spec);
  const DistributionSeries nu = limit_distribution(l.spec, l.psi0, r, cfg.lo, cfg.hi);
  const DistributionSeries mu = distribution(evolve(l.spec, l.psi0, cfg.t), cfg.t);
  {
    auto os = open_out(cfg, "limit.csv");
    io::write_distribution_csv(os, nu, cfg.lo, cfg.hi);
  }
  {
    auto os = open_out(cfg, "plot.csv");
    io::write_plot_csv(os, mu, nu, cfg.lo, cfg.hi);
  }
  if (!r.localizes()) std::printf("no eigenvalues: model does not localize\n");
  std::printf("%zu eigenvalue(s); window mass of limit %s\n", r.eigenpoints.size(), io::fmt(nu.sum()).c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Localization analysis for 1D two-state quantum walks"};
  app.require_subcommand(1);
  RunConfig cfg;
  long long T = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--model", cfg.model_path, "model JSON")->required();
    sub->add_option("--grid", cfg.grid, "scan grid size");
    sub->add_option("--tol", cfg.tol, "matching-residual acceptance");
    sub->add_option("--t", cfg.t, "time for mu_t");
    sub->add_option("--T", T, "running-average horizon");
    sub->add_option("--window", cfg.window, "site window LO:HI");
    sub->add_option("--out", cfg.out, "output directory");
    sub->add_option("--seed", cfg.seed, "seed (accepted for reproducible batch runs)");
  };
  const std::pair<const char*, const char*> names[] = {
      {"validate", "check a model file"},
      {"spectrum", "scan for eigenvalues"},
      {"verify", "compare the scan against the matching closed form"},
      {"simulate", "evolve the initial state"},
      {"limitdist", "time-averaged limit distribution"},
  };
  for (const auto& [name, help] : names) add_common(app.add_subcommand(name, help));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParseError;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (app.get_subcommands().front()->count("--T") > 0) cfg.T = T;
    check_config(cfg);
    if (cmd == "validate") return cmd_validate(cfg);
    if (cmd == "spectrum") return cmd_spectrum(cfg);
    if (cmd == "verify") return cmd_verify(cfg);
    if (cmd == "simulate") return cmd_simulate(cfg);
    return cmd_limitdist(cfg);
  } catch (const io::ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kParseError;
  } catch (const io::json::exception& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kParseError;
  } catch (const InvalidModel& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kInvalidModel;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInvalidModel;
  }
}
