// entropy-lab: command-line front end for the entropy laboratory.
//
// Subcommands:
//   quantum rel        four-route relative entropy with cross-validation
//   quantum sweep-t    convergence table for the cocycle limit route
//   quantum selftest   randomized route-equivalence sweep (ENTROPY_LAB_SEED)
//   classical report   H / KL / Gibbs / characteristic-derivative identities
//   orlicz norm        Luxemburg norm of a discrete density
//   orlicz regular     regularized entropy eps-sweep against the trace state
//   crossed tail       tail traces of model crossed-product elements
//
// Exit codes: 0 success, 1 tolerance violation, 2 usage or I/O error.

#include "entropy_lab/entropy_lab.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace entropy_lab;

struct OutputOptions {
  std::string out_path;
  std::string format = "csv";
};

void add_output_options(CLI::App* cmd, OutputOptions* opts) {
  cmd->add_option("--out", opts->out_path, "write the report to this path");
  cmd->add_option("--format", opts->format, "report format")
      ->check(CLI::IsMember({"csv", "json"}));
}

// Renders rows to stdout and, when requested, to --out. Returns the exit code.
int emit(const std::vector<ReportRow>& rows, const OutputOptions& opts, int code) {
  const std::string text =
      opts.format == "json" ? report_to_json(rows) : report_to_csv(rows);
  std::cout << text;
  if (!opts.out_path.empty()) write_text_file(opts.out_path, text);
  return code;
}

uint64_t seed_from_env() {
  const char* s = std::getenv("ENTROPY_LAB_SEED");
  if (!s || !*s) return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (end == nullptr || *end != '\0') {
    throw validation_error("ENTROPY_LAB_SEED must be a nonnegative integer");
  }
  return v;
}

DensityMatrix load_density(const std::string& path) {
  return DensityMatrix(load_matrix_json(path));
}

std::vector<double> limit_schedule(double t0) {
  if (!(t0 > 0.0)) throw validation_error("--t0 must be positive");
  std::vector<double> t(9);
  for (size_t k = 0; k < t.size(); ++k) t[k] = t0 * std::pow(2.0, -double(k));
  return t;
}

// ---------------------------------------------------------------- quantum rel

struct QuantumRelConfig {
  std::string rho_path, sigma_path;
  std::string method = "all";
  double tolerance = 1e-6;
  double t0 = 1e-2;
  OutputOptions out;
};

int run_quantum_rel(const QuantumRelConfig& cfg) {
  const DensityMatrix rho = load_density(cfg.rho_path);
  const DensityMatrix sigma = load_density(cfg.sigma_path);

  std::vector<EntropyResult> results;
  auto want = [&](const char* m) { return cfg.method == "all" || cfg.method == m; };
  if (want("divergence")) results.push_back(relative_entropy_divergence(rho, sigma));
  if (want("limit")) {
    results.push_back(relative_entropy_limit(rho, sigma, limit_schedule(cfg.t0)));
  }
  if (want("araki")) results.push_back(relative_entropy_araki(rho, sigma));
  if (want("interp")) results.push_back(relative_entropy_interpolated(rho, sigma));

  std::vector<ReportRow> rows;
  for (const auto& r : results) {
    rows.push_back({"quantum_rel", route_name(r.route), r.value, r.is_infinite,
                    r.error_estimate, "nats"});
  }

  int code = 0;
  if (cfg.method == "all") {
    double disc = 0.0;
    bool any_infinite = false;
    for (const auto& r : results) any_infinite |= r.is_infinite;
    if (!any_infinite) {
      for (size_t i = 0; i < results.size(); ++i) {
        for (size_t j = i + 1; j < results.size(); ++j) {
          disc = std::max(disc, std::abs(results[i].value - results[j].value));
        }
      }
    } else {
      disc = std::numeric_limits<double>::infinity();
    }
    rows.push_back({"diagnostic", "strip_sup_norm", ordering_strip_norm(rho, sigma),
                    false, 0.0, ""});
    rows.push_back({"quantum_rel", "max_pairwise_discrepancy", disc,
                    std::isinf(disc), 0.0, "nats"});
    if (!(disc <= cfg.tolerance)) code = 1;
  }
  return emit(rows, cfg.out, code);
}

// -------------------------------------------------------------- quantum sweep

struct SweepConfig {
  std::string rho_path, sigma_path;
  double t0 = 1e-2;
  OutputOptions out;
};

int run_quantum_sweep(const SweepConfig& cfg) {
  const DensityMatrix rho = load_density(cfg.rho_path);
  const DensityMatrix sigma = load_density(cfg.sigma_path);
  const EntropyResult r = relative_entropy_limit(rho, sigma, limit_schedule(cfg.t0));

  std::vector<ReportRow> rows;
  for (const auto& [t, g] : r.diagnostics) {
    rows.push_back({"sweep_t", format_number(t), g, false, 0.0, "nats"});
  }
  rows.push_back({"sweep_t", "extrapolated", r.value, r.is_infinite, r.error_estimate,
                  "nats"});
  return emit(rows, cfg.out, 0);
}

// ----------------------------------------------------------- quantum selftest

struct SelftestConfig {
  std::string dims = "2,3,4,6";
  int pairs = 200;
  double tolerance = 1e-6;
  OutputOptions out;
};

int run_quantum_selftest(const SelftestConfig& cfg) {
  std::vector<int> dims;
  {
    std::istringstream in(cfg.dims);
    std::string item;
    while (std::getline(in, item, ',')) {
      const int d = std::stoi(item);
      if (d < 1 || d > 512) throw validation_error("--dims entries must be in 1..512");
      dims.push_back(d);
    }
    if (dims.empty()) throw validation_error("--dims must name at least one dimension");
  }
  StateSampler sampler(seed_from_env());

  std::vector<ReportRow> rows;
  double worst = 0.0, worst_limit_err = 0.0;
  for (int d : dims) {
    double disc = 0.0, limit_err = 0.0;
    for (int p = 0; p < cfg.pairs; ++p) {
      const DensityMatrix a = sampler.faithful_density(d);
      const DensityMatrix b = sampler.faithful_density(d);
      const EntropyResult lim = relative_entropy_limit(a, b);
      const double v[4] = {relative_entropy_divergence(a, b).value, lim.value,
                           relative_entropy_araki(a, b).value,
                           relative_entropy_interpolated(a, b).value};
      for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) disc = std::max(disc, std::abs(v[i] - v[j]));
      }
      limit_err = std::max(limit_err, lim.error_estimate);
    }
    rows.push_back({"selftest", "max_discrepancy_dim" + std::to_string(d), disc, false,
                    0.0, "nats"});
    worst = std::max(worst, disc);
    worst_limit_err = std::max(worst_limit_err, limit_err);
  }
  rows.push_back({"selftest", "max_discrepancy", worst, false, 0.0, "nats"});
  rows.push_back({"selftest", "max_limit_error_estimate", worst_limit_err, false, 0.0,
                  "nats"});
  return emit(rows, cfg.out, worst <= cfg.tolerance ? 0 : 1);
}

// ------------------------------------------------------------ classical report

struct ClassicalConfig {
  std::string dist_path, ref_path;
  double step = 1e-4;
  double tolerance_exact = 1e-12;
  OutputOptions out;
};

std::vector<double> log_density_on_support(const DiscreteDensity& p) {
  std::vector<double> k(p.values.size(), 0.0);
  for (size_t a = 0; a < p.values.size(); ++a) {
    if (p.values[a] > 0.0) k[a] = std::log(p.values[a]);
  }
  return k;
}

int run_classical_report(const ClassicalConfig& cfg) {
  const DiscreteDensity p = load_distribution_csv(cfg.dist_path);
  p.require_probability("classical report");
  const std::vector<double> k1 = log_density_on_support(p);
  double k_scale = 0.0;
  for (double k : k1) k_scale = std::max(k_scale, std::abs(k));

  std::vector<ReportRow> rows;
  int code = 0;
  const double h = h_functional(p);
  const double mean_k = expectation(p, k1);
  rows.push_back({"h_functional", "H", h, false, 0.0, "nats"});
  rows.push_back({"gibbs_identity", "mean_K", mean_k, false, 0.0, "nats"});
  rows.push_back({"gibbs_identity", "H", h, false, 0.0, "nats"});
  if (std::abs(h - mean_k) > cfg.tolerance_exact) code = 1;

  const double cd = characteristic_derivative(k1, p, cfg.step);
  const double cd_tol =
      std::max(1e-12, 10.0 * cfg.step * cfg.step * std::pow(k_scale, 3.0));
  rows.push_back({"char_derivative", "symmetric_difference", cd, false, cd_tol, "nats"});
  rows.push_back({"char_derivative", "mean_K", mean_k, false, 0.0, "nats"});
  if (std::abs(cd - mean_k) > cd_tol) code = 1;

  if (!cfg.ref_path.empty()) {
    const DiscreteDensity q = load_distribution_csv(cfg.ref_path);
    q.require_probability("classical report (--ref)");
    if (!p.base.same_base(q.base)) {
      throw validation_error("--dist and --ref must share the same base measure");
    }
    const std::vector<double> k2 = log_density_on_support(q);
    double pair_scale = k_scale;
    for (double k : k2) pair_scale = std::max(pair_scale, std::abs(k));

    const double kl = kl_divergence(p, q);
    const bool kl_inf = std::isinf(kl);
    std::vector<double> kdiff(k1.size());
    for (size_t a = 0; a < k1.size(); ++a) kdiff[a] = k1[a] - k2[a];
    const double mean_diff = expectation(p, kdiff);
    rows.push_back({"kl", "KL", kl, kl_inf, 0.0, "nats"});
    rows.push_back({"gibbs_pair_identity", "mean_K_difference", mean_diff, false, 0.0,
                    "nats"});
    rows.push_back({"gibbs_pair_identity", "KL", kl, kl_inf, 0.0, "nats"});

    if (!kl_inf) {
      if (std::abs(kl - mean_diff) > cfg.tolerance_exact) code = 1;
      const double cd2 = characteristic_derivative_pair(k1, k2, p, cfg.step);
      const double cd2_tol =
          std::max(1e-12, 10.0 * cfg.step * cfg.step * std::pow(pair_scale, 3.0));
      rows.push_back({"char_derivative_pair", "symmetric_difference", cd2, false,
                      cd2_tol, "nats"});
      rows.push_back({"char_derivative_pair", "KL", kl, false, 0.0, "nats"});
      if (std::abs(cd2 - kl) > cd2_tol) code = 1;
    }
  }
  return emit(rows, cfg.out, code);
}

// ----------------------------------------------------------------- orlicz norm

struct OrliczNormConfig {
  std::string dist_path;
  std::string young = "psi_log";
  OutputOptions out;
};

const YoungFunction& young_by_name(const std::string& name) {
  if (name == "psi_log") return YoungFunction::psi_log();
  if (name == "psi_ent") return YoungFunction::psi_ent();
  throw validation_error("--young must be psi_log or psi_ent");
}

int run_orlicz_norm(const OrliczNormConfig& cfg) {
  const DiscreteDensity f = load_distribution_csv(cfg.dist_path);
  const double norm = luxemburg_norm(f, young_by_name(cfg.young));
  std::vector<ReportRow> rows{
      {"orlicz_norm", "luxemburg_" + cfg.young, norm, false, 0.0, ""}};
  return emit(rows, cfg.out, 0);
}

// -------------------------------------------------------------- orlicz regular

struct OrliczRegularConfig {
  std::string density_path;
  std::string eps_grid = "1e-8:1e2:161";
  std::string trace = "normalized";
  double tolerance = 1e-6;
  OutputOptions out;
};

BaseTrace trace_by_name(const std::string& name) {
  if (name == "normalized") return BaseTrace::normalized;
  if (name == "counting") return BaseTrace::counting;
  throw validation_error("--trace must be normalized or counting");
}

int run_orlicz_regular(const OrliczRegularConfig& cfg) {
  const HermitianMatrix a(load_matrix_json(cfg.density_path));
  const std::vector<double> grid = parse_grid_spec(cfg.eps_grid);
  const RegularEntropyResult r = regular_entropy(a, trace_by_name(cfg.trace), grid);

  std::vector<ReportRow> rows;
  for (const auto& [eps, bracket] : r.sweep) {
    rows.push_back({"eps_sweep", format_number(eps), bracket, false, 0.0, "nats"});
  }
  rows.push_back({"orlicz_regular", "regular_entropy", r.value, false, 0.0, "nats"});
  rows.push_back({"orlicz_regular", "comparator_inf", r.comparator, false, 0.0, "nats"});
  rows.push_back({"orlicz_regular", "limit_a_log_a", r.limit, false, 0.0, "nats"});

  const bool ok = std::abs(r.value - r.comparator) <= cfg.tolerance &&
                  std::abs(r.value - r.limit) <= cfg.tolerance;
  return emit(rows, cfg.out, ok ? 0 : 1);
}

// ---------------------------------------------------------------- crossed tail

struct CrossedTailConfig {
  std::string density_path;
  std::string eps_grid = "1e-2:1e2:9";
  std::string profile = "identity";
  std::string trace = "normalized";
  OutputOptions out;
};

CrossedProfile profile_by_name(const std::string& name) {
  if (name == "identity") return CrossedProfile::identity;
  if (name == "phi_log") return CrossedProfile::phi_log;
  if (name == "phi_ent") return CrossedProfile::phi_ent;
  throw validation_error("--profile must be identity, phi_log or phi_ent");
}

int run_crossed_tail(const CrossedTailConfig& cfg) {
  const HermitianMatrix a(load_matrix_json(cfg.density_path));
  const std::vector<double> grid = parse_grid_spec(cfg.eps_grid);
  const ModelCrossedElement h =
      dual_density(a, trace_by_name(cfg.trace)).with_profile(profile_by_name(cfg.profile));

  std::vector<ReportRow> rows;
  rows.push_back({"crossed", "tau_omega", h.base_trace(), false, 0.0, ""});
  if (h.profile() == CrossedProfile::identity) {
    rows.push_back({"crossed", "l1_trace", h.l1_trace(), false, 0.0, ""});
  }
  for (double eps : grid) {
    rows.push_back({"tail_sweep", format_number(eps), tail_trace(h, eps), false, 0.0,
                    ""});
  }
  return emit(rows, cfg.out, 0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropy-lab: relative entropy by four routes, classical measure "
               "identities, and Orlicz-regularized entropy in a model crossed product"};
  app.require_subcommand(1);

  auto* quantum = app.add_subcommand("quantum", "density-matrix entropy routes");
  quantum->require_subcommand(1);
  auto* classical = app.add_subcommand("classical", "discrete measure identities");
  classical->require_subcommand(1);
  auto* orlicz = app.add_subcommand("orlicz", "Orlicz norms and regularized entropy");
  orlicz->require_subcommand(1);
  auto* crossed = app.add_subcommand("crossed", "model crossed-product traces");
  crossed->require_subcommand(1);

  QuantumRelConfig rel_cfg;
  auto* rel = quantum->add_subcommand("rel", "relative entropy of two states");
  rel->add_option("--rho", rel_cfg.rho_path, "state density (JSON)")->required();
  rel->add_option("--sigma", rel_cfg.sigma_path, "reference density (JSON)")->required();
  rel->add_option("--method", rel_cfg.method, "route selection")
      ->check(CLI::IsMember({"divergence", "limit", "araki", "interp", "all"}));
  rel->add_option("--tol", rel_cfg.tolerance, "route-discrepancy tolerance")
      ->check(CLI::PositiveNumber);
  rel->add_option("--t0", rel_cfg.t0, "largest step of the limit schedule")
      ->check(CLI::PositiveNumber);
  add_output_options(rel, &rel_cfg.out);

  SweepConfig sweep_cfg;
  auto* sweep = quantum->add_subcommand("sweep-t", "limit-route convergence table");
  sweep->add_option("--rho", sweep_cfg.rho_path, "state density (JSON)")->required();
  sweep->add_option("--sigma", sweep_cfg.sigma_path, "reference density (JSON)")
      ->required();
  sweep->add_option("--t0", sweep_cfg.t0, "largest step of the schedule")
      ->check(CLI::PositiveNumber);
  add_output_options(sweep, &sweep_cfg.out);

  SelftestConfig self_cfg;
  auto* self = quantum->add_subcommand("selftest", "randomized route equivalence");
  self->add_option("--dims", self_cfg.dims, "comma-separated dimensions");
  self->add_option("--pairs", self_cfg.pairs, "random pairs per dimension")
      ->check(CLI::PositiveNumber);
  self->add_option("--tol", self_cfg.tolerance, "discrepancy tolerance")
      ->check(CLI::PositiveNumber);
  add_output_options(self, &self_cfg.out);

  ClassicalConfig cls_cfg;
  auto* report = classical->add_subcommand("report", "identities for a distribution");
  report->add_option("--dist", cls_cfg.dist_path, "distribution (CSV)")->required();
  report->add_option("--ref", cls_cfg.ref_path, "reference distribution (CSV)");
  report->add_option("--step", cls_cfg.step, "characteristic-derivative step")
      ->check(CLI::PositiveNumber);
  add_output_options(report, &cls_cfg.out);

  OrliczNormConfig norm_cfg;
  auto* norm = orlicz->add_subcommand("norm", "Luxemburg norm of a density");
  norm->add_option("--dist", norm_cfg.dist_path, "density (CSV)")->required();
  norm->add_option("--young", norm_cfg.young, "Young function")
      ->check(CLI::IsMember({"psi_log", "psi_ent"}));
  add_output_options(norm, &norm_cfg.out);

  OrliczRegularConfig reg_cfg;
  auto* regular = orlicz->add_subcommand("regular", "regularized entropy eps-sweep");
  regular->add_option("--density", reg_cfg.density_path, "positive matrix (JSON)")
      ->required();
  regular->add_option("--eps-grid", reg_cfg.eps_grid, "lo:hi:n log-spaced grid");
  regular->add_option("--trace", reg_cfg.trace, "base trace")
      ->check(CLI::IsMember({"normalized", "counting"}));
  regular->add_option("--tol", reg_cfg.tolerance, "agreement tolerance")
      ->check(CLI::PositiveNumber);
  add_output_options(regular, &reg_cfg.out);

  CrossedTailConfig tail_cfg;
  auto* tail = crossed->add_subcommand("tail", "tail traces of a (x) g(e^t)");
  tail->add_option("--density", tail_cfg.density_path, "positive matrix (JSON)")
      ->required();
  tail->add_option("--eps-grid", tail_cfg.eps_grid, "lo:hi:n log-spaced grid");
  tail->add_option("--profile", tail_cfg.profile, "t-profile g")
      ->check(CLI::IsMember({"identity", "phi_log", "phi_ent"}));
  tail->add_option("--trace", tail_cfg.trace, "base trace")
      ->check(CLI::IsMember({"normalized", "counting"}));
  add_output_options(tail, &tail_cfg.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const auto started = std::chrono::steady_clock::now();
  int code = 2;
  try {
    if (rel->parsed()) code = run_quantum_rel(rel_cfg);
    else if (sweep->parsed()) code = run_quantum_sweep(sweep_cfg);
    else if (self->parsed()) code = run_quantum_selftest(self_cfg);
    else if (report->parsed()) code = run_classical_report(cls_cfg);
    else if (norm->parsed()) code = run_orlicz_norm(norm_cfg);
    else if (regular->parsed()) code = run_orlicz_regular(reg_cfg);
    else if (tail->parsed()) code = run_crossed_tail(tail_cfg);
  } catch (const std::exception& e) {
    std::cerr << "entropy-lab: " << e.what() << "\n";
    return 2;
  }
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);
  std::cerr << "# wall_time_ms " << elapsed.count() << "\n";
  return code;
}
