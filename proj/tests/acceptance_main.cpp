// Acceptance suite: every criterion prints one PASS/FAIL line with the
// measured extremes; the process exits nonzero when any criterion fails.
// Usage: acceptance <path-to-entropy-lab-cli>

#include "entropy_lab/entropy_lab.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace entropy_lab;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void report(int index, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", index,
              name.c_str(), detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

fs::path work_dir() {
  fs::path d = fs::temp_directory_path() / "entropy_lab_acceptance";
  fs::create_directories(d);
  return d;
}

struct CliResult {
  int exit_code = -1;
  std::string stdout_text;
};

CliResult run_cli(const std::string& cli, const std::string& args,
                  const std::string& env) {
  const fs::path out = work_dir() / "cli_stdout.txt";
  const std::string cmd = env + (env.empty() ? "" : " ") + cli + " " + args + " > " +
                          out.string() + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.stdout_text = read_text_file(out.string());
  return r;
}

// ------------------------------------------------------------------ criteria

void criterion_1_route_equivalence() {
  Timer timer;
  StateSampler sampler(101);
  double max_disc = 0.0, max_limit_err = 0.0;
  for (Eigen::Index dim : {2, 3, 4, 6}) {
    for (int rep = 0; rep < 200; ++rep) {
      DensityMatrix a = sampler.faithful_density(dim);
      DensityMatrix b = sampler.faithful_density(dim);
      const EntropyResult lim = relative_entropy_limit(a, b);
      const double v[4] = {relative_entropy_divergence(a, b).value, lim.value,
                           relative_entropy_araki(a, b).value,
                           relative_entropy_interpolated(a, b).value};
      for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
          max_disc = std::max(max_disc, std::abs(v[i] - v[j]));
        }
      }
      max_limit_err = std::max(max_limit_err, lim.error_estimate);
    }
  }
  const double elapsed = timer.seconds();
  const bool pass = max_disc <= 1e-6 && max_limit_err <= 1e-7 && elapsed <= 60.0;
  report(1, "route equivalence over 800 random faithful pairs", pass,
         "max discrepancy " + fmt(max_disc) + ", max limit error " +
             fmt(max_limit_err) + ", " + fmt(elapsed) + " s");
}

void criterion_2_cocycle_algebra() {
  Timer timer;
  StateSampler sampler(102);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const Eigen::Index n = 2 + rep % 4;
    DensityMatrix theta = sampler.faithful_density(n);
    DensityMatrix psi = sampler.faithful_density(n);
    DensityMatrix phi = sampler.faithful_density(n);
    const double t = sampler.uniform(-5.0, 5.0), s = sampler.uniform(-5.0, 5.0);
    const cmatrix id = cmatrix::Identity(n, n);

    cmatrix ut = cocycle(theta, psi, t);
    worst = std::max(worst, frobenius(cmatrix(ut.adjoint() * ut) - id));
    worst = std::max(worst, frobenius(cocycle(theta, psi, t + s) -
                                      ut * modular_flow(psi, t, cocycle(theta, psi, s))));
    cmatrix x = sampler.hermitian_observable(n).mat();
    worst = std::max(worst, frobenius(modular_flow(theta, t, x) -
                                      cmatrix(ut * modular_flow(psi, t, x) *
                                              ut.adjoint())));
    worst = std::max(worst, frobenius(cocycle(theta, phi, t) * cocycle(phi, psi, t) -
                                      cocycle(theta, psi, t)));
    worst = std::max(worst, frobenius(cocycle(theta, psi, t) * cocycle(psi, theta, t) -
                                      id));
  }
  const double elapsed = timer.seconds();
  const bool pass = worst <= 1e-9 && elapsed <= 30.0;
  report(2, "cocycle identity / intertwining / chain / inverse / unitarity", pass,
         "max Frobenius defect " + fmt(worst) + ", " + fmt(elapsed) + " s");
}

void criterion_3_transport_identity() {
  StateSampler sampler(103);
  double worst = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const Eigen::Index n = 2 + rep % 4;
    DensityMatrix theta = sampler.faithful_density(n);
    DensityMatrix psi = sampler.faithful_density(n);
    const cmatrix u = cocycle_analytic(theta, psi, cdouble(0.0, -0.5));
    for (int k = 0; k < 20; ++k) {
      cmatrix x = sampler.hermitian_observable(n).mat();
      const cdouble lhs = (theta.mat() * x).trace();
      const cdouble rhs = (psi.mat() * cmatrix(u.adjoint() * x * u)).trace();
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  report(3, "transport identity at z = -i/2 (50 pairs x 20 observables)",
         worst <= 1e-9, "max defect " + fmt(worst));
}

void criterion_4_trace_state_entropy(const std::string& cli) {
  Timer timer;
  const fs::path density = work_dir() / "identity2.json";
  save_matrix_json(cmatrix::Identity(2, 2), density.string());
  const fs::path out = work_dir() / "regular.csv";
  CliResult r = run_cli(cli,
                        "orlicz regular --density " + density.string() +
                            " --eps-grid 1e-8:1e2:161 --out " + out.string(),
                        "ENTROPY_LAB_SEED=0");
  const double elapsed = timer.seconds();

  double entropy = std::numeric_limits<double>::quiet_NaN();
  double worst_bracket = 0.0;
  bool parsed = false;
  std::istringstream in(r.stdout_text);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string section, name, value;
    std::getline(row, section, ',');
    std::getline(row, name, ',');
    std::getline(row, value, ',');
    if (section == "eps_sweep") {
      const double eps = std::stod(name);
      worst_bracket =
          std::max(worst_bracket, std::abs(std::stod(value) - std::log1p(eps)));
    } else if (name == "regular_entropy") {
      entropy = std::stod(value);
      parsed = true;
    }
  }
  const bool pass = r.exit_code == 0 && parsed && std::abs(entropy) <= 1e-5 &&
                    worst_bracket <= 1e-9 && elapsed <= 5.0;
  report(4, "regularized entropy of the trace state is zero", pass,
         "S = " + fmt(entropy) + ", max bracket defect " + fmt(worst_bracket) + ", " +
             fmt(elapsed) + " s, exit " + std::to_string(r.exit_code));
}

void criterion_5_reduction_identity() {
  StateSampler sampler(105);
  const auto grid = default_eps_grid();
  double worst_identity = 0.0, worst_infimum = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const Eigen::Index n = 2 + rep % 5;
    HermitianMatrix a = sampler.normalized_positive_matrix(n);
    const auto h = dual_density(a, BaseTrace::normalized);
    const auto hlog = h.with_profile(CrossedProfile::phi_log);
    const auto& s = h.base_spectrum();
    const double m = h.multiplicity();
    for (size_t gi = 0; gi < grid.size(); gi += 8) {
      const double eps = grid[gi];
      const double bracket = eps * tail_trace(hlog, eps) + std::log(eps) * h.l1_trace();
      double mid = std::log(eps) * h.base_trace(), right = 0.0;
      for (Eigen::Index k = 0; k < n; ++k) {
        mid += m * s.eigenvalues(k) * std::log1p(s.eigenvalues(k) / eps);
        right += m * s.eigenvalues(k) * std::log(s.eigenvalues(k) + eps);
      }
      worst_identity = std::max(worst_identity, std::abs(bracket - mid));
      worst_identity = std::max(worst_identity, std::abs(bracket - right));
    }
    const auto reg = regular_entropy(a, BaseTrace::normalized, grid);
    worst_infimum = std::max(worst_infimum, std::abs(reg.value - reg.limit));
  }
  const bool pass = worst_identity <= 1e-8 && worst_infimum <= 1e-6;
  report(5, "crossed-product reduction identity on 100 random densities", pass,
         "max identity defect " + fmt(worst_identity) + ", max infimum defect " +
             fmt(worst_infimum));
}

void criterion_6_tracial_model() {
  StateSampler sampler(106);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const Eigen::Index n = 2 + rep % 5;
    DensityMatrix state = sampler.diagonal_faithful_density(n);
    HermitianMatrix a(state.mat() * double(n));
    const auto reg = regular_entropy(a, BaseTrace::normalized);
    const double reference =
        relative_entropy_divergence(state, DensityMatrix::maximally_mixed(n)).value;
    worst = std::max(worst, std::abs(reg.value - reference));
  }
  report(6, "regular entropy equals relative entropy against the trace state",
         worst <= 1e-6, "max defect " + fmt(worst) + " over 100 diagonal densities");
}

void criterion_7_projection_identity() {
  StateSampler sampler(107);
  double worst = 0.0;
  for (const auto* psi : {&YoungFunction::psi_log(), &YoungFunction::psi_ent()}) {
    int done = 0;
    while (done < 50) {
      const Eigen::Index n = 2 + done % 5;
      auto [a, b] = sampler.commuting_positive_pair(n);
      auto js = joint_diagonalize(a, b);
      bool near_threshold = false;
      for (Eigen::Index k = 0; k < n; ++k) {
        const double left = js.a_eigenvalues(k) *
                            fundamental(*psi, NormFlavor::luxemburg, js.b_eigenvalues(k));
        const double right = (*psi)(js.a_eigenvalues(k)) * js.b_eigenvalues(k);
        if (std::abs(left - 1.0) < 1e-6 || std::abs(right - 1.0) < 1e-6) {
          near_threshold = true;
        }
      }
      if (near_threshold) continue;  // excluded spectral-threshold degeneracy
      worst = std::max(worst, projection_identity_defect(a, b, *psi));
      ++done;
    }
  }
  report(7, "commuting projection identity for psi_log and psi_ent", worst <= 1e-9,
         "max defect " + fmt(worst) + " over 2 x 50 commuting pairs");
}

void criterion_8_classical_identities() {
  Timer timer;
  StateSampler sampler(108);
  double worst_exact = 0.0, worst_diff = 0.0, worst_offset = 0.0;
  bool nonneg = true;
  for (int rep = 0; rep < 50; ++rep) {
    const size_t n = 2 + rep % 3;
    auto base = DiscreteMeasure::counting(n);
    std::vector<double> h1(n), h2(n);
    for (size_t k = 0; k < n; ++k) {
      h1[k] = sampler.uniform(0.0, 1.5);
      h2[k] = sampler.uniform(0.0, 1.5);
    }
    auto g1 = gibbs_state(h1, sampler.uniform(0.5, 1.0), base);
    auto g2 = gibbs_state(h2, sampler.uniform(0.5, 1.0), base);
    auto id = gibbs_entropy_identities(g1, &g2);
    worst_exact = std::max(worst_exact, std::abs(id.h_value - id.mean_k));
    worst_exact = std::max(worst_exact, std::abs(*id.kl - *id.mean_k_difference));
    nonneg = nonneg && *id.kl >= 0.0;

    const double step = 1e-4;
    worst_diff = std::max(worst_diff,
                          std::abs(characteristic_derivative(g1.k_values, g1.density,
                                                             step) -
                                   id.mean_k));
    worst_diff = std::max(
        worst_diff, std::abs(characteristic_derivative_pair(g1.k_values, g2.k_values,
                                                            g1.density, step) -
                             *id.kl));

    auto uniform = DiscreteDensity(base, std::vector<double>(n, 1.0 / double(n)));
    worst_offset = std::max(worst_offset,
                            std::abs(kl_divergence(g1.density, uniform) -
                                     id.h_value - std::log(double(n))));
  }
  const double elapsed = timer.seconds();
  const bool pass = worst_exact <= 1e-12 && worst_diff <= 1e-7 &&
                    worst_offset <= 1e-12 && nonneg && elapsed <= 5.0;
  report(8, "classical Gibbs / characteristic-derivative / offset identities", pass,
         "exact " + fmt(worst_exact) + ", derivative " + fmt(worst_diff) +
             ", offset " + fmt(worst_offset) + ", " + fmt(elapsed) + " s");
}

void criterion_9_scalar_bound() {
  StateSampler sampler(109);
  double worst = -1.0;
  bool pass = true;
  for (int rep = 0; rep < 100000; ++rep) {
    const double lam = sampler.log_uniform(1e-8, 1e8);
    const double t = sampler.uniform(1e-12, 1.0);
    const double quotient =
        std::abs(std::exp(cdouble(0.0, t * std::log(lam))) - 1.0) / t;
    const double slack = std::abs(std::log(lam)) + 1e-12 - quotient;
    worst = std::max(worst, -slack);
    pass = pass && slack >= 0.0;
  }
  report(9, "dominated-convergence scalar bound on 1e5 samples", pass,
         "max excess " + fmt(std::max(0.0, worst)));
}

void criterion_10_determinism(const std::string& cli) {
  const fs::path rho = work_dir() / "det_rho.json";
  const fs::path sigma = work_dir() / "det_sigma.json";
  cmatrix r(2, 2), s(2, 2);
  r << 0.7, 0.0, 0.0, 0.3;
  s << 0.5, 0.0, 0.0, 0.5;
  save_matrix_json(r, rho.string());
  save_matrix_json(s, sigma.string());
  const fs::path dist = work_dir() / "det_dist.csv";
  write_text_file(dist.string(), "atom,weight,density\na,1,0.7\nb,1,0.3\n");
  const fs::path id3 = work_dir() / "det_id3.json";
  save_matrix_json(cmatrix::Identity(3, 3), id3.string());

  const std::vector<std::string> invocations = {
      "quantum selftest --dims 2,3 --pairs 5",
      "quantum rel --rho " + rho.string() + " --sigma " + sigma.string() +
          " --format json",
      "orlicz regular --density " + id3.string() + " --eps-grid 1e-6:1e1:33",
      "classical report --dist " + dist.string(),
  };
  bool pass = true;
  std::string note = "all reruns byte-identical";
  for (const auto& args : invocations) {
    const fs::path out1 = work_dir() / "det_out1";
    const fs::path out2 = work_dir() / "det_out2";
    auto a = run_cli(cli, args + " --out " + out1.string(), "ENTROPY_LAB_SEED=42");
    auto b = run_cli(cli, args + " --out " + out2.string(), "ENTROPY_LAB_SEED=42");
    if (a.exit_code != b.exit_code || a.stdout_text != b.stdout_text ||
        read_text_file(out1.string()) != read_text_file(out2.string())) {
      pass = false;
      note = "mismatch for: " + args;
      break;
    }
  }
  report(10, "CLI byte-identity under a fixed ENTROPY_LAB_SEED", pass, note);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-entropy-lab-cli>\n";
    return 2;
  }
  const std::string cli = argv[1];

  criterion_1_route_equivalence();
  criterion_2_cocycle_algebra();
  criterion_3_transport_identity();
  criterion_4_trace_state_entropy(cli);
  criterion_5_reduction_identity();
  criterion_6_tracial_model();
  criterion_7_projection_identity();
  criterion_8_classical_identities();
  criterion_9_scalar_bound();
  criterion_10_determinism(cli);

  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 10 acceptance criteria passed\n");
  return 0;
}
