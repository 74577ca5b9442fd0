#pragma once

#include "entropy_lab/modular.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

namespace entropy_lab {

// Four computational routes to relative entropy and the H-functional on
// density matrices, with divergence detection and cross-validation hooks.
// Sign convention throughout: S(rho) = Tr(rho log rho), the negative of the
// textbook von Neumann entropy.

enum class EntropyRoute { divergence, limit, araki, interpolated };

inline const char* route_name(EntropyRoute r) {
  switch (r) {
    case EntropyRoute::divergence: return "divergence";
    case EntropyRoute::limit: return "limit";
    case EntropyRoute::araki: return "araki";
    case EntropyRoute::interpolated: return "interpolated";
  }
  return "?";
}

struct EntropyResult {
  double value = 0.0;
  bool is_infinite = false;
  EntropyRoute route = EntropyRoute::divergence;
  double error_estimate = 0.0;
  std::vector<std::pair<double, double>> diagnostics;  // (parameter, value)

  static EntropyResult infinite(EntropyRoute r,
                                std::vector<std::pair<double, double>> diag = {}) {
    EntropyResult out;
    out.is_infinite = true;
    out.value = std::numeric_limits<double>::infinity();
    out.route = r;
    out.diagnostics = std::move(diag);
    return out;
  }
};

// Tr(rho log rho) over the support, 0 log 0 = 0. Always <= 0 for states.
inline double h_functional_quantum(const DensityMatrix& rho) {
  const SpectralDecomposition& s = rho.spectral();
  const double cut = tol::kSupportRel * std::max(0.0, s.max_eigenvalue());
  double acc = 0.0;
  for (Eigen::Index k = 0; k < s.dim(); ++k) {
    const double lam = s.eigenvalues(k);
    if (lam > cut) acc += lam * std::log(lam);
  }
  return acc;
}

// Tr(rho_psi log rho_psi - rho_psi log rho_phi) on the supports; infinity
// when rho_psi charges the null space of rho_phi.
inline EntropyResult relative_entropy_divergence(const DensityMatrix& rho_psi,
                                                 const DensityMatrix& rho_phi) {
  if (rho_psi.dim() != rho_phi.dim()) {
    throw validation_error("relative_entropy_divergence: dimension mismatch");
  }
  const SpectralDecomposition& sp = rho_phi.spectral();
  const double cut = tol::kSupportRel * std::max(0.0, sp.max_eigenvalue());

  double outside = 0.0;  // mass of rho_psi outside supp(rho_phi)
  double cross = 0.0;    // Tr(rho_psi log rho_phi)
  for (Eigen::Index i = 0; i < sp.dim(); ++i) {
    const double weight =
        (sp.eigenvectors.col(i).adjoint() * rho_psi.mat() * sp.eigenvectors.col(i))(0)
            .real();
    if (sp.eigenvalues(i) > cut) {
      cross += weight * std::log(sp.eigenvalues(i));
    } else {
      outside += weight;
    }
  }
  if (outside > 1e-12) return EntropyResult::infinite(EntropyRoute::divergence);

  EntropyResult out;
  out.route = EntropyRoute::divergence;
  out.value = h_functional_quantum(rho_psi) - cross;
  return out;
}

inline std::vector<double> default_limit_schedule() {
  std::vector<double> t(9);
  for (size_t k = 0; k < t.size(); ++k) t[k] = 1e-2 * std::pow(2.0, -double(k));
  return t;
}

// Divergence heuristic for the limit route: the last `run` samples grow
// strictly in magnitude and the final one exceeds `threshold`.
inline bool detect_divergence(const std::vector<double>& values, double threshold = 1e6,
                              size_t run = 4) {
  if (values.size() < run) return false;
  for (size_t k = values.size() - run + 1; k < values.size(); ++k) {
    if (!(std::abs(values[k]) > std::abs(values[k - 1]))) return false;
  }
  return std::abs(values.back()) > threshold;
}

// S(theta|psi) = lim_{t->0} (-i/t) theta[(D theta : D psi)_t - 1], evaluated
// through the symmetric quotient g(t) = (-i/2t)(Tr(rho_theta u_t) -
// Tr(rho_theta u_{-t})) and Richardson-extrapolated in t^2.
inline EntropyResult relative_entropy_limit(
    const DensityMatrix& theta, const DensityMatrix& psi,
    const std::vector<double>& schedule = default_limit_schedule()) {
  theta.require_faithful("relative_entropy_limit");
  psi.require_faithful("relative_entropy_limit");
  if (schedule.empty()) throw validation_error("relative_entropy_limit: empty schedule");
  for (size_t k = 0; k < schedule.size(); ++k) {
    if (!(schedule[k] > 0.0) || (k > 0 && !(schedule[k] < schedule[k - 1]))) {
      throw validation_error(
          "relative_entropy_limit: schedule must be strictly decreasing and positive");
    }
  }

  std::vector<double> g(schedule.size());
  EntropyResult out;
  out.route = EntropyRoute::limit;
  for (size_t k = 0; k < schedule.size(); ++k) {
    const double t = schedule[k];
    const cdouble fwd = (theta.mat() * cocycle(theta, psi, t)).trace();
    const cdouble bwd = (theta.mat() * cocycle(theta, psi, -t)).trace();
    g[k] = (cdouble(0.0, -0.5) / t * (fwd - bwd)).real();
    out.diagnostics.emplace_back(t, g[k]);
  }
  if (detect_divergence(g)) {
    return EntropyResult::infinite(EntropyRoute::limit, std::move(out.diagnostics));
  }

  std::vector<double> tsq(schedule.size());
  for (size_t k = 0; k < schedule.size(); ++k) tsq[k] = schedule[k] * schedule[k];
  double prev = 0.0;
  out.value = neville_to_zero(tsq, g, &prev);
  out.error_estimate = std::abs(out.value - prev);
  return out;
}

// Araki spectral form: -<Psi, log(Delta_{phi,psi}) Psi> realized as the
// weighted log-sum over the eigenvalue grid, with spectral weights
// psi_j |<f_i|g_j>|^2.
inline EntropyResult relative_entropy_araki(const DensityMatrix& rho_psi,
                                            const DensityMatrix& rho_phi) {
  rho_psi.require_faithful("relative_entropy_araki");
  rho_phi.require_faithful("relative_entropy_araki");
  const RelativeModularOperator delta = relative_modular(rho_phi, rho_psi);
  const cmatrix overlap = delta.left.eigenvectors.adjoint() * delta.right.eigenvectors;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < delta.dim(); ++i) {
    for (Eigen::Index j = 0; j < delta.dim(); ++j) {
      const double w = delta.right.eigenvalues(j) * std::norm(overlap(i, j));
      acc -= w * std::log(delta.grid(i, j));
    }
  }
  EntropyResult out;
  out.route = EntropyRoute::araki;
  out.value = acc;
  return out;
}

// Interpolated trace F(s) = Tr(rho_theta^s log rho_theta rho_phi^{1-s}
//                            - rho_theta^s log rho_phi rho_phi^{1-s}).
inline double interpolated_trace(const DensityMatrix& theta, const DensityMatrix& phi,
                                 double s) {
  theta.require_faithful("interpolated_trace");
  phi.require_faithful("interpolated_trace");
  if (!(s > 0.0 && s < 1.0)) {
    throw domain_error("interpolated_trace: s must lie in (0,1)");
  }
  const SpectralDecomposition& st = theta.spectral();
  const SpectralDecomposition& sp = phi.spectral();
  rvector a(st.dim()), d(st.dim()), b(sp.dim()), c(sp.dim());
  for (Eigen::Index k = 0; k < st.dim(); ++k) {
    const double lam = st.eigenvalues(k);
    a(k) = std::pow(lam, s) * std::log(lam);
    d(k) = std::pow(lam, s);
  }
  for (Eigen::Index k = 0; k < sp.dim(); ++k) {
    const double lam = sp.eigenvalues(k);
    b(k) = std::pow(lam, 1.0 - s);
    c(k) = std::pow(lam, 1.0 - s) * std::log(lam);
  }
  const cdouble term1 = (st.assemble(a) * sp.assemble(b)).trace();
  const cdouble term2 = (st.assemble(d) * sp.assemble(c)).trace();
  return (term1 - term2).real();
}

// Limit s -> 1 of the interpolated trace along s_k = 1 - 2^{-k}, k = 3..12,
// extrapolated in h = 1 - s.
inline EntropyResult relative_entropy_interpolated(const DensityMatrix& theta,
                                                   const DensityMatrix& phi) {
  std::vector<double> h, f;
  EntropyResult out;
  out.route = EntropyRoute::interpolated;
  for (int k = 3; k <= 12; ++k) {
    const double hk = std::pow(2.0, -k);
    h.push_back(hk);
    f.push_back(interpolated_trace(theta, phi, 1.0 - hk));
    out.diagnostics.emplace_back(1.0 - hk, f.back());
  }
  double prev = 0.0;
  out.value = neville_to_zero(h, f, &prev);
  out.error_estimate = std::abs(out.value - prev);
  return out;
}

}  // namespace entropy_lab
