#pragma once

#include "entropy_lab/classical.hpp"
#include "entropy_lab/entropy.hpp"
#include "entropy_lab/spectral.hpp"
#include "entropy_lab/young.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

namespace entropy_lab {

// Orlicz-space numerics over the model crossed product: Luxemburg norms, the
// commuting projection identity, separable elements a (x) g(e^t) against the
// trace tau_omega (x) integral e^{-t} dt, and the regularized entropy of a
// state relative to the trace state.

// Luxemburg norm inf{ k > 0 : sum lambda_a Psi(f_a / k) <= 1 }.
inline double luxemburg_norm(const DiscreteDensity& f, const YoungFunction& psi) {
  double top = 0.0;
  for (size_t a = 0; a < f.values.size(); ++a) {
    if (f.base.weights[a] > 0.0) top = std::max(top, f.values[a]);
  }
  if (top == 0.0) return 0.0;

  auto modular = [&](double k) {
    double acc = 0.0;
    for (size_t a = 0; a < f.values.size(); ++a) {
      if (f.base.weights[a] > 0.0 && f.values[a] > 0.0) {
        acc += f.base.weights[a] * psi(f.values[a] / k);
      }
    }
    return acc;
  };

  double hi = top;
  int guard = 0;
  while (modular(hi) > 1.0) {
    hi *= 2.0;
    if (++guard > 2100) throw domain_error("luxemburg_norm: modular never drops below 1");
  }
  double lo = hi;
  while (modular(lo) <= 1.0 && lo > 1e-300) lo *= 0.5;
  while ((hi - lo) > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    (modular(mid) <= 1.0 ? hi : lo) = mid;
  }
  return hi;
}

// Joint eigensystem of a commuting Hermitian pair: diagonalize a, then
// re-diagonalize b inside (near-)degenerate eigenspaces of a.
struct JointSpectrum {
  rvector a_eigenvalues;
  rvector b_eigenvalues;
  cmatrix eigenvectors;
};

inline JointSpectrum joint_diagonalize(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw validation_error("joint_diagonalize: dimension mismatch");
  const double comm = frobenius(a.mat() * b.mat() - b.mat() * a.mat());
  if (comm > tol::kCommutator) {
    std::ostringstream os;
    os << "joint_diagonalize: commutator norm " << comm << " exceeds " << tol::kCommutator;
    throw domain_error(os.str());
  }
  SpectralDecomposition sa = eigh(a);
  const Eigen::Index n = sa.dim();
  cmatrix b_rot = sa.eigenvectors.adjoint() * b.mat() * sa.eigenvectors;

  const double gap = 1e-8 * std::max(1.0, std::abs(sa.max_eigenvalue()));
  JointSpectrum out{sa.eigenvalues, rvector(n), sa.eigenvectors};
  Eigen::Index lo = 0;
  while (lo < n) {
    Eigen::Index hi = lo + 1;
    while (hi < n && sa.eigenvalues(hi) - sa.eigenvalues(hi - 1) <= gap) ++hi;
    const Eigen::Index len = hi - lo;
    if (len == 1) {
      out.b_eigenvalues(lo) = b_rot(lo, lo).real();
    } else {
      cmatrix block = b_rot.block(lo, lo, len, len);
      Eigen::SelfAdjointEigenSolver<cmatrix> sub(0.5 * (block + cmatrix(block.adjoint())));
      out.b_eigenvalues.segment(lo, len) = sub.eigenvalues();
      out.eigenvectors.middleCols(lo, len) =
          sa.eigenvectors.middleCols(lo, len) * sub.eigenvectors();
    }
    lo = hi;
  }
  return out;
}

// Defect of the commuting projection identity
// chi_(1,inf)(a phi_Psi(b)) = chi_(1,inf)(Psi(a) b).
inline double projection_identity_defect(const HermitianMatrix& a, const HermitianMatrix& b,
                                         const YoungFunction& psi) {
  JointSpectrum js = joint_diagonalize(a, b);
  const Eigen::Index n = js.a_eigenvalues.size();
  rvector left(n), right(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double alpha = js.a_eigenvalues(k), beta = js.b_eigenvalues(k);
    if (alpha < -1e-10 || beta < -1e-10) {
      throw domain_error("projection_identity_defect: inputs must be positive");
    }
    const double al = std::max(0.0, alpha), be = std::max(0.0, beta);
    left(k) = (al > 0.0 && be > 0.0) ? al * fundamental(psi, NormFlavor::luxemburg, be) : 0.0;
    right(k) = psi(al) * be;
  }
  auto indicator = [n](const rvector& vals) {
    double threshold = 1.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (std::abs(vals(k) - threshold) <= 1e-12) {
        threshold += 2e-12;  // tie-break against the spectrum
        break;
      }
    }
    rvector chi(n);
    for (Eigen::Index k = 0; k < n; ++k) chi(k) = vals(k) > threshold ? 1.0 : 0.0;
    return chi;
  };
  const rvector chi_left = indicator(left), chi_right = indicator(right);
  cmatrix diff = js.eigenvectors * (chi_left - chi_right).asDiagonal() *
                 js.eigenvectors.adjoint();
  return frobenius(diff);
}

enum class BaseTrace { normalized, counting };
enum class CrossedProfile { identity, phi_log, phi_ent };

inline double profile_eval(CrossedProfile p, double u) {
  switch (p) {
    case CrossedProfile::identity: return u;
    case CrossedProfile::phi_log: return phi_log_eval(u);
    case CrossedProfile::phi_ent: return phi_ent_eval(u);
  }
  return u;
}

inline double profile_inverse(CrossedProfile p, double y) {
  switch (p) {
    case CrossedProfile::identity: return y;
    case CrossedProfile::phi_log: return phi_log_inverse(y);
    case CrossedProfile::phi_ent: return phi_ent_inverse(y);
  }
  return y;
}

inline const char* profile_name(CrossedProfile p) {
  switch (p) {
    case CrossedProfile::identity: return "identity";
    case CrossedProfile::phi_log: return "phi_log";
    case CrossedProfile::phi_ent: return "phi_ent";
  }
  return "?";
}

// Separable crossed-product element a (x) g(e^{t - shift}) with a positive
// and g one of the named increasing profiles. The trace is
// tau_omega (x) integral e^{-t} dt, with tau_omega the normalized or counting
// matrix trace.
class ModelCrossedElement {
 public:
  ModelCrossedElement(HermitianMatrix base, BaseTrace flavor,
                      CrossedProfile profile = CrossedProfile::identity,
                      double shift = 0.0)
      : base_(std::move(base)),
        spec_(eigh(base_)),
        flavor_(flavor),
        profile_(profile),
        shift_(shift) {
    detail::require_positive(spec_, "ModelCrossedElement");
  }

  const HermitianMatrix& base() const { return base_; }
  const SpectralDecomposition& base_spectrum() const { return spec_; }
  BaseTrace flavor() const { return flavor_; }
  CrossedProfile profile() const { return profile_; }
  double shift() const { return shift_; }

  double multiplicity() const {
    return flavor_ == BaseTrace::normalized ? 1.0 / static_cast<double>(spec_.dim()) : 1.0;
  }

  // tau_omega(a)
  double base_trace() const {
    return multiplicity() * spec_.eigenvalues.sum();
  }

  // The L1 trace functional: defined for the scaling-covariant (identity)
  // profile, where tr(a (x) e^{t - shift}) = e^{-shift} tau_omega(a).
  double l1_trace() const {
    if (profile_ != CrossedProfile::identity) {
      throw domain_error("l1_trace: element is not in L1 (profile is not degree-1)");
    }
    return std::exp(-shift_) * base_trace();
  }

  // Degree-1 homogeneity of the profile, g(u e^{-s}) = e^{-s} g(u); this is
  // what makes theta_s(h) = e^{-s} h hold for the dual density.
  bool scaling_covariant() const {
    for (double u : {1e-3, 0.7, 1.0, 5.0, 1e3}) {
      for (double s : {-1.0, 0.5, 2.0}) {
        const double lhs = profile_eval(profile_, u * std::exp(-s));
        const double rhs = std::exp(-s) * profile_eval(profile_, u);
        if (std::abs(lhs - rhs) > 1e-12 * std::max(1.0, std::abs(rhs))) return false;
      }
    }
    return true;
  }

  ModelCrossedElement with_profile(CrossedProfile p) const {
    return ModelCrossedElement(base_, flavor_, p, shift_);
  }
  // Dual scaling action theta_s: t -> t - s, so theta_s(a (x) e^t) = e^{-s} (a (x) e^t).
  ModelCrossedElement theta_shifted(double s) const {
    return ModelCrossedElement(base_, flavor_, profile_, shift_ + s);
  }

 private:
  HermitianMatrix base_;
  SpectralDecomposition spec_;
  BaseTrace flavor_;
  CrossedProfile profile_;
  double shift_;
};

// Dual density h_theta = a (x) e^t of the state x -> tau_omega(a x).
inline ModelCrossedElement dual_density(const HermitianMatrix& a, BaseTrace flavor) {
  ModelCrossedElement h(a, flavor, CrossedProfile::identity);
  if (!h.scaling_covariant()) {
    throw validation_error("dual_density: profile lost scaling covariance");
  }
  return h;
}

// tau(chi_(eps,inf)(a (x) g(e^t))): per eigenvalue alpha of a the level set
// {alpha g(e^{t-shift}) > eps} is a half line, and the e^{-t} integral over
// it is e^{-shift} / g^{-1}(eps/alpha).
inline double tail_trace(const ModelCrossedElement& h, double eps) {
  if (!(eps > 0.0)) throw domain_error("tail_trace: eps must be positive");
  const SpectralDecomposition& s = h.base_spectrum();
  const double m = h.multiplicity();
  double acc = 0.0;
  for (Eigen::Index k = 0; k < s.dim(); ++k) {
    const double alpha = std::max(0.0, s.eigenvalues(k));
    if (alpha == 0.0) continue;
    acc += m * std::exp(-h.shift()) / profile_inverse(h.profile(), eps / alpha);
  }
  return acc;
}

inline std::vector<double> default_eps_grid() { return log_grid(1e-8, 1e2, 161); }

namespace detail {

inline void require_eps_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw validation_error("eps grid must be nonempty");
  for (size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] > 0.0) || (k > 0 && !(grid[k] > grid[k - 1]))) {
      throw validation_error("eps grid must be positive and strictly ascending");
    }
  }
}

// Grid scan plus golden-section sharpening (in log eps) around the argmin.
inline double refined_infimum(const std::function<double(double)>& fn,
                              const std::vector<double>& grid,
                              std::vector<std::pair<double, double>>* sweep = nullptr) {
  size_t best = 0;
  double best_val = fn(grid[0]);
  if (sweep) sweep->emplace_back(grid[0], best_val);
  for (size_t k = 1; k < grid.size(); ++k) {
    const double v = fn(grid[k]);
    if (sweep) sweep->emplace_back(grid[k], v);
    if (v < best_val) {
      best_val = v;
      best = k;
    }
  }
  const double lo = grid[best > 0 ? best - 1 : 0];
  const double hi = grid[std::min(best + 1, grid.size() - 1)];
  if (lo < hi) {
    const double u = golden_section_minimize(
        [&](double logeps) { return fn(std::exp(logeps)); }, std::log(lo), std::log(hi),
        1e-9);
    best_val = std::min(best_val, fn(std::exp(u)));
  }
  return best_val;
}

}  // namespace detail

struct RegularEntropyResult {
  double value = 0.0;       // refined infimum of the regularized bracket
  double comparator = 0.0;  // refined infimum of tau_omega(a log(a + eps))
  double limit = 0.0;       // tau_omega(a log a)
  std::vector<std::pair<double, double>> sweep;  // (eps, bracket)
};

// Regularized entropy of the state with density a relative to the trace
// state: inf_eps [ eps tau(chi_(eps,inf)(a (x) phi_log(e^t)))
//                  + log(eps) ||a (x) e^t||_1 ].
inline RegularEntropyResult regular_entropy(const HermitianMatrix& a, BaseTrace flavor,
                                            const std::vector<double>& eps_grid =
                                                default_eps_grid()) {
  detail::require_eps_grid(eps_grid);
  const ModelCrossedElement h1 = dual_density(a, flavor);
  const double mass = h1.base_trace();
  if (std::abs(mass - 1.0) > 1e-8) {
    std::ostringstream os;
    os << "regular_entropy: tau_omega(a) = " << mass << ", expected 1 within 1e-8";
    throw validation_error(os.str());
  }
  const ModelCrossedElement hlog = h1.with_profile(CrossedProfile::phi_log);
  const double l1 = h1.l1_trace();

  auto bracket = [&](double eps) {
    return eps * tail_trace(hlog, eps) + std::log(eps) * l1;
  };

  const SpectralDecomposition& s = h1.base_spectrum();
  const double m = h1.multiplicity();
  auto comparator_fn = [&](double eps) {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < s.dim(); ++k) {
      const double alpha = std::max(0.0, s.eigenvalues(k));
      if (alpha > 0.0) acc += m * alpha * std::log(alpha + eps);
    }
    return acc;
  };

  RegularEntropyResult out;
  out.value = detail::refined_infimum(bracket, eps_grid, &out.sweep);
  out.comparator = detail::refined_infimum(comparator_fn, eps_grid);
  double lim = 0.0;
  for (Eigen::Index k = 0; k < s.dim(); ++k) {
    const double alpha = std::max(0.0, s.eigenvalues(k));
    if (alpha > 0.0) lim += m * alpha * std::log(alpha);
  }
  out.limit = lim;
  return out;
}

struct CommutingEntropyResult {
  double trace_value = 0.0;   // phi(f log f)
  double eps_infimum = 0.0;   // crossed-product bracket infimum
  std::vector<std::pair<double, double>> sweep;
};

// Commuting-pair relative entropy: with f = rho_theta rho_phi^{-1},
//   S(theta|phi) = phi(f log f)
//                = inf_eps [ eps tau(chi_(eps,inf)(phi_log(h_phi) f))
//                            + log(eps) ||h_phi f||_1 ],
// the bracket evaluated in the model crossed product h_phi = rho_phi (x) e^t.
inline CommutingEntropyResult commuting_relative_entropy(
    const DensityMatrix& theta, const DensityMatrix& phi,
    const std::vector<double>& eps_grid = default_eps_grid()) {
  theta.require_faithful("commuting_relative_entropy");
  phi.require_faithful("commuting_relative_entropy");
  detail::require_eps_grid(eps_grid);
  JointSpectrum js = joint_diagonalize(theta.hermitian(), phi.hermitian());

  const Eigen::Index n = js.a_eigenvalues.size();
  rvector f(n);
  for (Eigen::Index k = 0; k < n; ++k) f(k) = js.a_eigenvalues(k) / js.b_eigenvalues(k);

  CommutingEntropyResult out;
  double l1 = 0.0;  // ||h_phi f||_1 = sum phi_i f_i
  for (Eigen::Index k = 0; k < n; ++k) {
    out.trace_value += js.b_eigenvalues(k) * f(k) * std::log(f(k));
    l1 += js.b_eigenvalues(k) * f(k);
  }

  // Per joint eigenvalue the level set {f_i phi_log(rho'_i e^t) > eps} yields
  // the e^{-t} integral rho'_i / phi_log^{-1}(eps/f_i); tau-weighting by the
  // multiplicity collapses rho'_i to phi_i independently of the trace flavor.
  auto bracket = [&](double eps) {
    double tail = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      tail += js.b_eigenvalues(k) / phi_log_inverse(eps / f(k));
    }
    return eps * tail + std::log(eps) * l1;
  };
  out.eps_infimum = detail::refined_infimum(bracket, eps_grid, &out.sweep);
  return out;
}

}  // namespace entropy_lab
