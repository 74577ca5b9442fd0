#pragma once

#include "entropy_lab/spectral.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <utility>

namespace entropy_lab {

// Finite-dimensional standard form: GNS vectors, modular flow and generator,
// relative modular operators, Connes cocycles, KMS checks. All cocycles are
// realized tracially as rho_theta^{it} rho_psi^{-it}; the standard-form
// identity u_t = Delta_{theta,psi}^{it} Delta_psi^{-it} is a tested property,
// not the implementation.

// State vector Psi = rho^{1/2} in Hilbert-Schmidt space (natural cone).
struct StandardFormVector {
  cmatrix representative;
  double hs_norm = 0.0;

  // <Psi, x Psi>_HS = Tr(rho^{1/2} x rho^{1/2})
  cdouble expectation(const cmatrix& x) const {
    return (representative.adjoint() * x * representative).trace();
  }
};

inline StandardFormVector standard_vector(const DensityMatrix& rho) {
  const SpectralDecomposition& s = rho.spectral();
  rvector w(s.dim());
  for (Eigen::Index k = 0; k < s.dim(); ++k) {
    w(k) = std::sqrt(std::max(0.0, s.eigenvalues(k)));
  }
  cmatrix rep = s.assemble(w);
  return StandardFormVector{rep, rep.norm()};
}

namespace detail {

inline cmatrix density_power(const DensityMatrix& rho, cdouble z, const char* who) {
  rho.require_faithful(who);
  return complex_power_of(rho.spectral(), z);
}

}  // namespace detail

// sigma_t^phi on a general algebra element.
inline cmatrix modular_flow(const DensityMatrix& rho_phi, double t, const cmatrix& m) {
  const cmatrix u = detail::density_power(rho_phi, cdouble(0.0, t), "modular_flow");
  return u * m * u.adjoint();
}

// sigma_t^phi(x) = rho_phi^{it} x rho_phi^{-it}, hermiticity preserved.
inline HermitianMatrix modular_flow(const DensityMatrix& rho_phi, double t,
                                    const HermitianMatrix& x) {
  cmatrix out = modular_flow(rho_phi, t, x.mat());
  return HermitianMatrix(0.5 * (out + cmatrix(out.adjoint())));
}

// Generator L^phi(x) = i [log rho_phi, x] = d/dt sigma_t^phi(x)|_{t=0}
inline cmatrix modular_generator(const DensityMatrix& rho_phi, const HermitianMatrix& x) {
  rho_phi.require_faithful("modular_generator");
  const SpectralDecomposition& s = rho_phi.spectral();
  rvector w(s.dim());
  for (Eigen::Index k = 0; k < s.dim(); ++k) {
    w(k) = std::log(s.eigenvalues(k));
  }
  const cmatrix log_rho = s.assemble(w);
  return cdouble(0.0, 1.0) * (log_rho * x.mat() - x.mat() * log_rho);
}

// Spectral data of Delta_{phi,psi}: x -> rho_phi x rho_psi^{-1} with
// eigenvalue grid phi_i / psi_j over the two eigenbases.
struct RelativeModularOperator {
  SpectralDecomposition left;   // rho_phi
  SpectralDecomposition right;  // rho_psi

  Eigen::Index dim() const { return left.dim(); }
  double grid(Eigen::Index i, Eigen::Index j) const {
    return left.eigenvalues(i) / right.eigenvalues(j);
  }

  // Superoperator Delta^z applied to x: sum_ij lambda_ij^z P_i x Q_j.
  cmatrix power_apply(cdouble z, const cmatrix& x) const {
    cmatrix xt = left.eigenvectors.adjoint() * x * right.eigenvectors;
    for (Eigen::Index i = 0; i < dim(); ++i) {
      for (Eigen::Index j = 0; j < dim(); ++j) {
        xt(i, j) *= std::exp(z * std::log(grid(i, j)));
      }
    }
    return left.eigenvectors * xt * right.eigenvectors.adjoint();
  }

  cmatrix apply(const cmatrix& x) const { return power_apply(cdouble(1.0, 0.0), x); }
};

inline RelativeModularOperator relative_modular(const DensityMatrix& rho_phi,
                                                const DensityMatrix& rho_psi) {
  rho_psi.require_faithful("relative_modular");
  if (rho_phi.dim() != rho_psi.dim()) {
    throw validation_error("relative_modular: dimension mismatch");
  }
  return RelativeModularOperator{rho_phi.spectral(), rho_psi.spectral()};
}

// (D theta : D psi)_t = rho_theta^{it} rho_psi^{-it}
inline cmatrix cocycle(const DensityMatrix& theta, const DensityMatrix& psi, double t) {
  if (theta.dim() != psi.dim()) throw validation_error("cocycle: dimension mismatch");
  return detail::density_power(theta, cdouble(0.0, t), "cocycle") *
         detail::density_power(psi, cdouble(0.0, -t), "cocycle");
}

// Analytic extension rho_theta^{iz} rho_psi^{-iz}. At z = -i/2 this is the
// transport element of the domination theorem: theta(x) = psi(u* x u).
inline cmatrix cocycle_analytic(const DensityMatrix& theta, const DensityMatrix& psi,
                                cdouble z) {
  if (theta.dim() != psi.dim()) {
    throw validation_error("cocycle_analytic: dimension mismatch");
  }
  return detail::density_power(theta, cdouble(0.0, 1.0) * z, "cocycle_analytic") *
         detail::density_power(psi, cdouble(0.0, -1.0) * z, "cocycle_analytic");
}

// Ordering diagnostic: sup of ||u_z|| over the sampled strip Im z in
// [-delta, 0]. The real part of z conjugates by unitaries and drops out of
// the norm, so sampling the imaginary axis is exact.
inline double ordering_strip_norm(const DensityMatrix& theta, const DensityMatrix& psi,
                                  double delta = 0.5, int samples = 33) {
  if (!(delta > 0.0) || samples < 2) {
    throw validation_error("ordering_strip_norm: need delta > 0 and samples >= 2");
  }
  double sup = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double r = delta * k / (samples - 1);
    sup = std::max(sup, operator_norm(cocycle_analytic(theta, psi, cdouble(0.0, -r))));
  }
  return sup;
}

// |Tr(rho x sigma_{-i}(y)) - Tr(rho y x)| with sigma_{-i}(y) = rho y rho^{-1}.
// Vanishes identically by trace cyclicity; the return value is the numerical
// defect of the KMS boundary condition.
inline double kms_defect(const DensityMatrix& rho, const HermitianMatrix& x,
                         const HermitianMatrix& y) {
  rho.require_faithful("kms_defect");
  const cmatrix rho_inv = detail::density_power(rho, cdouble(-1.0, 0.0), "kms_defect");
  const cdouble lhs = (rho.mat() * x.mat() * rho.mat() * y.mat() * rho_inv).trace();
  const cdouble rhs = (rho.mat() * y.mat() * x.mat()).trace();
  return std::abs(lhs - rhs);
}

}  // namespace entropy_lab
