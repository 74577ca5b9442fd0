#pragma once

#include "entropy_lab/spectral.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace entropy_lab {

// Deterministic generators for randomized self-tests. A fixed seed yields a
// fixed stream of states and observables.
class StateSampler {
 public:
  explicit StateSampler(uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  cmatrix ginibre(Eigen::Index dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    cmatrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = 0; j < dim; ++j) {
        g(i, j) = cdouble(gauss(rng_), gauss(rng_));
      }
    }
    return g;
  }

  HermitianMatrix hermitian_observable(Eigen::Index dim) {
    cmatrix g = ginibre(dim);
    return HermitianMatrix(0.5 * (g + cmatrix(g.adjoint())));
  }

  // Wishart-type strictly positive matrix.
  HermitianMatrix positive_matrix(Eigen::Index dim) {
    cmatrix g = ginibre(dim);
    cmatrix w = g * g.adjoint() + 1e-3 * cmatrix::Identity(dim, dim);
    return HermitianMatrix(0.5 * (w + cmatrix(w.adjoint())));
  }

  // Faithful state: normalized Wishart blended with the tracial state, which
  // keeps eigenvalues away from zero (min eigenvalue >= mix/dim).
  DensityMatrix faithful_density(Eigen::Index dim, double mix = 0.25) {
    cmatrix w = positive_matrix(dim).mat();
    w /= w.trace().real();
    cmatrix rho = (1.0 - mix) * w +
                  mix / static_cast<double>(dim) * cmatrix::Identity(dim, dim);
    return DensityMatrix(0.5 * (rho + cmatrix(rho.adjoint())));
  }

  DensityMatrix diagonal_faithful_density(Eigen::Index dim, double floor = 0.05) {
    std::vector<double> p(static_cast<size_t>(dim));
    double total = 0.0;
    for (auto& v : p) total += (v = uniform(floor, 1.0));
    for (auto& v : p) v /= total;
    return DensityMatrix::diagonal(p);
  }

  // Positive matrix with unit trace-state mass: tau_omega(a) = 1 for the
  // normalized matrix trace.
  HermitianMatrix normalized_positive_matrix(Eigen::Index dim) {
    cmatrix w = positive_matrix(dim).mat();
    w *= static_cast<double>(dim) / w.trace().real();
    return HermitianMatrix(0.5 * (w + cmatrix(w.adjoint())));
  }

  // Commuting positive pair with eigenvalues log-uniform in [lo, hi], sharing
  // a Haar-ish eigenbasis.
  std::pair<HermitianMatrix, HermitianMatrix> commuting_positive_pair(
      Eigen::Index dim, double lo = 0.1, double hi = 10.0) {
    Eigen::HouseholderQR<cmatrix> qr(ginibre(dim));
    cmatrix q = qr.householderQ();
    rvector alpha(dim), beta(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
      alpha(k) = log_uniform(lo, hi);
      beta(k) = log_uniform(lo, hi);
    }
    cmatrix a = q * alpha.asDiagonal() * q.adjoint();
    cmatrix b = q * beta.asDiagonal() * q.adjoint();
    return {HermitianMatrix(0.5 * (a + cmatrix(a.adjoint()))),
            HermitianMatrix(0.5 * (b + cmatrix(b.adjoint())))};
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace entropy_lab
