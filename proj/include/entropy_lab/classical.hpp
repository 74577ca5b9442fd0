#pragma once

#include "entropy_lab/core.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

namespace entropy_lab {

// Discrete classical measure theory: Radon-Nikodym derivatives, H-functional,
// KL divergence, Gibbs states and the characteristic-function derivative
// identities. Conventions fixed globally: 0 log 0 = 0, p log(p/0) = +inf.

struct DiscreteMeasure {
  std::vector<std::string> atoms;
  std::vector<double> weights;

  DiscreteMeasure(std::vector<std::string> a, std::vector<double> w)
      : atoms(std::move(a)), weights(std::move(w)) {
    validate();
  }

  static DiscreteMeasure counting(size_t n) {
    std::vector<std::string> a(n);
    for (size_t k = 0; k < n; ++k) a[k] = "a" + std::to_string(k);
    return DiscreteMeasure(std::move(a), std::vector<double>(n, 1.0));
  }

  size_t size() const { return atoms.size(); }
  double total() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }

  bool same_base(const DiscreteMeasure& other) const {
    return atoms == other.atoms && weights == other.weights;
  }

 private:
  void validate() const {
    if (atoms.empty() || atoms.size() != weights.size()) {
      throw validation_error("DiscreteMeasure: need at least one atom with a weight each");
    }
    std::unordered_map<std::string, int> seen;
    for (size_t k = 0; k < atoms.size(); ++k) {
      if (!(weights[k] >= 0.0) || !std::isfinite(weights[k])) {
        throw validation_error("DiscreteMeasure: weight of atom '" + atoms[k] +
                               "' must be finite and nonnegative");
      }
      if (++seen[atoms[k]] > 1) {
        throw validation_error("DiscreteMeasure: duplicate atom '" + atoms[k] + "'");
      }
    }
  }
};

struct DiscreteDensity {
  DiscreteMeasure base;
  std::vector<double> values;  // Radon-Nikodym derivative per atom

  DiscreteDensity(DiscreteMeasure b, std::vector<double> v)
      : base(std::move(b)), values(std::move(v)) {
    if (values.size() != base.size()) {
      throw validation_error("DiscreteDensity: one density value per atom required");
    }
    for (size_t k = 0; k < values.size(); ++k) {
      if (!(values[k] >= 0.0) || !std::isfinite(values[k])) {
        throw validation_error("DiscreteDensity: density at atom '" + base.atoms[k] +
                               "' must be finite and nonnegative");
      }
    }
  }

  double mass() const {
    double s = 0.0;
    for (size_t k = 0; k < values.size(); ++k) s += base.weights[k] * values[k];
    return s;
  }
  bool is_probability(double tolerance = 1e-12) const {
    return std::abs(mass() - 1.0) <= tolerance;
  }
  void require_probability(const char* who) const {
    if (!is_probability()) {
      std::ostringstream os;
      os << who << ": density has mass " << mass() << ", expected 1 within 1e-12";
      throw validation_error(os.str());
    }
  }
};

// d mu / d lambda by atomwise division; absolute-continuity violations name
// the offending atom.
inline DiscreteDensity radon_nikodym(const DiscreteMeasure& mu,
                                     const DiscreteMeasure& lambda) {
  std::unordered_map<std::string, double> mu_weight;
  for (size_t k = 0; k < mu.size(); ++k) mu_weight[mu.atoms[k]] = mu.weights[k];

  std::vector<double> density(lambda.size(), 0.0);
  for (size_t k = 0; k < lambda.size(); ++k) {
    auto it = mu_weight.find(lambda.atoms[k]);
    const double m = (it == mu_weight.end()) ? 0.0 : it->second;
    if (it != mu_weight.end()) mu_weight.erase(it);
    if (lambda.weights[k] == 0.0) {
      if (m > 0.0) {
        throw domain_error("radon_nikodym: mu charges the lambda-null atom '" +
                           lambda.atoms[k] + "'");
      }
      density[k] = 0.0;
    } else {
      density[k] = m / lambda.weights[k];
    }
  }
  for (const auto& [atom, w] : mu_weight) {
    if (w > 0.0) {
      throw domain_error("radon_nikodym: mu charges atom '" + atom +
                         "' outside the support of lambda");
    }
  }
  return DiscreteDensity(lambda, std::move(density));
}

// Boltzmann H-functional: sum lambda_a p_a log p_a.
inline double h_functional(const DiscreteDensity& p) {
  p.require_probability("h_functional");
  double acc = 0.0;
  for (size_t k = 0; k < p.values.size(); ++k) {
    if (p.values[k] > 0.0 && p.base.weights[k] > 0.0) {
      acc += p.base.weights[k] * p.values[k] * std::log(p.values[k]);
    }
  }
  return acc;
}

// KL divergence of two probability densities over a common base measure.
// Returns +inf when mu charges a nu-null atom.
inline double kl_divergence(const DiscreteDensity& mu, const DiscreteDensity& nu) {
  if (!mu.base.same_base(nu.base)) {
    throw validation_error("kl_divergence: densities must share a base measure");
  }
  mu.require_probability("kl_divergence");
  nu.require_probability("kl_divergence");
  double acc = 0.0;
  for (size_t k = 0; k < mu.values.size(); ++k) {
    const double w = mu.base.weights[k];
    const double p = mu.values[k], q = nu.values[k];
    if (w == 0.0 || p == 0.0) continue;
    if (q == 0.0) return std::numeric_limits<double>::infinity();
    acc += w * p * std::log(p / q);
  }
  return acc;
}

// Gibbs state density ~ e^{-beta H} normalized against lambda, with the
// exponent values K_a chosen so that density = e^{K}.
struct GibbsState {
  DiscreteDensity density;
  std::vector<double> k_values;  // K_a = -log Z - beta H_a
  double log_partition = 0.0;    // log Z with Z = sum lambda_a e^{-beta H_a}
};

inline GibbsState gibbs_state(const std::vector<double>& energies, double beta,
                              const DiscreteMeasure& lambda) {
  if (!(beta > 0.0)) throw domain_error("gibbs_state: beta must be positive");
  if (energies.size() != lambda.size()) {
    throw validation_error("gibbs_state: one energy per atom required");
  }
  double h_min = std::numeric_limits<double>::infinity();
  for (double h : energies) {
    if (!std::isfinite(h)) throw validation_error("gibbs_state: energies must be finite");
    h_min = std::min(h_min, h);
  }
  double z_shifted = 0.0;  // Z e^{beta h_min}
  for (size_t k = 0; k < energies.size(); ++k) {
    z_shifted += lambda.weights[k] * std::exp(-beta * (energies[k] - h_min));
  }
  if (!(z_shifted > 0.0)) throw validation_error("gibbs_state: partition sum vanishes");
  const double log_z = std::log(z_shifted) - beta * h_min;

  std::vector<double> density(energies.size()), kvals(energies.size());
  for (size_t k = 0; k < energies.size(); ++k) {
    kvals[k] = -log_z - beta * energies[k];
    density[k] = std::exp(kvals[k]);
  }
  return GibbsState{DiscreteDensity(lambda, std::move(density)), std::move(kvals), log_z};
}

inline double expectation(const DiscreteDensity& mu, const std::vector<double>& f) {
  if (f.size() != mu.base.size()) {
    throw validation_error("expectation: one value per atom required");
  }
  double acc = 0.0;
  for (size_t k = 0; k < f.size(); ++k) {
    acc += mu.base.weights[k] * mu.values[k] * f[k];
  }
  return acc;
}

// Both sides of the Gibbs entropy identities: S = <K>_mu for one state, and
// KL(mu|nu) = <K1>_mu - <K2>_mu for a pair over the same base.
struct GibbsIdentityReport {
  double h_value = 0.0;
  double mean_k = 0.0;
  std::optional<double> kl;
  std::optional<double> mean_k_difference;
};

inline GibbsIdentityReport gibbs_entropy_identities(const GibbsState& a,
                                                    const GibbsState* b = nullptr) {
  GibbsIdentityReport out;
  out.h_value = h_functional(a.density);
  out.mean_k = expectation(a.density, a.k_values);
  if (b) {
    if (!a.density.base.same_base(b->density.base)) {
      throw validation_error("gibbs_entropy_identities: states must share a base");
    }
    out.kl = kl_divergence(a.density, b->density);
    std::vector<double> diff(a.k_values.size());
    for (size_t k = 0; k < diff.size(); ++k) diff[k] = a.k_values[k] - b->k_values[k];
    out.mean_k_difference = expectation(a.density, diff);
  }
  return out;
}

namespace detail {

inline cdouble characteristic_value(const DiscreteDensity& mu,
                                    const std::vector<double>& k, double t) {
  cdouble acc = 0.0;
  for (size_t a = 0; a < k.size(); ++a) {
    acc += mu.base.weights[a] * mu.values[a] * std::exp(cdouble(0.0, t * k[a]));
  }
  return acc;
}

inline void check_step(double step) {
  if (!(step > 0.0)) throw domain_error("characteristic_derivative: step must be positive");
  if (step > 1e-3) throw domain_error("characteristic_derivative: step must be <= 1e-3");
}

}  // namespace detail

// -i d/dt <e^{itK}>_mu at t = 0 by symmetric difference; converges to <K>_mu.
inline double characteristic_derivative(const std::vector<double>& k,
                                        const DiscreteDensity& mu, double step) {
  detail::check_step(step);
  mu.require_probability("characteristic_derivative");
  if (k.size() != mu.base.size()) {
    throw validation_error("characteristic_derivative: one K value per atom required");
  }
  const cdouble fwd = detail::characteristic_value(mu, k, step);
  const cdouble bwd = detail::characteristic_value(mu, k, -step);
  return (cdouble(0.0, -0.5) / step * (fwd - bwd)).real();
}

// Two-state variant on <e^{itK1} e^{-itK2}>_mu; converges to <K1 - K2>_mu.
inline double characteristic_derivative_pair(const std::vector<double>& k1,
                                             const std::vector<double>& k2,
                                             const DiscreteDensity& mu, double step) {
  detail::check_step(step);
  if (k1.size() != k2.size()) {
    throw validation_error("characteristic_derivative_pair: K lists must match");
  }
  std::vector<double> diff(k1.size());
  for (size_t a = 0; a < k1.size(); ++a) diff[a] = k1[a] - k2[a];
  return characteristic_derivative(diff, mu, step);
}

}  // namespace entropy_lab
