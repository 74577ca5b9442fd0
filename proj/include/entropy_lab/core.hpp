#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace entropy_lab {

using cdouble = std::complex<double>;
using cmatrix = Eigen::MatrixXcd;
using cvector = Eigen::VectorXcd;
using rvector = Eigen::VectorXd;

// Thrown when a value fails a structural contract (shape, trace, normalization).
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when an operation is applied outside its mathematical domain
// (non-faithful state, function undefined at an eigenvalue, ...).
struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

namespace tol {
// Relative spectral floor: eigenvalues below kSupportRel * lambda_max count as zero.
inline constexpr double kSupportRel = 1e-12;
inline constexpr double kHermitian = 1e-12;
inline constexpr double kTraceOne = 1e-10;
inline constexpr double kCommutator = 1e-10;
}  // namespace tol

inline double frobenius(const cmatrix& m) { return m.norm(); }

inline double operator_norm(const cmatrix& m) {
  return m.jacobiSvd().singularValues()(0);
}

// n log-spaced points on [lo, hi], endpoints included. n == 1 returns {lo}.
inline std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi >= lo) || n < 1) {
    throw validation_error("log_grid: need 0 < lo <= hi and n >= 1");
  }
  std::vector<double> g(static_cast<size_t>(n));
  if (n == 1) {
    g[0] = lo;
    return g;
  }
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int k = 0; k < n; ++k) {
    g[static_cast<size_t>(k)] = std::exp(llo + (lhi - llo) * k / (n - 1));
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

// Root of the increasing function f on [lo, hi] with f(lo) <= target <= f(hi),
// bisected to relative width rel_tol.
inline double bisect_increasing(const std::function<double(double)>& f, double target,
                                double lo, double hi, double rel_tol = 1e-13) {
  for (int it = 0; it < 200 && (hi - lo) > rel_tol * std::max(1e-300, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Golden-section minimum of a unimodal (or boundary-monotone) f on [a, b].
inline double golden_section_minimize(const std::function<double(double)>& f, double a,
                                      double b, double x_tol) {
  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while ((b - a) > x_tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

// Polynomial extrapolation of samples (x_k, y_k) to x = 0 (Neville scheme).
// Returns the full-table value; if `previous` is non-null it receives the
// value obtained from all but the last sample, for an error estimate.
inline double neville_to_zero(const std::vector<double>& x, const std::vector<double>& y,
                              double* previous = nullptr) {
  const size_t n = x.size();
  if (n == 0 || y.size() != n) {
    throw validation_error("neville_to_zero: empty or mismatched samples");
  }
  std::vector<double> t(y);
  for (size_t j = 1; j < n; ++j) {
    for (size_t i = n - 1; i >= j; --i) {
      t[i] = t[i - 1] + (t[i - 1] - t[i]) * x[i - j] / (x[i] - x[i - j]);
      if (i == j) break;
    }
  }
  if (previous) *previous = (n == 1) ? t[0] : t[n - 2];
  return t[n - 1];
}

}  // namespace entropy_lab
