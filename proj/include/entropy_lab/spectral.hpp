#pragma once

#include "entropy_lab/core.hpp"
#include "entropy_lab/young.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace entropy_lab {

// Dense Hermitian linear algebra: eigendecomposition, scalar functional
// calculus, real/imaginary/complex powers, support projections.

class HermitianMatrix {
 public:
  explicit HermitianMatrix(cmatrix m) : m_(std::move(m)) {
    if (m_.rows() < 1 || m_.rows() != m_.cols()) {
      throw validation_error("HermitianMatrix: need a square matrix of dim >= 1");
    }
    const double defect = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (defect > tol::kHermitian) {
      std::ostringstream os;
      os << "HermitianMatrix: hermiticity defect " << defect << " exceeds " << tol::kHermitian;
      throw validation_error(os.str());
    }
  }

  static HermitianMatrix identity(Eigen::Index dim) {
    return HermitianMatrix(cmatrix::Identity(dim, dim));
  }

  Eigen::Index dim() const { return m_.rows(); }
  const cmatrix& mat() const { return m_; }

 private:
  cmatrix m_;
};

struct SpectralDecomposition {
  rvector eigenvalues;   // ascending
  cmatrix eigenvectors;  // orthonormal columns, aligned with eigenvalues

  Eigen::Index dim() const { return eigenvalues.size(); }
  double min_eigenvalue() const { return eigenvalues(0); }
  double max_eigenvalue() const { return eigenvalues(eigenvalues.size() - 1); }

  // V f(Lambda) V* for a per-eigenvalue table of values.
  cmatrix assemble(const rvector& values) const {
    return eigenvectors * values.asDiagonal() * eigenvectors.adjoint();
  }
  cmatrix assemble(const cvector& values) const {
    return eigenvectors * values.asDiagonal() * eigenvectors.adjoint();
  }
};

inline SpectralDecomposition eigh(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<cmatrix> solver(a.mat());
  if (solver.info() != Eigen::Success) {
    throw validation_error("eigh: eigensolver did not converge");
  }
  return SpectralDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

// Positive unit-trace state. The spectral decomposition is computed once at
// construction; every modular/entropy operation reads it from here.
class DensityMatrix {
 public:
  explicit DensityMatrix(cmatrix m) : DensityMatrix(HermitianMatrix(std::move(m))) {}

  explicit DensityMatrix(HermitianMatrix h) : h_(std::move(h)), s_(eigh(h_)) {
    const double tr = h_.mat().trace().real();
    if (std::abs(tr - 1.0) > tol::kTraceOne) {
      std::ostringstream os;
      os << "DensityMatrix: trace " << tr << " is not 1 within " << tol::kTraceOne;
      throw validation_error(os.str());
    }
    const double floor = -tol::kSupportRel * std::max(1.0, s_.max_eigenvalue());
    if (s_.min_eigenvalue() < floor) {
      std::ostringstream os;
      os << "DensityMatrix: eigenvalue " << s_.min_eigenvalue() << " is negative";
      throw validation_error(os.str());
    }
    faithful_ = s_.min_eigenvalue() > tol::kSupportRel * s_.max_eigenvalue();
  }

  static DensityMatrix maximally_mixed(Eigen::Index dim) {
    return DensityMatrix(cmatrix::Identity(dim, dim) / static_cast<double>(dim));
  }
  static DensityMatrix diagonal(const std::vector<double>& p) {
    cmatrix m = cmatrix::Zero(static_cast<Eigen::Index>(p.size()),
                              static_cast<Eigen::Index>(p.size()));
    for (size_t k = 0; k < p.size(); ++k) {
      m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = p[k];
    }
    return DensityMatrix(m);
  }

  Eigen::Index dim() const { return h_.dim(); }
  const cmatrix& mat() const { return h_.mat(); }
  const HermitianMatrix& hermitian() const { return h_; }
  const SpectralDecomposition& spectral() const { return s_; }
  bool faithful() const { return faithful_; }

  void require_faithful(const char* who) const {
    if (!faithful_) {
      std::ostringstream os;
      os << who << ": state is not faithful (eigenvalue " << s_.min_eigenvalue()
         << " below relative floor " << tol::kSupportRel * s_.max_eigenvalue() << ")";
      throw domain_error(os.str());
    }
  }

 private:
  HermitianMatrix h_;
  SpectralDecomposition s_;
  bool faithful_ = false;
};

// Named scalar function for the functional calculus on positive matrices.
// Evaluators see (eigenvalue, spectral scale); the scale carries the support
// cutoff for functions like log that are only applied on the support.
class ScalarFunction {
 public:
  static ScalarFunction log() {
    return {"log", [](double lam, double scale) {
              if (lam <= tol::kSupportRel * scale) return 0.0;  // support restriction
              return std::log(lam);
            }};
  }
  static ScalarFunction pow(double r) {
    std::ostringstream os;
    os << "pow(" << r << ")";
    return {os.str(), [r](double lam, double scale) {
              if (r < 0.0 && lam <= tol::kSupportRel * scale) {
                std::ostringstream err;
                err << "pow(" << r << ") undefined at eigenvalue " << lam;
                throw domain_error(err.str());
              }
              return std::pow(lam, r);
            }};
  }
  // Indicator of (eps, inf). Ties against the spectrum are broken by nudging
  // the threshold up by 2e-12 (half-open interval semantics).
  static ScalarFunction chi_above(double eps) {
    std::ostringstream os;
    os << "chi_above(" << eps << ")";
    ScalarFunction f{os.str(), [eps](double lam, double) { return lam > eps ? 1.0 : 0.0; }};
    f.threshold_ = eps;
    return f;
  }
  static ScalarFunction young_log() {
    return {"young_log", [](double lam, double) { return psi_log_eval(lam); }};
  }
  static ScalarFunction young_ent() {
    return {"young_ent", [](double lam, double) { return psi_ent_eval(lam); }};
  }
  static ScalarFunction phi_log() {
    return {"phi_log", [](double lam, double) { return phi_log_eval(lam); }};
  }
  static ScalarFunction phi_ent() {
    return {"phi_ent", [](double lam, double) { return phi_ent_eval(lam); }};
  }
  static ScalarFunction zeta_1() {
    return {"zeta_1", [](double lam, double) { return zeta_1_eval(lam); }};
  }
  static ScalarFunction zeta_log() {
    return {"zeta_log", [](double lam, double) { return zeta_log_eval(lam); }};
  }
  // Piecewise-linear table on sorted abscissae; eigenvalues outside the table
  // range are a domain error.
  static ScalarFunction custom_table(std::string name,
                                     std::vector<std::pair<double, double>> samples) {
    std::sort(samples.begin(), samples.end());
    return {std::move(name), [samples = std::move(samples)](double lam, double) {
              if (samples.empty() || lam < samples.front().first ||
                  lam > samples.back().first) {
                std::ostringstream err;
                err << "custom table undefined at eigenvalue " << lam;
                throw domain_error(err.str());
              }
              auto hi = std::lower_bound(
                  samples.begin(), samples.end(), lam,
                  [](const auto& s, double v) { return s.first < v; });
              if (hi == samples.begin() || hi->first == lam) return hi->second;
              auto lo = std::prev(hi);
              const double w = (lam - lo->first) / (hi->first - lo->first);
              return lo->second + w * (hi->second - lo->second);
            }};
  }

  double eval(double lam, double scale) const { return fn_(lam, scale); }
  const std::string& name() const { return name_; }
  std::optional<double> threshold() const { return threshold_; }

 private:
  ScalarFunction(std::string name, std::function<double(double, double)> fn)
      : name_(std::move(name)), fn_(std::move(fn)) {}

  std::string name_;
  std::function<double(double, double)> fn_;
  std::optional<double> threshold_;
};

namespace detail {

inline void require_positive(const SpectralDecomposition& s, const char* who) {
  const double floor = -tol::kSupportRel * std::max(1.0, std::abs(s.max_eigenvalue()));
  if (s.min_eigenvalue() < floor) {
    std::ostringstream os;
    os << who << ": matrix is not positive semidefinite (eigenvalue "
       << s.min_eigenvalue() << ")";
    throw domain_error(os.str());
  }
}

inline void require_faithful_spectrum(const SpectralDecomposition& s, const char* who) {
  require_positive(s, who);
  if (!(s.min_eigenvalue() > tol::kSupportRel * s.max_eigenvalue())) {
    std::ostringstream os;
    os << who << ": matrix is singular at eigenvalue " << s.min_eigenvalue();
    throw domain_error(os.str());
  }
}

// e^{z log lambda} per eigenvalue; assumes a faithful spectrum.
inline cmatrix complex_power_of(const SpectralDecomposition& s, cdouble z) {
  cvector w(s.dim());
  for (Eigen::Index k = 0; k < s.dim(); ++k) {
    w(k) = std::exp(z * std::log(s.eigenvalues(k)));
  }
  return s.assemble(w);
}

}  // namespace detail

inline HermitianMatrix apply_scalar_function(const HermitianMatrix& a,
                                             const ScalarFunction& f) {
  SpectralDecomposition s = eigh(a);
  detail::require_positive(s, "apply_scalar_function");
  const double scale = std::max(0.0, s.max_eigenvalue());

  // Tie-break for indicators whose threshold collides with the spectrum.
  ScalarFunction g = f;
  if (f.threshold()) {
    const double eps = *f.threshold();
    for (Eigen::Index k = 0; k < s.dim(); ++k) {
      if (std::abs(s.eigenvalues(k) - eps) <= 1e-12) {
        g = ScalarFunction::chi_above(eps + 2e-12);
        break;
      }
    }
  }

  rvector w(s.dim());
  for (Eigen::Index k = 0; k < s.dim(); ++k) {
    w(k) = g.eval(std::max(0.0, s.eigenvalues(k)), scale);
  }
  cmatrix out = s.assemble(w);
  return HermitianMatrix(0.5 * (out + cmatrix(out.adjoint())));
}

inline cmatrix imaginary_power(const HermitianMatrix& a, double t) {
  SpectralDecomposition s = eigh(a);
  detail::require_faithful_spectrum(s, "imaginary_power");
  return detail::complex_power_of(s, cdouble(0.0, t));
}

inline cmatrix complex_power(const HermitianMatrix& a, cdouble z) {
  SpectralDecomposition s = eigh(a);
  detail::require_faithful_spectrum(s, "complex_power");
  return detail::complex_power_of(s, z);
}

inline HermitianMatrix support_projection(const HermitianMatrix& a) {
  SpectralDecomposition s = eigh(a);
  detail::require_positive(s, "support_projection");
  const double cut = tol::kSupportRel * std::max(0.0, s.max_eigenvalue());
  rvector w(s.dim());
  for (Eigen::Index k = 0; k < s.dim(); ++k) {
    w(k) = s.eigenvalues(k) > cut ? 1.0 : 0.0;
  }
  cmatrix out = s.assemble(w);
  return HermitianMatrix(0.5 * (out + cmatrix(out.adjoint())));
}

}  // namespace entropy_lab
