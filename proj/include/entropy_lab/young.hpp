#pragma once

#include "entropy_lab/core.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <utility>

namespace entropy_lab {

// Scalar Young-function layer. Everything here is plain real arithmetic on
// [0, inf); the matrix and crossed-product modules reuse these evaluators
// through the functional calculus.
//
// psi_log(t) = t log(t+1)
// psi_ent(t) = max(t, t log(t+1))   (= t for t <= e-1)
// phi_*      = Luxemburg fundamental function 1 / psi_*^{-1}(1/t)
// zeta_1     = t / phi_ent(t),  zeta_log = phi_log(t) / phi_ent(t)

inline double psi_log_eval(double t) { return t * std::log1p(t); }

inline double psi_ent_eval(double t) { return std::max(t, psi_log_eval(t)); }

// Inverse of an increasing Young function by doubling + bisection,
// resolved to ~1e-13 relative.
inline double young_inverse_bisect(const std::function<double(double)>& psi, double y) {
  if (y < 0.0) throw domain_error("young inverse: negative argument");
  if (y == 0.0) return 0.0;
  double hi = 1.0;
  int guard = 0;
  while (psi(hi) < y) {
    hi *= 2.0;
    if (++guard > 2100) throw domain_error("young inverse: function never reaches target");
  }
  double lo = 0.0;
  return bisect_increasing(psi, y, lo, hi);
}

inline double psi_log_inverse(double y) {
  return young_inverse_bisect([](double t) { return psi_log_eval(t); }, y);
}

// psi_ent = max(id, psi_log), hence psi_ent^{-1} = min(id, psi_log^{-1}).
inline double psi_ent_inverse(double y) {
  if (y < 0.0) throw domain_error("young inverse: negative argument");
  return std::min(y, psi_log_inverse(y));
}

inline double phi_log_eval(double t) {
  if (t < 0.0) throw domain_error("phi_log: negative argument");
  if (t == 0.0) return 0.0;
  return 1.0 / psi_log_inverse(1.0 / t);
}

// Closed form from the psi_log shape: phi_log^{-1}(t) = t / log(1/t + 1).
inline double phi_log_inverse(double t) {
  if (t < 0.0) throw domain_error("phi_log_inverse: negative argument");
  if (t == 0.0) return 0.0;
  return t / std::log1p(1.0 / t);
}

inline double phi_ent_eval(double t) { return std::max(t, phi_log_eval(t)); }

inline double phi_ent_inverse(double t) {
  if (t < 0.0) throw domain_error("phi_ent_inverse: negative argument");
  return std::min(t, phi_log_inverse(t));
}

inline double zeta_1_eval(double t) {
  if (t < 0.0) throw domain_error("zeta_1: negative argument");
  if (t == 0.0) return 0.0;  // t/phi_ent(t) -> 0 as t -> 0+
  return t / phi_ent_eval(t);
}

inline double zeta_log_eval(double t) {
  if (t < 0.0) throw domain_error("zeta_log: negative argument");
  if (t == 0.0) return 1.0;  // phi_ent = phi_log near 0, ratio -> 1
  return phi_log_eval(t) / phi_ent_eval(t);
}

// A named convex Young function with evaluator and inverse.
class YoungFunction {
 public:
  static const YoungFunction& psi_log() {
    static const YoungFunction f{"psi_log", [](double t) { return psi_log_eval(t); },
                                 [](double y) { return psi_log_inverse(y); }};
    return f;
  }
  static const YoungFunction& psi_ent() {
    static const YoungFunction f{"psi_ent", [](double t) { return psi_ent_eval(t); },
                                 [](double y) { return psi_ent_inverse(y); }};
    return f;
  }
  static YoungFunction custom(std::string name, std::function<double(double)> eval) {
    auto inv = [eval](double y) { return young_inverse_bisect(eval, y); };
    return YoungFunction{std::move(name), std::move(eval), std::move(inv)};
  }

  double operator()(double t) const {
    if (t < 0.0) throw domain_error("Young function: negative argument");
    return eval_(t);
  }
  double inverse(double y) const {
    if (y < 0.0) throw domain_error("Young inverse: negative argument");
    return inverse_(y);
  }
  const std::string& name() const { return name_; }

 private:
  YoungFunction(std::string name, std::function<double(double)> eval,
                std::function<double(double)> inverse)
      : name_(std::move(name)), eval_(std::move(eval)), inverse_(std::move(inverse)) {}

  std::string name_;
  std::function<double(double)> eval_;
  std::function<double(double)> inverse_;
};

inline double young_eval(const YoungFunction& psi, double t) { return psi(t); }
inline double young_inverse(const YoungFunction& psi, double y) { return psi.inverse(y); }

// Conjugate Young function psi*(s) = sup_t (s t - psi(t)), taken over a
// log-spaced grid [1e-8, 1e8] (4097 points) and sharpened by golden section
// around the grid maximum.
inline double conjugate_young(const YoungFunction& psi, double s) {
  if (s < 0.0) throw domain_error("conjugate Young: negative slope");
  if (s == 0.0) return 0.0;
  static const std::vector<double> grid = log_grid(1e-8, 1e8, 4097);
  auto objective = [&](double t) { return s * t - psi(t); };
  size_t best = 0;
  double best_val = objective(grid[0]);
  for (size_t k = 1; k < grid.size(); ++k) {
    const double v = objective(grid[k]);
    if (v > best_val) {
      best_val = v;
      best = k;
    }
  }
  const double lo = grid[best > 0 ? best - 1 : 0];
  const double hi = grid[std::min(best + 1, grid.size() - 1)];
  const double t_star =
      golden_section_minimize([&](double t) { return -objective(t); }, lo, hi, 1e-12 * hi);
  return std::max(0.0, std::max(best_val, objective(t_star)));
}

enum class NormFlavor { luxemburg, orlicz };

// Fundamental function of the Orlicz space generated by psi: the norm of an
// indicator of measure t. Luxemburg flavor 1/psi^{-1}(1/t); Orlicz flavor
// t (psi*)^{-1}(1/t) with psi* the numerical conjugate.
inline double fundamental(const YoungFunction& psi, NormFlavor flavor, double t) {
  if (!(t > 0.0)) throw domain_error("fundamental: argument must be positive");
  if (flavor == NormFlavor::luxemburg) {
    if (&psi == &YoungFunction::psi_log()) return phi_log_eval(t);
    if (&psi == &YoungFunction::psi_ent()) return phi_ent_eval(t);
    return 1.0 / psi.inverse(1.0 / t);
  }
  auto conj = [&psi](double u) { return conjugate_young(psi, u); };
  return t * young_inverse_bisect(conj, 1.0 / t);
}

// Inverse of the Luxemburg fundamental function (closed form for the named
// pair, bisection otherwise).
inline double fundamental_inverse(const YoungFunction& psi, NormFlavor flavor, double y) {
  if (y < 0.0) throw domain_error("fundamental_inverse: negative argument");
  if (y == 0.0) return 0.0;
  if (flavor == NormFlavor::luxemburg) {
    if (&psi == &YoungFunction::psi_log()) return phi_log_inverse(y);
    if (&psi == &YoungFunction::psi_ent()) return phi_ent_inverse(y);
  }
  auto fwd = [&](double t) { return fundamental(psi, flavor, t); };
  return young_inverse_bisect(fwd, y);
}

}  // namespace entropy_lab
