#include "entropy_lab/classical.hpp"
#include "entropy_lab/random_states.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace entropy_lab;
using Catch::Approx;

namespace {

// frozen oracle values
constexpr double kQubitKL = 0.0822828785050518;
constexpr double kTwoLevelMeanK = -0.582203108888218;  // beta = 1, H = (0, 1)

DiscreteDensity density2(double p0, double p1) {
  return DiscreteDensity(DiscreteMeasure::counting(2), {p0, p1});
}

std::vector<double> random_probability(StateSampler& s, size_t n) {
  std::vector<double> p(n);
  double total = 0.0;
  for (auto& v : p) total += (v = s.uniform(0.05, 1.0));
  for (auto& v : p) v /= total;
  return p;
}

}  // namespace

TEST_CASE("Radon-Nikodym derivatives") {
  DiscreteMeasure mu({"a", "b"}, {0.7, 0.3});
  DiscreteMeasure counting = DiscreteMeasure::counting(2);

  auto self = radon_nikodym(mu, mu);
  CHECK(self.values[0] == Approx(1.0));
  CHECK(self.values[1] == Approx(1.0));

  DiscreteMeasure mu2({"a0", "a1"}, {0.7, 0.3});
  auto d = radon_nikodym(mu2, counting);
  CHECK(d.values[0] == Approx(0.7));
  CHECK(d.values[1] == Approx(0.3));

  // reconstruction is exact on the support
  DiscreteMeasure lam({"x", "y", "z"}, {2.0, 0.0, 0.5});
  DiscreteMeasure nu({"x", "y", "z"}, {1.0, 0.0, 0.25});
  auto rn = radon_nikodym(nu, lam);
  for (size_t k = 0; k < 3; ++k) {
    CHECK(rn.values[k] * lam.weights[k] == nu.weights[k]);
  }
}

TEST_CASE("Radon-Nikodym chain rule holds atomwise") {
  StateSampler sampler(41);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<std::string> atoms{"a", "b", "c", "d"};
    std::vector<double> wm(4), wl(4), wn(4);
    for (size_t k = 0; k < 4; ++k) {
      wm[k] = sampler.uniform(0.1, 2.0);
      wl[k] = sampler.uniform(0.1, 2.0);
      wn[k] = sampler.uniform(0.1, 2.0);
    }
    DiscreteMeasure mu(atoms, wm), lam(atoms, wl), nu(atoms, wn);
    auto direct = radon_nikodym(mu, nu);
    auto left = radon_nikodym(mu, lam);
    auto right = radon_nikodym(lam, nu);
    for (size_t k = 0; k < 4; ++k) {
      CHECK(direct.values[k] == Approx(left.values[k] * right.values[k]).epsilon(1e-12));
    }
  }
}

TEST_CASE("absolute-continuity violations name the atom") {
  DiscreteMeasure mu({"a", "bad"}, {0.5, 0.5});
  DiscreteMeasure lam({"a", "bad"}, {1.0, 0.0});
  CHECK_THROWS_WITH(radon_nikodym(mu, lam), Catch::Matchers::ContainsSubstring("bad"));
}

TEST_CASE("H-functional values") {
  auto uniform4 = DiscreteDensity(DiscreteMeasure::counting(4),
                                  std::vector<double>(4, 0.25));
  CHECK(h_functional(uniform4) == Approx(-std::log(4.0)).epsilon(1e-12));

  auto point = DiscreteDensity(DiscreteMeasure::counting(3), {1.0, 0.0, 0.0});
  CHECK(h_functional(point) == 0.0);

  CHECK(h_functional(density2(0.7, 0.3)) == Approx(-0.610864302054893).epsilon(1e-12));
  CHECK_THROWS_AS(h_functional(density2(0.7, 0.7)), validation_error);
}

TEST_CASE("H-functional sign depends on the reference measure") {
  StateSampler sampler(42);
  // counting base: H <= 0, zero exactly for indicator densities
  for (int rep = 0; rep < 10; ++rep) {
    auto p = DiscreteDensity(DiscreteMeasure::counting(5),
                             random_probability(sampler, 5));
    CHECK(h_functional(p) <= 0.0);
  }
  auto indicator = DiscreteDensity(DiscreteMeasure::counting(4), {0.0, 1.0, 0.0, 0.0});
  CHECK(h_functional(indicator) == 0.0);

  // probability base: H = KL(mu | lambda) >= 0, zero iff the density is the
  // normalized characteristic function of a full-measure set
  DiscreteMeasure prob({"a", "b", "c"}, {0.2, 0.3, 0.5});
  auto flat = DiscreteDensity(prob, {1.0, 1.0, 1.0});
  CHECK(h_functional(flat) == 0.0);
  auto tilted = DiscreteDensity(prob, {2.0, 1.0, 0.6});
  CHECK(h_functional(tilted) > 0.0);
}

TEST_CASE("KL divergence") {
  CHECK(kl_divergence(density2(0.7, 0.3), density2(0.7, 0.3)) == 0.0);
  CHECK(kl_divergence(density2(0.7, 0.3), density2(0.5, 0.5)) ==
        Approx(kQubitKL).epsilon(1e-12));
  CHECK(std::isinf(kl_divergence(density2(1.0, 0.0), density2(0.0, 1.0))));
  CHECK_THROWS_AS(
      kl_divergence(density2(0.5, 0.5),
                    DiscreteDensity(DiscreteMeasure({"x", "y"}, {1.0, 1.0}), {0.5, 0.5})),
      validation_error);

  StateSampler sampler(43);
  for (int rep = 0; rep < 20; ++rep) {
    auto base = DiscreteMeasure::counting(6);
    auto p = DiscreteDensity(base, random_probability(sampler, 6));
    auto q = DiscreteDensity(base, random_probability(sampler, 6));
    CHECK(kl_divergence(p, q) >= 0.0);
    CHECK(kl_divergence(p, p) == 0.0);
    double gap = 0.0;
    for (size_t k = 0; k < 6; ++k) gap = std::max(gap, std::abs(p.values[k] - q.values[k]));
    if (gap > 1e-2) CHECK(kl_divergence(p, q) > 1e-8);  // zero only for equal densities
  }
}

TEST_CASE("uniform-reference offset identity is exact") {
  StateSampler sampler(44);
  for (size_t n : {2u, 4u, 7u}) {
    auto base = DiscreteMeasure::counting(n);
    auto p = DiscreteDensity(base, random_probability(sampler, n));
    auto uniform = DiscreteDensity(base, std::vector<double>(n, 1.0 / double(n)));
    const double lhs = kl_divergence(p, uniform) - h_functional(p) - std::log(double(n));
    CHECK(std::abs(lhs) <= 1e-12);
  }
}

TEST_CASE("Gibbs states") {
  auto flat = gibbs_state({1.0, 1.0, 1.0}, 2.0, DiscreteMeasure::counting(3));
  for (double v : flat.density.values) CHECK(v == Approx(1.0 / 3.0).epsilon(1e-14));

  auto two = gibbs_state({0.0, 1.0}, 1.0, DiscreteMeasure::counting(2));
  CHECK(two.density.values[0] == Approx(0.731058578630005).epsilon(1e-12));
  CHECK(two.density.values[1] == Approx(0.268941421369995).epsilon(1e-12));

  // large beta concentrates on the ground atom
  auto cold = gibbs_state({0.3, 0.1, 0.7}, 200.0, DiscreteMeasure::counting(3));
  CHECK(cold.density.values[1] > cold.density.values[0]);
  CHECK(cold.density.values[1] > cold.density.values[2]);

  CHECK_THROWS_AS(gibbs_state({0.0, 1.0}, 0.0, DiscreteMeasure::counting(2)),
                  domain_error);
  CHECK_THROWS_AS(gibbs_state({0.0}, 1.0, DiscreteMeasure::counting(2)),
                  validation_error);
}

TEST_CASE("Gibbs entropy identities are arithmetic-exact") {
  auto two = gibbs_state({0.0, 1.0}, 1.0, DiscreteMeasure::counting(2));
  auto report = gibbs_entropy_identities(two);
  CHECK(report.h_value == Approx(kTwoLevelMeanK).epsilon(1e-12));
  CHECK(report.mean_k == Approx(kTwoLevelMeanK).epsilon(1e-12));
  CHECK(std::abs(report.h_value - report.mean_k) <= 1e-12);

  // constant energies: both sides equal -log(total reference mass)
  DiscreteMeasure lam({"a", "b", "c"}, {1.0, 1.0, 1.0});
  auto flat = gibbs_state({2.0, 2.0, 2.0}, 1.3, lam);
  auto rep = gibbs_entropy_identities(flat);
  CHECK(rep.h_value == Approx(-std::log(3.0)).epsilon(1e-12));
  CHECK(rep.mean_k == Approx(-std::log(3.0)).epsilon(1e-12));

  // identical pair: both sides of the difference identity vanish
  auto pair = gibbs_entropy_identities(two, &two);
  CHECK(*pair.kl == 0.0);
  CHECK(std::abs(*pair.mean_k_difference) <= 1e-15);

  // random pairs: KL equals <K1 - K2>_mu to rounding
  StateSampler sampler(45);
  for (int rep2 = 0; rep2 < 10; ++rep2) {
    auto base = DiscreteMeasure::counting(4);
    std::vector<double> h1(4), h2(4);
    for (size_t k = 0; k < 4; ++k) {
      h1[k] = sampler.uniform(0.0, 1.5);
      h2[k] = sampler.uniform(0.0, 1.5);
    }
    auto g1 = gibbs_state(h1, sampler.uniform(0.5, 1.0), base);
    auto g2 = gibbs_state(h2, sampler.uniform(0.5, 1.0), base);
    auto r = gibbs_entropy_identities(g1, &g2);
    CHECK(std::abs(r.h_value - r.mean_k) <= 1e-12);
    CHECK(std::abs(*r.kl - *r.mean_k_difference) <= 1e-12);
  }
}

TEST_CASE("characteristic-function derivatives") {
  // constant K returns the constant
  auto uniform = DiscreteDensity(DiscreteMeasure::counting(3),
                                 std::vector<double>(3, 1.0 / 3.0));
  CHECK(characteristic_derivative({0.4, 0.4, 0.4}, uniform, 1e-4) ==
        Approx(0.4).margin(1e-9));

  // two-level Gibbs at step 1e-4 reproduces <K>
  auto two = gibbs_state({0.0, 1.0}, 1.0, DiscreteMeasure::counting(2));
  CHECK(characteristic_derivative(two.k_values, two.density, 1e-4) ==
        Approx(kTwoLevelMeanK).margin(1e-7));

  // pair variant reproduces the KL of (0.7,0.3) against (0.5,0.5)
  auto p = density2(0.7, 0.3);
  std::vector<double> k1{std::log(0.7), std::log(0.3)};
  std::vector<double> k2{std::log(0.5), std::log(0.5)};
  CHECK(characteristic_derivative_pair(k1, k2, p, 1e-4) ==
        Approx(kQubitKL).margin(1e-7));

  CHECK_THROWS_AS(characteristic_derivative({0.0, 0.0}, density2(0.5, 0.5), 0.0),
                  domain_error);
  CHECK_THROWS_AS(characteristic_derivative({0.0, 0.0}, density2(0.5, 0.5), 1e-2),
                  domain_error);
}

TEST_CASE("characteristic derivative meets its accuracy contract") {
  StateSampler sampler(46);
  for (double step : {1e-3, 1e-4}) {
    for (int rep = 0; rep < 10; ++rep) {
      auto p = DiscreteDensity(DiscreteMeasure::counting(5),
                               random_probability(sampler, 5));
      std::vector<double> k(5);
      double k_max = 0.0;
      for (auto& v : k) {
        v = sampler.uniform(-2.0, 2.0);
        k_max = std::max(k_max, std::abs(v));
      }
      const double got = characteristic_derivative(k, p, step);
      const double want = expectation(p, k);
      CHECK(std::abs(got - want) <= 10.0 * step * step * std::pow(k_max, 3.0) + 1e-15);
    }
  }
}
