#include <cmath>
#include <random>

#include "doctest.h"
#include "pird/error.hpp"
#include "pird/scenarios.hpp"
#include "pird/var_model.hpp"
#include "support/random_var.hpp"

using namespace pird;
using Eigen::MatrixXd;

namespace {

VarModel ar1(double a, double var = 1.0) {
  return VarModel({MatrixXd::Constant(1, 1, a)}, MatrixXd::Constant(1, 1, var));
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no pird::Error thrown");
  return ErrorKind::format;
}

}  // namespace

TEST_CASE("pole pairs to AR coefficients") {
  auto [a1, a2] = poles_to_coeffs(0.8, 0.3);
  CHECK(a1 == doctest::Approx(-0.494427).epsilon(1e-5));
  CHECK(a2 == doctest::Approx(-0.64));
  std::tie(a1, a2) = poles_to_coeffs(0.9, 0.1);
  CHECK(a1 == doctest::Approx(1.456231).epsilon(1e-5));
  CHECK(a2 == doctest::Approx(-0.81));
  CHECK(kind_of([] { poles_to_coeffs(1.0, 0.1); }) == ErrorKind::numerical);
  CHECK(kind_of([] { poles_to_coeffs(0.5, 0.7); }) == ErrorKind::argument);
}

TEST_CASE("scenario models") {
  SUBCASE("sim1 at c = 0 is memoryless with 0.8 cross-covariances") {
    const auto m = build_scenario(make_sim1(0.0));
    CHECK(m.dim() == 3);
    CHECK(m.is_memoryless());
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(m.sigma()(i, j) == doctest::Approx(i == j ? 1.0 : 0.8));
    CHECK(m.names() == std::vector<std::string>{"Y", "X1", "X2"});
  }
  SUBCASE("sim1 couplings and poles") {
    const double c = 0.5;
    const auto m = build_scenario(make_sim1(c));
    CHECK(m.order() == 4);
    CHECK(m.coeff(1)(0, 1) == doctest::Approx(c));
    CHECK(m.coeff(2)(0, 2) == doctest::Approx(c));
    const auto [x1a, x1b] = poles_to_coeffs(c, 0.1);
    CHECK(m.coeff(1)(1, 1) == doctest::Approx(x1a));
    CHECK(m.coeff(2)(1, 1) == doctest::Approx(x1b));
    // X2's polynomial is the product of two pole pairs; its lag-4 term is
    // the product of the two squared moduli.
    CHECK(m.coeff(4)(2, 2) == doctest::Approx(-(c * c) * (1.125 * c) * (1.125 * c)));
    CHECK(m.sigma()(0, 1) == doctest::Approx(0.3));
  }
  SUBCASE("sim2 couplings") {
    const double c = 0.3;
    const auto m = build_scenario(make_sim2(c));
    CHECK(m.order() == 1);
    CHECK(m.coeff(1)(0, 1) == doctest::Approx(0.8 - c));
    CHECK(m.coeff(1)(0, 2) == doctest::Approx(1.6 - 2 * c));
    CHECK(m.coeff(1)(1, 0) == doctest::Approx(c));
    CHECK(m.coeff(1)(2, 0) == doctest::Approx(2 * c));
    CHECK(m.sigma().isIdentity());
  }
  SUBCASE("sim3 structure") {
    const auto m = build_scenario(make_sim3());
    CHECK(m.dim() == 4);
    CHECK(m.order() == 2);
    CHECK(m.coeff(1)(2, 1) == 1.0);
    CHECK(m.coeff(1)(0, 1) == 1.0);
    CHECK(m.coeff(1)(0, 3) == 1.0);
    CHECK(m.coeff(1)(3, 3) == doctest::Approx(1.456231).epsilon(1e-5));
    CHECK(is_stable(m));
  }
  SUBCASE("parameter validation") {
    CHECK(kind_of([] { build_scenario(make_sim1(0.9)); }) == ErrorKind::argument);
    CHECK(kind_of([] { build_scenario({ScenarioId::sim3, {{"c", 0.1}}}); }) ==
          ErrorKind::argument);
    CHECK(kind_of([] { parse_scenario_id("sim4"); }) == ErrorKind::argument);
  }
}

TEST_CASE("model validation") {
  CHECK(kind_of([] { VarModel({}, MatrixXd::Identity(2, 3)); }) == ErrorKind::argument);
  MatrixXd asym = MatrixXd::Identity(2, 2);
  asym(0, 1) = 0.5;
  CHECK_THROWS_AS(VarModel({}, asym), Error);
  MatrixXd indefinite(2, 2);
  indefinite << 1, 2, 2, 1;
  CHECK_THROWS_AS(VarModel({}, indefinite), Error);
  CHECK_THROWS_AS(VarModel({}, MatrixXd::Identity(2, 2), 0.0), Error);
  CHECK_THROWS_AS(VarModel({MatrixXd::Identity(3, 3)}, MatrixXd::Identity(2, 2)), Error);
}

TEST_CASE("stability") {
  CHECK(is_stable(ar1(0.99), 0.005));
  CHECK_FALSE(is_stable(ar1(0.999), 0.005));
  CHECK_FALSE(is_stable(ar1(1.0)));
  CHECK(spectral_radius(ar1(-0.7)) == doctest::Approx(0.7));
  CHECK(spectral_radius(VarModel({}, MatrixXd::Identity(2, 2))) == 0.0);
  CHECK(kind_of([] { simulate(ar1(1.01), 10, 10, 1); }) == ErrorKind::numerical);
}

TEST_CASE("simulation") {
  SUBCASE("deterministic per seed") {
    const auto m = build_scenario(make_sim3());
    const auto a = simulate(m, 500, 100, 42);
    const auto b = simulate(m, 500, 100, 42);
    const auto c = simulate(m, 500, 100, 43);
    CHECK(a.samples == b.samples);
    CHECK(a.samples != c.samples);
    CHECK(a.length() == 500);
    CHECK(a.names == m.names());
  }
  SUBCASE("white noise reproduces the innovation covariance") {
    const auto m = build_scenario(make_sim1(0.0));
    const auto ts = simulate(m, 200000, 0, 3);
    const MatrixXd centered = ts.samples.rowwise() - ts.samples.colwise().mean();
    const MatrixXd cov = centered.transpose() * centered / double(ts.length() - 1);
    CHECK((cov - m.sigma()).cwiseAbs().maxCoeff() < 0.02);
  }
  SUBCASE("AR(1) variance") {
    const auto ts = simulate(ar1(0.5), 1000000, 1000, 5);
    const double mean = ts.samples.mean();
    const double var = (ts.samples.array() - mean).square().sum() / double(ts.length() - 1);
    CHECK(var == doctest::Approx(4.0 / 3.0).epsilon(0.01));
  }
}

TEST_CASE("OLS fit") {
  SUBCASE("recovers sim3 coefficients") {
    const auto truth = build_scenario(make_sim3());
    const auto fit = fit_ols(simulate(truth, 100000, 1000, 7), 2);
    for (std::size_t k = 1; k <= 2; ++k)
      CHECK((fit.coeff(k) - truth.coeff(k)).cwiseAbs().maxCoeff() < 0.02);
    CHECK((fit.sigma() - truth.sigma()).cwiseAbs().maxCoeff() < 0.03);
  }
  SUBCASE("order zero is the sample covariance") {
    const auto ts = simulate(build_scenario(make_sim1(0.0)), 5000, 0, 1);
    const auto fit = fit_ols(ts, 0);
    CHECK(fit.order() == 0);
    const MatrixXd centered = ts.samples.rowwise() - ts.samples.colwise().mean();
    const MatrixXd cov = centered.transpose() * centered / double(ts.length());
    CHECK((fit.sigma() - cov).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("rank deficiency is an estimation error") {
    auto ts = simulate(build_scenario(make_sim2(0.3)), 2000, 100, 2);
    ts.samples.col(1).setConstant(3.0);
    CHECK(kind_of([&] { fit_ols(ts, 1); }) == ErrorKind::estimation);
  }
  SUBCASE("too few samples") {
    const auto ts = simulate(ar1(0.5), 5, 0, 1);
    CHECK(kind_of([&] { fit_ols(ts, 4); }) == ErrorKind::argument);
  }
}

TEST_CASE("AIC order selection") {
  SUBCASE("AR(1)") {
    const auto sel = select_order_aic(simulate(ar1(0.6), 20000, 500, 9), 6);
    CHECK(sel.order == 1);
    CHECK(sel.aic.size() == 6);
  }
  SUBCASE("VAR(2)") {
    const auto sel = select_order_aic(simulate(build_scenario(make_sim3()), 50000, 500, 10), 8);
    CHECK(sel.order == 2);
  }
  SUBCASE("white noise coefficients stay within three standard errors") {
    const std::size_t n = 20000;
    const auto fit = fit_ols(simulate(VarModel({}, MatrixXd::Identity(2, 2)), n, 0, 4), 1);
    const double se = 1.0 / std::sqrt(double(n));
    CHECK(fit.coeff(1).cwiseAbs().maxCoeff() < 3 * se);
  }
}

TEST_CASE("Lyapunov and autocovariances") {
  CHECK(zero_lag_covariance(ar1(0.5))(0, 0) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  const auto sim1 = build_scenario(make_sim1(0.0));
  CHECK((zero_lag_covariance(sim1) - sim1.sigma()).cwiseAbs().maxCoeff() < 1e-12);

  const auto g = autocovariance_sequence(ar1(0.5), 6);
  for (std::size_t k = 0; k <= 6; ++k)
    CHECK(g[k](0, 0) == doctest::Approx(4.0 / 3.0 * std::pow(0.5, double(k))).epsilon(1e-12));

  std::mt19937_64 rng(17);
  for (int t = 0; t < 10; ++t) {
    const auto m = testing::random_stable_var(rng);
    const std::size_t p = m.order();
    const auto gam = autocovariance_sequence(m, p + 40);
    // Lyapunov: Gamma_0 = sum_k A_k Gamma_k^T + Sigma.
    MatrixXd rhs = m.sigma();
    for (std::size_t k = 1; k <= p; ++k) rhs += m.coeff(k) * gam[k].transpose();
    CHECK((gam[0] - rhs).cwiseAbs().maxCoeff() < 1e-10);
    // Yule-Walker at lags 1..p+3.
    for (std::size_t lag = 1; lag <= p + 3; ++lag) {
      MatrixXd pred = MatrixXd::Zero(m.dim(), m.dim());
      for (std::size_t k = 1; k <= p; ++k) {
        const MatrixXd gk = lag >= k ? gam[lag - k] : MatrixXd(gam[k - lag].transpose());
        pred += m.coeff(k) * gk;
      }
      CHECK((gam[lag] - pred).cwiseAbs().maxCoeff() < 1e-10);
    }
    CHECK(gam.back().cwiseAbs().maxCoeff() < 1e-3 * gam[0].cwiseAbs().maxCoeff());
  }
}

TEST_CASE("Whittle recursion matches a dense block-Toeplitz solve") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 8; ++t) {
    const auto m = testing::random_stable_var(rng);
    const auto q = static_cast<Eigen::Index>(m.dim());
    const std::size_t order = 5;
    const auto gam = autocovariance_sequence(m, order);
    const auto pred = whittle_predictor(gam, order);

    // Normal equations [A_1..A_n] R = [G_1..G_n], R(i,j) = Gamma_{j-i}.
    const Eigen::Index n = static_cast<Eigen::Index>(order);
    MatrixXd r(n * q, n * q), g(q, n * q);
    for (Eigen::Index i = 0; i < n; ++i) {
      g.block(0, i * q, q, q) = gam[i + 1];
      for (Eigen::Index j = 0; j < n; ++j)
        r.block(i * q, j * q, q, q) =
            j >= i ? gam[j - i] : MatrixXd(gam[i - j].transpose());
    }
    const MatrixXd a = r.transpose().ldlt().solve(g.transpose()).transpose();
    MatrixXd v = gam[0];
    for (Eigen::Index k = 0; k < n; ++k) {
      CHECK((pred.coeffs[k] - a.block(0, k * q, q, q)).cwiseAbs().maxCoeff() < 1e-9);
      v -= a.block(0, k * q, q, q) * gam[k + 1].transpose();
    }
    CHECK((pred.error_cov - v).cwiseAbs().maxCoeff() < 1e-9);
    if (m.order() <= order) CHECK((pred.error_cov - m.sigma()).cwiseAbs().maxCoeff() < 1e-9);
  }
}
