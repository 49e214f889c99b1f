#include <cmath>
#include <random>

#include "doctest.h"
#include "pird/baselines.hpp"
#include "pird/decomposition.hpp"
#include "pird/error.hpp"
#include "pird/scenarios.hpp"
#include "support/random_var.hpp"

using namespace pird;
using Eigen::MatrixXd;

namespace {

const double kSingle = -0.5 * std::log(1 - 0.64);
const double kJoint = 0.5 * std::log(0.36 / (1 + 2 * 0.512 - 3 * 0.64));

MatrixXd equicorrelated(int q, double r) {
  MatrixXd c = MatrixXd::Constant(q, q, r);
  c.diagonal().setOnes();
  return c;
}

}  // namespace

TEST_CASE("Gaussian mutual information") {
  CHECK(gaussian_mi(MatrixXd::Identity(3, 3) * 2.0, 0, {1, 2}) == 0.0);
  CHECK(gaussian_mi(equicorrelated(2, 0.8), 0, {1}) == doctest::Approx(kSingle).epsilon(1e-12));
  CHECK(gaussian_mi(equicorrelated(3, 0.8), 0, {1, 2}) == doctest::Approx(kJoint).epsilon(1e-12));
  CHECK(kJoint == doctest::Approx(0.620856566).epsilon(1e-9));
  MatrixXd bad(2, 2);
  bad << 1, 2, 2, 1;
  CHECK_THROWS_AS(gaussian_mi(bad, 0, {1}), Error);
}

TEST_CASE("static PID") {
  const auto r = static_pid(build_scenario(make_sim1(0.0)), 0, {1, 2});
  CHECK(r.redundancy == doctest::Approx(kSingle).epsilon(1e-10));
  CHECK(std::abs(r.unique[0]) < 1e-12);
  CHECK(std::abs(r.unique[1]) < 1e-12);
  CHECK(r.synergy == doctest::Approx(kJoint - kSingle).epsilon(1e-10));

  const auto full = coarse_grained(psd_from_var(build_scenario(make_sim1(0.0)), FrequencyGrid()), 0,
                                   {1, 2}, {})
                        .front();
  CHECK(std::abs(full.redundancy - r.redundancy) < 1e-6);
  CHECK(std::abs(full.synergy - r.synergy) < 1e-6);

  const auto z = static_pid(VarModel({}, MatrixXd::Identity(3, 3)), 0, {1, 2});
  CHECK(z.mi_joint == 0.0);
  CHECK(z.redundancy == 0.0);
  CHECK(z.synergy == 0.0);

  for (double c : {0.2, 0.6}) {
    const auto s = static_pid(build_scenario(make_sim1(c)), 0, {1, 2});
    double sum = s.redundancy + s.synergy;
    for (std::size_t m = 0; m < 2; ++m) {
      sum += s.unique[m];
      CHECK(std::abs(s.unique[m] - (s.mi_marginals[m] - s.redundancy)) < 1e-12);
    }
    CHECK(std::abs(sum - s.mi_joint) < 1e-10);
  }
}

TEST_CASE("transfer entropy") {
  SUBCASE("sim2 at c = 0: Y's own past says nothing, the sources say everything") {
    const auto m = build_scenario(make_sim2(0.0));
    CHECK(transfer_entropy(m, {1, 2}, 0) == doctest::Approx(0.5 * std::log(4.2)).epsilon(1e-10));
  }
  SUBCASE("sim2 at c = 0.8 has no coupling into Y") {
    const auto m = build_scenario(make_sim2(0.8));
    CHECK(std::abs(transfer_entropy(m, {1, 2}, 0)) < 1e-6);
    CHECK(std::abs(transfer_entropy(m, {1}, 0)) < 1e-6);
    CHECK(transfer_entropy(m, {0}, 1) > 0.1);
  }
  SUBCASE("target among the drivers is rejected") {
    const auto m = build_scenario(make_sim2(0.3));
    CHECK_THROWS_AS(transfer_entropy(m, {0, 1}, 0), Error);
  }
  SUBCASE("reduced-order convergence") {
    for (const auto& m : {build_scenario(make_sim1(0.8)), build_scenario(make_sim3())}) {
      const std::size_t q = default_reduced_order(m);
      const double a = transfer_entropy(m, {1}, 0, q);
      const double b = transfer_entropy(m, {1}, 0, 2 * q);
      CHECK(std::abs(a - b) < 1e-6);
      CHECK(a >= -1e-10);
    }
  }
  SUBCASE("default order") {
    CHECK(default_reduced_order(build_scenario(make_sim2(0.2))) == 32);
    CHECK(default_reduced_order(build_scenario(make_sim1(0.2))) == 32);
    std::vector<MatrixXd> a(5, MatrixXd::Zero(1, 1));
    a[4](0, 0) = 0.5;
    CHECK(default_reduced_order(VarModel(a, MatrixXd::Identity(1, 1))) == 40);
  }
}

TEST_CASE("instantaneous information") {
  CHECK(instantaneous_info(build_scenario(make_sim1(0.0)), {1, 2}, 0) ==
        doctest::Approx(kJoint).epsilon(1e-12));
  for (double c : {0.0, 0.4, 0.8})
    CHECK(instantaneous_info(build_scenario(make_sim2(c)), {1, 2}, 0) == 0.0);
}

TEST_CASE("MIR splits into two transfers and an instantaneous term") {
  std::mt19937_64 rng(53);
  std::vector<VarModel> models{build_scenario(make_sim1(0.0)), build_scenario(make_sim1(0.8)),
                               build_scenario(make_sim2(0.3)), build_scenario(make_sim3())};
  for (int i = 0; i < 6; ++i) models.push_back(testing::random_stable_var(rng));
  for (const auto& m : models) {
    std::vector<std::size_t> src;
    for (std::size_t i = 1; i < m.dim(); ++i) src.push_back(i);
    const double mir = integrate_full(spectral_mir(psd_from_var(m, FrequencyGrid()), 0, src));
    const auto terms = mir_terms(m, 0, src);
    CHECK(std::abs(mir - terms.total()) < 1e-4);
    CHECK(terms.to_target >= -1e-10);
    CHECK(terms.from_target >= -1e-10);
  }
}

TEST_CASE("TE-based PID") {
  SUBCASE("sim2 at c = 0.8 vanishes") {
    for (auto mode : {MarginalTe::bivariate, MarginalTe::conditioned}) {
      const auto r = te_pid(build_scenario(make_sim2(0.8)), 0, {1, 2}, 0, mode);
      CHECK(std::abs(r.te_joint) < 1e-6);
      CHECK(std::abs(r.redundancy) < 1e-6);
      CHECK(std::abs(r.synergy) < 1e-6);
      CHECK(std::abs(r.unique[0]) < 1e-6);
      CHECK(std::abs(r.unique[1]) < 1e-6);
    }
  }
  SUBCASE("sim2 at c = 0 matches the PIRD") {
    const auto m = build_scenario(make_sim2(0.0));
    const auto te = te_pid(m, 0, {1, 2});
    const auto pird = coarse_grained(psd_from_var(m, FrequencyGrid()), 0, {1, 2}, {}).front();
    CHECK(std::abs(te.te_joint - pird.joint_mir) < 1e-4);
    CHECK(std::abs(te.redundancy - pird.redundancy) < 1e-4);
    CHECK(std::abs(te.synergy - pird.synergy) < 1e-4);
    CHECK(std::abs(te.unique[0] - pird.unique[0]) < 1e-4);
    CHECK(std::abs(te.unique[1] - pird.unique[1]) < 1e-4);
  }
  SUBCASE("symmetric sources have no unique transfer") {
    MatrixXd a = MatrixXd::Zero(3, 3);
    a(0, 1) = a(0, 2) = 0.4;
    a(1, 1) = a(2, 2) = 0.5;
    const auto r = te_pid(VarModel({a}, MatrixXd::Identity(3, 3)), 0, {1, 2});
    CHECK(std::abs(r.unique[0]) < 1e-12);
    CHECK(std::abs(r.unique[1]) < 1e-12);
    CHECK(std::abs(r.redundancy + r.synergy - r.te_joint) < 1e-10);
  }
}
