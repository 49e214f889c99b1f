#include "pird/scenarios.hpp"

#include <cmath>
#include <numbers>

#include "pird/error.hpp"

namespace pird {
namespace {

// AR polynomial 1 - a_1 z - ... - a_p z^p represented by (a_1..a_p);
// returns the coefficients of the product polynomial.
std::vector<double> multiply_ar(const std::vector<double>& a,
                                const std::vector<double>& b) {
  std::vector<double> pa{1.0}, pb{1.0};
  for (double x : a) pa.push_back(-x);
  for (double x : b) pb.push_back(-x);
  std::vector<double> prod(pa.size() + pb.size() - 1, 0.0);
  for (std::size_t i = 0; i < pa.size(); ++i)
    for (std::size_t j = 0; j < pb.size(); ++j) prod[i + j] += pa[i] * pb[j];
  std::vector<double> out;
  for (std::size_t k = 1; k < prod.size(); ++k) out.push_back(-prod[k]);
  return out;
}

std::vector<double> pole_pair(double rho, double f) {
  const auto [a1, a2] = poles_to_coeffs(rho, f);
  return {a1, a2};
}

double coupling(const Scenario& s) {
  const auto it = s.parameters.find("c");
  if (it == s.parameters.end())
    fail(ErrorKind::argument, to_string(s.id) + " requires parameter c");
  const double c = it->second;
  if (!(c >= 0.0 && c <= 0.8))
    fail(ErrorKind::argument, to_string(s.id) + ": c must lie in [0, 0.8], got " +
                                  std::to_string(c));
  return c;
}

std::vector<Eigen::MatrixXd> zero_coeffs(std::size_t p, Eigen::Index q) {
  return std::vector<Eigen::MatrixXd>(p, Eigen::MatrixXd::Zero(q, q));
}

VarModel build_sim1(double c) {
  constexpr int Y = 0, X1 = 1, X2 = 2;
  auto a = zero_coeffs(4, 3);
  a[0](Y, X1) = c;
  a[1](Y, X2) = c;
  const auto x1 = pole_pair(c, 0.1);
  for (std::size_t k = 0; k < x1.size(); ++k) a[k](X1, X1) = x1[k];
  const auto x2 = multiply_ar(pole_pair(c, 0.1), pole_pair(1.125 * c, 0.3));
  for (std::size_t k = 0; k < x2.size(); ++k) a[k](X2, X2) = x2[k];

  Eigen::MatrixXd sigma = Eigen::MatrixXd::Constant(3, 3, 0.8 - c);
  sigma.diagonal().setOnes();
  return VarModel(std::move(a), sigma, 1.0, {"Y", "X1", "X2"});
}

VarModel build_sim2(double c) {
  constexpr int Y = 0, X1 = 1, X2 = 2;
  auto a = zero_coeffs(1, 3);
  a[0](Y, X1) = 0.8 - c;
  a[0](Y, X2) = 1.6 - 2.0 * c;
  a[0](X1, Y) = c;
  a[0](X2, Y) = 2.0 * c;
  return VarModel(std::move(a), Eigen::MatrixXd::Identity(3, 3), 1.0,
                  {"Y", "X1", "X2"});
}

VarModel build_sim3() {
  constexpr int Y = 0, X1 = 1, X2 = 2, X3 = 3;
  auto a = zero_coeffs(2, 4);
  a[0](Y, X1) = 1.0;
  a[0](Y, X3) = 1.0;
  a[0](X2, X1) = 1.0;
  const auto fast = pole_pair(0.8, 0.3);
  const auto slow = pole_pair(0.9, 0.1);
  for (std::size_t k = 0; k < 2; ++k) {
    a[k](X1, X1) = fast[k];
    a[k](X2, X2) = fast[k];
    a[k](X3, X3) = slow[k];
  }
  return VarModel(std::move(a), Eigen::MatrixXd::Identity(4, 4), 1.0,
                  {"Y", "X1", "X2", "X3"});
}

}  // namespace

std::pair<double, double> poles_to_coeffs(double rho, double f, double fs) {
  if (!(rho >= 0.0)) fail(ErrorKind::argument, "pole modulus must be non-negative");
  if (rho >= 1.0)
    fail(ErrorKind::numerical, "pole modulus " + std::to_string(rho) +
                                   " gives an unstable oscillator");
  if (!(fs > 0.0) || !(f >= 0.0 && f <= fs / 2.0))
    fail(ErrorKind::argument, "pole frequency must lie in [0, fs/2]");
  return {2.0 * rho * std::cos(2.0 * std::numbers::pi * f / fs), -rho * rho};
}

ScenarioId parse_scenario_id(const std::string& text) {
  if (text == "sim1") return ScenarioId::sim1;
  if (text == "sim2") return ScenarioId::sim2;
  if (text == "sim3") return ScenarioId::sim3;
  fail(ErrorKind::argument, "unknown scenario '" + text + "' (expected sim1, sim2, sim3)");
}

std::string to_string(ScenarioId id) {
  switch (id) {
    case ScenarioId::sim1: return "sim1";
    case ScenarioId::sim2: return "sim2";
    case ScenarioId::sim3: return "sim3";
  }
  return "?";
}

VarModel build_scenario(const Scenario& s) {
  switch (s.id) {
    case ScenarioId::sim1: return build_sim1(coupling(s));
    case ScenarioId::sim2: return build_sim2(coupling(s));
    case ScenarioId::sim3:
      if (!s.parameters.empty())
        fail(ErrorKind::argument, "sim3 takes no parameters");
      return build_sim3();
  }
  fail(ErrorKind::argument, "unknown scenario");
}

Scenario make_sim1(double c) { return {ScenarioId::sim1, {{"c", c}}}; }
Scenario make_sim2(double c) { return {ScenarioId::sim2, {{"c", c}}}; }
Scenario make_sim3() { return {ScenarioId::sim3, {}}; }

}  // namespace pird
