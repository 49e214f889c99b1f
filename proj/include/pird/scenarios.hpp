#pragma once

#include <map>
#include <string>
#include <utility>

#include "pird/var_model.hpp"

namespace pird {

/// Lag-1 and lag-2 AR coefficients of a complex-conjugate pole pair with
/// modulus rho at frequency f: a1 = 2 rho cos(2 pi f / fs), a2 = -rho^2.
std::pair<double, double> poles_to_coeffs(double rho, double f, double fs = 1.0);

enum class ScenarioId { sim1, sim2, sim3 };

ScenarioId parse_scenario_id(const std::string& text);
std::string to_string(ScenarioId id);

/// A benchmark system. sim1 and sim2 take a coupling parameter "c" in
/// [0, 0.8]; sim3 has no parameters.
struct Scenario {
  ScenarioId id = ScenarioId::sim1;
  std::map<std::string, double> parameters;
};

/// Channel order is Y, X1, ..., XM (target first); fs = 1.
///
/// sim1: Y <- c X1(t-1) + c X2(t-2); X1 one pole pair (c, 0.1 Hz); X2 pole
///       pairs (c, 0.1 Hz) and (1.125 c, 0.3 Hz); unit innovation
///       variances with all cross-covariances 0.8 - c.
/// sim2: Y <- (0.8 - c) X1(t-1) + (1.6 - 2c) X2(t-1); X1 <- c Y(t-1);
///       X2 <- 2c Y(t-1); identity innovations.
/// sim3: Y <- X1(t-1) + X3(t-1); X2 <- X1(t-1); X1, X2 pole pair
///       (0.8, 0.3 Hz); X3 pole pair (0.9, 0.1 Hz); identity innovations.
VarModel build_scenario(const Scenario& s);

Scenario make_sim1(double c);
Scenario make_sim2(double c);
Scenario make_sim3();

}  // namespace pird
