#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace pird {

/// Default companion spectral-radius margin for stability checks.
inline constexpr double kStabilityMargin = 1e-6;

/// Z(t) = sum_k A_k Z(t-k) + U(t), U ~ N(0, sigma).
class VarModel {
 public:
  VarModel() = default;

  /// Validates shapes and that sigma is symmetric positive definite.
  /// Empty names are replaced by "Z1".."ZQ".
  VarModel(std::vector<Eigen::MatrixXd> coeffs, Eigen::MatrixXd sigma,
           double fs = 1.0, std::vector<std::string> names = {});

  std::size_t dim() const noexcept { return static_cast<std::size_t>(sigma_.rows()); }
  std::size_t order() const noexcept { return coeffs_.size(); }
  const std::vector<Eigen::MatrixXd>& coeffs() const noexcept { return coeffs_; }
  /// Lag k in 1..order().
  const Eigen::MatrixXd& coeff(std::size_t lag) const { return coeffs_.at(lag - 1); }
  const Eigen::MatrixXd& sigma() const noexcept { return sigma_; }
  double fs() const noexcept { return fs_; }
  const std::vector<std::string>& names() const noexcept { return names_; }

  /// True when every coefficient matrix is zero (the process is i.i.d.).
  bool is_memoryless() const;

 private:
  std::vector<Eigen::MatrixXd> coeffs_;
  Eigen::MatrixXd sigma_;
  double fs_ = 1.0;
  std::vector<std::string> names_;
};

/// L x Q samples with channel labels.
struct TimeSeriesMatrix {
  Eigen::MatrixXd samples;
  double fs = 1.0;
  std::vector<std::string> names;

  std::size_t length() const { return static_cast<std::size_t>(samples.rows()); }
  std::size_t channels() const { return static_cast<std::size_t>(samples.cols()); }
};

/// The pQ x pQ block companion matrix; empty for p = 0.
Eigen::MatrixXd companion_matrix(const VarModel& m);

/// Largest eigenvalue modulus of the companion matrix (0 for p = 0).
double spectral_radius(const VarModel& m);

bool is_stable(const VarModel& m, double eps = kStabilityMargin);

/// Draws a realization of length n after discarding burn_in samples.
/// Innovations use the symmetric square root of sigma. Deterministic for a
/// given seed. Throws ErrorKind::numerical for unstable models.
TimeSeriesMatrix simulate(const VarModel& m, std::size_t n,
                          std::size_t burn_in, std::uint64_t seed);

/// Least-squares VAR(p) fit after removing channel means. The residual
/// covariance is E^T E / (L - p). Throws ErrorKind::estimation when the
/// regressors are rank deficient.
VarModel fit_ols(const TimeSeriesMatrix& ts, std::size_t p);

struct OrderSelection {
  std::size_t order = 0;
  std::vector<double> aic;  // aic[p - 1] for p = 1..p_max
};

/// AIC(p) = ln det Sigma(p) + 2 p Q^2 / L_eff over p = 1..p_max, with every
/// candidate fitted on the same L_eff = L - p_max rows.
OrderSelection select_order_aic(const TimeSeriesMatrix& ts, std::size_t p_max);

/// Gamma_0 from the discrete Lyapunov equation of the companion form.
Eigen::MatrixXd zero_lag_covariance(const VarModel& m);

/// Gamma_k = E[Z(t) Z(t-k)^T] for k = 0..max_lag.
std::vector<Eigen::MatrixXd> autocovariance_sequence(const VarModel& m,
                                                     std::size_t max_lag);

/// Restricts each autocovariance matrix to the given channels (in order).
std::vector<Eigen::MatrixXd> select_channels(
    const std::vector<Eigen::MatrixXd>& autocov,
    const std::vector<std::size_t>& channels);

/// One-step linear predictor of a stationary vector process.
struct LinearPredictor {
  std::vector<Eigen::MatrixXd> coeffs;  // lag 1..order
  Eigen::MatrixXd error_cov;            // forward prediction error covariance
};

/// Whittle's multivariate Levinson recursion on Gamma_0..Gamma_order.
/// Throws ErrorKind::estimation if an intermediate error covariance is not
/// positive definite.
LinearPredictor whittle_predictor(const std::vector<Eigen::MatrixXd>& autocov,
                                  std::size_t order);

}  // namespace pird
