#pragma once

#include <Eigen/Dense>
#include <vector>

#include "pird/var_model.hpp"

namespace pird {

/// Gaussian MI in nats: 1/2 ln(var_T |Cov_S| / |Cov_[T S]|).
/// Throws ErrorKind::argument if the joint block is not positive definite.
double gaussian_mi(const Eigen::MatrixXd& cov, std::size_t target,
                   const std::vector<std::size_t>& sources);

/// Minimum-MI decomposition of I(target; sources) at lag zero.
struct StaticPidResult {
  double mi_joint = 0.0;
  std::vector<double> mi_marginals;
  std::vector<double> unique;
  double redundancy = 0.0;
  double synergy = 0.0;
};

StaticPidResult static_pid(const VarModel& m, std::size_t target,
                           const std::vector<std::size_t>& sources);

/// max(32, 8p).
std::size_t default_reduced_order(const VarModel& m);

/// TE from drivers to targets, conditioned on the past of the conditioning
/// channels: 1/2 ln(|V_reduced| / |V_full|) where V is the targets' block of
/// the one-step prediction error covariance of an order-q sub-model fitted
/// by Yule-Walker on the exact autocovariances. The full sub-model holds
/// targets, drivers and conditioning channels; the reduced one drops the
/// drivers. q = 0 selects default_reduced_order(m).
double transfer_entropy(const VarModel& m, const std::vector<std::size_t>& drivers,
                        const std::vector<std::size_t>& targets, std::size_t q = 0,
                        const std::vector<std::size_t>& conditioning = {});

double transfer_entropy(const VarModel& m, const std::vector<std::size_t>& drivers,
                        std::size_t target, std::size_t q = 0);

/// Gaussian MI between the innovations of the target and of the sources.
double instantaneous_info(const VarModel& m, const std::vector<std::size_t>& sources,
                          std::size_t target);

/// The three time-domain terms whose sum is the MIR between target and
/// sources when they make up the whole model.
struct MirTerms {
  double to_target = 0.0;    // T_{X -> Y}
  double from_target = 0.0;  // T_{Y -> X}
  double instantaneous = 0.0;

  double total() const { return to_target + from_target + instantaneous; }
};

MirTerms mir_terms(const VarModel& m, std::size_t target,
                   const std::vector<std::size_t>& sources, std::size_t q = 0);

enum class MarginalTe {
  bivariate,    // T_{X_m -> Y} given only the target's past
  conditioned,  // T_{X_m -> Y | other sources}
};

struct TePidResult {
  double te_joint = 0.0;
  std::vector<double> te_marginals;
  std::vector<double> unique;
  double redundancy = 0.0;
  double synergy = 0.0;
};

TePidResult te_pid(const VarModel& m, std::size_t target,
                   const std::vector<std::size_t>& sources, std::size_t q = 0,
                   MarginalTe marginal = MarginalTe::bivariate);

}  // namespace pird
