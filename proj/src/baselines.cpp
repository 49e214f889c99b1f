#include "pird/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "pird/error.hpp"

namespace pird {
namespace {

Eigen::MatrixXd sub_matrix(const Eigen::MatrixXd& m, const std::vector<std::size_t>& idx) {
  const auto n = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out(i, j) = m(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(i)]),
                    static_cast<Eigen::Index>(idx[static_cast<std::size_t>(j)]));
  return out;
}

double log_det_spd(const Eigen::MatrixXd& m, ErrorKind kind, const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success)
    fail(kind, std::string(what) + " is not positive definite");
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

void check_disjoint(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b,
                    const char* what) {
  for (std::size_t x : a)
    if (std::find(b.begin(), b.end(), x) != b.end())
      fail(ErrorKind::argument, std::string(what) + ": channel " + std::to_string(x) +
                                    " appears in more than one role");
}

void check_range(const std::vector<std::size_t>& idx, std::size_t dim) {
  for (std::size_t i : idx)
    if (i >= dim) fail(ErrorKind::argument, "channel " + std::to_string(i) + " out of range");
}

std::vector<std::size_t> concat(std::initializer_list<const std::vector<std::size_t>*> parts) {
  std::vector<std::size_t> out;
  for (const auto* p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

// Log-determinant of the targets' one-step prediction error covariance
// when predicting from the past of `channels` (targets first).
double target_log_det(const std::vector<Eigen::MatrixXd>& autocov,
                      const std::vector<std::size_t>& channels, std::size_t n_targets,
                      std::size_t q) {
  const auto pred = whittle_predictor(select_channels(autocov, channels), q);
  const auto t = static_cast<Eigen::Index>(n_targets);
  return log_det_spd(pred.error_cov.topLeftCorner(t, t), ErrorKind::estimation,
                     "target prediction error covariance");
}

double te_from_autocov(const std::vector<Eigen::MatrixXd>& autocov,
                       const std::vector<std::size_t>& drivers,
                       const std::vector<std::size_t>& targets, std::size_t q,
                       const std::vector<std::size_t>& conditioning) {
  if (drivers.empty() || targets.empty())
    fail(ErrorKind::argument, "transfer entropy needs drivers and targets");
  check_disjoint(drivers, targets, "transfer_entropy");
  check_disjoint(drivers, conditioning, "transfer_entropy");
  check_disjoint(targets, conditioning, "transfer_entropy");
  const auto full = concat({&targets, &drivers, &conditioning});
  const auto reduced = concat({&targets, &conditioning});
  return 0.5 * (target_log_det(autocov, reduced, targets.size(), q) -
                target_log_det(autocov, full, targets.size(), q));
}

}  // namespace

double gaussian_mi(const Eigen::MatrixXd& cov, std::size_t target,
                   const std::vector<std::size_t>& sources) {
  const auto dim = static_cast<std::size_t>(cov.rows());
  if (cov.cols() != cov.rows()) fail(ErrorKind::argument, "covariance must be square");
  if (sources.empty()) fail(ErrorKind::argument, "source set is empty");
  check_range(sources, dim);
  check_range({target}, dim);
  check_disjoint({target}, sources, "gaussian_mi");
  std::vector<std::size_t> joint{target};
  joint.insert(joint.end(), sources.begin(), sources.end());
  const double ld_joint = log_det_spd(sub_matrix(cov, joint), ErrorKind::argument, "covariance");
  const double ld_sources = log_det_spd(sub_matrix(cov, sources), ErrorKind::argument, "covariance");
  const double var_t = cov(static_cast<Eigen::Index>(target), static_cast<Eigen::Index>(target));
  return 0.5 * (std::log(var_t) + ld_sources - ld_joint);
}

StaticPidResult static_pid(const VarModel& m, std::size_t target,
                           const std::vector<std::size_t>& sources) {
  if (sources.size() < 2) fail(ErrorKind::argument, "static PID needs at least two sources");
  const Eigen::MatrixXd gamma0 = zero_lag_covariance(m);
  StaticPidResult out;
  out.mi_joint = gaussian_mi(gamma0, target, sources);
  for (std::size_t s : sources) out.mi_marginals.push_back(gaussian_mi(gamma0, target, {s}));
  out.redundancy = *std::min_element(out.mi_marginals.begin(), out.mi_marginals.end());
  out.synergy = out.mi_joint - out.redundancy;
  for (double mi : out.mi_marginals) {
    out.unique.push_back(mi - out.redundancy);
    out.synergy -= out.unique.back();
  }
  return out;
}

std::size_t default_reduced_order(const VarModel& m) {
  return std::max<std::size_t>(32, 8 * m.order());
}

double transfer_entropy(const VarModel& m, const std::vector<std::size_t>& drivers,
                        const std::vector<std::size_t>& targets, std::size_t q,
                        const std::vector<std::size_t>& conditioning) {
  check_range(drivers, m.dim());
  check_range(targets, m.dim());
  check_range(conditioning, m.dim());
  if (q == 0) q = default_reduced_order(m);
  const auto autocov = autocovariance_sequence(m, q);
  return te_from_autocov(autocov, drivers, targets, q, conditioning);
}

double transfer_entropy(const VarModel& m, const std::vector<std::size_t>& drivers,
                        std::size_t target, std::size_t q) {
  return transfer_entropy(m, drivers, std::vector<std::size_t>{target}, q);
}

double instantaneous_info(const VarModel& m, const std::vector<std::size_t>& sources,
                          std::size_t target) {
  const auto dim = m.dim();
  check_range(sources, dim);
  check_range({target}, dim);
  check_disjoint({target}, sources, "instantaneous_info");
  if (sources.empty()) fail(ErrorKind::argument, "source set is empty");
  std::vector<std::size_t> joint{target};
  joint.insert(joint.end(), sources.begin(), sources.end());
  const auto& s = m.sigma();
  const double ld_joint = log_det_spd(sub_matrix(s, joint), ErrorKind::numerical, "innovation block");
  const double ld_sources = log_det_spd(sub_matrix(s, sources), ErrorKind::numerical, "innovation block");
  return 0.5 * (std::log(s(static_cast<Eigen::Index>(target), static_cast<Eigen::Index>(target))) +
                ld_sources - ld_joint);
}

MirTerms mir_terms(const VarModel& m, std::size_t target,
                   const std::vector<std::size_t>& sources, std::size_t q) {
  check_range(sources, m.dim());
  check_range({target}, m.dim());
  if (q == 0) q = default_reduced_order(m);
  const auto autocov = autocovariance_sequence(m, q);
  MirTerms out;
  out.to_target = te_from_autocov(autocov, sources, {target}, q, {});
  out.from_target = te_from_autocov(autocov, {target}, sources, q, {});
  out.instantaneous = instantaneous_info(m, sources, target);
  return out;
}

TePidResult te_pid(const VarModel& m, std::size_t target,
                   const std::vector<std::size_t>& sources, std::size_t q,
                   MarginalTe marginal) {
  if (sources.size() < 2) fail(ErrorKind::argument, "TE-PID needs at least two sources");
  check_range(sources, m.dim());
  check_range({target}, m.dim());
  if (q == 0) q = default_reduced_order(m);
  const auto autocov = autocovariance_sequence(m, q);

  TePidResult out;
  out.te_joint = te_from_autocov(autocov, sources, {target}, q, {});
  for (std::size_t k = 0; k < sources.size(); ++k) {
    std::vector<std::size_t> others;
    if (marginal == MarginalTe::conditioned)
      for (std::size_t j = 0; j < sources.size(); ++j)
        if (j != k) others.push_back(sources[j]);
    out.te_marginals.push_back(te_from_autocov(autocov, {sources[k]}, {target}, q, others));
  }
  out.redundancy = *std::min_element(out.te_marginals.begin(), out.te_marginals.end());
  out.synergy = out.te_joint - out.redundancy;
  for (double te : out.te_marginals) {
    out.unique.push_back(te - out.redundancy);
    out.synergy -= out.unique.back();
  }
  return out;
}

}  // namespace pird
