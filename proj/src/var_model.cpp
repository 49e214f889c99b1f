#include "pird/var_model.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "pird/error.hpp"

namespace pird {
namespace {

bool is_positive_definite(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return false;
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() > 0.0;
}

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m) {
  return 0.5 * (m + m.transpose());
}

Eigen::MatrixXd demeaned(const Eigen::MatrixXd& x) {
  const Eigen::RowVectorXd mean = x.colwise().mean();
  return x.rowwise() - mean;
}

// Rows t = start..L-1 of [z(t) | z(t-1) | ... | z(t-lags)].
Eigen::MatrixXd lagged_design(const Eigen::MatrixXd& z, std::size_t start,
                              std::size_t lags) {
  const auto L = static_cast<Eigen::Index>(z.rows());
  const auto Q = z.cols();
  const auto s = static_cast<Eigen::Index>(start);
  const auto rows = L - s;
  Eigen::MatrixXd w(rows, Q * static_cast<Eigen::Index>(lags + 1));
  for (std::size_t k = 0; k <= lags; ++k)
    w.middleCols(static_cast<Eigen::Index>(k) * Q, Q) =
        z.middleRows(s - static_cast<Eigen::Index>(k), rows);
  return w;
}

void require_stable(const VarModel& m, const char* what) {
  if (!is_stable(m))
    fail(ErrorKind::numerical,
         std::string(what) + ": model is unstable (companion spectral radius " +
             std::to_string(spectral_radius(m)) + ")");
}

struct OlsSolution {
  Eigen::MatrixXd beta;  // pQ x Q, beta^T = [A_1 ... A_p]
};

OlsSolution solve_normal_equations(const Eigen::MatrixXd& xx,
                                   const Eigen::MatrixXd& xy) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(xx, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  const double cond = lo > 0.0 ? hi / lo : INFINITY;
  if (!(cond < 1e12)) {
    std::ostringstream msg;
    msg << "regressor matrix is rank deficient (condition number " << cond
        << ")";
    fail(ErrorKind::estimation, msg.str());
  }
  return {xx.ldlt().solve(xy)};
}

std::vector<Eigen::MatrixXd> unpack_coeffs(const Eigen::MatrixXd& beta,
                                           std::size_t p, Eigen::Index q) {
  std::vector<Eigen::MatrixXd> coeffs;
  for (std::size_t k = 0; k < p; ++k)
    coeffs.push_back(
        beta.middleRows(static_cast<Eigen::Index>(k) * q, q).transpose());
  return coeffs;
}

Eigen::MatrixXd checked_residual_cov(Eigen::MatrixXd cov) {
  cov = symmetrized(cov);
  if (!is_positive_definite(cov))
    fail(ErrorKind::estimation,
         "residual covariance is not positive definite (constant or "
         "collinear channels?)");
  return cov;
}

// Full stationary covariance of the companion state [z(t); ...; z(t-p+1)].
Eigen::MatrixXd companion_covariance(const VarModel& m) {
  const Eigen::MatrixXd c = companion_matrix(m);
  const Eigen::Index n = c.rows();
  const Eigen::Index q = static_cast<Eigen::Index>(m.dim());
  Eigen::MatrixXd rhs_mat = Eigen::MatrixXd::Zero(n, n);
  rhs_mat.topLeftCorner(q, q) = m.sigma();

  // vec(C G C^T) = (C kron C) vec(G), column-major vec.
  const Eigen::Index nn = n * n;
  Eigen::MatrixXd system = Eigen::MatrixXd::Identity(nn, nn);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index l = 0; l < n; ++l) {
        const double cjl = c(j, l);
        if (cjl == 0.0) continue;
        for (Eigen::Index k = 0; k < n; ++k)
          system(i + j * n, k + l * n) -= c(i, k) * cjl;
      }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
  if (!(lu.rcond() > 1e-14))
    fail(ErrorKind::numerical, "Lyapunov system is singular");
  const Eigen::VectorXd vec_g =
      lu.solve(Eigen::Map<const Eigen::VectorXd>(rhs_mat.data(), nn));
  return symmetrized(Eigen::Map<const Eigen::MatrixXd>(vec_g.data(), n, n));
}

}  // namespace

VarModel::VarModel(std::vector<Eigen::MatrixXd> coeffs, Eigen::MatrixXd sigma,
                   double fs, std::vector<std::string> names)
    : coeffs_(std::move(coeffs)), fs_(fs), names_(std::move(names)) {
  const auto q = sigma.rows();
  if (q == 0 || sigma.cols() != q)
    fail(ErrorKind::argument, "innovation covariance must be square and nonempty");
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (coeffs_[k].rows() != q || coeffs_[k].cols() != q)
      fail(ErrorKind::argument,
           "coefficient matrix at lag " + std::to_string(k + 1) +
               " does not match the innovation dimension");
  if (!sigma.allFinite())
    fail(ErrorKind::argument, "innovation covariance has non-finite entries");
  const double scale = sigma.cwiseAbs().maxCoeff();
  if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    fail(ErrorKind::argument, "innovation covariance is not symmetric");
  sigma_ = symmetrized(sigma);
  if (!is_positive_definite(sigma_))
    fail(ErrorKind::argument, "innovation covariance is not positive definite");
  if (!(fs_ > 0.0)) fail(ErrorKind::argument, "sampling frequency must be positive");
  if (names_.empty())
    for (Eigen::Index i = 0; i < q; ++i) names_.push_back("Z" + std::to_string(i + 1));
  if (names_.size() != static_cast<std::size_t>(q))
    fail(ErrorKind::argument, "channel name count does not match dimension");
}

bool VarModel::is_memoryless() const {
  for (const auto& a : coeffs_)
    if (!a.isZero(0.0)) return false;
  return true;
}

Eigen::MatrixXd companion_matrix(const VarModel& m) {
  const auto q = static_cast<Eigen::Index>(m.dim());
  const auto p = static_cast<Eigen::Index>(m.order());
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(p * q, p * q);
  for (Eigen::Index k = 0; k < p; ++k)
    c.block(0, k * q, q, q) = m.coeffs()[static_cast<std::size_t>(k)];
  if (p > 1) c.bottomLeftCorner((p - 1) * q, (p - 1) * q).setIdentity();
  return c;
}

double spectral_radius(const VarModel& m) {
  if (m.order() == 0) return 0.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion_matrix(m), false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

bool is_stable(const VarModel& m, double eps) {
  return spectral_radius(m) < 1.0 - eps;
}

TimeSeriesMatrix simulate(const VarModel& m, std::size_t n,
                          std::size_t burn_in, std::uint64_t seed) {
  if (n < 1) fail(ErrorKind::argument, "simulation length must be at least 1");
  require_stable(m, "simulate");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.sigma());
  const Eigen::MatrixXd root = es.eigenvectors() *
                               es.eigenvalues().cwiseSqrt().asDiagonal() *
                               es.eigenvectors().transpose();

  const auto q = static_cast<Eigen::Index>(m.dim());
  const std::size_t p = m.order();
  const std::size_t total = burn_in + n;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(q, static_cast<Eigen::Index>(total));
  Eigen::VectorXd e(q);
  for (std::size_t t = 0; t < total; ++t) {
    for (Eigen::Index i = 0; i < q; ++i) e(i) = normal(rng);
    Eigen::VectorXd next = root * e;
    for (std::size_t k = 1; k <= p && k <= t; ++k)
      next.noalias() += m.coeff(k) * z.col(static_cast<Eigen::Index>(t - k));
    z.col(static_cast<Eigen::Index>(t)) = next;
  }
  TimeSeriesMatrix ts;
  ts.samples = z.rightCols(static_cast<Eigen::Index>(n)).transpose();
  ts.fs = m.fs();
  ts.names = m.names();
  return ts;
}

VarModel fit_ols(const TimeSeriesMatrix& ts, std::size_t p) {
  const std::size_t L = ts.length();
  const std::size_t q = ts.channels();
  if (q == 0) fail(ErrorKind::argument, "time series has no channels");
  if (L <= p * q + 1)
    fail(ErrorKind::argument, "not enough samples (" + std::to_string(L) +
                                  ") for a VAR(" + std::to_string(p) +
                                  ") fit on " + std::to_string(q) + " channels");
  const Eigen::MatrixXd z = demeaned(ts.samples);
  const auto qi = static_cast<Eigen::Index>(q);

  if (p == 0) {
    const Eigen::MatrixXd cov =
        checked_residual_cov(z.transpose() * z / static_cast<double>(L));
    return VarModel({}, cov, ts.fs, ts.names);
  }

  const Eigen::MatrixXd w = lagged_design(z, p, p);
  const auto x = w.rightCols(w.cols() - qi);
  const auto y = w.leftCols(qi);
  const Eigen::MatrixXd xx = x.transpose() * x;
  const Eigen::MatrixXd xy = x.transpose() * y;
  const auto sol = solve_normal_equations(xx, xy);
  const Eigen::MatrixXd resid = y - x * sol.beta;
  const Eigen::MatrixXd cov = checked_residual_cov(
      resid.transpose() * resid / static_cast<double>(L - p));
  return VarModel(unpack_coeffs(sol.beta, p, qi), cov, ts.fs, ts.names);
}

OrderSelection select_order_aic(const TimeSeriesMatrix& ts, std::size_t p_max) {
  const std::size_t L = ts.length();
  const std::size_t q = ts.channels();
  if (p_max < 1) fail(ErrorKind::argument, "maximum order must be at least 1");
  if (q == 0 || L <= p_max + p_max * q + 1)
    fail(ErrorKind::argument, "maximum order " + std::to_string(p_max) +
                                  " is infeasible for " + std::to_string(L) +
                                  " samples");
  const Eigen::MatrixXd z = demeaned(ts.samples);
  const auto qi = static_cast<Eigen::Index>(q);
  const double l_eff = static_cast<double>(L - p_max);

  // One Gram matrix over the common window serves every candidate order.
  const Eigen::MatrixXd w = lagged_design(z, p_max, p_max);
  const Eigen::MatrixXd gram = w.transpose() * w;
  const Eigen::MatrixXd yy = gram.topLeftCorner(qi, qi);

  OrderSelection out;
  double best = INFINITY;
  for (std::size_t p = 1; p <= p_max; ++p) {
    const auto n = static_cast<Eigen::Index>(p) * qi;
    const Eigen::MatrixXd xx = gram.block(qi, qi, n, n);
    const Eigen::MatrixXd xy = gram.block(qi, 0, n, qi);
    const auto sol = solve_normal_equations(xx, xy);
    const Eigen::MatrixXd cov =
        checked_residual_cov((yy - xy.transpose() * sol.beta) / l_eff);
    const double aic = std::log(cov.determinant()) +
                       2.0 * static_cast<double>(p * q * q) / l_eff;
    out.aic.push_back(aic);
    if (aic < best) {
      best = aic;
      out.order = p;
    }
  }
  return out;
}

Eigen::MatrixXd zero_lag_covariance(const VarModel& m) {
  require_stable(m, "zero_lag_covariance");
  if (m.order() == 0) return m.sigma();
  const auto q = static_cast<Eigen::Index>(m.dim());
  return companion_covariance(m).topLeftCorner(q, q);
}

std::vector<Eigen::MatrixXd> autocovariance_sequence(const VarModel& m,
                                                     std::size_t max_lag) {
  require_stable(m, "autocovariance_sequence");
  const auto q = static_cast<Eigen::Index>(m.dim());
  const std::size_t p = m.order();
  std::vector<Eigen::MatrixXd> gamma;
  gamma.reserve(max_lag + 1);
  if (p == 0) {
    gamma.push_back(m.sigma());
    for (std::size_t k = 1; k <= max_lag; ++k)
      gamma.push_back(Eigen::MatrixXd::Zero(q, q));
    return gamma;
  }
  const Eigen::MatrixXd g = companion_covariance(m);
  for (std::size_t k = 0; k < p && k <= max_lag; ++k)
    gamma.push_back(g.block(0, static_cast<Eigen::Index>(k) * q, q, q));
  for (std::size_t k = p; k <= max_lag; ++k) {
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(q, q);
    for (std::size_t j = 1; j <= p; ++j) next.noalias() += m.coeff(j) * gamma[k - j];
    gamma.push_back(std::move(next));
  }
  return gamma;
}

std::vector<Eigen::MatrixXd> select_channels(
    const std::vector<Eigen::MatrixXd>& autocov,
    const std::vector<std::size_t>& channels) {
  const auto d = static_cast<Eigen::Index>(channels.size());
  std::vector<Eigen::MatrixXd> out;
  out.reserve(autocov.size());
  for (const auto& g : autocov) {
    Eigen::MatrixXd sub(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        sub(i, j) = g(static_cast<Eigen::Index>(channels[static_cast<std::size_t>(i)]),
                      static_cast<Eigen::Index>(channels[static_cast<std::size_t>(j)]));
    out.push_back(std::move(sub));
  }
  return out;
}

LinearPredictor whittle_predictor(const std::vector<Eigen::MatrixXd>& autocov,
                                  std::size_t order) {
  if (autocov.size() < order + 1)
    fail(ErrorKind::argument, "autocovariance sequence shorter than order + 1");
  const Eigen::MatrixXd& g0 = autocov[0];
  std::vector<Eigen::MatrixXd> fwd;  // forward coefficients A_1..A_n
  std::vector<Eigen::MatrixXd> bwd;  // backward coefficients B_1..B_n
  Eigen::MatrixXd vf = g0;
  Eigen::MatrixXd vb = g0;

  for (std::size_t n = 0; n < order; ++n) {
    Eigen::LLT<Eigen::MatrixXd> llt_f(vf);
    Eigen::LLT<Eigen::MatrixXd> llt_b(vb);
    if (llt_f.info() != Eigen::Success || llt_b.info() != Eigen::Success)
      fail(ErrorKind::estimation,
           "prediction error covariance lost positive definiteness at order " +
               std::to_string(n));
    // Delta = E[e_f(t) z(t-n-1)^T]
    Eigen::MatrixXd delta = autocov[n + 1];
    for (std::size_t k = 1; k <= n; ++k) delta.noalias() -= fwd[k - 1] * autocov[n + 1 - k];

    const Eigen::MatrixXd a_new = llt_b.solve(delta.transpose()).transpose();
    const Eigen::MatrixXd b_new = llt_f.solve(delta).transpose();

    std::vector<Eigen::MatrixXd> fwd_next(n + 1), bwd_next(n + 1);
    for (std::size_t k = 1; k <= n; ++k) {
      fwd_next[k - 1] = fwd[k - 1] - a_new * bwd[n - k];
      bwd_next[k - 1] = bwd[k - 1] - b_new * fwd[n - k];
    }
    fwd_next[n] = a_new;
    bwd_next[n] = b_new;
    fwd = std::move(fwd_next);
    bwd = std::move(bwd_next);

    vf = symmetrized(vf - a_new * delta.transpose());
    vb = symmetrized(vb - b_new * delta);
  }
  if (!is_positive_definite(vf))
    fail(ErrorKind::estimation, "prediction error covariance is not positive definite");
  return {std::move(fwd), std::move(vf)};
}

}  // namespace pird
