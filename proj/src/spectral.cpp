#include "pird/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "pird/error.hpp"

namespace pird {
namespace {

using cd = std::complex<double>;

std::string hz_text(double hz) {
  std::ostringstream s;
  s << hz << " Hz";
  return s.str();
}

void check_channels(std::size_t dim, std::size_t target,
                    const std::vector<std::size_t>& sources) {
  if (sources.empty()) fail(ErrorKind::argument, "source set is empty");
  if (target >= dim)
    fail(ErrorKind::argument, "target channel " + std::to_string(target) + " out of range");
  for (std::size_t s : sources) {
    if (s >= dim)
      fail(ErrorKind::argument, "source channel " + std::to_string(s) + " out of range");
    if (s == target) fail(ErrorKind::argument, "target is also listed as a source");
  }
  auto sorted = sources;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    fail(ErrorKind::argument, "duplicate source channel");
}

Eigen::MatrixXcd transfer_at(const VarModel& m, double omega, double hz) {
  const auto q = static_cast<Eigen::Index>(m.dim());
  Eigen::MatrixXcd lhs = Eigen::MatrixXcd::Identity(q, q);
  for (std::size_t k = 1; k <= m.order(); ++k)
    lhs -= m.coeff(k).cast<cd>() * std::polar(1.0, -omega * static_cast<double>(k));
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(lhs);
  if (!(lu.rcond() > 1e-14))
    fail(ErrorKind::numerical, "I - A(omega) is singular at " + hz_text(hz));
  return lu.inverse();
}

}  // namespace

FrequencyGrid::FrequencyGrid(double fs, std::size_t n_points)
    : fs_(fs), n_(n_points) {
  if (!(fs > 0.0)) fail(ErrorKind::argument, "sampling frequency must be positive");
  if (n_points < 2) fail(ErrorKind::argument, "frequency grid needs at least 2 points");
}

double FrequencyGrid::step() const noexcept {
  return std::numbers::pi / static_cast<double>(n_ - 1);
}

double FrequencyGrid::omega(std::size_t i) const {
  if (i + 1 == n_) return std::numbers::pi;
  return std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_ - 1);
}

double FrequencyGrid::hz(std::size_t i) const {
  return omega(i) * fs_ / (2.0 * std::numbers::pi);
}

void validate_band(const Band& band, double fs) {
  if (!(band.lo >= 0.0 && band.lo < band.hi && band.hi <= fs / 2.0)) {
    std::ostringstream s;
    s << "band '" << band.label << "' [" << band.lo << ", " << band.hi
      << "] Hz is not within [0, " << fs / 2.0 << "] Hz";
    fail(ErrorKind::argument, s.str());
  }
}

std::vector<Eigen::MatrixXcd> transfer_function(const VarModel& m,
                                                const FrequencyGrid& grid,
                                                Execution exec) {
  std::vector<Eigen::MatrixXcd> h(grid.size());
  detail::for_each_index(exec, grid.size(), [&](std::size_t i) {
    h[i] = transfer_at(m, grid.omega(i), grid.hz(i));
  });
  return h;
}

SpectralMatrix psd_from_var(const VarModel& m, const FrequencyGrid& grid,
                            Execution exec) {
  if (!is_stable(m))
    fail(ErrorKind::numerical, "psd_from_var: model is unstable");
  const Eigen::MatrixXcd sigma = m.sigma().cast<cd>();
  SpectralMatrix out{grid, std::vector<Eigen::MatrixXcd>(grid.size())};
  detail::for_each_index(exec, grid.size(), [&](std::size_t i) {
    const Eigen::MatrixXcd h = transfer_at(m, grid.omega(i), grid.hz(i));
    Eigen::MatrixXcd p = h * sigma * h.adjoint();
    // Enforce exact Hermitian symmetry and a real diagonal.
    p = (0.5 * (p + p.adjoint())).eval();
    out.mats[i] = std::move(p);
  });
  return out;
}

void apply_diagonal_loading(SpectralMatrix& psd, double delta) {
  if (!(delta >= 0.0)) fail(ErrorKind::argument, "diagonal loading must be non-negative");
  if (delta == 0.0) return;
  for (auto& p : psd.mats) {
    const double load = delta * p.trace().real() / static_cast<double>(p.rows());
    p.diagonal().array() += load;
  }
}

double hermitian_determinant(const Eigen::MatrixXcd& m) {
  if (m.rows() == 1) return m(0, 0).real();
  const cd det = Eigen::PartialPivLU<Eigen::MatrixXcd>(m).determinant();
  if (std::abs(det.imag()) > 1e-10 * std::max(std::abs(det.real()), 1e-300))
    fail(ErrorKind::numerical, "determinant of a Hermitian block has a large imaginary part");
  return det.real();
}

double spectral_mir_at(const Eigen::MatrixXcd& psd, std::size_t target,
                       const std::vector<std::size_t>& sources, double hz) {
  const auto k = static_cast<Eigen::Index>(sources.size());
  Eigen::MatrixXcd joint(k + 1, k + 1);
  auto channel = [&](Eigen::Index i) {
    return static_cast<Eigen::Index>(i == 0 ? target : sources[static_cast<std::size_t>(i - 1)]);
  };
  for (Eigen::Index i = 0; i <= k; ++i)
    for (Eigen::Index j = 0; j <= k; ++j) joint(i, j) = psd(channel(i), channel(j));

  const double det_joint = hermitian_determinant(joint);
  if (!(det_joint > kDeterminantFloor))
    fail(ErrorKind::numerical, "joint spectral matrix is singular at " + hz_text(hz));
  const double det_sources = hermitian_determinant(joint.bottomRightCorner(k, k));
  const double p_target = joint(0, 0).real();
  return 0.5 * std::log(det_sources * p_target / det_joint);
}

SpectralProfile spectral_mir(const SpectralMatrix& psd, std::size_t target,
                             const std::vector<std::size_t>& sources,
                             Execution exec) {
  check_channels(psd.dim(), target, sources);
  SpectralProfile out{psd.grid, std::vector<double>(psd.mats.size())};
  detail::for_each_index(exec, psd.mats.size(), [&](std::size_t i) {
    out.values[i] = spectral_mir_at(psd.mats[i], target, sources, psd.grid.hz(i));
  });
  return out;
}

double integrate_full(const SpectralProfile& profile) {
  const auto& v = profile.values;
  if (v.size() < 2) fail(ErrorKind::argument, "profile needs at least 2 points");
  double sum = 0.5 * (v.front() + v.back());
  for (std::size_t i = 1; i + 1 < v.size(); ++i) sum += v[i];
  return sum / static_cast<double>(v.size() - 1);
}

double integrate_band(const SpectralProfile& profile, const Band& band) {
  const auto& grid = profile.grid;
  validate_band(band, grid.fs());
  const auto& v = profile.values;
  if (v.size() != grid.size()) fail(ErrorKind::argument, "profile does not match its grid");

  const double a = 2.0 * std::numbers::pi * band.lo / grid.fs();
  const double b = 2.0 * std::numbers::pi * band.hi / grid.fs();
  const double h = grid.step();
  const std::size_t first = std::min(static_cast<std::size_t>(std::floor(a / h)), v.size() - 2);
  double sum = 0.0;
  for (std::size_t i = first; i + 1 < v.size(); ++i) {
    const double w0 = grid.omega(i);
    const double w1 = grid.omega(i + 1);
    if (w0 >= b) break;
    const double x0 = std::max(a, w0);
    const double x1 = std::min(b, w1);
    if (x1 <= x0) continue;
    const double slope = (v[i + 1] - v[i]) / (w1 - w0);
    const double f0 = v[i] + slope * (x0 - w0);
    const double f1 = v[i] + slope * (x1 - w0);
    sum += 0.5 * (x1 - x0) * (f0 + f1);
  }
  return sum / std::numbers::pi;
}

}  // namespace pird
