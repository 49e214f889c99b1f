#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "pird/execution.hpp"
#include "pird/var_model.hpp"

namespace pird {

inline constexpr std::size_t kDefaultGridPoints = 2049;

/// Floor on |P_joint| below which spectral MIR is refused.
inline constexpr double kDeterminantFloor = 1e-300;

/// Uniform grid of normalized circular frequencies on [0, pi], inclusive.
class FrequencyGrid {
 public:
  explicit FrequencyGrid(double fs = 1.0, std::size_t n_points = kDefaultGridPoints);

  double fs() const noexcept { return fs_; }
  std::size_t size() const noexcept { return n_; }
  double step() const noexcept;  // radians between points
  double omega(std::size_t i) const;
  double hz(std::size_t i) const;

  friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;

 private:
  double fs_;
  std::size_t n_;
};

/// Per-frequency Hermitian PSD matrices P_Z(omega).
struct SpectralMatrix {
  FrequencyGrid grid;
  std::vector<Eigen::MatrixXcd> mats;

  std::size_t dim() const {
    return mats.empty() ? 0 : static_cast<std::size_t>(mats.front().rows());
  }
};

/// A real function sampled on a frequency grid (nats per sample for rates).
struct SpectralProfile {
  FrequencyGrid grid;
  std::vector<double> values;
};

/// Frequency band in Hz.
struct Band {
  double lo = 0.0;
  double hi = 0.0;
  std::string label;
};

/// Throws ErrorKind::argument unless 0 <= lo < hi <= fs/2.
void validate_band(const Band& band, double fs);

/// H(omega) = [I - sum_k A_k e^{-j omega k}]^{-1}. Throws
/// ErrorKind::numerical naming the frequency when I - A(omega) is singular.
std::vector<Eigen::MatrixXcd> transfer_function(
    const VarModel& m, const FrequencyGrid& grid,
    Execution exec = Execution::parallel);

/// P(omega) = H(omega) Sigma H(omega)^*.
SpectralMatrix psd_from_var(const VarModel& m, const FrequencyGrid& grid,
                            Execution exec = Execution::parallel);

/// Adds delta * trace(P)/Q to each diagonal entry at every frequency.
void apply_diagonal_loading(SpectralMatrix& psd, double delta);

/// Real determinant of a Hermitian matrix via complex LU. Throws
/// ErrorKind::numerical if the imaginary residue exceeds 1e-10 relative.
double hermitian_determinant(const Eigen::MatrixXcd& m);

/// i(omega) = 1/2 ln(|P_S| P_T / |P_[T S]|) at one frequency. The frequency
/// in Hz is only used in error messages.
double spectral_mir_at(const Eigen::MatrixXcd& psd, std::size_t target,
                       const std::vector<std::size_t>& sources, double hz = 0.0);

/// Spectral mutual information rate between a target channel and a group
/// of source channels.
SpectralProfile spectral_mir(const SpectralMatrix& psd, std::size_t target,
                             const std::vector<std::size_t>& sources,
                             Execution exec = Execution::parallel);

/// (1/pi) * trapezoid over [0, pi]; equals the normalized two-sided integral
/// for even spectra.
double integrate_full(const SpectralProfile& profile);

/// (1/pi) * integral over [2 pi lo/fs, 2 pi hi/fs] of the piecewise-linear
/// interpolant of the profile.
double integrate_band(const SpectralProfile& profile, const Band& band);

}  // namespace pird
