// Times the serial and OpenMP paths of the spectral kernels on sim3 and
// checks that they agree bit for bit.
#include <chrono>
#include <iostream>

#include "CLI11.hpp"
#include "pird/decomposition.hpp"
#include "pird/scenarios.hpp"

namespace {

template <class F>
double best_of(int repeats, F&& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    best = std::min(best, dt.count());
  }
  return best;
}

bool same(const pird::SpectralDecomposition& a, const pird::SpectralDecomposition& b) {
  for (std::size_t k = 0; k < a.partial.size(); ++k)
    if (a.partial[k].values != b.partial[k].values) return false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs parallel spectral kernels"};
  std::size_t grid_points = 16385;
  int repeats = 5;
  app.add_option("--grid", grid_points, "frequency grid points");
  app.add_option("--repeats", repeats, "timing repeats (best is reported)");
  CLI11_PARSE(app, argc, argv);

  const auto model = pird::build_scenario(pird::make_sim3());
  const pird::FrequencyGrid grid(1.0, grid_points);
  const std::vector<std::size_t> sources{1, 2, 3};

  pird::SpectralMatrix psd_s, psd_p;
  const double t_psd_s =
      best_of(repeats, [&] { psd_s = pird::psd_from_var(model, grid, pird::Execution::serial); });
  const double t_psd_p =
      best_of(repeats, [&] { psd_p = pird::psd_from_var(model, grid, pird::Execution::parallel); });

  pird::SpectralDecomposition dec_s, dec_p;
  const double t_dec_s = best_of(
      repeats, [&] { dec_s = pird::spectral_pird(psd_s, 0, sources, pird::Execution::serial); });
  const double t_dec_p = best_of(
      repeats, [&] { dec_p = pird::spectral_pird(psd_p, 0, sources, pird::Execution::parallel); });

  bool psd_equal = true;
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (psd_s.mats[i] != psd_p.mats[i]) psd_equal = false;
  const bool dec_equal = same(dec_s, dec_p);

  std::cout << "grid " << grid_points << ", best of " << repeats << "\n";
  std::cout << "psd_from_var   serial " << t_psd_s << " s  parallel " << t_psd_p << " s  speedup "
            << t_psd_s / t_psd_p << "\n";
  std::cout << "spectral_pird  serial " << t_dec_s << " s  parallel " << t_dec_p << " s  speedup "
            << t_dec_s / t_dec_p << "\n";
  std::cout << "identical: psd " << (psd_equal ? "yes" : "NO") << ", atoms "
            << (dec_equal ? "yes" : "NO") << "\n";
  return psd_equal && dec_equal ? 0 : 1;
}
