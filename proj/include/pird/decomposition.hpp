#pragma once

#include <span>
#include <string>
#include <vector>

#include "pird/execution.hpp"
#include "pird/lattice.hpp"
#include "pird/spectral.hpp"

namespace pird {

/// Label of the full frequency axis in band-indexed results.
inline const std::string kFullBand = "FULL";

/// Spectral minimum-MI redundancy: the pointwise minimum over elements of
/// the spectral MIR between the target and each element's source group.
/// Source index i in an element refers to channel sources[i - 1]. The
/// elements need not form an antichain.
SpectralProfile smmi_redundancy_profile(const SpectralMatrix& psd,
                                        std::size_t target,
                                        const std::vector<std::size_t>& sources,
                                        std::span<const SourceSet> elements,
                                        Execution exec = Execution::parallel);

SpectralProfile smmi_redundancy_profile(const SpectralMatrix& psd,
                                        std::size_t target,
                                        const std::vector<std::size_t>& sources,
                                        const Atom& atom,
                                        Execution exec = Execution::parallel);

/// Per-frequency partial information rate decomposition over the lattice.
struct SpectralDecomposition {
  RedundancyLattice lattice{1};
  std::size_t target = 0;
  std::vector<std::size_t> sources;
  FrequencyGrid grid;
  /// Spectral MIR for every nonempty source group, at index mask - 1.
  std::vector<SpectralProfile> group_mir;
  /// Per atom, in lattice order.
  std::vector<SpectralProfile> redundancy;
  std::vector<SpectralProfile> partial;

  const SpectralProfile& joint_mir() const { return redundancy[lattice.top()]; }
  const SpectralProfile& source_mir(std::size_t m) const {
    return group_mir[(std::size_t{1} << m) - 1];
  }
};

SpectralDecomposition spectral_pird(const SpectralMatrix& psd,
                                    std::size_t target,
                                    const std::vector<std::size_t>& sources,
                                    Execution exec = Execution::parallel);

/// Time-domain rates by two routes: integrating each atom's spectral PI
/// profile, and integrating the redundancy profiles before inverting.
struct TimeDecomposition {
  std::vector<double> partial;
  std::vector<double> redundancy;
  std::vector<double> partial_from_redundancy;
  double joint_mir = 0.0;
};

TimeDecomposition time_pird(const SpectralDecomposition& spectral);

/// Band-limited atom values.
struct BandAtoms {
  Band band;
  std::vector<double> partial;
  std::vector<double> redundancy;
};

BandAtoms band_pird(const SpectralDecomposition& spectral, const Band& band);

/// Coarse-grained spectral terms. Two sources: r = min_m i_m, u_m = i_m - r,
/// s = i_joint - r - sum_m u_m. Three or more: atom PI profiles summed by
/// atom_label group (redundant, unique to one source, synergistic).
struct CoarseProfiles {
  std::vector<SpectralProfile> unique;
  SpectralProfile redundancy;
  SpectralProfile synergy;
  SpectralProfile joint;
  /// Index into the source list attaining the minimum at each frequency;
  /// ties go to the lowest index.
  std::vector<std::size_t> argmin;
};

/// Integrated coarse terms over one band (or the full axis).
struct CoarseTerms {
  std::string band;
  std::vector<double> unique;
  double redundancy = 0.0;
  double synergy = 0.0;
  double joint_mir = 0.0;

  double delta() const { return redundancy - synergy; }
};

/// Throws ErrorKind::argument for fewer than two sources.
CoarseProfiles coarse_profiles(const SpectralMatrix& psd, std::size_t target,
                               const std::vector<std::size_t>& sources,
                               Execution exec = Execution::parallel);

CoarseProfiles coarse_profiles(const SpectralDecomposition& spectral);

/// Full axis first (labelled FULL), then each band in order.
std::vector<CoarseTerms> integrate_coarse(const CoarseProfiles& profiles,
                                          const std::vector<Band>& bands);

std::vector<CoarseTerms> coarse_grained(const SpectralMatrix& psd,
                                        std::size_t target,
                                        const std::vector<std::size_t>& sources,
                                        const std::vector<Band>& bands,
                                        Execution exec = Execution::parallel);

/// Everything the command line exports for one target/source split.
struct DecompositionResult {
  SpectralDecomposition spectral;
  TimeDecomposition time;
  std::vector<BandAtoms> bands;
  /// Present only for two or more sources.
  std::vector<CoarseTerms> coarse;
  CoarseProfiles coarse_spectra;
};

DecompositionResult decompose(const SpectralMatrix& psd, std::size_t target,
                              const std::vector<std::size_t>& sources,
                              const std::vector<Band>& bands,
                              Execution exec = Execution::parallel);

}  // namespace pird
