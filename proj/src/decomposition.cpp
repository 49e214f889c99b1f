#include "pird/decomposition.hpp"

#include <algorithm>

#include "pird/error.hpp"

namespace pird {
namespace {

std::vector<std::size_t> group_channels(const std::vector<std::size_t>& sources,
                                        SourceSet set) {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < sources.size(); ++b)
    if (set & (SourceSet{1} << b)) out.push_back(sources[b]);
  if (out.empty() || (set >> sources.size()) != 0)
    fail(ErrorKind::argument, "atom element " + format_source_set(set) +
                                  " does not index the " +
                                  std::to_string(sources.size()) + " sources");
  return out;
}

SpectralProfile pointwise_min(const std::vector<const SpectralProfile*>& parts) {
  SpectralProfile out = *parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k)
    for (std::size_t i = 0; i < out.values.size(); ++i)
      out.values[i] = std::min(out.values[i], parts[k]->values[i]);
  return out;
}

SpectralProfile scaled_like(const SpectralProfile& like) {
  return {like.grid, std::vector<double>(like.values.size(), 0.0)};
}

}  // namespace

SpectralProfile smmi_redundancy_profile(const SpectralMatrix& psd,
                                        std::size_t target,
                                        const std::vector<std::size_t>& sources,
                                        std::span<const SourceSet> elements,
                                        Execution exec) {
  if (elements.empty()) fail(ErrorKind::argument, "atom has no elements");
  std::vector<SpectralProfile> parts;
  parts.reserve(elements.size());
  for (SourceSet e : elements)
    parts.push_back(spectral_mir(psd, target, group_channels(sources, e), exec));
  std::vector<const SpectralProfile*> ptrs;
  for (const auto& p : parts) ptrs.push_back(&p);
  return pointwise_min(ptrs);
}

SpectralProfile smmi_redundancy_profile(const SpectralMatrix& psd,
                                        std::size_t target,
                                        const std::vector<std::size_t>& sources,
                                        const Atom& atom, Execution exec) {
  if (static_cast<std::size_t>(atom.sources()) != sources.size())
    fail(ErrorKind::argument, "atom source count does not match the source list");
  return smmi_redundancy_profile(psd, target, sources, atom.elements(), exec);
}

SpectralDecomposition spectral_pird(const SpectralMatrix& psd, std::size_t target,
                                    const std::vector<std::size_t>& sources,
                                    Execution exec) {
  const int m = static_cast<int>(sources.size());
  if (m < 1) fail(ErrorKind::argument, "source set is empty");
  SpectralDecomposition out;
  out.lattice = enumerate_antichains(m);  // capability check on M
  out.target = target;
  out.sources = sources;
  out.grid = psd.grid;

  const SourceSet n_groups = (SourceSet{1} << m) - 1;
  for (SourceSet g = 1; g <= n_groups; ++g)
    out.group_mir.push_back(spectral_mir(psd, target, group_channels(sources, g), exec));

  const auto& lattice = out.lattice;
  for (const Atom& atom : lattice.atoms()) {
    std::vector<const SpectralProfile*> parts;
    for (SourceSet e : atom.elements()) parts.push_back(&out.group_mir[e - 1]);
    out.redundancy.push_back(pointwise_min(parts));
  }

  const std::size_t n_atoms = lattice.size();
  const std::size_t n_freq = psd.grid.size();
  out.partial.assign(n_atoms, scaled_like(out.redundancy.front()));
  detail::for_each_index(exec, n_freq, [&](std::size_t i) {
    std::vector<double> red(n_atoms), pi(n_atoms);
    for (std::size_t a = 0; a < n_atoms; ++a) red[a] = out.redundancy[a].values[i];
    moebius_invert(lattice, red, pi);
    for (std::size_t a = 0; a < n_atoms; ++a) out.partial[a].values[i] = pi[a];
  });
  return out;
}

TimeDecomposition time_pird(const SpectralDecomposition& spectral) {
  TimeDecomposition out;
  for (const auto& p : spectral.partial) out.partial.push_back(integrate_full(p));
  for (const auto& r : spectral.redundancy) out.redundancy.push_back(integrate_full(r));
  out.partial_from_redundancy = moebius_invert(spectral.lattice, out.redundancy);
  out.joint_mir = integrate_full(spectral.joint_mir());
  return out;
}

BandAtoms band_pird(const SpectralDecomposition& spectral, const Band& band) {
  BandAtoms out{band, {}, {}};
  for (const auto& p : spectral.partial) out.partial.push_back(integrate_band(p, band));
  for (const auto& r : spectral.redundancy) out.redundancy.push_back(integrate_band(r, band));
  return out;
}

namespace {

CoarseProfiles coarse_from(const std::vector<const SpectralProfile*>& singles,
                           const SpectralProfile& joint) {
  if (singles.size() < 2)
    fail(ErrorKind::argument, "coarse-grained terms need at least two sources");
  const std::size_t n = joint.values.size();
  CoarseProfiles out;
  out.joint = joint;
  out.redundancy = scaled_like(joint);
  out.synergy = scaled_like(joint);
  out.unique.assign(singles.size(), scaled_like(joint));
  out.argmin.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = 0;
    for (std::size_t m = 1; m < singles.size(); ++m)
      if (singles[m]->values[i] < singles[best]->values[i]) best = m;
    const double r = singles[best]->values[i];
    double rest = joint.values[i] - r;
    for (std::size_t m = 0; m < singles.size(); ++m) {
      const double u = singles[m]->values[i] - r;
      out.unique[m].values[i] = u;
      rest -= u;
    }
    out.redundancy.values[i] = r;
    out.synergy.values[i] = rest;
    out.argmin[i] = best;
  }
  return out;
}

CoarseTerms integrate_terms(const CoarseProfiles& p, const Band* band) {
  auto integrate = [band](const SpectralProfile& x) {
    return band ? integrate_band(x, *band) : integrate_full(x);
  };
  CoarseTerms out;
  out.band = band ? band->label : kFullBand;
  for (const auto& u : p.unique) out.unique.push_back(integrate(u));
  out.redundancy = integrate(p.redundancy);
  out.synergy = integrate(p.synergy);
  out.joint_mir = integrate(p.joint);
  return out;
}

// Sums atom profiles by group: atoms with two or more singletons are
// redundant, exactly one singleton unique to that source, none synergistic.
void group_atoms(const SpectralDecomposition& spectral, CoarseProfiles& out) {
  const auto zero = scaled_like(spectral.joint_mir());
  out.redundancy = zero;
  out.synergy = zero;
  out.unique.assign(spectral.sources.size(), zero);
  for (std::size_t k = 0; k < spectral.lattice.size(); ++k) {
    const auto label = atom_label(spectral.lattice.atom(k));
    SpectralProfile& dst = label.group == AtomGroup::redundant ? out.redundancy
                           : label.group == AtomGroup::synergistic
                               ? out.synergy
                               : out.unique[static_cast<std::size_t>(label.source - 1)];
    const auto& pi = spectral.partial[k].values;
    for (std::size_t i = 0; i < pi.size(); ++i) dst.values[i] += pi[i];
  }
}

}  // namespace

CoarseProfiles coarse_profiles(const SpectralMatrix& psd, std::size_t target,
                               const std::vector<std::size_t>& sources,
                               Execution exec) {
  if (sources.size() < 2)
    fail(ErrorKind::argument, "coarse-grained terms need at least two sources");
  if (sources.size() > 2) return coarse_profiles(spectral_pird(psd, target, sources, exec));
  std::vector<SpectralProfile> singles;
  for (std::size_t s : sources) singles.push_back(spectral_mir(psd, target, {s}, exec));
  const SpectralProfile joint = spectral_mir(psd, target, sources, exec);
  std::vector<const SpectralProfile*> ptrs;
  for (const auto& s : singles) ptrs.push_back(&s);
  return coarse_from(ptrs, joint);
}

CoarseProfiles coarse_profiles(const SpectralDecomposition& spectral) {
  std::vector<const SpectralProfile*> ptrs;
  for (std::size_t m = 0; m < spectral.sources.size(); ++m)
    ptrs.push_back(&spectral.source_mir(m));
  auto out = coarse_from(ptrs, spectral.joint_mir());
  if (spectral.sources.size() > 2) group_atoms(spectral, out);
  return out;
}

std::vector<CoarseTerms> integrate_coarse(const CoarseProfiles& profiles,
                                          const std::vector<Band>& bands) {
  std::vector<CoarseTerms> out;
  out.push_back(integrate_terms(profiles, nullptr));
  for (const auto& b : bands) out.push_back(integrate_terms(profiles, &b));
  return out;
}

std::vector<CoarseTerms> coarse_grained(const SpectralMatrix& psd, std::size_t target,
                                        const std::vector<std::size_t>& sources,
                                        const std::vector<Band>& bands,
                                        Execution exec) {
  for (const auto& b : bands) validate_band(b, psd.grid.fs());
  return integrate_coarse(coarse_profiles(psd, target, sources, exec), bands);
}

DecompositionResult decompose(const SpectralMatrix& psd, std::size_t target,
                              const std::vector<std::size_t>& sources,
                              const std::vector<Band>& bands, Execution exec) {
  for (const auto& b : bands) validate_band(b, psd.grid.fs());
  DecompositionResult out;
  out.spectral = spectral_pird(psd, target, sources, exec);
  out.time = time_pird(out.spectral);
  for (const auto& b : bands) out.bands.push_back(band_pird(out.spectral, b));
  if (sources.size() >= 2) {
    out.coarse_spectra = coarse_profiles(out.spectral);
    out.coarse = integrate_coarse(out.coarse_spectra, bands);
  }
  return out;
}

}  // namespace pird
