#include "pird/lattice.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "pird/error.hpp"

namespace pird {
namespace {

std::vector<int> indices_of(SourceSet set) {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i)
    if (set & (SourceSet{1} << i)) out.push_back(i + 1);
  return out;
}

bool lex_less(SourceSet a, SourceSet b) {
  const auto ia = indices_of(a);
  const auto ib = indices_of(b);
  return std::lexicographical_compare(ia.begin(), ia.end(), ib.begin(),
                                      ib.end());
}

bool is_subset(SourceSet a, SourceSet b) { return (a & ~b) == 0; }

bool is_antichain(const std::vector<SourceSet>& elements) {
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = 0; j < elements.size(); ++j)
      if (i != j && is_subset(elements[i], elements[j])) return false;
  return true;
}

}  // namespace

std::string format_source_set(SourceSet set) {
  std::string out = "{";
  for (int i : indices_of(set)) out += std::to_string(i);
  out += "}";
  return out;
}

Atom::Atom(int sources, std::vector<SourceSet> elements)
    : sources_(sources), elements_(std::move(elements)) {
  if (sources < 1 || sources > 31)
    fail(ErrorKind::argument, "atom source count out of range");
  if (elements_.empty()) fail(ErrorKind::argument, "atom has no elements");
  const SourceSet full = (SourceSet{1} << sources) - 1;
  for (SourceSet e : elements_) {
    if (e == 0) fail(ErrorKind::argument, "atom contains an empty element");
    if (e & ~full)
      fail(ErrorKind::argument, "atom element " + format_source_set(e) +
                                    " exceeds source count " +
                                    std::to_string(sources));
  }
  std::sort(elements_.begin(), elements_.end(), lex_less);
  if (!is_antichain(elements_))
    fail(ErrorKind::argument, "atom elements are not an antichain");
}

Atom Atom::from_indices(int sources,
                        const std::vector<std::vector<int>>& elements) {
  std::vector<SourceSet> sets;
  for (const auto& e : elements) {
    SourceSet s = 0;
    for (int i : e) {
      if (i < 1 || i > sources)
        fail(ErrorKind::argument, "source index " + std::to_string(i) +
                                      " outside 1.." + std::to_string(sources));
      s |= SourceSet{1} << (i - 1);
    }
    sets.push_back(s);
  }
  return Atom(sources, std::move(sets));
}

std::string Atom::to_string() const {
  std::string out;
  for (SourceSet e : elements_) out += format_source_set(e);
  return out;
}

bool precedes(const Atom& a, const Atom& b) {
  if (a.sources() != b.sources())
    fail(ErrorKind::argument, "atoms defined over different source counts");
  for (SourceSet hi : b.elements()) {
    const bool covered =
        std::any_of(a.elements().begin(), a.elements().end(),
                    [hi](SourceSet lo) { return is_subset(lo, hi); });
    if (!covered) return false;
  }
  return true;
}

RedundancyLattice::RedundancyLattice(int sources) : sources_(sources) {
  if (sources < 1 || sources > kMaxSources)
    fail(ErrorKind::capability,
         "redundancy lattices are supported for 1.." +
             std::to_string(kMaxSources) + " sources, got " +
             std::to_string(sources));

  // Candidate antichains are subsets of the 2^M - 1 nonempty source sets.
  const int n_sets = (1 << sources) - 1;
  std::vector<Atom> found;
  for (std::uint32_t pick = 1; pick < (std::uint32_t{1} << n_sets); ++pick) {
    std::vector<SourceSet> elements;
    for (int k = 0; k < n_sets; ++k)
      if (pick & (std::uint32_t{1} << k))
        elements.push_back(static_cast<SourceSet>(k + 1));
    if (is_antichain(elements)) found.emplace_back(sources, std::move(elements));
  }

  const std::size_t n = found.size();
  std::vector<std::size_t> down_count(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (pird::precedes(found[j], found[i])) ++down_count[i];

  // A strictly smaller atom has a strictly smaller down-set, so sorting by
  // down-set size gives a linear extension of the order.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (down_count[a] != down_count[b]) return down_count[a] < down_count[b];
    return found[a].to_string() < found[b].to_string();
  });
  atoms_.reserve(n);
  for (std::size_t i : order) atoms_.push_back(found[i]);

  leq_.assign(n, std::vector<bool>(n, false));
  below_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      leq_[j][i] = pird::precedes(atoms_[j], atoms_[i]);
      if (j != i && leq_[j][i]) below_[i].push_back(j);
    }
}

std::size_t RedundancyLattice::index_of(const Atom& atom) const {
  const auto it = std::find(atoms_.begin(), atoms_.end(), atom);
  if (it == atoms_.end())
    fail(ErrorKind::argument, "atom " + atom.to_string() + " not in lattice");
  return static_cast<std::size_t>(it - atoms_.begin());
}

bool RedundancyLattice::precedes(std::size_t a, std::size_t b) const {
  return leq_.at(a).at(b);
}

RedundancyLattice enumerate_antichains(int sources) {
  return RedundancyLattice(sources);
}

void moebius_invert(const RedundancyLattice& lattice,
                    std::span<const double> redundancy,
                    std::span<double> partial) {
  if (redundancy.size() != lattice.size() || partial.size() != lattice.size())
    fail(ErrorKind::argument, "redundancy values must cover every atom");
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    double acc = redundancy[i];
    for (std::size_t j : lattice.strict_down_set(i)) acc -= partial[j];
    partial[i] = acc;
  }
}

std::vector<double> moebius_invert(const RedundancyLattice& lattice,
                                   std::span<const double> redundancy) {
  std::vector<double> partial(lattice.size());
  moebius_invert(lattice, redundancy, partial);
  return partial;
}

std::map<Atom, double> moebius_invert(
    const RedundancyLattice& lattice,
    const std::map<Atom, double>& redundancy) {
  std::vector<double> red(lattice.size());
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const auto it = redundancy.find(lattice.atom(i));
    if (it == redundancy.end())
      fail(ErrorKind::argument,
           "missing redundancy value for atom " + lattice.atom(i).to_string());
    red[i] = it->second;
  }
  const auto partial = moebius_invert(lattice, red);
  std::map<Atom, double> out;
  for (std::size_t i = 0; i < lattice.size(); ++i)
    out.emplace(lattice.atom(i), partial[i]);
  return out;
}

AtomLabel atom_label(const Atom& atom) {
  int singletons = 0;
  int which = 0;
  for (SourceSet e : atom.elements())
    if (std::popcount(e) == 1) {
      ++singletons;
      which = std::countr_zero(e) + 1;
    }
  if (singletons >= 2) return {AtomGroup::redundant, 0};
  if (singletons == 1) return {AtomGroup::unique, which};
  return {AtomGroup::synergistic, 0};
}

}  // namespace pird
