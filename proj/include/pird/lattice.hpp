#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace pird {

/// Largest source count for which lattices are built (166 atoms).
inline constexpr int kMaxSources = 4;

/// Bitmask over source indices: bit i-1 set means source i is included.
using SourceSet = std::uint32_t;

/// Renders a source set as "{13}".
std::string format_source_set(SourceSet set);

/// A node of the redundancy lattice: an antichain of nonempty source sets.
///
/// Elements are kept in canonical order (lexicographic on the ascending
/// index lists), so two atoms built from the same sets compare equal.
class Atom {
 public:
  Atom() = default;

  /// Throws ErrorKind::argument on empty elements, indices outside 1..M,
  /// or elements that contain one another.
  Atom(int sources, std::vector<SourceSet> elements);

  /// Convenience: {{1}, {2, 3}} style construction from index lists.
  static Atom from_indices(int sources,
                           const std::vector<std::vector<int>>& elements);

  int sources() const noexcept { return sources_; }
  const std::vector<SourceSet>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }

  /// Canonical text form, e.g. "{1}{23}".
  std::string to_string() const;

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;

 private:
  int sources_ = 0;
  std::vector<SourceSet> elements_;
};

/// Williams-Beer order: a precedes b iff every element of b contains some
/// element of a. Throws ErrorKind::argument when the source counts differ.
bool precedes(const Atom& a, const Atom& b);

/// All atoms for M sources in a bottom-up linear extension of the order,
/// with strict down-sets materialized.
class RedundancyLattice {
 public:
  explicit RedundancyLattice(int sources);

  int sources() const noexcept { return sources_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  const Atom& atom(std::size_t i) const { return atoms_.at(i); }

  /// Indices of atoms strictly below atom i. Every index is smaller than i.
  const std::vector<std::size_t>& strict_down_set(std::size_t i) const {
    return below_.at(i);
  }

  std::size_t bottom() const noexcept { return 0; }
  std::size_t top() const noexcept { return atoms_.size() - 1; }

  /// Position of an atom; throws ErrorKind::argument if absent.
  std::size_t index_of(const Atom& atom) const;

  bool precedes(std::size_t a, std::size_t b) const;

 private:
  int sources_;
  std::vector<Atom> atoms_;
  std::vector<std::vector<std::size_t>> below_;
  std::vector<std::vector<bool>> leq_;
};

RedundancyLattice enumerate_antichains(int sources);

/// Partial-information values from redundancy values, by the bottom-up
/// recursion PI(a) = red(a) - sum_{b < a} PI(b). Both spans are indexed by
/// lattice position.
void moebius_invert(const RedundancyLattice& lattice,
                    std::span<const double> redundancy,
                    std::span<double> partial);

std::vector<double> moebius_invert(const RedundancyLattice& lattice,
                                   std::span<const double> redundancy);

/// Map-based variant; throws ErrorKind::argument if an atom is missing.
std::map<Atom, double> moebius_invert(const RedundancyLattice& lattice,
                                      const std::map<Atom, double>& redundancy);

/// Coarse group of an atom by its singleton elements: two or more
/// singletons is redundancy, exactly one singleton {m} is unique to m,
/// none is synergy. Coarse terms for three or more sources sum atoms by
/// this label.
enum class AtomGroup { redundant, unique, synergistic };

struct AtomLabel {
  AtomGroup group;
  int source = 0;  // 1-based source for AtomGroup::unique, else 0
};

AtomLabel atom_label(const Atom& atom);

}  // namespace pird
