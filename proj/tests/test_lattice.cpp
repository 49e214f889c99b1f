#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "pird/error.hpp"
#include "pird/lattice.hpp"

using namespace pird;

namespace {

// Independent count: every nonempty family of nonempty subsets with no
// member contained in another.
std::size_t brute_force_antichains(int m) {
  const std::uint32_t n_sets = (1u << m) - 1;
  std::size_t count = 0;
  for (std::uint64_t family = 1; family < (std::uint64_t{1} << n_sets); ++family) {
    bool ok = true;
    for (std::uint32_t a = 0; a < n_sets && ok; ++a) {
      if (!(family >> a & 1)) continue;
      for (std::uint32_t b = 0; b < n_sets && ok; ++b) {
        if (a == b || !(family >> b & 1)) continue;
        const std::uint32_t sa = a + 1, sb = b + 1;
        if ((sa & sb) == sa) ok = false;
      }
    }
    count += ok;
  }
  return count;
}

Atom atom(int m, std::vector<std::vector<int>> e) { return Atom::from_indices(m, e); }

}  // namespace

TEST_CASE("lattice sizes match brute-force antichain counts") {
  for (int m = 1; m <= 4; ++m) {
    const RedundancyLattice lat(m);
    CHECK(lat.size() == brute_force_antichains(m));
  }
  CHECK(RedundancyLattice(1).size() == 1);
  CHECK(RedundancyLattice(2).size() == 4);
  CHECK(RedundancyLattice(3).size() == 18);
  CHECK(RedundancyLattice(4).size() == 166);
}

TEST_CASE("lattice rejects unsupported source counts") {
  CHECK_THROWS_AS(RedundancyLattice(0), Error);
  CHECK_THROWS_AS(RedundancyLattice(5), Error);
  try {
    RedundancyLattice bad(5);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::capability);
  }
}

TEST_CASE("atoms are canonical and validated") {
  CHECK(atom(3, {{2, 3}, {1}}) == atom(3, {{1}, {2, 3}}));
  CHECK(atom(3, {{1}, {2, 3}}).to_string() == "{1}{23}");
  CHECK_THROWS_AS(atom(2, {{1}, {1, 2}}), Error);
  CHECK_THROWS_AS(atom(2, {{3}}), Error);
  CHECK_THROWS_AS(atom(2, {}), Error);
  CHECK_THROWS_AS(atom(2, {{}}), Error);
}

TEST_CASE("Williams-Beer order") {
  CHECK(precedes(atom(2, {{1}, {2}}), atom(2, {{1}})));
  CHECK(precedes(atom(2, {{1}}), atom(2, {{1, 2}})));
  CHECK_FALSE(precedes(atom(2, {{1}}), atom(2, {{2}})));
  CHECK(precedes(atom(2, {{1}}), atom(2, {{1}})));
  CHECK(precedes(atom(3, {{1}, {2}, {3}}), atom(3, {{1, 2}, {1, 3}, {2, 3}})));
  CHECK_FALSE(precedes(atom(3, {{1, 2}, {1, 3}, {2, 3}}), atom(3, {{1}, {2}})));
  CHECK_THROWS_AS(precedes(atom(2, {{1}}), atom(3, {{1}})), Error);
}

TEST_CASE("lattice order is a linear extension with a single bottom and top") {
  for (int m = 1; m <= 4; ++m) {
    const RedundancyLattice lat(m);
    std::vector<std::vector<int>> all_singletons;
    for (int i = 1; i <= m; ++i) all_singletons.push_back({i});
    std::vector<int> everything;
    for (int i = 1; i <= m; ++i) everything.push_back(i);
    CHECK(lat.atom(lat.bottom()) == atom(m, all_singletons));
    CHECK(lat.atom(lat.top()) == atom(m, {everything}));
    for (std::size_t i = 0; i < lat.size(); ++i) {
      CHECK(lat.index_of(lat.atom(i)) == i);
      CHECK(lat.precedes(lat.bottom(), i));
      CHECK(lat.precedes(i, lat.top()));
      for (std::size_t j : lat.strict_down_set(i)) {
        CHECK(j < i);
        CHECK(precedes(lat.atom(j), lat.atom(i)));
      }
      std::size_t below = 0;
      for (std::size_t j = 0; j < lat.size(); ++j)
        below += j != i && precedes(lat.atom(j), lat.atom(i));
      CHECK(below == lat.strict_down_set(i).size());
    }
  }
}

TEST_CASE("Moebius inversion, two sources") {
  const RedundancyLattice lat(2);
  std::map<Atom, double> red{{atom(2, {{1}, {2}}), 0.2},
                             {atom(2, {{1}}), 0.5},
                             {atom(2, {{2}}), 0.5},
                             {atom(2, {{1, 2}}), 0.7}};
  const auto pi = moebius_invert(lat, red);
  CHECK(pi.at(atom(2, {{1}, {2}})) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(pi.at(atom(2, {{1}})) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(pi.at(atom(2, {{2}})) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(pi.at(atom(2, {{1, 2}})) == doctest::Approx(-0.1).epsilon(1e-14));

  red.erase(atom(2, {{2}}));
  CHECK_THROWS_AS(moebius_invert(lat, red), Error);
}

TEST_CASE("constant redundancy puts everything on the bottom atom") {
  for (int m = 1; m <= 4; ++m) {
    const RedundancyLattice lat(m);
    const std::vector<double> red(lat.size(), 1.25);
    const auto pi = moebius_invert(lat, red);
    CHECK(pi[lat.bottom()] == 1.25);
    for (std::size_t i = 1; i < lat.size(); ++i) CHECK(std::abs(pi[i]) < 1e-12);
  }
}

TEST_CASE("Moebius inversion reconstructs redundancy from down-sets") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int m = 1; m <= 4; ++m) {
    const RedundancyLattice lat(m);
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<double> red(lat.size());
      for (auto& r : red) r = u(rng);
      const auto pi = moebius_invert(lat, red);
      for (std::size_t i = 0; i < lat.size(); ++i) {
        double sum = pi[i];
        for (std::size_t j : lat.strict_down_set(i)) sum += pi[j];
        CHECK(std::abs(sum - red[i]) < 1e-12);
      }
    }
  }
}

TEST_CASE("atom labels by singleton count") {
  auto label = [](const Atom& a) { return atom_label(a); };
  CHECK(label(atom(2, {{1}, {2}})).group == AtomGroup::redundant);
  CHECK(label(atom(2, {{1, 2}})).group == AtomGroup::synergistic);
  CHECK(label(atom(3, {{2}, {1, 3}})).group == AtomGroup::unique);
  CHECK(label(atom(3, {{2}, {1, 3}})).source == 2);
  CHECK(label(atom(3, {{1, 2}, {1, 3}})).group == AtomGroup::synergistic);

  const RedundancyLattice lat(3);
  std::map<AtomGroup, int> counts;
  for (const auto& a : lat.atoms()) ++counts[label(a).group];
  CHECK(counts[AtomGroup::redundant] == 4);
  CHECK(counts[AtomGroup::unique] == 6);
  CHECK(counts[AtomGroup::synergistic] == 8);
}
