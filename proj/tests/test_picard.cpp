#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "p2rigid/catalog.hpp"
#include "p2rigid/errors.hpp"
#include "p2rigid/orbits.hpp"
#include "p2rigid/picard.hpp"

using namespace p2r;

namespace {

// Counts (-1)-classes with d >= 1 by sorted multiplicity vectors, weighting
// each by its number of distinct arrangements.
long count_by_partitions(int n, int max_d) {
  long total = n;  // the E_i
  std::vector<long> fact(n + 1, 1);
  for (int i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;
  for (int d = 1; d <= max_d; ++d) {
    std::vector<int> m;
    auto rec = [&](auto&& self, int cap) -> void {
      if (static_cast<int>(m.size()) == n) {
        int s = 0, q = 0;
        for (int v : m) s += v, q += v * v;
        if (s != 3 * d - 1 || q != d * d + 1) return;
        std::map<int, int> mult;
        for (int v : m) ++mult[v];
        long ways = fact[n];
        for (auto [v, c] : mult) ways /= fact[c];
        total += ways;
        return;
      }
      for (int v = 0; v <= cap; ++v) {
        m.push_back(v);
        self(self, v);
        m.pop_back();
      }
    };
    rec(rec, d);
  }
  return total;
}

PermAction cyclic(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = (i + 1) % n;
  return PermAction{n, {p}};
}

std::vector<ProjPoint> first_orbit_of_size(const GroupData& g, long size) {
  for (const auto& o : small_orbits(g, 8).sporadic)
    if (o.size() == size) return o.points;
  FAIL("no orbit of size " << size);
  return {};
}

std::set<std::string> names(const std::vector<DPClass>& v) {
  std::set<std::string> s;
  for (const auto& c : v) s.insert(c.to_string());
  return s;
}

}  // namespace

TEST_CASE("(-1)-class counts against a wider partition search") {
  const std::vector<long> expected{1, 3, 6, 10, 16, 27, 56, 240};
  for (int n = 1; n <= 8; ++n) {
    CAPTURE(n);
    const auto cls = neg_one_classes(n);
    CHECK(static_cast<long>(cls.size()) == expected[n - 1]);
    CHECK(count_by_partitions(n, 8) == expected[n - 1]);
    for (const auto& c : cls) {
      CHECK(pairing(c, c) == -1);
      CHECK(c.anticanonical_degree() == 1);
    }
    CHECK(std::set<DPClass>(cls.begin(), cls.end()).size() == cls.size());
  }
  CHECK_THROWS_AS(neg_one_classes(0), InputError);
  CHECK_THROWS_AS(neg_one_classes(9), InputError);
}

TEST_CASE("named classes for three and six points") {
  CHECK(names(neg_one_classes(3)) ==
        std::set<std::string>{"E1", "E2", "E3", "(1; 1,1,0)", "(1; 1,0,1)", "(1; 0,1,1)"});
  const auto six = neg_one_classes(6);
  long lines = 0, conics = 0;
  for (const auto& c : six) {
    if (c.d == 1) ++lines;
    if (c.d == 2) {
      ++conics;
      CHECK(std::count(c.m.begin(), c.m.end(), 1) == 5);
    }
  }
  CHECK(lines == 15);
  CHECK(conics == 6);
}

TEST_CASE("pairing") {
  const DPClass g1{2, {0, 1, 1, 1, 1, 1}, -1}, g2{2, {1, 0, 1, 1, 1, 1}, -1};
  CHECK(pairing(g1, g2) == 0);
  const DPClass f12{1, {1, 1, 0}, -1};
  CHECK(pairing(DPClass::E(3, 0), f12) == 1);
  CHECK(pairing(DPClass::E(3, 0), DPClass::E(3, 0)) == -1);
  CHECK(pairing(DPClass::E(3, 0), DPClass::E(3, 1)) == 0);
  CHECK_THROWS_AS(pairing(f12, g1), InputError);
}

TEST_CASE("pairing is symmetric and permutation invariant") {
  std::mt19937 rng(11);
  for (int n : {3, 6, 7, 8}) {
    const auto cls = neg_one_classes(n);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int trial = 0; trial < 20; ++trial) {
      std::shuffle(perm.begin(), perm.end(), rng);
      const auto& a = cls[rng() % cls.size()];
      const auto& b = cls[rng() % cls.size()];
      CHECK(pairing(a, b) == pairing(b, a));
      CHECK(pairing(permute(a, perm), permute(b, perm)) == pairing(a, b));
    }
  }
}

TEST_CASE("class orbits") {
  const auto one = class_orbits(PermAction{1, {}}, neg_one_classes(1));
  CHECK(one.size() == 1);
  const auto trivial = class_orbits(PermAction{3, {}}, neg_one_classes(3));
  CHECK(trivial.size() == 6);

  // Two size-3 orbits A, B of the monomial C3xC3. The group acts faithfully
  // on A u B and the stabilizers of a point of A and of a point of B are
  // different subgroups of order 3, so the 9 lines joining A to B form one
  // orbit. The rest of the 27 classes fall into six orbits of 3.
  const GroupData& c33 = catalog_group("C3xC3_MONO");
  const auto rep = small_orbits(c33, 8);
  REQUIRE(rep.sporadic.size() == 4);
  std::vector<ProjPoint> pts = rep.sporadic[0].points;
  pts.insert(pts.end(), rep.sporadic[1].points.begin(), rep.sporadic[1].points.end());
  REQUIRE(general_position(pts).ok);
  const PermAction act = action_on_points(c33, pts);
  const auto orbits = class_orbits(act, neg_one_classes(6));
  std::multiset<std::size_t> sizes;
  for (const auto& o : orbits) sizes.insert(o.size());
  CHECK(sizes == std::multiset<std::size_t>{3, 3, 3, 3, 3, 3, 9});
  for (const auto& o : orbits)
    if (o.size() == 9)
      for (const auto& c : o) {
        CHECK(c.d == 1);
        CHECK(c.m[0] + c.m[1] + c.m[2] == 1);
      }
  CHECK(invariant_rank(act) == 3);

  const GroupData& a5 = catalog_group("A5_I");
  const auto six = first_orbit_of_size(a5, 6);
  const PermAction a5act = action_on_points(a5, six);
  CHECK(invariant_rank(a5act) == 2);
  std::map<int, std::vector<std::size_t>> sizes_by_degree;
  for (const auto& o : class_orbits(a5act, neg_one_classes(6))) sizes_by_degree[o.front().d].push_back(o.size());
  CHECK(sizes_by_degree[0] == std::vector<std::size_t>{6});
  CHECK(sizes_by_degree[1] == std::vector<std::size_t>{15});
  CHECK(sizes_by_degree[2] == std::vector<std::size_t>{6});

  CHECK_THROWS_AS(class_orbits(cyclic(3), {DPClass::E(3, 0)}), NotInvariant);
}

TEST_CASE("invariant rank") {
  CHECK(invariant_rank(PermAction{0, {}}) == 1);
  CHECK(invariant_rank(cyclic(6)) == 2);
  CHECK(invariant_rank(PermAction{6, {{1, 2, 0, 4, 5, 3}}}) == 3);
}

TEST_CASE("fibration classes") {
  // A4 on its size-4 orbits.
  const GroupData& a4 = catalog_group("A4_MONO");
  const auto four = first_orbit_of_size(a4, 4);
  const PermAction act = action_on_points(a4, four);
  const auto f = fibration_classes(act);
  REQUIRE(f.size() == 1);
  CHECK(f[0] == DPClass{2, {1, 1, 1, 1}, -1});
  CHECK(fibration_classes(act, 8) == f);

  CHECK(fibration_classes(cyclic(3)).empty());
  CHECK(fibration_classes(cyclic(3), 8).empty());
  // The pencil of lines through a single fixed point.
  CHECK(fibration_classes(PermAction{1, {}}) == std::vector<DPClass>{DPClass{1, {1}, -1}});
  for (int n = 1; n <= 8; ++n) {
    // Widening the degree bound finds nothing new for transitive actions.
    CAPTURE(n);
    CHECK(fibration_classes(cyclic(n), 5) == fibration_classes(cyclic(n), 8));
  }
}

TEST_CASE("links: Cremona, Bertini and conic blowdowns") {
  const auto three = links_from_orbit(cyclic(3), true);
  REQUIRE(three.size() == 1);
  CHECK(three[0].kind == LinkDescriptor::Kind::TypeII);
  CHECK(three[0].lands_on_p2());
  REQUIRE(three[0].contracted.size() == 1);
  CHECK(names(three[0].contracted[0]) == std::set<std::string>{"(1; 1,1,0)", "(1; 1,0,1)", "(1; 0,1,1)"});

  const GroupData& t27 = catalog_group("T_2_7");
  for (const auto& o : small_orbits(t27, 8).sporadic) {
    if (o.size() != 7) continue;
    const auto links = links_from_orbit(action_on_points(t27, o.points), general_position(o.points).ok);
    bool bertini = false;
    for (const auto& l : links) {
      CHECK(l.kind == LinkDescriptor::Kind::TypeII);
      if (l.lands_on_p2() && l.contracted[0].front().d == 3) bertini = true;
    }
    CHECK(bertini);
  }

  for (const char* id : {"A5_I", "E108"}) {
    CAPTURE(id);
    const GroupData& g = catalog_group(id);
    const auto six = first_orbit_of_size(g, 6);
    const auto links = links_from_orbit(action_on_points(g, six), general_position(six).ok);
    bool conics = false;
    for (const auto& l : links)
      if (l.lands_on_p2() && l.contracted.size() == 1 && l.contracted[0].size() == 6 &&
          l.contracted[0].front().d == 2)
        conics = true;
    CHECK(conics);
  }

  CHECK_THROWS_AS(links_from_orbit(cyclic(3), false), ConstraintError);
}

TEST_CASE("links from C3xC3 double orbit") {
  const GroupData& c33 = catalog_group("C3xC3_MONO");
  const auto rep = small_orbits(c33, 8);
  std::vector<ProjPoint> pts = rep.sporadic[0].points;
  pts.insert(pts.end(), rep.sporadic[1].points.begin(), rep.sporadic[1].points.end());
  const auto links = links_from_orbit(action_on_points(c33, pts), general_position(pts).ok);
  bool pair = false;
  for (const auto& l : links)
    if (l.lands_on_p2() && l.contracted.size() == 2) pair = true;
  CHECK(pair);
}

TEST_CASE("TypeII descriptors are consistent") {
  for (const auto& act : {cyclic(3), cyclic(6), cyclic(7), cyclic(8), PermAction{6, {{1, 2, 0, 4, 5, 3}}}}) {
    for (const auto& l : links_from_orbit(act, true)) {
      CAPTURE(l.describe());
      if (l.kind != LinkDescriptor::Kind::TypeII) continue;
      std::vector<DPClass> flat;
      for (const auto& o : l.contracted) flat.insert(flat.end(), o.begin(), o.end());
      for (std::size_t i = 0; i < flat.size(); ++i)
        for (std::size_t j = i + 1; j < flat.size(); ++j) CHECK(pairing(flat[i], flat[j]) == 0);
      CHECK(l.result_degree == 9 - act.n + static_cast<int>(flat.size()));
      CHECK(l.result_invariant_rank == 1);
      bool only_exceptional = true;
      for (const auto& c : flat) only_exceptional = only_exceptional && c.is_exceptional();
      CHECK_FALSE((only_exceptional && static_cast<int>(flat.size()) == act.n));
    }
  }
}

TEST_CASE("links do not depend on the generator list") {
  for (const char* id : {"A4_MONO", "S4_MONO", "T_2_7", "E108", "A5_I"}) {
    CAPTURE(id);
    const CatalogEntry e = build(id);
    const GroupData& g = catalog_group(id);
    std::vector<Mat3> gens(e.generators.rbegin(), e.generators.rend());
    gens.push_back(e.generators.front() * e.generators.back());
    const GroupData h = closure(gens);
    REQUIRE(groups_projectively_equal(g, h));
    for (const auto& o : small_orbits(g, 8).sporadic) {
      const auto gp = general_position(o.points);
      if (!gp.ok) continue;
      std::vector<std::string> a, b;
      for (const auto& l : links_from_orbit(action_on_points(g, o.points), true)) a.push_back(l.describe());
      for (const auto& l : links_from_orbit(action_on_points(h, o.points), true)) b.push_back(l.describe());
      CHECK(a == b);
    }
  }
}
