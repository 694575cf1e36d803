#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "p2rigid/catalog.hpp"
#include "p2rigid/orbits.hpp"

using namespace p2r;

namespace {

CycloNum Z(int n, long e = 1) { return CycloNum::zeta(n, e); }
CycloNum C(long v) { return CycloNum(v); }

ProjPoint P(const CycloNum& a, const CycloNum& b, const CycloNum& c) { return ProjPoint::normalize({a, b, c}); }

std::map<long, long> size_counts(const std::vector<Orbit>& orbits) {
  std::map<long, long> out;
  for (const auto& o : orbits) ++out[o.size()];
  return out;
}

const Orbit* find_orbit(const SmallOrbitReport& r, const ProjPoint& p) {
  for (const auto& o : r.sporadic)
    if (o.contains(p)) return &o;
  return nullptr;
}

bool on_conic(const Orbit& o, const std::string& name) {
  for (const auto& c : fixtures().conics)
    if (c.name == name)
      return std::all_of(o.points.begin(), o.points.end(),
                         [&](const ProjPoint& p) { return conic_value(c.coeffs, p.coords()).is_zero(); });
  return false;
}

// Orbit of p computed by applying every group element, as an independent
// check of the generator BFS.
std::set<std::string> orbit_by_elements(const GroupData& g, const ProjPoint& p) {
  std::set<std::string> out;
  const int w = static_cast<int>(lcm_int(g.conductor, p.conductor()));
  for (const auto& e : g.elements) out.insert(e.embed(w).apply(p.embed(w)).minimized().to_string());
  return out;
}

}  // namespace

TEST_CASE("orbit basics") {
  const GroupData& t = catalog_group("T_2_7");
  const Orbit d = orbit(t, P(C(1), C(0), C(0)));
  CHECK(d.size() == 3);
  CHECK(d.contains(P(C(0), C(1), C(0))));
  CHECK(d.contains(P(C(0), C(0), C(1))));
  CHECK(orbit(t, P(C(1), C(1), C(1))).size() == 7);
  CHECK(orbit(catalog_group("A4_MONO"), P(C(1), C(1), C(1))).size() == 4);
  CHECK_THROWS_AS(orbit(t, P(C(1), C(1), C(1)), 5), OrbitTooLarge);
}

TEST_CASE("orbit order is deterministic and starts at the smallest point") {
  const GroupData& g = catalog_group("S4_MONO");
  const Orbit a = orbit(g, P(C(0), C(1), C(1)));
  const Orbit b = orbit(g, P(C(1), C(0), C(-1)));
  CHECK(a.points == b.points);
  CHECK(a.points[0] == *std::min_element(a.points.begin(), a.points.end()));
}

TEST_CASE("orbits agree with the full element action") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> v(-3, 3);
  for (const char* id : {"A4_MONO", "S4_MONO", "T_4_21", "E108", "A5_I"}) {
    const GroupData& g = catalog_group(id);
    for (int i = 0; i < 5; ++i) {
      const ProjPoint p = P(C(1), C(v(rng)), C(v(rng)));
      const Orbit o = orbit(g, p);
      std::set<std::string> got;
      for (const auto& q : o.points) got.insert(q.minimized().to_string());
      CHECK(got == orbit_by_elements(g, p));
      CHECK(g.proj_order() % o.size() == 0);
    }
  }
}

TEST_CASE("small orbits of the monomial groups") {
  SUBCASE("C3 x C3") {
    const auto r = small_orbits(catalog_group("C3xC3_MONO"), 8);
    CHECK(r.complete);
    CHECK(size_counts(r.sporadic) == std::map<long, long>{{3, 4}});
    CHECK(r.families.empty());
  }
  SUBCASE("A4") {
    const auto r = small_orbits(catalog_group("A4_MONO"), 8);
    CHECK(r.complete);
    CHECK(size_counts(r.sporadic) == std::map<long, long>{{3, 1}, {4, 3}});
    REQUIRE(r.families.size() == 1);
    const LineFamily& f = r.families[0];
    CHECK(f.generic_orbit_size() == 6);
    CHECK(f.line_orbit_size == 3);
    CHECK(f.induced_order == 2);
    long conic_orbits = 0;
    for (const auto& e : f.exceptional) {
      if (e.reason.rfind("on conic", 0) != 0) continue;
      ++conic_orbits;
      CHECK(e.orbit.size() == 6);
      CHECK(six_on_conic(e.orbit.points));
    }
    CHECK(conic_orbits == 3);
    // The orbit of (0:1:z12^3) is one of them.
    bool found = false;
    for (const auto& e : f.exceptional) found = found || e.orbit.contains(P(C(0), C(1), Z(12, 3)));
    CHECK(found);
  }
  SUBCASE("S4") {
    const auto r = small_orbits(catalog_group("S4_MONO"), 8);
    CHECK(r.complete);
    CHECK(size_counts(r.sporadic) == std::map<long, long>{{3, 1}, {4, 1}, {6, 2}, {8, 1}});
    CHECK(r.families.empty());
    const Orbit* o011 = find_orbit(r, P(C(0), C(1), C(1)));
    REQUIRE(o011);
    CHECK(o011->size() == 6);
    // The orbit is the six pairwise meets of the lines x +- y +- z = 0, so it
    // has collinear triples such as (0:1:1), (1:1:0), (1:0:-1).
    CHECK(o011->contains(P(C(1), C(1), C(0))));
    CHECK(o011->contains(P(C(1), C(0), C(-1))));
    CHECK(collinear(P(C(0), C(1), C(1)), P(C(1), C(1), C(0)), P(C(1), C(0), C(-1))));
    const GenPosReport gp = general_position(o011->points);
    CHECK_FALSE(gp.ok);
    CHECK(gp.failure == GenPosReport::Failure::Collinear);
    const Orbit* oi = find_orbit(r, P(C(0), C(1), Z(4)));
    REQUIRE(oi);
    CHECK(oi->size() == 6);
    CHECK(on_conic(*oi, "C1"));
    const Orbit& eight = r.sporadic.back();
    CHECK(eight.size() == 8);
    CHECK(on_conic(eight, "C1"));
  }
  SUBCASE("T(2,7)") {
    const auto r = small_orbits(catalog_group("T_2_7"), 8);
    CHECK(size_counts(r.sporadic) == std::map<long, long>{{3, 1}, {7, 3}});
    for (const auto& o : r.sporadic)
      if (o.size() == 7) CHECK(general_position(o.points).ok);
  }
}

TEST_CASE("small orbits of the primitive groups") {
  const auto e = small_orbits(catalog_group("E108"), 8);
  CHECK(e.complete);
  REQUIRE(e.sporadic.size() == 2);
  const auto& fx = fixtures();
  for (const auto* list : {&fx.hessian_orbit_1, &fx.hessian_orbit_2}) {
    const Orbit* o = find_orbit(e, (*list)[0]);
    REQUIRE(o);
    CHECK(o->size() == 6);
    for (const auto& p : *list) CHECK(o->contains(p));
    CHECK(general_position(o->points).ok);
  }
  const auto f = small_orbits(catalog_group("F216"), 12);
  CHECK(size_counts(f.sporadic) == std::map<long, long>{{9, 1}, {12, 1}});
  const Orbit* merged = find_orbit(f, fx.hessian_orbit_1[0]);
  REQUIRE(merged);
  CHECK(merged->size() == 12);
  CHECK(merged->contains(fx.hessian_orbit_2[0]));
  for (const char* id : {"F216", "H648", "PSL27", "A6_3FOLD"}) {
    const auto r = small_orbits(catalog_group(id), 8);
    CHECK(r.complete);
    CHECK(r.sporadic.empty());
    CHECK(r.families.empty());
  }
  for (const char* id : {"A5_I", "A5_II"}) {
    const auto r = small_orbits(catalog_group(id), 8);
    REQUIRE(r.sporadic.size() == 1);
    CHECK(r.sporadic[0].size() == 6);
    CHECK(general_position(r.sporadic[0].points).ok);
  }
}

TEST_CASE("intransitive groups are reported as incomplete") {
  const auto r = small_orbits(catalog_group("INTRANSITIVE_SAMPLE"), 8);
  CHECK_FALSE(r.complete);
  CHECK(size_counts(r.sporadic) == std::map<long, long>{{1, 3}});
  CHECK_THROWS_AS(small_orbits(catalog_group("A4_MONO"), 0), InputError);
}

TEST_CASE("eigen orbit sizes") {
  const GroupData& a5 = catalog_group("A5_I");
  const Mat3 t = tau(), r = icosahedral_R();
  auto sizes = eigen_orbit_sizes(a5, t * r, t);
  std::multiset<long> ms(sizes.begin(), sizes.end());
  CHECK(ms.count(6) >= 1);
  CHECK(ms.count(10) >= 1);
  for (long s : ms) CHECK((s == 6 || s == 10 || s == 12 || s == 20));
  CHECK_THROWS_AS(eigen_orbit_sizes(a5, r, t), MethodInapplicable);

  const auto k = klein_generators();
  const GroupData& psl = catalog_group("PSL27");
  for (long s : eigen_orbit_sizes(psl, k[0], k[1])) CHECK((s == 21 || s == 24 || s == 28 || s == 56));

  const auto ab = a6_standard_generators();
  for (long s : eigen_orbit_sizes(catalog_group("A6_3FOLD"), ab[1], ab[0] * ab[1] * ab[1]))
    CHECK((s == 36 || s == 45 || s == 72 || s == 90));
}

TEST_CASE("general position primitives") {
  CHECK(collinear(P(C(1), C(0), C(0)), P(C(0), C(1), C(0)), P(C(1), C(1), C(0))));
  CHECK_FALSE(collinear(P(C(1), C(0), C(0)), P(C(0), C(1), C(0)), P(C(0), C(0), C(1))));
  const std::vector<ProjPoint> conic{P(C(1), C(0), C(0)), P(C(0), C(1), C(0)), P(C(0), C(0), C(1)),
                                     P(C(1), C(1), C(1)), P(C(1), C(2), C(3)), P(C(1), C(-1), C(5))};
  // Five points fix a conic; (1:-1:5) lies on it only by accident, so expect no.
  CHECK_FALSE(six_on_conic(conic));
  // The conic xy + yz + zx = 0 through the coordinate points.
  const std::vector<ProjPoint> on{P(C(1), C(0), C(0)), P(C(0), C(1), C(0)), P(C(0), C(0), C(1)),
                                  P(C(1), C(1), CycloNum(Rational(-1, 2))), P(C(2), C(1), CycloNum(Rational(-2, 3))),
                                  P(C(1), C(3), CycloNum(Rational(-3, 4)))};
  CHECK(six_on_conic(on));
  std::vector<ProjPoint> dup = on;
  dup[5] = dup[0];
  CHECK_THROWS_AS(six_on_conic(dup), InputError);
  CHECK_THROWS_AS(six_on_conic({on[0], on[1]}), InputError);
}

TEST_CASE("general position of orbits") {
  const auto r = small_orbits(catalog_group("S4_MONO"), 8);
  const Orbit& eight = r.sporadic.back();
  REQUIRE(eight.size() == 8);
  const GenPosReport g8 = general_position(eight.points);
  CHECK_FALSE(g8.ok);
  CHECK(g8.failure == GenPosReport::Failure::OnConic);
  REQUIRE(g8.witness.size() == 6);
  std::vector<ProjPoint> six;
  for (int i : g8.witness) six.push_back(eight.points[i]);
  CHECK(six_on_conic(six));

  const GroupData& a4 = catalog_group("A4_MONO");
  const Orbit o = orbit(a4, P(C(0), C(1), Z(12, 3)));
  CHECK(o.size() == 6);
  CHECK(six_on_conic(o.points));

  const auto& fx = fixtures();
  CHECK_FALSE(six_on_conic(orbit(catalog_group("E108"), fx.hessian_orbit_1[0]).points));

  std::vector<ProjPoint> nine = eight.points;
  nine.push_back(P(C(1), C(2), C(3)));
  CHECK_THROWS_AS(general_position(nine), InputError);
  CHECK_THROWS_AS(general_position({}), InputError);
  CHECK_THROWS_AS(general_position({eight.points[0], eight.points[0]}), InputError);
}

TEST_CASE("collinear witness") {
  const std::vector<ProjPoint> pts{P(C(1), C(0), C(0)), P(C(0), C(0), C(1)), P(C(0), C(1), C(0)),
                                   P(C(1), C(1), C(0))};
  const GenPosReport r = general_position(pts);
  CHECK_FALSE(r.ok);
  CHECK(r.failure == GenPosReport::Failure::Collinear);
  CHECK(r.witness == std::vector<int>{0, 2, 3});
  CHECK(collinear(pts[0], pts[2], pts[3]));
}

TEST_CASE("eight points on a cubic singular at one of them") {
  // Nodal cubic y^2 z = x^3 + x^2 z, singular at (0:0:1). Points from the
  // parametrization (t^2 - 1 : t^3 - t : 1).
  std::vector<ProjPoint> pts{P(C(0), C(0), C(1))};
  for (long t : {2, 3, -2, -3, 4, 5, -4}) pts.push_back(P(C(t * t - 1), C(t * t * t - t), C(1)));
  CHECK(eight_on_singular_cubic(pts));
  CHECK(singular_cubic_point(pts) == 0);
  // Eight points of a smooth cubic chosen generically.
  std::vector<ProjPoint> gen;
  for (long t : {1, 2, 3, 5, 7, 11, 13, 17}) gen.push_back(P(C(1), C(t), C(t * t * t + 2 * t + 3)));
  CHECK_FALSE(eight_on_singular_cubic(gen));
}

TEST_CASE("induced permutations") {
  const std::vector<ProjPoint> axes{P(C(1), C(0), C(0)), P(C(0), C(1), C(0)), P(C(0), C(0), C(1))};
  const auto s = induced_permutation(ProjElement::normalize(tau()), axes);
  CHECK(s != std::vector<int>{0, 1, 2});
  CHECK(s[s[s[0]]] == 0);
  CHECK(induced_permutation(ProjElement::normalize(Mat3::identity()), axes) == std::vector<int>{0, 1, 2});
  CHECK_THROWS_AS(induced_permutation(ProjElement::normalize(tau()), {axes[0], axes[1]}), NotInvariant);

  // sigma of S4 swaps the two 4-point orbits of A4 inside the 8-point orbit.
  const GroupData& a4 = catalog_group("A4_MONO");
  const auto r = small_orbits(catalog_group("S4_MONO"), 8);
  const Orbit& eight = r.sporadic.back();
  const Orbit o2 = orbit(a4, eight.points[0]);
  REQUIRE(o2.size() == 4);
  const auto perm = induced_permutation(ProjElement::normalize(sigma({2, C(-1), C(1), C(1)})), eight.points);
  for (std::size_t i = 0; i < eight.points.size(); ++i)
    CHECK(o2.contains(eight.points[i]) != o2.contains(eight.points[perm[i]]));
}

TEST_CASE("reported orbits are invariant and family lines are lines") {
  for (const auto& id : catalog_ids()) {
    const GroupData& g = catalog_group(id);
    const auto r = small_orbits(g, 8);
    for (const auto& o : r.sporadic) {
      CHECK(g.proj_order() % o.size() == 0);
      for (const auto& e : g.generator_images()) CHECK_NOTHROW(induced_permutation(e, o.points));
    }
    for (const auto& f : r.families) {
      std::vector<ProjPoint> on;
      for (const auto& e : f.exceptional)
        for (const auto& p : e.orbit.points)
          if (f.line.contains(p)) on.push_back(p);
      REQUIRE(on.size() >= 3);
      CHECK(collinear(on[0], on[1], on[2]));
    }
  }
}

TEST_CASE("small orbit search is complete against random sampling") {
  const auto& ids = catalog_ids();
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> v(-4, 4);
  for (const auto& id : ids) {
    const GroupData& g = catalog_group(id);
    if (g.proj_order() > 108 || g.proj_order() <= 8) continue;
    CAPTURE(id);
    const auto r = small_orbits(g, 8);
    REQUIRE(r.complete);
    std::vector<ProjPoint> sample;
    for (int i = 0; i < 500; ++i) {
      Vec3 c{C(v(rng)), C(v(rng)), C(v(rng))};
      if (c[0].is_zero() && c[1].is_zero() && c[2].is_zero()) c[2] = C(1);
      sample.push_back(ProjPoint::normalize(c));
    }
    for (int idx : prime_order_subgroup_reps(g))
      for (const auto& e : root_of_unity_eigenvalues(g.lifts[idx]))
        for (const auto& b : e.space.basis) sample.push_back(ProjPoint::normalize(b));
    for (const auto& p : sample) {
      Orbit o;
      try {
        o = orbit(g, p, 8);
      } catch (const OrbitTooLarge&) {
        continue;
      }
      bool found = find_orbit(r, o.points[0]) != nullptr;
      for (const auto& f : r.families) {
        if (o.size() != f.generic_orbit_size()) continue;
        // generic members meet some line of the family's orbit
        const Orbit lines = orbit(dual_group(g), f.line.dual());
        for (const auto& l : lines.points)
          for (const auto& q : o.points)
            if (ProjLine::normalize(l.coords()).contains(q)) found = true;
      }
      CHECK(found);
    }
  }
}
