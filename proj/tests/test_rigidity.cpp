#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "p2rigid/catalog.hpp"
#include "p2rigid/errors.hpp"
#include "p2rigid/rigidity.hpp"

using namespace p2r;

namespace {

CycloNum C(long v) { return CycloNum(v); }

ProjPoint P(long a, long b, long c) { return ProjPoint::normalize({C(a), C(b), C(c)}); }

std::set<std::string> strings(const std::vector<ProjPoint>& pts) {
  std::set<std::string> s;
  for (const auto& p : pts) s.insert(p.to_string());
  return s;
}

Mat3 random_invertible(std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-2, 2);
  for (;;) {
    std::array<std::array<CycloNum, 3>, 3> rows;
    for (auto& r : rows)
      for (auto& x : r) x = C(d(rng));
    const Mat3 m = Mat3::from_rows(rows);
    if (!det(m).is_zero()) return m;
  }
}

}  // namespace

TEST_CASE("classify_action examples") {
  const ActionClass i = classify_action(catalog_group("INTRANSITIVE_SAMPLE"));
  CHECK(i.kind == ActionClass::Kind::Intransitive);
  REQUIRE(i.fixed_point);
  CHECK(*i.fixed_point == P(1, 0, 0));

  const ActionClass s = classify_action(catalog_group("S4_MONO"));
  CHECK(s.kind == ActionClass::Kind::Imprimitive);
  CHECK(strings(s.distinguished) == strings({P(1, 0, 0), P(0, 1, 0), P(0, 0, 1)}));
  CHECK(s.warning.empty());

  CHECK(classify_action(catalog_group("E108")).kind == ActionClass::Kind::Primitive);
  CHECK(classify_action(catalog_group("A5_I")).kind == ActionClass::Kind::Primitive);
  CHECK(classify_action(closure({Mat3::identity()})).kind == ActionClass::Kind::Intransitive);
}

TEST_CASE("classify_action is invariant under conjugation") {
  std::mt19937 rng(5);
  for (const char* id : {"INTRANSITIVE_SAMPLE", "C3xC3_MONO", "A4_MONO", "T_2_7", "E108", "A5_I"}) {
    CAPTURE(id);
    const GroupData& g = catalog_group(id);
    const auto kind = classify_action(g).kind;
    const GroupData h = conjugate_group(g, random_invertible(rng));
    CHECK(classify_action(h).kind == kind);
  }
}

TEST_CASE("A4 and S4 identification") {
  CHECK(is_A4_or_S4(catalog_group("A4_MONO")) == std::optional<std::string>("A4"));
  CHECK(is_A4_or_S4(catalog_group("S4_MONO")) == std::optional<std::string>("S4"));
  CHECK_FALSE(is_A4_or_S4(catalog_group("C3xC3_MONO")));
  CHECK_FALSE(is_A4_or_S4(catalog_group("T_2_7")));
  // Order 12 with the wrong histogram: the cyclic group of order 12.
  CHECK_FALSE(is_A4_or_S4(closure({Mat3::diagonal(CycloNum::zeta(12, 1), CycloNum::zeta(12, 11), C(1))})));
}

TEST_CASE("verdict examples") {
  const Verdict a4 = rigidity_verdict(catalog_group("A4_MONO"));
  CHECK_FALSE(a4.rigid);
  CHECK(a4.rule == "size-4 orbit");
  REQUIRE(a4.witness);
  CHECK(a4.witness->kind == LinkDescriptor::Kind::TypeI);
  CHECK(a4.witness_orbit.size() == 4);

  const Verdict a5 = rigidity_verdict(catalog_group("A5_I"));
  CHECK(a5.rigid);
  CHECK_FALSE(a5.witness);
  REQUIRE(a5.reasons.size() == 1);
  CHECK(a5.reasons[0].pass);
  CHECK(a5.reasons[0].evidence["links"].size() == 1);

  const Verdict t = rigidity_verdict(catalog_group("T_2_7"));
  CHECK(t.rigid);
  long cremona = 0, bertini = 0;
  for (const auto& r : t.reasons) {
    CHECK(r.pass);
    if (r.name == "blowup of orbit sizes 3") ++cremona;
    if (r.name == "blowup of orbit sizes 7") ++bertini;
  }
  CHECK(cremona == 1);
  CHECK(bertini == 3);

  const Verdict s4 = rigidity_verdict(catalog_group("S4_MONO"));
  CHECK_FALSE(s4.rigid);
  bool excluded8 = false;
  for (const auto& r : s4.reasons)
    if (r.name == "blowup of orbit sizes 8") excluded8 = r.evidence["status"] == "excluded: not in general position";
  CHECK(excluded8);

  const Verdict in = rigidity_verdict(catalog_group("INTRANSITIVE_SAMPLE"));
  CHECK_FALSE(in.rigid);
  CHECK(in.rule == "fixed point");
  REQUIRE(in.witness);
  CHECK(in.witness->fibration_class == DPClass{1, {1}, -1});

  for (const char* id : {"F216", "H648"}) {
    const Verdict v = rigidity_verdict(catalog_group(id));
    CHECK(v.rigid);
    CHECK(v.reasons.empty());
  }
}

TEST_CASE("verdict is deterministic and generator-order independent") {
  for (const char* id : {"C3xC3_MONO", "A4_MONO", "S4_MONO", "E108", "A5_II"}) {
    CAPTURE(id);
    const GroupData& g = catalog_group(id);
    const std::string a = rigidity_verdict(g).to_json().dump();
    CHECK(rigidity_verdict(g).to_json().dump() == a);
    const CatalogEntry e = build(id);
    std::vector<Mat3> rev(e.generators.rbegin(), e.generators.rend());
    const Verdict v = rigidity_verdict(closure(rev));
    const Verdict w = rigidity_verdict(g);
    CHECK(v.rigid == w.rigid);
    CHECK(v.rule == w.rule);
    CHECK(v.reasons.size() == w.reasons.size());
  }
}

TEST_CASE("verify_paper bookkeeping") {
  const auto& names = check_names();
  CHECK(std::is_sorted(names.begin(), names.end()));
  CHECK(std::adjacent_find(names.begin(), names.end()) == names.end());
  CHECK_THROWS_AS(verify_paper("no_such_check"), InputError);
  for (const char* n : {"link_cremona", "hessian_f216_merge", "monomial_a4_orbits"}) {
    const PaperReport a = verify_paper(n), b = verify_paper(n);
    REQUIRE(a.checks.size() == 1);
    CHECK(a.checks[0].name == n);
    CHECK(a.checks[0].pass);
    CHECK_FALSE(a.checks[0].evidence.empty());
    CHECK(a.to_json().dump() == b.to_json().dump());
    CHECK(a.to_text() == b.to_text());
  }
  const Json j = verify_paper("link_bertini").to_json();
  CHECK(j["checks"][0].contains("check"));
  CHECK(j["checks"][0].contains("citation"));
  CHECK(j["checks"][0]["pass"].is_boolean());
  CHECK(j["checks"][0]["evidence"].is_object());
}
