#include "p2rigid/rigidity.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "p2rigid/catalog.hpp"
#include "p2rigid/errors.hpp"

namespace p2r {

const char* const kVerdictCaveat =
    "Verdicts come from the small-orbit case analysis: orbits of size <= 8, general position and "
    "links computed on the Picard lattice. For groups outside the catalog they rely on the "
    "factorization of birational G-maps of P2 into elementary links, which is not recomputed here.";

namespace {

CycloNum C(long v) { return CycloNum(v); }
CycloNum Z(int n, long e) { return CycloNum::zeta(n, e); }

Json points_json(const std::vector<ProjPoint>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(p.to_string());
  return a;
}

std::set<std::string> point_set(const std::vector<ProjPoint>& pts) {
  std::set<std::string> s;
  for (const auto& p : pts) s.insert(p.minimized().to_string());
  return s;
}

Json sizes_json(const std::vector<Orbit>& orbits) {
  Json a = Json::array();
  for (const auto& o : orbits) a.push_back(o.size());
  return a;
}

std::multiset<long> sizes_of(const std::vector<Orbit>& orbits) {
  std::multiset<long> s;
  for (const auto& o : orbits) s.insert(o.size());
  return s;
}

Json links_json(const std::vector<LinkDescriptor>& links) {
  Json a = Json::array();
  for (const auto& l : links) a.push_back(l.describe());
  return a;
}

// Fewest nonzero coordinates first, then the leftmost nonzero coordinate.
ProjPoint simplest(const std::vector<ProjPoint>& pts) {
  auto key = [](const ProjPoint& p) {
    int nz = 0, first = 3;
    for (int i = 2; i >= 0; --i)
      if (!p[i].is_zero()) ++nz, first = i;
    return std::pair{nz, first};
  };
  return *std::min_element(pts.begin(), pts.end(), [&](const ProjPoint& a, const ProjPoint& b) {
    const auto ka = key(a), kb = key(b);
    return ka != kb ? ka < kb : a < b;
  });
}

std::vector<ProjPoint> points_on_line(const ProjLine& l) {
  const Vec3& d = l.dual().coords();
  int j = 0;
  while (d[j].is_zero()) ++j;
  std::vector<ProjPoint> out;
  for (int k = 0; k < 3; ++k) {
    if (k == j) continue;
    Vec3 v{CycloNum::zero(d[j].conductor()), CycloNum::zero(d[j].conductor()), CycloNum::zero(d[j].conductor())};
    v[k] = d[j];
    v[j] = -d[k];
    out.push_back(ProjPoint::normalize(v));
  }
  return out;
}

bool is_on(const NamedConic& q, const std::vector<ProjPoint>& pts) {
  for (const auto& p : pts)
    if (!conic_value(q.coeffs, p.coords()).is_zero()) return false;
  return true;
}

const NamedConic& conic(const std::string& name) {
  for (const auto& q : fixtures().conics)
    if (q.name == name) return q;
  throw InputError("unknown conic " + name);
}

const ProjPoint& fixture_point(const std::string& name) {
  for (const auto& [n, p] : fixtures().points)
    if (n == name) return p;
  throw InputError("unknown fixture point " + name);
}

// Orbits of size `size` in the report, in report order.
std::vector<Orbit> of_size(const SmallOrbitReport& r, long size) {
  std::vector<Orbit> out;
  for (const auto& o : r.sporadic)
    if (o.size() == size) out.push_back(o);
  return out;
}

struct Blowup {
  std::string label;
  std::vector<ProjPoint> points;
};

std::string join_sizes(const std::vector<long>& sizes) {
  std::string s;
  for (std::size_t i = 0; i < sizes.size(); ++i) s += (i ? "+" : "") + std::to_string(sizes[i]);
  return s;
}

// A member of the family whose orbit has the generic size, avoids the
// exceptional orbits and is in general position.
std::optional<std::vector<ProjPoint>> family_sample(const GroupData& g, const LineFamily& f) {
  const auto base = points_on_line(f.line);
  std::set<std::string> exceptional;
  for (const auto& e : f.exceptional)
    for (const auto& p : e.orbit.points) exceptional.insert(p.minimized().to_string());
  for (long t = 2; t <= 40; ++t) {
    Vec3 v = base[0].coords();
    const Vec3& w = base[1].coords();
    for (int i = 0; i < 3; ++i) v[i] += C(t) * w[i];
    const ProjPoint p = ProjPoint::normalize(v);
    if (exceptional.count(p.minimized().to_string())) continue;
    Orbit o;
    try {
      o = orbit(g, p, f.generic_orbit_size());
    } catch (const OrbitTooLarge&) {
      continue;
    }
    if (o.size() != f.generic_orbit_size()) continue;
    if (general_position(o.points).ok) return o.points;
  }
  return std::nullopt;
}

}  // namespace

std::string ActionClass::name() const {
  switch (kind) {
    case Kind::Intransitive:
      return "Intransitive";
    case Kind::Imprimitive:
      return "Imprimitive";
    case Kind::Primitive:
      return "Primitive";
  }
  return "";
}

ActionClass classify_action(const GroupData& g) {
  ActionClass a;
  const FixedLocus f = common_fixed_locus(g);
  if (!f.empty()) {
    a.kind = ActionClass::Kind::Intransitive;
    std::vector<ProjPoint> pts = f.points;
    for (const auto& l : f.lines)
      for (const auto& p : points_on_line(l)) pts.push_back(p);
    if (f.whole_plane) pts.push_back(ProjPoint::normalize({C(1), C(0), C(0)}));
    a.fixed_point = simplest(pts);
    return a;
  }
  const SmallOrbitReport r = small_orbits(g, 3);
  for (long size : {3L, 2L})
    for (const auto& o : r.sporadic)
      if (o.size() == size) {
        a.kind = ActionClass::Kind::Imprimitive;
        a.distinguished = o.points;
        if (size == 2) a.warning = "transitive with an orbit of size 2";
        return a;
      }
  a.kind = ActionClass::Kind::Primitive;
  return a;
}

std::optional<std::string> is_A4_or_S4(const GroupData& g) {
  const auto h = element_order_histogram(g);
  if (g.proj_order() == 12 && h == std::map<long, long>{{1, 1}, {2, 3}, {3, 8}}) return "A4";
  if (g.proj_order() == 24 && h == std::map<long, long>{{1, 1}, {2, 9}, {3, 8}, {4, 6}}) return "S4";
  return std::nullopt;
}

Json CheckResult::to_json() const {
  return Json{{"check", name}, {"citation", citation}, {"pass", pass}, {"evidence", evidence}};
}

Verdict rigidity_verdict(const GroupData& g) {
  Verdict v;
  v.action = classify_action(g);
  if (v.action.kind == ActionClass::Kind::Intransitive) {
    const std::vector<ProjPoint> pts{*v.action.fixed_point};
    const auto links = links_from_orbit(action_on_points(g, pts), general_position(pts).ok);
    CheckResult c{"blowup of fixed point", "fixed point gives a conic bundle", false,
                  Json{{"points", points_json(pts)}, {"links", links_json(links)}}};
    v.reasons.push_back(std::move(c));
    v.rigid = false;
    v.rule = "fixed point";
    for (const auto& l : links)
      if (l.kind == LinkDescriptor::Kind::TypeI) {
        v.witness = l;
        break;
      }
    v.witness_orbit = pts;
    return v;
  }

  const SmallOrbitReport rep = small_orbits(g, 8);
  if (!rep.complete) v.note = "orbit search incomplete: " + rep.note;
  std::vector<Blowup> sets;
  const int k = static_cast<int>(rep.sporadic.size());
  std::vector<std::pair<int, unsigned>> masks;
  for (unsigned mask = 1; mask < (1u << k); ++mask) masks.push_back({__builtin_popcount(mask), mask});
  std::sort(masks.begin(), masks.end());
  for (auto [count, mask] : masks) {
    Blowup b;
    std::vector<long> sizes;
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) {
        sizes.push_back(rep.sporadic[i].size());
        b.points.insert(b.points.end(), rep.sporadic[i].points.begin(), rep.sporadic[i].points.end());
      }
    if (b.points.size() > 8) continue;
    b.label = "orbit sizes " + join_sizes(sizes);
    sets.push_back(std::move(b));
  }
  for (const auto& f : rep.families) {
    const auto sample = family_sample(g, f);
    if (!sample) {
      v.note += (v.note.empty() ? "" : "; ") + std::string("no general family member found on ") + f.line.to_string();
      continue;
    }
    sets.push_back({"generic member of family on " + f.line.to_string(), *sample});
  }

  for (const auto& b : sets) {
    CheckResult c;
    c.name = "blowup of " + b.label;
    c.evidence["points"] = points_json(b.points);
    const GenPosReport gp = general_position(b.points);
    if (!gp.ok) {
      c.citation = "point sets off general position give no Del Pezzo blowup";
      c.pass = true;
      c.evidence["status"] = "excluded: not in general position";
      c.evidence["failure"] = gp.describe();
      v.reasons.push_back(std::move(c));
      continue;
    }
    const auto links = links_from_orbit(action_on_points(g, b.points), true);
    c.evidence["status"] = "links";
    c.evidence["links"] = links_json(links);
    const LinkDescriptor* bad = nullptr;
    for (const auto& l : links)
      if (!l.lands_on_p2()) {
        bad = &l;
        break;
      }
    c.pass = bad == nullptr;
    if (bad && bad->kind == LinkDescriptor::Kind::TypeI)
      c.citation = "conic bundle structure on the blowup";
    else if (bad)
      c.citation = "contraction to a surface other than P2";
    else
      c.citation = "every link returns to P2";
    if (bad) {
      const bool size4 = bad->kind == LinkDescriptor::Kind::TypeI && b.points.size() == 4 &&
                         b.label == "orbit sizes 4";
      if (v.rigid || (size4 && v.rule != "size-4 orbit")) {
        v.witness = *bad;
        v.witness_orbit = b.points;
        v.rule = size4 ? "size-4 orbit" : "link obstruction";
      }
      v.rigid = false;
    }
    v.reasons.push_back(std::move(c));
  }
  return v;
}

Json Verdict::to_json() const {
  Json j;
  j["rigid"] = rigid;
  j["action"] = action.name();
  if (action.fixed_point) j["fixed_point"] = action.fixed_point->to_string();
  if (!action.distinguished.empty()) j["distinguished_orbit"] = points_json(action.distinguished);
  if (!action.warning.empty()) j["warning"] = action.warning;
  j["rule"] = rule;
  if (witness) {
    j["witness"] = Json{{"link", witness->describe()}, {"orbit", points_json(witness_orbit)}};
  }
  Json r = Json::array();
  for (const auto& c : reasons) r.push_back(c.to_json());
  j["reasons"] = r;
  if (!note.empty()) j["note"] = note;
  j["caveat"] = kVerdictCaveat;
  return j;
}

std::string Verdict::to_text() const {
  std::ostringstream out;
  out << "# " << kVerdictCaveat << "\n";
  out << (rigid ? "RIGID" : "NOT RIGID") << "\n";
  out << "action: " << action.name();
  if (action.fixed_point) out << " fixed point " << action.fixed_point->to_string();
  if (!action.warning.empty()) out << " (" << action.warning << ")";
  out << "\n";
  if (witness) {
    out << "witness (" << rule << "): " << witness->describe() << "\n  on";
    for (const auto& p : witness_orbit) out << " " << p.to_string();
    out << "\n";
  }
  for (const auto& c : reasons) {
    out << (c.pass ? "  [ok] " : "  [obstruction] ") << c.name << ": " << c.citation << "\n";
    if (c.evidence.contains("failure")) out << "    " << c.evidence["failure"].get<std::string>() << "\n";
    if (c.evidence.contains("links"))
      for (const auto& l : c.evidence["links"]) out << "    " << l.get<std::string>() << "\n";
  }
  if (!note.empty()) out << "note: " << note << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Named checks.

namespace {

using CheckFn = std::function<CheckResult()>;

CheckResult check_catalog_projective_orders() {
  const std::map<std::string, long> claimed{
      {"C3xC3_MONO", 9}, {"A4_MONO", 12}, {"S4_MONO", 24}, {"T_2_7", 21},  {"T_4_7", 21},   {"T_4_21", 21},
      {"T_16_21", 21},   {"E108", 108},   {"F216", 216},   {"H648", 648},  {"A5_I", 60},    {"A5_II", 60},
      {"A5_W", 60},      {"PSL27", 168},  {"PSL27_W", 168}, {"A6_3FOLD", 360}};
  CheckResult c{"catalog_projective_orders", "projective orders of the catalog groups", true, Json::object()};
  Json mism = Json::array();
  for (const auto& [id, want] : claimed) {
    const long got = catalog_group(id).proj_order();
    c.evidence["orders"][id] = got;
    if (got != want) {
      c.pass = false;
      mism.push_back(Json{{"id", id}, {"claimed", want}, {"computed", got}});
    }
  }
  c.evidence["mismatches"] = mism;
  return c;
}

CheckResult check_catalog_matrix_orders() {
  CheckResult c{"catalog_matrix_orders", "orders of the matrix groups in SL(3)", true, Json::object()};
  for (const auto& id : catalog_ids()) {
    const CatalogEntry e = build(id);
    const long got = sl_closure_order(e.generators);
    c.evidence[id] = Json{{"expected", e.expected_sl_order}, {"computed", got}};
    c.pass = c.pass && got == e.expected_sl_order;
  }
  return c;
}

CheckResult check_t_conjugacy() {
  CheckResult c{"t_group_identities", "powers of the diagonal generators and conjugacy of the T groups", true,
                Json::object()};
  const Mat3 g421 = diag_matrix(21, 1, 4, -5), g1621 = diag_matrix(21, 1, 16, -17);
  const Mat3 g47 = diag_matrix(7, 1, 4, -5), g27 = diag_matrix(7, 1, 2, -3);
  auto rec = [&](const std::string& k, bool ok) {
    c.evidence[k] = ok;
    c.pass = c.pass && ok;
  };
  rec("g(4,21)^3 = g(4,7)", power(g421, 3) == g47);
  rec("g(16,21)^3 = g(2,7)", power(g1621, 3) == g27);
  rec("g(4,21)^7 = W", power(g421, 7) == hesse_W());
  rec("g(16,21)^7 = W", power(g1621, 7) == hesse_W());
  rec("|<T(2,7), W>| = |T(16,21)|",
      sl_closure_order({g27, tau(), hesse_W()}) == sl_closure_order({g1621, tau()}));
  rec("|<T(4,7), W>| = |T(4,21)|", sl_closure_order({g47, tau(), hesse_W()}) == sl_closure_order({g421, tau()}));
  rec("T(16,21) = T(2,7) projectively",
      groups_projectively_equal(catalog_group("T_16_21"), catalog_group("T_2_7")));
  rec("T(4,21) = T(4,7) projectively", groups_projectively_equal(catalog_group("T_4_21"), catalog_group("T_4_7")));
  const Mat3 m = Mat3::from_rows({{{C(1), C(0), C(0)}, {C(0), C(0), C(1)}, {C(0), C(1), C(0)}}}).scaled(C(-1));
  rec("det of conjugator = 1", det(m) == C(1));
  rec("conjugator maps T(2,7) to T(4,7)",
      groups_projectively_equal(conjugate_group(catalog_group("T_2_7"), m), catalog_group("T_4_7")));
  rec("conjugator maps T(16,21) to T(4,21)",
      groups_projectively_equal(conjugate_group(catalog_group("T_16_21"), m), catalog_group("T_4_21")));
  return c;
}

CheckResult check_survey() {
  CheckResult c{"t_group_survey", "survey of <M_k(1,a,-(a+1)), tau> for k <= 24", true, Json::object()};
  const auto cells = survey_T_groups(24, 8);
  Json seven = Json::array();
  std::set<std::pair<int, int>> got;
  long skipped = 0, capped = 0;
  for (const auto& cell : cells) {
    if (cell.skipped) ++skipped;
    if (cell.capped) ++capped;
    if (cell.skipped || cell.capped || !cell.sporadic_sizes.count(7)) continue;
    got.insert({cell.a, cell.k});
    const GroupData g = closure({diag_matrix(cell.k, 1, cell.a, -(cell.a + 1)), tau()});
    std::string same;
    if (groups_projectively_equal(g, catalog_group("T_2_7"))) same = "T_2_7";
    if (groups_projectively_equal(g, catalog_group("T_4_7"))) same = "T_4_7";
    seven.push_back(Json{{"a", cell.a}, {"k", cell.k}, {"projectively_equal_to", same}});
    if (same.empty()) c.pass = false;
  }
  for (auto ak : {std::pair{2, 7}, std::pair{4, 7}, std::pair{4, 21}, std::pair{16, 21}})
    if (!got.count(ak)) c.pass = false;
  c.evidence["cells"] = static_cast<long>(cells.size());
  c.evidence["skipped"] = skipped;
  c.evidence["capped"] = capped;
  c.evidence["size7_cells"] = seven;
  if (capped) c.pass = false;
  return c;
}

CheckResult check_c3xc3() {
  CheckResult c{"monomial_c3xc3_orbits", "C3xC3: four orbits of size 3, none on a line", true, Json::object()};
  const SmallOrbitReport r = small_orbits(catalog_group("C3xC3_MONO"), 8);
  c.evidence["sizes"] = sizes_json(r.sporadic);
  c.pass = sizes_of(r.sporadic) == std::multiset<long>{3, 3, 3, 3} && r.families.empty();
  Json gp = Json::array();
  for (const auto& o : r.sporadic) {
    const bool ok = general_position(o.points).ok;
    gp.push_back(ok);
    c.pass = c.pass && ok;
  }
  c.evidence["general_position"] = gp;
  return c;
}

CheckResult check_a4() {
  CheckResult c{"monomial_a4_orbits",
                "A4: one orbit of size 3, three of size 4 in general position, a family of size-6 orbits with "
                "three on conics",
                true, Json::object()};
  const SmallOrbitReport r = small_orbits(catalog_group("A4_MONO"), 8);
  c.evidence["sizes"] = sizes_json(r.sporadic);
  c.pass = sizes_of(r.sporadic) == std::multiset<long>{3, 4, 4, 4};
  for (const auto& o : of_size(r, 4)) c.pass = c.pass && general_position(o.points).ok;
  c.evidence["families"] = static_cast<long>(r.families.size());
  c.pass = c.pass && r.families.size() == 1;
  if (!r.families.empty()) {
    const LineFamily& f = r.families[0];
    long on_conic = 0;
    Json ex = Json::array();
    for (const auto& e : f.exceptional) {
      ex.push_back(Json{{"size", e.orbit.size()}, {"reason", e.reason}});
      if (e.reason.rfind("on conic", 0) == 0 && e.orbit.size() == 6) ++on_conic;
    }
    c.evidence["generic_size"] = f.generic_orbit_size();
    c.evidence["exceptional"] = ex;
    c.pass = c.pass && f.generic_orbit_size() == 6 && on_conic == 3;
  }
  return c;
}

CheckResult check_a4_conics() {
  CheckResult c{"monomial_a4_conics", "A4 size-4 orbits and size-6 conic orbits lie on C1, C2, C3", true,
                Json::object()};
  const GroupData& g = catalog_group("A4_MONO");
  const auto o1 = orbit(g, fixture_point("(1:1:1)")).points;
  const auto o2 = orbit(g, fixture_point("(1:z3:z3^2)")).points;
  const auto o3 = orbit(g, fixture_point("(1:z3^2:z3)")).points;
  auto rec = [&](const std::string& k, bool ok) {
    c.evidence[k] = ok;
    c.pass = c.pass && ok;
  };
  rec("O2 u O3 on C1", is_on(conic("C1"), o2) && is_on(conic("C1"), o3) && !is_on(conic("C1"), o1));
  rec("O1 u O3 on C2", is_on(conic("C2"), o1) && is_on(conic("C2"), o3) && !is_on(conic("C2"), o2));
  rec("O1 u O2 on C3", is_on(conic("C3"), o1) && is_on(conic("C3"), o2) && !is_on(conic("C3"), o3));
  for (auto [pt, q] : {std::pair{"(0:1:z12^3)", "C1"}, std::pair{"(0:1:z12)", "C2"}, std::pair{"(0:1:z12^5)", "C3"}}) {
    const auto o = orbit(g, fixture_point(pt)).points;
    rec(std::string("orbit of ") + pt + " has size 6 on " + q, o.size() == 6 && is_on(conic(q), o));
  }
  return c;
}

CheckResult check_s4() {
  CheckResult c{"monomial_s4_orbits",
                "S4: orbits of size 3, 4, 6, 6, 8; the size-4 orbit and the size-6 orbit through (0:1:1) in "
                "general position, the other size-6 orbit and the size-8 orbit on C1",
                true, Json::object()};
  const GroupData& g = catalog_group("S4_MONO");
  const SmallOrbitReport r = small_orbits(g, 8);
  c.evidence["sizes"] = sizes_json(r.sporadic);
  c.pass = sizes_of(r.sporadic) == std::multiset<long>{3, 4, 6, 6, 8} && r.families.empty();
  for (const auto& o : of_size(r, 4)) {
    c.evidence["size4_general_position"] = general_position(o.points).ok;
    c.pass = c.pass && general_position(o.points).ok;
  }
  const ProjPoint p011 = fixture_point("(0:1:1)");
  bool through = false, other_on_c1 = false;
  for (const auto& o : of_size(r, 6)) {
    const GenPosReport gp = general_position(o.points);
    if (o.contains(p011)) {
      through = true;
      c.evidence["orbit_through_(0:1:1)"] = points_json(o.points);
      c.evidence["orbit_through_(0:1:1)_general_position"] = gp.describe();
      if (!gp.ok) {
        Json w = Json::array();
        for (int i : gp.witness) w.push_back(o.points[i].to_string());
        c.evidence["collinear_witness"] = w;
        c.pass = false;
      }
    } else {
      other_on_c1 = is_on(conic("C1"), o.points);
    }
  }
  c.evidence["other_size6_on_C1"] = other_on_c1;
  c.pass = c.pass && through && other_on_c1;
  for (const auto& o : of_size(r, 8)) {
    c.evidence["size8_on_C1"] = is_on(conic("C1"), o.points);
    c.pass = c.pass && is_on(conic("C1"), o.points);
  }
  return c;
}

CheckResult check_t_orbits() {
  CheckResult c{"monomial_t_orbits",
                "T(a,k): the distinguished orbit and three orbits of size 7 through (1:z3^c:z3^2c), each in "
                "general position",
                true, Json::object()};
  for (const char* id : {"T_2_7", "T_4_7", "T_4_21", "T_16_21"}) {
    const GroupData& g = catalog_group(id);
    const SmallOrbitReport r = small_orbits(g, 8);
    bool ok = sizes_of(r.sporadic) == std::multiset<long>{3, 7, 7, 7} && r.families.empty();
    std::set<int> reps;
    for (const auto& o : of_size(r, 7)) {
      ok = ok && general_position(o.points).ok;
      for (int cc = 0; cc < 3; ++cc)
        if (o.contains(ProjPoint::normalize({C(1), Z(3, cc), Z(3, 2 * cc)}))) reps.insert(cc);
    }
    ok = ok && reps.size() == 3;
    c.evidence[id] = Json{{"sizes", sizes_json(r.sporadic)}, {"ok", ok}};
    c.pass = c.pass && ok;
  }
  return c;
}

CheckResult check_e108() {
  CheckResult c{"hessian_e108_orbits", "E108: exactly the two listed size-6 orbits, both in general position", true,
                Json::object()};
  const SmallOrbitReport r = small_orbits(catalog_group("E108"), 8);
  c.evidence["sizes"] = sizes_json(r.sporadic);
  c.evidence["complete"] = r.complete;
  std::set<std::set<std::string>> got, want{point_set(fixtures().hessian_orbit_1), point_set(fixtures().hessian_orbit_2)};
  for (const auto& o : r.sporadic) {
    got.insert(point_set(o.points));
    c.pass = c.pass && general_position(o.points).ok;
  }
  c.pass = c.pass && got == want && r.families.empty() && r.complete;
  return c;
}

CheckResult check_f216() {
  CheckResult c{"hessian_f216_merge", "F216 combines the two E108 size-6 orbits into one orbit of size 12", true,
                Json::object()};
  const GroupData& g = catalog_group("F216");
  const Orbit o = orbit(g, fixtures().hessian_orbit_1.front());
  std::set<std::string> both = point_set(fixtures().hessian_orbit_1);
  for (const auto& s : point_set(fixtures().hessian_orbit_2)) both.insert(s);
  const SmallOrbitReport r = small_orbits(g, 8);
  c.evidence["merged_size"] = o.size();
  c.evidence["small_orbits"] = sizes_json(r.sporadic);
  c.pass = o.size() == 12 && point_set(o.points) == both && r.sporadic.empty() && r.complete;
  return c;
}

CheckResult check_no_small_orbits() {
  CheckResult c{"primitive_no_small_orbits", "H648, PSL(2,7) and 3.A6 have no orbits of size <= 8", true,
                Json::object()};
  for (const char* id : {"H648", "PSL27", "PSL27_W", "A6_3FOLD"}) {
    const SmallOrbitReport r = small_orbits(catalog_group(id), 8);
    const bool ok = r.sporadic.empty() && r.families.empty() && r.complete;
    c.evidence[id] = Json{{"sizes", sizes_json(r.sporadic)}, {"complete", r.complete}};
    c.pass = c.pass && ok;
  }
  return c;
}

CheckResult check_a5() {
  CheckResult c{"a5_orbits", "A5: a single orbit of size <= 8, of size 6 and in general position", true,
                Json::object()};
  for (const char* id : {"A5_I", "A5_II", "A5_W"}) {
    const SmallOrbitReport r = small_orbits(catalog_group(id), 8);
    bool ok = sizes_of(r.sporadic) == std::multiset<long>{6} && r.families.empty() && r.complete;
    if (ok) ok = general_position(r.sporadic[0].points).ok;
    c.evidence[id] = Json{{"sizes", sizes_json(r.sporadic)}, {"ok", ok}};
    c.pass = c.pass && ok;
  }
  return c;
}

CheckResult check_a5_eigen() {
  CheckResult c{"a5_eigen_orbit_sizes", "A5 eigenvector orbits: sizes 6 and 10 occur, the rest are 12 or 20", true,
                Json::object()};
  const auto sizes = eigen_orbit_sizes(catalog_group("A5_I"), tau() * icosahedral_R(), tau());
  std::multiset<long> ms(sizes.begin(), sizes.end());
  c.evidence["sizes"] = Json(std::vector<long>(ms.begin(), ms.end()));
  c.pass = ms.count(6) && ms.count(10);
  for (long s : ms) c.pass = c.pass && (s == 6 || s == 10 || s == 12 || s == 20);
  return c;
}

CheckResult check_psl_a6_eigen() {
  CheckResult c{"psl27_a6_eigen_orbit_sizes", "eigenvector orbit sizes of PSL(2,7) and 3.A6", true, Json::object()};
  const auto k = klein_generators();
  const auto psl = eigen_orbit_sizes(catalog_group("PSL27"), k[0], k[1]);
  const auto ab = a6_standard_generators();
  const auto a6 = eigen_orbit_sizes(catalog_group("A6_3FOLD"), ab[1], ab[0] * ab[1] * ab[1]);
  c.evidence["PSL27"] = Json(psl);
  c.evidence["A6_3FOLD"] = Json(a6);
  for (long s : psl) c.pass = c.pass && (s == 21 || s == 24 || s == 28 || s == 56);
  for (long s : a6) c.pass = c.pass && (s == 36 || s == 45 || s == 72 || s == 90);
  c.pass = c.pass && !psl.empty() && !a6.empty();
  return c;
}

CheckResult check_a5_lines() {
  CheckResult c{"a5_lines_transitive", "A5 permutes the 15 lines through pairs of its size-6 orbit transitively", true,
                Json::object()};
  for (const char* id : {"A5_I", "A5_II", "A5_W"}) {
    const GroupData& g = catalog_group(id);
    const auto pts = small_orbits(g, 8).sporadic.at(0).points;
    std::set<std::string> lines;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) lines.insert(ProjLine::through(pts[i], pts[j]).dual().minimized().to_string());
    const Orbit o = orbit(dual_group(g), ProjLine::through(pts[0], pts[1]).dual());
    const bool ok = lines.size() == 15 && point_set(o.points) == lines;
    c.evidence[id] = Json{{"distinct_lines", static_cast<long>(lines.size())}, {"line_orbit", o.size()}};
    c.pass = c.pass && ok;
  }
  return c;
}

bool has_lines_contraction(const std::vector<LinkDescriptor>& links, long count) {
  for (const auto& l : links)
    if (l.lands_on_p2() && l.contracted.size() == 1 && static_cast<long>(l.contracted[0].size()) == count &&
        l.contracted[0].front().d == 1)
      return true;
  return false;
}

bool has_typeI(const std::vector<LinkDescriptor>& links, const DPClass* f = nullptr) {
  for (const auto& l : links)
    if (l.kind == LinkDescriptor::Kind::TypeI && (!f || l.fibration_class == *f)) return true;
  return false;
}

CheckResult check_link_cremona() {
  CheckResult c{"link_cremona", "blowing up a size-3 orbit: the standard Cremona involution, no conic bundle", true,
                Json::object()};
  for (const auto& id : catalog_ids()) {
    const GroupData& g = catalog_group(id);
    const ActionClass a = classify_action(g);
    if (a.kind != ActionClass::Kind::Imprimitive) continue;
    const auto links = links_from_orbit(action_on_points(g, a.distinguished), general_position(a.distinguished).ok);
    const bool ok = has_lines_contraction(links, 3) && !has_typeI(links) && links.size() == 1;
    c.evidence[id] = links_json(links);
    c.pass = c.pass && ok;
  }
  return c;
}

CheckResult check_link_c3xc3() {
  CheckResult c{"link_c3xc3_two_orbits",
                "C3xC3 on two size-3 orbits: 9 orbits of 3 curves, and contracting two of them gives P2", true,
                Json::object()};
  const GroupData& g = catalog_group("C3xC3_MONO");
  const SmallOrbitReport r = small_orbits(g, 8);
  std::vector<ProjPoint> pts = r.sporadic.at(0).points;
  pts.insert(pts.end(), r.sporadic.at(1).points.begin(), r.sporadic.at(1).points.end());
  const PermAction act = action_on_points(g, pts);
  const auto orbits = class_orbits(act, neg_one_classes(6));
  std::vector<long> sizes;
  for (const auto& o : orbits) sizes.push_back(static_cast<long>(o.size()));
  std::sort(sizes.begin(), sizes.end());
  c.evidence["class_orbit_sizes"] = Json(sizes);
  const bool nine_of_three = sizes == std::vector<long>(9, 3);
  c.evidence["nine_orbits_of_three"] = nine_of_three;
  const auto links = links_from_orbit(act, general_position(pts).ok);
  bool pair = false, all_p2 = true;
  for (const auto& l : links) {
    if (l.lands_on_p2() && l.contracted.size() == 2) pair = true;
    all_p2 = all_p2 && l.lands_on_p2();
  }
  c.evidence["links"] = links_json(links);
  c.pass = nine_of_three && pair && all_p2;
  return c;
}

CheckResult check_link_conics() {
  CheckResult c{"link_conic_blowdown", "size-6 orbits of E108 and A5: contracting the six conics gives P2", true,
                Json::object()};
  for (const char* id : {"E108", "A5_I", "A5_II", "A5_W"}) {
    const GroupData& g = catalog_group(id);
    const SmallOrbitReport r = small_orbits(g, 8);
    for (const auto& o : r.sporadic) {
      const auto links = links_from_orbit(action_on_points(g, o.points), general_position(o.points).ok);
      bool conics = false, all_p2 = true;
      for (const auto& l : links) {
        all_p2 = all_p2 && l.lands_on_p2();
        if (l.lands_on_p2() && l.contracted.size() == 1 && l.contracted[0].size() == 6 && l.contracted[0].front().d == 2)
          conics = true;
      }
      c.evidence[id].push_back(Json{{"orbit", o.points.front().to_string()}, {"links", links_json(links)}});
      c.pass = c.pass && conics && all_p2;
    }
  }
  return c;
}

CheckResult check_link_bertini() {
  CheckResult c{"link_bertini", "size-7 orbits of T(a,k): the Bertini involution back to P2", true, Json::object()};
  for (const char* id : {"T_2_7", "T_4_7"}) {
    const GroupData& g = catalog_group(id);
    for (const auto& o : of_size(small_orbits(g, 8), 7)) {
      const auto links = links_from_orbit(action_on_points(g, o.points), general_position(o.points).ok);
      bool bertini = false, all_p2 = true;
      for (const auto& l : links) {
        all_p2 = all_p2 && l.lands_on_p2();
        if (l.lands_on_p2() && l.contracted.size() == 1 && l.contracted[0].size() == 7 && l.contracted[0].front().d == 3)
          bertini = true;
      }
      c.evidence[id].push_back(Json{{"orbit", o.points.front().to_string()}, {"links", links_json(links)}});
      c.pass = c.pass && bertini && all_p2;
    }
  }
  return c;
}

CheckResult check_link_a4_s4() {
  CheckResult c{"link_a4_s4_conic_bundle", "size-4 orbits of A4 and S4: the pencil of conics (2; 1,1,1,1)", true,
                Json::object()};
  const DPClass f{2, {1, 1, 1, 1}, -1};
  for (const char* id : {"A4_MONO", "S4_MONO"}) {
    const GroupData& g = catalog_group(id);
    const auto fours = of_size(small_orbits(g, 8), 4);
    c.pass = c.pass && !fours.empty();
    for (const auto& o : fours) {
      const auto links = links_from_orbit(action_on_points(g, o.points), general_position(o.points).ok);
      c.evidence[id].push_back(links_json(links));
      c.pass = c.pass && has_typeI(links, &f);
    }
  }
  // Three points never carry a conic bundle.
  PermAction cyc{3, {{1, 2, 0}}};
  c.evidence["n3_fibrations"] = static_cast<long>(fibration_classes(cyc).size());
  c.pass = c.pass && fibration_classes(cyc).empty();
  return c;
}

CheckResult check_link_fixed_point() {
  CheckResult c{"link_fixed_point_conic_bundle", "a fixed point gives a conic bundle by the pencil of lines", true,
                Json::object()};
  const GroupData& g = catalog_group("INTRANSITIVE_SAMPLE");
  const ActionClass a = classify_action(g);
  c.pass = a.kind == ActionClass::Kind::Intransitive;
  if (a.fixed_point) {
    const std::vector<ProjPoint> pts{*a.fixed_point};
    const auto links = links_from_orbit(action_on_points(g, pts), true);
    const DPClass f{1, {1}, -1};
    c.evidence["fixed_point"] = a.fixed_point->to_string();
    c.evidence["links"] = links_json(links);
    c.pass = c.pass && has_typeI(links, &f);
  }
  return c;
}

CheckResult check_classification() {
  CheckResult c{"action_classes", "intransitive, imprimitive and primitive catalog groups", true, Json::object()};
  const std::map<std::string, std::string> want{
      {"C3xC3_MONO", "Imprimitive"}, {"A4_MONO", "Imprimitive"}, {"S4_MONO", "Imprimitive"}, {"T_2_7", "Imprimitive"},
      {"T_4_7", "Imprimitive"},      {"T_4_21", "Imprimitive"},  {"T_16_21", "Imprimitive"}, {"E108", "Primitive"},
      {"F216", "Primitive"},         {"H648", "Primitive"},      {"A5_I", "Primitive"},      {"A5_II", "Primitive"},
      {"A5_W", "Primitive"},         {"PSL27", "Primitive"},     {"PSL27_W", "Primitive"},   {"A6_3FOLD", "Primitive"},
      {"INTRANSITIVE_SAMPLE", "Intransitive"}};
  for (const auto& id : catalog_ids()) {
    const std::string got = classify_action(catalog_group(id)).name();
    c.evidence[id] = got;
    c.pass = c.pass && want.at(id) == got;
  }
  return c;
}

CheckResult check_verdicts() {
  CheckResult c{"rigidity_verdicts", "rigid exactly for transitive groups other than A4 and S4", true, Json::object()};
  const std::set<std::string> not_rigid{"A4_MONO", "S4_MONO", "INTRANSITIVE_SAMPLE"};
  for (const auto& id : catalog_ids()) {
    const Verdict v = rigidity_verdict(catalog_group(id));
    Json e{{"rigid", v.rigid}, {"rule", v.rule}};
    if (v.witness) e["witness"] = v.witness->describe();
    c.evidence[id] = e;
    const bool ok = v.rigid == !not_rigid.count(id) && (v.rigid || v.witness.has_value());
    c.pass = c.pass && ok;
  }
  return c;
}

CheckResult check_routes_agree() {
  CheckResult c{"rigidity_a4_s4_routes_agree",
                "for transitive groups, a size-4 orbit with a conic bundle occurs exactly for A4 and S4", true,
                Json::object()};
  for (const auto& id : catalog_ids()) {
    const GroupData& g = catalog_group(id);
    if (classify_action(g).kind == ActionClass::Kind::Intransitive) continue;
    const bool iso = is_A4_or_S4(g).has_value();
    const bool size4 = rigidity_verdict(g).rule == "size-4 orbit";
    c.evidence[id] = Json{{"isomorphism_type", iso}, {"size4_route", size4}};
    c.pass = c.pass && iso == size4;
  }
  return c;
}

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> checks = [] {
    std::vector<std::pair<std::string, CheckFn>> v{
        {"a5_eigen_orbit_sizes", check_a5_eigen},
        {"a5_lines_transitive", check_a5_lines},
        {"a5_orbits", check_a5},
        {"action_classes", check_classification},
        {"catalog_matrix_orders", check_catalog_matrix_orders},
        {"catalog_projective_orders", check_catalog_projective_orders},
        {"hessian_e108_orbits", check_e108},
        {"hessian_f216_merge", check_f216},
        {"link_a4_s4_conic_bundle", check_link_a4_s4},
        {"link_bertini", check_link_bertini},
        {"link_c3xc3_two_orbits", check_link_c3xc3},
        {"link_conic_blowdown", check_link_conics},
        {"link_cremona", check_link_cremona},
        {"link_fixed_point_conic_bundle", check_link_fixed_point},
        {"monomial_a4_conics", check_a4_conics},
        {"monomial_a4_orbits", check_a4},
        {"monomial_c3xc3_orbits", check_c3xc3},
        {"monomial_s4_orbits", check_s4},
        {"monomial_t_orbits", check_t_orbits},
        {"primitive_no_small_orbits", check_no_small_orbits},
        {"psl27_a6_eigen_orbit_sizes", check_psl_a6_eigen},
        {"rigidity_a4_s4_routes_agree", check_routes_agree},
        {"rigidity_verdicts", check_verdicts},
        {"t_group_identities", check_t_conjugacy},
        {"t_group_survey", check_survey},
    };
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  }();
  return checks;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [n, f] : registry()) v.push_back(n);
    return v;
  }();
  return names;
}

PaperReport verify_paper(const std::string& only) {
  if (!only.empty() && std::find(check_names().begin(), check_names().end(), only) == check_names().end())
    throw InputError("unknown check: " + only);
  PaperReport r;
  r.header = kVerdictCaveat;
  for (const auto& [name, fn] : registry()) {
    if (!only.empty() && name != only) continue;
    CheckResult c;
    try {
      c = fn();
    } catch (const Error& e) {
      c = CheckResult{name, "", false, Json{{"error", e.what()}}};
    }
    c.name = name;
    r.checks.push_back(std::move(c));
  }
  return r;
}

bool PaperReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

Json PaperReport::to_json() const {
  Json j;
  j["header"] = header;
  j["all_pass"] = all_pass();
  Json a = Json::array();
  for (const auto& c : checks) a.push_back(c.to_json());
  j["checks"] = a;
  return j;
}

std::string PaperReport::to_text() const {
  std::ostringstream out;
  out << "# " << header << "\n";
  for (const auto& c : checks)
    out << (c.pass ? "PASS " : "FAIL ") << c.name << " - " << c.citation << "\n  " << c.evidence.dump() << "\n";
  long passed = std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
  out << passed << "/" << checks.size() << " checks passed\n";
  return out.str();
}

}  // namespace p2r
