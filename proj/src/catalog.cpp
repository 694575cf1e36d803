#include "p2rigid/catalog.hpp"

#include <memory>
#include <mutex>

#include "p2rigid/orbits.hpp"

namespace p2r {

namespace {

CycloNum Z(int n, long e = 1) { return CycloNum::zeta(n, e); }
CycloNum C(long v) { return CycloNum(v); }
CycloNum Q(long p, long q) { return CycloNum(Rational(p, q)); }

Mat3 rows(std::array<std::array<CycloNum, 3>, 3> r) { return Mat3::from_rows(r); }

CycloNum omega() { return Z(3); }

// sqrt(5) as a Gauss sum over the fifth roots of unity.
CycloNum sqrt5() { return Z(5, 1) - Z(5, 2) - Z(5, 3) + Z(5, 4); }

// sqrt(-7) as a Gauss sum over the seventh roots of unity.
CycloNum sqrt_minus7() { return Z(7, 1) + Z(7, 2) + Z(7, 4) - Z(7, 3) - Z(7, 5) - Z(7, 6); }

}  // namespace

Mat3 diag_matrix(int k, long a, long b, long c) {
  if (k < 1) throw InputError("diag_matrix requires k >= 1");
  if (((a + b + c) % k + k) % k != 0)
    throw ConstraintError("diag_matrix(" + std::to_string(k) + ", " + std::to_string(a) + ", " + std::to_string(b) +
                          ", " + std::to_string(c) + ") has determinant != 1");
  return Mat3::diagonal(Z(k, a), Z(k, b), Z(k, c));
}

Mat3 tau() { return rows({{{C(0), C(1), C(0)}, {C(0), C(0), C(1)}, {C(1), C(0), C(0)}}}); }

Mat3 sigma(const SigmaSpec& s) {
  for (const CycloNum* x : {&s.alpha, &s.beta, &s.gamma})
    if (!x->pow(s.k).is_one()) throw ConstraintError("sigma entries must be k-th roots of unity");
  if (s.alpha.pow(3) * s.beta * s.gamma != C(-1)) throw ConstraintError("sigma requires alpha^3 beta gamma = -1");
  const CycloNum zero = C(0);
  return rows({{{s.alpha, zero, zero}, {zero, zero, s.alpha * s.beta}, {zero, s.alpha * s.gamma, zero}}});
}

Mat3 hesse_S() { return Mat3::diagonal(C(1), omega(), omega() * omega()); }
Mat3 hesse_T() { return tau(); }
Mat3 hesse_W() { return Mat3::scalar(omega()); }

CycloNum hesse_epsilon() {
  const CycloNum target = omega() * omega();
  for (long e = 1; e < 9; ++e)
    if (Z(9, e).pow(3) == target) return Z(9, e);
  throw Error("no ninth root of unity cubes to omega^2");
}

Mat3 hesse_U() {
  const CycloNum e = hesse_epsilon();
  return Mat3::diagonal(e, e, e * omega());
}

Mat3 hesse_V() {
  const CycloNum w = omega();
  const CycloNum s = inv(C(1) + C(2) * w);  // 1 + 2w squares to -3
  return rows({{{C(1), C(1), C(1)}, {C(1), w, w * w}, {C(1), w * w, w}}}).scaled(s);
}

Mat3 hesse_P() { return hesse_U() * hesse_V() * inverse(hesse_U()); }

Mat3 icosahedral_R() {
  const CycloNum phi = (C(1) + sqrt5()) * Q(1, 2);
  const CycloNum psi = phi - C(1);  // 1/phi
  return rows({{{-phi, C(1), psi}, {C(1), psi, phi}, {psi, phi, C(-1)}}}).scaled(Q(1, 2));
}

std::array<Mat3, 3> klein_generators() {
  auto z = [](long e) { return Z(7, e); };
  const Mat3 d = Mat3::diagonal(z(4), z(2), z(1));
  const CycloNum a = z(1) - z(6), b = z(2) - z(5), c = z(4) - z(3);
  const Mat3 k = rows({{{a, b, c}, {b, c, a}, {c, a, b}}}).scaled(-inv(sqrt_minus7()));
  return {d, tau(), k};
}

Mat3 valentiner_X() {
  const CycloNum w = omega();
  return rows({{{C(-1), C(0), C(0)}, {C(0), C(0), -w}, {C(0), -w * w, C(0)}}});
}

std::array<Mat3, 2> a6_standard_generators() {
  static const std::array<Mat3, 2> cached = [] {
    // Enumerate the matrix group in BFS order, then take the first pair.
    const std::vector<Mat3> gens{tau(), icosahedral_R(), valentiner_X()};
    long n = 1;
    for (const auto& g : gens) n = lcm_int(n, g.conductor());
    struct H {
      std::size_t operator()(const Mat3& m) const { return m.hash(); }
    };
    std::unordered_map<Mat3, int, H> seen;
    std::vector<Mat3> all{Mat3::identity(static_cast<int>(n))};
    seen.emplace(all[0], 0);
    for (std::size_t head = 0; head < all.size(); ++head)
      for (const auto& s : gens) {
        Mat3 next = all[head] * s.embed(static_cast<int>(n));
        if (seen.emplace(next, static_cast<int>(all.size())).second) all.push_back(std::move(next));
      }
    std::vector<const Mat3*> twos, fours;
    for (const auto& m : all) {
      const long po = ProjElement::normalize(m).order();
      if (po == 2 && matrix_order(m) == 2) twos.push_back(&m);
      if (po == 4 && matrix_order(m) == 4) fours.push_back(&m);
    }
    auto porder = [](const Mat3& m) { return ProjElement::normalize(m).order(); };
    for (const Mat3* a : twos)
      for (const Mat3* b : fours) {
        const Mat3 ab = *a * *b;
        if (porder(ab) != 5) continue;
        if (porder(ab * ab * *b) != 5) continue;
        return std::array<Mat3, 2>{*a, *b};
      }
    throw Error("no standard generator pair found for A6");
  }();
  return cached;
}

const std::vector<std::string>& catalog_ids() {
  static const std::vector<std::string> ids{
      "C3xC3_MONO", "A4_MONO", "S4_MONO", "T_2_7", "T_4_7",  "T_4_21",  "T_16_21",  "E108",     "F216",
      "H648",       "A5_I",    "A5_II",   "A5_W",  "PSL27", "PSL27_W", "A6_3FOLD", "INTRANSITIVE_SAMPLE"};
  return ids;
}

CatalogEntry build(const std::string& id) {
  CatalogEntry e;
  e.id = id;
  auto set = [&](std::vector<Mat3> gens, long proj, long sl, std::string cite) {
    e.generators = std::move(gens);
    e.expected_proj_order = proj;
    e.expected_sl_order = sl;
    e.citation = std::move(cite);
  };
  const Mat3 t = tau();
  if (id == "C3xC3_MONO") {
    set({hesse_S(), t}, 9, 27, "monomial group generated by S and T");
  } else if (id == "A4_MONO") {
    set({diag_matrix(2, 0, 1, 1), diag_matrix(2, 1, 0, 1), t}, 12, 12, "monomial A4: Klein diagonal group and tau");
  } else if (id == "S4_MONO") {
    set({diag_matrix(2, 0, 1, 1), diag_matrix(2, 1, 0, 1), t, sigma({2, C(-1), C(1), C(1)})}, 24, 24,
        "monomial S4: A4 extended by sigma with alpha = -1, beta = gamma = 1");
  } else if (id == "T_2_7" || id == "T_4_7") {
    const long a = id == "T_2_7" ? 2 : 4;
    set({diag_matrix(7, 1, a, -(a + 1)), t}, 21, 21, "group T(a,k) generated by M_k(1,a,-(a+1)) and tau");
  } else if (id == "T_4_21" || id == "T_16_21") {
    const long a = id == "T_4_21" ? 4 : 16;
    set({diag_matrix(21, 1, a, -(a + 1)), t}, 21, 63, "group T(a,k) generated by M_k(1,a,-(a+1)) and tau");
  } else if (id == "E108") {
    set({hesse_S(), t, hesse_V()}, 36, 108, "Hessian chain: E108 = <S, T, V>");
  } else if (id == "F216") {
    set({hesse_S(), t, hesse_V(), hesse_P()}, 72, 216, "Hessian chain: F216 = <E108, U V U^-1>");
  } else if (id == "H648") {
    set({hesse_S(), t, hesse_V(), hesse_P(), hesse_U()}, 216, 648, "Hessian chain: H648 = <F216, U>");
  } else if (id == "A5_I") {
    set({t, icosahedral_R()}, 60, 60, "icosahedral A5");
  } else if (id == "A5_II") {
    set({t, icosahedral_R().galois(2)}, 60, 60, "icosahedral A5 twisted by z5 -> z5^2");
  } else if (id == "A5_W") {
    set({t, icosahedral_R(), hesse_W()}, 60, 180, "A5 extended by the scalar W");
  } else if (id == "PSL27") {
    const auto k = klein_generators();
    set({k[0], k[1], k[2]}, 168, 168, "Klein's representation of PSL(2,7)");
  } else if (id == "PSL27_W") {
    const auto k = klein_generators();
    set({k[0], k[1], k[2], hesse_W()}, 168, 504, "PSL(2,7) extended by the scalar W");
  } else if (id == "A6_3FOLD") {
    const auto ab = a6_standard_generators();
    set({ab[0], ab[1]}, 360, 1080, "triple cover 3.A6 from standard generators A, B");
  } else if (id == "INTRANSITIVE_SAMPLE") {
    set({Mat3::diagonal(C(1), Z(5, 1), Z(5, 4))}, 5, 5, "diagonal cyclic group of order 5");
  } else {
    throw InputError("unknown catalog id: " + id);
  }
  long n = 1;
  for (const auto& g : e.generators) n = lcm_int(n, g.conductor());
  e.conductor = static_cast<int>(n);
  return e;
}

const GroupData& catalog_group(const std::string& id) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<GroupData>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(id);
    if (it != cache.end()) return *it->second;
  }
  auto g = std::make_unique<GroupData>(closure(build(id).generators));
  std::lock_guard<std::mutex> lock(mu);
  auto [it, fresh] = cache.emplace(id, std::move(g));
  return *it->second;
}

CycloNum conic_value(const ConicCoeffs& q, const Vec3& p) {
  return q[0] * p[0] * p[0] + q[1] * p[1] * p[1] + q[2] * p[2] * p[2] + q[3] * p[0] * p[1] + q[4] * p[0] * p[2] +
         q[5] * p[1] * p[2];
}

const Fixtures& fixtures() {
  static const Fixtures f = [] {
    Fixtures f;
    const CycloNum w = omega(), zero = C(0);
    f.conics.push_back({"C1", {C(1), C(1), C(1), zero, zero, zero}});
    f.conics.push_back({"C2", {w, -(C(1) + w), C(1), zero, zero, zero}});
    f.conics.push_back({"C3", {w, C(1), -(C(1) + w), zero, zero, zero}});
    auto pt = [](CycloNum x, CycloNum y, CycloNum z) { return ProjPoint::normalize({x, y, z}); };
    f.points = {
        {"(1:1:1)", pt(C(1), C(1), C(1))},
        {"(1:z3:z3^2)", pt(C(1), w, w * w)},
        {"(1:z3^2:z3)", pt(C(1), w * w, w)},
        {"(0:1:1)", pt(C(0), C(1), C(1))},
        {"(0:1:z12)", pt(C(0), C(1), Z(12, 1))},
        {"(0:1:z12^3)", pt(C(0), C(1), Z(12, 3))},
        {"(0:1:z12^5)", pt(C(0), C(1), Z(12, 5))},
    };
    for (long c = 0; c < 3; ++c)
      f.points.push_back({"(1:z3^" + std::to_string(c) + ":z3^" + std::to_string(2 * c) + ")",
                          pt(C(1), Z(3, c), Z(3, 2 * c))});
    f.hessian_orbit_1 = {pt(C(1), C(0), C(0)), pt(C(0), C(1), C(0)), pt(C(0), C(0), C(1)),
                         pt(C(1), C(1), C(1)), pt(C(1), w, w * w),   pt(C(1), w * w, w)};
    f.hessian_orbit_2 = {pt(C(1), w, w),     pt(C(1), w * w, C(1)), pt(C(1), C(1), w * w),
                         pt(C(1), w * w, w * w), pt(C(1), C(1), w),     pt(C(1), w, C(1))};
    return f;
  }();
  return f;
}

std::vector<SurveyCell> survey_T_groups(int max_k, long orbit_bound) {
  if (max_k > 24) throw InputError("survey_T_groups supports max_k <= 24");
  std::vector<SurveyCell> out;
  for (int k = 2; k <= max_k; ++k) {
    for (int a = 0; a < k; ++a) {
      SurveyCell cell;
      cell.a = a;
      cell.k = k;
      const Mat3 g = diag_matrix(k, 1, a, -(a + 1));
      if (ProjElement::normalize(g).is_identity()) {
        cell.skipped = true;
        cell.note = "diagonal generator is scalar";
        out.push_back(std::move(cell));
        continue;
      }
      try {
        const GroupData grp = closure({g, tau()});
        cell.proj_order = grp.proj_order();
        const SmallOrbitReport rep = small_orbits(grp, orbit_bound);
        for (const auto& o : rep.sporadic) ++cell.sporadic_sizes[o.size()];
        for (const auto& fam : rep.families) cell.family_sizes.push_back(fam.generic_orbit_size());
        cell.complete = rep.complete;
        cell.note = rep.note;
      } catch (const GroupTooLarge& e) {
        cell.capped = true;
        cell.note = e.what();
      } catch (const OrbitTooLarge& e) {
        cell.capped = true;
        cell.note = e.what();
      }
      out.push_back(std::move(cell));
    }
  }
  return out;
}

}  // namespace p2r
