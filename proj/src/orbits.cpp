#include "p2rigid/orbits.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "p2rigid/errors.hpp"

namespace p2r {

namespace {

using PointIndex = std::unordered_map<ProjPoint, int, ProjPointHash>;

std::vector<Mat3> sorted_generators(const GroupData& g, int conductor) {
  auto images = g.generator_images();
  std::stable_sort(images.begin(), images.end(),
                   [](const ProjElement& a, const ProjElement& b) { return a.to_string() < b.to_string(); });
  std::vector<Mat3> out;
  for (const auto& e : images) out.push_back(e.matrix().embed(conductor));
  return out;
}

ProjPoint move(const Mat3& m, const ProjPoint& p) { return ProjPoint::normalize(apply(m, p.coords())); }

// Breadth-first search; gens and start share one conductor. Stops after
// `limit` points and reports whether the search was exhausted.
struct Search {
  std::vector<ProjPoint> points;
  bool exhausted = true;
};

Search bfs(const std::vector<Mat3>& gens, const ProjPoint& start, long limit) {
  Search s;
  PointIndex seen;
  seen.emplace(start, 0);
  s.points.push_back(start);
  for (std::size_t head = 0; head < s.points.size(); ++head) {
    for (const auto& m : gens) {
      ProjPoint q = move(m, s.points[head]);
      if (seen.count(q)) continue;
      if (static_cast<long>(s.points.size()) >= limit) {
        s.exhausted = false;
        return s;
      }
      seen.emplace(q, static_cast<int>(s.points.size()));
      s.points.push_back(std::move(q));
    }
  }
  return s;
}

long lcm_of_points(const std::vector<ProjPoint>& pts, long start) {
  long n = start;
  for (const auto& p : pts) n = lcm_int(n, p.conductor());
  return n;
}

// Rewrites an orbit at its smallest common conductor and reorders it as a
// BFS from its smallest point.
Orbit finalize(const GroupData& g, const std::vector<ProjPoint>& raw) {
  std::vector<ProjPoint> small;
  for (const auto& p : raw) small.push_back(p.minimized());
  const int w = static_cast<int>(lcm_of_points(small, 1));
  for (auto& p : small) p = p.embed(w);
  const ProjPoint rep = *std::min_element(small.begin(), small.end());
  const int big = static_cast<int>(lcm_int(w, g.conductor));
  const Search s = bfs(sorted_generators(g, big), rep.embed(big), static_cast<long>(raw.size()) + 1);
  if (static_cast<std::size_t>(s.points.size()) != raw.size()) throw Error("orbit changed size while reordering");
  Orbit o;
  for (const auto& p : s.points) {
    const Vec3& c = p.coords();
    Vec3 v;
    for (int i = 0; i < 3; ++i) {
      auto d = c[i].descend(w);
      if (!d) throw Error("orbit point left its minimal field");
      v[i] = *d;
    }
    o.points.push_back(ProjPoint::normalize(v));
  }
  return o;
}

bool orbit_less(const Orbit& a, const Orbit& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.points < b.points;
}

Vec3 line_basis_vector(const std::vector<CycloNum>& v) { return {v[0], v[1], v[2]}; }

std::array<Vec3, 2> line_basis(const ProjPoint& dual) {
  const auto k = kernel(Matrix{{dual[0], dual[1], dual[2]}});
  return {line_basis_vector(k[0]), line_basis_vector(k[1])};
}

bool parallel(const Vec3& a, const Vec3& b) {
  const Vec3 c = cross(a, b);
  return c[0].is_zero() && c[1].is_zero() && c[2].is_zero();
}

Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

Vec3 combine(const CycloNum& s, const Vec3& a, const CycloNum& t, const Vec3& b) {
  return {s * a[0] + t * b[0], s * a[1] + t * b[1], s * a[2] + t * b[2]};
}

// Points of the line spanned by b1, b2 on the conic q. Empty if the line lies
// on the conic. Sets `unsolved` if a needed square root is out of reach.
std::vector<Vec3> conic_meet(const ConicCoeffs& q, const Vec3& b1, const Vec3& b2, bool& unsolved) {
  const CycloNum a = conic_value(q, b1), c = conic_value(q, b2);
  const CycloNum b = conic_value(q, add(b1, b2)) - a - c;
  std::vector<Vec3> out;
  if (a.is_zero() && b.is_zero() && c.is_zero()) return out;
  if (a.is_zero()) {
    out.push_back(b1);
    if (!b.is_zero()) out.push_back(combine(c, b1, -b, b2));
    return out;
  }
  const CycloNum disc = b * b - CycloNum(4) * a * c;
  const auto r = disc.try_sqrt();
  if (!r) {
    unsolved = true;
    return out;
  }
  const CycloNum den = (CycloNum(2) * a).inv();
  out.push_back(combine((-b + *r) * den, b1, CycloNum(1), b2));
  if (!r->is_zero()) out.push_back(combine((-b - *r) * den, b1, CycloNum(1), b2));
  return out;
}

struct Candidate {
  ProjPoint point;
  std::string reason;  // empty for isolated eigenpoints
  int line_class = -1;
};

struct LineClass {
  ProjPoint dual;  // smallest line of the orbit
  long orbit_size = 0;
  long induced_order = 0;
};

}  // namespace

bool Orbit::contains(const ProjPoint& p) const {
  return std::find(points.begin(), points.end(), p) != points.end();
}

Orbit orbit(const GroupData& g, const ProjPoint& x, long cap) {
  if (cap < 0) throw InputError("orbit cap must be >= 1");
  const long limit = cap == 0 ? g.proj_order() : cap;
  const int w = static_cast<int>(lcm_int(g.conductor, x.conductor()));
  const Search s = bfs(sorted_generators(g, w), x.embed(w), limit);
  if (!s.exhausted) throw OrbitTooLarge("orbit exceeds " + std::to_string(limit) + " points");
  return finalize(g, s.points);
}

SmallOrbitReport small_orbits(const GroupData& g, long bound) {
  if (bound < 1) throw InputError("orbit bound must be >= 1");
  SmallOrbitReport rep;
  rep.bound = bound;

  // Fixed loci of prime-order elements. A point with a nontrivial
  // stabilizer is fixed by an element of prime order.
  std::vector<Candidate> cands;
  std::vector<ProjPoint> raw_lines;
  const std::vector<CyclicSubgroup> cyclic = cyclic_subgroups(g);
  for (int idx : prime_order_subgroup_reps(cyclic)) {
    for (const auto& e : root_of_unity_eigenvalues(g.lifts[idx])) {
      if (e.space.dimension() == 1) {
        cands.push_back({ProjPoint::normalize(e.space.basis[0]).minimized(), "", -1});
      } else if (e.space.dimension() == 2) {
        raw_lines.push_back(ProjPoint::normalize(cross(e.space.basis[0], e.space.basis[1])).minimized());
      }
    }
  }

  // Classes of pointwise-fixed lines under the dual action.
  std::vector<LineClass> classes;
  std::vector<std::vector<ProjPoint>> class_lines;
  if (!raw_lines.empty()) {
    const int wl = static_cast<int>(lcm_of_points(raw_lines, g.conductor));
    std::vector<Mat3> dual_gens;
    for (const auto& m : sorted_generators(g, wl)) dual_gens.push_back(inverse(m).transpose());
    PointIndex line_class;
    for (const auto& l : raw_lines) {
      const ProjPoint d = l.embed(wl);
      if (line_class.count(d)) continue;
      const Search s = bfs(dual_gens, d, g.proj_order());
      for (const auto& p : s.points) line_class.emplace(p, static_cast<int>(classes.size()));
      LineClass lc;
      lc.dual = *std::min_element(s.points.begin(), s.points.end());
      lc.orbit_size = static_cast<long>(s.points.size());
      classes.push_back(lc);
      class_lines.push_back(s.points);
    }
  }

  bool conic_unsolved = false;
  const Fixtures& fx = fixtures();
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    LineClass& lc = classes[ci];
    const ProjPoint& d = lc.dual;
    const auto [b1, b2] = line_basis(d);
    const Vec3 b12 = add(b1, b2);
    const Subspace plane{{b1, b2}};
    long h_size = 0, k_size = 0;
    std::vector<bool> moves(g.elements.size(), false);  // in H, nontrivial on the line
    for (std::size_t i = 0; i < g.elements.size(); ++i) {
      const Mat3& m = g.elements[i].matrix();
      const Vec3 i1 = apply(m, b1), i2 = apply(m, b2);
      if (!dot(d.coords(), i1).is_zero() || !dot(d.coords(), i2).is_zero()) continue;
      ++h_size;
      if (parallel(i1, b1) && parallel(i2, b2) && parallel(apply(m, b12), b12))
        ++k_size;
      else
        moves[i] = true;
    }
    // One element per cyclic subgroup: generators of the same cyclic group
    // share eigenvectors, and either all of them move the line or none do.
    std::vector<int> moving;
    for (const auto& c : cyclic)
      if (moves[c.rep]) moving.push_back(c.rep);
    lc.induced_order = h_size / k_size;
    for (int i : moving) {
      for (const auto& e : root_of_unity_eigenvalues(g.lifts[i])) {
        const Subspace s = intersect(e.space, plane);
        if (s.dimension() == 1)
          cands.push_back({ProjPoint::normalize(s.basis[0]).minimized(), "fixed on line", static_cast<int>(ci)});
      }
    }
    for (const auto& other : class_lines[ci]) {
      if (other == d.embed(other.conductor())) continue;
      cands.push_back({ProjPoint::normalize(cross(d.coords(), other.coords())).minimized(), "line crossing",
                       static_cast<int>(ci)});
    }
    if (lc.orbit_size * lc.induced_order <= bound) {
      for (const auto& conic : fx.conics) {
        for (const auto& v : conic_meet(conic.coeffs, b1, b2, conic_unsolved))
          cands.push_back({ProjPoint::normalize(v).minimized(), "on conic " + conic.name, static_cast<int>(ci)});
      }
    }
  }

  // Orbit every candidate at one common conductor.
  std::vector<ProjPoint> cand_points;
  for (const auto& c : cands) cand_points.push_back(c.point);
  const int w = static_cast<int>(lcm_of_points(cand_points, g.conductor));
  const std::vector<Mat3> gens = sorted_generators(g, w);
  PointIndex seen;  // point -> orbit id, -1 for orbits above the bound
  std::vector<std::vector<ProjPoint>> raw_orbits;
  std::vector<int> cand_orbit;
  for (const auto& c : cands) {
    const ProjPoint p = c.point.embed(w);
    auto it = seen.find(p);
    if (it == seen.end()) {
      const Search s = bfs(gens, p, bound);
      const int id = s.exhausted ? static_cast<int>(raw_orbits.size()) : -1;
      for (const auto& q : s.points) seen.emplace(q, id);
      if (s.exhausted) raw_orbits.push_back(s.points);
      it = seen.find(p);
    }
    cand_orbit.push_back(it->second);
  }
  std::vector<Orbit> orbits;
  for (const auto& r : raw_orbits) orbits.push_back(finalize(g, r));

  // Families, with the special orbits met by their lines.
  std::vector<bool> generic_member(orbits.size(), false);
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    const LineClass& lc = classes[ci];
    if (lc.orbit_size * lc.induced_order > bound) continue;
    LineFamily fam;
    fam.line = ProjLine::normalize(lc.dual.coords());
    fam.line_orbit_size = lc.orbit_size;
    fam.induced_order = lc.induced_order;
    std::map<int, std::string> special;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (cands[i].line_class != static_cast<int>(ci) || cand_orbit[i] < 0) continue;
      const int id = cand_orbit[i];
      if (special.count(id)) continue;
      const Orbit& o = orbits[id];
      if (cands[i].reason.rfind("on conic ", 0) == 0) {
        if (o.size() != fam.generic_orbit_size()) continue;
        const auto& conic = *std::find_if(fx.conics.begin(), fx.conics.end(), [&](const NamedConic& c) {
          return "on conic " + c.name == cands[i].reason;
        });
        const bool all_on = std::all_of(o.points.begin(), o.points.end(), [&](const ProjPoint& p) {
          return conic_value(conic.coeffs, p.coords()).is_zero();
        });
        if (!all_on) continue;
      }
      special.emplace(id, cands[i].reason);
    }
    for (const auto& [id, reason] : special) fam.exceptional.push_back({orbits[id], reason});
    std::sort(fam.exceptional.begin(), fam.exceptional.end(),
              [](const ExceptionalOrbit& a, const ExceptionalOrbit& b) { return orbit_less(a.orbit, b.orbit); });
    for (std::size_t id = 0; id < orbits.size(); ++id) {
      if (orbits[id].size() != fam.generic_orbit_size()) continue;
      for (const auto& l : class_lines[ci]) {
        const ProjLine line = ProjLine::normalize(l.coords());
        if (std::any_of(orbits[id].points.begin(), orbits[id].points.end(),
                        [&](const ProjPoint& p) { return line.contains(p); }))
          generic_member[id] = true;
      }
    }
    rep.families.push_back(std::move(fam));
  }
  std::sort(rep.families.begin(), rep.families.end(),
            [](const LineFamily& a, const LineFamily& b) { return a.line < b.line; });

  for (std::size_t id = 0; id < orbits.size(); ++id)
    if (!generic_member[id]) rep.sporadic.push_back(orbits[id]);
  std::sort(rep.sporadic.begin(), rep.sporadic.end(), orbit_less);

  if (g.proj_order() <= bound) {
    rep.complete = false;
    rep.note = "every orbit has size <= bound; only orbits through fixed points are listed";
  } else {
    rep.complete = true;
  }
  if (conic_unsolved) {
    if (!rep.note.empty()) rep.note += "; ";
    rep.note += "some conic intersections need square roots beyond the conductor cap";
  }
  return rep;
}

std::vector<long> eigen_orbit_sizes(const GroupData& g, const Mat3& g1, const Mat3& g2) {
  std::vector<long> out;
  for (const Mat3* m : {&g1, &g2}) {
    const auto eig = root_of_unity_eigenvalues(*m);
    for (const auto& e : eig)
      if (e.space.dimension() != 1) throw MethodInapplicable("element has a repeated eigenvalue");
    for (const auto& e : eig) out.push_back(orbit(g, ProjPoint::normalize(e.space.basis[0])).size());
  }
  return out;
}

namespace {

std::vector<Vec3> common_coords(const std::vector<ProjPoint>& pts) {
  const int w = static_cast<int>(lcm_of_points(pts, 1));
  std::vector<Vec3> out;
  for (const auto& p : pts) out.push_back(embed(p.coords(), w));
  return out;
}

void require_distinct(const std::vector<ProjPoint>& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (pts[i] == pts[j]) throw InputError("repeated point at positions " + std::to_string(i) + " and " + std::to_string(j));
}

bool rank_deficient_conic(const std::vector<Vec3>& v) {
  Matrix m;
  for (const auto& p : v) m.push_back({p[0] * p[0], p[1] * p[1], p[2] * p[2], p[0] * p[1], p[0] * p[2], p[1] * p[2]});
  return rank(m) < 6;
}

// Cubic monomials x^3, y^3, z^3, x^2y, x^2z, y^2x, y^2z, z^2x, z^2y, xyz.
std::vector<CycloNum> cubic_row(const Vec3& p) {
  const auto &x = p[0], &y = p[1], &z = p[2];
  return {x * x * x, y * y * y, z * z * z, x * x * y, x * x * z, y * y * x, y * y * z, z * z * x, z * z * y, x * y * z};
}

// Partial derivatives of the same monomials by x, y and z.
std::array<std::vector<CycloNum>, 3> cubic_gradient_rows(const Vec3& p) {
  const auto &x = p[0], &y = p[1], &z = p[2];
  const CycloNum o(0), three(3), two(2);
  return {{
      {three * x * x, o, o, two * x * y, two * x * z, y * y, o, z * z, o, y * z},
      {o, three * y * y, o, x * x, o, two * x * y, two * y * z, o, z * z, x * z},
      {o, o, three * z * z, o, x * x, o, y * y, two * x * z, two * y * z, x * y},
  }};
}

std::optional<int> singular_cubic_index(const std::vector<Vec3>& v) {
  for (std::size_t s = 0; s < v.size(); ++s) {
    Matrix m;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (i != s) m.push_back(cubic_row(v[i]));
    for (auto& r : cubic_gradient_rows(v[s])) m.push_back(std::move(r));
    if (rank(m) < 10) return static_cast<int>(s);
  }
  return std::nullopt;
}

}  // namespace

bool collinear(const ProjPoint& p, const ProjPoint& q, const ProjPoint& r) {
  const auto v = common_coords({p, q, r});
  return det(Mat3::from_rows({v[0], v[1], v[2]})).is_zero();
}

bool six_on_conic(const std::vector<ProjPoint>& pts) {
  if (pts.size() != 6) throw InputError("six_on_conic needs exactly 6 points");
  require_distinct(pts);
  return rank_deficient_conic(common_coords(pts));
}

std::optional<int> singular_cubic_point(const std::vector<ProjPoint>& pts) {
  if (pts.size() != 8) throw InputError("the singular cubic test needs exactly 8 points");
  require_distinct(pts);
  return singular_cubic_index(common_coords(pts));
}

bool eight_on_singular_cubic(const std::vector<ProjPoint>& pts) { return singular_cubic_point(pts).has_value(); }

std::string GenPosReport::describe() const {
  auto list = [&] {
    std::string s;
    for (std::size_t i = 0; i < witness.size(); ++i) s += (i ? "," : "") + std::to_string(witness[i]);
    return s;
  };
  switch (failure) {
    case Failure::None:
      return "general position";
    case Failure::Collinear:
      return "collinear: points " + list();
    case Failure::OnConic:
      return "on a conic: points " + list();
    case Failure::OnSingularCubic:
      return "on a cubic singular at point " + std::to_string(singular_index) + ": points " + list();
  }
  return "";
}

namespace {

// Calls f on each k-subset of {0..n-1} in lexicographic order until f returns true.
template <typename F>
bool any_subset(int n, int k, F f) {
  if (k > n) return false;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (f(idx)) return true;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

GenPosReport general_position(const std::vector<ProjPoint>& pts) {
  const int n = static_cast<int>(pts.size());
  if (n < 1 || n > 8) throw InputError("general position is checked for 1 to 8 points");
  require_distinct(pts);
  const auto v = common_coords(pts);
  GenPosReport rep;
  auto fail = [&](GenPosReport::Failure f, const std::vector<int>& w) {
    rep.ok = false;
    rep.failure = f;
    rep.witness = w;
    return true;
  };
  if (any_subset(n, 3, [&](const std::vector<int>& s) {
        return det(Mat3::from_rows({v[s[0]], v[s[1]], v[s[2]]})).is_zero() &&
               fail(GenPosReport::Failure::Collinear, s);
      }))
    return rep;
  if (any_subset(n, 6, [&](const std::vector<int>& s) {
        std::vector<Vec3> sub;
        for (int i : s) sub.push_back(v[i]);
        return rank_deficient_conic(sub) && fail(GenPosReport::Failure::OnConic, s);
      }))
    return rep;
  if (n == 8) {
    if (const auto s = singular_cubic_index(v)) {
      fail(GenPosReport::Failure::OnSingularCubic, {0, 1, 2, 3, 4, 5, 6, 7});
      rep.singular_index = *s;
    }
  }
  return rep;
}

std::vector<int> induced_permutation(const ProjElement& g, const std::vector<ProjPoint>& pts) {
  const int w = static_cast<int>(lcm_of_points(pts, g.conductor()));
  const Mat3 m = g.matrix().embed(w);
  PointIndex where;
  for (std::size_t i = 0; i < pts.size(); ++i) where.emplace(pts[i].embed(w), static_cast<int>(i));
  std::vector<int> sigma;
  for (const auto& p : pts) {
    const auto it = where.find(move(m, p.embed(w)));
    if (it == where.end()) throw NotInvariant("the image of " + p.to_string() + " is not in the set");
    sigma.push_back(it->second);
  }
  return sigma;
}

}  // namespace p2r
