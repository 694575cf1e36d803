#include "p2rigid/projgroup.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <unordered_set>

namespace p2r {

ProjPoint ProjPoint::normalize(const Vec3& raw) {
  const int n = common_conductor(raw);
  int first = 0;
  while (first < 3 && raw[first].is_zero()) ++first;
  if (first == 3) throw InputError("the zero vector is not a projective point");
  ProjPoint p;
  p.c_ = p2r::embed(raw, n);
  if (!p.c_[first].is_one()) {
    const CycloNum s = p.c_[first].inv();
    for (int i = first; i < 3; ++i)
      if (!p.c_[i].is_zero()) p.c_[i] = p.c_[i] * s;
  }
  return p;
}

ProjPoint ProjPoint::embed(int target) const {
  ProjPoint p;
  p.c_ = p2r::embed(c_, target);
  return p;
}

ProjPoint ProjPoint::minimized() const {
  Vec3 v{c_[0].minimized(), c_[1].minimized(), c_[2].minimized()};
  ProjPoint p;
  p.c_ = p2r::embed(v, common_conductor(v));
  return p;
}

std::string ProjPoint::to_string() const {
  return "(" + c_[0].to_string() + " : " + c_[1].to_string() + " : " + c_[2].to_string() + ")";
}

std::size_t ProjPoint::hash() const {
  std::size_t h = 0;
  for (const auto& x : c_) h = h * 1000003u ^ x.hash();
  return h;
}

bool operator<(const ProjPoint& a, const ProjPoint& b) {
  for (int i = 0; i < 3; ++i) {
    const std::string sa = a.c_[i].to_string(), sb = b.c_[i].to_string();
    if (sa != sb) return sa < sb;
  }
  return false;
}

ProjLine ProjLine::through(const ProjPoint& p, const ProjPoint& q) {
  return normalize(cross(p.coords(), q.coords()));
}

std::string ProjLine::to_string() const { return "[" + d_.to_string() + "]"; }

void ProjElement::scale_in_place(Mat3& m) {
  for (int k = 0; k < 9; ++k) {
    const CycloNum& x = m(k / 3, k % 3);
    if (x.is_zero()) continue;
    if (!x.is_one()) m = m.scaled(x.inv());
    return;
  }
}

ProjElement ProjElement::normalize(const Mat3& m) {
  if (det(m).is_zero()) throw InputError("singular matrix is not a projective transformation");
  Mat3 c = m;
  scale_in_place(c);
  return ProjElement(std::move(c));
}

ProjElement ProjElement::embed(int target) const { return ProjElement(m_.embed(target)); }

long ProjElement::order(long cap) const {
  Mat3 p = m_;
  for (long t = 1; t <= cap; ++t) {
    if (p.is_identity()) return t;
    p = p * m_;
    scale_in_place(p);
  }
  throw NotFiniteOrder("projective order exceeds " + std::to_string(cap));
}

std::vector<ProjElement> GroupData::generator_images() const {
  std::vector<ProjElement> out;
  for (const auto& g : generators) out.push_back(ProjElement::normalize(g));
  return out;
}

namespace {

int common_conductor(const std::vector<Mat3>& gens) {
  long n = 1;
  for (const auto& g : gens) n = lcm_int(n, g.conductor());
  return static_cast<int>(n);
}

}  // namespace

GroupData closure(const std::vector<Mat3>& generators, long cap) {
  if (cap < 1) throw InputError("closure cap must be >= 1");
  GroupData g;
  g.conductor = common_conductor(generators);
  struct Gen {
    ProjElement image;
    Mat3 matrix;
    std::string key;
  };
  std::vector<Gen> gens;
  for (const auto& m : generators) {
    g.generators.push_back(m.embed(g.conductor));
    ProjElement e = ProjElement::normalize(g.generators.back());
    std::string key = e.to_string();
    gens.push_back({std::move(e), g.generators.back(), std::move(key)});
  }
  std::stable_sort(gens.begin(), gens.end(), [](const Gen& a, const Gen& b) { return a.key < b.key; });

  auto insert = [&](ProjElement e, const Mat3& lift) {
    auto [it, fresh] = g.index.emplace(e, static_cast<int>(g.elements.size()));
    if (!fresh) return;
    if (static_cast<long>(g.elements.size()) >= cap)
      throw GroupTooLarge("group closure exceeds " + std::to_string(cap) + " elements");
    g.elements.push_back(std::move(e));
    g.lifts.push_back(lift);
  };
  insert(ProjElement::normalize(Mat3::identity(g.conductor)), Mat3::identity(g.conductor));
  for (std::size_t head = 0; head < g.elements.size(); ++head) {
    for (const auto& s : gens) {
      ProjElement next = g.elements[head] * s.image;
      if (g.index.count(next)) continue;
      insert(std::move(next), g.lifts[head] * s.matrix);
    }
  }
  return g;
}

long sl_closure_order(const std::vector<Mat3>& generators, long cap) {
  const int n = common_conductor(generators);
  std::vector<Mat3> gens;
  for (const auto& m : generators) gens.push_back(m.embed(n));
  struct H {
    std::size_t operator()(const Mat3& m) const { return m.hash(); }
  };
  std::unordered_set<Mat3, H> seen;
  std::vector<Mat3> queue{Mat3::identity(n)};
  seen.insert(queue.front());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& s : gens) {
      Mat3 next = queue[head] * s;
      if (seen.insert(next).second) {
        if (static_cast<long>(queue.size()) >= cap)
          throw GroupTooLarge("matrix group closure exceeds " + std::to_string(cap) + " elements");
        queue.push_back(std::move(next));
      }
    }
  }
  return static_cast<long>(queue.size());
}

namespace {

// Walks the cyclic subgroup of each element not yet seen as a power of an
// earlier one. Every element is a power of some walked element, so this
// visits every cyclic subgroup while multiplying O(|G|) times in practice.
template <typename Visit>
void walk_cyclic(const GroupData& g, Visit visit) {
  std::vector<bool> covered(g.elements.size(), false);
  for (std::size_t i = 0; i < g.elements.size(); ++i) {
    if (covered[i]) continue;
    std::vector<int> powers{0};  // powers[j] = index of element^j
    ProjElement cur = g.elements[i];
    while (!cur.is_identity()) {
      const auto it = g.index.find(cur);
      if (it == g.index.end()) throw Error("group is not closed under multiplication");
      powers.push_back(it->second);
      cur = cur * g.elements[i];
      if (static_cast<long>(powers.size()) > g.proj_order()) throw Error("element order exceeds group order");
    }
    for (int p : powers) covered[p] = true;
    visit(powers);
  }
}

long gcd_long(long a, long b) { return b == 0 ? a : gcd_long(b, a % b); }

}  // namespace

std::vector<long> element_orders(const GroupData& g) {
  std::vector<long> order(g.elements.size(), 0);
  walk_cyclic(g, [&](const std::vector<int>& powers) {
    const long o = static_cast<long>(powers.size());
    for (long j = 0; j < o; ++j) order[powers[j]] = o / gcd_long(o, j);
  });
  return order;
}

std::vector<CyclicSubgroup> cyclic_subgroups(const GroupData& g) {
  std::map<int, long> reps;  // smallest generator index -> order
  walk_cyclic(g, [&](const std::vector<int>& powers) {
    const long o = static_cast<long>(powers.size());
    for (long d = 2; d <= o; ++d) {
      if (o % d) continue;
      int best = -1;
      for (long i = 1; i < d; ++i) {
        if (gcd_long(d, i) != 1) continue;
        const int idx = powers[(o / d) * i];
        if (best < 0 || idx < best) best = idx;
      }
      reps.emplace(best, d);
    }
  });
  std::vector<CyclicSubgroup> out;
  for (auto [i, o] : reps) out.push_back({i, o});
  return out;
}

std::vector<int> prime_order_subgroup_reps(const std::vector<CyclicSubgroup>& subgroups) {
  std::vector<int> out;
  for (const auto& c : subgroups) {
    bool prime = true;
    for (long d = 2; d * d <= c.order; ++d)
      if (c.order % d == 0) prime = false;
    if (prime) out.push_back(c.rep);
  }
  return out;
}

std::vector<int> prime_order_subgroup_reps(const GroupData& g) { return prime_order_subgroup_reps(cyclic_subgroups(g)); }

std::map<long, long> element_order_histogram(const GroupData& g) {
  std::map<long, long> h;
  for (long o : element_orders(g)) ++h[o];
  return h;
}

bool is_abelian(const GroupData& g) {
  const auto gens = g.generator_images();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (gens[i] * gens[j] != gens[j] * gens[i]) return false;
  return true;
}

FixedLocus common_fixed_locus(const GroupData& g) {
  FixedLocus out;
  std::vector<std::vector<Eigenpair>> eig;
  for (const auto& m : g.generators) {
    if (ProjElement::normalize(m).is_identity()) continue;
    eig.push_back(root_of_unity_eigenvalues(m));
  }
  if (eig.empty()) {
    out.whole_plane = true;
    return out;
  }
  std::vector<Subspace> found;
  std::function<void(std::size_t, const Subspace&)> walk = [&](std::size_t i, const Subspace& cur) {
    if (cur.dimension() == 0) return;
    if (i == eig.size()) {
      found.push_back(cur);
      return;
    }
    for (const auto& e : eig[i]) walk(i + 1, intersect(cur, e.space));
  };
  for (const auto& e : eig[0]) walk(1, e.space);

  for (const auto& s : found) {
    if (s.dimension() == 1) {
      out.points.push_back(ProjPoint::normalize(s.basis[0]).minimized());
    } else if (s.dimension() == 2) {
      out.lines.push_back(ProjLine::normalize(ProjPoint::normalize(cross(s.basis[0], s.basis[1])).minimized().coords()));
    } else {
      out.whole_plane = true;
    }
  }
  std::sort(out.points.begin(), out.points.end());
  std::sort(out.lines.begin(), out.lines.end());
  return out;
}

GroupData conjugate_group(const GroupData& g, const Mat3& m) {
  if (det(m).is_zero()) throw InputError("conjugating matrix is singular");
  const Mat3 mi = inverse(m);
  std::vector<Mat3> gens;
  for (const auto& a : g.generators) gens.push_back(m * a * mi);
  return closure(gens);
}

GroupData dual_group(const GroupData& g) {
  std::vector<Mat3> gens;
  for (const auto& a : g.generators) gens.push_back(inverse(a).transpose());
  return closure(gens);
}

GroupData embed_group(const GroupData& g, int target) {
  if (target % g.conductor != 0) throw ConductorError("target conductor is not a multiple of the group conductor");
  GroupData out;
  out.conductor = target;
  for (const auto& m : g.generators) out.generators.push_back(m.embed(target));
  for (const auto& e : g.elements) {
    out.index.emplace(e.embed(target), static_cast<int>(out.elements.size()));
    out.elements.push_back(e.embed(target));
  }
  for (const auto& m : g.lifts) out.lifts.push_back(m.embed(target));
  return out;
}

bool groups_projectively_equal(const GroupData& a, const GroupData& b) {
  if (a.proj_order() != b.proj_order()) return false;
  const int n = static_cast<int>(lcm_int(a.conductor, b.conductor));
  const GroupData bb = b.conductor == n ? b : embed_group(b, n);
  for (const auto& e : a.elements)
    if (!bb.index.count(e.embed(n))) return false;
  return true;
}

}  // namespace p2r
