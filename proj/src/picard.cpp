#include "p2rigid/picard.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "p2rigid/errors.hpp"

namespace p2r {

namespace {

void check_perm(const std::vector<int>& perm, int n) {
  if (static_cast<int>(perm.size()) != n) throw InputError("permutation has wrong length");
  std::vector<bool> hit(n, false);
  for (int v : perm) {
    if (v < 0 || v >= n || hit[v]) throw InputError("not a permutation");
    hit[v] = true;
  }
}

// Nonnegative vectors of length n with entries <= cap, the given sum and sum
// of squares, in decreasing lexicographic order.
void multiplicities(int n, int cap, int sum, int squares, const std::function<void(const std::vector<int>&)>& emit) {
  std::vector<int> m(n, 0);
  std::function<void(int, int, int)> rec = [&](int pos, int s, int q) {
    const int left = n - pos;
    if (left == 0) {
      if (s == 0 && q == 0) emit(m);
      return;
    }
    // m <= m^2 <= cap*m and Cauchy-Schwarz bound what the tail can reach.
    if (s < 0 || q < s || q > cap * s || static_cast<long>(s) * s > static_cast<long>(left) * q) return;
    for (int v = std::min(cap, s); v >= 0; --v) {
      if (v * v > q) continue;
      m[pos] = v;
      rec(pos + 1, s - v, q - v * v);
    }
    m[pos] = 0;
  };
  rec(0, sum, squares);
}

}  // namespace

DPClass DPClass::E(int n, int i) {
  if (i < 0 || i >= n) throw InputError("exceptional index out of range");
  DPClass c;
  c.m.assign(n, 0);
  c.m[i] = -1;
  c.exceptional = i;
  return c;
}

int DPClass::anticanonical_degree() const {
  int s = 3 * d;
  for (int v : m) s -= v;
  return s;
}

std::string DPClass::to_string() const {
  if (is_exceptional()) return "E" + std::to_string(exceptional + 1);
  std::ostringstream out;
  out << "(" << d << ";";
  for (std::size_t i = 0; i < m.size(); ++i) out << (i ? "," : " ") << m[i];
  out << ")";
  return out.str();
}

int pairing(const DPClass& a, const DPClass& b) {
  if (a.n() != b.n()) throw InputError("classes on different blowups");
  int s = a.d * b.d;
  for (int i = 0; i < a.n(); ++i) s -= a.m[i] * b.m[i];
  return s;
}

std::vector<DPClass> neg_one_classes(int n) {
  if (n < 1 || n > 8) throw InputError("number of points must be in 1..8");
  std::vector<DPClass> out;
  for (int i = 0; i < n; ++i) out.push_back(DPClass::E(n, i));
  for (int d = 1; d <= 6; ++d)
    multiplicities(n, d, 3 * d - 1, d * d + 1, [&](const std::vector<int>& m) { out.push_back(DPClass{d, m, -1}); });
  return out;
}

int PermAction::index_orbit_count() const {
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& p : perms) {
    check_perm(p, n);
    for (int i = 0; i < n; ++i) parent[find(i)] = find(p[i]);
  }
  int count = 0;
  for (int i = 0; i < n; ++i)
    if (find(i) == i) ++count;
  return count;
}

PermAction action_on_points(const GroupData& g, const std::vector<ProjPoint>& pts) {
  PermAction a;
  a.n = static_cast<int>(pts.size());
  for (const auto& s : g.generator_images()) a.perms.push_back(induced_permutation(s, pts));
  return a;
}

DPClass permute(const DPClass& c, const std::vector<int>& perm) {
  check_perm(perm, c.n());
  DPClass out = c;
  for (int i = 0; i < c.n(); ++i) out.m[perm[i]] = c.m[i];
  if (c.is_exceptional()) out.exceptional = perm[c.exceptional];
  return out;
}

std::vector<std::vector<DPClass>> class_orbits(const PermAction& action, const std::vector<DPClass>& classes) {
  std::map<DPClass, int> index;
  for (std::size_t i = 0; i < classes.size(); ++i) index.emplace(classes[i], static_cast<int>(i));
  std::vector<int> owner(classes.size(), -1);
  std::vector<std::vector<int>> orbits;
  for (std::size_t start = 0; start < classes.size(); ++start) {
    if (owner[start] >= 0) continue;
    const int id = static_cast<int>(orbits.size());
    std::vector<int> members{static_cast<int>(start)};
    owner[start] = id;
    for (std::size_t head = 0; head < members.size(); ++head)
      for (const auto& p : action.perms) {
        const auto it = index.find(permute(classes[members[head]], p));
        if (it == index.end()) throw NotInvariant("class list is not closed under the action");
        if (owner[it->second] < 0) {
          owner[it->second] = id;
          members.push_back(it->second);
        }
      }
    std::sort(members.begin(), members.end());
    orbits.push_back(std::move(members));
  }
  std::vector<std::vector<DPClass>> out;
  for (const auto& o : orbits) {
    std::vector<DPClass> v;
    for (int i : o) v.push_back(classes[i]);
    out.push_back(std::move(v));
  }
  return out;
}

int invariant_rank(const PermAction& action) { return 1 + action.index_orbit_count(); }

std::vector<DPClass> fibration_classes(const PermAction& action, int max_d) {
  const int n = action.n;
  std::vector<DPClass> out;
  if (n == 0) return out;
  const auto negs = neg_one_classes(n);
  for (int d = 1; d <= max_d; ++d)
    multiplicities(n, d, 3 * d - 2, d * d, [&](const std::vector<int>& m) {
      const DPClass f{d, m, -1};
      for (const auto& p : action.perms)
        if (permute(f, p) != f) return;
      for (const auto& c : negs)
        if (pairing(f, c) < 0) return;
      out.push_back(f);
    });
  return out;
}

long LinkDescriptor::contracted_count() const {
  long t = 0;
  for (const auto& o : contracted) t += static_cast<long>(o.size());
  return t;
}

std::string LinkDescriptor::describe() const {
  std::ostringstream out;
  if (kind == Kind::TypeI) {
    out << "TypeI n=" << n << " fibration " << fibration_class.to_string();
    return out.str();
  }
  out << "TypeII n=" << n << " contract " << contracted_count() << " in " << contracted.size() << " orbit(s):";
  for (const auto& o : contracted) {
    out << " {";
    for (std::size_t i = 0; i < o.size(); ++i) out << (i ? " " : "") << o[i].to_string();
    out << "}";
  }
  out << " -> degree " << result_degree << ", rank " << result_invariant_rank
      << (lands_on_p2() ? " (P2)" : "");
  return out.str();
}

std::vector<LinkDescriptor> links_from_orbit(const PermAction& action, bool general_position_certified) {
  if (!general_position_certified)
    throw ConstraintError("links need the blown-up points in general position");
  const int n = action.n;
  if (n < 1 || n > 8) throw InputError("number of points must be in 1..8");
  std::vector<LinkDescriptor> out;
  for (const auto& f : fibration_classes(action)) {
    LinkDescriptor l;
    l.kind = LinkDescriptor::Kind::TypeI;
    l.n = n;
    l.fibration_class = f;
    l.result_degree = 9 - n;
    l.result_invariant_rank = invariant_rank(action);
    out.push_back(std::move(l));
  }

  const int rank = invariant_rank(action);
  const auto all = class_orbits(action, neg_one_classes(n));
  auto disjoint = [](const std::vector<DPClass>& a, const std::vector<DPClass>& b, bool same) {
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = same ? i + 1 : 0; j < b.size(); ++j)
        if (pairing(a[i], b[j]) != 0) return false;
    return true;
  };
  std::vector<std::vector<DPClass>> orbits;
  std::vector<std::vector<DPClass>> exceptional;
  for (const auto& o : all) {
    if (o.front().is_exceptional()) exceptional.push_back(o);
    if (disjoint(o, o, true)) orbits.push_back(o);
  }

  // Exactly rank - 1 orbits, so the contracted surface has invariant rank 1.
  const int want = rank - 1;
  std::vector<int> chosen;
  std::function<void(std::size_t, long)> rec = [&](std::size_t from, long size) {
    if (static_cast<int>(chosen.size()) == want) {
      std::vector<std::vector<DPClass>> sel;
      for (int i : chosen) sel.push_back(orbits[i]);
      if (sel == exceptional) return;
      LinkDescriptor l;
      l.kind = LinkDescriptor::Kind::TypeII;
      l.n = n;
      l.contracted = std::move(sel);
      l.result_degree = 9 - n + static_cast<int>(size);
      l.result_invariant_rank = rank - want;
      out.push_back(std::move(l));
      return;
    }
    for (std::size_t i = from; i < orbits.size(); ++i) {
      if (size + static_cast<long>(orbits[i].size()) > n) continue;
      bool ok = true;
      for (int c : chosen)
        if (!disjoint(orbits[c], orbits[i], false)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      chosen.push_back(static_cast<int>(i));
      rec(i + 1, size + static_cast<long>(orbits[i].size()));
      chosen.pop_back();
    }
  };
  if (want >= 1) rec(0, 0);
  return out;
}

}  // namespace p2r
