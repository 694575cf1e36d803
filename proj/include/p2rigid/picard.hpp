// Classes on the blowup of P^2 in n <= 8 points, in the basis (line; -E_1,
// ..., -E_n): (-1)-classes, the intersection pairing, the action of point
// permutations, and the elementary links that start by blowing up an orbit.

#pragma once

#include <string>
#include <vector>

#include "p2rigid/orbits.hpp"
#include "p2rigid/projgroup.hpp"

namespace p2r {

/// d*H - sum m_i E_i. The exceptional curve E_i is tagged (exceptional = i)
/// and stored as d = 0 with m_i = -1, so the pairing formula covers it.
struct DPClass {
  int d = 0;
  std::vector<int> m;
  int exceptional = -1;

  int n() const { return static_cast<int>(m.size()); }
  bool is_exceptional() const { return exceptional >= 0; }
  static DPClass E(int n, int i);
  /// 3d - sum m_i, the anticanonical degree.
  int anticanonical_degree() const;
  /// "E3" or "(2; 1,1,1,1,0,0)"; indices are 1-based.
  std::string to_string() const;
  friend bool operator==(const DPClass&, const DPClass&) = default;
  friend auto operator<=>(const DPClass&, const DPClass&) = default;
};

/// Throws InputError when n differs.
int pairing(const DPClass& a, const DPClass& b);

/// All (-1)-classes for 1 <= n <= 8: the E_i first, then d = 1..6 with
/// multiplicity vectors in decreasing lexicographic order.
std::vector<DPClass> neg_one_classes(int n);

/// One permutation of {0..n-1} per group generator.
struct PermAction {
  int n = 0;
  std::vector<std::vector<int>> perms;
  /// Number of orbits of the generated group on {0..n-1}.
  int index_orbit_count() const;
};

/// Permutations induced on the orbit points by the generators of g.
PermAction action_on_points(const GroupData& g, const std::vector<ProjPoint>& pts);

/// m'_{s(i)} = m_i.
DPClass permute(const DPClass& c, const std::vector<int>& perm);

/// Orbits of the action on a list closed under it. Orbits are ordered by their
/// first member in the input, members by input position. Throws NotInvariant
/// if an image is missing.
std::vector<std::vector<DPClass>> class_orbits(const PermAction& action, const std::vector<DPClass>& classes);

/// Rank of the invariant part of the Picard lattice: 1 + index orbits.
int invariant_rank(const PermAction& action);

/// f with f.f = 0, anticanonical degree 2, d <= max_d, f.c >= 0 for every
/// (-1)-class c and invariant under the action.
std::vector<DPClass> fibration_classes(const PermAction& action, int max_d = 5);

struct LinkDescriptor {
  enum class Kind { TypeI, TypeII };
  Kind kind = Kind::TypeII;
  int n = 0;
  DPClass fibration_class;                         // TypeI
  std::vector<std::vector<DPClass>> contracted;    // TypeII, class orbits
  int result_degree = 0;
  int result_invariant_rank = 0;
  bool general_position_required = true;

  long contracted_count() const;
  bool lands_on_p2() const { return kind == Kind::TypeII && result_degree == 9 && result_invariant_rank == 1; }
  std::string describe() const;
};

/// Links from the blowup of n = action.n points. TypeI: one per fibration
/// class. TypeII: every set of class orbits whose members are pairwise
/// disjoint and whose contraction leaves invariant rank 1, other than the
/// E_i themselves. The lattice computation is only meaningful for points in
/// general position, so the caller must certify it; ConstraintError if not.
std::vector<LinkDescriptor> links_from_orbit(const PermAction& action, bool general_position_certified);

}  // namespace p2r
