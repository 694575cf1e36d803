// Points, lines and elements of the projective plane over cyclotomic fields,
// and finite subgroups of PGL(3) enumerated by closure.

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "p2rigid/linalg.hpp"

namespace p2r {

/// Point of P^2, scaled so the first nonzero coordinate is 1.
class ProjPoint {
 public:
  ProjPoint() = default;
  /// Throws InputError for the zero vector.
  static ProjPoint normalize(const Vec3& raw);

  const Vec3& coords() const { return c_; }
  const CycloNum& operator[](int i) const { return c_[i]; }
  int conductor() const { return c_[0].conductor(); }
  ProjPoint embed(int target) const;
  /// Same point at the smallest conductor holding all coordinates.
  ProjPoint minimized() const;

  std::string to_string() const;
  std::size_t hash() const;
  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.c_ == b.c_; }
  friend bool operator!=(const ProjPoint& a, const ProjPoint& b) { return !(a == b); }
  /// Deterministic order for sorting; compares canonical strings.
  friend bool operator<(const ProjPoint& a, const ProjPoint& b);

 private:
  Vec3 c_;
};

/// Line of P^2 given by its dual coordinates, normalized like a point.
class ProjLine {
 public:
  ProjLine() = default;
  static ProjLine normalize(const Vec3& raw) { return ProjLine(ProjPoint::normalize(raw)); }
  static ProjLine through(const ProjPoint& p, const ProjPoint& q);

  const ProjPoint& dual() const { return d_; }
  bool contains(const ProjPoint& p) const { return dot(d_.coords(), p.coords()).is_zero(); }

  std::string to_string() const;
  friend bool operator==(const ProjLine& a, const ProjLine& b) { return a.d_ == b.d_; }
  friend bool operator<(const ProjLine& a, const ProjLine& b) { return a.d_ < b.d_; }

 private:
  explicit ProjLine(ProjPoint d) : d_(std::move(d)) {}
  ProjPoint d_;
};

/// Element of PGL(3): a matrix scaled so its first nonzero entry in
/// row-major order is 1.
class ProjElement {
 public:
  ProjElement() = default;
  /// Throws InputError for singular matrices.
  static ProjElement normalize(const Mat3& m);

  const Mat3& matrix() const { return m_; }
  int conductor() const { return m_.conductor(); }
  bool is_identity() const { return m_.is_identity(); }
  ProjElement embed(int target) const;

  ProjPoint apply(const ProjPoint& p) const { return ProjPoint::normalize(p2r::apply(m_, p.coords())); }
  /// Projective order, bounded by `cap`.
  long order(long cap = kDefaultOrderCap) const;

  std::size_t hash() const { return m_.hash(); }
  std::string to_string() const { return m_.to_string(); }
  friend ProjElement operator*(const ProjElement& a, const ProjElement& b) {
    ProjElement p(a.m_ * b.m_);  // products of invertible matrices need no determinant check
    scale_in_place(p.m_);
    return p;
  }
  friend bool operator==(const ProjElement& a, const ProjElement& b) { return a.m_ == b.m_; }
  friend bool operator!=(const ProjElement& a, const ProjElement& b) { return !(a == b); }

 private:
  explicit ProjElement(Mat3 m) : m_(std::move(m)) {}
  static void scale_in_place(Mat3& m);
  Mat3 m_;
};

struct ProjPointHash {
  std::size_t operator()(const ProjPoint& p) const { return p.hash(); }
};
struct ProjElementHash {
  std::size_t operator()(const ProjElement& e) const { return e.hash(); }
};

inline constexpr long kDefaultGroupCap = 10000;

/// Finite subgroup of PGL(3) with every element enumerated. All generators
/// and elements share one conductor.
struct GroupData {
  int conductor = 1;
  std::vector<Mat3> generators;
  std::vector<ProjElement> elements;  // elements[0] is the identity
  std::vector<Mat3> lifts;            // a generator word for each element, evaluated in GL(3)
  std::unordered_map<ProjElement, int, ProjElementHash> index;

  long proj_order() const { return static_cast<long>(elements.size()); }
  bool contains(const ProjElement& e) const { return index.count(e.embed(conductor)) != 0; }
  std::vector<ProjElement> generator_images() const;
};

/// Breadth-first closure over right multiplication by the generators, taken
/// in canonical-string order. Throws GroupTooLarge beyond `cap`.
GroupData closure(const std::vector<Mat3>& generators, long cap = kDefaultGroupCap);

/// Order of the matrix group (not modulo scalars) generated by `generators`.
long sl_closure_order(const std::vector<Mat3>& generators, long cap = kDefaultGroupCap);

/// Projective order of each element, indexed like g.elements.
std::vector<long> element_orders(const GroupData& g);

struct CyclicSubgroup {
  int rep = 0;  // smallest index among the generators of the subgroup
  long order = 0;
};

/// Every nontrivial cyclic subgroup, sorted by representative.
std::vector<CyclicSubgroup> cyclic_subgroups(const GroupData& g);
/// One representative (smallest index) of each subgroup of prime order.
std::vector<int> prime_order_subgroup_reps(const GroupData& g);
std::vector<int> prime_order_subgroup_reps(const std::vector<CyclicSubgroup>& subgroups);

std::map<long, long> element_order_histogram(const GroupData& g);

bool is_abelian(const GroupData& g);

struct FixedLocus {
  std::vector<ProjPoint> points;  // isolated fixed points
  std::vector<ProjLine> lines;    // pointwise-fixed lines
  bool whole_plane = false;       // the group is trivial
  bool empty() const { return points.empty() && lines.empty() && !whole_plane; }
};

/// Points fixed by every element: common eigenvectors of the generators.
FixedLocus common_fixed_locus(const GroupData& g);

/// Group generated by M A M^-1 for each generator A.
GroupData conjugate_group(const GroupData& g, const Mat3& m);

/// Transpose-inverse action, i.e. the action on lines.
GroupData dual_group(const GroupData& g);

GroupData embed_group(const GroupData& g, int target);

bool groups_projectively_equal(const GroupData& a, const GroupData& b);

}  // namespace p2r
