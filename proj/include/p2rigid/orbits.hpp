// Orbits on P^2, the search for all orbits up to a size bound, and general
// position of point sets (no 3 on a line, no 6 on a conic, no 8 on a cubic
// singular at one of them).

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "p2rigid/catalog.hpp"
#include "p2rigid/projgroup.hpp"

namespace p2r {

struct Orbit {
  std::vector<ProjPoint> points;
  long size() const { return static_cast<long>(points.size()); }
  bool contains(const ProjPoint& p) const;
};

/// BFS from the smallest point of the orbit, generators in canonical order.
/// cap = 0 means proj_order. Throws OrbitTooLarge beyond the cap.
Orbit orbit(const GroupData& g, const ProjPoint& x, long cap = 0);

struct ExceptionalOrbit {
  Orbit orbit;
  std::string reason;  // "fixed on line", "line crossing" or "on conic <name>"
};

/// The points of a pointwise-fixed line whose orbits have the generic size
/// m*h, m the size of the line's orbit and h the order of the group induced
/// on the line by its setwise stabilizer.
struct LineFamily {
  ProjLine line;
  long line_orbit_size = 0;
  long induced_order = 0;
  long generic_orbit_size() const { return line_orbit_size * induced_order; }
  std::vector<ExceptionalOrbit> exceptional;  // sorted by size, then points
};

struct SmallOrbitReport {
  long bound = 0;
  std::vector<Orbit> sporadic;  // sorted by size, then points
  std::vector<LineFamily> families;
  bool complete = false;
  std::string note;
};

/// Every orbit of size <= bound. Candidates are the isolated fixed points of
/// prime-order elements, plus, on each pointwise-fixed line, the points with
/// extra stabilizer (fixed points of the induced action, crossings with other
/// lines of the line's orbit, intersections with the fixture conics).
SmallOrbitReport small_orbits(const GroupData& g, long bound);

/// Sizes of the orbits of the isolated eigenvector points of g1 and g2.
/// Throws MethodInapplicable if either has a 2-dimensional eigenspace.
std::vector<long> eigen_orbit_sizes(const GroupData& g, const Mat3& g1, const Mat3& g2);

bool collinear(const ProjPoint& p, const ProjPoint& q, const ProjPoint& r);
/// Rank < 6 of the Veronese matrix. Throws InputError on wrong count or
/// duplicate points.
bool six_on_conic(const std::vector<ProjPoint>& pts);
/// True if some cubic through all eight points is singular at one of them.
bool eight_on_singular_cubic(const std::vector<ProjPoint>& pts);
/// Index of a point at which some cubic through all eight points is singular.
std::optional<int> singular_cubic_point(const std::vector<ProjPoint>& pts);

struct GenPosReport {
  enum class Failure { None, Collinear, OnConic, OnSingularCubic };
  bool ok = true;
  Failure failure = Failure::None;
  std::vector<int> witness;  // indices into the input
  int singular_index = -1;   // for OnSingularCubic
  std::string describe() const;
};

/// Checks every 3-subset, 6-subset and 8-subset in lexicographic order and
/// reports the first failure. Requires 1 <= n <= 8 distinct points.
GenPosReport general_position(const std::vector<ProjPoint>& pts);

/// sigma with g(p_i) = p_sigma(i). Throws NotInvariant if some image is
/// missing from the list.
std::vector<int> induced_permutation(const ProjElement& g, const std::vector<ProjPoint>& pts);

}  // namespace p2r
