// Concrete finite subgroups of SL(3) used throughout: monomial building
// blocks, the Hessian chain, the simple groups A5, PSL(2,7), 3.A6, plus fixed
// points and conics that the orbit analysis refers to.

#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "p2rigid/projgroup.hpp"

namespace p2r {

struct CatalogEntry {
  std::string id;
  int conductor = 1;
  std::vector<Mat3> generators;
  long expected_proj_order = 0;
  long expected_sl_order = 0;
  std::string citation;
};

/// Stable ids in display order.
const std::vector<std::string>& catalog_ids();
/// Throws InputError for an unknown id.
CatalogEntry build(const std::string& id);
/// Closure of build(id), memoized; thread-safe.
const GroupData& catalog_group(const std::string& id);

/// diag(z_k^a, z_k^b, z_k^c); ConstraintError unless a + b + c = 0 mod k.
Mat3 diag_matrix(int k, long a, long b, long c);
/// Cyclic coordinate permutation [[0,1,0],[0,0,1],[1,0,0]].
Mat3 tau();

struct SigmaSpec {
  int k = 2;
  CycloNum alpha, beta, gamma;
};
/// [[a,0,0],[0,0,a*b],[0,a*c,0]]; ConstraintError unless a^k = b^k = c^k = 1
/// and a^3*b*c = -1.
Mat3 sigma(const SigmaSpec& spec);

/// Generators of the Hessian chain.
Mat3 hesse_S();
Mat3 hesse_T();
Mat3 hesse_W();
Mat3 hesse_U();
Mat3 hesse_V();
Mat3 hesse_P();
/// The cube root of omega^2 used in U, as z_9^e with the smallest valid e.
CycloNum hesse_epsilon();

/// Order-2 icosahedral rotation paired with tau to generate A5.
Mat3 icosahedral_R();
/// Klein's generators of PSL(2,7) over Q(z_7).
std::array<Mat3, 3> klein_generators();
/// Extra generator that extends A5 to the triple cover of A6.
Mat3 valentiner_X();

/// Lifts in SL(3) of standard generators (a, b) of A6: a of order 2, b of
/// order 4, ab and ababb of order 5, all orders projective.
std::array<Mat3, 2> a6_standard_generators();

using ConicCoeffs = std::array<CycloNum, 6>;  // basis x^2, y^2, z^2, xy, xz, yz

struct NamedConic {
  std::string name;
  ConicCoeffs coeffs;
};

struct Fixtures {
  std::vector<NamedConic> conics;  // C1, C2, C3
  std::vector<std::pair<std::string, ProjPoint>> points;
  std::vector<ProjPoint> hessian_orbit_1;
  std::vector<ProjPoint> hessian_orbit_2;
};

const Fixtures& fixtures();

CycloNum conic_value(const ConicCoeffs& q, const Vec3& p);

struct SurveyCell {
  int a = 0;
  int k = 0;
  bool skipped = false;     // diagonal generator is projectively trivial
  bool capped = false;      // closure or orbit cap exceeded
  std::string note;
  long proj_order = 0;
  std::map<long, long> sporadic_sizes;  // orbit size -> number of orbits
  std::vector<long> family_sizes;       // generic sizes of reported families
  bool complete = false;
};

/// For each 2 <= k <= max_k and 0 <= a < k, the small-orbit profile of
/// <diag_matrix(k, 1, a, -(a+1)), tau>.
std::vector<SurveyCell> survey_T_groups(int max_k = 24, long orbit_bound = 8);

}  // namespace p2r
