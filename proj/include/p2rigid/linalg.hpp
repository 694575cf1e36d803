// Exact linear algebra over cyclotomic fields.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "p2rigid/cyclo.hpp"

namespace p2r {

using Vec3 = std::array<CycloNum, 3>;

/// 3x3 matrix whose entries all live at one conductor.
class Mat3 {
 public:
  Mat3() : Mat3(1) {}
  explicit Mat3(int conductor);

  static Mat3 identity(int conductor = 1);
  static Mat3 scalar(const CycloNum& s);
  static Mat3 diagonal(const CycloNum& a, const CycloNum& b, const CycloNum& c);
  /// Entries may have mixed conductors; they are embedded into their lcm.
  static Mat3 from_rows(const std::array<std::array<CycloNum, 3>, 3>& rows);

  int conductor() const { return n_; }
  const CycloNum& operator()(int i, int j) const { return e_[3 * i + j]; }
  /// Sets one entry, embedding the matrix or the value as needed.
  void set(int i, int j, const CycloNum& v);

  Mat3 embed(int target) const;
  Mat3 transpose() const;
  Mat3 scaled(const CycloNum& s) const;
  Mat3 galois(long j) const;

  bool is_zero() const;
  bool is_identity() const;
  bool is_scalar() const;
  bool is_diagonal() const;

  std::string to_string() const;
  std::size_t hash() const;

  friend Mat3 operator*(const Mat3& a, const Mat3& b);
  friend Mat3 operator+(const Mat3& a, const Mat3& b);
  friend Mat3 operator-(const Mat3& a, const Mat3& b);
  friend bool operator==(const Mat3& a, const Mat3& b);
  friend bool operator!=(const Mat3& a, const Mat3& b) { return !(a == b); }

 private:
  int n_;
  std::array<CycloNum, 9> e_;
};

Vec3 apply(const Mat3& m, const Vec3& v);
Vec3 embed(const Vec3& v, int target);
int common_conductor(const Vec3& v);
Vec3 cross(const Vec3& a, const Vec3& b);
CycloNum dot(const Vec3& a, const Vec3& b);

CycloNum det(const Mat3& m);
/// Throws SingularMatrix when det = 0.
Mat3 inverse(const Mat3& m);
Mat3 power(const Mat3& m, long e);

/// lambda^3 - trace*lambda^2 + minors*lambda - det
struct CharPoly {
  CycloNum trace;
  CycloNum minors;
  CycloNum det;
  CycloNum evaluate(const CycloNum& x) const;
};

CharPoly char_poly(const Mat3& m);

inline constexpr long kDefaultOrderCap = 10000;

/// Smallest t >= 1 with m^t = I; NotFiniteOrder beyond `cap`.
long matrix_order(const Mat3& m, long cap = kDefaultOrderCap);
/// Smallest t >= 1 with m^t scalar.
long projective_order(const Mat3& m, long cap = kDefaultOrderCap);

struct Subspace {
  std::vector<Vec3> basis;
  int dimension() const { return static_cast<int>(basis.size()); }
};

struct Eigenpair {
  CycloNum value;  // zeta_order^exponent, at conductor lcm(conductor, order)
  long order = 1;
  long exponent = 0;
  Subspace space;
};

/// Eigenvalues of a finite-order matrix found by testing every t-th root of
/// unity against the characteristic polynomial, t = matrix_order(m).
/// Ordered by exponent; the eigenspace dimensions sum to 3.
std::vector<Eigenpair> root_of_unity_eigenvalues(const Mat3& m);

/// Dense m x n matrix for elimination problems.
using Matrix = std::vector<std::vector<CycloNum>>;

struct Elimination {
  Matrix reduced;             // reduced row echelon form
  std::vector<int> pivots;    // pivot column per nonzero row
  int rank() const { return static_cast<int>(pivots.size()); }
};

/// Gauss-Jordan with first-nonzero pivoting in column order.
Elimination row_reduce(Matrix m);
int rank(const Matrix& m);
/// Basis of the null space, one vector per free column.
std::vector<std::vector<CycloNum>> kernel(const Matrix& m);

Subspace subspace_kernel(const Mat3& m);
Subspace intersect(const Subspace& a, const Subspace& b);
bool contains(const Subspace& s, const Vec3& v);

}  // namespace p2r
