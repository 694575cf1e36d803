// Exact arithmetic in cyclotomic fields Q(zeta_n).
//
// A CycloNum is stored in the power basis 1, z, ..., z^(phi(n)-1) with
// z = exp(2 pi i / n), fully reduced modulo the n-th cyclotomic polynomial.
// Coefficients are kept as integer numerators over one common positive
// denominator, so every field element has exactly one representation at a
// given conductor. Values of different conductors interoperate by embedding
// into Q(zeta_lcm).

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "p2rigid/errors.hpp"

namespace p2r {

inline constexpr int kMaxConductor = 2520;

/// Arbitrary precision rational, always in lowest terms with positive
/// denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long n, long d);
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  const mpq_class& mpq() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }
  std::string to_string() const { return q_.get_str(); }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ + b.q_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ - b.q_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ * b.q_)); }
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(mpq_class(-q_)); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }

 private:
  mpq_class q_;
};

using IntPoly = std::vector<std::int64_t>;  // coefficient of x^i at index i

/// Phi_n, monic of degree phi(n), by exact division of x^n - 1 by the
/// cyclotomic polynomials of the proper divisors of n.
IntPoly cyclotomic_polynomial(int n);

int euler_phi(int n);
long lcm_int(long a, long b);

class CycloNum {
 public:
  /// Zero at conductor 1.
  CycloNum();
  CycloNum(const Rational& r, int conductor = 1);  // NOLINT(google-explicit-constructor)
  CycloNum(long r, int conductor = 1) : CycloNum(Rational(r), conductor) {}  // NOLINT

  static CycloNum zero(int conductor);
  /// zeta_n^e for any integer e.
  static CycloNum zeta(int conductor, long exponent = 1);
  static CycloNum from_coeffs(int conductor, const std::vector<Rational>& coeffs);

  int conductor() const { return n_; }
  int degree() const { return static_cast<int>(num_.size()); }
  Rational coeff(int i) const;
  std::vector<Rational> coeffs() const;

  bool is_zero() const;
  bool is_one() const;
  /// True when the value is rational; `rational_value` then returns it.
  bool is_rational() const;
  Rational rational_value() const;

  /// Same value in Q(zeta_target); conductor() must divide target.
  CycloNum embed(int target) const;
  /// Smallest-conductor representation among divisors of conductor(), if
  /// one exists that is not the current conductor; otherwise a copy.
  CycloNum minimized() const;
  /// The value written in Q(zeta_d) if it lies there.
  std::optional<CycloNum> descend(int d) const;

  CycloNum inv() const;
  /// Field automorphism zeta -> zeta^j, gcd(j, n) = 1.
  CycloNum galois(long j) const;
  CycloNum pow(long e) const;

  /// If the value is zeta_n^e or -zeta_n^e, returns (sign, e) with e in [0, n).
  std::optional<std::pair<int, int>> signed_root_exponent() const;

  /// Square root of values of the form r * zeta_M^e, r rational and
  /// M = lcm(conductor, 4). Square roots of primes come from Gauss sums, so
  /// the result may live at a larger conductor. Used for conic/line
  /// intersections; nullopt when the value has another shape or the
  /// conductor would exceed the cap.
  std::optional<CycloNum> try_sqrt() const;

  /// Expression in the textual grammar with `var` standing for zeta_n.
  std::string to_string(const std::string& var = "z") const;

  std::size_t hash() const;

  friend CycloNum operator+(const CycloNum& a, const CycloNum& b);
  friend CycloNum operator-(const CycloNum& a, const CycloNum& b);
  friend CycloNum operator*(const CycloNum& a, const CycloNum& b);
  friend CycloNum operator/(const CycloNum& a, const CycloNum& b) { return a * b.inv(); }
  CycloNum operator-() const;
  CycloNum& operator+=(const CycloNum& b) { return *this = *this + b; }
  CycloNum& operator-=(const CycloNum& b) { return *this = *this - b; }
  CycloNum& operator*=(const CycloNum& b) { return *this = *this * b; }

  /// Semantic equality: compares inside Q(zeta_lcm).
  friend bool operator==(const CycloNum& a, const CycloNum& b);
  friend bool operator!=(const CycloNum& a, const CycloNum& b) { return !(a == b); }

  /// Total order on same-conductor values, only for deterministic sorting.
  friend bool structural_less(const CycloNum& a, const CycloNum& b);

 private:
  void normalize();
  static CycloNum raw(int n, std::vector<mpz_class> num, mpz_class den);

  int n_ = 1;
  std::vector<mpz_class> num_;
  mpz_class den_ = 1;
};

CycloNum inv(const CycloNum& a);

struct CycloHash {
  std::size_t operator()(const CycloNum& x) const { return x.hash(); }
};

}  // namespace p2r
