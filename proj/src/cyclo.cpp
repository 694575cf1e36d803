#include "p2rigid/cyclo.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <unordered_map>

namespace p2r {

Rational::Rational(long n, long d) {
  if (d == 0) throw DivisionByZero("rational with zero denominator");
  q_ = mpq_class(n, d);
  q_.canonicalize();
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw DivisionByZero("rational division by zero");
  return Rational(mpq_class(a.q_ / b.q_));
}

int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

long lcm_int(long a, long b) { return std::lcm(a, b); }

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("integer overflow in cyclotomic table");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error("integer overflow in cyclotomic table");
  return r;
}

// Long division by a monic divisor; throws if the remainder is nonzero.
IntPoly exact_divide(IntPoly num, const IntPoly& den) {
  const std::size_t dd = den.size() - 1;
  if (num.size() < den.size()) throw Error("cyclotomic division: degree mismatch");
  IntPoly quot(num.size() - dd, 0);
  for (std::size_t k = num.size(); k-- > dd;) {
    const std::int64_t c = num[k];
    quot[k - dd] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) num[k - dd + j] = checked_sub(num[k - dd + j], checked_mul(c, den[j]));
  }
  for (std::size_t k = 0; k < dd; ++k)
    if (num[k] != 0) throw Error("cyclotomic division left a remainder");
  return quot;
}

struct VecHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};

struct Context {
  int n = 1;
  int phi = 1;
  IntPoly cyclo;                               // Phi_n
  std::vector<mpz_class> cyclo_mpz;            // same, as mpz
  std::vector<std::vector<std::int64_t>> pow;  // x^e mod Phi_n
  std::unordered_map<std::vector<std::int64_t>, std::pair<int, int>, VecHash> roots;
};

std::mutex g_cache_mutex;
std::map<int, IntPoly> g_cyclo_cache;
std::map<int, std::unique_ptr<Context>> g_context_cache;

IntPoly cyclotomic_locked(int n) {
  auto it = g_cyclo_cache.find(n);
  if (it != g_cyclo_cache.end()) return it->second;
  IntPoly p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = exact_divide(p, cyclotomic_locked(d));
  g_cyclo_cache.emplace(n, p);
  return p;
}

void check_conductor(int n) {
  if (n < 1 || n > kMaxConductor)
    throw ConductorError("conductor " + std::to_string(n) + " outside [1, " + std::to_string(kMaxConductor) + "]");
}

const Context& context(int n) {
  check_conductor(n);
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto it = g_context_cache.find(n);
  if (it != g_context_cache.end()) return *it->second;

  auto ctx = std::make_unique<Context>();
  ctx->n = n;
  ctx->cyclo = cyclotomic_locked(n);
  ctx->phi = static_cast<int>(ctx->cyclo.size()) - 1;
  for (auto c : ctx->cyclo) ctx->cyclo_mpz.emplace_back(static_cast<long>(c));
  const int phi = ctx->phi;
  const int count = std::max(n, 2 * phi);
  std::vector<std::int64_t> cur(phi, 0);
  cur[0] = 1;
  ctx->pow.reserve(count);
  for (int e = 0; e < count; ++e) {
    ctx->pow.push_back(cur);
    // multiply by x and reduce
    std::int64_t top = cur[phi - 1];
    for (int j = phi - 1; j > 0; --j) cur[j] = cur[j - 1];
    cur[0] = 0;
    if (top != 0)
      for (int j = 0; j < phi; ++j) cur[j] = checked_sub(cur[j], checked_mul(top, ctx->cyclo[j]));
  }
  for (int e = 0; e < n; ++e) ctx->roots.emplace(ctx->pow[e], std::make_pair(1, e));
  for (int e = 0; e < n; ++e) {
    auto neg = ctx->pow[e];
    for (auto& x : neg) x = -x;
    ctx->roots.emplace(neg, std::make_pair(-1, e));
  }
  auto [pos, _] = g_context_cache.emplace(n, std::move(ctx));
  return *pos->second;
}

void add_scaled_row(std::vector<mpz_class>& acc, const mpz_class& c, const std::vector<std::int64_t>& row) {
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j] == 0) continue;
    if (row[j] == 1)
      acc[j] += c;
    else if (row[j] == -1)
      acc[j] -= c;
    else
      acc[j] += c * mpz_class(static_cast<long>(row[j]));
  }
}

using QPoly = std::vector<mpq_class>;

void trim(QPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// Solves A x = b over Q (A is rows x cols); nullopt if inconsistent.
std::optional<std::vector<mpq_class>> solve_rational(std::vector<std::vector<mpq_class>> a, std::vector<mpq_class> b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(a[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    const mpq_class piv = a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] /= piv;
    b[r] /= piv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      const mpq_class f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (sgn(b[i]) != 0) return std::nullopt;
  std::vector<mpq_class> x(cols, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = b[i];
  return x;
}

}  // namespace

IntPoly cyclotomic_polynomial(int n) {
  if (n < 1) throw InputError("cyclotomic_polynomial requires n >= 1");
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  return cyclotomic_locked(n);
}

CycloNum::CycloNum() : n_(1), num_(1), den_(1) {}

CycloNum CycloNum::zero(int conductor) { return CycloNum(Rational(0), conductor); }

CycloNum::CycloNum(const Rational& r, int conductor) : n_(conductor), num_(context(conductor).phi), den_(1) {
  num_[0] = r.numerator();
  den_ = r.denominator();
}

CycloNum CycloNum::raw(int n, std::vector<mpz_class> num, mpz_class den) {
  CycloNum x;
  x.n_ = n;
  x.num_ = std::move(num);
  x.den_ = std::move(den);
  x.normalize();
  return x;
}

CycloNum CycloNum::zeta(int conductor, long exponent) {
  const Context& ctx = context(conductor);
  long e = exponent % conductor;
  if (e < 0) e += conductor;
  CycloNum x = zero(conductor);
  const auto& row = ctx.pow[e];
  for (int j = 0; j < ctx.phi; ++j) x.num_[j] = static_cast<long>(row[j]);
  return x;
}

CycloNum CycloNum::from_coeffs(int conductor, const std::vector<Rational>& coeffs) {
  const Context& ctx = context(conductor);
  if (static_cast<int>(coeffs.size()) > ctx.phi) {
    // Accept longer input and reduce it.
    CycloNum acc = zero(conductor);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (!coeffs[i].is_zero()) acc += CycloNum(coeffs[i], conductor) * zeta(conductor, static_cast<long>(i));
    return acc;
  }
  mpz_class den = 1;
  for (const auto& c : coeffs) den = lcm(den, c.denominator());
  std::vector<mpz_class> num(ctx.phi);
  for (std::size_t i = 0; i < coeffs.size(); ++i) num[i] = coeffs[i].numerator() * (den / coeffs[i].denominator());
  return raw(conductor, std::move(num), den);
}

void CycloNum::normalize() {
  bool all_zero = true;
  for (const auto& c : num_)
    if (sgn(c) != 0) {
      all_zero = false;
      break;
    }
  if (all_zero) {
    den_ = 1;
    return;
  }
  if (sgn(den_) < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  if (den_ == 1) return;
  mpz_class g = den_;
  for (const auto& c : num_) {
    if (sgn(c) == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) return;
  }
  den_ /= g;
  for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

Rational CycloNum::coeff(int i) const {
  if (i < 0 || i >= degree()) return Rational(0);
  return Rational(mpq_class(num_[i], den_));
}

std::vector<Rational> CycloNum::coeffs() const {
  std::vector<Rational> out;
  out.reserve(num_.size());
  for (int i = 0; i < degree(); ++i) out.push_back(coeff(i));
  return out;
}

bool CycloNum::is_zero() const {
  return std::all_of(num_.begin(), num_.end(), [](const mpz_class& c) { return sgn(c) == 0; });
}

bool CycloNum::is_rational() const {
  for (std::size_t i = 1; i < num_.size(); ++i)
    if (sgn(num_[i]) != 0) return false;
  return true;
}

Rational CycloNum::rational_value() const { return coeff(0); }

bool CycloNum::is_one() const { return is_rational() && den_ == 1 && num_[0] == 1; }

CycloNum CycloNum::embed(int target) const {
  if (target == n_) return *this;
  check_conductor(target);
  if (target % n_ != 0)
    throw ConductorError("cannot embed conductor " + std::to_string(n_) + " into " + std::to_string(target));
  const Context& ctx = context(target);
  const int factor = target / n_;
  std::vector<mpz_class> out(ctx.phi);
  for (int i = 0; i < degree(); ++i) {
    if (sgn(num_[i]) == 0) continue;
    add_scaled_row(out, num_[i], ctx.pow[static_cast<std::size_t>(i) * factor]);
  }
  return raw(target, std::move(out), den_);
}

std::optional<CycloNum> CycloNum::descend(int d) const {
  if (d <= 0 || n_ % d != 0) return std::nullopt;
  if (d == n_) return *this;
  if (is_rational()) return CycloNum(rational_value(), d);
  const int pd = euler_phi(d);
  std::vector<std::vector<mpq_class>> a(degree(), std::vector<mpq_class>(pd));
  for (int j = 0; j < pd; ++j) {
    CycloNum basis = zeta(d, j).embed(n_);
    for (int i = 0; i < degree(); ++i) a[i][j] = mpq_class(basis.num_[i]);
  }
  std::vector<mpq_class> b(degree());
  for (int i = 0; i < degree(); ++i) b[i] = mpq_class(num_[i], den_);
  auto sol = solve_rational(std::move(a), std::move(b));
  if (!sol) return std::nullopt;
  std::vector<Rational> coeffs;
  for (auto& q : *sol) coeffs.emplace_back(q);
  return from_coeffs(d, coeffs);
}

CycloNum CycloNum::minimized() const {
  if (is_rational()) return CycloNum(rational_value(), 1);
  if (auto r = signed_root_exponent()) {
    // +-z_n^e = z_2n^E; reduce the fraction E/2n.
    long big = 2L * n_;
    long e = 2L * r->second + (r->first < 0 ? n_ : 0);
    const long g = std::gcd(big, e);
    big /= g;
    e /= g;
    if (big % 4 == 2) {
      // z_2m^e = -z_m^((e+m)/2) for odd m and odd e.
      const long m = big / 2;
      return -zeta(static_cast<int>(m), (e + m) / 2);
    }
    return zeta(static_cast<int>(big), e);
  }
  for (int d = 1; d < n_; ++d) {
    if (n_ % d != 0) continue;
    if (auto x = descend(d)) return *x;
  }
  return *this;
}

CycloNum operator+(const CycloNum& a, const CycloNum& b) {
  if (a.n_ != b.n_) {
    const int l = static_cast<int>(lcm_int(a.n_, b.n_));
    return a.embed(l) + b.embed(l);
  }
  std::vector<mpz_class> num(a.num_.size());
  if (a.den_ == b.den_) {
    for (std::size_t i = 0; i < num.size(); ++i) num[i] = a.num_[i] + b.num_[i];
    return CycloNum::raw(a.n_, std::move(num), a.den_);
  }
  for (std::size_t i = 0; i < num.size(); ++i) num[i] = a.num_[i] * b.den_ + b.num_[i] * a.den_;
  return CycloNum::raw(a.n_, std::move(num), a.den_ * b.den_);
}

CycloNum CycloNum::operator-() const {
  CycloNum x = *this;
  for (auto& c : x.num_) c = -c;
  return x;
}

CycloNum operator-(const CycloNum& a, const CycloNum& b) { return a + (-b); }

CycloNum operator*(const CycloNum& a, const CycloNum& b) {
  if (a.n_ != b.n_) {
    const int l = static_cast<int>(lcm_int(a.n_, b.n_));
    return a.embed(l) * b.embed(l);
  }
  const Context& ctx = context(a.n_);
  const int phi = ctx.phi;
  if (a.is_rational() || b.is_rational()) {
    const CycloNum& r = a.is_rational() ? a : b;
    const CycloNum& o = a.is_rational() ? b : a;
    if (sgn(r.num_[0]) == 0) return CycloNum::zero(a.n_);
    std::vector<mpz_class> num(phi);
    for (int i = 0; i < phi; ++i) num[i] = o.num_[i] * r.num_[0];
    return CycloNum::raw(a.n_, std::move(num), o.den_ * r.den_);
  }
  std::vector<mpz_class> prod(2 * phi - 1);
  for (int i = 0; i < phi; ++i) {
    if (sgn(a.num_[i]) == 0) continue;
    for (int j = 0; j < phi; ++j) {
      if (sgn(b.num_[j]) == 0) continue;
      mpz_addmul(prod[i + j].get_mpz_t(), a.num_[i].get_mpz_t(), b.num_[j].get_mpz_t());
    }
  }
  for (int k = 2 * phi - 2; k >= phi; --k) {
    if (sgn(prod[k]) == 0) continue;
    const mpz_class c = prod[k];
    for (int j = 0; j < phi; ++j) {
      if (ctx.cyclo[j] == 0) continue;
      mpz_submul(prod[k - phi + j].get_mpz_t(), c.get_mpz_t(), ctx.cyclo_mpz[j].get_mpz_t());
    }
    prod[k] = 0;
  }
  prod.resize(phi);
  return CycloNum::raw(a.n_, std::move(prod), a.den_ * b.den_);
}

bool operator==(const CycloNum& a, const CycloNum& b) {
  if (a.n_ != b.n_) {
    const int l = static_cast<int>(lcm_int(a.n_, b.n_));
    return a.embed(l) == b.embed(l);
  }
  return a.den_ == b.den_ && a.num_ == b.num_;
}

bool structural_less(const CycloNum& a, const CycloNum& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_;
  if (a.den_ != b.den_) return a.den_ < b.den_;
  return a.num_ < b.num_;
}

std::optional<std::pair<int, int>> CycloNum::signed_root_exponent() const {
  if (den_ != 1) return std::nullopt;
  std::vector<std::int64_t> key(num_.size());
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (!num_[i].fits_slong_p()) return std::nullopt;
    key[i] = num_[i].get_si();
  }
  const Context& ctx = context(n_);
  auto it = ctx.roots.find(key);
  if (it == ctx.roots.end()) return std::nullopt;
  return it->second;
}

CycloNum CycloNum::inv() const {
  if (is_zero()) throw DivisionByZero("inverse of zero in Q(zeta_" + std::to_string(n_) + ")");
  if (is_rational()) return CycloNum(Rational(1) / rational_value(), n_);
  if (auto r = signed_root_exponent()) {
    CycloNum x = zeta(n_, -static_cast<long>(r->second));
    return r->first < 0 ? -x : x;
  }
  // Extended Euclid: find s with a*s = c (mod Phi_n), c a nonzero constant.
  const Context& ctx = context(n_);
  QPoly r0(ctx.cyclo.begin(), ctx.cyclo.end());
  QPoly r1;
  for (const auto& c : num_) r1.emplace_back(c);
  trim(r1);
  QPoly s0;          // 0
  QPoly s1{mpq_class(1)};
  while (r1.size() > 1) {
    // r0 = q*r1 + rem
    QPoly rem = r0;
    QPoly q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0);
    const mpq_class lead = r1.back();
    while (rem.size() >= r1.size() && !rem.empty()) {
      const std::size_t shift = rem.size() - r1.size();
      const mpq_class f = rem.back() / lead;
      q[shift] = f;
      for (std::size_t j = 0; j < r1.size(); ++j) rem[shift + j] -= f * r1[j];
      rem.pop_back();
      trim(rem);
    }
    // s_next = s0 - q*s1
    QPoly next(std::max(s0.size(), q.size() + s1.size()), 0);
    for (std::size_t i = 0; i < s0.size(); ++i) next[i] += s0[i];
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < s1.size(); ++j) next[i + j] -= q[i] * s1[j];
    trim(next);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(next);
  }
  if (r1.empty()) throw Error("cyclotomic inverse: element not invertible");
  // num * s1 = c, and the value is num / den, so its inverse is den * s1 / c.
  const mpq_class c = r1[0];
  std::vector<Rational> coeffs;
  for (auto& x : s1) coeffs.emplace_back(mpq_class(x * den_ / c));
  return from_coeffs(n_, coeffs);
}

CycloNum inv(const CycloNum& a) { return a.inv(); }

CycloNum CycloNum::galois(long j) const {
  long jj = j % n_;
  if (jj < 0) jj += n_;
  if (std::gcd(jj, static_cast<long>(n_)) != 1 && n_ > 1)
    throw ConductorError("galois exponent not coprime to conductor");
  const Context& ctx = context(n_);
  std::vector<mpz_class> out(ctx.phi);
  for (int i = 0; i < degree(); ++i) {
    if (sgn(num_[i]) == 0) continue;
    add_scaled_row(out, num_[i], ctx.pow[(i * jj) % n_]);
  }
  return raw(n_, std::move(out), den_);
}

CycloNum CycloNum::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  CycloNum result(Rational(1), n_);
  CycloNum base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

namespace {

// sqrt(p) for a prime p, via quadratic Gauss sums.
std::optional<CycloNum> sqrt_prime(long p) {
  if (p == 2) return CycloNum::zeta(8, 1) + CycloNum::zeta(8, 7);
  if (4 * p > kMaxConductor) return std::nullopt;
  CycloNum g = CycloNum::zero(static_cast<int>(p));
  for (long a = 1; a < p; ++a) {
    // Legendre symbol by Euler's criterion.
    long r = 1;
    for (long k = 0; k < (p - 1) / 2; ++k) r = r * a % p;
    g += r == 1 ? CycloNum::zeta(static_cast<int>(p), a) : -CycloNum::zeta(static_cast<int>(p), a);
  }
  // g^2 = p when p = 1 mod 4 and -p when p = 3 mod 4.
  if (p % 4 == 1) return g;
  return -CycloNum::zeta(4, 1) * g;
}

}  // namespace

std::optional<CycloNum> CycloNum::try_sqrt() const {
  if (is_zero()) return zero(n_);
  const int m = static_cast<int>(lcm_int(n_, 4));
  const CycloNum d = embed(m);
  for (int e = 0; e < m; ++e) {
    const CycloNum c = d * zeta(m, -2L * e);
    if (!c.is_rational()) continue;
    const Rational r = c.rational_value();
    if (r.sign() < 0) continue;
    // r = num/den = (num*den)/den^2; split num*den into square * squarefree.
    mpz_class rest = r.numerator() * r.denominator();
    mpz_class root = 1;
    CycloNum radical(1);
    for (long p = 2; p <= kMaxConductor && rest > 1; ++p) {
      if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
      int k = 0;
      while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
        rest /= p;
        ++k;
      }
      for (int i = 0; i < k / 2; ++i) root *= p;
      if (k % 2) {
        auto sp = sqrt_prime(p);
        if (!sp) return std::nullopt;
        if (lcm_int(radical.conductor(), sp->conductor()) > kMaxConductor) return std::nullopt;
        radical = radical * *sp;
      }
    }
    if (rest != 1) return std::nullopt;
    if (lcm_int(radical.conductor(), m) > kMaxConductor) return std::nullopt;
    return CycloNum(Rational(mpq_class(root, r.denominator())), m) * zeta(m, e) * radical;
  }
  return std::nullopt;
}

std::string CycloNum::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  auto monomial = [&](int e) {
    if (e == 0) return std::string("1");
    if (e == 1) return var;
    return var + "^" + std::to_string(e);
  };
  if (!is_rational()) {
    if (auto r = signed_root_exponent()) return (r->first < 0 ? "-" : "") + monomial(r->second);
  }
  std::string out;
  for (int i = degree() - 1; i >= 0; --i) {
    if (sgn(num_[i]) == 0) continue;
    mpq_class c(num_[i], den_);
    c.canonicalize();
    const bool neg = sgn(c) < 0;
    if (neg) c = -c;
    std::string term;
    if (i == 0)
      term = c.get_str();
    else if (c == 1)
      term = monomial(i);
    else
      term = c.get_str() + "*" + monomial(i);
    if (out.empty())
      out = (neg ? "-" : "") + term;
    else
      out += (neg ? " - " : " + ") + term;
  }
  return out;
}

std::size_t CycloNum::hash() const {
  std::size_t h = static_cast<std::size_t>(n_) * 0x9e3779b97f4a7c15ull;
  auto mix = [&](const mpz_class& z) {
    const std::size_t v = mpz_size(z.get_mpz_t()) ? mpz_getlimbn(z.get_mpz_t(), 0) : 0;
    h ^= (v * 2 + static_cast<std::size_t>(sgn(z) < 0)) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  mix(den_);
  for (const auto& c : num_) mix(c);
  return h;
}

}  // namespace p2r
