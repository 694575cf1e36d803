#include "p2rigid/linalg.hpp"

#include <map>
#include <numeric>
#include <optional>
#include <sstream>

namespace p2r {

Mat3::Mat3(int conductor) : n_(conductor) {
  for (auto& x : e_) x = CycloNum::zero(conductor);
}

Mat3 Mat3::identity(int conductor) {
  Mat3 m(conductor);
  for (int i = 0; i < 3; ++i) m.e_[4 * i] = CycloNum(1, conductor);
  return m;
}

Mat3 Mat3::scalar(const CycloNum& s) {
  Mat3 m(s.conductor());
  for (int i = 0; i < 3; ++i) m.e_[4 * i] = s;
  return m;
}

Mat3 Mat3::diagonal(const CycloNum& a, const CycloNum& b, const CycloNum& c) {
  return from_rows({{{a, CycloNum(0), CycloNum(0)}, {CycloNum(0), b, CycloNum(0)}, {CycloNum(0), CycloNum(0), c}}});
}

Mat3 Mat3::from_rows(const std::array<std::array<CycloNum, 3>, 3>& rows) {
  long n = 1;
  for (const auto& r : rows)
    for (const auto& x : r) n = lcm_int(n, x.conductor());
  Mat3 m(static_cast<int>(n));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m.e_[3 * i + j] = rows[i][j].embed(static_cast<int>(n));
  return m;
}

void Mat3::set(int i, int j, const CycloNum& v) {
  if (v.conductor() != n_ && n_ % v.conductor() != 0) *this = embed(static_cast<int>(lcm_int(n_, v.conductor())));
  e_[3 * i + j] = v.embed(n_);
}

Mat3 Mat3::embed(int target) const {
  if (target == n_) return *this;
  Mat3 m(target);
  for (int k = 0; k < 9; ++k) m.e_[k] = e_[k].embed(target);
  return m;
}

Mat3 Mat3::transpose() const {
  Mat3 m(n_);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m.e_[3 * j + i] = e_[3 * i + j];
  return m;
}

Mat3 Mat3::scaled(const CycloNum& s) const {
  const int n = static_cast<int>(lcm_int(n_, s.conductor()));
  Mat3 m = embed(n);
  const CycloNum t = s.embed(n);
  for (auto& x : m.e_)
    if (!x.is_zero()) x = x * t;
  return m;
}

Mat3 Mat3::galois(long j) const {
  Mat3 m(n_);
  for (int k = 0; k < 9; ++k) m.e_[k] = e_[k].galois(j);
  return m;
}

bool Mat3::is_zero() const {
  for (const auto& x : e_)
    if (!x.is_zero()) return false;
  return true;
}

bool Mat3::is_diagonal() const {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && !e_[3 * i + j].is_zero()) return false;
  return true;
}

bool Mat3::is_scalar() const { return is_diagonal() && e_[0] == e_[4] && e_[0] == e_[8]; }

bool Mat3::is_identity() const { return is_diagonal() && e_[0].is_one() && e_[4].is_one() && e_[8].is_one(); }

std::string Mat3::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < 3; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < 3; ++j) os << (j ? ", " : "") << e_[3 * i + j].to_string();
  }
  os << "]";
  return os.str();
}

std::size_t Mat3::hash() const {
  std::size_t h = 0;
  for (const auto& x : e_) h = h * 1000003u ^ x.hash();
  return h;
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
  if (a.n_ != b.n_) {
    const int n = static_cast<int>(lcm_int(a.n_, b.n_));
    return a.embed(n) * b.embed(n);
  }
  Mat3 m(a.n_);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      const CycloNum& x = a.e_[3 * i + k];
      if (x.is_zero()) continue;
      for (int j = 0; j < 3; ++j) {
        const CycloNum& y = b.e_[3 * k + j];
        if (y.is_zero()) continue;
        CycloNum& dst = m.e_[3 * i + j];
        if (dst.is_zero())
          dst = x * y;
        else
          dst += x * y;
      }
    }
  return m;
}

Mat3 operator+(const Mat3& a, const Mat3& b) {
  if (a.n_ != b.n_) {
    const int n = static_cast<int>(lcm_int(a.n_, b.n_));
    return a.embed(n) + b.embed(n);
  }
  Mat3 m(a.n_);
  for (int k = 0; k < 9; ++k) m.e_[k] = a.e_[k] + b.e_[k];
  return m;
}

Mat3 operator-(const Mat3& a, const Mat3& b) {
  if (a.n_ != b.n_) {
    const int n = static_cast<int>(lcm_int(a.n_, b.n_));
    return a.embed(n) - b.embed(n);
  }
  Mat3 m(a.n_);
  for (int k = 0; k < 9; ++k) m.e_[k] = a.e_[k] - b.e_[k];
  return m;
}

bool operator==(const Mat3& a, const Mat3& b) {
  if (a.n_ != b.n_) {
    const int n = static_cast<int>(lcm_int(a.n_, b.n_));
    return a.embed(n) == b.embed(n);
  }
  return a.e_ == b.e_;
}

int common_conductor(const Vec3& v) {
  long n = 1;
  for (const auto& x : v) n = lcm_int(n, x.conductor());
  return static_cast<int>(n);
}

Vec3 embed(const Vec3& v, int target) { return {v[0].embed(target), v[1].embed(target), v[2].embed(target)}; }

Vec3 apply(const Mat3& m, const Vec3& v) {
  const int n = static_cast<int>(lcm_int(m.conductor(), common_conductor(v)));
  if (m.conductor() != n) return p2r::apply(m.embed(n), v);
  Vec3 out{CycloNum::zero(n), CycloNum::zero(n), CycloNum::zero(n)};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      if (m(i, k).is_zero() || v[k].is_zero()) continue;
      out[i] += m(i, k) * (v[k].conductor() == n ? v[k] : v[k].embed(n));
    }
  return out;
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

CycloNum dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

CycloNum det(const Mat3& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

Mat3 inverse(const Mat3& m) {
  const CycloNum d = det(m);
  if (d.is_zero()) throw SingularMatrix("matrix is singular: " + m.to_string());
  const CycloNum id = d.inv();
  auto cof = [&](int r0, int c0, int r1, int c1) { return m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0); };
  std::array<std::array<CycloNum, 3>, 3> rows{{
      {cof(1, 1, 2, 2), -cof(0, 1, 2, 2), cof(0, 1, 1, 2)},
      {-cof(1, 0, 2, 2), cof(0, 0, 2, 2), -cof(0, 0, 1, 2)},
      {cof(1, 0, 2, 1), -cof(0, 0, 2, 1), cof(0, 0, 1, 1)},
  }};
  return Mat3::from_rows(rows).scaled(id);
}

Mat3 power(const Mat3& m, long e) {
  if (e < 0) return power(inverse(m), -e);
  Mat3 result = Mat3::identity(m.conductor());
  Mat3 base = m;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

CycloNum CharPoly::evaluate(const CycloNum& x) const { return ((x - trace) * x + minors) * x - det; }

CharPoly char_poly(const Mat3& m) {
  CharPoly cp;
  cp.trace = m(0, 0) + m(1, 1) + m(2, 2);
  cp.minors = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) + (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) +
              (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1));
  cp.det = det(m);
  return cp;
}

long matrix_order(const Mat3& m, long cap) {
  if (cap < 1) throw InputError("order cap must be >= 1");
  Mat3 p = m;
  for (long t = 1; t <= cap; ++t) {
    if (p.is_identity()) return t;
    p = p * m;
  }
  throw NotFiniteOrder("matrix order exceeds " + std::to_string(cap));
}

long projective_order(const Mat3& m, long cap) {
  if (cap < 1) throw InputError("order cap must be >= 1");
  Mat3 p = m;
  for (long t = 1; t <= cap; ++t) {
    if (p.is_scalar()) return t;
    p = p * m;
  }
  throw NotFiniteOrder("projective order exceeds " + std::to_string(cap));
}

Elimination row_reduce(Matrix m) {
  Elimination out;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  long n = 1;
  for (const auto& r : m)
    for (const auto& x : r) n = lcm_int(n, x.conductor());
  for (auto& r : m)
    for (auto& x : r) x = x.embed(static_cast<int>(n));

  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const CycloNum piv_inv = m[r][c].inv();
    for (std::size_t j = c; j < cols; ++j)
      if (!m[r][j].is_zero()) m[r][j] = m[r][j] * piv_inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      const CycloNum f = m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (!m[r][j].is_zero()) m[i][j] -= f * m[r][j];
    }
    out.pivots.push_back(static_cast<int>(c));
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

int rank(const Matrix& m) { return row_reduce(m).rank(); }

std::vector<std::vector<CycloNum>> kernel(const Matrix& m) {
  const Elimination el = row_reduce(m);
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  const int n = el.reduced.empty() || el.reduced[0].empty() ? 1 : el.reduced[0][0].conductor();
  std::vector<bool> is_pivot(cols, false);
  for (int c : el.pivots) is_pivot[c] = true;
  std::vector<std::vector<CycloNum>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<CycloNum> v(cols, CycloNum::zero(n));
    v[f] = CycloNum(1, n);
    for (std::size_t i = 0; i < el.pivots.size(); ++i) v[el.pivots[i]] = -el.reduced[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

Subspace subspace_kernel(const Mat3& m) {
  Matrix a(3, std::vector<CycloNum>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] = m(i, j);
  Subspace s;
  for (auto& v : kernel(a)) s.basis.push_back({v[0], v[1], v[2]});
  return s;
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.basis.empty() || b.basis.empty()) return {};
  // Solve sum x_i a_i - sum y_j b_j = 0; the a-part of each solution spans the intersection.
  const std::size_t ca = a.basis.size(), cb = b.basis.size();
  Matrix m(3, std::vector<CycloNum>(ca + cb));
  for (int r = 0; r < 3; ++r) {
    for (std::size_t i = 0; i < ca; ++i) m[r][i] = a.basis[i][r];
    for (std::size_t j = 0; j < cb; ++j) m[r][ca + j] = -b.basis[j][r];
  }
  Subspace out;
  std::vector<std::vector<CycloNum>> rows;
  for (const auto& sol : kernel(m)) {
    Vec3 v{CycloNum(0), CycloNum(0), CycloNum(0)};
    for (std::size_t i = 0; i < ca; ++i)
      for (int r = 0; r < 3; ++r) v[r] += sol[i] * a.basis[i][r];
    rows.push_back({v[0], v[1], v[2]});
  }
  // Keep an independent subset (the map from solutions to vectors is injective
  // when a's basis is independent, so this is a formality).
  const Elimination el = row_reduce(rows);
  for (int i = 0; i < el.rank(); ++i) out.basis.push_back({el.reduced[i][0], el.reduced[i][1], el.reduced[i][2]});
  return out;
}

bool contains(const Subspace& s, const Vec3& v) {
  Matrix m;
  for (const auto& b : s.basis) m.push_back({b[0], b[1], b[2]});
  const int r0 = rank(m);
  m.push_back({v[0], v[1], v[2]});
  return rank(m) == r0;
}

namespace {

// Monomial matrices (one nonzero per row and column) split along the cycles
// of their permutation: a cycle of length l whose entries multiply to c
// carries the eigenvalues lambda with lambda^l = c, and each eigenvector is
// read off by walking the cycle. Returns nullopt when `a` is not monomial.
std::optional<std::array<int, 3>> monomial_permutation(const Mat3& a) {
  std::array<int, 3> perm{};  // column j lands in row perm[j]
  for (int j = 0; j < 3; ++j) {
    int found = -1;
    for (int i = 0; i < 3; ++i) {
      if (a(i, j).is_zero()) continue;
      if (found >= 0) return std::nullopt;
      found = i;
    }
    if (found < 0) return std::nullopt;
    perm[j] = found;
  }
  if (perm[0] == perm[1] || perm[0] == perm[2] || perm[1] == perm[2]) return std::nullopt;
  return perm;
}

// Order of a monomial matrix from its cycle products, without powering.
std::optional<long> monomial_order(const Mat3& a) {
  const auto perm = monomial_permutation(a);
  if (!perm) return std::nullopt;
  const long n = a.conductor();
  long order = 1;
  std::array<bool, 3> seen{};
  for (int j0 = 0; j0 < 3; ++j0) {
    if (seen[j0]) continue;
    long len = 0;
    CycloNum c(1, a.conductor());
    for (int j = j0; !seen[j]; j = (*perm)[j]) {
      seen[j] = true;
      ++len;
      c = c * a((*perm)[j], j);
    }
    const auto root = c.signed_root_exponent();
    if (!root) return std::nullopt;
    // -z_n^e = z_2n^(2e+n)
    const long big = root->first > 0 ? n : 2 * n;
    const long e = root->first > 0 ? root->second : 2 * root->second + n;
    order = lcm_int(order, len * (big / std::gcd(big, e)));
  }
  return order;
}

std::optional<std::vector<Eigenpair>> monomial_eigen(const Mat3& a, long t) {
  const auto p = monomial_permutation(a);
  if (!p) return std::nullopt;
  const std::array<int, 3>& perm = *p;

  const int n = a.conductor();
  const long step = n / t;
  std::map<long, Subspace> spaces;
  std::array<bool, 3> seen{};
  for (int j0 = 0; j0 < 3; ++j0) {
    if (seen[j0]) continue;
    std::vector<int> cycle;
    for (int j = j0; !seen[j]; j = perm[j]) {
      seen[j] = true;
      cycle.push_back(j);
    }
    const long len = static_cast<long>(cycle.size());
    CycloNum c(1, n);
    for (int j : cycle) c = c * a(perm[j], j);
    const auto root = c.signed_root_exponent();
    if (!root || root->first < 0) return std::nullopt;
    for (long k = 0; k < t; ++k) {
      if ((len * step * k - root->second) % n != 0) continue;
      const CycloNum lambda_inv = CycloNum::zeta(n, -step * k);
      Vec3 v{CycloNum::zero(n), CycloNum::zero(n), CycloNum::zero(n)};
      v[j0] = CycloNum(1, n);
      for (std::size_t i = 0; i + 1 < cycle.size(); ++i) {
        const int j = cycle[i];
        v[perm[j]] = a(perm[j], j) * v[j] * lambda_inv;
      }
      spaces[k].basis.push_back(v);
    }
  }
  std::vector<Eigenpair> out;
  for (auto& [k, space] : spaces) out.push_back({CycloNum::zeta(n, step * k), t, k, std::move(space)});
  return out;
}

}  // namespace

std::vector<Eigenpair> root_of_unity_eigenvalues(const Mat3& m) {
  const auto mono_t = monomial_order(m);
  const long t = mono_t ? *mono_t : matrix_order(m);
  const int n = static_cast<int>(lcm_int(m.conductor(), t));
  if (n > kMaxConductor) throw ConductorError("eigenvalue conductor " + std::to_string(n) + " exceeds the cap");
  const Mat3 a = m.embed(n);
  if (auto mono = monomial_eigen(a, t)) return *mono;

  std::vector<Eigenpair> out;
  int found = 0;
  const CharPoly cp = char_poly(a);
  for (long j = 0; j < t && found < 3; ++j) {
    const CycloNum lambda = CycloNum::zeta(n, j * (n / t));
    if (!cp.evaluate(lambda).is_zero()) continue;
    Subspace s = subspace_kernel(a - Mat3::scalar(lambda));
    found += s.dimension();
    out.push_back({lambda, t, j, std::move(s)});
  }
  if (found != 3) throw Error("eigenspace dimensions sum to " + std::to_string(found) + ", expected 3");
  return out;
}

}  // namespace p2r
