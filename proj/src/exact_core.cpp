#include "msect/exact_core.hpp"

#include <cassert>
#include <sstream>

namespace msect {

namespace {

void require_same_dim(const IntVector& u, const IntVector& v) {
  if (u.dim() != v.dim()) {
    throw DimensionMismatch("dimension mismatch: " + std::to_string(u.dim()) + " vs " +
                            std::to_string(v.dim()));
  }
}

void require_nonzero(const IntVector& v) {
  if (v.is_zero()) throw ZeroVector("zero vector " + v.str());
}

Integer coord_gcd(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v.coords()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

}  // namespace

IntVector::IntVector(std::vector<Integer> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) throw std::invalid_argument("vector dimension must be at least 2");
}

IntVector::IntVector(std::initializer_list<long> coords) {
  coords_.reserve(coords.size());
  for (long x : coords) coords_.emplace_back(x);
  if (coords_.size() < 2) throw std::invalid_argument("vector dimension must be at least 2");
}

bool IntVector::is_zero() const {
  for (const auto& x : coords_)
    if (x != 0) return false;
  return true;
}

bool IntVector::is_primitive() const { return coord_gcd(*this) == 1; }

std::string IntVector::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ',';
    os << coords_[i].get_str();
  }
  os << ')';
  return os.str();
}

IntVector IntVector::operator-() const {
  std::vector<Integer> out;
  out.reserve(coords_.size());
  for (const auto& x : coords_) out.emplace_back(-x);
  return IntVector(std::move(out));
}

IntVector operator*(const Integer& k, const IntVector& v) {
  std::vector<Integer> out;
  out.reserve(v.dim());
  for (const auto& x : v.coords()) out.emplace_back(k * x);
  return IntVector(std::move(out));
}

IntVector operator+(const IntVector& u, const IntVector& v) {
  require_same_dim(u, v);
  std::vector<Integer> out;
  out.reserve(u.dim());
  for (std::size_t i = 0; i < u.dim(); ++i) out.emplace_back(u[i] + v[i]);
  return IntVector(std::move(out));
}

IntVector operator-(const IntVector& u, const IntVector& v) {
  require_same_dim(u, v);
  std::vector<Integer> out;
  out.reserve(u.dim());
  for (std::size_t i = 0; i < u.dim(); ++i) out.emplace_back(u[i] - v[i]);
  return IntVector(std::move(out));
}

int sign(const Integer& x) { return sgn(x); }

Integer inner(const IntVector& u, const IntVector& v) {
  require_same_dim(u, v);
  Integer acc = 0;
  for (std::size_t i = 0; i < u.dim(); ++i) acc += u[i] * v[i];
  return acc;
}

Integer norm2(const IntVector& v) { return inner(v, v); }

GramInvariants gram_invariants(const IntVector& a, const IntVector& b) {
  require_same_dim(a, b);
  require_nonzero(a);
  require_nonzero(b);
  GramInvariants g;
  g.p = inner(a, b);
  g.na = norm2(a);
  g.nb = norm2(b);
  g.s2 = g.na * g.nb - g.p * g.p;
  assert(g.s2 >= 0);
  return g;
}

PrimitiveForm primitive_reduce(const IntVector& v) {
  require_nonzero(v);
  Integer g = coord_gcd(v);
  std::vector<Integer> out;
  out.reserve(v.dim());
  for (const auto& x : v.coords()) {
    Integer q;
    mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    out.push_back(std::move(q));
  }
  return {IntVector(std::move(out)), g};
}

IntVector primitive(const IntVector& v) { return primitive_reduce(v).vector; }

bool dependent(const IntVector& u, const IntVector& v) {
  require_same_dim(u, v);
  for (std::size_t i = 0; i < u.dim(); ++i)
    for (std::size_t j = i + 1; j < u.dim(); ++j)
      if (u[i] * v[j] != u[j] * v[i]) return false;
  return true;
}

bool positively_parallel(const IntVector& u, const IntVector& v) {
  if (u.is_zero() || v.is_zero()) return false;
  return dependent(u, v) && inner(u, v) > 0;
}

std::optional<PlaneCoords> plane_coords(const IntVector& a, const IntVector& b,
                                        const IntVector& c) {
  require_same_dim(a, b);
  require_same_dim(a, c);
  const GramInvariants g = gram_invariants(a, b);
  if (g.s2 == 0) throw DependentPair("reference pair is linearly dependent");

  const Integer ca = inner(c, a);
  const Integer cb = inner(c, b);
  PlaneCoords pc{Rational(ca * g.nb - cb * g.p, g.s2), Rational(cb * g.na - ca * g.p, g.s2)};
  pc.lambda.canonicalize();
  pc.mu.canonicalize();

  // Re-substitute with a common denominator: den*c == lam_num*a + mu_num*b.
  Integer den;
  mpz_lcm(den.get_mpz_t(), pc.lambda.get_den_mpz_t(), pc.mu.get_den_mpz_t());
  const Integer ln = pc.lambda.get_num() * (den / pc.lambda.get_den());
  const Integer mn = pc.mu.get_num() * (den / pc.mu.get_den());
  for (std::size_t i = 0; i < c.dim(); ++i) {
    if (den * c[i] != ln * a[i] + mn * b[i]) return std::nullopt;
  }
  return pc;
}

TangentClass tangent_class(const IntVector& a, const IntVector& b, const IntVector& c) {
  require_nonzero(c);
  const auto pc = plane_coords(a, b, c);
  if (!pc) throw std::domain_error("vector " + c.str() + " is not coplanar with the pair");
  const GramInvariants g = gram_invariants(a, b);

  const Rational cos_part = pc->lambda * g.na + pc->mu * g.p;
  TangentClass tc;
  tc.cos_sign = sgn(cos_part);
  tc.sin_sign = sgn(pc->mu);
  if (tc.cos_sign != 0) tc.tan_over_s = Rational(pc->mu / cos_part);
  return tc;
}

bool angles_equal(const IntVector& u1, const IntVector& v1, const IntVector& u2,
                  const IntVector& v2) {
  for (const auto* v : {&u1, &v1, &u2, &v2}) require_nonzero(*v);
  const Integer d1 = inner(u1, v1);
  const Integer d2 = inner(u2, v2);
  if (sgn(d1) != sgn(d2)) return false;
  return d1 * d1 * norm2(u2) * norm2(v2) == d2 * d2 * norm2(u1) * norm2(v1);
}

}  // namespace msect
