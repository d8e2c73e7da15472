#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace msect {

using Integer = mpz_class;
using Rational = mpq_class;

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ZeroVector : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised when an operation needs a linearly independent pair.
struct DependentPair : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Integer vector of dimension >= 2 with arbitrary-precision coordinates.
///
/// Zero vectors are representable; operations that need a nonzero input
/// check for it themselves and throw ZeroVector.
class IntVector {
 public:
  explicit IntVector(std::vector<Integer> coords);
  IntVector(std::initializer_list<long> coords);

  std::size_t dim() const { return coords_.size(); }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }
  std::span<const Integer> coords() const { return coords_; }

  bool is_zero() const;
  bool is_primitive() const;
  std::string str() const;  // "(x1,x2,...)"

  IntVector operator-() const;
  friend bool operator==(const IntVector&, const IntVector&) = default;

 private:
  std::vector<Integer> coords_;
};

IntVector operator*(const Integer& k, const IntVector& v);
IntVector operator+(const IntVector& u, const IntVector& v);
IntVector operator-(const IntVector& u, const IntVector& v);

struct GramInvariants {
  Integer p;   // <a,b>
  Integer na;  // |a|^2
  Integer nb;  // |b|^2
  Integer s2;  // na*nb - p^2
};

/// c = lambda*a + mu*b over the reference pair (a, b).
struct PlaneCoords {
  Rational lambda;
  Rational mu;
};

/// Exact directed angle from a inside span{a, b}. tan_over_s is
/// (1/s)tan of the angle, empty when the cosine vanishes.
struct TangentClass {
  std::optional<Rational> tan_over_s;
  int cos_sign = 0;
  int sin_sign = 0;

  friend bool operator==(const TangentClass&, const TangentClass&) = default;
};

Integer inner(const IntVector& u, const IntVector& v);
Integer norm2(const IntVector& v);

GramInvariants gram_invariants(const IntVector& a, const IntVector& b);

struct PrimitiveForm {
  IntVector vector;
  Integer scale;  // > 0, input = scale * vector
};

PrimitiveForm primitive_reduce(const IntVector& v);
IntVector primitive(const IntVector& v);

/// True iff u and v are linearly dependent (all 2x2 minors vanish).
bool dependent(const IntVector& u, const IntVector& v);

/// True iff u = k*v for some rational k > 0 (both nonzero).
bool positively_parallel(const IntVector& u, const IntVector& v);

/// Solves c = lambda*a + mu*b exactly. Empty when c is outside span{a, b}.
/// Throws DependentPair if a, b are dependent.
std::optional<PlaneCoords> plane_coords(const IntVector& a, const IntVector& b,
                                        const IntVector& c);

/// Throws std::domain_error if c is not coplanar with (a, b).
TangentClass tangent_class(const IntVector& a, const IntVector& b, const IntVector& c);

/// Equality of unsigned angles in [0, pi], decided without square roots.
bool angles_equal(const IntVector& u1, const IntVector& v1, const IntVector& u2,
                  const IntVector& v2);

int sign(const Integer& x);

}  // namespace msect
