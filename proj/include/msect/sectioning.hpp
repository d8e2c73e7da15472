#pragma once

#include "msect/exact_core.hpp"
#include "msect/number_theory.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace msect {

enum class Status { Sectable, NotSectable, Indeterminate, Unsupported };

std::string_view to_string(Status s);

struct Unsupported : std::domain_error {
  using std::domain_error::domain_error;
};

struct DegenerateReflection : std::domain_error {
  using std::domain_error::domain_error;
};

/// Monic degree-m polynomial in t whose rational roots t = s / tan(phi)
/// give the first m-sector directions. coeffs[i] multiplies t^i.
struct SectPolynomial {
  unsigned m = 0;
  std::vector<Integer> coeffs;

  Integer operator()(const Integer& t) const;
  const Integer& constant_term() const { return coeffs.front(); }
  std::string str() const;  // "t^3 - 27t^2 - 507t + 1521"
};

/// Requires s2 > 0 and p != 0; throws Unsupported otherwise.
SectPolynomial sect_polynomial(unsigned m, const GramInvariants& g);

struct RootSearch {
  bool complete = false;
  std::vector<Integer> roots;  // ascending
  std::size_t candidates_tested = 0;
};

/// Integer roots of f via the divisors of its constant term. Every rational
/// root of a monic integer polynomial is an integer, so this is exhaustive
/// when complete.
RootSearch rational_roots(const SectPolynomial& f, const GramInvariants& g, WorkMeter& meter,
                          const Budget& budget);
RootSearch rational_roots(const SectPolynomial& f, const GramInvariants& g,
                          const Budget& budget = {});

/// Primitive direction of (t - p)a + |a|^2 b.
IntVector first_sector_vector(const IntVector& a, const IntVector& b, const Integer& t);

/// 2<prev,cur>cur - |cur|^2 prev, not reduced: the mirror image of prev
/// across the line of cur, scaled by |cur|^2.
IntVector reflect_raw(const IntVector& prev, const IntVector& cur);

/// Primitive form of reflect_raw. Throws DegenerateReflection on a zero image.
IntVector reflect_step(const IntVector& prev, const IntVector& cur);

struct EquisectorSequence {
  std::vector<IntVector> vectors;  // primitive, m + 1 entries
  unsigned m = 0;
  bool verified = false;
  std::optional<Integer> root;  // generating root, when built from one
};

EquisectorSequence generate_sequence(const IntVector& a, const IntVector& c1, unsigned m);
EquisectorSequence extend_sequence(const EquisectorSequence& seq, unsigned extra);

struct VerificationReport {
  bool valid = true;
  std::optional<std::size_t> failure_index;
  std::string reason;
};

/// Checks coplanarity, the reflection recurrence, equal consecutive angles
/// and (optionally) the endpoint. Never throws on bad input; failures are
/// reported with the first offending index.
VerificationReport verify_sequence(std::span<const IntVector> seq,
                                   const std::optional<IntVector>& b_expected = std::nullopt);

/// cosines[i] = cos(theta / 2^i). holds is true iff all e entries exist in Q.
struct CosineChain {
  unsigned e = 0;
  std::vector<Rational> cosines;
  bool holds = false;
};

CosineChain pow2_sectable(const IntVector& a, const IntVector& b, unsigned e);

struct BisectorResult {
  Status status = Status::Indeterminate;
  std::optional<IntVector> vector;
};

/// Interior bisector from the square classes of |a|^2 and |b|^2.
/// Throws DependentPair for dependent input.
BisectorResult bisector_vector(const IntVector& a, const IntVector& b, WorkMeter& meter,
                               std::uint64_t seed);
BisectorResult bisector_vector(const IntVector& a, const IntVector& b, const Budget& budget = {});

struct MsectOptions {
  Budget budget;
  // Also accept sequences that end at a negative multiple of b.
  bool allow_antiparallel = false;
};

struct AntiparallelWitness {
  Integer root;
  EquisectorSequence sequence;
};

struct SectorDecision {
  Status status = Status::Indeterminate;
  unsigned m = 0;
  GramInvariants gram;
  std::optional<SectPolynomial> polynomial;
  std::vector<Integer> roots;
  std::vector<EquisectorSequence> sequences;
  std::vector<AntiparallelWitness> rejected_antiparallel;
  bool budget_exhausted = false;
  std::optional<CosineChain> cosine_chain;  // set on the power-of-two route
  std::string note;
};

/// Decides whether the angle between a and b splits into m equal parts with
/// integer vectors and builds the witnesses. Orthogonal pairs are handled only
/// for m a power of two; dependent pairs are Unsupported.
SectorDecision decide_msect(const IntVector& a, const IntVector& b, unsigned m,
                            const MsectOptions& options = {});

}  // namespace msect
