#include "msect/sectioning.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace msect {

namespace {

Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Integer ipow(const Integer& x, unsigned k) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), k);
  return r;
}

void require_nonzero(const IntVector& v) {
  if (v.is_zero()) throw ZeroVector("zero vector " + v.str());
}

VerificationReport fail(std::size_t index, std::string reason) {
  return {false, index, std::move(reason)};
}

// Search the pow2 route: successive interior bisections toward a.
SectorDecision decide_power_of_two(const IntVector& a, const IntVector& b, unsigned m,
                                   const GramInvariants& g, const MsectOptions& options) {
  SectorDecision out;
  out.m = m;
  out.gram = g;
  const unsigned e = static_cast<unsigned>(std::countr_zero(m));
  out.cosine_chain = pow2_sectable(a, b, e);
  if (!out.cosine_chain->holds) {
    out.status = Status::NotSectable;
    return out;
  }

  WorkMeter meter(options.budget.work);
  IntVector target = b;
  for (unsigned i = 0; i < e; ++i) {
    const BisectorResult half = bisector_vector(a, target, meter, options.budget.seed);
    if (half.status == Status::Indeterminate) {
      out.status = Status::Indeterminate;
      out.budget_exhausted = true;
      return out;
    }
    if (half.status != Status::Sectable) {
      // The cosine chain guarantees every bisection step.
      throw std::logic_error("bisection failed despite a rational cosine chain");
    }
    target = *half.vector;
  }

  EquisectorSequence seq = generate_sequence(a, target, m);
  seq.verified = verify_sequence(seq.vectors, b).valid;
  if (!seq.verified) throw std::logic_error("power-of-two sequence failed verification");
  out.sequences.push_back(std::move(seq));
  out.status = Status::Sectable;
  return out;
}

}  // namespace

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Sectable:
      return "sectable";
    case Status::NotSectable:
      return "not_sectable";
    case Status::Indeterminate:
      return "indeterminate";
    case Status::Unsupported:
      return "unsupported";
  }
  return "unknown";
}

Integer SectPolynomial::operator()(const Integer& t) const {
  Integer acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::string SectPolynomial::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    const Integer& c = coeffs[i];
    if (c == 0) continue;
    const Integer mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1 || i == 0) os << mag.get_str();
    if (i >= 1) os << 't';
    if (i >= 2) os << '^' << i;
  }
  if (first) os << '0';
  return os.str();
}

SectPolynomial sect_polynomial(unsigned m, const GramInvariants& g) {
  if (m < 2) throw std::invalid_argument("m must be at least 2");
  if (g.s2 == 0) throw Unsupported("linearly dependent pair has no sectability polynomial");
  if (g.p == 0) throw Unsupported("orthogonal pair has no sectability polynomial");

  SectPolynomial f;
  f.m = m;
  f.coeffs.assign(m + 1, Integer(0));
  const Integer neg_s2 = -g.s2;
  for (unsigned i = 0; 2 * i <= m; ++i)
    f.coeffs[m - 2 * i] += ipow(neg_s2, i) * binomial(m, 2 * i);
  for (unsigned i = 0; 2 * i + 1 <= m; ++i)
    f.coeffs[m - 2 * i - 1] -= g.p * ipow(neg_s2, i) * binomial(m, 2 * i + 1);
  return f;
}

RootSearch rational_roots(const SectPolynomial& f, const GramInvariants& g, WorkMeter& meter,
                          const Budget& budget) {
  RootSearch out;
  const Integer& c0 = f.constant_term();
  if (c0 == 0) throw std::invalid_argument("sectability polynomial has a zero constant term");

  // |c0| is s^m (m even) or |p| s^(m-1) (m odd); factor the small pieces.
  const Factorization fs2 = factorize(g.s2, meter, budget.seed);
  Factorization fc = power(fs2, f.m / 2);
  if (f.m % 2 == 1) fc = multiply(factorize(abs(g.p), meter, budget.seed), fc);
  fc.sign = 1;
  if (!fc.complete) return out;
  if (fc.value() != abs(c0)) throw std::logic_error("constant term factorization mismatch");

  const auto count = divisor_count(fc);
  if (!count || *count > Integer(static_cast<unsigned long>(budget.max_divisors))) return out;

  for (const Integer& d : divisors(fc, budget.max_divisors)) {
    for (const Integer& t : {Integer(-d), d}) {
      ++out.candidates_tested;
      if (f(t) == 0) out.roots.push_back(t);
    }
  }
  std::sort(out.roots.begin(), out.roots.end());
  out.complete = true;
  return out;
}

RootSearch rational_roots(const SectPolynomial& f, const GramInvariants& g,
                          const Budget& budget) {
  WorkMeter meter(budget.work);
  return rational_roots(f, g, meter, budget);
}

IntVector first_sector_vector(const IntVector& a, const IntVector& b, const Integer& t) {
  const GramInvariants g = gram_invariants(a, b);
  if (g.s2 == 0) throw DependentPair("first sector vector needs an independent pair");
  const IntVector w = Integer(t - g.p) * a + g.na * b;
  if (w.is_zero()) throw std::logic_error("first sector vector vanished for an independent pair");
  return primitive(w);
}

IntVector reflect_raw(const IntVector& prev, const IntVector& cur) {
  require_nonzero(prev);
  require_nonzero(cur);
  return Integer(2 * inner(prev, cur)) * cur - norm2(cur) * prev;
}

IntVector reflect_step(const IntVector& prev, const IntVector& cur) {
  const IntVector w = reflect_raw(prev, cur);
  if (w.is_zero())
    throw DegenerateReflection("reflection of " + prev.str() + " across " + cur.str() +
                               " vanished");
  return primitive(w);
}

EquisectorSequence generate_sequence(const IntVector& a, const IntVector& c1, unsigned m) {
  if (m < 1) throw std::invalid_argument("sequence needs m >= 1");
  if (a.dim() != c1.dim()) throw DimensionMismatch("sequence vectors differ in dimension");
  EquisectorSequence seq;
  seq.m = m;
  seq.vectors.reserve(m + 1);
  seq.vectors.push_back(primitive(a));
  seq.vectors.push_back(primitive(c1));
  while (seq.vectors.size() < m + 1) {
    const std::size_t n = seq.vectors.size();
    seq.vectors.push_back(reflect_step(seq.vectors[n - 2], seq.vectors[n - 1]));
  }
  return seq;
}

EquisectorSequence extend_sequence(const EquisectorSequence& seq, unsigned extra) {
  if (seq.vectors.size() < 2) throw std::invalid_argument("extension needs at least two vectors");
  EquisectorSequence out = seq;
  for (unsigned k = 0; k < extra; ++k) {
    const std::size_t n = out.vectors.size();
    out.vectors.push_back(reflect_step(out.vectors[n - 2], out.vectors[n - 1]));
  }
  out.m = static_cast<unsigned>(out.vectors.size() - 1);
  if (extra > 0) out.verified = false;
  return out;
}

VerificationReport verify_sequence(std::span<const IntVector> seq,
                                   const std::optional<IntVector>& b_expected) {
  if (seq.size() < 2) return fail(0, "sequence needs at least two vectors");
  const std::size_t dim = seq[0].dim();
  for (std::size_t j = 0; j < seq.size(); ++j) {
    if (seq[j].dim() != dim) return fail(j, "dimension differs from the first vector");
    if (seq[j].is_zero()) return fail(j, "zero vector");
  }
  if (b_expected && (b_expected->dim() != dim || b_expected->is_zero()))
    return fail(seq.size() - 1, "expected endpoint is zero or has the wrong dimension");

  // Reference plane: c0 with the first vector independent of it.
  std::optional<std::size_t> ref;
  for (std::size_t j = 1; j < seq.size() && !ref; ++j)
    if (!dependent(seq[0], seq[j])) ref = j;

  for (std::size_t j = 0; j < seq.size(); ++j) {
    if (ref && !plane_coords(seq[0], seq[*ref], seq[j]))
      return fail(j, "not coplanar with " + seq[0].str() + " and " + seq[*ref].str());
    if (j >= 2) {
      const IntVector w = reflect_raw(seq[j - 2], seq[j - 1]);
      if (!positively_parallel(w, seq[j]))
        return fail(j, "not a positive multiple of the reflection " + primitive(w).str());
      if (!angles_equal(seq[j - 2], seq[j - 1], seq[j - 1], seq[j]))
        return fail(j, "consecutive angles differ");
    }
  }
  if (b_expected && !positively_parallel(seq.back(), *b_expected))
    return fail(seq.size() - 1, "endpoint is not a positive multiple of " + b_expected->str());
  return {};
}

CosineChain pow2_sectable(const IntVector& a, const IntVector& b, unsigned e) {
  if (e < 1) throw std::invalid_argument("e must be at least 1");
  const GramInvariants g = gram_invariants(a, b);
  CosineChain chain;
  chain.e = e;

  // cos(theta) = p / (|a||b|) is rational iff |a|^2 |b|^2 is a square.
  const auto len = rational_sqrt(Rational(g.na * g.nb));
  if (!len) return chain;
  Rational c(g.p, len->get_num());
  c.canonicalize();
  chain.cosines.push_back(c);

  for (unsigned i = 1; i < e; ++i) {
    const auto half = rational_sqrt((1 + chain.cosines.back()) / 2);
    if (!half) return chain;
    chain.cosines.push_back(*half);
  }
  chain.holds = true;
  return chain;
}

BisectorResult bisector_vector(const IntVector& a, const IntVector& b, WorkMeter& meter,
                               std::uint64_t seed) {
  const GramInvariants g = gram_invariants(a, b);
  if (g.s2 == 0) throw DependentPair("bisector needs an independent pair");
  const auto sa = squarefree_part(g.na, meter, seed);
  const auto sb = squarefree_part(g.nb, meter, seed);
  if (!sa || !sb) return {Status::Indeterminate, std::nullopt};
  if (sa->d != sb->d) return {Status::NotSectable, std::nullopt};
  // |b|/sqrt(d) = q_b and |a|/sqrt(d) = q_a.
  return {Status::Sectable, primitive(sb->q * a + sa->q * b)};
}

BisectorResult bisector_vector(const IntVector& a, const IntVector& b, const Budget& budget) {
  WorkMeter meter(budget.work);
  return bisector_vector(a, b, meter, budget.seed);
}

SectorDecision decide_msect(const IntVector& a, const IntVector& b, unsigned m,
                            const MsectOptions& options) {
  if (m < 2) throw std::invalid_argument("m must be at least 2");
  const GramInvariants g = gram_invariants(a, b);

  SectorDecision out;
  out.m = m;
  out.gram = g;
  if (g.s2 == 0) {
    out.status = Status::Unsupported;
    out.note = "vectors are linearly dependent";
    return out;
  }
  if (g.p == 0) {
    if (std::has_single_bit(m)) return decide_power_of_two(a, b, m, g, options);
    out.status = Status::Unsupported;
    out.note = "orthogonal pairs are decided only for powers of two";
    return out;
  }

  out.polynomial = sect_polynomial(m, g);
  WorkMeter meter(options.budget.work);
  const RootSearch search = rational_roots(*out.polynomial, g, meter, options.budget);
  if (!search.complete) {
    out.status = Status::Indeterminate;
    out.budget_exhausted = true;
    out.note = "factoring or divisor budget exhausted";
    return out;
  }
  out.roots = search.roots;

  const IntVector pb = primitive(b);
  for (const Integer& t : search.roots) {
    EquisectorSequence seq = generate_sequence(a, first_sector_vector(a, b, t), m);
    seq.root = t;
    if (seq.vectors.back() == pb) {
      seq.verified = verify_sequence(seq.vectors, b).valid;
      if (!seq.verified) throw std::logic_error("accepted sequence failed verification");
      out.sequences.push_back(std::move(seq));
    } else if (seq.vectors.back() == -pb) {
      if (options.allow_antiparallel) {
        seq.verified = verify_sequence(seq.vectors, -b).valid;
        out.sequences.push_back(std::move(seq));
      } else {
        out.rejected_antiparallel.push_back({t, std::move(seq)});
      }
    } else {
      throw std::logic_error("sequence from root " + t.get_str() + " does not end on the line of b");
    }
  }
  out.status = out.sequences.empty() ? Status::NotSectable : Status::Sectable;
  return out;
}

}  // namespace msect
