#include "msect/number_theory.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

namespace msect {

namespace {

constexpr unsigned kTrialLimit = 1u << 16;

const std::vector<unsigned>& small_primes() {
  static const std::vector<unsigned> primes = [] {
    std::vector<bool> composite(kTrialLimit + 1, false);
    std::vector<unsigned> out;
    for (unsigned i = 2; i <= kTrialLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (unsigned long j = static_cast<unsigned long>(i) * i; j <= kTrialLimit; j += i)
        composite[j] = true;
    }
    return out;
  }();
  return primes;
}

// Miller-Rabin with the first 13 prime bases is exact below this bound.
const Integer& mr_deterministic_bound() {
  static const Integer bound("3317044064679887385961981");
  return bound;
}

Integer powm(const Integer& base, const Integer& exp, const Integer& mod) {
  Integer r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// n odd, n > 2. True if n is a strong probable prime to base a.
bool strong_probable_prime(const Integer& n, const Integer& a) {
  const Integer nm1 = n - 1;
  Integer d = nm1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  Integer x = powm(a % n, d, n);
  if (x == 1 || x == nm1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == nm1) return true;
    if (x == 1) return false;
  }
  return false;
}

// Brent's variant of Pollard rho. Returns a nontrivial factor of composite n,
// or nothing when the meter runs out.
std::optional<Integer> rho_factor(const Integer& n, WorkMeter& meter, std::mt19937_64& rng) {
  if (mpz_even_p(n.get_mpz_t())) return Integer(2);
  constexpr unsigned kBatch = 128;
  for (;;) {
    const Integer c = Integer(static_cast<unsigned long>(rng() >> 2)) % (n - 1) + 1;
    const Integer x0 = Integer(static_cast<unsigned long>(rng() >> 2)) % n;
    Integer y = x0, x, ys, q = 1, g = 1;
    unsigned long r = 1;
    do {
      x = y;
      if (!meter.charge(r)) return std::nullopt;
      for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
      unsigned long k = 0;
      do {
        ys = y;
        const unsigned long steps = std::min<unsigned long>(kBatch, r - k);
        if (!meter.charge(steps)) return std::nullopt;
        for (unsigned long i = 0; i < steps; ++i) {
          y = (y * y + c) % n;
          q = q * abs(x - y) % n;
        }
        g = gcd(q, n);
        k += steps;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);

    if (g == n) {
      // Batch overshot; replay one step at a time from the saved point.
      do {
        if (!meter.charge()) return std::nullopt;
        ys = (ys * ys + c) % n;
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
    // Degenerate cycle: retry with a fresh constant.
  }
}

std::optional<bool> miller_rabin_exact(const Integer& n, WorkMeter& meter) {
  static const unsigned bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (unsigned a : bases) {
    if (n == a) return true;
    if (!meter.charge()) return std::nullopt;
    if (!strong_probable_prime(n, Integer(a))) return false;
  }
  return true;
}

// Pocklington-Lehmer: if n - 1 = F*R with F > sqrt(n) fully factored and for
// each prime q | F some a has a^(n-1) = 1 and gcd(a^((n-1)/q) - 1, n) = 1,
// then n is prime.
std::optional<bool> pocklington(const Integer& n, WorkMeter& meter, std::uint64_t seed) {
  const Integer nm1 = n - 1;
  const Factorization f = factorize(nm1, meter, seed);
  Integer proven = 1;
  for (const auto& pp : f.prime_powers) {
    Integer pe;
    mpz_pow_ui(pe.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
    proven *= pe;
  }
  if (proven * proven <= n) return std::nullopt;

  for (const auto& pp : f.prime_powers) {
    const Integer cofactor = nm1 / pp.prime;
    bool witnessed = false;
    for (unsigned a = 2; a < 200 && !witnessed; ++a) {
      if (!meter.charge(2)) return std::nullopt;
      if (powm(Integer(a), nm1, n) != 1) return false;
      if (gcd(powm(Integer(a), cofactor, n) - 1, n) == 1) witnessed = true;
    }
    if (!witnessed) return std::nullopt;
  }
  return true;
}

void add_prime(std::map<Integer, unsigned>& acc, const Integer& p, unsigned e) {
  acc[p] += e;
}

}  // namespace

bool WorkMeter::charge(std::uint64_t units) {
  if (exhausted_.load()) return false;
  const std::uint64_t before = spent_.fetch_add(units);
  if (before + units > limit_) {
    exhausted_.store(true);
    return false;
  }
  return true;
}

Integer Factorization::value() const {
  Integer v = sign;
  for (const auto& pp : prime_powers) {
    Integer pe;
    mpz_pow_ui(pe.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
    v *= pe;
  }
  return v * residual;
}

std::optional<bool> is_prime_certified(const Integer& n, WorkMeter& meter, std::uint64_t seed) {
  if (n < 2) return false;
  for (unsigned p : small_primes()) {
    if (n == p) return true;
    if (Integer(static_cast<unsigned long>(p) * p) > n) return true;
    if (!meter.charge()) return std::nullopt;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    // Only a short sieve here; the exact tests below do the rest.
    if (p > 200) break;
  }
  if (n < mr_deterministic_bound()) return miller_rabin_exact(n, meter);

  // Weed out composites cheaply before the certificate.
  auto quick = miller_rabin_exact(n, meter);
  if (!quick || !*quick) return quick;
  return pocklington(n, meter, seed);
}

Factorization factorize(const Integer& x, WorkMeter& meter, std::uint64_t seed) {
  if (x == 0) throw std::invalid_argument("cannot factor zero");
  Factorization out;
  out.sign = sgn(x);
  Integer n = abs(x);
  std::map<Integer, unsigned> acc;
  std::vector<std::pair<Integer, unsigned>> unresolved;

  bool trial_done = false;
  for (unsigned p : small_primes()) {
    if (Integer(static_cast<unsigned long>(p) * p) > n) {
      trial_done = true;
      break;
    }
    if (!meter.charge()) break;
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++e;
    }
    if (e) add_prime(acc, Integer(p), e);
  }
  if (!trial_done && n > 1 && n <= Integer(kTrialLimit) * kTrialLimit &&
      !meter.exhausted()) {
    trial_done = true;  // every prime below the limit was tried
  }

  std::vector<std::pair<Integer, unsigned>> stack;
  if (n > 1) {
    if (trial_done) {
      add_prime(acc, n, 1);
    } else {
      stack.emplace_back(n, 1);
    }
  }

  std::mt19937_64 rng(seed);
  while (!stack.empty()) {
    auto [m, mult] = stack.back();
    stack.pop_back();
    if (meter.exhausted()) {
      unresolved.emplace_back(m, mult);
      continue;
    }
    if (mpz_perfect_power_p(m.get_mpz_t())) {
      // Split off the largest exact root.
      const unsigned long bits = mpz_sizeinbase(m.get_mpz_t(), 2);
      bool split = false;
      for (unsigned long k = bits; k >= 2 && !split; --k) {
        Integer root;
        if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), k) != 0 && root > 1) {
          stack.emplace_back(root, mult * static_cast<unsigned>(k));
          split = true;
        }
      }
      if (split) continue;
    }
    const auto prime = is_prime_certified(m, meter, seed);
    if (!prime) {
      unresolved.emplace_back(m, mult);
      continue;
    }
    if (*prime) {
      add_prime(acc, m, mult);
      continue;
    }
    const auto d = rho_factor(m, meter, rng);
    if (!d) {
      unresolved.emplace_back(m, mult);
      continue;
    }
    stack.emplace_back(*d, mult);
    stack.emplace_back(m / *d, mult);
  }

  for (auto& [p, e] : acc) out.prime_powers.push_back({p, e});
  if (!unresolved.empty()) {
    out.complete = false;
    for (const auto& [u, k] : unresolved) {
      Integer uk;
      mpz_pow_ui(uk.get_mpz_t(), u.get_mpz_t(), k);
      out.residual *= uk;
    }
  }
  return out;
}

Factorization factorize(const Integer& x, const Budget& budget) {
  WorkMeter meter(budget.work);
  return factorize(x, meter, budget.seed);
}

Factorization multiply(const Factorization& f, const Factorization& g) {
  std::map<Integer, unsigned> acc;
  for (const auto& pp : f.prime_powers) acc[pp.prime] += pp.exponent;
  for (const auto& pp : g.prime_powers) acc[pp.prime] += pp.exponent;
  Factorization out;
  out.sign = f.sign * g.sign;
  for (auto& [p, e] : acc) out.prime_powers.push_back({p, e});
  out.complete = f.complete && g.complete;
  out.residual = f.residual * g.residual;
  return out;
}

Factorization power(const Factorization& f, unsigned k) {
  Factorization out = f;
  for (auto& pp : out.prime_powers) pp.exponent *= k;
  if (k % 2 == 0) out.sign = 1;
  mpz_pow_ui(out.residual.get_mpz_t(), f.residual.get_mpz_t(), k);
  if (k == 0) out.prime_powers.clear();
  return out;
}

std::optional<Integer> divisor_count(const Factorization& f) {
  if (!f.complete) return std::nullopt;
  Integer count = 1;
  for (const auto& pp : f.prime_powers) count *= pp.exponent + 1;
  return count;
}

std::vector<Integer> divisors(const Factorization& f, std::size_t cap) {
  const auto count = divisor_count(f);
  if (!count) throw std::invalid_argument("divisors of an incomplete factorization");
  if (*count > Integer(static_cast<unsigned long>(cap)))
    throw std::length_error("divisor count " + count->get_str() + " exceeds cap");

  std::vector<Integer> out{Integer(1)};
  out.reserve(count->get_ui());
  for (const auto& pp : f.prime_powers) {
    const std::size_t base = out.size();
    Integer pk = 1;
    for (unsigned e = 1; e <= pp.exponent; ++e) {
      pk *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) throw std::invalid_argument("square root of a negative rational");
  Rational c = q;
  c.canonicalize();
  if (!mpz_perfect_square_p(c.get_num_mpz_t()) || !mpz_perfect_square_p(c.get_den_mpz_t()))
    return std::nullopt;
  Integer num, den;
  mpz_sqrt(num.get_mpz_t(), c.get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), c.get_den_mpz_t());
  return Rational(num, den);
}

std::optional<SquarefreeSplit> squarefree_part(const Integer& x, WorkMeter& meter,
                                               std::uint64_t seed) {
  if (x <= 0) throw std::invalid_argument("squarefree part needs a positive integer");
  const Factorization f = factorize(x, meter, seed);
  if (!f.complete) return std::nullopt;
  SquarefreeSplit out{1, 1};
  for (const auto& pp : f.prime_powers) {
    if (pp.exponent % 2) out.d *= pp.prime;
    Integer half;
    mpz_pow_ui(half.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent / 2);
    out.q *= half;
  }
  return out;
}

std::optional<SquarefreeSplit> squarefree_part(const Integer& x, const Budget& budget) {
  WorkMeter meter(budget.work);
  return squarefree_part(x, meter, budget.seed);
}

}  // namespace msect
