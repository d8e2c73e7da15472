#pragma once

#include "msect/exact_core.hpp"

#include <atomic>
#include <cstdint>
#include <optional>
#include <vector>

namespace msect {

/// Work limits for factoring and divisor enumeration.
struct Budget {
  // One unit is one trial division, one rho iteration or one modular
  // exponentiation in a primality test.
  std::uint64_t work = 20'000'000;
  std::size_t max_divisors = std::size_t{1} << 20;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

/// Tracks work spent against a Budget. Charging is thread-safe.
class WorkMeter {
 public:
  explicit WorkMeter(std::uint64_t limit) : limit_(limit) {}

  // Returns false (and records exhaustion) when the charge does not fit.
  bool charge(std::uint64_t units = 1);
  bool exhausted() const { return exhausted_.load(); }
  std::uint64_t spent() const { return spent_.load(); }

 private:
  std::uint64_t limit_;
  std::atomic<std::uint64_t> spent_{0};
  std::atomic<bool> exhausted_{false};
};

struct PrimePower {
  Integer prime;
  unsigned exponent = 0;
};

struct Factorization {
  int sign = 1;
  std::vector<PrimePower> prime_powers;  // strictly increasing primes
  bool complete = true;
  Integer residual = 1;  // unfactored cofactor when !complete

  Integer value() const;  // sign * prod p^e * residual
};

/// Factors x != 0. Stops with complete = false once the meter runs dry.
Factorization factorize(const Integer& x, WorkMeter& meter, std::uint64_t seed);
Factorization factorize(const Integer& x, const Budget& budget = {});

/// Primality with a proof: deterministic Miller-Rabin below 3.3e24,
/// Pocklington-Lehmer above. Empty when the meter ran out first.
std::optional<bool> is_prime_certified(const Integer& n, WorkMeter& meter, std::uint64_t seed);

/// Product of two factorizations (merges exponents).
Factorization multiply(const Factorization& f, const Factorization& g);
/// f^k.
Factorization power(const Factorization& f, unsigned k);

std::optional<Integer> divisor_count(const Factorization& f);

/// All positive divisors in increasing order. Throws std::invalid_argument on
/// an incomplete factorization and std::length_error above the cap.
std::vector<Integer> divisors(const Factorization& f, std::size_t cap = std::size_t{1} << 20);

/// Nonnegative r with r^2 = q, if one exists.
std::optional<Rational> rational_sqrt(const Rational& q);

struct SquarefreeSplit {
  Integer d;  // squarefree
  Integer q;  // x = d * q^2
};

/// Empty when factoring exceeded the budget.
std::optional<SquarefreeSplit> squarefree_part(const Integer& x, WorkMeter& meter,
                                               std::uint64_t seed);
std::optional<SquarefreeSplit> squarefree_part(const Integer& x, const Budget& budget = {});

}  // namespace msect
