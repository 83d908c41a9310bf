#ifndef DT4_ALGEBRA_MODULAR_HPP
#define DT4_ALGEBRA_MODULAR_HPP

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <random>

#include "dt4/errors.hpp"

namespace dt4 {

namespace mod {

inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;
  return s >= p ? s - p : s;
}

inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + (p - b);
}

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e != 0) {
    if (e & 1U) r = mul(r, a, p);
    a = mul(a, a, p);
    e >>= 1U;
  }
  return r;
}

/// Inverse of a nonzero residue (p prime).
inline std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw DegeneratePointError("inverse of zero residue");
  return pow(a, p - 2, p);
}

inline std::uint64_t from_signed(long long v, std::uint64_t p) {
  if (v >= 0) return static_cast<std::uint64_t>(v) % p;
  std::uint64_t m = static_cast<std::uint64_t>(-(v + 1)) % p;  // avoids overflow at LLONG_MIN
  return sub(p - 1, m, p);
}

inline std::uint64_t from_mpz(const mpz_class& z, std::uint64_t p) {
  static_assert(sizeof(unsigned long) == 8, "64-bit unsigned long required");
  return mpz_fdiv_ui(z.get_mpz_t(), p);
}

/// Residue of a rational; a denominator divisible by p is degenerate.
inline std::uint64_t from_mpq(const mpq_class& q, std::uint64_t p) {
  std::uint64_t n = from_mpz(q.get_num(), p);
  std::uint64_t d = from_mpz(q.get_den(), p);
  if (d == 0) throw DegeneratePointError("rational denominator vanishes modulo p");
  return d == 1 ? n : mul(n, inv(d, p), p);
}

/// Deterministic Miller-Rabin for 64-bit integers.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace mod

/// Primes 2^62 - c for the listed offsets; index 0 is the default modulus.
inline constexpr std::array<std::uint64_t, 4> kPrimeFamily = {
    (std::uint64_t{1} << 62) - 57, (std::uint64_t{1} << 62) - 87,
    (std::uint64_t{1} << 62) - 117, (std::uint64_t{1} << 62) - 143};

inline constexpr std::uint64_t kDefaultPrime = kPrimeFamily[0];

/// Degenerate points are redrawn at most this many times.
inline constexpr int kResampleLimit = 16;

/// A point (s1, s2, s3, m) of nonzero residues modulo a prime.
struct PrimeSample {
  std::uint64_t prime = kDefaultPrime;
  std::array<std::uint64_t, 4> point{1, 1, 1, 1};
  std::uint64_t seed = 0;

  /// Draws the point for `trial` deterministically from (seed, trial, attempt).
  static PrimeSample draw(std::uint64_t prime, std::uint64_t seed, std::uint64_t trial,
                          std::uint64_t attempt = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32U),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(attempt)};
    std::mt19937_64 gen(seq);
    std::uniform_int_distribution<std::uint64_t> dist(1, prime - 1);
    PrimeSample s;
    s.prime = prime;
    s.seed = seed;
    for (auto& v : s.point) v = dist(gen);
    return s;
  }
};

}  // namespace dt4

#endif  // DT4_ALGEBRA_MODULAR_HPP
