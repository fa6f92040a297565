#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

namespace qcdesign {

inline constexpr const char* version_string = "0.1.0";

/// Arbitrary-precision signed integer used for every quantity that can
/// outgrow 64 bits (wordlength numerators, moments, Krawtchouk values).
using BigInt = boost::multiprecision::cpp_int;

/// Raised when two independently computed values that must agree do not.
/// CLI maps it to exit code 3; validation errors use std exceptions.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

/// Reduced fraction with small components (aliasing indices, resolution).
struct Frac {
  long long num = 0;
  long long den = 1;

  Frac() = default;
  Frac(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Frac: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }
  friend bool operator==(const Frac&, const Frac&) = default;
  friend std::strong_ordering operator<=>(const Frac& a, const Frac& b) {
    // cross-multiplication; components stay far below overflow in practice
    return a.num * b.den <=> b.num * a.den;
  }
};

/// Exact binomial coefficient; zero outside the triangle.
inline BigInt binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;  // exact at every step
  }
  return r;
}

inline BigInt pow_big(BigInt base, int exp) {
  BigInt r = 1;
  while (exp > 0) {
    if (exp & 1) r *= base;
    base *= base;
    exp >>= 1;
  }
  return r;
}

/// Reduced numerator/denominator pair for a wordlength term num/(runs^2).
inline std::pair<BigInt, BigInt> reduce_fraction(BigInt num, BigInt den) {
  if (den == 0) throw std::invalid_argument("reduce_fraction: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  BigInt g = boost::multiprecision::gcd(num < 0 ? BigInt(-num) : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {num, den};
}

/// Worker count for parallel kernels: QCDESIGN_THREADS caps/overrides the
/// hardware count; never below one.
inline int worker_count() {
  if (const char* env = std::getenv("QCDESIGN_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace qcdesign
