#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace orbitcalc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Group order: finite value or infinite.
struct Order {
  bool finite = true;
  BigInt value = 1;

  static Order infinite() { return Order{false, 0}; }
  static Order of(BigInt v) { return Order{true, std::move(v)}; }

  friend Order operator*(const Order& a, const Order& b) {
    if (!a.finite || !b.finite) return infinite();
    return of(a.value * b.value);
  }
  friend bool operator==(const Order& a, const Order& b) {
    if (a.finite != b.finite) return false;
    return !a.finite || a.value == b.value;
  }
};

inline long long gcd_ll(long long a, long long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Deterministic counter-based generator: the same index always yields the
// same value regardless of evaluation order, so parallel scans reproduce
// serial results exactly.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace orbitcalc
