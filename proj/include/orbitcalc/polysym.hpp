#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbitcalc/numbers.hpp"

namespace orbitcalc::poly {

struct SquareFreeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PolyParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Homogeneous real polynomial in x, y with rational coefficients:
// g = sum_k a[k] x^k y^{d-k}.
struct HomogPoly {
  long d = 0;
  std::vector<Rational> a;  // size d+1

  bool zero() const;
};

HomogPoly poly_from_coeffs(long d, std::vector<Rational> coeffs);
// Accepts sums of monomials and products of parenthesized factors, e.g.
// "x^4+y^4", "(x^2+y^2)(3x^2+2y^2)(x^2+xy+y^2)", "2x^3-1/2xy^2".
HomogPoly parse_poly(const std::string& text);
std::string to_string(const HomogPoly& g);

enum class CritType {
  NoCriticalPoint,  // d = 1
  NonDegExtreme,    // p=0, q=1
  DegExtreme,       // p=0, q>=2
  QuasiSaddle,      // p=1
  NonDegSaddle,     // p=2, q=0
  Saddle            // p>=2, d>=3
};
std::string crit_type_name(CritType t);

struct FactorCounts {
  long p = 0;  // distinct real linear factors
  long q = 0;  // irreducible quadratic factors
};

// Throws SquareFreeError when g has a multiple factor.
FactorCounts factor_counts(const HomogPoly& g);

struct Classification {
  CritType type;
  FactorCounts counts;
  long rays;  // local level structure: 2p rays through the critical point
};
Classification classify(const HomogPoly& g);

struct LinStab {
  bool so2 = false;   // continuous rotational stabilizer SO(2)
  long m = 1;         // order of the cyclic rotation group when finite
  bool dihedral = false;
  long framing_orbit = 0;  // generic tangent-vector orbit size: 2m or m
};

LinStab symmetry_index(const HomogPoly& g);

// numeric oracle: max |g(R_{2pi/m} v) - g(v)| over `samples` pseudo-random
// points with coordinates in [-1, 1]
double check_rotation_numeric(const HomogPoly& g, long m, int samples,
                              std::uint64_t seed = 12345);

double eval(const HomogPoly& g, double x, double y);

}  // namespace orbitcalc::poly
