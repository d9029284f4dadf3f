#include "orbitcalc/polysym.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace orbitcalc::poly {

namespace {

// --- univariate rational polynomials (dense, ascending) -------------------

using UPoly = std::vector<Rational>;

void trim(UPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

long deg(const UPoly& f) { return static_cast<long>(f.size()) - 1; }

UPoly derivative(const UPoly& f) {
  UPoly d;
  for (size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<long>(i));
  trim(d);
  return d;
}

// remainder of a by b (b nonzero)
UPoly rem(UPoly a, const UPoly& b) {
  trim(a);
  while (deg(a) >= deg(b) && !a.empty()) {
    Rational c = a.back() / b.back();
    long shift = deg(a) - deg(b);
    for (size_t i = 0; i < b.size(); ++i)
      a[i + shift] -= c * b[i];
    trim(a);
  }
  return a;
}

UPoly gcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

int sgn(const Rational& r) {
  if (r > 0) return 1;
  if (r < 0) return -1;
  return 0;
}

// number of distinct real roots of f via a Sturm chain,
// counted as V(-inf) - V(+inf)
long sturm_real_roots(const UPoly& f0) {
  UPoly f = f0;
  trim(f);
  if (deg(f) <= 0) return 0;
  // square-free part, so roots count once
  UPoly g = gcd(f, derivative(f));
  if (deg(g) >= 1) {
    // divide f by g
    UPoly q;
    UPoly a = f;
    q.assign(deg(f) - deg(g) + 1, Rational(0));
    while (deg(a) >= deg(g) && !a.empty()) {
      Rational c = a.back() / g.back();
      long shift = deg(a) - deg(g);
      q[shift] = c;
      for (size_t i = 0; i < g.size(); ++i) a[i + shift] -= c * g[i];
      trim(a);
    }
    f = q;
    trim(f);
  }
  if (deg(f) <= 0) return 0;
  std::vector<UPoly> chain{f, derivative(f)};
  while (deg(chain.back()) > 0) {
    UPoly r = rem(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  auto variations = [&](bool at_plus_inf) {
    int prev = 0;
    long v = 0;
    for (auto& p : chain) {
      if (p.empty()) continue;
      int s = sgn(p.back());
      if (!at_plus_inf && deg(p) % 2 == 1) s = -s;  // sign at -infinity
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++v;
      prev = s;
    }
    return v;
  };
  return variations(false) - variations(true);
}

// --- Gaussian rationals ----------------------------------------------------

struct GaussQ {
  Rational re, im;

  bool zero() const { return re == 0 && im == 0; }
  GaussQ conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }

  friend GaussQ operator+(const GaussQ& a, const GaussQ& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussQ operator*(const GaussQ& a, const GaussQ& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussQ operator*(const Rational& c, const GaussQ& a) {
    return {c * a.re, c * a.im};
  }
  friend bool operator==(const GaussQ& a, const GaussQ& b) {
    return a.re == b.re && a.im == b.im;
  }
  GaussQ inverse() const {
    Rational n = norm2();
    return {re / n, -im / n};
  }
};

GaussQ gq_pow(GaussQ v, long e) {
  if (e < 0) return gq_pow(v.inverse(), -e);
  GaussQ acc{1, 0};
  while (e > 0) {
    if (e & 1) acc = acc * v;
    e >>= 1;
    if (e) v = v * v;
  }
  return acc;
}

// coefficients c_j of g = sum_j c_j z^j zbar^{d-j} via x=(z+zbar)/2,
// y=(z-zbar)/(2i)
std::vector<GaussQ> z_basis(const HomogPoly& g) {
  long d = g.d;
  std::vector<GaussQ> c(d + 1, GaussQ{0, 0});
  // binomials up to d
  std::vector<std::vector<Rational>> C(d + 1, std::vector<Rational>(d + 1, 0));
  for (long i = 0; i <= d; ++i) {
    C[i][0] = 1;
    for (long j = 1; j <= i; ++j)
      C[i][j] = C[i - 1][j - 1] + (j <= i - 1 ? C[i - 1][j] : Rational(0));
  }
  Rational half(1, 2);
  for (long k = 0; k <= d; ++k) {
    if (g.a[k] == 0) continue;
    long b = d - k;  // y-power
    // (1/2)^d * (-i)^b * sum_{s<=k, t<=b} C(k,s) C(b,t) (-1)^{b-t} z^{s+t} zbar^{d-s-t}
    Rational scale = g.a[k];
    for (long i = 0; i < d; ++i) scale *= half;
    GaussQ ib{1, 0};  // (-i)^b
    for (long i = 0; i < b; ++i) ib = ib * GaussQ{0, -1};
    for (long s = 0; s <= k; ++s)
      for (long t = 0; t <= b; ++t) {
        Rational coeff = scale * C[k][s] * C[b][t];
        if ((b - t) % 2) coeff = -coeff;
        c[s + t] = c[s + t] + coeff * ib;
      }
  }
  return c;
}

}  // namespace

bool HomogPoly::zero() const {
  return std::all_of(a.begin(), a.end(), [](const Rational& c) { return c == 0; });
}

HomogPoly poly_from_coeffs(long d, std::vector<Rational> coeffs) {
  if (d < 1) throw PolyParseError("degree must be >= 1");
  if (static_cast<long>(coeffs.size()) != d + 1)
    throw PolyParseError("need d+1 coefficients");
  HomogPoly g{d, std::move(coeffs)};
  if (g.zero()) throw PolyParseError("polynomial is identically zero");
  return g;
}

namespace {

// one homogeneous polynomial (or a single rational constant when d == 0)
struct RawPoly {
  long d = 0;
  std::vector<Rational> a{Rational(1)};
};

RawPoly mul_raw(const RawPoly& f, const RawPoly& g) {
  RawPoly r;
  r.d = f.d + g.d;
  r.a.assign(r.d + 1, Rational(0));
  // x^i y^{f.d-i} * x^j y^{g.d-j} = x^{i+j} y^{r.d-(i+j)}
  for (long i = 0; i <= f.d; ++i)
    for (long j = 0; j <= g.d; ++j) r.a[i + j] += f.a[i] * g.a[j];
  return r;
}

struct PolyParser {
  const std::string& s;
  size_t p = 0;
  explicit PolyParser(const std::string& t) : s(t) {}

  void skip() {
    while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
  }
  bool peek(char c) {
    skip();
    return p < s.size() && s[p] == c;
  }
  bool eat(char c) {
    if (peek(c)) {
      ++p;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& why) {
    throw PolyParseError("polynomial parse error at " + std::to_string(p) + ": " + why);
  }

  BigInt integer() {
    skip();
    size_t q = p;
    while (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) ++q;
    if (q == p) fail("expected integer");
    BigInt v(s.substr(p, q - p));
    p = q;
    return v;
  }

  Rational rational() {
    BigInt num = integer();
    if (eat('/')) return Rational(num, integer());
    return Rational(num);
  }

  long exponent() {
    if (eat('^')) {
      BigInt e = integer();
      return static_cast<long>(e);
    }
    return 1;
  }

  // product := factor+   factor := '(' sum ')' [^e]  (juxtaposition = multiply)
  // sum := term (('+'|'-') term)*
  // term := [coef] (x[^e]|y[^e]|'('sum')'[^e])*
  RawPoly sum() {
    RawPoly acc = term(false);
    while (true) {
      skip();
      if (eat('+')) {
        RawPoly t = term(false);
        acc = add_raw(acc, t, false);
      } else if (eat('-')) {
        RawPoly t = term(false);
        acc = add_raw(acc, t, true);
      } else {
        break;
      }
    }
    return acc;
  }

  RawPoly add_raw(const RawPoly& f, const RawPoly& g, bool negate) {
    if (f.d != g.d)
      fail("polynomial is not homogeneous (degrees " + std::to_string(f.d) +
           " vs " + std::to_string(g.d) + ")");
    RawPoly r = f;
    for (long i = 0; i <= f.d; ++i) r.a[i] += negate ? -g.a[i] : g.a[i];
    return r;
  }

  RawPoly term(bool allow_empty) {
    skip();
    RawPoly acc;  // constant 1
    bool any = false;
    bool neg = false;
    while (eat('-')) neg = !neg;
    skip();
    if (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) {
      Rational c = rational();
      acc.a[0] *= c;
      any = true;
    }
    while (true) {
      skip();
      if (p >= s.size()) break;
      char ch = s[p];
      if (ch == 'x' || ch == 'y') {
        ++p;
        long e = exponent();
        RawPoly v;
        v.d = 1;
        v.a = ch == 'x' ? std::vector<Rational>{Rational(0), Rational(1)}
                        : std::vector<Rational>{Rational(1), Rational(0)};
        for (long i = 0; i < e; ++i) acc = mul_raw(acc, v);
        any = true;
      } else if (ch == '(') {
        ++p;
        RawPoly inner = sum();
        if (!eat(')')) fail("expected ')'");
        long e = exponent();
        for (long i = 0; i < e; ++i) acc = mul_raw(acc, inner);
        any = true;
      } else if (ch == '*') {
        ++p;
      } else {
        break;
      }
    }
    if (!any && !allow_empty) fail("expected term");
    if (neg)
      for (auto& c : acc.a) c = -c;
    return acc;
  }
};

}  // namespace

HomogPoly parse_poly(const std::string& text) {
  PolyParser pr(text);
  RawPoly r = pr.sum();
  pr.skip();
  if (pr.p != text.size()) pr.fail("trailing input");
  if (r.d < 1) throw PolyParseError("degree must be >= 1");
  HomogPoly g{r.d, r.a};
  if (g.zero()) throw PolyParseError("polynomial is identically zero");
  return g;
}

std::string to_string(const HomogPoly& g) {
  std::ostringstream o;
  bool first = true;
  for (long k = g.d; k >= 0; --k) {
    if (g.a[k] == 0) continue;
    Rational c = g.a[k];
    if (!first) o << (c > 0 ? " + " : " - ");
    else if (c < 0) o << "-";
    first = false;
    Rational ac = c < 0 ? -c : c;
    long xe = k, ye = g.d - k;
    if (ac != 1 || (xe == 0 && ye == 0)) o << ac;
    if (xe) o << "x" << (xe > 1 ? "^" + std::to_string(xe) : "");
    if (ye) o << "y" << (ye > 1 ? "^" + std::to_string(ye) : "");
  }
  if (first) o << "0";
  return o.str();
}

FactorCounts factor_counts(const HomogPoly& g) {
  if (g.zero()) throw SquareFreeError("zero polynomial");
  long d = g.d;
  // multiplicities of x and y
  long kmin = 0, kmax = d;
  while (g.a[kmin] == 0) ++kmin;
  while (g.a[kmax] == 0) --kmax;
  long x_mult = kmin;          // g(0,y) = a_0 y^d; x | g iff a_0 = 0
  long y_mult = d - kmax;
  if (x_mult > 1 || y_mult > 1)
    throw SquareFreeError("repeated linear factor (a line of critical points)");
  // strip x^x_mult y^y_mult, dehomogenize h(1,t)
  UPoly H;
  for (long k = kmin; k <= kmax; ++k) H.push_back(g.a[k]);
  std::reverse(H.begin(), H.end());  // coeff of t^j = a_{kmax-j}
  trim(H);
  if (deg(H) >= 1) {
    UPoly common = gcd(H, derivative(H));
    if (deg(common) >= 1) throw SquareFreeError("repeated factor detected");
  }
  long real_roots = deg(H) >= 1 ? sturm_real_roots(H) : 0;
  FactorCounts fc;
  fc.p = x_mult + y_mult + real_roots;
  if ((d - fc.p) % 2 != 0)
    throw SquareFreeError("inconsistent factor parity");  // cannot happen
  fc.q = (d - fc.p) / 2;
  return fc;
}

Classification classify(const HomogPoly& g) {
  Classification c{};
  if (g.d == 1) {
    c.type = CritType::NoCriticalPoint;
    c.counts = {1, 0};
    c.rays = 2;
    return c;
  }
  c.counts = factor_counts(g);
  long p = c.counts.p, q = c.counts.q;
  c.rays = 2 * p;
  if (p == 0 && q == 1) c.type = CritType::NonDegExtreme;
  else if (p == 0) c.type = CritType::DegExtreme;
  else if (p == 1) c.type = CritType::QuasiSaddle;
  else if (p == 2 && q == 0) c.type = CritType::NonDegSaddle;
  else c.type = CritType::Saddle;
  return c;
}

LinStab symmetry_index(const HomogPoly& g) {
  (void)factor_counts(g);  // validates square-freeness
  auto c = z_basis(g);
  long d = g.d;
  long m = 0;
  for (long j = 0; j <= d; ++j)
    if (!c[j].zero()) m = gcd_ll(m, 2 * j - d);
  LinStab out;
  if (m == 0) {
    // only the middle monomial (z zbar)^{d/2}: full SO(2) invariance
    out.so2 = true;
    out.m = 0;
    out.dihedral = true;  // LStab = O(2)
    out.framing_orbit = 0;
    return out;
  }
  out.m = m;
  // reflection z -> e^{i psi} zbar exists iff there is a unit v with
  // v^{n_j} = conj(c_j)/c_j for all j with w_j != 0, where n_j = w_j / m.
  std::vector<long> ns;
  std::vector<GaussQ> qs;
  for (long j = 0; j <= d; ++j) {
    long w = 2 * j - d;
    if (w == 0 || c[j].zero()) continue;
    ns.push_back(w / m);
    qs.push_back(c[j].conj() * c[j].inverse());
  }
  if (ns.empty()) {
    out.dihedral = true;
  } else {
    // Bezout combination: find lambda with sum lambda_i n_i = 1
    // (gcd of the n_i is 1 by construction of m)
    std::vector<long> lambda(ns.size(), 0);
    long acc = 0;
    long acc_i = -1;
    for (size_t i = 0; i < ns.size(); ++i) {
      if (acc == 0) {
        acc = ns[i];
        lambda.assign(ns.size(), 0);
        lambda[i] = 1;
        acc_i = static_cast<long>(i);
        continue;
      }
      // extended gcd of acc and ns[i]
      long a = acc, b = ns[i];
      long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
      while (b) {
        long t = a / b;
        long r = a - t * b;
        long xr = x0 - t * x1, yr = y0 - t * y1;
        a = b;
        b = r;
        x0 = x1;
        y0 = y1;
        x1 = xr;
        y1 = yr;
      }
      // a = x0*acc + y0*ns[i]
      for (auto& l : lambda) l *= x0;
      lambda[i] += y0;
      acc = a;
      (void)acc_i;
    }
    // acc might be -1; flip
    if (acc < 0) {
      for (auto& l : lambda) l = -l;
      acc = -acc;
    }
    if (acc != 1) {
      out.dihedral = false;  // cannot happen: gcd of n_j is 1
    } else {
      GaussQ v{1, 0};
      for (size_t i = 0; i < ns.size(); ++i) v = v * gq_pow(qs[i], lambda[i]);
      bool ok = true;
      for (size_t i = 0; i < ns.size() && ok; ++i)
        ok = gq_pow(v, ns[i]) == qs[i];
      out.dihedral = ok;
    }
  }
  out.framing_orbit = out.dihedral ? 2 * out.m : out.m;
  return out;
}

double eval(const HomogPoly& g, double x, double y) {
  double v = 0;
  for (long k = 0; k <= g.d; ++k) {
    if (g.a[k] == 0) continue;
    double c = numerator(g.a[k]).convert_to<double>() /
               denominator(g.a[k]).convert_to<double>();
    v += c * std::pow(x, static_cast<double>(k)) *
         std::pow(y, static_cast<double>(g.d - k));
  }
  return v;
}

double check_rotation_numeric(const HomogPoly& g, long m, int samples,
                              std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("check_rotation_numeric: m >= 1");
  double theta = 2.0 * M_PI / static_cast<double>(m);
  double ct = std::cos(theta), st = std::sin(theta);
  double worst = 0;
  std::uint64_t state = seed;
  for (int i = 0; i < samples; ++i) {
    state = splitmix64(state);
    double x = (static_cast<double>(state % 20001) / 10000.0) - 1.0;
    state = splitmix64(state);
    double y = (static_cast<double>(state % 20001) / 10000.0) - 1.0;
    double rx = ct * x - st * y, ry = st * x + ct * y;
    worst = std::max(worst, std::abs(eval(g, rx, ry) - eval(g, x, y)));
  }
  return worst;
}

std::string crit_type_name(CritType t) {
  switch (t) {
    case CritType::NoCriticalPoint: return "no_critical_point";
    case CritType::NonDegExtreme: return "nondeg_extreme";
    case CritType::DegExtreme: return "deg_extreme";
    case CritType::QuasiSaddle: return "quasi_saddle";
    case CritType::NonDegSaddle: return "nondeg_saddle";
    case CritType::Saddle: return "saddle";
  }
  return "?";
}

}  // namespace orbitcalc::poly
