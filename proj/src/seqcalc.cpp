#include "orbitcalc/seqcalc.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <sstream>

namespace orbitcalc::sq {

namespace {

SPtr make(gx::GPtr k, gx::GPtr mid, gx::GPtr q, BK b, long m = 0, long n = 0,
          std::vector<SPtr> parts = {}) {
  auto s = std::make_shared<SeqExpr>();
  s->kernel = std::move(k);
  s->middle = std::move(mid);
  s->quotient = std::move(q);
  s->build = b;
  s->m = m;
  s->n = n;
  s->parts = std::move(parts);
  return s;
}

gx::GPtr z_power(long r) {
  std::vector<gx::GPtr> zs(static_cast<size_t>(r), gx::z());
  return gx::prod(std::move(zs));
}

BigInt ipow(const BigInt& b, long e) {
  BigInt v = 1;
  for (long i = 0; i < e; ++i) v *= b;
  return v;
}

}  // namespace

SPtr triv() {
  static SPtr t = make(gx::unit(), gx::unit(), gx::unit(), BK::Triv);
  return t;
}

SPtr zseq(long m) {
  if (m < 0) throw BuildError("zseq: m >= 0 required");
  if (m == 0) return triv();
  if (m == 1) return make(gx::z(), gx::z(), gx::unit(), BK::Zseq, 1);
  return make(gx::z(), gx::z(), gx::zmod(m), BK::Zseq, m);
}

SPtr zseq2(long m, long n) {
  if (m < 1 || n < 1) throw BuildError("zseq2: m,n >= 1 required");
  return make(gx::prod({gx::z(), gx::z()}), gx::prod({gx::z(), gx::z()}),
              gx::prod({gx::zmod(m), gx::zmod(n)}), BK::Zseq2, m, n);
}

SPtr special(SpecialKind kind, long m, long n) {
  switch (kind) {
    case SpecialKind::Triv: return triv();
    case SpecialKind::Z1: return zseq(1);
    case SpecialKind::Zm: return zseq(m);
    case SpecialKind::Zmn: return zseq2(m, n);
  }
  throw BuildError("special: bad kind");
}

SPtr product(std::vector<SPtr> parts) {
  std::vector<SPtr> flat;
  for (auto& p : parts) {
    if (!p) throw BuildError("product: null part");
    if (p->build == BK::Triv) continue;
    if (p->build == BK::Prod)
      flat.insert(flat.end(), p->parts.begin(), p->parts.end());
    else
      flat.push_back(p);
  }
  if (flat.empty()) return triv();
  if (flat.size() == 1) return flat[0];
  std::vector<gx::GPtr> ks, ms, qs;
  for (auto& p : flat) {
    ks.push_back(p->kernel);
    ms.push_back(p->middle);
    qs.push_back(p->quotient);
  }
  return make(gx::prod(ks), gx::prod(ms), gx::prod(qs), BK::Prod, 0, 0,
              std::move(flat));
}

SPtr product(const SPtr& a, const SPtr& b) { return product(std::vector<SPtr>{a, b}); }

SPtr wr(const SPtr& s, long m) {
  if (m < 1) throw BuildError("wr: m >= 1 required");
  std::vector<gx::GPtr> kf(static_cast<size_t>(m), s->kernel);
  kf.push_back(gx::z());
  return make(gx::prod(std::move(kf)), gx::wr_z(s->middle, m),
              gx::wr_zmod(s->quotient, m), BK::Wr, m, 0, {s});
}

SPtr wr2(const SPtr& s, long m, long n) {
  if (m < 1 || n < 1) throw BuildError("wr2: m,n >= 1 required");
  std::vector<gx::GPtr> kf(static_cast<size_t>(m * n), s->kernel);
  kf.push_back(gx::z());
  kf.push_back(gx::z());
  return make(gx::prod(std::move(kf)), gx::wr_z2(s->middle, m, n),
              gx::wr_zmod2(s->quotient, m, n), BK::Wr2, m, n, {s});
}

SPtr garside_quotient(const SPtr& w) {
  if (!w) throw BuildError("garside_quotient: null");
  if (w->build == BK::Wr) {
    const SPtr& inner = w->parts[0];
    std::vector<gx::GPtr> kf(static_cast<size_t>(w->m), inner->kernel);
    return make(gx::prod(std::move(kf)), gx::wr_zmod(inner->middle, w->m),
                w->quotient, BK::GarsideQuot, w->m, 0, {w});
  }
  if (w->build == BK::Wr2) {
    const SPtr& inner = w->parts[0];
    std::vector<gx::GPtr> kf(static_cast<size_t>(w->m * w->n), inner->kernel);
    return make(gx::prod(std::move(kf)),
                gx::wr_zmod2(inner->middle, w->m, w->n), w->quotient,
                BK::GarsideQuot, w->m, w->n, {w});
  }
  throw BuildError("garside_quotient: sequence was not built by wr/wr2");
}

namespace {

// (middle, garside index) per component of a product of Wr/Zseq rows
struct Component {
  gx::GPtr middle;
  long index;
  long kernel_rank;
  gx::GPtr quotient;
};

std::vector<Component> split_components(const SPtr& s) {
  std::vector<SPtr> raw =
      s->build == BK::Prod ? s->parts : std::vector<SPtr>{s};
  std::vector<Component> comps;
  for (auto& p : raw) {
    Component c;
    c.middle = p->middle;
    c.quotient = p->quotient;
    if (!gx::in_family(p->kernel, gx::GroupFamily::ccZ))
      throw BuildError("diagonal Garside quotient needs free abelian kernels");
    c.kernel_rank = gx::beta1(p->kernel);
    switch (p->build) {
      case BK::Zseq: c.index = p->m; break;
      case BK::Wr: c.index = p->m; break;
      default:
        throw BuildError("diagonal Garside quotient: component not Wr/Zseq-built");
    }
    comps.push_back(std::move(c));
  }
  return comps;
}

}  // namespace

SPtr boundary_quotient(const SPtr& s) {
  auto comps = split_components(s);
  long total_rank = 0;
  std::vector<gx::GPtr> middles, quots;
  std::vector<long> indices;
  for (auto& c : comps) {
    total_rank += c.kernel_rank;
    middles.push_back(c.middle);
    indices.push_back(c.index);
    quots.push_back(c.quotient);
  }
  std::vector<SPtr> parts = s->build == BK::Prod ? s->parts : std::vector<SPtr>{s};
  return make(z_power(total_rank - 1),
              gx::central_quot(std::move(middles), std::move(indices)),
              gx::prod(std::move(quots)), BK::DiagGarside, 0, 0, std::move(parts));
}

SPtr diag_garside(std::vector<SPtr> ws) {
  if (ws.empty()) throw BuildError("diag_garside: empty list");
  for (auto& w : ws)
    if (!w || w->build != BK::Wr)
      throw BuildError("diag_garside: every part must be built by wr");
  if (ws.size() == 1) return garside_quotient(ws[0]);
  return boundary_quotient(product(std::move(ws)));
}

SplitRecord split(const SPtr& s, const SPtr& t) {
  return SplitRecord{s, product(s, t), t};
}

NaturalPair natural(const SPtr& u) {
  NaturalPair p;
  p.top = make(u->kernel, u->kernel, gx::unit(), BK::NaturalTop, 0, 0, {u});
  p.bottom = make(gx::unit(), u->quotient, u->quotient, BK::NaturalBottom, 0, 0, {u});
  return p;
}

// --- canonical build form ----------------------------------------------

namespace {

// item: z(1) ("Z1") or wreath ("W<m>(<inner canon>)"); empty list = triv
struct CanonItem {
  bool is_z1 = false;
  long m = 0;
  std::vector<CanonItem> inner;
  std::string sig;
};

std::string item_sig(const CanonItem& it);

std::string list_sig(const std::vector<CanonItem>& items) {
  std::vector<std::string> sigs;
  for (auto& it : items) sigs.push_back(item_sig(it));
  std::sort(sigs.begin(), sigs.end());
  std::string out = "[";
  for (size_t i = 0; i < sigs.size(); ++i) {
    if (i) out += ",";
    out += sigs[i];
  }
  return out + "]";
}

std::string item_sig(const CanonItem& it) {
  if (it.is_z1) return "Z1";
  return "W" + std::to_string(it.m) + list_sig(it.inner);
}

// throws BuildError for builds outside the Prod/Wr/Zseq fragment
std::vector<CanonItem> canon_build(const SPtr& s) {
  switch (s->build) {
    case BK::Triv:
      return {};
    case BK::Zseq: {
      if (s->m == 1) {
        CanonItem z1;
        z1.is_z1 = true;
        return {z1};
      }
      CanonItem w;          // z(m) = wr(triv, m)
      w.m = s->m;
      return {w};
    }
    case BK::Zseq2: {
      auto a = canon_build(zseq(s->m));
      auto b = canon_build(zseq(s->n));
      a.insert(a.end(), b.begin(), b.end());
      return a;
    }
    case BK::Prod: {
      std::vector<CanonItem> out;
      for (auto& p : s->parts) {
        auto c = canon_build(p);
        out.insert(out.end(), c.begin(), c.end());
      }
      return out;
    }
    case BK::Wr: {
      if (s->m == 1) {       // wr(x, 1) = x * z(1)
        auto out = canon_build(s->parts[0]);
        CanonItem z1;
        z1.is_z1 = true;
        out.push_back(z1);
        return out;
      }
      CanonItem w;
      w.m = s->m;
      w.inner = canon_build(s->parts[0]);
      return {w};
    }
    default:
      throw BuildError("build outside the product/wreath fragment");
  }
}

bool canon_in(const std::vector<CanonItem>& items, SeqFamily f) {
  for (auto& it : items) {
    if (it.is_z1) continue;
    if (f == SeqFamily::ZZI) return false;
    if (f == SeqFamily::ssZBtPt && it.m != 2) return false;
    if (!canon_in(it.inner, f)) return false;
  }
  return true;
}

}  // namespace

bool seq_in_family(const SPtr& s, SeqFamily f) {
  if (f == SeqFamily::gssZBP) return is_nearly_crystallographic(s);
  try {
    return canon_in(canon_build(s), f);
  } catch (const BuildError&) {
    return false;
  }
}

bool is_nearly_crystallographic(const SPtr& s) {
  return gx::in_family(s->kernel, gx::GroupFamily::ccZ) &&
         gx::order(s->quotient).finite;
}

bool is_nearly_bieberbach(const SPtr& s) {
  return is_nearly_crystallographic(s) && gx::is_torsion_free(s->middle);
}

std::string build_signature(const SPtr& s) {
  try {
    return list_sig(canon_build(s));
  } catch (const BuildError&) {
    return "raw:" + build_to_string(s);
  }
}

bool build_equal(const SPtr& a, const SPtr& b) {
  return build_signature(a) == build_signature(b);
}

ShadowOrders finite_shadow(const SPtr& s, long N) {
  auto req = [&](long m) {
    if (m == 0 || N % m != 0)
      throw BuildError("finite_shadow: index " + std::to_string(m) +
                       " does not divide N");
  };
  switch (s->build) {
    case BK::Triv:
      return {1, 1, 1};
    case BK::Zseq:
      req(s->m);
      return {BigInt(N / s->m), BigInt(N), BigInt(s->m)};
    case BK::Zseq2:
      req(s->m);
      req(s->n);
      return {BigInt(N / s->m) * (N / s->n), BigInt(N) * N, BigInt(s->m) * s->n};
    case BK::Prod: {
      ShadowOrders o{1, 1, 1};
      for (auto& p : s->parts) {
        auto q = finite_shadow(p, N);
        o.kernel *= q.kernel;
        o.middle *= q.middle;
        o.quotient *= q.quotient;
      }
      return o;
    }
    case BK::Wr: {
      req(s->m);
      auto i = finite_shadow(s->parts[0], N);
      return {ipow(i.kernel, s->m) * (N / s->m), ipow(i.middle, s->m) * N,
              ipow(i.quotient, s->m) * s->m};
    }
    case BK::Wr2: {
      req(s->m);
      req(s->n);
      auto i = finite_shadow(s->parts[0], N);
      long mn = s->m * s->n;
      return {ipow(i.kernel, mn) * (N / s->m) * (N / s->n),
              ipow(i.middle, mn) * N * N, ipow(i.quotient, mn) * s->m * s->n};
    }
    case BK::GarsideQuot: {
      const SPtr& w = s->parts[0];
      auto i = finite_shadow(w->parts[0], N);
      if (w->build == BK::Wr) {
        req(s->m);
        return {ipow(i.kernel, s->m), ipow(i.middle, s->m) * s->m,
                ipow(i.quotient, s->m) * s->m};
      }
      req(s->m);
      req(s->n);
      long mn = s->m * s->n;
      return {ipow(i.kernel, mn), ipow(i.middle, mn) * s->m * s->n,
              ipow(i.quotient, mn) * s->m * s->n};
    }
    case BK::DiagGarside: {
      BigInt k = 1, mid = 1, q = 1;
      long L = 1;
      for (auto& p : s->parts) {
        auto o = finite_shadow(p, N);
        k *= o.kernel;
        mid *= o.middle;
        q *= o.quotient;
        long idx = p->build == BK::Zseq || p->build == BK::Wr ? p->m : 1;
        req(idx);
        L = std::lcm(L, N / idx);
      }
      return {k / L, mid / L, q};
    }
    case BK::NaturalTop: {
      auto o = finite_shadow(s->parts[0], N);
      return {o.kernel, o.kernel, 1};
    }
    case BK::NaturalBottom: {
      auto o = finite_shadow(s->parts[0], N);
      return {1, o.quotient, o.quotient};
    }
  }
  throw BuildError("finite_shadow: bad build");
}

// --- serialization -------------------------------------------------------

std::string build_to_string(const SPtr& s) {
  switch (s->build) {
    case BK::Triv: return "triv";
    case BK::Zseq: return "z(" + std::to_string(s->m) + ")";
    case BK::Zseq2:
      return "z2(" + std::to_string(s->m) + "," + std::to_string(s->n) + ")";
    case BK::Prod: {
      std::string out = "prod(";
      for (size_t i = 0; i < s->parts.size(); ++i) {
        if (i) out += ",";
        out += build_to_string(s->parts[i]);
      }
      return out + ")";
    }
    case BK::Wr:
      return "wr(" + build_to_string(s->parts[0]) + "," + std::to_string(s->m) + ")";
    case BK::Wr2:
      return "wr2(" + build_to_string(s->parts[0]) + "," + std::to_string(s->m) +
             "," + std::to_string(s->n) + ")";
    case BK::GarsideQuot: return "gq(" + build_to_string(s->parts[0]) + ")";
    case BK::DiagGarside: {
      std::string out = "diag(";
      for (size_t i = 0; i < s->parts.size(); ++i) {
        if (i) out += ",";
        out += build_to_string(s->parts[i]);
      }
      return out + ")";
    }
    case BK::NaturalTop: return "ntop(" + build_to_string(s->parts[0]) + ")";
    case BK::NaturalBottom: return "nbot(" + build_to_string(s->parts[0]) + ")";
  }
  return "?";
}

std::string to_string(const SPtr& s) {
  return gx::to_string(s->kernel) + " -> " + gx::to_string(s->middle) + " ->> " +
         gx::to_string(s->quotient) + " [build: " + build_to_string(s) + "]";
}

std::string to_json(const SPtr& s) {
  std::function<std::string(const SPtr&)> bj = [&](const SPtr& e) -> std::string {
    std::ostringstream o;
    o << "{\"kind\":\"";
    switch (e->build) {
      case BK::Triv: o << "triv"; break;
      case BK::Zseq: o << "z"; break;
      case BK::Zseq2: o << "z2"; break;
      case BK::Prod: o << "prod"; break;
      case BK::Wr: o << "wr"; break;
      case BK::Wr2: o << "wr2"; break;
      case BK::GarsideQuot: o << "gq"; break;
      case BK::DiagGarside: o << "diag"; break;
      case BK::NaturalTop: o << "ntop"; break;
      case BK::NaturalBottom: o << "nbot"; break;
    }
    o << "\"";
    if (e->m) o << ",\"m\":" << e->m;
    if (e->n) o << ",\"n\":" << e->n;
    if (!e->parts.empty()) {
      o << ",\"parts\":[";
      for (size_t i = 0; i < e->parts.size(); ++i) {
        if (i) o << ",";
        o << bj(e->parts[i]);
      }
      o << "]";
    }
    o << "}";
    return o.str();
  };
  std::ostringstream o;
  o << "{\"kernel\":\"" << gx::to_string(s->kernel) << "\",\"middle\":\""
    << gx::to_string(s->middle) << "\",\"quotient\":\""
    << gx::to_string(s->quotient) << "\",\"build\":" << bj(s) << "}";
  return o.str();
}

namespace {

struct BuildParser {
  const std::string& s;
  size_t p = 0;
  explicit BuildParser(const std::string& t) : s(t) {}

  void skip() {
    while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
  }
  bool eat(const std::string& tok) {
    skip();
    if (s.compare(p, tok.size(), tok) == 0) {
      p += tok.size();
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& why) {
    throw BuildError("seq parse error at " + std::to_string(p) + ": " + why);
  }
  long number() {
    skip();
    size_t q = p;
    while (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) ++q;
    if (q == p) fail("expected number");
    long v = std::stol(s.substr(p, q - p));
    p = q;
    return v;
  }

  SPtr expr() {
    skip();
    if (eat("triv")) return triv();
    if (eat("z2(")) {
      long m = number();
      if (!eat(",")) fail("expected ','");
      long n = number();
      if (!eat(")")) fail("expected ')'");
      return zseq2(m, n);
    }
    if (eat("z(")) {
      long m = number();
      if (!eat(")")) fail("expected ')'");
      return zseq(m);
    }
    if (eat("prod(")) {
      std::vector<SPtr> parts{expr()};
      while (eat(",")) parts.push_back(expr());
      if (!eat(")")) fail("expected ')'");
      return product(std::move(parts));
    }
    if (eat("wr2(")) {
      SPtr inner = expr();
      if (!eat(",")) fail("expected ','");
      long m = number();
      if (!eat(",")) fail("expected ','");
      long n = number();
      if (!eat(")")) fail("expected ')'");
      return wr2(inner, m, n);
    }
    if (eat("wr(")) {
      SPtr inner = expr();
      if (!eat(",")) fail("expected ','");
      long m = number();
      if (!eat(")")) fail("expected ')'");
      return wr(inner, m);
    }
    if (eat("gq(")) {
      SPtr inner = expr();
      if (!eat(")")) fail("expected ')'");
      return garside_quotient(inner);
    }
    if (eat("diag(")) {
      std::vector<SPtr> parts{expr()};
      while (eat(",")) parts.push_back(expr());
      if (!eat(")")) fail("expected ')'");
      return diag_garside(std::move(parts));
    }
    if (eat("ntop(")) {
      SPtr inner = expr();
      if (!eat(")")) fail("expected ')'");
      return natural(inner).top;
    }
    if (eat("nbot(")) {
      SPtr inner = expr();
      if (!eat(")")) fail("expected ')'");
      return natural(inner).bottom;
    }
    fail("expected build expression");
  }
};

}  // namespace

SPtr parse_build(const std::string& script) {
  BuildParser pr(script);
  SPtr e = pr.expr();
  pr.skip();
  if (pr.p != script.size()) pr.fail("trailing input");
  return e;
}

std::string seq_family_name(SeqFamily f) {
  switch (f) {
    case SeqFamily::ZZI: return "ZZI";
    case SeqFamily::ssZBtPt: return "ssZBtPt";
    case SeqFamily::ssZBP: return "ssZBP";
    case SeqFamily::gssZBP: return "gssZBP";
  }
  return "?";
}

SeqFamily seq_family_from_name(const std::string& s) {
  if (s == "ZZI") return SeqFamily::ZZI;
  if (s == "ssZBtPt") return SeqFamily::ssZBtPt;
  if (s == "ssZBP") return SeqFamily::ssZBP;
  if (s == "gssZBP") return SeqFamily::gssZBP;
  throw BuildError("unknown sequence family: " + s);
}

}  // namespace orbitcalc::sq
