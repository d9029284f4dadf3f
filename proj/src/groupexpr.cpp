#include "orbitcalc/groupexpr.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace orbitcalc::gx {

namespace {

GPtr make(GK k, long m = 0, long n = 0, std::vector<GPtr> args = {},
          std::vector<long> idx = {}) {
  auto e = std::make_shared<GroupExpr>();
  e->kind = k;
  e->m = m;
  e->n = n;
  e->args = std::move(args);
  e->quot_indices = std::move(idx);
  return e;
}

const GPtr kUnit = make(GK::Unit);
const GPtr kZ = make(GK::Z);

}  // namespace

GPtr unit() { return kUnit; }
GPtr z() { return kZ; }

GPtr zmod(long m) {
  if (m < 1) throw std::invalid_argument("zmod: m must be >= 1");
  if (m == 1) return kUnit;
  return make(GK::Zmod, m);
}

GPtr prod(std::vector<GPtr> factors) {
  std::vector<GPtr> flat;
  for (auto& f : factors) {
    GPtr g = normalize(f);
    if (g->kind == GK::Unit) continue;
    if (g->kind == GK::Prod)
      flat.insert(flat.end(), g->args.begin(), g->args.end());
    else
      flat.push_back(g);
  }
  if (flat.empty()) return kUnit;
  if (flat.size() == 1) return flat[0];
  std::sort(flat.begin(), flat.end(),
            [](const GPtr& a, const GPtr& b) { return to_string(a) < to_string(b); });
  return make(GK::Prod, 0, 0, std::move(flat));
}

GPtr wr_z(GPtr inner, long m) {
  if (m < 1) throw std::invalid_argument("wr_z: m must be >= 1");
  GPtr a = normalize(inner);
  if (a->kind == GK::Unit) return kZ;      // 1 wr_m Z = Z
  if (m == 1) return prod({a, kZ});        // B wr_1 Z = B x Z
  return make(GK::WrZ, m, 0, {a});
}

GPtr wr_z2(GPtr inner, long m, long n) {
  if (m < 1 || n < 1) throw std::invalid_argument("wr_z2: m,n must be >= 1");
  GPtr a = normalize(inner);
  if (a->kind == GK::Unit) return prod({kZ, kZ});  // 1 wr_{m,n} Z2 = Z2
  if (m == 1 && n == 1) return prod({a, kZ, kZ});
  if (n == 1) return prod({wr_z(a, m), kZ});       // A wr_{m,1} Z2 = (A wr_m Z) x Z
  if (m == 1) return prod({wr_z(a, n), kZ});
  return make(GK::WrZ2, m, n, {a});
}

GPtr wr_zmod(GPtr inner, long m) {
  if (m < 1) throw std::invalid_argument("wr_zmod: m must be >= 1");
  GPtr a = normalize(inner);
  if (m == 1) return a;                    // C wr Z_1 = C
  if (a->kind == GK::Unit) return zmod(m); // 1 wr Z_m = Z_m
  return make(GK::WrZmod, m, 0, {a});
}

GPtr wr_zmod2(GPtr inner, long m, long n) {
  if (m < 1 || n < 1) throw std::invalid_argument("wr_zmod2: m,n must be >= 1");
  GPtr a = normalize(inner);
  if (m == 1) return wr_zmod(a, n);
  if (n == 1) return wr_zmod(a, m);
  if (a->kind == GK::Unit) return prod({zmod(m), zmod(n)});
  return make(GK::WrZmod2, m, n, {a});
}

GPtr central_quot(std::vector<GPtr> middles, std::vector<long> indices) {
  if (middles.size() != indices.size() || middles.empty())
    throw std::invalid_argument("central_quot: factor/index mismatch");
  std::vector<GPtr> ms;
  ms.reserve(middles.size());
  for (auto& f : middles) ms.push_back(normalize(f));

  // A factor whose Garside element generates a direct Z summand (index 1,
  // i.e. a z(1) or wr(.,1) middle) absorbs the diagonal: quotienting deletes
  // that Z and leaves everything else untouched.
  for (size_t i = 0; i < ms.size(); ++i) {
    if (indices[i] != 1) continue;
    bool splits = false;
    std::vector<GPtr> rest;
    if (ms[i]->kind == GK::Z) {
      splits = true;
    } else if (ms[i]->kind == GK::Prod) {
      auto it = std::find_if(ms[i]->args.begin(), ms[i]->args.end(),
                             [](const GPtr& g) { return g->kind == GK::Z; });
      if (it != ms[i]->args.end()) {
        splits = true;
        rest = ms[i]->args;
        rest.erase(rest.begin() + (it - ms[i]->args.begin()));
      }
    }
    if (splits) {
      std::vector<GPtr> out = rest;
      for (size_t j = 0; j < ms.size(); ++j)
        if (j != i) out.push_back(ms[j]);
      return prod(std::move(out));
    }
  }

  if (ms.size() == 1) {
    // Single factor: quotient by its own Garside element.
    const GPtr& f = ms[0];
    long m = indices[0];
    if (f->kind == GK::Z) return zmod(m);                        // Z/mZ
    if (f->kind == GK::WrZ && f->m == m) return wr_zmod(f->args[0], m);
    return make(GK::CentralQuot, 0, 0, {f}, {m});
  }

  // All factors Z with indices m_i: Z^k/<(m_1..m_k)> = Z^{k-1} x Z_gcd.
  if (std::all_of(ms.begin(), ms.end(),
                  [](const GPtr& g) { return g->kind == GK::Z; })) {
    long g = 0;
    for (long m : indices) g = gcd_ll(g, m);
    std::vector<GPtr> out;
    for (size_t i = 0; i + 1 < ms.size(); ++i) out.push_back(kZ);
    out.push_back(zmod(std::max(1L, g)));
    return prod(std::move(out));
  }

  return make(GK::CentralQuot, 0, 0, std::move(ms), std::move(indices));
}

GPtr normalize(const GPtr& e) {
  if (!e) throw std::invalid_argument("normalize: null expression");
  switch (e->kind) {
    case GK::Unit: return kUnit;
    case GK::Z: return kZ;
    case GK::Zmod: return zmod(e->m);
    case GK::Prod: return prod(e->args);
    case GK::WrZ: return wr_z(e->args[0], e->m);
    case GK::WrZ2: return wr_z2(e->args[0], e->m, e->n);
    case GK::WrZmod: return wr_zmod(e->args[0], e->m);
    case GK::WrZmod2: return wr_zmod2(e->args[0], e->m, e->n);
    case GK::CentralQuot: return central_quot(e->args, e->quot_indices);
  }
  throw std::logic_error("normalize: bad kind");
}

bool equal(const GPtr& a, const GPtr& b) {
  return to_string(normalize(a)) == to_string(normalize(b));
}

long beta1(const GPtr& raw) {
  GPtr e = normalize(raw);
  switch (e->kind) {
    case GK::Unit: return 0;
    case GK::Z: return 1;
    case GK::Prod: {
      long s = 0;
      for (auto& f : e->args) s += beta1(f);
      return s;
    }
    case GK::WrZ: return beta1(e->args[0]) + 1;
    case GK::WrZ2: return beta1(e->args[0]) + 2;
    case GK::CentralQuot: {
      long s = -1;
      for (auto& f : e->args) s += beta1(f);
      return s;
    }
    default:
      throw FamilyError("beta1: torsion subterm " + to_string(e));
  }
}

long center_rank(const GPtr& raw) {
  GPtr e = normalize(raw);
  switch (e->kind) {
    case GK::Unit: return 0;
    case GK::Z: return 1;
    case GK::Prod: {
      long s = 0;
      for (auto& f : e->args) s += center_rank(f);
      return s;
    }
    case GK::WrZ: return center_rank(e->args[0]) + 1;   // Z(G wr_m Z) = Z(G) x Z
    case GK::WrZ2: return center_rank(e->args[0]) + 2;  // Z(G wr_{m,n} Z2) = Z(G) x Z2
    case GK::CentralQuot: {
      long s = -1;
      for (auto& f : e->args) s += center_rank(f);
      return s;
    }
    default:
      throw FamilyError("center_rank: torsion subterm " + to_string(e));
  }
}

GPtr abelianization(const GPtr& e) {
  long r = beta1(e);
  std::vector<GPtr> zs(static_cast<size_t>(r), kZ);
  return prod(std::move(zs));
}

long free_rank(const GPtr& raw) {
  GPtr e = normalize(raw);
  switch (e->kind) {
    case GK::Unit:
    case GK::Zmod:
      return 0;
    case GK::Z: return 1;
    case GK::Prod: {
      long s = 0;
      for (auto& f : e->args) s += free_rank(f);
      return s;
    }
    case GK::WrZ: return free_rank(e->args[0]) + 1;
    case GK::WrZ2: return free_rank(e->args[0]) + 2;
    case GK::WrZmod:
    case GK::WrZmod2:
      return free_rank(e->args[0]);
    case GK::CentralQuot: {
      long s = -1;
      for (auto& f : e->args) s += free_rank(f);
      return s;
    }
  }
  throw std::logic_error("free_rank: bad kind");
}

bool in_family(const GPtr& raw, GroupFamily f) {
  GPtr e = normalize(raw);
  switch (f) {
    case GroupFamily::ccZ:
      if (e->kind == GK::Unit || e->kind == GK::Z) return true;
      if (e->kind == GK::Prod)
        return std::all_of(e->args.begin(), e->args.end(),
                           [](const GPtr& g) { return g->kind == GK::Z; });
      return false;
    case GroupFamily::ccB:
    case GroupFamily::clsBt: {
      if (e->kind == GK::Unit || e->kind == GK::Z) return true;  // Z = 1 wr_m Z
      if (e->kind == GK::Prod)
        return std::all_of(e->args.begin(), e->args.end(),
                           [&](const GPtr& g) { return in_family(g, f); });
      if (e->kind == GK::WrZ) {
        if (f == GroupFamily::clsBt && e->m != 2) return false;
        return in_family(e->args[0], f);
      }
      return false;
    }
    case GroupFamily::ccP:
    case GroupFamily::clsGt: {
      if (e->kind == GK::Unit) return true;
      if (e->kind == GK::Zmod)  // Z_m = 1 wr Z_m
        return f == GroupFamily::ccP || e->m == 2;
      if (e->kind == GK::Prod)
        return std::all_of(e->args.begin(), e->args.end(),
                           [&](const GPtr& g) { return in_family(g, f); });
      if (e->kind == GK::WrZmod) {
        if (f == GroupFamily::clsGt && e->m != 2) return false;
        return in_family(e->args[0], f);
      }
      return false;
    }
    case GroupFamily::ccBprime:
      return e->kind == GK::WrZ2 && in_family(e->args[0], GroupFamily::ccB);
  }
  return false;
}

bool is_torsion_free(const GPtr& raw) {
  GPtr e = normalize(raw);
  switch (e->kind) {
    case GK::Unit:
    case GK::Z:
      return true;
    case GK::Prod:
    case GK::WrZ:
    case GK::WrZ2:
      return std::all_of(e->args.begin(), e->args.end(),
                         [](const GPtr& g) { return is_torsion_free(g); });
    default:
      return false;  // Zmod/WrZmod/WrZmod2; CentralQuot can hide torsion
  }
}

Order order(const GPtr& raw) {
  GPtr e = normalize(raw);
  switch (e->kind) {
    case GK::Unit: return Order::of(1);
    case GK::Zmod: return Order::of(e->m);
    case GK::Prod: {
      Order o = Order::of(1);
      for (auto& f : e->args) o = o * order(f);
      return o;
    }
    case GK::WrZmod: {
      Order c = order(e->args[0]);
      if (!c.finite) return Order::infinite();
      BigInt v = 1;
      for (long i = 0; i < e->m; ++i) v *= c.value;
      return Order::of(v * e->m);
    }
    case GK::WrZmod2: {
      Order c = order(e->args[0]);
      if (!c.finite) return Order::infinite();
      BigInt v = 1;
      for (long i = 0; i < e->m * e->n; ++i) v *= c.value;
      return Order::of(v * e->m * e->n);
    }
    default:
      return Order::infinite();  // Z, WrZ, WrZ2, CentralQuot (rank >= 1)
  }
}

namespace {

// depth of an expression as built: leaves 1 (Unit 0), constructors 1 + inner.
int build_depth(const GPtr& e) {
  switch (e->kind) {
    case GK::Unit: return 0;
    case GK::Z:
    case GK::Zmod:
      return 1;
    default: {
      int d = 0;
      for (auto& f : e->args) d = std::max(d, build_depth(f));
      return d + 1;
    }
  }
}

}  // namespace

std::vector<GPtr> enumerate_family(GroupFamily f, int max_depth, long max_param) {
  if (max_depth < 0) throw std::invalid_argument("enumerate_family: depth < 0");
  if (f == GroupFamily::ccBprime) {
    std::set<std::string> seen;
    std::vector<GPtr> out;
    auto inner = enumerate_family(GroupFamily::ccB, std::max(0, max_depth - 1), max_param);
    for (auto& a : inner)
      for (long m = 1; m <= max_param; ++m)
        for (long n = 1; n <= max_param; ++n) {
          GPtr g = wr_z2(a, m, n);
          if (!in_family(g, GroupFamily::ccBprime)) continue;  // m/n=1 alias into ccB
          if (build_depth(g) > max_depth) continue;
          if (seen.insert(to_string(g)).second) out.push_back(g);
        }
    return out;
  }

  std::set<std::string> seen;
  std::vector<GPtr> layer{kUnit}, all{kUnit};
  seen.insert(to_string(kUnit));
  auto add = [&](std::vector<GPtr>& dst, const GPtr& g, int depth_cap) {
    if (build_depth(g) > depth_cap) return;
    if (seen.insert(to_string(g)).second) {
      dst.push_back(g);
      all.push_back(g);
    }
  };

  for (int d = 1; d <= max_depth; ++d) {
    std::vector<GPtr> next;
    std::vector<GPtr> base = all;  // everything of depth < d
    // atoms
    if (f == GroupFamily::ccZ || f == GroupFamily::ccB || f == GroupFamily::clsBt)
      add(next, kZ, d);
    if (f == GroupFamily::ccP)
      for (long m = 2; m <= max_param; ++m) add(next, zmod(m), d);
    if (f == GroupFamily::clsGt && max_param >= 2) add(next, zmod(2), d);
    // wreaths
    for (auto& a : base) {
      if (f == GroupFamily::ccB || f == GroupFamily::clsBt) {
        for (long m = 1; m <= max_param; ++m) {
          if (f == GroupFamily::clsBt && m > 2) break;
          add(next, wr_z(a, m), d);
        }
      }
      if (f == GroupFamily::ccP || f == GroupFamily::clsGt) {
        long lo = 1, hi = (f == GroupFamily::clsGt) ? std::min(2L, max_param) : max_param;
        for (long m = lo; m <= hi; ++m) add(next, wr_zmod(a, m), d);
      }
    }
    // binary products (flattening + sorting dedups the associations)
    for (size_t i = 0; i < base.size(); ++i)
      for (size_t j = i; j < base.size(); ++j)
        add(next, prod({base[i], base[j]}), d);
    layer = std::move(next);
  }
  std::sort(all.begin(), all.end(),
            [](const GPtr& a, const GPtr& b) { return to_string(a) < to_string(b); });
  return all;
}

std::string to_string(const GPtr& e) {
  switch (e->kind) {
    case GK::Unit: return "1";
    case GK::Z: return "Z";
    case GK::Zmod: return "Z_" + std::to_string(e->m);
    case GK::Prod: {
      std::string s = "(";
      for (size_t i = 0; i < e->args.size(); ++i) {
        if (i) s += " x ";
        s += to_string(e->args[i]);
      }
      return s + ")";
    }
    case GK::WrZ:
      return "(" + to_string(e->args[0]) + " wr[" + std::to_string(e->m) + "] Z)";
    case GK::WrZ2:
      return "(" + to_string(e->args[0]) + " wr[" + std::to_string(e->m) + "," +
             std::to_string(e->n) + "] Z2)";
    case GK::WrZmod:
      return "(" + to_string(e->args[0]) + " wr Z_" + std::to_string(e->m) + ")";
    case GK::WrZmod2:
      return "(" + to_string(e->args[0]) + " wr (Z_" + std::to_string(e->m) +
             " x Z_" + std::to_string(e->n) + "))";
    case GK::CentralQuot: {
      std::string s = "gq[";
      for (size_t i = 0; i < e->quot_indices.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(e->quot_indices[i]);
      }
      s += "](";
      for (size_t i = 0; i < e->args.size(); ++i) {
        if (i) s += " x ";
        s += to_string(e->args[i]);
      }
      return s + ")";
    }
  }
  throw std::logic_error("to_string: bad kind");
}

// --- parser ------------------------------------------------------------

namespace {

struct Parser {
  const std::string& s;
  size_t p = 0;

  explicit Parser(const std::string& text) : s(text) {}

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
    throw ParseError("group parse error at index " + std::to_string(p) + ": " + why);
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

  // expr := atom (('x'|'×') atom)*        atom level handles wr suffixes
  GPtr expr() {
    std::vector<GPtr> factors{atom()};
    while (true) {
      skip();
      if (eat("x") || eat("×"))
        factors.push_back(atom());
      else
        break;
    }
    return factors.size() == 1 ? factors[0] : prod(std::move(factors));
  }

  GPtr atom() {
    skip();
    GPtr base;
    if (eat("(")) {
      base = expr();
      if (!eat(")")) fail("expected ')'");
    } else if (eat("gq[")) {
      std::vector<long> idx{number()};
      while (eat(",")) idx.push_back(number());
      if (!eat("]")) fail("expected ']'");
      if (!eat("(")) fail("expected '('");
      std::vector<GPtr> ms{expr_no_wr()};
      while (eat("x")) ms.push_back(expr_no_wr());
      if (!eat(")")) fail("expected ')'");
      base = central_quot(std::move(ms), std::move(idx));
    } else if (eat("Z_")) {
      base = zmod(number());
    } else if (eat("Z2")) {
      fail("bare Z2 only valid after wr[m,n]");
    } else if (eat("Z")) {
      base = kZ;
    } else if (eat("1")) {
      base = kUnit;
    } else {
      fail("expected expression");
    }
    return suffixes(base);
  }

  // inside gq(...) the factors are full expressions; reuse expr via a
  // parenthesized-style entry that stops at 'x' handled by the caller.
  GPtr expr_no_wr() { return atom(); }

  GPtr suffixes(GPtr base) {
    while (true) {
      skip();
      size_t save = p;
      if (eat("wr[")) {
        long m = number();
        if (eat(",")) {
          long n = number();
          if (!eat("]")) fail("expected ']'");
          if (!eat("Z2")) fail("expected Z2");
          base = wr_z2(base, m, n);
        } else {
          if (!eat("]")) fail("expected ']'");
          if (!eat("Z")) fail("expected Z");
          base = wr_z(base, m);
        }
      } else if (eat("wr")) {
        skip();
        if (eat("(")) {
          if (!eat("Z_")) fail("expected Z_m");
          long m = number();
          if (!eat("x")) fail("expected 'x'");
          if (!eat("Z_")) fail("expected Z_n");
          long n = number();
          if (!eat(")")) fail("expected ')'");
          base = wr_zmod2(base, m, n);
        } else if (eat("Z_")) {
          base = wr_zmod(base, number());
        } else {
          p = save;
          break;
        }
      } else {
        break;
      }
    }
    return base;
  }
};

}  // namespace

GPtr parse(const std::string& text) {
  Parser pr(text);
  GPtr e = pr.expr();
  pr.skip();
  if (pr.p != text.size()) pr.fail("trailing input");
  return normalize(e);
}

std::string family_name(GroupFamily f) {
  switch (f) {
    case GroupFamily::ccZ: return "ccZ";
    case GroupFamily::ccB: return "ccB";
    case GroupFamily::clsBt: return "clsBt";
    case GroupFamily::ccP: return "ccP";
    case GroupFamily::clsGt: return "clsGt";
    case GroupFamily::ccBprime: return "ccBprime";
  }
  return "?";
}

GroupFamily family_from_name(const std::string& s) {
  if (s == "ccZ") return GroupFamily::ccZ;
  if (s == "ccB") return GroupFamily::ccB;
  if (s == "clsBt") return GroupFamily::clsBt;
  if (s == "ccP") return GroupFamily::ccP;
  if (s == "clsGt") return GroupFamily::clsGt;
  if (s == "ccBprime") return GroupFamily::ccBprime;
  throw ParseError("unknown family: " + s);
}

}  // namespace orbitcalc::gx
