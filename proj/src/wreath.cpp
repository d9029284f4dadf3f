#include "orbitcalc/wreath.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "orbitcalc/numbers.hpp"

namespace orbitcalc::wr {

namespace {

long long mod_floor(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

void validate_table(const BaseGroup& g) {
  int n = g.size();
  if (n == 0) throw TableError("empty group table");
  for (auto& row : g.table) {
    if (static_cast<int>(row.size()) != n) throw TableError("ragged table");
    for (int v : row)
      if (v < 0 || v >= n) throw TableError("table entry out of range");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
          throw TableError("table not associative");
  for (int a = 0; a < n; ++a)
    if (g.mul(g.id, a) != a || g.mul(a, g.id) != a)
      throw TableError("identity law fails");
  for (int a = 0; a < n; ++a)
    if (g.mul(a, g.inv[a]) != g.id || g.mul(g.inv[a], a) != g.id)
      throw TableError("inverse law fails");
}

int find_identity(const std::vector<std::vector<int>>& table) {
  int n = static_cast<int>(table.size());
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      ok = table[e][a] == a && table[a][e] == a;
    if (ok) return e;
  }
  throw TableError("no identity element");
}

std::vector<int> find_inverses(const std::vector<std::vector<int>>& table, int id) {
  int n = static_cast<int>(table.size());
  std::vector<int> inv(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (table[a][b] == id && table[b][a] == id) {
        inv[a] = b;
        break;
      }
    if (inv[a] < 0) throw TableError("missing inverse");
  }
  return inv;
}

}  // namespace

void BaseGroup::ensure_exhaustion() const {
  if (ab_count_ >= 0) return;
  int n = size();
  center_.assign(n, true);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (mul(a, b) != mul(b, a)) {
        center_[a] = false;
        break;
      }
  // derived subgroup: closure of all commutators under multiplication
  std::set<int> gen;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      gen.insert(mul(mul(a, b), mul(inv[a], inv[b])));
  std::set<int> sub(gen);
  sub.insert(id);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> cur(sub.begin(), sub.end());
    for (int a : cur)
      for (int b : cur)
        if (sub.insert(mul(a, b)).second) grew = true;
  }
  derived_.assign(n, false);
  for (int a : sub) derived_[a] = true;
  // cosets of [G,G]
  ab_coset_.assign(n, -1);
  int next = 0;
  for (int a = 0; a < n; ++a) {
    if (ab_coset_[a] >= 0) continue;
    for (int h : sub) ab_coset_[mul(a, h)] = next;
    ++next;
  }
  ab_count_ = next;
}

const std::vector<bool>& BaseGroup::center_mask() const {
  ensure_exhaustion();
  return center_;
}
const std::vector<bool>& BaseGroup::derived_mask() const {
  ensure_exhaustion();
  return derived_;
}
const std::vector<int>& BaseGroup::abelian_coset() const {
  ensure_exhaustion();
  return ab_coset_;
}
int BaseGroup::abelian_coset_count() const {
  ensure_exhaustion();
  return ab_count_;
}

BasePtr integers() {
  auto g = std::make_shared<BaseGroup>();
  g->integers = true;
  return g;
}

BasePtr make_zmod(int k) {
  if (k < 1) throw TableError("zmod: k >= 1 required");
  auto g = std::make_shared<BaseGroup>();
  g->names.resize(k);
  g->table.assign(k, std::vector<int>(k));
  for (int a = 0; a < k; ++a) {
    g->names[a] = std::to_string(a);
    for (int b = 0; b < k; ++b) g->table[a][b] = (a + b) % k;
  }
  g->id = 0;
  g->inv.resize(k);
  for (int a = 0; a < k; ++a) g->inv[a] = (k - a) % k;
  g->generators = {k > 1 ? 1 : 0};
  validate_table(*g);
  return g;
}

BasePtr make_s3() {
  // permutations of {0,1,2} in one-line notation
  std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                           {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  std::vector<std::string> names = {"e", "r", "rr", "s", "t", "u"};
  auto idx_of = [&](const std::array<int, 3>& p) {
    for (size_t i = 0; i < perms.size(); ++i)
      if (perms[i] == p) return static_cast<int>(i);
    return -1;
  };
  auto g = std::make_shared<BaseGroup>();
  g->names = names;
  g->table.assign(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      g->table[a][b] = idx_of(c);
    }
  g->id = 0;
  g->inv = find_inverses(g->table, 0);
  g->generators = {1, 3};  // 3-cycle and a transposition
  validate_table(*g);
  return g;
}

BasePtr load_table_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) {
      // trim
      size_t b = cell.find_first_not_of(" \t\r");
      size_t e = cell.find_last_not_of(" \t\r");
      cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    rows.push_back(std::move(cells));
  }
  if (rows.size() < 2) throw TableError("csv: need header and body");
  auto g = std::make_shared<BaseGroup>();
  g->names = rows[0];
  int n = static_cast<int>(g->names.size());
  std::map<std::string, int> by_name;
  for (int i = 0; i < n; ++i) {
    if (!by_name.emplace(g->names[i], i).second)
      throw TableError("csv: duplicate element name " + g->names[i]);
  }
  if (static_cast<int>(rows.size()) != n + 1)
    throw TableError("csv: body must have one row per element");
  g->table.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(rows[a + 1].size()) != n)
      throw TableError("csv: ragged body row");
    for (int b = 0; b < n; ++b) {
      auto it = by_name.find(rows[a + 1][b]);
      if (it == by_name.end())
        throw TableError("csv: unknown product name " + rows[a + 1][b]);
      g->table[a][b] = it->second;
    }
  }
  g->id = find_identity(g->table);
  g->inv = find_inverses(g->table, g->id);
  g->generators.resize(n);
  std::iota(g->generators.begin(), g->generators.end(), 0);
  validate_table(*g);
  return g;
}

ShapePtr shape_base(BasePtr b) {
  auto s = std::make_shared<WreathShape>();
  s->kind = WreathShape::Base;
  s->base = std::move(b);
  return s;
}

ShapePtr shape_prod(std::vector<ShapePtr> parts) {
  if (parts.empty()) throw ShapeError("prod shape: no parts");
  auto s = std::make_shared<WreathShape>();
  s->kind = WreathShape::Prod;
  s->children = std::move(parts);
  return s;
}

ShapePtr shape_wr_z(ShapePtr inner, long m) {
  if (m < 1) throw ShapeError("wr_z shape: m >= 1 required");
  auto s = std::make_shared<WreathShape>();
  s->kind = WreathShape::WrZ;
  s->children = {std::move(inner)};
  s->m = m;
  return s;
}

ShapePtr shape_wr_z2(ShapePtr inner, long m, long n) {
  if (m < 1 || n < 1) throw ShapeError("wr_z2 shape: m,n >= 1 required");
  auto s = std::make_shared<WreathShape>();
  s->kind = WreathShape::WrZ2;
  s->children = {std::move(inner)};
  s->m = m;
  s->n = n;
  return s;
}

ShapePtr shape_semidirect(ShapePtr normal, long actor_mod, std::vector<int> phi) {
  if (!normal || normal->kind != WreathShape::Base || normal->base->integers)
    throw ShapeError("semidirect: normal subgroup must be a finite base group");
  const BaseGroup& a = *normal->base;
  int n = a.size();
  if (static_cast<int>(phi.size()) != n) throw ShapeError("semidirect: phi size");
  // phi must be an automorphism
  std::vector<bool> hit(n, false);
  for (int v : phi) {
    if (v < 0 || v >= n || hit[v]) throw ShapeError("semidirect: phi not bijective");
    hit[v] = true;
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (phi[a.mul(x, y)] != a.mul(phi[x], phi[y]))
        throw ShapeError("semidirect: phi not a homomorphism");
  if (actor_mod > 0) {
    std::vector<int> q(n);
    std::iota(q.begin(), q.end(), 0);
    for (long i = 0; i < actor_mod; ++i) {
      std::vector<int> r(n);
      for (int x = 0; x < n; ++x) r[x] = phi[q[x]];
      q = r;
    }
    for (int x = 0; x < n; ++x)
      if (q[x] != x) throw ShapeError("semidirect: phi^m != id for Z_m actor");
  }
  auto s = std::make_shared<WreathShape>();
  s->kind = WreathShape::Semidirect;
  s->children = {std::move(normal)};
  s->actor_mod = actor_mod;
  s->phi = std::move(phi);
  return s;
}

namespace {

void check_conformance(const ShapePtr& s, const WreathElement& x) {
  switch (s->kind) {
    case WreathShape::Base:
      if (!s->base->integers && (x.idx < 0 || x.idx >= s->base->size()))
        throw ShapeError("element index out of base range");
      return;
    case WreathShape::Prod:
      if (x.parts.size() != s->children.size())
        throw ShapeError("prod element arity mismatch");
      for (size_t i = 0; i < x.parts.size(); ++i)
        check_conformance(s->children[i], x.parts[i]);
      return;
    case WreathShape::WrZ:
      if (static_cast<long>(x.parts.size()) != s->m)
        throw ShapeError("wr_z element arity mismatch");
      for (auto& p : x.parts) check_conformance(s->children[0], p);
      return;
    case WreathShape::WrZ2:
      if (static_cast<long>(x.parts.size()) != s->m * s->n)
        throw ShapeError("wr_z2 element arity mismatch");
      for (auto& p : x.parts) check_conformance(s->children[0], p);
      return;
    case WreathShape::Semidirect:
      if (x.parts.size() != 1) throw ShapeError("semidirect element arity mismatch");
      check_conformance(s->children[0], x.parts[0]);
      if (s->actor_mod > 0 && (x.k < 0 || x.k >= s->actor_mod))
        throw ShapeError("semidirect actor value out of range");
      return;
  }
}

int phi_pow_apply(const WreathShape& s, long long e, int x) {
  const BaseGroup& a = *s.children[0]->base;
  long long steps = s.actor_mod > 0 ? mod_floor(e, s.actor_mod) : e;
  if (steps >= 0) {
    for (long long i = 0; i < steps; ++i) x = s.phi[x];
  } else {
    // inverse permutation
    std::vector<int> inv_phi(a.size());
    for (int v = 0; v < a.size(); ++v) inv_phi[s.phi[v]] = v;
    for (long long i = 0; i < -steps; ++i) x = inv_phi[x];
  }
  return x;
}

}  // namespace

WreathElement identity(const ShapePtr& s) {
  WreathElement e;
  switch (s->kind) {
    case WreathShape::Base:
      if (!s->base->integers) e.idx = s->base->id;
      return e;
    case WreathShape::Prod:
      for (auto& c : s->children) e.parts.push_back(identity(c));
      return e;
    case WreathShape::WrZ:
      e.parts.assign(s->m, identity(s->children[0]));
      return e;
    case WreathShape::WrZ2:
      e.parts.assign(s->m * s->n, identity(s->children[0]));
      return e;
    case WreathShape::Semidirect:
      e.parts.push_back(identity(s->children[0]));
      return e;
  }
  throw ShapeError("identity: bad shape");
}

WreathElement mul(const ShapePtr& s, const WreathElement& x, const WreathElement& y) {
  check_conformance(s, x);
  check_conformance(s, y);
  WreathElement r;
  switch (s->kind) {
    case WreathShape::Base:
      if (s->base->integers)
        r.value = x.value + y.value;
      else
        r.idx = s->base->mul(x.idx, y.idx);
      return r;
    case WreathShape::Prod:
      for (size_t i = 0; i < s->children.size(); ++i)
        r.parts.push_back(mul(s->children[i], x.parts[i], y.parts[i]));
      return r;
    case WreathShape::WrZ: {
      long m = s->m;
      r.parts.resize(m);
      for (long i = 0; i < m; ++i)
        r.parts[i] = mul(s->children[0], x.parts[i],
                         y.parts[mod_floor(i + x.k, m)]);
      r.k = x.k + y.k;
      return r;
    }
    case WreathShape::WrZ2: {
      long m = s->m, n = s->n;
      r.parts.resize(m * n);
      for (long i = 0; i < m; ++i)
        for (long j = 0; j < n; ++j)
          r.parts[i * n + j] =
              mul(s->children[0], x.parts[i * n + j],
                  y.parts[mod_floor(i + x.k, m) * n + mod_floor(j + x.l, n)]);
      r.k = x.k + y.k;
      r.l = x.l + y.l;
      return r;
    }
    case WreathShape::Semidirect: {
      // (a, x)(b, y) = (a * phi^x(b), x + y)
      const BaseGroup& a = *s->children[0]->base;
      int moved = phi_pow_apply(*s, x.k, y.parts[0].idx);
      r.parts.push_back(WreathElement{});
      r.parts[0].idx = a.mul(x.parts[0].idx, moved);
      r.k = s->actor_mod > 0 ? mod_floor(x.k + y.k, s->actor_mod) : x.k + y.k;
      return r;
    }
  }
  throw ShapeError("mul: bad shape");
}

WreathElement inv(const ShapePtr& s, const WreathElement& x) {
  check_conformance(s, x);
  WreathElement r;
  switch (s->kind) {
    case WreathShape::Base:
      if (s->base->integers)
        r.value = -x.value;
      else
        r.idx = s->base->inv[x.idx];
      return r;
    case WreathShape::Prod:
      for (size_t i = 0; i < s->children.size(); ++i)
        r.parts.push_back(inv(s->children[i], x.parts[i]));
      return r;
    case WreathShape::WrZ: {
      long m = s->m;
      r.parts.resize(m);
      // h_j = (g_{j-k})^{-1}, shift -k
      for (long j = 0; j < m; ++j)
        r.parts[j] = inv(s->children[0], x.parts[mod_floor(j - x.k, m)]);
      r.k = -x.k;
      return r;
    }
    case WreathShape::WrZ2: {
      long m = s->m, n = s->n;
      r.parts.resize(m * n);
      for (long i = 0; i < m; ++i)
        for (long j = 0; j < n; ++j)
          r.parts[i * n + j] = inv(
              s->children[0],
              x.parts[mod_floor(i - x.k, m) * n + mod_floor(j - x.l, n)]);
      r.k = -x.k;
      r.l = -x.l;
      return r;
    }
    case WreathShape::Semidirect: {
      const BaseGroup& a = *s->children[0]->base;
      long long kinv = s->actor_mod > 0 ? mod_floor(-x.k, s->actor_mod) : -x.k;
      r.parts.push_back(WreathElement{});
      r.parts[0].idx = phi_pow_apply(*s, kinv, a.inv[x.parts[0].idx]);
      r.k = kinv;
      return r;
    }
  }
  throw ShapeError("inv: bad shape");
}

bool equal(const ShapePtr& s, const WreathElement& x, const WreathElement& y) {
  switch (s->kind) {
    case WreathShape::Base:
      return s->base->integers ? x.value == y.value : x.idx == y.idx;
    case WreathShape::Prod:
      for (size_t i = 0; i < s->children.size(); ++i)
        if (!equal(s->children[i], x.parts[i], y.parts[i])) return false;
      return true;
    case WreathShape::WrZ:
      if (x.k != y.k) return false;
      for (size_t i = 0; i < x.parts.size(); ++i)
        if (!equal(s->children[0], x.parts[i], y.parts[i])) return false;
      return true;
    case WreathShape::WrZ2:
      if (x.k != y.k || x.l != y.l) return false;
      for (size_t i = 0; i < x.parts.size(); ++i)
        if (!equal(s->children[0], x.parts[i], y.parts[i])) return false;
      return true;
    case WreathShape::Semidirect:
      return x.k == y.k && x.parts[0].idx == y.parts[0].idx;
  }
  return false;
}

WreathElement pow(const ShapePtr& s, const WreathElement& x, long long n) {
  if (n < 0) return pow(s, inv(s, x), -n);
  WreathElement acc = identity(s), sq = x;
  while (n > 0) {
    if (n & 1) acc = mul(s, acc, sq);
    n >>= 1;
    if (n) sq = mul(s, sq, sq);
  }
  return acc;
}

std::optional<long long> order_of(const ShapePtr& s, const WreathElement& x,
                                  long long bound) {
  if (bound < 1) throw std::invalid_argument("order_of: bound >= 1 required");
  WreathElement e = identity(s), cur = x;
  for (long long n = 1; n <= bound; ++n) {
    if (equal(s, cur, e)) return n;
    cur = mul(s, cur, x);
  }
  return std::nullopt;
}

std::vector<WreathElement> garside(const ShapePtr& s) {
  if (s->kind == WreathShape::WrZ) {
    WreathElement g = identity(s);
    g.k = s->m;
    return {g};
  }
  if (s->kind == WreathShape::WrZ2) {
    WreathElement a = identity(s), b = identity(s);
    a.k = s->m;
    b.l = s->n;
    return {a, b};
  }
  throw ShapeError("garside: shape is not a wreath with Z");
}

namespace {

std::vector<WreathElement> commuting_generators(const ShapePtr& s) {
  std::vector<WreathElement> gens;
  const ShapePtr& inner = s->children[0];
  size_t coords = s->kind == WreathShape::WrZ
                      ? static_cast<size_t>(s->m)
                      : static_cast<size_t>(s->m * s->n);
  std::vector<WreathElement> inner_gens;
  if (inner->kind == WreathShape::Base && !inner->base->integers) {
    for (int g : inner->base->generators) {
      WreathElement e;
      e.idx = g;
      inner_gens.push_back(e);
    }
  } else if (inner->kind == WreathShape::Base && inner->base->integers) {
    WreathElement e;
    e.value = 1;
    inner_gens.push_back(e);
  } else {
    throw ShapeError("is_central: centrality check needs a base-group inner shape");
  }
  for (size_t c = 0; c < coords; ++c)
    for (auto& ig : inner_gens) {
      WreathElement e = identity(s);
      e.parts[c] = ig;
      gens.push_back(e);
    }
  WreathElement t = identity(s);
  t.k = 1;
  gens.push_back(t);
  if (s->kind == WreathShape::WrZ2) {
    WreathElement u = identity(s);
    u.l = 1;
    gens.push_back(u);
  }
  return gens;
}

}  // namespace

bool is_central(const ShapePtr& s, const WreathElement& x) {
  if (s->kind != WreathShape::WrZ && s->kind != WreathShape::WrZ2)
    throw ShapeError("is_central: WrZ/WrZ2 shape required");
  for (auto& g : commuting_generators(s))
    if (!equal(s, mul(s, x, g), mul(s, g, x))) return false;
  return true;
}

bool is_central_closed_form(const ShapePtr& s, const WreathElement& x) {
  if (s->kind != WreathShape::WrZ && s->kind != WreathShape::WrZ2)
    throw ShapeError("is_central_closed_form: WrZ/WrZ2 shape required");
  const ShapePtr& inner = s->children[0];
  if (inner->kind != WreathShape::Base)
    throw ShapeError("is_central_closed_form: base-group inner shape required");
  for (size_t i = 1; i < x.parts.size(); ++i)
    if (!equal(inner, x.parts[i], x.parts[0])) return false;
  if (inner->base->integers) {
    // Z(Z) = Z: coordinate always central
  } else if (!inner->base->center_mask()[x.parts[0].idx]) {
    return false;
  }
  if (x.k % s->m != 0) return false;
  if (s->kind == WreathShape::WrZ2 && x.l % s->n != 0) return false;
  return true;
}

AbelianImage abelianize_map(const ShapePtr& s, const WreathElement& x) {
  if (s->kind != WreathShape::WrZ && s->kind != WreathShape::WrZ2)
    throw ShapeError("abelianize_map: WrZ/WrZ2 shape required");
  const ShapePtr& inner = s->children[0];
  if (inner->kind != WreathShape::Base)
    throw ShapeError("abelianize_map: base-group inner shape required");
  AbelianImage out;
  out.k = x.k;
  out.l = s->kind == WreathShape::WrZ2 ? x.l : 0;
  if (inner->base->integers) {
    for (auto& p : x.parts) out.base_sum += p.value;
  } else {
    int prodv = inner->base->id;
    for (auto& p : x.parts) prodv = inner->base->mul(prodv, p.idx);
    out.base_coset = inner->base->abelian_coset()[prodv];
  }
  return out;
}

AbelianImage abelian_mul(const ShapePtr& s, const AbelianImage& a,
                         const AbelianImage& b) {
  const BasePtr& base = s->children[0]->base;
  AbelianImage r;
  r.k = a.k + b.k;
  r.l = a.l + b.l;
  if (base->integers) {
    r.base_sum = a.base_sum + b.base_sum;
  } else {
    // cosets multiply via representatives
    int n = base->size();
    int ra = -1, rb = -1;
    for (int v = 0; v < n && (ra < 0 || rb < 0); ++v) {
      if (ra < 0 && base->abelian_coset()[v] == a.base_coset) ra = v;
      if (rb < 0 && base->abelian_coset()[v] == b.base_coset) rb = v;
    }
    r.base_coset = base->abelian_coset()[base->mul(ra, rb)];
  }
  return r;
}

bool abelian_trivial(const ShapePtr& s, const AbelianImage& a) {
  const BasePtr& base = s->children[0]->base;
  if (a.k != 0 || a.l != 0) return false;
  if (base->integers) return a.base_sum == 0;
  return a.base_coset == base->abelian_coset()[base->id];
}

bool in_derived(const ShapePtr& s, const WreathElement& x) {
  if (s->kind != WreathShape::WrZ && s->kind != WreathShape::WrZ2)
    throw ShapeError("in_derived: WrZ/WrZ2 shape required");
  const ShapePtr& inner = s->children[0];
  if (x.k != 0) return false;
  if (s->kind == WreathShape::WrZ2 && x.l != 0) return false;
  if (inner->base->integers) {
    long long sum = 0;
    for (auto& p : x.parts) sum += p.value;
    return sum == 0;  // Z' = {0}
  }
  int prodv = inner->base->id;
  for (auto& p : x.parts) prodv = inner->base->mul(prodv, p.idx);
  return inner->base->derived_mask()[prodv];
}

bool splits_as_direct_product(const BasePtr& g,
                              const std::vector<std::vector<int>>& subgroups) {
  if (g->integers) throw SubgroupError("splits: finite group required");
  int n = g->size();
  for (auto& sub : subgroups) {
    std::set<int> set(sub.begin(), sub.end());
    if (!set.count(g->id)) throw SubgroupError("subset lacks identity");
    for (int a : set) {
      if (a < 0 || a >= n) throw SubgroupError("element out of range");
      if (!set.count(g->inv[a])) throw SubgroupError("subset not closed under inverse");
      for (int b : set)
        if (!set.count(g->mul(a, b)))
          throw SubgroupError("subset not closed under multiplication");
    }
  }
  // criterion: pairwise commuting, pairwise trivial intersection, generating
  for (size_t i = 0; i < subgroups.size(); ++i)
    for (size_t j = i + 1; j < subgroups.size(); ++j) {
      for (int a : subgroups[i])
        for (int b : subgroups[j])
          if (g->mul(a, b) != g->mul(b, a)) return false;
      std::set<int> si(subgroups[i].begin(), subgroups[i].end());
      for (int b : subgroups[j])
        if (b != g->id && si.count(b)) return false;
    }
  // the product map must be bijective; with the above this amounts to
  // |G_1|...|G_k| = |G| and the products covering G
  std::set<int> products{g->id};
  for (auto& sub : subgroups) {
    std::set<int> next;
    for (int p : products)
      for (int a : sub) next.insert(g->mul(p, a));
    products = std::move(next);
  }
  BigInt card = 1;
  for (auto& sub : subgroups) card *= static_cast<long>(sub.size());
  return products.size() == static_cast<size_t>(n) && card == n;
}

SectionReport semidirect_from_section(const BasePtr& g, int k,
                                      const std::vector<int>& p_map,
                                      const std::vector<int>& s_map) {
  SectionReport rep;
  if (g->integers) throw SectionError("finite group required");
  int n = g->size();
  if (static_cast<int>(p_map.size()) != n) throw SectionError("p_map size mismatch");
  if (static_cast<int>(s_map.size()) != k) throw SectionError("s_map size mismatch");
  // p must be a homomorphism onto Z_k
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (p_map[g->mul(a, b)] != (p_map[a] + p_map[b]) % k)
        throw SectionError("p is not a homomorphism");
  // s must be a homomorphism with p(s(z)) = z
  for (int z1 = 0; z1 < k; ++z1) {
    if (p_map[s_map[z1]] != z1) throw SectionError("p(s(z)) != z");
    for (int z2 = 0; z2 < k; ++z2)
      if (g->mul(s_map[z1], s_map[z2]) != s_map[(z1 + z2) % k])
        throw SectionError("s is not a homomorphism");
  }
  // A = ker p; phi(z)(a) = s(z) a s(z)^-1; psi(a, z) = a s(z)
  std::vector<int> kernel;
  for (int a = 0; a < n; ++a)
    if (p_map[a] == 0) kernel.push_back(a);
  std::map<std::pair<int, int>, int> psi;
  std::set<int> image;
  for (int a : kernel)
    for (int z1 = 0; z1 < k; ++z1) {
      int v = g->mul(a, s_map[z1]);
      psi[{a, z1}] = v;
      image.insert(v);
    }
  if (image.size() != static_cast<size_t>(n)) {
    rep.detail = "psi not bijective";
    return rep;
  }
  // homomorphism: psi((a,z)(b,w)) = psi(a,z) psi(b,w),
  // with (a,z)(b,w) = (a * s(z) b s(z)^-1, z+w)
  for (int a : kernel)
    for (int z1 = 0; z1 < k; ++z1)
      for (int b : kernel)
        for (int z2 = 0; z2 < k; ++z2) {
          int conj = g->mul(g->mul(s_map[z1], b), g->inv[s_map[z1]]);
          int left = psi[{g->mul(a, conj), (z1 + z2) % k}];
          int right = g->mul(psi[{a, z1}], psi[{b, z2}]);
          ++rep.checked_pairs;
          if (left != right) {
            rep.detail = "psi not a homomorphism";
            return rep;
          }
        }
  rep.ok = true;
  rep.detail = "isomorphism confirmed";
  return rep;
}

std::string to_string(const ShapePtr& s, const WreathElement& x) {
  switch (s->kind) {
    case WreathShape::Base:
      return s->base->integers ? std::to_string(x.value) : s->base->names[x.idx];
    case WreathShape::Prod: {
      std::string out = "[";
      for (size_t i = 0; i < x.parts.size(); ++i) {
        if (i) out += ",";
        out += to_string(s->children[i], x.parts[i]);
      }
      return out + "]";
    }
    case WreathShape::WrZ: {
      std::string out = "(";
      for (size_t i = 0; i < x.parts.size(); ++i) {
        if (i) out += ",";
        out += to_string(s->children[0], x.parts[i]);
      }
      return out + "; " + std::to_string(x.k) + ")";
    }
    case WreathShape::WrZ2: {
      std::string out = "({";
      for (long i = 0; i < s->m; ++i) {
        if (i) out += " | ";
        for (long j = 0; j < s->n; ++j) {
          if (j) out += ",";
          out += to_string(s->children[0], x.parts[i * s->n + j]);
        }
      }
      return out + "}; " + std::to_string(x.k) + "," + std::to_string(x.l) + ")";
    }
    case WreathShape::Semidirect:
      return "(" + to_string(s->children[0], x.parts[0]) + "; " +
             std::to_string(x.k) + ")";
  }
  return "?";
}

WreathElement random_element(const ShapePtr& s, std::uint64_t seed, long range) {
  std::uint64_t state = seed;
  auto next = [&]() {
    state = splitmix64(state);
    return state;
  };
  std::function<WreathElement(const ShapePtr&)> gen =
      [&](const ShapePtr& sh) -> WreathElement {
    WreathElement e;
    switch (sh->kind) {
      case WreathShape::Base:
        if (sh->base->integers)
          e.value = static_cast<long long>(next() % (2 * range + 1)) - range;
        else
          e.idx = static_cast<int>(next() % sh->base->size());
        return e;
      case WreathShape::Prod:
        for (auto& c : sh->children) e.parts.push_back(gen(c));
        return e;
      case WreathShape::WrZ:
        for (long i = 0; i < sh->m; ++i) e.parts.push_back(gen(sh->children[0]));
        e.k = static_cast<long long>(next() % (2 * range + 1)) - range;
        return e;
      case WreathShape::WrZ2:
        for (long i = 0; i < sh->m * sh->n; ++i)
          e.parts.push_back(gen(sh->children[0]));
        e.k = static_cast<long long>(next() % (2 * range + 1)) - range;
        e.l = static_cast<long long>(next() % (2 * range + 1)) - range;
        return e;
      case WreathShape::Semidirect:
        e.parts.push_back(gen(sh->children[0]));
        e.k = sh->actor_mod > 0
                  ? static_cast<long long>(next() % sh->actor_mod)
                  : static_cast<long long>(next() % (2 * range + 1)) - range;
        return e;
    }
    throw ShapeError("random_element: bad shape");
  };
  return gen(s);
}

}  // namespace orbitcalc::wr
