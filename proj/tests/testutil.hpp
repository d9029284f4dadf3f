#pragma once

// Shared generators and independent oracles for the test suites.

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "orbitcalc/numbers.hpp"
#include "orbitcalc/orbit.hpp"
#include "orbitcalc/reebmodel.hpp"
#include "orbitcalc/seqcalc.hpp"

namespace testutil {

using orbitcalc::Rational;
namespace reeb = orbitcalc::reeb;
namespace sq = orbitcalc::sq;
namespace gx = orbitcalc::gx;

inline std::uint64_t env_seed(std::uint64_t fallback = 0xC0FFEEULL) {
  const char* s = std::getenv("ORBITCALC_SEED");
  if (!s) return fallback;
  return std::strtoull(s, nullptr, 10);
}

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  long pick(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(eng() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(double p) { return (eng() % 10000) < p * 10000; }
};

// ---------------------------------------------------------------------------
// Random Morse models. Saddles are single critical points with p = 2; in
// generic mode every level is distinct, in simple mode a saddle may carry two
// cloned equal-level sub-branches (inferred rotation of order 2).

struct TreeGen {
  Rng rng;
  bool allow_twins;
  bool distinct_levels;
  long counter = 0;
  reeb::ReebModel m;

  TreeGen(std::uint64_t seed, bool twins, bool generic)
      : rng(seed), allow_twins(twins), distinct_levels(generic) {}

  int vertex(reeb::VK kind, long level, std::vector<long> crit = {}) {
    reeb::Vertex v;
    v.kind = kind;
    v.crit = std::move(crit);
    switch (kind) {
      case reeb::VK::Boundary: v.id = "b"; break;
      case reeb::VK::NonDegExtreme: v.id = "m"; break;
      case reeb::VK::DegExtreme: v.id = "d"; break;
      default: v.id = "s"; break;
    }
    v.id += std::to_string(m.verts.size());
    v.level = Rational(level * 1000 + (distinct_levels ? counter++ : 0));
    m.verts.push_back(std::move(v));
    return static_cast<int>(m.verts.size() - 1);
  }

  // fresh branch above `level`; returns its top vertex (no parent edge yet)
  int branch(long depth, long level) {
    if (depth <= 0 || rng.chance(0.4))
      return vertex(reeb::VK::NonDegExtreme, level + 1);
    int s = vertex(reeb::VK::CriticalLeaf, level + 1, {2});
    int a = branch(depth - 1, level + 1);
    int b = (allow_twins && !distinct_levels && rng.chance(0.45))
                ? copy_subtree(a)
                : branch(depth - 1, level + 1);
    m.edges.push_back({s, a});
    m.edges.push_back({s, b});
    return s;
  }

  // deep copy of a just-grown branch rooted at v (its edges only reference
  // branch-internal vertices)
  int copy_subtree(int v) {
    std::map<int, int> remap;
    std::vector<std::array<int, 2>> old_edges = m.edges;
    std::function<int(int)> rec = [&](int u) -> int {
      reeb::Vertex nv = m.verts[u];
      nv.id += "t" + std::to_string(m.verts.size());
      m.verts.push_back(nv);
      int nid = static_cast<int>(m.verts.size() - 1);
      remap[u] = nid;
      for (auto& e : old_edges) {
        int child = -1;
        if (e[0] == u) child = e[1];
        else if (e[1] == u) child = e[0];
        if (child >= 0 && !remap.count(child))
          m.edges.push_back({nid, rec(child)});
      }
      return nid;
    };
    return rec(v);
  }

  reeb::ReebModel disk(long depth) {
    m = reeb::ReebModel{};
    m.surface = reeb::Surface::disk();
    counter = 1;
    int b = vertex(reeb::VK::Boundary, -1);
    int top = branch(depth, 0);
    m.edges.push_back({b, top});
    m.X = {b};
    return m;
  }

  reeb::ReebModel cylinder(long depth, bool equal_signs) {
    m = reeb::ReebModel{};
    m.surface = reeb::Surface::cylinder();
    counter = 1;
    int b0 = vertex(reeb::VK::Boundary, -2);
    if (equal_signs) {
      // both ends at the bottom: a saddle necessarily joins them
      int b1 = vertex(reeb::VK::Boundary, -2);
      int s = vertex(reeb::VK::CriticalLeaf, 0, {2});
      m.edges.push_back({b0, s});
      m.edges.push_back({b1, s});
      m.edges.push_back({s, branch(depth, 0)});
      m.X = {b0, b1};
      return m;
    }
    int prev = b0;
    long level = -1;
    long chain = rng.pick(0, depth);
    for (long i = 0; i < chain; ++i) {
      int s = vertex(reeb::VK::CriticalLeaf, level + 1, {2});
      m.edges.push_back({prev, s});
      m.edges.push_back({s, branch(depth - 1, level + 1)});
      prev = s;
      ++level;
    }
    int b1 = vertex(reeb::VK::Boundary, level + 5);
    m.edges.push_back({prev, b1});
    m.X = {b0, b1};
    return m;
  }

  // torus containing a cycle of `rot` identical periods; the detected
  // rotation order is rot, or 2*rot when a 2-entry period happens to repeat
  reeb::ReebModel torus_cycle(long depth, long rot, long period_len) {
    m = reeb::ReebModel{};
    m.surface = reeb::Surface::torus();
    m.target_circle = true;
    counter = 0;
    std::vector<int> period;
    for (long i = 0; i < period_len; ++i) {
      int s = vertex(reeb::VK::CriticalLeaf, 0, {2});
      m.edges.push_back({s, branch(depth, 0)});
      period.push_back(s);
    }
    std::vector<int> ring(period);
    for (long r = 1; r < rot; ++r)
      for (int s : period) ring.push_back(copy_subtree(s));
    long L = static_cast<long>(ring.size());
    for (long i = 0; i < L; ++i)
      m.edges.push_back({ring[i], ring[(i + 1) % L]});
    for (auto& v : m.verts) v.level.reset();  // S1-valued, no level data
    m.X.clear();
    return m;
  }
};

// ---------------------------------------------------------------------------
// Backtracking decorated-tree isomorphism: the independent oracle that
// canonical_code is compared against.

inline bool tree_iso(const reeb::ReebModel& a, int va, int ea,
                     const reeb::ReebModel& b, int vb, int eb) {
  auto label = [](const reeb::ReebModel& m, int v) {
    const reeb::Vertex& vv = m.verts[v];
    std::string s = std::to_string(static_cast<int>(vv.kind)) + ":" +
                    std::to_string(vv.m) + (vv.dihedral ? "d" : "");
    auto c = vv.crit;
    std::sort(c.begin(), c.end());
    for (long p : c) s += "." + std::to_string(p);
    if (std::count(m.X.begin(), m.X.end(), v)) s += "@";
    if (m.strict_levels && vv.level) {
      std::ostringstream o;
      o << *vv.level;
      s += "L" + o.str();
    }
    return s;
  };
  if (label(a, va) != label(b, vb)) return false;
  std::vector<std::pair<int, int>> ka, kb;  // (edge, child)
  for (int e : a.incident(va))
    if (e != ea) ka.push_back({e, a.other_end(e, va)});
  for (int e : b.incident(vb))
    if (e != eb) kb.push_back({e, b.other_end(e, vb)});
  if (ka.size() != kb.size()) return false;
  std::vector<bool> used(kb.size(), false);
  std::function<bool(size_t)> match = [&](size_t i) -> bool {
    if (i == ka.size()) return true;
    for (size_t j = 0; j < kb.size(); ++j) {
      if (used[j]) continue;
      if (tree_iso(a, ka[i].second, ka[i].first, b, kb[j].second, kb[j].first)) {
        used[j] = true;
        if (match(i + 1)) return true;
        used[j] = false;
      }
    }
    return false;
  };
  return match(0);
}

// ---------------------------------------------------------------------------
// Realization: a disk/cylinder model whose boundary sequence is a given
// product/wreath build (constructive direction of the realization theorems
// at census scale). Input must be a normalized build over
// {triv, z(m), prod, wr}; z(m >= 2) is realized as wr(triv, m) twins.

inline int realize_branch(reeb::ReebModel& m, const sq::SPtr& s, long& level);

// a critical leaf carrying `mm` copies of `inner` plus an optional fixed
// branch; returns the leaf vertex
inline int realize_wr_leaf(reeb::ReebModel& m, const sq::SPtr& inner, long mm,
                           long& level, int fixed_branch) {
  reeb::Vertex leaf;
  leaf.id = "k" + std::to_string(m.verts.size());
  leaf.kind = reeb::VK::CriticalLeaf;
  long branches = mm + (fixed_branch >= 0 ? 1 : 0);
  leaf.crit = {branches};  // p+1 adjacent regions on a planar surface
  leaf.level = Rational(level++);
  m.verts.push_back(leaf);
  int lv = static_cast<int>(m.verts.size() - 1);
  std::vector<int> orbit_edges;
  long child_base = level;
  long child_end = level;
  for (long i = 0; i < mm; ++i) {
    long lvl = child_base;  // twins share their level range
    int c = realize_branch(m, inner, lvl);
    child_end = std::max(child_end, lvl);
    orbit_edges.push_back(static_cast<int>(m.edges.size()));
    m.edges.push_back({lv, c});
  }
  level = child_end;
  std::vector<int> fixed;
  if (fixed_branch >= 0) {
    fixed.push_back(static_cast<int>(m.edges.size()));
    m.edges.push_back({lv, fixed_branch});
  }
  if (mm >= 2) {
    reeb::SymAnnot ann;
    ann.leaf = lv;
    ann.m = mm;
    ann.fixed = fixed;  // the root-side edge is appended once the tree is built
    ann.orbits = {orbit_edges};
    m.symmetry.push_back(ann);
  }
  return lv;
}

inline int realize_branch(reeb::ReebModel& m, const sq::SPtr& s, long& level) {
  using sq::BK;
  switch (s->build) {
    case BK::Triv: {
      reeb::Vertex v;
      v.id = "m" + std::to_string(m.verts.size());
      v.kind = reeb::VK::NonDegExtreme;
      v.level = Rational(level++);
      m.verts.push_back(v);
      return static_cast<int>(m.verts.size() - 1);
    }
    case BK::Zseq: {
      if (s->m == 1) return realize_wr_leaf(m, sq::triv(), 1, level, -1);
      return realize_wr_leaf(m, sq::triv(), s->m, level, -1);  // z(m) = wr(triv,m)
    }
    case BK::Wr:
      return realize_wr_leaf(m, s->parts[0], s->m, level, -1);
    case BK::Prod: {
      // chain the factors: each leaf's fixed branch continues the chain
      int below = -1;
      for (auto& f : s->parts) {
        if (f->build == BK::Wr)
          below = realize_wr_leaf(m, f->parts[0], f->m, level, below);
        else if (f->build == BK::Zseq && f->m == 1)
          below = realize_wr_leaf(m, sq::triv(), 1, level, below);
        else if (f->build == BK::Zseq)
          below = realize_wr_leaf(m, sq::triv(), f->m, level, below);
        else
          throw std::runtime_error("realize: unsupported product factor");
      }
      return below;
    }
    default:
      throw std::runtime_error("realize: unsupported build");
  }
}

inline reeb::ReebModel realize_disk(const sq::SPtr& s) {
  reeb::ReebModel m;
  m.surface = reeb::Surface::disk();
  reeb::Vertex b;
  b.id = "b";
  b.kind = reeb::VK::Boundary;
  b.level = Rational(-1);
  m.verts.push_back(b);
  long level = 1;
  int top = realize_branch(m, s, level);
  m.edges.push_back({0, top});
  m.X = {0};
  // every annotated leaf must fix its edge toward the boundary root
  std::vector<int> parent_edge(m.verts.size(), -1);
  std::vector<bool> seen(m.verts.size(), false);
  std::queue<int> q;
  q.push(0);
  seen[0] = true;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int e : m.incident(v)) {
      int w = m.other_end(e, v);
      if (!seen[w]) {
        seen[w] = true;
        parent_edge[w] = e;
        q.push(w);
      }
    }
  }
  for (auto& ann : m.symmetry)
    if (parent_edge[ann.leaf] >= 0 &&
        !std::count(ann.fixed.begin(), ann.fixed.end(), parent_edge[ann.leaf]))
      ann.fixed.push_back(parent_edge[ann.leaf]);
  return m;
}

// every ssZBtPt build of nesting depth <= `depth` with wreath parameter 2
inline std::vector<sq::SPtr> enumerate_ssZBtPt(int depth) {
  std::vector<sq::SPtr> layer{sq::triv()};
  std::set<std::string> seen{sq::build_signature(sq::triv())};
  std::vector<sq::SPtr> all{sq::triv()};
  for (int d = 1; d <= depth; ++d) {
    std::vector<sq::SPtr> next;
    auto add = [&](const sq::SPtr& s) {
      if (seen.insert(sq::build_signature(s)).second) {
        next.push_back(s);
        all.push_back(s);
      }
    };
    std::vector<sq::SPtr> base = all;
    for (auto& s : base) {
      add(sq::wr(s, 1));
      add(sq::wr(s, 2));
    }
    for (size_t i = 0; i < base.size(); ++i)
      for (size_t j = i; j < base.size(); ++j)
        add(sq::product(base[i], base[j]));
    layer = std::move(next);
  }
  return all;
}

}  // namespace testutil
