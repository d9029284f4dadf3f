#include "orbitcalc/reebmodel.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>

#include <json.hpp>

namespace orbitcalc::reeb {

using nlohmann::json;

std::vector<int> ReebModel::incident(int v) const {
  std::vector<int> out;
  for (size_t e = 0; e < edges.size(); ++e) {
    if (edges[e][0] == v) out.push_back(static_cast<int>(e));
    if (edges[e][1] == v && edges[e][0] != v) out.push_back(static_cast<int>(e));
  }
  return out;
}

int ReebModel::other_end(int e, int v) const {
  return edges[e][0] == v ? edges[e][1] : edges[e][0];
}

int ReebModel::vertex_by_id(const std::string& id) const {
  for (size_t i = 0; i < verts.size(); ++i)
    if (verts[i].id == id) return static_cast<int>(i);
  return -1;
}

long ReebModel::surface_chi_from_leaves() const {
  long s = 0;
  for (auto& v : verts) s += v.chi();
  return s;
}

int cycle_rank(const ReebModel& m) {
  if (m.is_torus_fibration()) return 1;  // the graph is a single circle
  long E = static_cast<long>(m.edges.size());
  long V = static_cast<long>(m.verts.size());
  return static_cast<int>(E - V + 1);
}

namespace {

bool connected(const ReebModel& m) {
  if (m.verts.empty()) return false;
  std::vector<bool> seen(m.verts.size(), false);
  std::queue<int> q;
  q.push(0);
  seen[0] = true;
  size_t count = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int e : m.incident(v)) {
      int w = m.other_end(e, v);
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        q.push(w);
      }
    }
  }
  return count == m.verts.size();
}

std::string rat_str(const Rational& r) {
  std::ostringstream o;
  o << r;
  return o.str();
}

}  // namespace

std::vector<Diagnostic> validate(const ReebModel& m) {
  std::vector<Diagnostic> out;
  auto diag = [&](const std::string& code, const std::string& where,
                  const std::string& msg) {
    out.push_back({code, where, msg});
  };

  // surface sanity
  switch (m.surface.kind) {
    case Surface::Disk:
      if (m.surface.genus != 0 || m.surface.boundary != 1)
        diag("BAD_SURFACE", "surface", "disk requires genus 0, boundary 1");
      break;
    case Surface::Cylinder:
      if (m.surface.genus != 0 || m.surface.boundary != 2)
        diag("BAD_SURFACE", "surface", "cylinder requires genus 0, boundary 2");
      break;
    case Surface::Torus:
      if (m.surface.genus != 1 || m.surface.boundary != 0)
        diag("BAD_SURFACE", "surface", "torus requires genus 1, boundary 0");
      break;
    case Surface::Generic:
      if (m.surface.euler() >= 0)
        diag("BAD_SURFACE", "surface",
             "generic surfaces must have negative Euler characteristic; use the named kinds");
      break;
  }

  if (m.is_torus_fibration()) return out;  // circle graph, nothing else applies
  if (m.fibration_degree > 0)
    diag("BAD_FIBRATION", "fibration_degree",
         "fibration models must be a torus with an empty graph");

  if (m.verts.empty()) {
    diag("EMPTY", "graph", "no vertices");
    return out;
  }
  for (auto& e : m.edges)
    if (e[0] < 0 || e[1] < 0 || e[0] >= static_cast<int>(m.verts.size()) ||
        e[1] >= static_cast<int>(m.verts.size()))
      diag("BAD_EDGE", "edges", "edge endpoint out of range");
  if (!out.empty()) return out;

  if (!connected(m)) diag("DISCONNECTED", "graph", "graph must be connected");

  int rank = cycle_rank(m);
  if (rank == 1 && m.surface.kind != Surface::Torus)
    diag("CYCLE_ON_TREE_SURFACE", "graph",
         "graph has a cycle but the surface forces a tree");
  if (rank > 1)
    diag("EXCESS_CYCLES", "graph",
         "graph has " + std::to_string(rank) + " independent cycles");

  long boundary_verts = 0;
  for (size_t i = 0; i < m.verts.size(); ++i) {
    const Vertex& v = m.verts[i];
    long deg = static_cast<long>(m.incident(static_cast<int>(i)).size());
    // count self-loops twice for degree purposes
    for (auto& e : m.edges)
      if (e[0] == static_cast<int>(i) && e[1] == static_cast<int>(i)) ++deg;
    switch (v.kind) {
      case VK::Boundary:
        ++boundary_verts;
        if (deg != 1) diag("BAD_DEGREE", v.id, "boundary circle must have degree 1");
        break;
      case VK::NonDegExtreme:
        if (deg != 1) diag("BAD_DEGREE", v.id, "extreme must have degree 1");
        break;
      case VK::DegExtreme:
        if (deg != 1) diag("BAD_DEGREE", v.id, "extreme must have degree 1");
        if (v.m < 2) diag("BAD_SYMMETRY_INDEX", v.id, "degenerate extreme needs m >= 2");
        break;
      case VK::CriticalLeaf: {
        if (v.crit.empty())
          diag("BAD_CRIT", v.id, "critical leaf needs its branch counts");
        for (long p : v.crit)
          if (p < 1) diag("BAD_CRIT", v.id, "branch count must be >= 1");
        long cap = 2 - v.chi();
        bool planar_only = m.surface.kind == Surface::Disk ||
                           m.surface.kind == Surface::Cylinder;
        if (planar_only && deg != cap)
          diag("BAD_DEGREE", v.id,
               "critical leaf degree must be " + std::to_string(cap) +
                   " on a planar surface");
        if (!planar_only && (deg > cap || (cap - deg) % 2 != 0))
          diag("BAD_DEGREE", v.id, "critical leaf degree incompatible with its type");
        break;
      }
      case VK::Framing:
        diag("BAD_KIND", v.id, "framing vertices only appear in enhanced graphs");
        break;
    }
  }
  if (boundary_verts != m.surface.boundary)
    diag("BOUNDARY_MISMATCH", "graph",
         "surface has " + std::to_string(m.surface.boundary) +
             " boundary circles but the graph has " + std::to_string(boundary_verts));

  long chi = m.surface_chi_from_leaves();
  if (chi != m.surface.euler())
    diag("EULER_MISMATCH", "graph",
         "leaf data sums to chi = " + std::to_string(chi) + ", surface needs " +
             std::to_string(m.surface.euler()));

  // levels orient edges for real-valued targets
  if (!m.target_circle) {
    for (size_t e = 0; e < m.edges.size(); ++e) {
      auto& a = m.verts[m.edges[e][0]];
      auto& b = m.verts[m.edges[e][1]];
      if (a.level && b.level && *a.level == *b.level &&
          m.edges[e][0] != m.edges[e][1])
        diag("LEVEL_ORIENTATION", a.id + "-" + b.id,
             "edge endpoints share the level " + rat_str(*a.level));
    }
  }

  for (int x : m.X) {
    if (x < 0 || x >= static_cast<int>(m.verts.size())) {
      diag("BAD_X", "X", "X member out of range");
      continue;
    }
    VK k = m.verts[x].kind;
    if (k != VK::Boundary && k != VK::NonDegExtreme && k != VK::DegExtreme)
      diag("BAD_X", m.verts[x].id,
           "adapted sets contain boundary circles and extremes only");
  }

  for (auto& [v, order] : m.ribbon) {
    if (v < 0 || v >= static_cast<int>(m.verts.size())) {
      diag("BAD_RIBBON", "ribbon", "vertex out of range");
      continue;
    }
    auto inc = m.incident(v);
    std::multiset<int> a(inc.begin(), inc.end()), b(order.begin(), order.end());
    if (a != b)
      diag("BAD_RIBBON", m.verts[v].id,
           "ribbon order must be a permutation of the incident edges");
  }

  for (auto& ann : m.symmetry) {
    if (ann.leaf < 0 || ann.leaf >= static_cast<int>(m.verts.size()) ||
        m.verts[ann.leaf].kind != VK::CriticalLeaf) {
      diag("BAD_SYMMETRY", "symmetry", "annotation target must be a critical leaf");
      continue;
    }
    const std::string& id = m.verts[ann.leaf].id;
    if (ann.m < 1) diag("BAD_SYMMETRY", id, "m >= 1 required");
    auto inc = m.incident(ann.leaf);
    std::set<int> incs(inc.begin(), inc.end());
    std::set<int> covered;
    bool dup = false;
    auto touch = [&](int e) {
      if (!incs.count(e)) diag("BAD_SYMMETRY", id, "annotation edge not incident");
      if (!covered.insert(e).second) dup = true;
    };
    for (int e : ann.fixed) touch(e);
    for (auto& blk : ann.orbits) {
      if (static_cast<long>(blk.size()) != ann.m)
        diag("BAD_SYMMETRY", id, "orbit block size must equal m");
      for (int e : blk) touch(e);
      // branches in one orbit must carry isomorphic decorated subgraphs
      if (rank == 0 && blk.size() >= 2) {
        std::string c0 =
            canonical_code(m, m.other_end(blk[0], ann.leaf), blk[0]);
        for (size_t i = 1; i < blk.size(); ++i)
          if (canonical_code(m, m.other_end(blk[i], ann.leaf), blk[i]) != c0)
            diag("BAD_SYMMETRY", id, "orbit mixes non-isomorphic branches");
      }
    }
    if (dup) diag("BAD_SYMMETRY", id, "annotation repeats an edge");
    if (covered != incs)
      diag("BAD_SYMMETRY", id, "annotation must cover every incident edge");
    if (ann.m >= 2 && static_cast<long>(ann.fixed.size()) > 2)
      diag("BAD_SYMMETRY", id, "a semifree action fixes at most two regions");
  }

  return out;
}

std::vector<int> internal_edges(const ReebModel& m, const std::vector<int>& X) {
  std::set<int> xs(X.begin(), X.end());
  auto qualifies = [&](int v) {
    if (xs.count(v)) return true;
    const Vertex& vv = m.verts[v];
    if (vv.kind == VK::DegExtreme) return true;
    if (vv.kind == VK::CriticalLeaf)
      return vv.has_saddle();
    return false;
  };
  std::vector<int> out;
  for (size_t e = 0; e < m.edges.size(); ++e)
    if (qualifies(m.edges[e][0]) && qualifies(m.edges[e][1]))
      out.push_back(static_cast<int>(e));
  return out;
}

long pi0_delta_rank(const ReebModel& m, const std::vector<int>& X) {
  return static_cast<long>(internal_edges(m, X).size());
}

namespace {

std::string vertex_label(const ReebModel& m, int v) {
  const Vertex& vv = m.verts[v];
  std::ostringstream o;
  switch (vv.kind) {
    case VK::Boundary: o << "B"; break;
    case VK::NonDegExtreme: o << "E"; break;
    case VK::DegExtreme: o << "D" << vv.m << (vv.dihedral ? "d" : ""); break;
    case VK::CriticalLeaf: {
      o << "C";
      std::vector<long> c = vv.crit;
      std::sort(c.begin(), c.end());
      for (long p : c) o << "." << p;
      break;
    }
    case VK::Framing: o << "F"; break;
  }
  if (std::count(m.X.begin(), m.X.end(), v)) o << "@";
  if (m.strict_levels && vv.level) o << "L" << rat_str(*vv.level);
  return o.str();
}

std::string code_rec(const ReebModel& m, int v, int from_edge,
                     std::set<int>& active) {
  if (!active.insert(v).second)
    throw ModelError("canonical_code: cycle through vertex " + m.verts[v].id);
  std::vector<std::string> kids;
  for (int e : m.incident(v)) {
    if (e == from_edge) continue;
    kids.push_back(code_rec(m, m.other_end(e, v), e, active));
  }
  active.erase(v);
  std::sort(kids.begin(), kids.end());
  std::string out = "(" + vertex_label(m, v);
  for (auto& k : kids) out += k;
  return out + ")";
}

}  // namespace

std::string canonical_code(const ReebModel& m, int vertex, int from_edge) {
  std::set<int> active;
  return code_rec(m, vertex, from_edge, active);
}

namespace {

bool branch_contains_boundary(const ReebModel& m, int v, int from_edge) {
  if (m.verts[v].kind == VK::Boundary) return true;
  for (int e : m.incident(v)) {
    if (e == from_edge) continue;
    if (branch_contains_boundary(m, m.other_end(e, v), e)) return true;
  }
  return false;
}

// smallest positive d such that rotating the word by d reproduces it
template <typename T>
long cyclic_period(const std::vector<T>& w) {
  long L = static_cast<long>(w.size());
  for (long d = 1; d <= L; ++d) {
    if (L % d != 0) continue;
    bool ok = true;
    for (long i = 0; i < L && ok; ++i) ok = w[i] == w[(i + d) % L];
    if (ok) return d;
  }
  return L;
}

}  // namespace

ResolvedSymmetry resolve_symmetry(const ReebModel& m, int leaf, int root_edge) {
  const Vertex& v = m.verts[leaf];
  if (v.kind != VK::CriticalLeaf)
    throw ModelError("resolve_symmetry: not a critical leaf");
  std::vector<int> branches;
  for (int e : m.incident(leaf))
    if (e != root_edge) branches.push_back(e);

  // explicit annotation wins
  for (auto& ann : m.symmetry) {
    if (ann.leaf != leaf) continue;
    ResolvedSymmetry rs;
    rs.m = ann.m;
    if (ann.m >= 2 &&
        !std::count(ann.fixed.begin(), ann.fixed.end(), root_edge))
      throw ModelError("annotation at " + v.id +
                       " does not fix the side toward X");
    for (int e : ann.fixed)
      if (e != root_edge) rs.fixed_edges.push_back(e);
    rs.orbit_blocks = ann.orbits;
    if (rs.m >= 2 && rs.fixed_edges.size() > 1)
      throw ModelError("annotation at " + v.id + " fixes too many regions");
    if (rs.m == 1) {
      rs.fixed_edges = branches;
      rs.orbit_blocks.clear();
    }
    return rs;
  }

  ResolvedSymmetry rs;
  // forced-fixed: branches containing boundary circles cannot move
  std::vector<int> movable;
  for (int e : branches) {
    if (branch_contains_boundary(m, m.other_end(e, leaf), e))
      rs.fixed_edges.push_back(e);
    else
      movable.push_back(e);
  }
  if (rs.fixed_edges.size() > 1)
    throw ModelError("leaf " + v.id + " has several boundary-side branches");

  auto codes = [&](const std::vector<int>& es) {
    std::vector<std::string> cs;
    for (int e : es) cs.push_back(canonical_code(m, m.other_end(e, leaf), e));
    return cs;
  };

  auto trivial = [&]() {
    rs.m = 1;
    rs.fixed_edges = branches;
    rs.orbit_blocks.clear();
    return rs;
  };

  if (movable.size() <= 1) return trivial();

  bool single_saddle = v.crit.size() == 1 && v.crit[0] == 2;
  auto it = m.ribbon.find(leaf);
  if (it != m.ribbon.end()) {
    // petals: the ribbon cycle with the root edge and forced-fixed edges removed
    std::vector<int> petals;
    for (int e : it->second)
      if (e != root_edge &&
          !std::count(rs.fixed_edges.begin(), rs.fixed_edges.end(), e))
        petals.push_back(e);
    auto w = codes(petals);
    long d = cyclic_period(w);
    long L = static_cast<long>(w.size());
    long mm = L / d;
    if (mm == 1) return trivial();
    rs.m = mm;
    for (long i = 0; i < d; ++i) {
      std::vector<int> blk;
      for (long j = i; j < L; j += d) blk.push_back(petals[j]);
      rs.orbit_blocks.push_back(blk);
    }
    return rs;
  }

  if (single_saddle && movable.size() == 2) {
    auto w = codes(movable);
    if (w[0] == w[1] && rs.fixed_edges.empty()) {
      rs.m = 2;
      rs.orbit_blocks = {movable};
      return rs;
    }
    return trivial();
  }

  // no ribbon, no annotation: sound only when no symmetry is possible
  auto w = codes(movable);
  std::set<std::string> distinct(w.begin(), w.end());
  if (distinct.size() == w.size()) return trivial();
  throw AmbiguousSymmetry("leaf " + v.id +
                          " has repeated branches but no ribbon data or annotation");
}

ReebModel infer_symmetry(const ReebModel& m) {
  ReebModel out = m;
  if (m.is_torus_fibration()) return out;
  // root side: toward the first X vertex, else toward the first boundary
  int root = m.X.empty() ? -1 : m.X[0];
  if (root < 0)
    for (size_t i = 0; i < m.verts.size() && root < 0; ++i)
      if (m.verts[i].kind == VK::Boundary) root = static_cast<int>(i);
  // BFS parent edges from the root (torus cycle handled by the orbit engine)
  std::vector<int> parent_edge(m.verts.size(), -1);
  if (root >= 0 && cycle_rank(m) == 0) {
    std::vector<bool> seen(m.verts.size(), false);
    std::queue<int> q;
    q.push(root);
    seen[root] = true;
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
  }
  out.symmetry.clear();
  for (size_t i = 0; i < m.verts.size(); ++i) {
    if (m.verts[i].kind != VK::CriticalLeaf) continue;
    ResolvedSymmetry rs =
        resolve_symmetry(m, static_cast<int>(i), parent_edge[i]);
    SymAnnot ann;
    ann.leaf = static_cast<int>(i);
    ann.m = rs.m;
    ann.fixed = rs.fixed_edges;
    if (parent_edge[i] >= 0) ann.fixed.push_back(parent_edge[i]);
    ann.orbits = rs.orbit_blocks;
    out.symmetry.push_back(std::move(ann));
  }
  return out;
}

ReebModel enhanced_graph(const ReebModel& m) {
  ReebModel out = m;
  size_t base = m.verts.size();
  for (size_t i = 0; i < base; ++i) {
    const Vertex& v = m.verts[i];
    if (v.kind != VK::DegExtreme) continue;
    long k = v.dihedral ? 2 * v.m : v.m;
    for (long j = 0; j < k; ++j) {
      Vertex f;
      f.id = v.id + "#f" + std::to_string(j);
      f.kind = VK::Framing;
      out.edges.push_back({static_cast<int>(i), static_cast<int>(out.verts.size())});
      out.verts.push_back(std::move(f));
    }
  }
  return out;
}

std::vector<Component> reduce(const ReebModel& m, const std::vector<int>& cut) {
  std::set<int> cutset(cut.begin(), cut.end());
  std::vector<Component> out;

  // collar piece per cut vertex: the vertex plus a stub per incident edge
  for (int c : cut) {
    Component col;
    col.collar = true;
    col.model.surface = Surface::cylinder();  // rough shape; see below
    col.model.target_circle = m.target_circle;
    Vertex v = m.verts[c];
    col.model.verts.push_back(v);
    int stubs = 0;
    for (int e : m.incident(c)) {
      Vertex s;
      s.id = m.verts[c].id + "~" + std::to_string(e);
      s.kind = VK::Boundary;
      col.model.verts.push_back(s);
      col.model.edges.push_back({0, static_cast<int>(col.model.verts.size() - 1)});
      col.xhat.push_back(static_cast<int>(col.model.verts.size() - 1));
      col.stub_edges.push_back(e);
      ++stubs;
    }
    long chi = v.chi();
    long b = stubs + (v.kind == VK::Boundary ? 1 : 0);
    if (chi == 1 && b == 1) col.model.surface = Surface::disk();
    else if (chi == 0 && b == 2) col.model.surface = Surface::cylinder();
    else col.model.surface = Surface::generic((2 - chi - b) / 2, b);
    out.push_back(std::move(col));
  }

  // complement components
  std::vector<int> comp(m.verts.size(), -1);
  int ncomp = 0;
  for (size_t i = 0; i < m.verts.size(); ++i) {
    if (comp[i] >= 0 || cutset.count(static_cast<int>(i))) continue;
    std::queue<int> q;
    q.push(static_cast<int>(i));
    comp[i] = ncomp;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int e : m.incident(v)) {
        int w = m.other_end(e, v);
        if (comp[w] < 0 && !cutset.count(w)) {
          comp[w] = ncomp;
          q.push(w);
        }
      }
    }
    ++ncomp;
  }

  for (int c = 0; c < ncomp; ++c) {
    Component piece;
    piece.model.target_circle = m.target_circle;
    piece.model.strict_levels = m.strict_levels;
    std::map<int, int> remap;
    for (size_t i = 0; i < m.verts.size(); ++i) {
      if (comp[i] != c) continue;
      remap[static_cast<int>(i)] = static_cast<int>(piece.model.verts.size());
      piece.model.verts.push_back(m.verts[i]);
    }
    std::map<int, int> edge_remap;
    for (size_t e = 0; e < m.edges.size(); ++e) {
      int a = m.edges[e][0], b = m.edges[e][1];
      bool a_in = remap.count(a), b_in = remap.count(b);
      if (a_in && b_in) {
        edge_remap[static_cast<int>(e)] =
            static_cast<int>(piece.model.edges.size());
        piece.model.edges.push_back({remap[a], remap[b]});
      } else if (a_in || b_in) {
        int inner = a_in ? a : b;
        Vertex s;
        s.id = "~" + std::to_string(e);
        s.kind = VK::Boundary;
        int sid = static_cast<int>(piece.model.verts.size());
        piece.model.verts.push_back(s);
        edge_remap[static_cast<int>(e)] =
            static_cast<int>(piece.model.edges.size());
        piece.model.edges.push_back({remap[inner], sid});
        piece.xhat.push_back(sid);
        piece.stub_edges.push_back(static_cast<int>(e));
      }
    }
    // carry over X membership, ribbon and symmetry annotations
    for (int x : m.X)
      if (remap.count(x)) {
        piece.model.X.push_back(remap[x]);
        piece.xhat.push_back(remap[x]);
      }
    for (int x : piece.xhat)
      if (!std::count(piece.model.X.begin(), piece.model.X.end(), x))
        piece.model.X.push_back(x);
    for (auto& [v, order] : m.ribbon) {
      if (!remap.count(v)) continue;
      std::vector<int> o2;
      for (int e : order) o2.push_back(edge_remap.at(e));
      piece.model.ribbon[remap.at(v)] = o2;
    }
    for (auto& ann : m.symmetry) {
      if (!remap.count(ann.leaf)) continue;
      SymAnnot a2;
      a2.leaf = remap.at(ann.leaf);
      a2.m = ann.m;
      for (int e : ann.fixed) a2.fixed.push_back(edge_remap.at(e));
      for (auto& blk : ann.orbits) {
        std::vector<int> b2;
        for (int e : blk) b2.push_back(edge_remap.at(e));
        a2.orbits.push_back(b2);
      }
      piece.model.symmetry.push_back(std::move(a2));
    }
    long chi = piece.model.surface_chi_from_leaves();
    long b = 0;
    for (auto& v : piece.model.verts)
      if (v.kind == VK::Boundary) ++b;
    if (chi == 1 && b == 1) piece.model.surface = Surface::disk();
    else if (chi == 0 && b == 2) piece.model.surface = Surface::cylinder();
    else if (chi == 0 && b == 0) piece.model.surface = Surface::torus();
    else piece.model.surface = Surface::generic((2 - chi - b) / 2, b);
    out.push_back(std::move(piece));
  }
  return out;
}

// --- JSON ------------------------------------------------------------------

namespace {

Rational parse_level(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
  }
  throw ModelError("level must be an integer or a \"p/q\" string");
}

json level_json(const Rational& r) {
  if (denominator(r) == 1 &&
      numerator(r) >= std::numeric_limits<long long>::min() &&
      numerator(r) <= std::numeric_limits<long long>::max())
    return json(numerator(r).convert_to<long long>());
  std::ostringstream o;
  o << r;
  return json(o.str());
}

}  // namespace

namespace {
ReebModel load_model_impl(const json& j);
}

ReebModel load_model(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ModelError(std::string("model JSON: ") + e.what());
  }
  try {
    return load_model_impl(j);
  } catch (const json::exception& e) {
    throw ModelError(std::string("model JSON: ") + e.what());
  }
}

namespace {
ReebModel load_model_impl(const json& j) {
  ReebModel m;
  if (!j.contains("surface")) throw ModelError("missing surface");
  std::string kind = j["surface"].value("kind", "");
  if (kind == "disk") m.surface = Surface::disk();
  else if (kind == "cylinder") m.surface = Surface::cylinder();
  else if (kind == "torus") m.surface = Surface::torus();
  else if (kind == "generic")
    m.surface = Surface::generic(j["surface"].value("genus", 0L),
                                 j["surface"].value("boundary", 0L));
  else if (kind == "sphere")
    throw ModelError("the sphere is out of scope");
  else
    throw ModelError("unknown surface kind '" + kind + "'");

  std::string target = j.value("target", "R");
  if (target == "S1") m.target_circle = true;
  else if (target != "R") throw ModelError("target must be R or S1");

  std::map<std::string, int> by_id;
  for (auto& vj : j.value("vertices", json::array())) {
    Vertex v;
    v.id = vj.value("id", "");
    if (v.id.empty()) throw ModelError("vertex without id");
    std::string k = vj.value("kind", "");
    if (k == "boundary") v.kind = VK::Boundary;
    else if (k == "nondeg_extreme") v.kind = VK::NonDegExtreme;
    else if (k == "deg_extreme") v.kind = VK::DegExtreme;
    else if (k == "critical") v.kind = VK::CriticalLeaf;
    else throw ModelError("vertex " + v.id + ": unknown kind '" + k + "'");
    v.m = vj.value("m", 0L);
    v.dihedral = vj.value("dihedral", false);
    if (vj.contains("crit_points"))
      for (auto& p : vj["crit_points"]) v.crit.push_back(p.get<long>());
    if (vj.contains("level")) v.level = parse_level(vj["level"]);
    if (!by_id.emplace(v.id, static_cast<int>(m.verts.size())).second)
      throw ModelError("duplicate vertex id " + v.id);
    m.verts.push_back(std::move(v));
  }
  for (auto& ej : j.value("edges", json::array())) {
    if (!ej.is_array() || ej.size() != 2) throw ModelError("edge must be a pair");
    auto idx = [&](const json& x) -> int {
      if (x.is_string()) {
        auto it = by_id.find(x.get<std::string>());
        if (it == by_id.end())
          throw ModelError("edge references unknown vertex " + x.get<std::string>());
        return it->second;
      }
      return x.get<int>();
    };
    m.edges.push_back({idx(ej[0]), idx(ej[1])});
  }
  if (j.contains("ribbon"))
    for (auto& [key, val] : j["ribbon"].items()) {
      auto it = by_id.find(key);
      if (it == by_id.end()) throw ModelError("ribbon references unknown vertex " + key);
      std::vector<int> order;
      for (auto& e : val) order.push_back(e.get<int>());
      m.ribbon[it->second] = std::move(order);
    }
  if (j.contains("symmetry"))
    for (auto& aj : j["symmetry"]) {
      SymAnnot a;
      std::string leaf = aj.value("leaf", "");
      auto it = by_id.find(leaf);
      if (it == by_id.end())
        throw ModelError("symmetry references unknown vertex " + leaf);
      a.leaf = it->second;
      a.m = aj.value("m", 1L);
      for (auto& e : aj.value("fixed", json::array())) a.fixed.push_back(e.get<int>());
      for (auto& blk : aj.value("orbits", json::array())) {
        std::vector<int> b;
        for (auto& e : blk) b.push_back(e.get<int>());
        a.orbits.push_back(std::move(b));
      }
      m.symmetry.push_back(std::move(a));
    }
  for (auto& xj : j.value("X", json::array())) {
    auto it = by_id.find(xj.get<std::string>());
    if (it == by_id.end())
      throw ModelError("X references unknown vertex " + xj.get<std::string>());
    m.X.push_back(it->second);
  }
  m.fibration_degree = j.value("fibration_degree", 0L);
  m.strict_levels = j.value("strict_levels", true);
  if (j.contains("torus_action"))
    m.torus_action = std::make_pair(j["torus_action"].value("m", 1L),
                                    j["torus_action"].value("n", 1L));
  return m;
}
}  // namespace

std::string save_model(const ReebModel& m) {
  json j;
  switch (m.surface.kind) {
    case Surface::Disk: j["surface"] = {{"kind", "disk"}}; break;
    case Surface::Cylinder: j["surface"] = {{"kind", "cylinder"}}; break;
    case Surface::Torus: j["surface"] = {{"kind", "torus"}}; break;
    case Surface::Generic:
      j["surface"] = {{"kind", "generic"},
                      {"genus", m.surface.genus},
                      {"boundary", m.surface.boundary}};
      break;
  }
  j["target"] = m.target_circle ? "S1" : "R";
  j["vertices"] = json::array();
  for (auto& v : m.verts) {
    json vj{{"id", v.id}};
    switch (v.kind) {
      case VK::Boundary: vj["kind"] = "boundary"; break;
      case VK::NonDegExtreme: vj["kind"] = "nondeg_extreme"; break;
      case VK::DegExtreme:
        vj["kind"] = "deg_extreme";
        vj["m"] = v.m;
        if (v.dihedral) vj["dihedral"] = true;
        break;
      case VK::CriticalLeaf:
        vj["kind"] = "critical";
        vj["crit_points"] = v.crit;
        break;
      case VK::Framing: vj["kind"] = "framing"; break;
    }
    if (v.level) vj["level"] = level_json(*v.level);
    j["vertices"].push_back(vj);
  }
  j["edges"] = json::array();
  for (auto& e : m.edges)
    j["edges"].push_back({m.verts[e[0]].id, m.verts[e[1]].id});
  if (!m.ribbon.empty()) {
    json r = json::object();
    for (auto& [v, order] : m.ribbon) r[m.verts[v].id] = order;
    j["ribbon"] = r;
  }
  if (!m.symmetry.empty()) {
    j["symmetry"] = json::array();
    for (auto& a : m.symmetry)
      j["symmetry"].push_back({{"leaf", m.verts[a.leaf].id},
                               {"m", a.m},
                               {"fixed", a.fixed},
                               {"orbits", a.orbits}});
  }
  j["X"] = json::array();
  for (int x : m.X) j["X"].push_back(m.verts[x].id);
  if (m.fibration_degree) j["fibration_degree"] = m.fibration_degree;
  if (!m.strict_levels) j["strict_levels"] = false;
  if (m.torus_action)
    j["torus_action"] = {{"m", m.torus_action->first}, {"n", m.torus_action->second}};
  return j.dump(2);
}

std::string to_dot(const ReebModel& m, bool enhanced) {
  ReebModel g = enhanced ? enhanced_graph(m) : m;
  std::ostringstream o;
  o << "graph reeb {\n";
  if (m.is_torus_fibration()) {
    o << "  fib [label=\"S1 fibration, degree " << m.fibration_degree
      << "\", shape=circle];\n  fib -- fib;\n}\n";
    return o.str();
  }
  for (size_t i = 0; i < g.verts.size(); ++i) {
    const Vertex& v = g.verts[i];
    std::string shape = "ellipse", label = v.id;
    switch (v.kind) {
      case VK::Boundary: shape = "doublecircle"; break;
      case VK::NonDegExtreme: shape = "circle"; break;
      case VK::DegExtreme:
        shape = "diamond";
        label += " m=" + std::to_string(v.m);
        break;
      case VK::CriticalLeaf: {
        shape = "box";
        label += " p=";
        for (size_t k = 0; k < v.crit.size(); ++k)
          label += (k ? "," : "") + std::to_string(v.crit[k]);
        break;
      }
      case VK::Framing:
        shape = "point";
        label = "";
        break;
    }
    if (v.level) label += " f=" + rat_str(*v.level);
    o << "  v" << i << " [label=\"" << label << "\", shape=" << shape << "];\n";
  }
  for (auto& e : g.edges) o << "  v" << e[0] << " -- v" << e[1] << ";\n";
  o << "}\n";
  return o.str();
}

}  // namespace orbitcalc::reeb
