#include "orbitcalc/orbit.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace orbitcalc::engine {

using reeb::ReebModel;
using reeb::Surface;
using reeb::Vertex;
using reeb::VK;

namespace {

bool has_saddle_or_deg_extreme(const ReebModel& m) {
  for (auto& v : m.verts)
    if (v.kind == VK::DegExtreme || (v.kind == VK::CriticalLeaf && v.has_saddle()))
      return true;
  return false;
}

bool has_critical(const ReebModel& m) {
  for (auto& v : m.verts)
    if (v.kind != VK::Boundary) return true;
  return false;
}

std::vector<int> boundary_vertices(const ReebModel& m) {
  std::vector<int> out;
  for (size_t i = 0; i < m.verts.size(); ++i)
    if (m.verts[i].kind == VK::Boundary) out.push_back(static_cast<int>(i));
  return out;
}

struct Recursion {
  const ReebModel& m;
  std::vector<std::string>& trace;

  sq::SPtr branch(int edge, int v) {
    const Vertex& vv = m.verts[v];
    switch (vv.kind) {
      case VK::Boundary:
        trace.push_back("base: collar to boundary " + vv.id + " -> trivial");
        return sq::triv();
      case VK::NonDegExtreme:
        trace.push_back("base: nondegenerate extreme cap " + vv.id + " -> trivial");
        return sq::triv();
      case VK::DegExtreme:
        trace.push_back("base: degenerate extreme " + vv.id + " (index " +
                        std::to_string(vv.m) + ") -> z(" + std::to_string(vv.m) + ")");
        return sq::zseq(vv.m);
      case VK::CriticalLeaf:
        return at_leaf(edge, v);
      case VK::Framing:
        throw InternalInvariantError("framing vertex inside the recursion");
    }
    throw InternalInvariantError("bad vertex kind");
  }

  sq::SPtr at_leaf(int root_edge, int leaf) {
    reeb::ResolvedSymmetry rs = reeb::resolve_symmetry(m, leaf, root_edge);
    const std::string& id = m.verts[leaf].id;
    if (rs.m == 1) {
      // every region invariant: product of children wrapped as wr(.,1)
      std::vector<sq::SPtr> kids;
      for (int e : rs.fixed_edges) kids.push_back(branch(e, m.other_end(e, leaf)));
      trace.push_back("leaf " + id + ": invariant case, " +
                      std::to_string(kids.size()) + " region(s), wr(.,1)");
      return sq::wr(sq::product(std::move(kids)), 1);
    }
    std::vector<sq::SPtr> reps;
    for (auto& blk : rs.orbit_blocks)
      reps.push_back(branch(blk[0], m.other_end(blk[0], leaf)));
    sq::SPtr a = sq::wr(sq::product(std::move(reps)), rs.m);
    if (rs.fixed_edges.empty()) {
      trace.push_back("leaf " + id + ": rotation m=" + std::to_string(rs.m) +
                      ", " + std::to_string(rs.orbit_blocks.size()) +
                      " orbit(s), one fixed region");
      return a;
    }
    trace.push_back("leaf " + id + ": rotation m=" + std::to_string(rs.m) + ", " +
                    std::to_string(rs.orbit_blocks.size()) +
                    " orbit(s), two fixed regions");
    int fe = rs.fixed_edges[0];
    return sq::product(branch(fe, m.other_end(fe, leaf)), a);
  }
};

sq::SPtr run_rooted(const ReebModel& m, int root,
                    std::vector<std::string>& trace) {
  auto inc = m.incident(root);
  if (inc.size() != 1)
    throw InternalInvariantError("root boundary vertex must have degree 1");
  Recursion rec{m, trace};
  return rec.branch(inc[0], m.other_end(inc[0], root));
}

void ensure_valid(const ReebModel& m) {
  auto diags = reeb::validate(m);
  if (!diags.empty()) throw ValidationFailed(std::move(diags));
}

// canonical-neighborhood Euler characteristic of a critical leaf: chi(K)
// plus one per adjacent branch that caps off as a disk
long canonical_chi(const ReebModel& m, int leaf) {
  long chi = m.verts[leaf].chi();
  for (int e : m.incident(leaf)) {
    int w = m.other_end(e, leaf);
    if (w == leaf) continue;  // self-loop: nothing to absorb
    // branch vertices reachable without coming back through `leaf`
    std::vector<int> stack{w};
    std::vector<int> seen_edges{e};
    std::set<int> bverts{w};
    bool boundary = false;
    long bchi = 0;
    std::vector<std::pair<int, int>> todo{{w, e}};
    std::set<std::pair<int, int>> visited;
    while (!todo.empty()) {
      auto [v, from] = todo.back();
      todo.pop_back();
      if (m.verts[v].kind == VK::Boundary) boundary = true;
      bchi += m.verts[v].chi();
      for (int e2 : m.incident(v)) {
        if (e2 == from) continue;
        int w2 = m.other_end(e2, v);
        if (w2 == leaf) { boundary = true; continue; }  // cycle back: not a disk
        if (visited.insert({w2, e2}).second) todo.push_back({w2, e2});
      }
    }
    if (!boundary && bchi == 1) ++chi;
  }
  return chi;
}

}  // namespace

sq::SPtr compute_disk_cylinder(const ReebModel& m) {
  auto bs = boundary_vertices(m);
  if (bs.empty()) throw EmptyXOnDisk("disk/cylinder recursion needs a boundary side");
  std::vector<std::string> trace;
  return run_rooted(m, bs[0], trace);
}

sq::SPtr compute_negchi(const ReebModel& m) {
  std::vector<int> cuts;
  for (size_t i = 0; i < m.verts.size(); ++i)
    if (m.verts[i].kind == VK::CriticalLeaf &&
        canonical_chi(m, static_cast<int>(i)) < 0)
      cuts.push_back(static_cast<int>(i));
  if (cuts.empty())
    throw InternalInvariantError(
        "negative-Euler surface with no negative canonical neighborhood");
  auto pieces = reeb::reduce(m, cuts);
  std::vector<sq::SPtr> parts;
  std::vector<std::string> trace;
  for (auto& piece : pieces) {
    if (piece.collar) continue;
    if (piece.model.surface.kind != Surface::Disk &&
        piece.model.surface.kind != Surface::Cylinder)
      throw InternalInvariantError("cut piece is not a disk or cylinder");
    parts.push_back(compute_disk_cylinder(piece.model));
  }
  return sq::product(std::move(parts));
}

OrbitResult exceptional_lookup(const ReebModel& m, XSel xsel) {
  OrbitResult r;
  if (m.is_torus_fibration()) {
    long deg = m.fibration_degree;
    r.exceptional = "torus_fibration";
    r.orbit_type = "circle";
    r.seq = sq::natural(sq::zseq(deg)).bottom;  // 1 -> Z_deg = Z_deg
    r.pi1 = gx::z();
    r.betti1 = 1;
    r.homotopy.stabilizer = StabHomotopy::Circle;
    r.homotopy.diffid = DiffFactor::Torus;
    r.homotopy.aspherical = true;
    r.trace.push_back("exceptional: torus fibration of degree " +
                      std::to_string(deg));
    return r;
  }
  bool crit = has_critical(m);
  if (m.surface.kind == Surface::Cylinder && !crit && xsel == XSel::Empty) {
    r.exceptional = "cylinder";
    r.orbit_type = "point";
    r.seq = sq::triv();
    r.pi1 = gx::unit();
    r.homotopy.stabilizer = StabHomotopy::Circle;
    r.homotopy.diffid = DiffFactor::Circle;
    r.homotopy.torus_rank = 0;
    r.pi0_stab_full = gx::z();  // boundary twist survives in pi0 S(f, dM)
    r.trace.push_back("exceptional: cylinder without critical points");
    return r;
  }
  if (m.surface.kind == Surface::Disk && xsel == XSel::Empty) {
    int extremes = 0;
    bool only_nondeg = true;
    for (auto& v : m.verts) {
      if (v.kind == VK::NonDegExtreme) ++extremes;
      else if (v.kind != VK::Boundary) only_nondeg = false;
    }
    if (extremes == 1 && only_nondeg) {
      r.exceptional = "disk_extreme";
      r.orbit_type = "point";
      r.seq = sq::triv();
      r.pi1 = gx::unit();
      r.homotopy.stabilizer = StabHomotopy::Circle;
      r.homotopy.diffid = DiffFactor::Circle;
      r.homotopy.torus_rank = 0;
      r.trace.push_back("exceptional: disk with a single nondegenerate extreme");
      return r;
    }
  }
  throw NotExceptional("model is not one of the exceptional types");
}

StabHomotopy stabilizer_homotopy(const ReebModel& m, XSel xsel) {
  if (m.is_torus_fibration()) return StabHomotopy::Circle;
  if (has_saddle_or_deg_extreme(m)) return StabHomotopy::Contractible;
  long chi = m.surface.euler();
  if (xsel == XSel::Boundary && m.surface.boundary > 0)
    return StabHomotopy::Contractible;  // 1-dimensional X
  // X empty: the remaining maps with only nondegenerate extremes are the
  // exceptional types; the in-scope ones have circle stabilizers
  (void)chi;
  return StabHomotopy::Circle;
}

Homotopy homotopy_descriptor(const ReebModel& m, XSel xsel, const sq::SPtr& seq) {
  Homotopy h;
  h.stabilizer = stabilizer_homotopy(m, xsel);
  bool x_empty = xsel == XSel::Empty || m.surface.boundary == 0;
  if (!x_empty) {
    h.diffid = DiffFactor::Point;  // 1-dimensional X always exceeds chi
  } else {
    switch (m.surface.kind) {
      case Surface::Disk:
      case Surface::Cylinder: h.diffid = DiffFactor::Circle; break;
      case Surface::Torus: h.diffid = DiffFactor::Torus; break;
      case Surface::Generic: h.diffid = DiffFactor::Point; break;
    }
  }
  h.aspherical = true;  // scope excludes the sphere and projective plane
  if (seq && gx::equal(seq->quotient, gx::unit()))
    h.torus_rank = gx::beta1(seq->kernel);
  return h;
}

namespace {

// --- torus -----------------------------------------------------------------

std::vector<int> find_cycle(const ReebModel& m) {
  // iterative DFS returning the unique cycle's vertices in order
  std::vector<int> parent(m.verts.size(), -2), parent_edge(m.verts.size(), -1);
  std::vector<int> order;
  for (size_t e = 0; e < m.edges.size(); ++e)
    if (m.edges[e][0] == m.edges[e][1]) return {m.edges[e][0]};  // self-loop
  std::vector<int> stack{0};
  parent[0] = -1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int e : m.incident(v)) {
      if (e == parent_edge[v]) continue;
      int w = m.other_end(e, v);
      if (parent[w] == -2) {
        parent[w] = v;
        parent_edge[w] = e;
        stack.push_back(w);
      } else {
        // found the cycle edge (v, w): walk both ancestries
        std::vector<int> pv, pw;
        for (int x = v; x != -1; x = parent[x]) pv.push_back(x);
        for (int x = w; x != -1; x = parent[x]) pw.push_back(x);
        std::set<int> inv(pv.begin(), pv.end());
        int meet = -1;
        for (int x : pw)
          if (inv.count(x)) { meet = x; break; }
        std::vector<int> cyc;
        for (int x = v; x != meet; x = parent[x]) cyc.push_back(x);
        cyc.push_back(meet);
        std::vector<int> back;
        for (int x = w; x != meet; x = parent[x]) back.push_back(x);
        std::reverse(back.begin(), back.end());
        cyc.insert(cyc.end(), back.begin(), back.end());
        return cyc;
      }
    }
  }
  throw InternalInvariantError("cycle expected but not found");
}

int edge_between(const ReebModel& m, int a, int b, std::set<int>& used) {
  for (size_t e = 0; e < m.edges.size(); ++e) {
    if (used.count(static_cast<int>(e))) continue;
    if ((m.edges[e][0] == a && m.edges[e][1] == b) ||
        (m.edges[e][0] == b && m.edges[e][1] == a)) {
      used.insert(static_cast<int>(e));
      return static_cast<int>(e);
    }
  }
  throw InternalInvariantError("missing cycle edge");
}

// decorated entry of a cycle vertex: its label plus the codes hanging off it
std::string cycle_entry(const ReebModel& m, int v, int e_prev, int e_next) {
  std::vector<std::string> kids;
  for (int e : m.incident(v)) {
    if (e == e_prev || e == e_next) continue;
    kids.push_back(reeb::canonical_code(m, m.other_end(e, v), e));
  }
  std::sort(kids.begin(), kids.end());
  std::string out = "{";
  const Vertex& vv = m.verts[v];
  out += "C";
  std::vector<long> c = vv.crit;
  std::sort(c.begin(), c.end());
  for (long p : c) out += "." + std::to_string(p);
  if (m.strict_levels && vv.level) {
    std::ostringstream o;
    o << *vv.level;
    out += "L" + o.str();
  }
  for (auto& k : kids) out += k;
  return out + "}";
}

// extract the cylinder model spanned by `count` cycle vertices starting at
// position `start`, cutting the two bounding cycle edges
ReebModel cut_cycle_arc(const ReebModel& m, const std::vector<int>& cyc,
                        const std::vector<int>& cyc_edges, long start, long count) {
  long L = static_cast<long>(cyc.size());
  ReebModel out;
  out.surface = Surface::cylinder();
  out.target_circle = m.target_circle;
  out.strict_levels = m.strict_levels;
  std::map<int, int> vmap;
  // collect arc vertices and everything hanging off them
  std::set<int> keep;
  std::function<void(int, int)> grab = [&](int v, int from_e) {
    if (keep.count(v)) return;
    keep.insert(v);
    for (int e : m.incident(v)) {
      if (e == from_e) continue;
      if (std::count(cyc_edges.begin(), cyc_edges.end(), e)) continue;
      grab(m.other_end(e, v), e);
    }
  };
  for (long i = 0; i < count; ++i) grab(cyc[(start + i) % L], -1);
  for (int v : keep) {
    vmap[v] = static_cast<int>(out.verts.size());
    out.verts.push_back(m.verts[v]);
  }
  std::map<int, int> emap;
  // branch edges hanging off the arc
  for (size_t e = 0; e < m.edges.size(); ++e) {
    if (std::count(cyc_edges.begin(), cyc_edges.end(), static_cast<int>(e)))
      continue;
    int a = m.edges[e][0], b = m.edges[e][1];
    if (keep.count(a) && keep.count(b)) {
      emap[static_cast<int>(e)] = static_cast<int>(out.edges.size());
      out.edges.push_back({vmap[a], vmap[b]});
    }
  }
  // interior cycle edges joining consecutive arc vertices
  for (long i = 0; i + 1 < count; ++i) {
    int e = cyc_edges[(start + i) % L];
    emap[e] = static_cast<int>(out.edges.size());
    out.edges.push_back(
        {vmap[cyc[(start + i) % L]], vmap[cyc[(start + i + 1) % L]]});
  }
  // two stubs where the bounding cycle edges were cut
  int e_in = cyc_edges[((start - 1) % L + L) % L];
  int e_out = cyc_edges[(start + count - 1) % L];
  int first = cyc[start % L];
  int last = cyc[(start + count - 1) % L];
  {
    Vertex s;
    s.id = "~in";
    s.kind = VK::Boundary;
    int sid = static_cast<int>(out.verts.size());
    out.verts.push_back(s);
    emap[e_in] = static_cast<int>(out.edges.size());
    out.edges.push_back({vmap[first], sid});
    out.X.push_back(sid);
  }
  {
    Vertex s;
    s.id = "~out";
    s.kind = VK::Boundary;
    int sid = static_cast<int>(out.verts.size());
    out.verts.push_back(s);
    if (e_out != e_in) emap[e_out] = static_cast<int>(out.edges.size());
    out.edges.push_back({vmap[last], sid});
    out.X.push_back(sid);
  }
  // ribbon and symmetry carry over when every referenced edge survived
  for (auto& [v, order] : m.ribbon) {
    if (!keep.count(v)) continue;
    std::vector<int> o2;
    bool ok = true;
    for (int e : order) {
      auto it = emap.find(e);
      if (it == emap.end()) { ok = false; break; }
      o2.push_back(it->second);
    }
    if (ok) out.ribbon[vmap[v]] = o2;
  }
  for (auto& ann : m.symmetry) {
    if (!keep.count(ann.leaf)) continue;
    reeb::SymAnnot a2;
    a2.leaf = vmap[ann.leaf];
    a2.m = ann.m;
    bool ok = true;
    for (int e : ann.fixed) {
      auto it = emap.find(e);
      if (it == emap.end()) { ok = false; break; }
      a2.fixed.push_back(it->second);
    }
    for (auto& blk : ann.orbits) {
      std::vector<int> b2;
      for (int e : blk) {
        auto it = emap.find(e);
        if (it == emap.end()) { ok = false; break; }
        b2.push_back(it->second);
      }
      if (!ok) break;
      a2.orbits.push_back(b2);
    }
    if (ok) out.symmetry.push_back(a2);
  }
  return out;
}

}  // namespace

OrbitResult compute_torus(const ReebModel& m) {
  OrbitResult r;
  int rank = reeb::cycle_rank(m);
  if (rank == 1) {
    // cycle case
    std::vector<int> cyc = find_cycle(m);
    long L = static_cast<long>(cyc.size());
    std::set<int> used;
    std::vector<int> cyc_edges;
    for (long i = 0; i < L; ++i)
      cyc_edges.push_back(edge_between(m, cyc[i], cyc[(i + 1) % L], used));
    // decorated cyclic word
    std::vector<std::string> word;
    for (long i = 0; i < L; ++i) {
      int e_prev = cyc_edges[((i - 1) % L + L) % L];
      int e_next = cyc_edges[i];
      word.push_back(cycle_entry(m, cyc[i], e_prev, e_next));
    }
    long d = 1;
    {
      // smallest period of the cyclic word
      for (d = 1; d <= L; ++d) {
        if (L % d) continue;
        bool ok = true;
        for (long i = 0; i < L && ok; ++i) ok = word[i] == word[(i + d) % L];
        if (ok) break;
      }
    }
    long mrot = L / d;
    if (m.torus_action) {
      long want = m.torus_action->first;
      if (want < 1 || L % want != 0)
        throw UnannotatedTorusSymmetry("annotated rotation does not divide the cycle");
      long d2 = L / want;
      for (long i = 0; i < L; ++i)
        if (word[i] != word[(i + d2) % L])
          throw UnannotatedTorusSymmetry(
              "annotated rotation is incompatible with the cycle decorations");
      mrot = want;
      d = d2;
    }
    // canonical starting position: lexicographically smallest rotation
    long start = 0;
    for (long s = 1; s < L; ++s) {
      for (long i = 0; i < L; ++i) {
        if (word[(s + i) % L] < word[(start + i) % L]) { start = s; break; }
        if (word[(s + i) % L] > word[(start + i) % L]) break;
      }
    }
    ReebModel q = cut_cycle_arc(m, cyc, cyc_edges, start, d);
    sq::SPtr child_seq;
    {
      std::vector<std::string> tr;
      int root = -1;
      for (size_t i = 0; i < q.verts.size(); ++i)
        if (q.verts[i].id == "~in") root = static_cast<int>(i);
      child_seq = run_rooted(q, root, tr);
      r.trace.insert(r.trace.end(), tr.begin(), tr.end());
    }
    r.trace.push_back("torus cycle: " + std::to_string(L) +
                      " leaves, rotation order " + std::to_string(mrot));
    r.seq = sq::wr(child_seq, mrot);
    r.pi1 = r.seq->middle;
    r.seq_closed = sq::garside_quotient(r.seq);
    r.betti1 = gx::beta1(r.pi1);
    r.homotopy = homotopy_descriptor(m, XSel::Empty, *r.seq_closed);
    return r;
  }

  // tree case: the unique critical leaf whose complement is all disks
  int special = -1;
  for (size_t i = 0; i < m.verts.size(); ++i) {
    if (m.verts[i].kind != VK::CriticalLeaf) continue;
    auto pieces = reeb::reduce(m, {static_cast<int>(i)});
    bool all_disks = true;
    for (auto& p : pieces) {
      if (p.collar) continue;
      if (p.model.surface_chi_from_leaves() != 1) all_disks = false;
    }
    if (all_disks) {
      special = static_cast<int>(i);
      break;
    }
  }
  if (special < 0)
    throw InternalInvariantError("torus tree model without a disk-splitting leaf");

  auto inc = m.incident(special);
  std::vector<std::string> codes;
  for (int e : inc)
    codes.push_back(reeb::canonical_code(m, m.other_end(e, special), e));
  std::map<std::string, std::vector<int>> groups;
  for (size_t i = 0; i < inc.size(); ++i) groups[codes[i]].push_back(inc[i]);

  long am = 1, an = 1;
  if (m.torus_action) {
    am = m.torus_action->first;
    an = m.torus_action->second;
  } else {
    bool all_distinct = true;
    for (auto& [c, es] : groups)
      if (es.size() > 1) all_distinct = false;
    if (!all_distinct)
      throw UnannotatedTorusSymmetry(
          "torus tree with repeated disks needs a torus_action annotation");
  }
  long mn = am * an;
  std::vector<sq::SPtr> reps;
  for (auto& [c, es] : groups) {
    if (static_cast<long>(es.size()) % mn != 0)
      throw UnannotatedTorusSymmetry(
          "torus_action does not divide a disk class of size " +
          std::to_string(es.size()));
    long copies = static_cast<long>(es.size()) / mn;
    for (long k = 0; k < copies; ++k)
      reps.push_back([&] {
        std::vector<std::string> tr;
        Recursion rec{m, tr};
        sq::SPtr s = rec.branch(es[0], m.other_end(es[0], special));
        r.trace.insert(r.trace.end(), tr.begin(), tr.end());
        return s;
      }());
  }
  sq::SPtr prod = sq::product(std::move(reps));
  sq::SPtr w2 = sq::wr2(prod, am, an);
  r.trace.push_back("torus tree: free action (" + std::to_string(am) + "," +
                    std::to_string(an) + "), " +
                    std::to_string(prod->build == sq::BK::Prod
                                       ? prod->parts.size()
                                       : 1) +
                    " orbit class(es)");
  r.seq = sq::garside_quotient(w2);
  r.pi1 = w2->middle;
  r.seq_closed = r.seq;
  r.betti1 = gx::beta1(r.pi1);
  r.homotopy = homotopy_descriptor(m, XSel::Empty, r.seq);
  return r;
}

OrbitResult compute(const ReebModel& model, XSel xsel) {
  ensure_valid(model);
  const Surface& s = model.surface;

  if (s.kind == Surface::Torus) {
    if (model.is_torus_fibration()) return exceptional_lookup(model, xsel);
    return compute_torus(model);
  }

  if (s.euler() < 0) {
    OrbitResult r;
    r.seq = compute_negchi(model);
    r.pi1 = r.seq->middle;
    r.betti1 = gx::beta1(r.pi1);
    r.trace.push_back("negative Euler characteristic: product over cut pieces");
    r.homotopy = homotopy_descriptor(model, xsel, r.seq);
    r.seq_closed = r.seq;  // forgetting the boundary changes nothing here
    return r;
  }

  // disk / cylinder
  if (xsel == XSel::Empty) {
    try {
      return exceptional_lookup(model, xsel);
    } catch (const NotExceptional&) {
    }
  }
  OrbitResult r;
  std::vector<std::string> trace;
  auto bs = boundary_vertices(model);
  if (bs.empty()) throw EmptyXOnDisk("disk/cylinder model without boundary vertex");
  sq::SPtr with_boundary = run_rooted(model, bs[0], trace);
  r.trace = std::move(trace);
  if (xsel == XSel::Boundary) {
    r.seq = with_boundary;
    r.pi1 = r.seq->middle;
    r.betti1 = gx::beta1(r.pi1);
    r.homotopy = homotopy_descriptor(model, xsel, r.seq);
    if (model.surface.kind == Surface::Cylinder && !has_critical(model)) {
      r.pi0_stab_full = gx::z();  // the boundary twist generates pi0 S(f, dM)
      r.trace.push_back("cylinder without critical points: full pi0 stabilizer Z");
    }
    return r;
  }
  // X empty on a disk/cylinder: pi1 of the orbit still equals pi0 S'(f, dM);
  // the pair sequence is the diagonal Garside quotient
  r.pi1 = with_boundary->middle;
  r.seq = with_boundary->build == sq::BK::Triv
              ? with_boundary
              : sq::boundary_quotient(with_boundary);
  r.seq_closed = r.seq;
  r.betti1 = gx::beta1(r.pi1);
  r.trace.push_back("forgetting the boundary: diagonal Garside quotient");
  r.homotopy = homotopy_descriptor(model, xsel, r.seq);
  return r;
}

sq::SPtr forget_boundary(const OrbitResult& r, const ReebModel& model) {
  if (model.surface.euler() < 0) return r.seq;
  if (r.seq->build == sq::BK::Triv) return r.seq;
  if (r.seq->build == sq::BK::DiagGarside || r.seq->build == sq::BK::GarsideQuot ||
      r.seq->build == sq::BK::NaturalBottom)
    return r.seq;  // already an X-free row
  return sq::boundary_quotient(r.seq);
}

std::string result_to_json(const OrbitResult& r) {
  std::ostringstream o;
  o << "{\"seq\":" << sq::to_json(r.seq) << ",\"pi1\":\"" << gx::to_string(r.pi1)
    << "\",\"betti1\":" << r.betti1 << ",\"homotopy\":{";
  o << "\"stabilizer\":\""
    << (r.homotopy.stabilizer == StabHomotopy::Circle ? "circle" : "contractible")
    << "\",\"diffid_factor\":\"";
  switch (r.homotopy.diffid) {
    case DiffFactor::Point: o << "point"; break;
    case DiffFactor::Circle: o << "circle"; break;
    case DiffFactor::Torus: o << "torus"; break;
  }
  o << "\",\"aspherical\":" << (r.homotopy.aspherical ? "true" : "false");
  if (r.homotopy.torus_rank)
    o << ",\"torus_rank\":" << *r.homotopy.torus_rank;
  o << "}";
  if (r.seq_closed) o << ",\"seq_closed\":" << sq::to_json(*r.seq_closed);
  if (r.pi0_stab_full)
    o << ",\"pi0_stab_full\":\"" << gx::to_string(*r.pi0_stab_full) << "\"";
  if (!r.exceptional.empty()) {
    o << ",\"exceptional\":\"" << r.exceptional << "\",\"orbit\":\""
      << r.orbit_type << "\"";
  }
  o << ",\"trace\":[";
  for (size_t i = 0; i < r.trace.size(); ++i) {
    if (i) o << ",";
    std::string t = r.trace[i];
    for (auto& c : t)
      if (c == '"') c = '\'';
    o << "\"" << t << "\"";
  }
  o << "]}";
  return o.str();
}

}  // namespace orbitcalc::engine
