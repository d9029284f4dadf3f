#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbitcalc/numbers.hpp"

namespace orbitcalc::reeb {

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct AmbiguousSymmetry : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Surface {
  enum Kind { Disk, Cylinder, Torus, Generic } kind = Disk;
  long genus = 0, boundary = 1;

  long euler() const { return 2 - 2 * genus - boundary; }
  static Surface disk() { return {Disk, 0, 1}; }
  static Surface cylinder() { return {Cylinder, 0, 2}; }
  static Surface torus() { return {Torus, 1, 0}; }
  static Surface generic(long g, long b) { return {Generic, g, b}; }
};

enum class VK { Boundary, NonDegExtreme, DegExtreme, CriticalLeaf, Framing };

struct Vertex {
  std::string id;
  VK kind = VK::Boundary;
  long m = 0;                // DegExtreme: symmetry index (>= 2)
  bool dihedral = false;     // DegExtreme: reflection present
  std::vector<long> crit;    // CriticalLeaf: branch count p per critical point
  std::optional<Rational> level;

  // chi of the leaf as a CW complex
  long chi() const {
    switch (kind) {
      case VK::Boundary: return 0;
      case VK::NonDegExtreme:
      case VK::DegExtreme: return 1;
      case VK::CriticalLeaf: {
        long s = 0;
        for (long p : crit) s += p;
        return static_cast<long>(crit.size()) - s;
      }
      case VK::Framing: return 0;
    }
    return 0;
  }
  bool has_saddle() const {
    if (kind != VK::CriticalLeaf) return false;
    if (crit.size() >= 2) return true;
    for (long p : crit)
      if (p >= 2) return true;
    return false;
  }
};

struct SymAnnot {
  int leaf = -1;
  long m = 1;
  std::vector<int> fixed;                // edge indices
  std::vector<std::vector<int>> orbits;  // edge indices
};

struct ReebModel {
  Surface surface;
  bool target_circle = false;  // false: target R, true: target S1
  std::vector<Vertex> verts;
  std::vector<std::array<int, 2>> edges;
  std::map<int, std::vector<int>> ribbon;  // vertex -> cyclic order of edges
  std::vector<SymAnnot> symmetry;
  std::vector<int> X;  // vertex indices
  long fibration_degree = 0;
  bool strict_levels = true;
  std::optional<std::pair<long, long>> torus_action;

  bool is_torus_fibration() const {
    return surface.kind == Surface::Torus && verts.empty() && edges.empty() &&
           fibration_degree >= 1;
  }
  std::vector<int> incident(int v) const;
  int other_end(int e, int v) const;
  int vertex_by_id(const std::string& id) const;  // -1 if absent
  long surface_chi_from_leaves() const;
};

struct Diagnostic {
  std::string code;
  std::string where;
  std::string message;
};

std::vector<Diagnostic> validate(const ReebModel& m);
int cycle_rank(const ReebModel& m);

// both endpoints degenerate extremes, saddle-bearing leaves, or in X
std::vector<int> internal_edges(const ReebModel& m, const std::vector<int>& X);
long pi0_delta_rank(const ReebModel& m, const std::vector<int>& X);

// Deterministic isomorphism-invariant code of the decorated branch hanging at
// `vertex` seen from `from_edge` (-1: root the whole tree at `vertex`).
// Levels are part of the code when present and strict_levels is set.
std::string canonical_code(const ReebModel& m, int vertex, int from_edge);

struct ResolvedSymmetry {
  long m = 1;
  std::vector<int> fixed_edges;              // non-root fixed branches (<= 1 for m >= 2)
  std::vector<std::vector<int>> orbit_blocks;
};

// Symmetry of the action at `leaf` with `root_edge` on the invariant side:
// explicit annotation when present (validated), otherwise inference from the
// single-saddle rule or ribbon data. Throws AmbiguousSymmetry.
ResolvedSymmetry resolve_symmetry(const ReebModel& m, int leaf, int root_edge);

// Resolves every critical leaf (rooted toward X / first boundary vertex) and
// returns the model with explicit annotations filled in.
ReebModel infer_symmetry(const ReebModel& m);

// Pendant framing edges at every degenerate extreme: 2m if dihedral, else m.
ReebModel enhanced_graph(const ReebModel& m);

struct Component {
  ReebModel model;
  std::vector<int> xhat;        // stub/boundary vertex indices forming X-hat
  bool collar = false;          // regular neighborhood piece of a cut vertex
  std::vector<int> stub_edges;  // original edge index per stub, aligned with xhat
};

// Splits the model at the listed vertices: each cut vertex keeps a collar
// piece (its f-regular neighborhood) and the complement splits into
// components whose cut edges end in fresh boundary stubs.
std::vector<Component> reduce(const ReebModel& m, const std::vector<int>& cut);

ReebModel load_model(const std::string& json_text);
std::string save_model(const ReebModel& m);
std::string to_dot(const ReebModel& m, bool enhanced);

}  // namespace orbitcalc::reeb
