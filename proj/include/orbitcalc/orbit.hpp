#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbitcalc/reebmodel.hpp"
#include "orbitcalc/seqcalc.hpp"

namespace orbitcalc::engine {

struct UnsupportedSurface : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EmptyXOnDisk : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnannotatedTorusSymmetry : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotExceptional : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InternalInvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ValidationFailed : std::runtime_error {
  std::vector<reeb::Diagnostic> diags;
  explicit ValidationFailed(std::vector<reeb::Diagnostic> d)
      : std::runtime_error("model failed validation"), diags(std::move(d)) {}
};

enum class XSel { Boundary, Empty };

enum class StabHomotopy { Contractible, Circle };
enum class DiffFactor { Point, Circle, Torus };

struct Homotopy {
  StabHomotopy stabilizer = StabHomotopy::Contractible;
  DiffFactor diffid = DiffFactor::Point;
  bool aspherical = true;
  std::optional<long> torus_rank;  // set when the graph action is trivial
};

struct OrbitResult {
  sq::SPtr seq;         // the Bieberbach sequence of the pair
  gx::GPtr pi1;         // fundamental group of the orbit component
  long betti1 = 0;      // first Betti number of the orbit
  Homotopy homotopy;
  std::vector<std::string> trace;
  std::optional<sq::SPtr> seq_closed;    // X-forgetting row when distinct from seq
  std::optional<gx::GPtr> pi0_stab_full; // full (non-identity-isotopic) pi0 when known
  std::string exceptional;               // "", "disk_extreme", "cylinder", "torus_fibration"
  std::string orbit_type;                // exceptional cases: "point" or "circle"
};

OrbitResult compute(const reeb::ReebModel& model, XSel xsel);

// the disk/cylinder recursion with X = the boundary; returns just the sequence
sq::SPtr compute_disk_cylinder(const reeb::ReebModel& model);
// chi < 0: product over the pieces of the canonical-neighborhood cut
sq::SPtr compute_negchi(const reeb::ReebModel& model);
OrbitResult compute_torus(const reeb::ReebModel& model);
OrbitResult exceptional_lookup(const reeb::ReebModel& model, XSel xsel);

StabHomotopy stabilizer_homotopy(const reeb::ReebModel& model, XSel xsel);
Homotopy homotopy_descriptor(const reeb::ReebModel& model, XSel xsel,
                             const sq::SPtr& seq_for_x_empty_kernel);

// chi(M) >= 0 disk/cylinder: quotient by the diagonal Garside copy of Z;
// chi < 0: identity
sq::SPtr forget_boundary(const OrbitResult& r, const reeb::ReebModel& model);

std::string result_to_json(const OrbitResult& r);

}  // namespace orbitcalc::engine
