#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbitcalc/groupexpr.hpp"

namespace orbitcalc::sq {

struct BuildError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Short exact sequence A \in B ->> C of symbolic groups, together with the
// constructor history that built it. Family membership and Garside quotients
// are decided on the build record.
enum class BK {
  Triv,          // 1 -> 1 ->> 1
  Zseq,          // m=0: triv alias; m=1: Z = Z ->> 1; m>=2: mZ -> Z ->> Z_m
  Zseq2,         // mZ x nZ -> Z^2 ->> Z_m x Z_n
  Prod,
  Wr,            // A^m x mZ -> B wr_m Z ->> C wr Z_m
  Wr2,           // A^{mn} x mZ x nZ -> B wr_{m,n} Z^2 ->> C wr (Z_m x Z_n)
  GarsideQuot,   // bottom row of the Garside diagram of a Wr (or Wr2)
  DiagGarside,   // diagonal Garside quotient of a product of Wr rows
  NaturalTop,    // s(A): A = A ->> 1
  NaturalBottom  // d(C): 1 -> C = C
};

struct SeqExpr;
using SPtr = std::shared_ptr<const SeqExpr>;

struct SeqExpr {
  gx::GPtr kernel, middle, quotient;
  BK build = BK::Triv;
  long m = 0, n = 0;
  std::vector<SPtr> parts;
};

enum class SeqFamily { ZZI, ssZBtPt, ssZBP, gssZBP };

enum class SpecialKind { Triv, Z1, Zm, Zmn };

SPtr special(SpecialKind kind, long m = 0, long n = 0);
SPtr triv();
SPtr zseq(long m);            // m=0 -> triv, m=1 -> z(1), m>=2 -> z(m)
SPtr zseq2(long m, long n);
SPtr product(std::vector<SPtr> parts);
SPtr product(const SPtr& a, const SPtr& b);
SPtr wr(const SPtr& s, long m);
SPtr wr2(const SPtr& s, long m, long n);

// Bottom row of the Garside diagram: the kernel loses its Z rank(s), the
// middle becomes B wr Z_m (B wr (Z_m x Z_n)), the quotient is unchanged.
SPtr garside_quotient(const SPtr& w);

// Diagonal Garside quotient of a list of Wr-built rows: one Z of the total
// kernel dies, the quotient is the product of quotients.
SPtr diag_garside(std::vector<SPtr> ws);

// Quotient of a boundary-fixing sequence by the diagonal Garside copy of Z;
// accepts any product of Wr/Zseq components (the z(1) -> seq(f,X) ->> seq(f)
// column). Components whose Garside generates a split Z absorb the diagonal.
SPtr boundary_quotient(const SPtr& s);

struct SplitRecord {
  SPtr top, middle, bottom;
};
SplitRecord split(const SPtr& s, const SPtr& t);

struct NaturalPair {
  SPtr top;     // s(A): A = A ->> 1
  SPtr bottom;  // d(C): 1 -> C = C
};
NaturalPair natural(const SPtr& u);

bool seq_in_family(const SPtr& s, SeqFamily f);
bool is_nearly_crystallographic(const SPtr& s);
bool is_nearly_bieberbach(const SPtr& s);

// canonical build form used for census comparisons: products flattened and
// sorted, z(m) identified with wr(triv, m), wr(x,1) with x * z(1)
std::string build_signature(const SPtr& s);
bool build_equal(const SPtr& a, const SPtr& b);

// order of the finite shadow Z -> Z_N (kernel copies of Z shadow to their
// marked-index subgroups)
struct ShadowOrders {
  BigInt kernel, middle, quotient;
};
ShadowOrders finite_shadow(const SPtr& s, long N);

std::string to_string(const SPtr& s);          // "A -> B ->> C [build: ...]"
std::string build_to_string(const SPtr& s);    // the build script form
std::string to_json(const SPtr& s);
SPtr parse_build(const std::string& script);   // parses the build script form

std::string seq_family_name(SeqFamily f);
SeqFamily seq_family_from_name(const std::string& s);

}  // namespace orbitcalc::sq
