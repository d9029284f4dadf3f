#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbitcalc/numbers.hpp"

namespace orbitcalc::gx {

// Symbolic groups over the alphabet {1, Z, Z_m, x, wr[a] Z, wr[a,b] Z2, wr Z_m}.
//
// Two extra variants exist for values produced by the sequence calculus and
// never by user input: WrZmod2 is "C wr (Z_m x Z_n)" (the quotient of a
// wr[m,n] wreath by its two Garside generators) and CentralQuot is a product
// of wreath middles modulo the diagonal central subgroup spanned by their
// Garside elements. Neither belongs to any group family.
enum class GK { Unit, Z, Zmod, Prod, WrZ, WrZ2, WrZmod, WrZmod2, CentralQuot };

struct GroupExpr;
using GPtr = std::shared_ptr<const GroupExpr>;

struct GroupExpr {
  GK kind = GK::Unit;
  long m = 0, n = 0;
  std::vector<GPtr> args;           // Prod/CentralQuot factors, or single inner
  std::vector<long> quot_indices;   // CentralQuot: Garside index per factor
};

struct FamilyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class GroupFamily { ccZ, ccB, clsBt, ccP, clsGt, ccBprime };

GPtr unit();
GPtr z();
GPtr zmod(long m);
GPtr prod(std::vector<GPtr> factors);
GPtr wr_z(GPtr inner, long m);
GPtr wr_z2(GPtr inner, long m, long n);
GPtr wr_zmod(GPtr inner, long m);
GPtr wr_zmod2(GPtr inner, long m, long n);
GPtr central_quot(std::vector<GPtr> middles, std::vector<long> indices);

// Unique normal form (idempotent); all constructors above already normalize.
GPtr normalize(const GPtr& e);

bool equal(const GPtr& a, const GPtr& b);

// Number of Z symbols in the canonical word; wr[a] Z contributes 1,
// wr[a,b] Z2 contributes 2. Throws FamilyError on torsion subterms.
long beta1(const GPtr& e);
long center_rank(const GPtr& e);
GPtr abelianization(const GPtr& e);

// Free rank of the abelianization; defined on every variant (cyclic-shift
// coinvariants make C wr Z_m contribute free_rank(C)). Agrees with beta1 on
// torsion-free families.
long free_rank(const GPtr& e);

bool in_family(const GPtr& e, GroupFamily f);
bool is_torsion_free(const GPtr& e);
Order order(const GPtr& e);

// All normal forms of the family with <= max_depth constructor nestings and
// wreath/cyclic parameters <= max_param, each exactly once.
std::vector<GPtr> enumerate_family(GroupFamily f, int max_depth, long max_param);

std::string to_string(const GPtr& e);
GPtr parse(const std::string& text);

std::string family_name(GroupFamily f);
GroupFamily family_from_name(const std::string& s);

}  // namespace orbitcalc::gx
