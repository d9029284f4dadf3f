#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbitcalc::wr {

struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SubgroupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SectionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finite group by multiplication table, or the infinite base "Integers".
struct BaseGroup {
  bool integers = false;
  std::vector<std::string> names;       // finite: element names
  std::vector<std::vector<int>> table;  // finite: table[a][b] = a*b
  int id = 0;
  std::vector<int> inv;
  std::vector<int> generators;          // marked generators (finite)

  int size() const { return static_cast<int>(names.size()); }
  int mul(int a, int b) const { return table[a][b]; }

  // computed by exhaustion, cached
  const std::vector<bool>& center_mask() const;
  const std::vector<bool>& derived_mask() const;     // derived subgroup [G,G]
  const std::vector<int>& abelian_coset() const;     // element -> coset id in G/[G,G]
  int abelian_coset_count() const;

 private:
  mutable std::vector<bool> center_, derived_;
  mutable std::vector<int> ab_coset_;
  mutable int ab_count_ = -1;
  void ensure_exhaustion() const;
};

using BasePtr = std::shared_ptr<const BaseGroup>;

BasePtr integers();
BasePtr make_zmod(int k);
BasePtr make_s3();
// header = element names; each body row = the products of one row element
// with every column element, by name.
BasePtr load_table_csv(const std::string& text);

struct WreathShape;
using ShapePtr = std::shared_ptr<const WreathShape>;

struct WreathShape {
  enum Kind { Base, Prod, WrZ, WrZ2, Semidirect } kind = Base;
  BasePtr base;                          // Base
  std::vector<ShapePtr> children;        // Prod factors / single inner
  long m = 0, n = 0;                     // WrZ / WrZ2
  // Semidirect: normal subgroup = children[0] (finite Base only);
  // actor is Z (actor_mod == 0) or Z_actor_mod; phi = action of the actor
  // generator as a permutation of the normal group's elements.
  long actor_mod = 0;
  std::vector<int> phi;
};

ShapePtr shape_base(BasePtr b);
ShapePtr shape_prod(std::vector<ShapePtr> parts);
ShapePtr shape_wr_z(ShapePtr inner, long m);
ShapePtr shape_wr_z2(ShapePtr inner, long m, long n);
// Validates that phi is an automorphism and (for finite actors) that
// phi^actor_mod = id.
ShapePtr shape_semidirect(ShapePtr normal, long actor_mod, std::vector<int> phi);

struct WreathElement {
  // Base: value (integers) or idx (finite); WrZ: parts (m) + k;
  // WrZ2: parts (m*n, row-major) + (k,l); Prod: parts; Semidirect: parts[0] + k.
  long long value = 0;
  int idx = 0;
  std::vector<WreathElement> parts;
  long long k = 0, l = 0;
};

WreathElement identity(const ShapePtr& s);
WreathElement mul(const ShapePtr& s, const WreathElement& x, const WreathElement& y);
WreathElement inv(const ShapePtr& s, const WreathElement& x);
WreathElement pow(const ShapePtr& s, const WreathElement& x, long long n);
bool equal(const ShapePtr& s, const WreathElement& x, const WreathElement& y);

// least n <= bound with x^n = e, or nullopt
std::optional<long long> order_of(const ShapePtr& s, const WreathElement& x,
                                  long long bound);

// Garside element(s): (e,..,e; m) for WrZ; the two commuting generators
// (e,..,e; m, 0), (e,..,e; 0, n) for WrZ2.
std::vector<WreathElement> garside(const ShapePtr& s);

// x commutes with the embedded base generators of every coordinate and the
// shift generator(s).
bool is_central(const ShapePtr& s, const WreathElement& x);
// closed form: all coordinates equal, that value central in the base,
// shift divisible by m (and n).
bool is_central_closed_form(const ShapePtr& s, const WreathElement& x);

struct AbelianImage {
  int base_coset = 0;       // coset of prod of coordinates in G/[G,G]
  long long base_sum = 0;   // Integers base: sum of coordinates
  long long k = 0, l = 0;
  bool operator==(const AbelianImage&) const = default;
};

// The map gamma (delta for WrZ2) of the abelianization lemma; shape must be
// WrZ/WrZ2 over a Base.
AbelianImage abelianize_map(const ShapePtr& s, const WreathElement& x);
AbelianImage abelian_mul(const ShapePtr& s, const AbelianImage& a, const AbelianImage& b);
bool abelian_trivial(const ShapePtr& s, const AbelianImage& a);
bool in_derived(const ShapePtr& s, const WreathElement& x);

bool splits_as_direct_product(const BasePtr& g,
                              const std::vector<std::vector<int>>& subgroups);

struct SectionReport {
  bool ok = false;
  std::string detail;
  long checked_pairs = 0;
};

// p: G -> Z_k given by p_map (element -> value mod k); s: Z_k -> G given by
// s_map. Verifies the section laws, builds A = ker p with the conjugation
// action, and checks psi(a, z) = a * s(z) is a bijective homomorphism.
SectionReport semidirect_from_section(const BasePtr& g, int k,
                                      const std::vector<int>& p_map,
                                      const std::vector<int>& s_map);

std::string to_string(const ShapePtr& s, const WreathElement& x);

// deterministic pseudo-random element; entries/shifts within [-range, range]
WreathElement random_element(const ShapePtr& s, std::uint64_t seed, long range);

}  // namespace orbitcalc::wr
