#pragma once

#include <cstdint>

#include "orbitcalc/wreath.hpp"

namespace orbitcalc::batch {

// Mass verification scans over wreath-product elements. Inputs are derived
// per index from a counter-based generator, so the parallel kernels return
// exactly the serial results. The *_serial twins are the reference
// implementations the tests compare against.

struct AxiomStats {
  long long assoc_failures = 0;
  long long identity_failures = 0;
  long long inverse_failures = 0;
  long long total() const {
    return assoc_failures + identity_failures + inverse_failures;
  }
};

AxiomStats axiom_scan_serial(const wr::ShapePtr& s, long long count,
                             std::uint64_t seed, long range);
AxiomStats axiom_scan(const wr::ShapePtr& s, long long count, std::uint64_t seed,
                      long range);

// exhaustive centre comparison over a WrZ shape with a finite base and
// shifts |k| <= shift_bound: generator commutation vs the closed form
long long center_scan_serial(const wr::ShapePtr& s, long shift_bound);
long long center_scan(const wr::ShapePtr& s, long shift_bound);

// abelianization homomorphism law gamma(xy) = gamma(x)gamma(y) on random pairs
long long hom_scan_serial(const wr::ShapePtr& s, long long count,
                          std::uint64_t seed, long range);
long long hom_scan(const wr::ShapePtr& s, long long count, std::uint64_t seed,
                   long range);

// elements of Z wr_2 Z with entries/shift in [-range, range] of finite order
// <= bound (identity excluded)
long long torsion_scan_serial(const wr::ShapePtr& s, long range, long long bound);
long long torsion_scan(const wr::ShapePtr& s, long range, long long bound);

int thread_count();

}  // namespace orbitcalc::batch
