#include "orbitcalc/batch.hpp"

#include "orbitcalc/numbers.hpp"

#ifdef ORBITCALC_HAVE_OPENMP
#include <omp.h>
#endif

namespace orbitcalc::batch {

namespace {

bool axiom_triple_ok(const wr::ShapePtr& s, std::uint64_t seed, long range,
                     AxiomStats& st) {
  using namespace wr;
  WreathElement x = random_element(s, splitmix64(seed * 3 + 0), range);
  WreathElement y = random_element(s, splitmix64(seed * 3 + 1), range);
  WreathElement z = random_element(s, splitmix64(seed * 3 + 2), range);
  WreathElement e = identity(s);
  bool ok = true;
  if (!equal(s, mul(s, mul(s, x, y), z), mul(s, x, mul(s, y, z)))) {
    ++st.assoc_failures;
    ok = false;
  }
  if (!equal(s, mul(s, x, e), x) || !equal(s, mul(s, e, x), x)) {
    ++st.identity_failures;
    ok = false;
  }
  if (!equal(s, mul(s, x, inv(s, x)), e) || !equal(s, mul(s, inv(s, x), x), e)) {
    ++st.inverse_failures;
    ok = false;
  }
  return ok;
}

}  // namespace

AxiomStats axiom_scan_serial(const wr::ShapePtr& s, long long count,
                             std::uint64_t seed, long range) {
  AxiomStats st;
  for (long long i = 0; i < count; ++i)
    axiom_triple_ok(s, seed + static_cast<std::uint64_t>(i), range, st);
  return st;
}

AxiomStats axiom_scan(const wr::ShapePtr& s, long long count, std::uint64_t seed,
                      long range) {
  long long assoc = 0, idf = 0, invf = 0;
#ifdef ORBITCALC_HAVE_OPENMP
#pragma omp parallel for reduction(+ : assoc, idf, invf) schedule(static)
#endif
  for (long long i = 0; i < count; ++i) {
    AxiomStats st;
    axiom_triple_ok(s, seed + static_cast<std::uint64_t>(i), range, st);
    assoc += st.assoc_failures;
    idf += st.identity_failures;
    invf += st.inverse_failures;
  }
  return AxiomStats{assoc, idf, invf};
}

namespace {

// index -> element of a WrZ shape over a finite base, |k| <= bound
wr::WreathElement center_element(const wr::ShapePtr& s, long long idx,
                                 long shift_bound) {
  int n = s->children[0]->base->size();
  long m = s->m;
  wr::WreathElement e = wr::identity(s);
  for (long c = 0; c < m; ++c) {
    e.parts[c].idx = static_cast<int>(idx % n);
    idx /= n;
  }
  e.k = static_cast<long long>(idx) - shift_bound;
  return e;
}

long long center_space(const wr::ShapePtr& s, long shift_bound) {
  long long n = s->children[0]->base->size();
  long long total = 1;
  for (long c = 0; c < s->m; ++c) total *= n;
  return total * (2 * shift_bound + 1);
}

bool center_disagrees(const wr::ShapePtr& s, long long idx, long shift_bound) {
  wr::WreathElement e = center_element(s, idx, shift_bound);
  return wr::is_central(s, e) != wr::is_central_closed_form(s, e);
}

}  // namespace

long long center_scan_serial(const wr::ShapePtr& s, long shift_bound) {
  long long total = center_space(s, shift_bound), bad = 0;
  for (long long i = 0; i < total; ++i)
    if (center_disagrees(s, i, shift_bound)) ++bad;
  return bad;
}

long long center_scan(const wr::ShapePtr& s, long shift_bound) {
  long long total = center_space(s, shift_bound), bad = 0;
#ifdef ORBITCALC_HAVE_OPENMP
#pragma omp parallel for reduction(+ : bad) schedule(static)
#endif
  for (long long i = 0; i < total; ++i)
    if (center_disagrees(s, i, shift_bound)) ++bad;
  return bad;
}

namespace {

bool hom_pair_bad(const wr::ShapePtr& s, std::uint64_t seed, long range) {
  using namespace wr;
  WreathElement x = random_element(s, splitmix64(seed * 2 + 0), range);
  WreathElement y = random_element(s, splitmix64(seed * 2 + 1), range);
  AbelianImage lhs = abelianize_map(s, mul(s, x, y));
  AbelianImage rhs =
      abelian_mul(s, abelianize_map(s, x), abelianize_map(s, y));
  return !(lhs == rhs);
}

}  // namespace

long long hom_scan_serial(const wr::ShapePtr& s, long long count,
                          std::uint64_t seed, long range) {
  long long bad = 0;
  for (long long i = 0; i < count; ++i)
    if (hom_pair_bad(s, seed + static_cast<std::uint64_t>(i), range)) ++bad;
  return bad;
}

long long hom_scan(const wr::ShapePtr& s, long long count, std::uint64_t seed,
                   long range) {
  long long bad = 0;
#ifdef ORBITCALC_HAVE_OPENMP
#pragma omp parallel for reduction(+ : bad) schedule(static)
#endif
  for (long long i = 0; i < count; ++i)
    if (hom_pair_bad(s, seed + static_cast<std::uint64_t>(i), range)) ++bad;
  return bad;
}

namespace {

// index -> element of Z wr_m Z with entries and shift in [-range, range]
wr::WreathElement box_element(const wr::ShapePtr& s, long long idx, long range) {
  long long side = 2 * range + 1;
  wr::WreathElement e = wr::identity(s);
  for (long c = 0; c < s->m; ++c) {
    e.parts[c].value = idx % side - range;
    idx /= side;
  }
  e.k = idx % side - range;
  return e;
}

long long box_space(const wr::ShapePtr& s, long range) {
  long long side = 2 * range + 1, total = 1;
  for (long c = 0; c < s->m + 1; ++c) total *= side;
  return total;
}

bool box_has_torsion(const wr::ShapePtr& s, long long idx, long range,
                     long long bound) {
  wr::WreathElement e = box_element(s, idx, range);
  if (wr::equal(s, e, wr::identity(s))) return false;
  auto ord = wr::order_of(s, e, bound);
  return ord.has_value();
}

}  // namespace

long long torsion_scan_serial(const wr::ShapePtr& s, long range, long long bound) {
  long long total = box_space(s, range), bad = 0;
  for (long long i = 0; i < total; ++i)
    if (box_has_torsion(s, i, range, bound)) ++bad;
  return bad;
}

long long torsion_scan(const wr::ShapePtr& s, long range, long long bound) {
  long long total = box_space(s, range), bad = 0;
#ifdef ORBITCALC_HAVE_OPENMP
#pragma omp parallel for reduction(+ : bad) schedule(static)
#endif
  for (long long i = 0; i < total; ++i)
    if (box_has_torsion(s, i, range, bound)) ++bad;
  return bad;
}

int thread_count() {
#ifdef ORBITCALC_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace orbitcalc::batch
