// Compares the serial reference scans against the OpenMP kernels and reports
// wall times. The two paths must agree exactly; a mismatch is a hard failure.

#include <chrono>
#include <cstdio>

#include "orbitcalc/batch.hpp"

using namespace orbitcalc;
using Clock = std::chrono::steady_clock;

namespace {

double seconds(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

template <typename F>
double timed(F&& f) {
  auto t0 = Clock::now();
  f();
  return seconds(t0, Clock::now());
}

}  // namespace

int main(int argc, char** argv) {
  long long n = argc > 1 ? std::atoll(argv[1]) : 200000;
  std::printf("threads: %d\n", batch::thread_count());

  auto zz2 = wr::shape_wr_z(wr::shape_base(wr::integers()), 2);
  auto s3w2 = wr::shape_wr_z(wr::shape_base(wr::make_s3()), 2);
  auto zz22 = wr::shape_wr_z2(wr::shape_base(wr::integers()), 2, 2);

  struct Row {
    const char* name;
    double serial, parallel;
    bool match;
  };
  Row rows[4];

  {
    batch::AxiomStats a, b;
    double ts = timed([&] { a = batch::axiom_scan_serial(zz22, n, 1, 50); });
    double tp = timed([&] { b = batch::axiom_scan(zz22, n, 1, 50); });
    rows[0] = {"axioms Z wr[2,2] Z2", ts, tp, a.total() == b.total()};
  }
  {
    long long a = 0, b = 0;
    double ts = timed([&] { a = batch::center_scan_serial(s3w2, 6); });
    double tp = timed([&] { b = batch::center_scan(s3w2, 6); });
    rows[1] = {"center scan S3 wr[2] Z", ts, tp, a == b};
  }
  {
    long long a = 0, b = 0;
    double ts = timed([&] { a = batch::hom_scan_serial(s3w2, n, 2, 50); });
    double tp = timed([&] { b = batch::hom_scan(s3w2, n, 2, 50); });
    rows[2] = {"abelianization law S3 wr[2] Z", ts, tp, a == b};
  }
  {
    long long a = 0, b = 0;
    double ts = timed([&] { a = batch::torsion_scan_serial(zz2, 3, 12); });
    double tp = timed([&] { b = batch::torsion_scan(zz2, 3, 12); });
    rows[3] = {"torsion box Z wr[2] Z", ts, tp, a == b};
  }

  bool all_ok = true;
  for (auto& r : rows) {
    std::printf("%-32s serial %8.3fs  omp %8.3fs  speedup %5.2fx  %s\n", r.name,
                r.serial, r.parallel,
                r.parallel > 0 ? r.serial / r.parallel : 0.0,
                r.match ? "match" : "MISMATCH");
    all_ok = all_ok && r.match;
  }
  return all_ok ? 0 : 1;
}
