#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orbitcalc/orbit.hpp"
#include "testutil.hpp"

using namespace orbitcalc;
using namespace orbitcalc::engine;
using reeb::ReebModel;
using reeb::Surface;
using reeb::Vertex;
using reeb::VK;

namespace {

int addv(ReebModel& m, const char* id, VK k, long lvl,
         std::vector<long> crit = {}, long sym = 0) {
  Vertex v;
  v.id = id;
  v.kind = k;
  v.crit = std::move(crit);
  v.m = sym;
  v.level = Rational(lvl);
  m.verts.push_back(v);
  return static_cast<int>(m.verts.size() - 1);
}

ReebModel disk_one_saddle(bool twins) {
  ReebModel m;
  m.surface = Surface::disk();
  int b = addv(m, "b", VK::Boundary, 0);
  int s = addv(m, "s", VK::CriticalLeaf, 1, {2});
  int m1 = addv(m, "m1", VK::NonDegExtreme, 2);
  int m2 = addv(m, "m2", VK::NonDegExtreme, twins ? 2 : 3);
  m.edges = {{b, s}, {s, m1}, {s, m2}};
  m.X = {b};
  return m;
}

}  // namespace

TEST_CASE("disk base cases") {
  // one nondegenerate extreme: trivial sequence
  ReebModel m;
  m.surface = Surface::disk();
  int b = addv(m, "b", VK::Boundary, 0);
  int e = addv(m, "e", VK::NonDegExtreme, 1);
  m.edges = {{b, e}};
  m.X = {b};
  auto r = compute(m, XSel::Boundary);
  CHECK(sq::build_equal(r.seq, sq::triv()));
  CHECK(gx::equal(r.pi1, gx::unit()));
  CHECK(r.betti1 == 0);

  // degenerate extreme of index m: z(m), and (1 -> Z_m = Z_m) without X
  ReebModel d;
  d.surface = Surface::disk();
  int b2 = addv(d, "b", VK::Boundary, 0);
  int de = addv(d, "e", VK::DegExtreme, 1, {}, 5);
  d.edges = {{b2, de}};
  d.X = {b2};
  auto rd = compute(d, XSel::Boundary);
  CHECK(sq::build_equal(rd.seq, sq::zseq(5)));
  CHECK(gx::equal(rd.pi1, gx::z()));
  auto closed = forget_boundary(rd, d);
  CHECK(gx::equal(closed->kernel, gx::unit()));
  CHECK(gx::equal(closed->middle, gx::zmod(5)));
  CHECK(gx::equal(closed->quotient, gx::zmod(5)));
}

TEST_CASE("disk one-saddle cases") {
  auto generic = compute(disk_one_saddle(false), XSel::Boundary);
  CHECK(sq::build_equal(generic.seq, sq::zseq(1)));
  CHECK(gx::equal(generic.pi1, gx::z()));
  CHECK(generic.homotopy.torus_rank == 1);
  CHECK(pi0_delta_rank(disk_one_saddle(false), {0}) == 1);

  auto twins = compute(disk_one_saddle(true), XSel::Boundary);
  CHECK(sq::build_equal(twins.seq, sq::wr(sq::triv(), 2)));
  CHECK(gx::equal(twins.pi1, gx::z()));
  CHECK(gx::equal(twins.seq->quotient, gx::zmod(2)));
  CHECK(sq::seq_in_family(twins.seq, sq::SeqFamily::ssZBtPt));
}

TEST_CASE("cylinder cases") {
  // no critical points, X = boundary: trivial sequence but full pi0 = Z
  ReebModel c;
  c.surface = Surface::cylinder();
  int b0 = addv(c, "b0", VK::Boundary, 0);
  int b1 = addv(c, "b1", VK::Boundary, 1);
  c.edges = {{b0, b1}};
  c.X = {b0, b1};
  auto r = compute(c, XSel::Boundary);
  CHECK(sq::build_equal(r.seq, sq::triv()));
  REQUIRE(r.pi0_stab_full.has_value());
  CHECK(gx::equal(*r.pi0_stab_full, gx::z()));

  auto re = compute(c, XSel::Empty);
  CHECK(re.exceptional == "cylinder");
  CHECK(re.homotopy.stabilizer == StabHomotopy::Circle);
  CHECK(re.orbit_type == "point");

  // far-boundary branch stays fixed: two-fixed-regions case
  ReebModel c2;
  c2.surface = Surface::cylinder();
  int a0 = addv(c2, "b0", VK::Boundary, 0);
  int a1 = addv(c2, "b1", VK::Boundary, 0);
  int s = addv(c2, "s", VK::CriticalLeaf, 2, {2});
  int mm = addv(c2, "m", VK::NonDegExtreme, 3);
  c2.edges = {{a0, s}, {a1, s}, {s, mm}};
  c2.X = {a0, a1};
  auto r2 = compute(c2, XSel::Boundary);
  // wr(triv x triv, 1) = z(1): middle is nontrivial
  CHECK(!gx::equal(r2.seq->middle, gx::unit()));
  CHECK(sq::build_equal(r2.seq, sq::zseq(1)));
}

TEST_CASE("torus fibration lookup") {
  ReebModel f;
  f.surface = Surface::torus();
  f.target_circle = true;
  f.fibration_degree = 4;
  auto r = compute(f, XSel::Empty);
  CHECK(r.exceptional == "torus_fibration");
  CHECK(gx::equal(r.seq->middle, gx::zmod(4)));
  CHECK(gx::equal(r.seq->kernel, gx::unit()));
  CHECK(gx::equal(r.pi1, gx::z()));
  CHECK(r.orbit_type == "circle");
  CHECK(r.homotopy.stabilizer == StabHomotopy::Circle);
}

TEST_CASE("torus cycle case") {
  // two identical saddle periods around the cycle: rotation order 2
  testutil::TreeGen g(testutil::env_seed(71), false, false);
  ReebModel t = g.torus_cycle(1, 2, 1);
  REQUIRE(reeb::validate(t).empty());
  auto r = compute(t, XSel::Empty);
  REQUIRE(r.seq->build == sq::BK::Wr);
  CHECK(r.seq->m == 2);
  CHECK(gx::in_family(r.pi1, gx::GroupFamily::ccB));
  // middle of the sequence is A wr_2 Z
  CHECK(r.pi1->kind == gx::GK::WrZ);
  CHECK(sq::seq_in_family(r.seq, sq::SeqFamily::ssZBtPt));
  // the closed row: A^m -> B wr Z_m ->> C wr Z_m
  REQUIRE(r.seq_closed.has_value());
  CHECK((*r.seq_closed)->build == sq::BK::GarsideQuot);
  CHECK(!gx::is_torsion_free((*r.seq_closed)->middle));

  // rotation order 3 leaves ssZBtPt but stays in ssZBP
  ReebModel t3 = g.torus_cycle(1, 3, 1);
  REQUIRE(reeb::validate(t3).empty());
  auto r3 = compute(t3, XSel::Empty);
  CHECK(r3.seq->m == 3);
  CHECK(!sq::seq_in_family(r3.seq, sq::SeqFamily::ssZBtPt));
  CHECK(sq::seq_in_family(r3.seq, sq::SeqFamily::ssZBP));
}

TEST_CASE("torus cycle with annotated sub-rotation") {
  testutil::TreeGen g(testutil::env_seed(73), false, false);
  ReebModel t = g.torus_cycle(1, 4, 1);  // 4 identical periods
  REQUIRE(reeb::validate(t).empty());
  auto r = compute(t, XSel::Empty);
  CHECK(r.seq->m == 4);  // inference takes the maximal rotation
  t.torus_action = {2, 1};
  auto r2 = compute(t, XSel::Empty);
  CHECK(r2.seq->m == 2);  // the annotation overrides
  t.torus_action = {3, 1};
  CHECK_THROWS_AS(compute(t, XSel::Empty), UnannotatedTorusSymmetry);
}

TEST_CASE("torus tree case") {
  // one two-saddle leaf whose complement is two disk caps
  ReebModel t;
  t.surface = Surface::torus();
  int k = addv(t, "k", VK::CriticalLeaf, 0, {2, 2});
  int m1 = addv(t, "m1", VK::NonDegExtreme, 1);
  int m2 = addv(t, "m2", VK::NonDegExtreme, -1);
  t.edges = {{k, m1}, {k, m2}};
  auto r = compute(t, XSel::Empty);
  CHECK(gx::equal(r.pi1, gx::prod({gx::z(), gx::z()})));
  CHECK(r.betti1 == 2);
  CHECK(r.homotopy.diffid == DiffFactor::Torus);

  // four identical caps with a free (2,2)-action: pi1 = 1 wr_{2,2} Z2 = Z2
  ReebModel t4;
  t4.surface = Surface::torus();
  int k4 = addv(t4, "k", VK::CriticalLeaf, 0, {4, 4});  // chi = -2... adjust
  t4.verts[k4].crit = {3, 3};                            // chi = 2 - 6 = -4
  for (int i = 0; i < 4; ++i) {
    int cap = addv(t4, ("m" + std::to_string(i)).c_str(), VK::NonDegExtreme, 1);
    t4.edges.push_back({k4, cap});
  }
  // chi: (2-6) + 4 = 0
  REQUIRE(reeb::validate(t4).empty());
  CHECK_THROWS_AS(compute(t4, XSel::Empty), UnannotatedTorusSymmetry);
  t4.torus_action = {2, 2};
  auto r4 = compute(t4, XSel::Empty);
  CHECK(gx::equal(r4.pi1, gx::wr_z2(gx::unit(), 2, 2)));
  CHECK(r4.betti1 == 2);
  // seq is the bottom row with finite middle over the kernel
  CHECK(gx::equal(r4.seq->quotient, r4.seq->middle));
}

TEST_CASE("negative Euler characteristic: pants") {
  ReebModel p;
  p.surface = Surface::generic(0, 3);
  int b0 = addv(p, "b0", VK::Boundary, 0);
  int b1 = addv(p, "b1", VK::Boundary, 0);
  int b2 = addv(p, "b2", VK::Boundary, 2);
  int s = addv(p, "s", VK::CriticalLeaf, 1, {2});
  p.edges = {{b0, s}, {b1, s}, {b2, s}};
  p.X = {b0, b1, b2};
  auto r = compute(p, XSel::Boundary);
  CHECK(sq::build_equal(r.seq, sq::triv()));
  CHECK(r.betti1 == 0);
  CHECK(r.homotopy.diffid == DiffFactor::Point);
}

TEST_CASE("negative Euler characteristic: genus two") {
  // closed genus-2 surface: min, max, and a chain of saddles
  ReebModel g2;
  g2.surface = Surface::generic(2, 0);
  int mn = addv(g2, "min", VK::NonDegExtreme, -10);
  int s1 = addv(g2, "s1", VK::CriticalLeaf, 0, {2, 2});   // chi -2
  int s2 = addv(g2, "s2", VK::CriticalLeaf, 1, {2, 2});   // chi -2
  int mx = addv(g2, "max", VK::NonDegExtreme, 10);
  // graph: min - s1 = s2 - max with a double edge... a tree is required, so
  // instead: min - s1 - s2 - max plus two extra caps to balance chi
  int c1 = addv(g2, "c1", VK::NonDegExtreme, 5);
  int c2 = addv(g2, "c2", VK::NonDegExtreme, 6);
  g2.edges = {{mn, s1}, {s1, s2}, {s2, mx}, {s1, c1}, {s2, c2}};
  // chi: 1 - 2 - 2 + 1 + 1 + 1 = 0... genus 2 needs -2: use {2,2,2} leaves
  g2.verts[s1].crit = {2, 2, 2};  // chi -4... recompute: want total -2
  g2.verts[s1].crit = {2, 2};
  g2.verts[s2].crit = {2, 2};
  // current chi = 1+1+1+1 -2 -2 = 0; drop the two caps to get -2
  g2.verts.pop_back();
  g2.verts.pop_back();
  g2.edges.pop_back();
  g2.edges.pop_back();
  // degree check: s1 has degree 2, cap = 2 - (-2) = 4, parity ok
  REQUIRE(reeb::validate(g2).empty());
  auto r = compute(g2, XSel::Empty);
  CHECK(sq::seq_in_family(r.seq, sq::SeqFamily::ssZBP));
  CHECK(gx::in_family(r.seq->kernel, gx::GroupFamily::ccZ));
  CHECK(gx::beta1(r.pi1) == r.betti1);
}

TEST_CASE("stabilizer homotopy dichotomy") {
  CHECK(stabilizer_homotopy(disk_one_saddle(false), XSel::Boundary) ==
        StabHomotopy::Contractible);
  ReebModel d;
  d.surface = Surface::disk();
  int b = addv(d, "b", VK::Boundary, 0);
  int e = addv(d, "e", VK::NonDegExtreme, 1);
  d.edges = {{b, e}};
  d.X = {b};
  CHECK(stabilizer_homotopy(d, XSel::Empty) == StabHomotopy::Circle);
  CHECK(stabilizer_homotopy(d, XSel::Boundary) == StabHomotopy::Contractible);
}

TEST_CASE("forgetting the boundary on a generic chain") {
  // two stacked saddles: seq = z(1)^2, closed form drops one Z
  ReebModel m;
  m.surface = Surface::disk();
  int b = addv(m, "b", VK::Boundary, 0);
  int s1 = addv(m, "s1", VK::CriticalLeaf, 1, {2});
  int s2 = addv(m, "s2", VK::CriticalLeaf, 2, {2});
  int m1 = addv(m, "m1", VK::NonDegExtreme, 3);
  int m2 = addv(m, "m2", VK::NonDegExtreme, 4);
  int m3 = addv(m, "m3", VK::NonDegExtreme, 5);
  m.edges = {{b, s1}, {s1, s2}, {s1, m1}, {s2, m2}, {s2, m3}};
  m.X = {b};
  auto r = compute(m, XSel::Boundary);
  CHECK(gx::beta1(r.seq->kernel) == 2);
  CHECK(pi0_delta_rank(m, m.X) == 2);
  auto closed = forget_boundary(r, m);
  CHECK(gx::beta1(closed->kernel) == 1);
  CHECK(gx::equal(closed->middle, gx::z()));
  // empty-X computation agrees
  auto re = compute(m, XSel::Empty);
  CHECK(gx::equal(re.seq->middle, closed->middle));
  CHECK(gx::equal(re.pi1, r.pi1));
  CHECK(re.homotopy.diffid == DiffFactor::Circle);
}

TEST_CASE("validation failures surface as errors") {
  ReebModel bad = disk_one_saddle(false);
  bad.verts[3].kind = VK::Boundary;  // second boundary circle on a disk
  CHECK_THROWS_AS(compute(bad, XSel::Boundary), ValidationFailed);
}

TEST_CASE("betti1 equals center rank and abelianization rank everywhere") {
  std::uint64_t seed = testutil::env_seed(79);
  for (int i = 0; i < 100; ++i) {
    testutil::TreeGen g(seed + i, true, false);
    ReebModel m = (i % 3 == 0) ? g.cylinder(3, i % 2) : g.disk(3);
    if (!reeb::validate(m).empty()) continue;
    auto r = compute(m, XSel::Boundary);
    CHECK(r.betti1 == gx::center_rank(r.pi1));
    CHECK(r.betti1 == gx::beta1(gx::abelianization(r.pi1)));
    CHECK(gx::equal(r.pi1, r.seq->middle));
  }
}

TEST_CASE("trace names the applied rules") {
  auto r = compute(disk_one_saddle(true), XSel::Boundary);
  bool saw_rotation = false;
  for (auto& t : r.trace) saw_rotation = saw_rotation || t.find("rotation m=2") != std::string::npos;
  CHECK(saw_rotation);
}
