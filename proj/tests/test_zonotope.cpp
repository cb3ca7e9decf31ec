#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "zonorun/zonotope.hpp"

using namespace zonorun;

namespace {

IntMat mat(std::initializer_list<std::initializer_list<long>> rows) {
  IntMat m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (long x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

Zonotope zono(std::initializer_list<std::initializer_list<long>> gen_rows,
              GeneratorPolicy policy = GeneratorPolicy::MergePairs) {
  // rows given generator-per-row; transpose into columns
  IntMat byrow = mat(gen_rows);
  return Zonotope::from_columns(IntMat(byrow.transpose()), policy);
}

// volume vector (1,2,3): 1*(2,1) + 2*(-1,1) + 3*(0,-1) = 0, spans Z^2
Zonotope z123() { return zono({{2, 1}, {-1, 1}, {0, -1}}); }
// volume vector (2,3,4): 2*(1,1) + 3*(2,-2) + 4*(-2,1) = 0
Zonotope z234() { return zono({{1, 1}, {2, -2}, {-2, 1}}); }
// volume vector (1,2,3,4): (-4,2,3) + 2(0,-1,0) + 3(0,0,-1) + 4(1,0,0) = 0
Zonotope z1234() { return zono({{-4, 2, 3}, {0, -1, 0}, {0, 0, -1}, {1, 0, 0}}); }
Zonotope unit_cube(int d) {
  IntMat g = IntMat::Identity(d, d);
  return Zonotope::from_columns(g);
}
Zonotope parallelogram(long p, long q) { return zono({{1, 0}, {p, q}}); }

Zonotope random_zonotope(std::mt19937_64& rng, int d, int max_entry, int extra) {
  std::uniform_int_distribution<int> entry(-max_entry, max_entry);
  while (true) {
    int n = d + static_cast<int>(rng() % static_cast<unsigned>(extra + 1));
    IntMat g(d, n);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = entry(rng);
    try {
      return Zonotope::from_columns(g);
    } catch (const PreconditionError&) {
      continue;
    }
  }
}

}  // namespace

TEST_CASE("construction: zero generators dropped, equal/opposite pairs merged") {
  Zonotope z = zono({{1, 0}, {0, 0}, {-1, 0}, {0, 1}});
  CHECK(z.was_normalized());
  CHECK(z.count() == 2);  // (1,0) and (-1,0) merged into (2,0)
  CHECK(volume(z) == 2);
  CHECK_THROWS_AS(zono({{1, 0}, {2, 0}}), PreconditionError);  // rank 1 in R^2
}

TEST_CASE("volume: fixed cases") {
  CHECK(volume(unit_cube(2)) == 1);
  CHECK(volume(unit_cube(3)) == 1);
  CHECK(volume(z123()) == 6);
  CHECK(volume(z1234()) == 10);
  CHECK(volume(parallelogram(2, 5)) == 5);
}

TEST_CASE("volume equals Pick's theorem area on random 2D zonotopes") {
  std::mt19937_64 rng(811);
  for (int trial = 0; trial < 120; ++trial) {
    Zonotope z = random_zonotope(rng, 2, 3, 2);
    IntVec lo(2), hi(2);
    for (int i = 0; i < 2; ++i) {
      IntVec e = IntVec::Zero(2);
      e(i) = 1;
      lo(i) = z.support_min(e);
      hi(i) = z.support_max(e);
    }
    Int interior = 0, boundary = 0;
    for (Int x = lo(0); x <= hi(0); ++x) {
      for (Int y = lo(1); y <= hi(1); ++y) {
        RatVec p(2);
        p(0) = Rat(x);
        p(1) = Rat(y);
        if (!z.contains(p)) continue;
        bool on_boundary = false;
        for (const IntVec& a : z.facet_normals()) {
          Rat s = Rat(a(0)) * p(0) + Rat(a(1)) * p(1);
          if (s == Rat(z.support_min(a)) || s == Rat(z.support_max(a))) {
            on_boundary = true;
            break;
          }
        }
        (on_boundary ? boundary : interior) += 1;
      }
    }
    // Pick: area = interior + boundary/2 - 1
    CHECK(2 * volume(z) == 2 * interior + boundary - 2);
  }
}

TEST_CASE("sub_volume: conventions and gcd identity") {
  Zonotope z = z234();
  CHECK(sub_volume(z, {}) == 1);
  CHECK(sub_volume(z, {0}) == 1);  // (1,1) primitive
  CHECK(sub_volume(z, {1}) == 2);  // (2,-2) has content 2
  CHECK(sub_volume(z, {2}) == 1);
  CHECK(sub_volume(z, {0, 1}) == 4);
  CHECK(sub_volume(z, {0, 1, 2}) == 0);  // dependent

  // vol(Z_S) = gcd(v_i : i not in S) for the volume vector (2,3,4)
  VolumeVector v = volume_vector(z);
  REQUIRE(v.entries.size() == 3);
  CHECK(v.entries[0] == 2);
  CHECK(v.entries[1] == 3);
  CHECK(v.entries[2] == 4);
  for (unsigned mask = 0; mask < 8; ++mask) {
    std::vector<int> subset;
    Int g = 0;
    for (int i = 0; i < 3; ++i) {
      if (mask & (1u << i))
        subset.push_back(i);
      else
        g = gcd(g, v.entries[static_cast<size_t>(i)]);
    }
    if (mask == 7) g = 0;  // complement empty: vol(Z_[n]) = 0 in dim 2
    CHECK(sub_volume(z, subset) == g);
  }
}

TEST_CASE("lattice point counts: fixed cases") {
  Zonotope seg = zono({{3}});
  CHECK(lattice_point_count_enum(seg) == 4);
  CHECK(lattice_point_count_formula(seg) == 4);

  CHECK(lattice_point_count_enum(z123()) == 10);
  CHECK(lattice_point_count_formula(z123()) == 10);

  CHECK(lattice_point_count_enum(parallelogram(2, 5)) == 8);
  CHECK(lattice_point_count_formula(parallelogram(2, 5)) == 8);

  Zonotope square = unit_cube(2);
  CHECK(lattice_point_count_formula(square) == 4);

  CHECK(lattice_point_count_enum(z1234()) == lattice_point_count_formula(z1234()));
}

TEST_CASE("point-count formula equals enumeration; volume strictly below") {
  std::mt19937_64 rng(2025);
  for (int trial = 0; trial < 60; ++trial) {
    int d = 2 + static_cast<int>(rng() % 2);
    Zonotope z = random_zonotope(rng, d, 2, 2);
    Int pts = lattice_point_count_enum(z);
    CHECK(pts == lattice_point_count_formula(z));
    CHECK(volume(z) < pts);
  }
}

TEST_CASE("enumeration budget is enforced") {
  Zonotope big = zono({{100, 0}, {0, 100}});
  CHECK_THROWS_AS(lattice_point_count_enum(big, Int(100)), ResourceError);
}

TEST_CASE("gcd_subset_sum") {
  VolumeVector v123{{Int(1), Int(2), Int(3)}, Int(1)};
  CHECK(gcd_subset_sum(v123) == 10);

  VolumeVector ones{{Int(1), Int(1), Int(1)}, Int(1)};
  CHECK(gcd_subset_sum(ones) == 7);  // 2^3 - 1
  // matches enumeration of a zonotope with volume vector (1,1,1)
  Zonotope hexa = zono({{-1, 0}, {0, -1}, {1, 1}});
  CHECK(lattice_point_count_enum(hexa) == 7);

  VolumeVector v1234{{Int(1), Int(2), Int(3), Int(4)}, Int(1)};
  CHECK(gcd_subset_sum(v1234) == lattice_point_count_enum(z1234()));

  VolumeVector bad{{Int(2), Int(4)}, Int(2)};
  CHECK_THROWS_AS(gcd_subset_sum(bad), PreconditionError);
}

TEST_CASE("lattice width: fixed cases") {
  auto cube = lattice_width(unit_cube(3));
  CHECK(cube.width == 1);
  CHECK(cube.functionals.size() == 3);

  auto p25 = lattice_width(parallelogram(2, 5));
  CHECK(p25.width == 3);

  auto p11 = lattice_width(parallelogram(1, 1));
  CHECK(p11.width == 1);

  auto hexa = lattice_width(z123());
  CHECK(hexa.width == 3);  // one of the width-three hexagons
}

TEST_CASE("lattice width: brute force agreement on random 2D instances") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> c(-8, 8);
  for (int trial = 0; trial < 80; ++trial) {
    Zonotope z = random_zonotope(rng, 2, 3, 2);
    auto res = lattice_width(z);
    Int best = 0;
    for (int a = -8; a <= 8; ++a) {
      for (int b = 0; b <= 8; ++b) {
        if (a == 0 && b == 0) continue;
        IntVec f(2);
        f(0) = a;
        f(1) = b;
        Int w = 0;
        for (int j = 0; j < z.count(); ++j) w += abs(f.dot(z.generators().col(j)));
        if (best == 0 || w < best) best = w;
      }
    }
    CHECK(res.width <= best);  // brute force box is not exhaustive, ours is
    for (const IntVec& f : res.functionals) {
      Int w = 0;
      for (int j = 0; j < z.count(); ++j) w += abs(f.dot(z.generators().col(j)));
      CHECK(w == res.width);
    }
  }
}

TEST_CASE("first minimum of the difference body") {
  auto cube = first_minimum_diff(unit_cube(3));
  CHECK(cube.lambda1 == 1);
  CHECK(abs(cube.vector(0)) + abs(cube.vector(1)) + abs(cube.vector(2)) == 1);

  Zonotope seg = zono({{4}});
  auto s = first_minimum_diff(seg);
  CHECK(s.lambda1 == make_rat(1, 4));

  // returned vector attains the gauge, and nothing smaller does (small search)
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    Zonotope z = random_zonotope(rng, 2, 3, 2);
    auto fm = first_minimum_diff(z);
    CHECK(difference_body_gauge(z, fm.vector) == fm.lambda1);
    for (int a = -4; a <= 4; ++a)
      for (int b = -4; b <= 4; ++b) {
        if (a == 0 && b == 0) continue;
        IntVec x(2);
        x(0) = a;
        x(1) = b;
        CHECK(difference_body_gauge(z, x) >= fm.lambda1);
      }
  }
}

TEST_CASE("pigeonhole bound: many lattice points force a short vector") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 40; ++trial) {
    int d = 2 + static_cast<int>(rng() % 2);
    Zonotope z = random_zonotope(rng, d, 2, 2);
    Int pts = lattice_point_count_enum(z);
    auto fm = first_minimum_diff(z);
    Int ell = 1;
    while (true) {
      Int next = ell + 1;
      Int pw = next * next;
      if (d == 3) pw *= next;
      if (pw >= pts) break;
      ell = next;
    }
    // pts > ell^d, so lambda1(Z - Z) <= 1/ell
    CHECK(fm.lambda1 <= make_rat(1, ell));
  }
}

TEST_CASE("cosimplicity: fixed verdicts") {
  auto w = is_cosimple(z1234());
  CHECK(w.cosimple);
  REQUIRE(w.dependence.has_value());
  std::multiset<Int> abs_dep;
  for (Eigen::Index i = 0; i < w.dependence->size(); ++i) abs_dep.insert(abs((*w.dependence)(i)));
  CHECK(abs_dep == std::multiset<Int>({1, 2, 3, 4}));

  Zonotope tri = zono({{1, 0}, {0, 1}, {1, 1}});
  auto o = is_cosimple(tri);
  CHECK(!o.cosimple);
  REQUIRE(o.obstruction.has_value());
  CHECK(o.obstruction->case_tag == 2);
  IntVec f = o.obstruction->functional;
  CHECK(abs(f(0)) == 1);
  CHECK(abs(f(1)) == 1);
  CHECK(f(0) + f(1) == 0);  // x - y up to sign

  Zonotope oct = zono({{1, 0}, {0, 1}, {1, 1}, {1, -1}});
  CHECK(is_cosimple(oct).cosimple);  // d+2 vectors in general position
}

TEST_CASE("cosimplicity agrees with a small-dependence brute-force oracle") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 120; ++trial) {
    int d = 2 + static_cast<int>(rng() % 2);
    Zonotope z = random_zonotope(rng, d, 2, 3);
    if (z.count() > 6) continue;
    auto verdict = is_cosimple(z);
    // Oracle: search integer dependences with coefficients in [-20, 20]
    auto kernel = integer_kernel_basis(z.generators());
    const int k = static_cast<int>(kernel.size());
    const int n = z.count();
    bool found = false;
    if (k > 0) {
      std::vector<int> c(static_cast<size_t>(k), -6);
      while (!found) {
        IntVec lam = IntVec::Zero(n);
        for (int i = 0; i < k; ++i) lam += Int(c[static_cast<size_t>(i)]) * kernel[static_cast<size_t>(i)];
        bool ok = true;
        Int maxabs = 0;
        std::set<Int> seen;
        for (int i = 0; i < n && ok; ++i) {
          Int a = abs(lam(i));
          maxabs = std::max(maxabs, a);
          if (a == 0 || !seen.insert(a).second) ok = false;
        }
        if (ok && maxabs <= 20) found = true;
        int pos = 0;
        while (pos < k && c[static_cast<size_t>(pos)] == 6) {
          c[static_cast<size_t>(pos)] = -6;
          ++pos;
        }
        if (pos == k) break;
        if (!found) ++c[static_cast<size_t>(pos)];
      }
    }
    if (found) CHECK(verdict.cosimple);
    if (!verdict.cosimple) CHECK(!found);
  }
}

TEST_CASE("gale transform") {
  IntMat a = mat({{1, 0, -1}, {0, 1, -1}});
  IntMat b = gale_transform(a);
  REQUIRE(b.rows() == 1);
  REQUIRE(b.cols() == 3);
  CHECK(b(0, 0) == b(0, 1));
  CHECK(b(0, 1) == b(0, 2));

  std::mt19937_64 rng(67);
  std::uniform_int_distribution<int> entry(-4, 4);
  int done = 0;
  while (done < 60) {
    IntMat m(3, 5);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 5; ++j) m(i, j) = entry(rng);
    if (rank(m) != 3) continue;
    IntMat g = gale_transform(m);
    // rows of g are dependences of m; rows of m are dependences of g
    CHECK((m * g.transpose()).isZero());
    CHECK(rank(g) == 2);
    ++done;
  }
  CHECK_THROWS_AS(gale_transform(mat({{1, 2}, {2, 4}})), PreconditionError);
}

TEST_CASE("pluecker relation") {
  std::mt19937_64 rng(71);
  std::uniform_int_distribution<int> entry(-5, 5);
  for (int trial = 0; trial < 100; ++trial) {
    IntMat m(2, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) = entry(rng);
    auto mm = maximal_minors(m);
    std::array<Int, 6> p{mm[0], mm[1], mm[2], mm[3], mm[4], mm[5]};
    CHECK(plucker_check(p));
  }
  CHECK(!plucker_signable({Int(1), Int(1), Int(1), Int(1), Int(1), Int(1)}));
  CHECK(plucker_signable({Int(1), Int(1), Int(1), Int(1), Int(1), Int(2)}));
  CHECK(!plucker_signable({Int(1), Int(1), Int(1), Int(1), Int(1), Int(3)}));
  CHECK(!plucker_signable({Int(1), Int(1), Int(1), Int(1), Int(2), Int(2)}));
}

TEST_CASE("canonical generator matrix is an equivalence invariant") {
  std::mt19937_64 rng(83);
  std::uniform_int_distribution<int> entry(-2, 2);
  int done = 0;
  while (done < 40) {
    Zonotope z = random_zonotope(rng, 2, 3, 2);
    if (z.count() > 5) continue;
    // random unimodular transform: shear + swap + signs
    IntMat u = mat({{1, 0}, {0, 1}});
    u(0, 1) = entry(rng);
    IntMat g2 = u * z.generators();
    std::vector<int> perm(static_cast<size_t>(z.count()));
    for (int i = 0; i < z.count(); ++i) perm[static_cast<size_t>(i)] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    IntMat g3(2, z.count());
    for (int j = 0; j < z.count(); ++j) {
      IntVec c = g2.col(perm[static_cast<size_t>(j)]);
      if (rng() % 2) c = -c;
      g3.col(j) = c;
    }
    Zonotope z3 = Zonotope::from_columns(g3, GeneratorPolicy::KeepAll);
    if (z3.count() != z.count()) continue;
    CHECK(canonical_generator_matrix(z) == canonical_generator_matrix(z3));
    ++done;
  }
  // Lemma-style parallelogram reductions: P_{2,5} ~ P_{3,5}, P_{3,8} ~ P_{5,8}
  CHECK(canonical_generator_matrix(parallelogram(2, 5)) ==
        canonical_generator_matrix(parallelogram(3, 5)));
  CHECK(canonical_generator_matrix(parallelogram(3, 8)) ==
        canonical_generator_matrix(parallelogram(5, 8)));
  CHECK(canonical_generator_matrix(parallelogram(2, 7)) ==
        canonical_generator_matrix(parallelogram(5, 7)));
  CHECK(canonical_generator_matrix(parallelogram(1, 5)) !=
        canonical_generator_matrix(parallelogram(2, 5)));
}

TEST_CASE("zonotope text format round trip") {
  Zonotope z = z1234();
  std::ostringstream out;
  write_zonotope(out, z);
  std::istringstream in(out.str());
  Zonotope back = read_zonotope(in, GeneratorPolicy::KeepAll);
  CHECK(back.generators() == z.generators());

  std::istringstream bad("2");
  CHECK_THROWS_AS(read_zonotope(bad), PreconditionError);
}
