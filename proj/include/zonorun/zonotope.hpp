#pragma once

// Lattice zonotopes and their exact invariants: volume, lattice-point
// counts, gcd identities, lattice width, first successive minimum of the
// difference body, cosimplicity, Gale transforms.

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "zonorun/intlinalg.hpp"

namespace zonorun {

enum class GeneratorPolicy {
  MergePairs,  // drop zeros, merge equal/opposite pairs into their double
  KeepAll      // drop zeros only (dependence structure preserved)
};

class Zonotope {
 public:
  // Columns of g are the generators; must span R^d after normalization.
  static Zonotope from_columns(const IntMat& g,
                               GeneratorPolicy policy = GeneratorPolicy::MergePairs);

  int dim() const { return static_cast<int>(gens_.rows()); }
  int count() const { return static_cast<int>(gens_.cols()); }
  const IntMat& generators() const { return gens_; }
  IntVec generator(int i) const { return gens_.col(i); }
  bool was_normalized() const { return normalized_; }

  RatVec center() const;

  // Primitive facet-direction normals, one per +- pair, canonical sign.
  const std::vector<IntVec>& facet_normals() const;

  // Support values from the origin anchor: for normal a the zonotope lies in
  // [sum min(0, a.u_i), sum max(0, a.u_i)].
  Int support_max(const IntVec& a) const;
  Int support_min(const IntVec& a) const;

  bool contains(const RatVec& p) const;

 private:
  Zonotope() = default;
  IntMat gens_;
  bool normalized_ = false;
  mutable std::vector<IntVec> normals_;  // lazy
};

// Text format: first line "d n", then n lines of d integers (one generator
// per line).
Zonotope read_zonotope(std::istream& in, GeneratorPolicy policy = GeneratorPolicy::MergePairs);
void write_zonotope(std::ostream& out, const Zonotope& z);

struct VolumeVector {
  std::vector<Int> entries;
  Int gcd_all;
};

// Absolute maximal minors of the generator matrix, n = d+1 only.
VolumeVector volume_vector(const Zonotope& z);
bool is_lrz(const Zonotope& z);   // n = d+1, all volume entries nonzero
bool is_slrz(const Zonotope& z);  // LRZ with pairwise distinct entries

Int volume(const Zonotope& z);
Int sub_volume(const Zonotope& z, const std::vector<int>& subset);

Int lattice_point_count_formula(const Zonotope& z);
Int lattice_point_count_enum(const Zonotope& z, const Int& budget = Int(10000000));

// Sum of gcd(v_i : i in S) over nonempty S; requires gcd(v) = 1. Equals the
// lattice-point count of the zonotope with volume vector v.
Int gcd_subset_sum(const VolumeVector& v);

struct WidthResult {
  Int width;
  std::vector<IntVec> functionals;  // all attaining primitive functionals, up to sign
};
WidthResult lattice_width(const Zonotope& z);

struct FirstMinimum {
  Rat lambda1;
  IntVec vector;  // primitive lattice vector attaining lambda1(Z - Z)
};
FirstMinimum first_minimum_diff(const Zonotope& z);

// Gauge of the difference body Z - Z at x (exact; zero only at x = 0).
Rat difference_body_gauge(const Zonotope& z, const IntVec& x);

struct CosimplicityWitness {
  bool cosimple = false;
  // Present when cosimple and the certificate search succeeded: integer
  // dependence with nonzero, pairwise distinct absolute entries.
  std::optional<IntVec> dependence;
  bool witness_search_exhausted = false;
  struct Obstruction {
    IntVec functional;          // vanishes on all generators outside `outside`
    int case_tag = 0;           // 1: all but one in a hyperplane; 2: all but two, equidistant
    std::vector<int> outside;   // the exceptional generator indices
  };
  std::optional<Obstruction> obstruction;
};
CosimplicityWitness is_cosimple(const Zonotope& z);

// Dual configuration b with dep(b) = eval(a), eval(b) = dep(a); columns are
// the dual vectors, labelled by the input columns.
IntMat gale_transform(const IntMat& a);

// p = (p12, p13, p14, p23, p24, p34): p14 p23 - p13 p24 + p12 p34 = 0.
bool plucker_check(const std::array<Int, 6>& p);

// Whether some assignment of the six absolute values to positions and signs
// satisfies the relation; a necessary condition for realizability as the
// pairwise minors of four planar vectors.
bool plucker_signable(const std::array<Int, 6>& absvals);

// Canonical representative of the generator matrix under left GL_d(Z),
// column sign flips and column order (unimodular equivalence of zonotopes).
IntMat canonical_generator_matrix(const Zonotope& z);

}  // namespace zonorun
