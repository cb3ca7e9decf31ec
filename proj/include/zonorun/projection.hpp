#pragma once

// Lattice projections along a primitive vector, the rational coefficients
// expressing that vector in the zonotope generators, the n^2 natural
// sub-zonotope candidates of the projection with their predicted volume
// vectors, and the inner-LRZ / inner-sLRZ constructions.

#include "zonorun/lvp.hpp"
#include "zonorun/zonotope.hpp"

namespace zonorun {

struct LatticeProjection {
  IntVec direction;  // primitive w
  IntMat matrix;     // (d-1) x d, maps Z^d onto Z^(d-1), kernel R w
};

LatticeProjection projection_along(const IntVec& w);

enum class RhoBasis { LexFirst, LexLast };

// Exact rational coefficients with sum rho_i u_i = w, supported on the
// lexicographically first (or last) independent column basis. Any solution
// works downstream; the choice is fixed for reproducibility.
RatVec rho_coefficients(const Zonotope& z, const IntVec& w, RhoBasis basis = RhoBasis::LexFirst);

enum class CandidateKind { TypeI, TypeIIPlus, TypeIIMinus };

struct SubZonotopeCandidate {
  CandidateKind kind;
  std::vector<int> labels;     // TypeI: {translated index}; TypeII: {k, l}
  IntMat generators;           // (d-1) x (n-1) projected generators
  IntVec translate;            // lattice translate in Z^(d-1)
  std::vector<Int> predicted;  // predicted |volume| per generator, combined entry last
  IntVec projected_center;     // doubled center of the projected zonotope (integer)
};

// The n^2 candidates: n of Type I (drop one generator, translate by it) and
// n(n-1) of Type II (fuse a pair by sum, or by difference with translate).
std::vector<SubZonotopeCandidate> candidate_subzonotopes(const Zonotope& z, const IntVec& w);

// Entrywise check of the predicted volumes against direct maximal minors of
// the projected generators.
bool verify_projected_volumes(const SubZonotopeCandidate& c);

// A Type II candidate with all predicted volumes nonzero, built from the
// extreme-slope pair; existence is unconditional for an LRZ.
SubZonotopeCandidate find_inner_lrz(const Zonotope& z, const IntVec& w);

struct InnerSlrzResult {
  std::optional<SubZonotopeCandidate> candidate;  // nonzero pairwise-distinct volumes
  std::optional<LvpResult<Rat>> lvp_failure;      // parallel classes when no candidate exists
};

InnerSlrzResult find_inner_slrz(const Zonotope& z, const IntVec& w);

// The slope family p_i = (rho_i, v_i) driving the candidate analysis, signs
// normalized so every second coordinate is positive.
std::vector<PlanarVec<Rat>> slope_family(const Zonotope& z, const IntVec& w);

// Candidate search for an arbitrary slope family; exposed so the failure
// path can be exercised over Q(sqrt2) where rational families cannot fail.
template <typename Scalar>
std::optional<std::pair<CandidateKind, std::pair<int, int>>> find_slrz_candidate_for_family(
    const std::vector<PlanarVec<Scalar>>& p);

}  // namespace zonorun
