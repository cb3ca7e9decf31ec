#pragma once

// Exact covering radii of rational polytopes in dimensions 1..3 with respect
// to arbitrary rational lattices, the decision procedure mu(P) <= mu*, and
// the projection/fiber upper bounds used to reason above dimension 3.

#include <string>

#include "zonorun/polytope.hpp"

namespace zonorun {

struct LatticeBasis {
  RatMat columns;  // d x d, nonsingular; columns span the lattice
  static LatticeBasis standard(int d);
};

struct CoveringCertificate {
  Rat mu;
  RatVec deep_point;  // last-covered point: min-gauge over translates equals mu
  enum class Mode { Exact, UpperBoundDecision } mode = Mode::Exact;
  long translates_checked = 0;
  std::string to_text() const;  // "mu = p/q, deep_point = (...), translates_checked = N"
};

// True iff mu(P, lattice) <= mu_star, decided by exact polyhedral
// set-difference of the closed translate cover over a fundamental cell.
bool certify_mu_upper(const RationalPolytope& p, const LatticeBasis& lattice, const Rat& mu_star);
bool certify_mu_upper(const RationalPolytope& p, const Rat& mu_star);

// lower_hint, when positive, must be a proven lower bound on the covering
// radius (e.g. 1/lattice-width); it seeds the bracketing search.
CoveringCertificate covering_radius(const RationalPolytope& p, const LatticeBasis& lattice,
                                    const Rat& lower_hint = Rat(0));
CoveringCertificate covering_radius(const RationalPolytope& p);
CoveringCertificate covering_radius(const Zonotope& z);  // dim <= 3, standard lattice

// lambda1(Z-Z) + mu of the projection along an attaining vector; exact
// covering radii are used once the recursion reaches dimension <= 3.
Rat mu_projection_bound(const Zonotope& z);

// max{mu(projection along span of the selected generators), mu(sub-zonotope
// in its saturated span)}; every fiber contains a sub-zonotope translate.
Rat mu_fiber_bound(const Zonotope& z, const std::vector<int>& generator_subset);

}  // namespace zonorun
