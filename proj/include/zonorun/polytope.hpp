#pragma once

// H-representation polytopes with integer normals and rational offsets,
// exact vertex enumeration in dimensions <= 3, and the zonotope facet
// description.

#include <vector>

#include "zonorun/zonotope.hpp"

namespace zonorun {

struct RationalPolytope {
  int dim = 0;
  std::vector<IntVec> normals;  // a_i . x <= offsets_i
  std::vector<Rat> offsets;

  int facet_count() const { return static_cast<int>(normals.size()); }
  bool contains(const RatVec& x) const;
};

// Irredundant facet description of a zonotope anchored at the origin.
RationalPolytope zonotope_to_halfspaces(const Zonotope& z);  // dim <= 3

// Exact vertices (deduplicated); assumes p bounded.
std::vector<RatVec> polytope_vertices(const RationalPolytope& p);

RationalPolytope translate(const RationalPolytope& p, const RatVec& t);
RationalPolytope dilate(const RationalPolytope& p, const Rat& k);  // about the origin, k > 0

}  // namespace zonorun
