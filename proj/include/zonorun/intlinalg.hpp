#pragma once

// Exact integer/rational linear algebra: fraction-free determinants, minors,
// Hermite normal form with transform, integer kernel lattices, and
// unimodular extensions of saturated lattice bases.

#include <optional>
#include <vector>

#include "zonorun/numeric.hpp"

namespace zonorun {

using IntMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using RatMat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using RatVec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

RatMat to_rational(const IntMat& m);
RatVec to_rational(const IntVec& v);

// gcd of all entries; 0 for the zero vector.
Int content(const IntVec& v);

// v / content(v), sign-normalized so the first nonzero entry is positive.
IntVec primitive_part(const IntVec& v);

// Exact determinant by Bareiss fraction-free elimination.
Int determinant(const IntMat& m);

// adj(m) with m * adj(m) = det(m) * I.
IntMat adjugate(const IntMat& m);

// Indices of the lexicographically first `want` linearly independent columns;
// throws PreconditionError when fewer exist.
std::vector<int> independent_columns(const IntMat& m, int want);

// All d x d column minors of a d x n matrix (d <= n), signed, in
// lexicographic order of the column subsets.
std::vector<Int> maximal_minors(const IntMat& m);

struct HnfResult {
  IntMat h;  // row-style HNF: positive pivots, entries above in [0, pivot)
  IntMat u;  // unimodular, u * m = h
};
HnfResult hermite_normal_form(const IntMat& m);

int rank(const IntMat& m);

// Basis of ker(m) ∩ Z^cols as a lattice (saturated, so each vector is
// primitive). Sign convention: first nonzero entry positive.
std::vector<IntVec> integer_kernel_basis(const IntMat& m);

struct BasisExtension {
  IntMat basis;       // d x d unimodular; last s columns span the input lattice
  IntMat projection;  // (d-s) x d, kernel = input lattice span, maps Z^d onto Z^(d-s)
};

// Extends a saturated lattice basis (columns of lb, d x s) to a basis of Z^d.
BasisExtension extend_lattice_basis(const IntMat& lb);

// Unimodular matrix whose last column is w (w primitive).
IntMat extend_primitive_to_basis(const IntVec& w);

// Exact solve of a square rational system; nullopt when singular.
std::optional<RatVec> solve_square(const RatMat& a, const RatVec& b);

}  // namespace zonorun
