#pragma once

// Velocity vectors, lonely-runner zonotopes, and the exact instance checks:
// the kinematic sup-min gap, the geometric lattice-point test, the covering
// radius decision for the shifted conjecture, and the gcd reduction rules.

#include <optional>
#include <string>

#include "zonorun/covering.hpp"
#include "zonorun/zonotope.hpp"

namespace zonorun {

class VelocityVector {
 public:
  // entries are sorted ascending; all must be positive
  static VelocityVector from(std::vector<Int> entries);
  static VelocityVector parse(const std::string& csv);

  int runners() const { return static_cast<int>(v_.size()); }
  const std::vector<Int>& entries() const { return v_; }
  const Int& operator[](int i) const { return v_[static_cast<size_t>(i)]; }
  Int gcd_all() const;
  bool coprime() const { return gcd_all() == 1; }
  bool distinct() const;
  std::string to_string() const;

 private:
  std::vector<Int> v_;
};

// The (n-1)-dimensional zonotope whose volume vector is v; canonicalized so
// equal velocity vectors produce identical generator matrices.
Zonotope build_zonotope(const VelocityVector& v);

struct LrcVerdict {
  Rat max_gap;      // sup over t of min_i ||v_i t||
  Rat witness_time; // smallest attaining t in [0, 1)
  bool holds;       // max_gap >= 1/(n+1)
};
LrcVerdict check_lrc_kinematic(const VelocityVector& v);

struct GeometricCheck {
  bool holds;
  std::optional<RatVec> witness;  // point of x + Z^(n-1) inside the shrunk body
};
GeometricCheck check_lrc_geometric(const VelocityVector& v, const Int& budget = Int(10000000));

struct SlrcResult {
  bool holds;
  Rat mu;
  bool tight;  // mu equals (n-1)/(n+1) exactly
};
SlrcResult check_slrc(const VelocityVector& v);

// binom(n+1, 2)^(n-1): instances with more lattice points than this are
// settled by induction, so checking up to the bound is enough.
Int finite_check_bound(int n);

struct ReductionTag {
  enum class Rule { None, AllButOneGcd, AllButTwoGcd };
  Rule rule = Rule::None;
  std::vector<int> subset;  // indices sharing the factor
  Int factor = 0;
  std::string to_string() const;
};
ReductionTag gcd_reduction_filter(const VelocityVector& v);

}  // namespace zonorun
