#include "zonorun/lrz.hpp"

#include <algorithm>
#include <set>

#include "zonorun/textio.hpp"

namespace zonorun {

VelocityVector VelocityVector::from(std::vector<Int> entries) {
  if (entries.empty()) throw PreconditionError("VelocityVector: empty");
  for (const Int& x : entries)
    if (x <= 0) throw PreconditionError("VelocityVector: entries must be positive");
  std::sort(entries.begin(), entries.end());
  VelocityVector v;
  v.v_ = std::move(entries);
  return v;
}

VelocityVector VelocityVector::parse(const std::string& csv) {
  return from(parse_int_list(csv));
}

Int VelocityVector::gcd_all() const {
  Int g = 0;
  for (const Int& x : v_) g = gcd(g, x);
  return g;
}

bool VelocityVector::distinct() const {
  for (size_t i = 0; i + 1 < v_.size(); ++i)
    if (v_[i] == v_[i + 1]) return false;
  return true;
}

std::string VelocityVector::to_string() const {
  std::string s;
  for (size_t i = 0; i < v_.size(); ++i) {
    if (i) s += ",";
    s += v_[i].get_str();
  }
  return s;
}

Zonotope build_zonotope(const VelocityVector& v) {
  if (!v.coprime()) throw PreconditionError("build_zonotope: gcd of velocities must be 1");
  const int n = v.runners();
  if (n < 2) throw PreconditionError("build_zonotope: needs at least two velocities");
  const int d = n - 1;
  // seed generators: -v_n e_i and (v_1, ..., v_{n-1})
  IntMat m(d, n);
  m.setZero();
  for (int i = 0; i < d; ++i) m(i, i) = -v[n - 1];
  for (int i = 0; i < d; ++i) m(i, n - 1) = v[i];
  // basis of the lattice spanned by the seed generators
  auto h = hermite_normal_form(IntMat(m.transpose())).h;  // rows span the column lattice
  IntMat basis(d, d);
  for (int i = 0; i < d; ++i) basis.col(i) = h.row(i).transpose();
  Int det = determinant(basis);
  IntMat adj = adjugate(basis);
  IntMat g(d, n);
  for (int j = 0; j < n; ++j) {
    IntVec t = adj * m.col(j);
    for (int i = 0; i < d; ++i) {
      if (t(i) % det != 0) throw PreconditionError("build_zonotope: lattice transform failed");
      g(i, j) = t(i) / det;
    }
  }
  // canonical form under the remaining GL_d(Z) freedom
  IntMat canon = hermite_normal_form(g).h;
  return Zonotope::from_columns(canon, GeneratorPolicy::KeepAll);
}

namespace {

Rat dist_to_nearest_int(const Rat& x) {
  Int fl = rat_floor(x);
  Rat frac = x - Rat(fl);
  return std::min(frac, Rat(Rat(1) - frac));
}

}  // namespace

LrcVerdict check_lrc_kinematic(const VelocityVector& v) {
  const int n = v.runners();
  // min_i ||v_i t|| is piecewise linear in t; its maximum over [0,1) is
  // attained at a tent peak t = k/(2 v_i) or at a crossing of two tents,
  // ||v_i t|| = ||v_j t||, i.e. t = m/(v_i + v_j) or t = m/(v_i - v_j).
  std::set<Rat> times;
  auto add_times = [&](const Int& den) {
    if (den == 0) return;
    Int d = abs(den);
    for (Int k = 0; k < d; ++k) times.insert(make_rat(k, d));
  };
  for (int i = 0; i < n; ++i) add_times(2 * v[i]);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      add_times(v[i] + v[j]);
      add_times(v[i] - v[j]);
    }
  LrcVerdict out;
  out.max_gap = 0;
  out.witness_time = 0;
  for (const Rat& t : times) {
    Rat gap = dist_to_nearest_int(Rat(v[0]) * t);
    for (int i = 1; i < n; ++i) gap = std::min(gap, dist_to_nearest_int(Rat(v[i]) * t));
    if (gap > out.max_gap) {
      out.max_gap = gap;
      out.witness_time = t;
    }
  }
  out.holds = out.max_gap >= make_rat(1, n + 1);
  return out;
}

GeometricCheck check_lrc_geometric(const VelocityVector& v, const Int& budget) {
  const int n = v.runners();
  if (n > 5) throw UnsupportedError("check_lrc_geometric: more than five velocities");
  Zonotope z = build_zonotope(v);
  const int d = z.dim();
  RatVec x = z.center();
  Rat c = make_rat(n - 1, n + 1);

  // lattice points x + lambda inside c (Z - x); box from coordinate widths
  IntVec lo(d), hi(d);
  Int cells = 1;
  for (int j = 0; j < d; ++j) {
    IntVec e = IntVec::Zero(d);
    e(j) = 1;
    Rat half = Rat(z.support_max(e) - z.support_min(e)) / 2;
    lo(j) = rat_ceil(-c * half - x(j));
    hi(j) = rat_floor(c * half - x(j));
    cells *= std::max(Int(0), Int(hi(j) - lo(j) + 1));
  }
  if (cells > budget) throw ResourceError("check_lrc_geometric: box exceeds budget");
  GeometricCheck out;
  out.holds = false;
  IntVec lam = lo;
  if (cells == 0) return out;
  while (true) {
    RatVec p(d);
    for (int j = 0; j < d; ++j) p(j) = x(j) + Rat(lam(j));
    // p in c(Z - x)  <=>  p/c + x in Z (boundary counts: closed body)
    RatVec q(d);
    for (int j = 0; j < d; ++j) q(j) = p(j) / c + x(j);
    if (z.contains(q)) {
      out.holds = true;
      out.witness = p;
      return out;
    }
    int j = 0;
    while (j < d && lam(j) == hi(j)) {
      lam(j) = lo(j);
      ++j;
    }
    if (j == d) break;
    ++lam(j);
  }
  return out;
}

SlrcResult check_slrc(const VelocityVector& v) {
  const int n = v.runners();
  if (!v.distinct()) throw PreconditionError("check_slrc: velocities must be distinct");
  if (!v.coprime()) throw PreconditionError("check_slrc: gcd of velocities must be 1");
  if (n > 4) throw UnsupportedError("check_slrc: exact covering radii only up to dimension 3");
  Zonotope z = build_zonotope(v);
  Rat mu = covering_radius(z).mu;
  Rat thr = make_rat(n - 1, n + 1);
  return {mu <= thr, mu, mu == thr};
}

Int finite_check_bound(int n) {
  if (n < 1) throw PreconditionError("finite_check_bound: n must be positive");
  Int b = Int(n) * Int(n + 1) / 2;
  Int out;
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(n - 1));
  return out;
}

std::string ReductionTag::to_string() const {
  if (rule == Rule::None) return "none";
  std::string s = rule == Rule::AllButOneGcd ? "allbut1gcd" : "allbut2gcd";
  s += "{";
  for (size_t i = 0; i < subset.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(subset[i]);
  }
  s += "}:" + factor.get_str();
  return s;
}

ReductionTag gcd_reduction_filter(const VelocityVector& v) {
  if (!v.coprime()) throw PreconditionError("gcd_reduction_filter: gcd must be 1");
  const int n = v.runners();
  ReductionTag out;
  if (n >= 3) {
    for (int i = 0; i < n; ++i) {
      Int g = 0;
      std::vector<int> subset;
      for (int j = 0; j < n; ++j)
        if (j != i) {
          g = gcd(g, v[j]);
          subset.push_back(j);
        }
      if (g > 1) {
        out.rule = ReductionTag::Rule::AllButOneGcd;
        out.subset = subset;
        out.factor = g;
        return out;
      }
    }
  }
  if (n >= 4) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        Int delta = 0;
        std::vector<int> subset;
        for (int k = 0; k < n; ++k)
          if (k != i && k != j) {
            delta = gcd(delta, v[k]);
            subset.push_back(k);
          }
        if (delta <= 1) continue;
        bool even = (delta % 2 == 0);
        Int lhs = (even ? delta - 2 : delta - 1) * Int(n - 3);
        Int rhs = even ? 8 : 4;
        if (lhs >= rhs) {
          out.rule = ReductionTag::Rule::AllButTwoGcd;
          out.subset = subset;
          out.factor = delta;
          return out;
        }
      }
    }
  }
  return out;
}

}  // namespace zonorun
