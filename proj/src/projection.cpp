#include "zonorun/projection.hpp"

#include <algorithm>
#include <set>

namespace zonorun {

LatticeProjection projection_along(const IntVec& w) {
  if (w.size() < 2) throw PreconditionError("projection_along: needs dimension >= 2");
  if (content(w) != 1) throw PreconditionError("projection_along: vector is not primitive");
  IntMat lb(w.size(), 1);
  lb.col(0) = w;
  auto ext = extend_lattice_basis(lb);
  return {w, ext.projection};
}

RatVec rho_coefficients(const Zonotope& z, const IntVec& w, RhoBasis basis) {
  const int d = z.dim(), n = z.count();
  if (w.size() != d) throw DimensionError("rho_coefficients: dimension mismatch");
  IntMat g = z.generators();
  std::vector<int> order(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) order[static_cast<size_t>(j)] = j;
  if (basis == RhoBasis::LexLast) std::reverse(order.begin(), order.end());
  IntMat perm(d, n);
  for (int j = 0; j < n; ++j) perm.col(j) = g.col(order[static_cast<size_t>(j)]);
  auto cols = independent_columns(perm, d);
  RatMat sq(d, d);
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r) sq(r, c) = Rat(perm(r, cols[static_cast<size_t>(c)]));
  auto sol = solve_square(sq, to_rational(w));
  if (!sol) throw PreconditionError("rho_coefficients: generators do not span");
  RatVec rho = RatVec::Zero(n);
  for (int c = 0; c < d; ++c) rho(order[static_cast<size_t>(cols[static_cast<size_t>(c)])]) = (*sol)(c);
  return rho;
}

namespace {

Int det2(const Rat& a, const Rat& b, const Int& c, const Int& e) {
  // | a b ; c e | for rho rows over velocity rows; the result is integral
  // because it equals a volume of lattice vectors
  Rat v = a * Rat(e) - b * Rat(c);
  if (v.get_den() != 1)
    throw PreconditionError("candidate volume is not integral");
  return abs(Rat(v).get_num());
}

}  // namespace

std::vector<SubZonotopeCandidate> candidate_subzonotopes(const Zonotope& z, const IntVec& w) {
  const int d = z.dim(), n = z.count();
  if (n != d + 1) throw PreconditionError("candidate_subzonotopes: needs n = d + 1");
  if (!is_lrz(z)) throw PreconditionError("candidate_subzonotopes: zonotope is not an LRZ");
  LatticeProjection proj = projection_along(w);
  IntMat y = proj.matrix * z.generators();
  IntVec lam = integer_kernel_basis(z.generators()).front();
  RatVec rho = rho_coefficients(z, w);

  auto cross_ii = [&](int i, int j) {  // |det(p_i, p_j)|
    return det2(rho(i), rho(j), lam(i), lam(j));
  };
  auto cross_i_pair = [&](int i, int k, int l, int sgn) {  // |det(p_i, p_k + sgn p_l)|
    return det2(rho(i), rho(k) + Rat(sgn) * rho(l), lam(i), Int(lam(k) + sgn * lam(l)));
  };

  std::vector<SubZonotopeCandidate> out;
  IntVec all_sum = IntVec::Zero(d - 1);
  for (int i = 0; i < n; ++i) all_sum += y.col(i);

  for (int t = 0; t < n; ++t) {
    SubZonotopeCandidate c;
    c.kind = CandidateKind::TypeI;
    c.labels = {t};
    c.generators.resize(d - 1, n - 1);
    c.predicted.clear();
    int col = 0;
    for (int i = 0; i < n; ++i) {
      if (i == t) continue;
      c.generators.col(col++) = y.col(i);
      c.predicted.push_back(cross_ii(i, t));
    }
    c.translate = y.col(t);
    c.projected_center = (all_sum - y.col(t)) + 2 * y.col(t);
    out.push_back(std::move(c));
  }
  for (int sign_case = 0; sign_case < 2; ++sign_case) {
    // generator y_k + y_l pairs with determinant vector p_k - p_l, and
    // y_k - y_l (translated by y_l) with p_k + p_l
    const bool plus_gen = sign_case == 0;
    for (int k = 0; k < n; ++k) {
      for (int l = k + 1; l < n; ++l) {
        SubZonotopeCandidate c;
        c.kind = plus_gen ? CandidateKind::TypeIIPlus : CandidateKind::TypeIIMinus;
        c.labels = {k, l};
        c.generators.resize(d - 1, n - 1);
        c.predicted.clear();
        int col = 0;
        for (int i = 0; i < n; ++i) {
          if (i == k || i == l) continue;
          c.generators.col(col) = y.col(i);
          c.predicted.push_back(cross_i_pair(i, k, l, plus_gen ? -1 : +1));
          ++col;
        }
        c.generators.col(col) = plus_gen ? IntVec(y.col(k) + y.col(l)) : IntVec(y.col(k) - y.col(l));
        c.predicted.push_back(cross_ii(k, l));
        c.translate = plus_gen ? IntVec(IntVec::Zero(d - 1)) : IntVec(y.col(l));
        IntVec gen_sum = IntVec::Zero(d - 1);
        for (int j = 0; j < n - 1; ++j) gen_sum += c.generators.col(j);
        c.projected_center = gen_sum + 2 * c.translate;
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

bool verify_projected_volumes(const SubZonotopeCandidate& c) {
  const int m = static_cast<int>(c.generators.cols());
  if (static_cast<int>(c.predicted.size()) != m) return false;
  IntMat sq(c.generators.rows(), c.generators.rows());
  for (int omit = 0; omit < m; ++omit) {
    int col = 0;
    for (int j = 0; j < m; ++j) {
      if (j == omit) continue;
      sq.col(col++) = c.generators.col(j);
    }
    if (abs(determinant(sq)) != c.predicted[static_cast<size_t>(omit)]) return false;
  }
  return true;
}

std::vector<PlanarVec<Rat>> slope_family(const Zonotope& z, const IntVec& w) {
  IntVec lam = integer_kernel_basis(z.generators()).front();
  RatVec rho = rho_coefficients(z, w);
  std::vector<PlanarVec<Rat>> p;
  for (int i = 0; i < z.count(); ++i) {
    int s = sign(lam(i));
    if (s == 0) throw PreconditionError("slope_family: zonotope is not an LRZ");
    p.push_back({Rat(s) * rho(i), Rat(s) * Rat(lam(i))});
  }
  return p;
}

SubZonotopeCandidate find_inner_lrz(const Zonotope& z, const IntVec& w) {
  auto p = slope_family(z, w);
  IntVec lam = integer_kernel_basis(z.generators()).front();
  const int n = static_cast<int>(p.size());
  int a = 0, b = 0;
  auto slope_less = [&](int i, int j) {  // p_i slope < p_j slope, both y > 0
    return p[static_cast<size_t>(i)].x * p[static_cast<size_t>(j)].y <
           p[static_cast<size_t>(j)].x * p[static_cast<size_t>(i)].y;
  };
  for (int i = 1; i < n; ++i) {
    if (slope_less(a, i)) a = i;  // max slope, smallest index on ties
    if (slope_less(i, b)) b = i;  // min slope
  }
  if (!slope_less(b, a)) throw PreconditionError("find_inner_lrz: degenerate slope family");
  // the difference of the extreme sign-normalized vectors is not parallel to
  // any family member; map it back to a candidate on the original labels
  bool same_sign = sign(lam(a)) == sign(lam(b));
  CandidateKind kind = same_sign ? CandidateKind::TypeIIPlus : CandidateKind::TypeIIMinus;
  std::vector<int> labels{std::min(a, b), std::max(a, b)};
  for (auto& c : candidate_subzonotopes(z, w)) {
    if (c.kind != kind || c.labels != labels) continue;
    for (const Int& v : c.predicted)
      if (v == 0)
        throw PreconditionError("find_inner_lrz: extreme-slope candidate degenerate");
    return c;
  }
  throw PreconditionError("find_inner_lrz: candidate not found");
}

namespace {

template <typename Scalar>
Scalar abs_canon(const Scalar& x) {
  return sign(x) < 0 ? Scalar(-x) : x;
}

template <typename Scalar>
bool distinct_nonzero(std::vector<Scalar> vals) {
  for (auto& v : vals) {
    if (sign(v) == 0) return false;
    v = abs_canon(v);
  }
  std::sort(vals.begin(), vals.end(), [](const Scalar& x, const Scalar& y) {
    // only equality matters; order by a stable predicate
    if (x == y) return false;
    return sign(Scalar(x - y)) < 0;
  });
  for (size_t i = 0; i + 1 < vals.size(); ++i)
    if (vals[i] == vals[i + 1]) return false;
  return true;
}

}  // namespace

template <typename Scalar>
std::optional<std::pair<CandidateKind, std::pair<int, int>>> find_slrz_candidate_for_family(
    const std::vector<PlanarVec<Scalar>>& p) {
  const int n = static_cast<int>(p.size());
  // Type I: all |cross(p_i, p_t)| for i != t distinct and nonzero
  for (int t = 0; t < n; ++t) {
    std::vector<Scalar> vals;
    for (int i = 0; i < n; ++i)
      if (i != t) vals.push_back(cross(p[static_cast<size_t>(i)], p[static_cast<size_t>(t)]));
    if (distinct_nonzero(vals)) return std::make_pair(CandidateKind::TypeI, std::make_pair(t, -1));
  }
  // Type II: combined pair (k, l) against p_k -+ p_l, plus cross(p_k, p_l)
  for (int sign_case = 0; sign_case < 2; ++sign_case) {
    for (int k = 0; k < n; ++k) {
      for (int l = k + 1; l < n; ++l) {
        PlanarVec<Scalar> comb{
            p[static_cast<size_t>(k)].x +
                (sign_case == 0 ? Scalar(-p[static_cast<size_t>(l)].x) : p[static_cast<size_t>(l)].x),
            p[static_cast<size_t>(k)].y +
                (sign_case == 0 ? Scalar(-p[static_cast<size_t>(l)].y) : p[static_cast<size_t>(l)].y)};
        std::vector<Scalar> vals;
        for (int i = 0; i < n; ++i)
          if (i != k && i != l) vals.push_back(cross(p[static_cast<size_t>(i)], comb));
        vals.push_back(cross(p[static_cast<size_t>(k)], p[static_cast<size_t>(l)]));
        if (distinct_nonzero(vals))
          return std::make_pair(sign_case == 0 ? CandidateKind::TypeIIPlus : CandidateKind::TypeIIMinus,
                                std::make_pair(k, l));
      }
    }
  }
  return std::nullopt;
}

template std::optional<std::pair<CandidateKind, std::pair<int, int>>>
find_slrz_candidate_for_family<Rat>(const std::vector<PlanarVec<Rat>>&);
template std::optional<std::pair<CandidateKind, std::pair<int, int>>>
find_slrz_candidate_for_family<QuadRat>(const std::vector<PlanarVec<QuadRat>>&);

InnerSlrzResult find_inner_slrz(const Zonotope& z, const IntVec& w) {
  if (!is_slrz(z)) throw PreconditionError("find_inner_slrz: zonotope is not an sLRZ");
  InnerSlrzResult out;
  for (auto& c : candidate_subzonotopes(z, w)) {
    std::vector<Int> vals = c.predicted;
    bool ok = true;
    std::set<Int> seen;
    for (const Int& v : vals)
      if (v == 0 || !seen.insert(v).second) {
        ok = false;
        break;
      }
    if (ok) {
      out.candidate = std::move(c);
      return out;
    }
  }
  auto p = slope_family(z, w);
  auto fam = RatFamily::create(p);
  auto lvp = has_lvp(fam);
  if (lvp.has_lvp)
    throw PreconditionError("find_inner_slrz: lonely vector exists but no candidate matched");
  out.lvp_failure = std::move(lvp);
  return out;
}

}  // namespace zonorun
