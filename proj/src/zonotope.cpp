#include "zonorun/zonotope.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>

namespace zonorun {

namespace {

IntVec canonical_sign(IntVec v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) != 0) {
      if (v(i) < 0) v = -v;
      break;
    }
  }
  return v;
}

std::vector<Int> vec_key(const IntVec& v) {
  return {v.data(), v.data() + v.size()};
}

// Odometer over the integer box [lo, hi].
struct BoxIter {
  IntVec lo, hi, cur;
  bool done = false;
  BoxIter(IntVec l, IntVec h) : lo(std::move(l)), hi(std::move(h)), cur(lo) {
    for (Eigen::Index i = 0; i < lo.size(); ++i)
      if (lo(i) > hi(i)) done = true;
  }
  void next() {
    for (Eigen::Index i = 0; i < cur.size(); ++i) {
      if (cur(i) < hi(i)) {
        ++cur(i);
        for (Eigen::Index j = 0; j < i; ++j) cur(j) = lo(j);
        return;
      }
    }
    done = true;
  }
};

}  // namespace

Zonotope Zonotope::from_columns(const IntMat& g, GeneratorPolicy policy) {
  std::vector<IntVec> cols;
  bool changed = false;
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    IntVec c = g.col(j);
    if (c.isZero()) {
      changed = true;
      continue;
    }
    cols.push_back(std::move(c));
  }
  if (policy == GeneratorPolicy::MergePairs) {
    bool merged = true;
    while (merged) {
      merged = false;
      for (size_t i = 0; i < cols.size() && !merged; ++i) {
        for (size_t j = i + 1; j < cols.size() && !merged; ++j) {
          if (cols[i] == cols[j] || cols[i] == IntVec(-cols[j])) {
            cols[i] = 2 * cols[i];
            cols.erase(cols.begin() + static_cast<long>(j));
            merged = true;
            changed = true;
          }
        }
      }
    }
  }
  if (cols.empty()) throw PreconditionError("Zonotope: no nonzero generators");
  Zonotope z;
  z.gens_.resize(g.rows(), static_cast<Eigen::Index>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) z.gens_.col(static_cast<Eigen::Index>(j)) = cols[j];
  z.normalized_ = changed;
  if (rank(z.gens_) != z.dim())
    throw PreconditionError("Zonotope: generators do not span R^d");
  return z;
}

RatVec Zonotope::center() const {
  RatVec c = RatVec::Zero(dim());
  for (int j = 0; j < count(); ++j)
    for (int i = 0; i < dim(); ++i) c(i) += Rat(gens_(i, j)) / 2;
  return c;
}

const std::vector<IntVec>& Zonotope::facet_normals() const {
  if (!normals_.empty()) return normals_;
  const int d = dim(), n = count();
  std::set<std::vector<Int>> seen;
  if (d == 1) {
    IntVec one(1);
    one(0) = 1;
    normals_.push_back(one);
    return normals_;
  }
  std::vector<int> idx(d - 1);
  for (int i = 0; i < d - 1; ++i) idx[i] = i;
  while (true) {
    IntMat sub(d, d - 1);
    for (int j = 0; j < d - 1; ++j) sub.col(j) = gens_.col(idx[j]);
    if (rank(sub) == d - 1) {
      auto ker = integer_kernel_basis(IntMat(sub.transpose()));
      // rank d-1 subset of a rank-d ambient: one primitive normal
      IntVec a = canonical_sign(ker.front());
      if (seen.insert(vec_key(a)).second) normals_.push_back(a);
    }
    int i = d - 2;
    while (i >= 0 && idx[i] == n - (d - 1) + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < d - 1; ++j) idx[j] = idx[j - 1] + 1;
  }
  return normals_;
}

Int Zonotope::support_max(const IntVec& a) const {
  Int s = 0;
  for (int j = 0; j < count(); ++j) {
    Int t = a.dot(gens_.col(j));
    if (t > 0) s += t;
  }
  return s;
}

Int Zonotope::support_min(const IntVec& a) const {
  Int s = 0;
  for (int j = 0; j < count(); ++j) {
    Int t = a.dot(gens_.col(j));
    if (t < 0) s += t;
  }
  return s;
}

bool Zonotope::contains(const RatVec& p) const {
  const int d = dim(), n = count();
  if (d <= 3 || n <= d + 1) {
    if (d <= 3) {
      for (const IntVec& a : facet_normals()) {
        Rat s(0);
        for (int i = 0; i < d; ++i) s += Rat(a(i)) * p(i);
        if (s < Rat(support_min(a)) || s > Rat(support_max(a))) return false;
      }
      return true;
    }
    // Coefficient feasibility: p = sum lambda_i u_i with lambda in [0,1]^n.
    auto cols = independent_columns(gens_, d);
    RatMat sq(d, d);
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i) sq(i, j) = Rat(gens_(i, cols[j]));
    auto base = solve_square(sq, p);
    if (!base) return false;
    if (n == d) {
      for (int j = 0; j < d; ++j)
        if ((*base)(j) < 0 || (*base)(j) > 1) return false;
      return true;
    }
    // n = d + 1: solutions form a line lambda0 + t * k.
    auto ker = integer_kernel_basis(gens_);
    RatVec lam0 = RatVec::Zero(n);
    for (int j = 0; j < d; ++j) lam0(cols[j]) = (*base)(j);
    const IntVec& k = ker.front();
    Rat t_lo, t_hi;
    bool has_lo = false, has_hi = false;
    for (int i = 0; i < n; ++i) {
      if (k(i) == 0) {
        if (lam0(i) < 0 || lam0(i) > 1) return false;
        continue;
      }
      Rat a = (Rat(0) - lam0(i)) / Rat(k(i));
      Rat b = (Rat(1) - lam0(i)) / Rat(k(i));
      if (a > b) std::swap(a, b);
      if (!has_lo || a > t_lo) t_lo = a, has_lo = true;
      if (!has_hi || b < t_hi) t_hi = b, has_hi = true;
    }
    return !has_lo || !has_hi || t_lo <= t_hi;
  }
  throw UnsupportedError("Zonotope::contains: dimension > 4 with many generators");
}

Zonotope read_zonotope(std::istream& in, GeneratorPolicy policy) {
  int d = 0, n = 0;
  if (!(in >> d >> n) || d < 1 || n < 1)
    throw PreconditionError("read_zonotope: bad header, expected 'd n'");
  IntMat g(d, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < d; ++c) {
      std::string tok;
      if (!(in >> tok)) throw PreconditionError("read_zonotope: truncated generator rows");
      g(c, r) = Int(tok);
    }
  return Zonotope::from_columns(g, policy);
}

void write_zonotope(std::ostream& out, const Zonotope& z) {
  out << z.dim() << " " << z.count() << "\n";
  for (int r = 0; r < z.count(); ++r) {
    for (int c = 0; c < z.dim(); ++c) {
      if (c) out << " ";
      out << z.generators()(c, r).get_str();
    }
    out << "\n";
  }
}

VolumeVector volume_vector(const Zonotope& z) {
  const int d = z.dim(), n = z.count();
  if (n != d + 1) throw PreconditionError("volume_vector: needs n = d + 1 generators");
  auto minors = maximal_minors(z.generators());
  VolumeVector v;
  v.entries.resize(n);
  // Subset k in lex order omits column n-1-k.
  for (int i = 0; i < n; ++i) v.entries[i] = abs(minors[n - 1 - i]);
  v.gcd_all = 0;
  for (const Int& e : v.entries) v.gcd_all = gcd(v.gcd_all, e);
  return v;
}

bool is_lrz(const Zonotope& z) {
  if (z.count() != z.dim() + 1) return false;
  auto v = volume_vector(z);
  for (const Int& e : v.entries)
    if (e == 0) return false;
  return true;
}

bool is_slrz(const Zonotope& z) {
  if (!is_lrz(z)) return false;
  auto v = volume_vector(z);
  std::set<Int> s(v.entries.begin(), v.entries.end());
  return s.size() == v.entries.size();
}

Int volume(const Zonotope& z) {
  Int s = 0;
  for (const Int& m : maximal_minors(z.generators())) s += abs(m);
  return s;
}

Int sub_volume(const Zonotope& z, const std::vector<int>& subset) {
  const int d = z.dim();
  const int k = static_cast<int>(subset.size());
  if (k == 0) return 1;
  if (k > d) return 0;
  IntMat sub(d, k);
  for (int j = 0; j < k; ++j) sub.col(j) = z.generators().col(subset[j]);
  if (rank(sub) < k) return 0;
  // gcd of all k x k minors of the d x k matrix.
  std::vector<int> rows(k);
  for (int i = 0; i < k; ++i) rows[i] = i;
  Int g = 0;
  IntMat sq(k, k);
  while (true) {
    for (int i = 0; i < k; ++i) sq.row(i) = sub.row(rows[i]);
    g = gcd(g, determinant(sq));
    int i = k - 1;
    while (i >= 0 && rows[i] == d - k + i) --i;
    if (i < 0) break;
    ++rows[i];
    for (int j = i + 1; j < k; ++j) rows[j] = rows[j - 1] + 1;
  }
  return abs(g);
}

Int lattice_point_count_formula(const Zonotope& z) {
  const int n = z.count();
  if (n > 20) throw ResourceError("lattice_point_count_formula: too many generators");
  Int total = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> subset;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) subset.push_back(i);
    total += sub_volume(z, subset);
  }
  return total;
}

Int lattice_point_count_enum(const Zonotope& z, const Int& budget) {
  const int d = z.dim();
  if (d > 4) throw UnsupportedError("lattice_point_count_enum: dimension > 4");
  IntVec lo(d), hi(d);
  Int cells = 1;
  for (int i = 0; i < d; ++i) {
    IntVec e = IntVec::Zero(d);
    e(i) = 1;
    lo(i) = z.support_min(e);
    hi(i) = z.support_max(e);
    cells *= hi(i) - lo(i) + 1;
  }
  if (cells > budget) throw ResourceError("lattice_point_count_enum: bounding box exceeds budget");
  Int count = 0;
  for (BoxIter it(lo, hi); !it.done; it.next()) {
    if (z.contains(to_rational(it.cur))) ++count;
  }
  return count;
}

Int gcd_subset_sum(const VolumeVector& v) {
  const int n = static_cast<int>(v.entries.size());
  if (v.gcd_all != 1) throw PreconditionError("gcd_subset_sum: gcd of entries must be 1");
  if (n > 20) throw ResourceError("gcd_subset_sum: too many entries");
  Int total = 0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    Int g = 0;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) g = gcd(g, v.entries[i]);
    total += g;
  }
  return total;
}

WidthResult lattice_width(const Zonotope& z) {
  const int d = z.dim(), n = z.count();
  if (d > 4) throw UnsupportedError("lattice_width: dimension > 4");
  const IntMat& g = z.generators();
  auto width_of = [&](const IntVec& f) {
    Int s = 0;
    for (int j = 0; j < n; ++j) s += abs(f.dot(g.col(j)));
    return s;
  };
  Int best = 0;
  for (int i = 0; i < d; ++i) {
    IntVec e = IntVec::Zero(d);
    e(i) = 1;
    Int w = width_of(e);
    if (best == 0 || w < best) best = w;
  }
  if (d == 1) {
    IntVec one(1);
    one(0) = 1;
    return {best, {one}};
  }
  auto cols = independent_columns(g, d);
  IntMat bt(d, d);  // rows are the chosen generators (B^T)
  for (int i = 0; i < d; ++i) bt.row(i) = g.col(cols[i]).transpose();
  IntMat adj = adjugate(bt);
  Int det = determinant(bt);
  std::set<std::vector<Int>> attain;
  // f with width w satisfies |B^T f|_inf <= w, so shells up to `best` are
  // exhaustive for both the minimum and the attaining set.
  for (Int r = 1; r <= best; ++r) {
    IntVec lo = IntVec::Constant(d, -r), hi = IntVec::Constant(d, r);
    for (BoxIter it(lo, hi); !it.done; it.next()) {
      bool on_shell = false;
      for (int i = 0; i < d && !on_shell; ++i)
        if (abs(it.cur(i)) == r) on_shell = true;
      if (!on_shell) continue;
      IntVec fn = adj * it.cur;
      bool integral = true;
      IntVec f(d);
      for (int i = 0; i < d && integral; ++i) {
        if (fn(i) % det != 0)
          integral = false;
        else
          f(i) = fn(i) / det;
      }
      if (!integral || f.isZero()) continue;
      Int w = width_of(f);
      if (w < best) {
        best = w;
        attain.clear();
      }
      if (w == best) attain.insert(vec_key(canonical_sign(f)));
    }
  }
  WidthResult res;
  res.width = best;
  for (const auto& key : attain) {
    IntVec f(d);
    for (int i = 0; i < d; ++i) f(i) = key[static_cast<size_t>(i)];
    res.functionals.push_back(f);
  }
  return res;
}

Rat difference_body_gauge(const Zonotope& z, const IntVec& x) {
  const auto& normals = z.facet_normals();
  Rat g(0);
  for (const IntVec& a : normals) {
    Int num = abs(a.dot(x));
    if (num == 0) continue;
    Int h = 0;
    for (int j = 0; j < z.count(); ++j) h += abs(a.dot(z.generators().col(j)));
    Rat q = make_rat(num, h);
    if (q > g) g = q;
  }
  return g;
}

FirstMinimum first_minimum_diff(const Zonotope& z) {
  const int d = z.dim();
  if (d > 4) throw UnsupportedError("first_minimum_diff: dimension > 4");
  if (d == 1) {
    Int len = 0;
    for (int j = 0; j < z.count(); ++j) len += abs(z.generators()(0, j));
    IntVec one(1);
    one(0) = 1;
    return {make_rat(1, len), one};
  }
  Rat bound(0);
  IntVec best;
  auto consider = [&](const IntVec& x) {
    if (x.isZero()) return;
    Rat gq = difference_body_gauge(z, x);
    if (bound == 0 || gq < bound) {
      bound = gq;
      best = primitive_part(x);
    }
  };
  for (int i = 0; i < d; ++i) {
    IntVec e = IntVec::Zero(d);
    e(i) = 1;
    consider(e);
  }
  for (int j = 0; j < z.count(); ++j) consider(primitive_part(z.generators().col(j)));

  // Every x with gauge(x) <= bound lies in the box |a_i . x| <= bound * h(a_i)
  // for d independent normals a_i.
  const auto& normals = z.facet_normals();
  IntMat nm(static_cast<int>(normals.size()), d);
  for (size_t i = 0; i < normals.size(); ++i) nm.row(static_cast<int>(i)) = normals[i].transpose();
  auto rows = independent_columns(IntMat(nm.transpose()), d);
  IntMat amat(d, d);
  for (int i = 0; i < d; ++i) amat.row(i) = normals[static_cast<size_t>(rows[i])].transpose();
  IntMat adj = adjugate(amat);
  Int det = determinant(amat);
  IntVec lo(d), hi(d);
  Int cells = 1;
  for (int i = 0; i < d; ++i) {
    Int h = 0;
    for (int j = 0; j < z.count(); ++j)
      h += abs(normals[static_cast<size_t>(rows[i])].dot(z.generators().col(j)));
    Int b = rat_floor(bound * Rat(h));
    lo(i) = -b;
    hi(i) = b;
    cells *= 2 * b + 1;
  }
  if (cells > Int(50000000)) throw ResourceError("first_minimum_diff: search box too large");
  for (BoxIter it(lo, hi); !it.done; it.next()) {
    IntVec xn = adj * it.cur;
    bool integral = true;
    IntVec x(d);
    for (int i = 0; i < d && integral; ++i) {
      if (xn(i) % det != 0)
        integral = false;
      else
        x(i) = xn(i) / det;
    }
    if (!integral || x.isZero()) continue;
    Rat gq = difference_body_gauge(z, x);
    if (gq < bound) {
      bound = gq;
      best = primitive_part(x);
    }
  }
  return {bound, canonical_sign(best)};
}

CosimplicityWitness is_cosimple(const Zonotope& z) {
  const int d = z.dim(), n = z.count();
  const IntMat& g = z.generators();
  if (rank(g) != d) throw PreconditionError("is_cosimple: generators must span R^d");
  CosimplicityWitness w;

  auto subset_matrix = [&](const std::vector<int>& keep) {
    IntMat m(d, static_cast<int>(keep.size()));
    for (size_t j = 0; j < keep.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = g.col(keep[j]);
    return m;
  };

  // Case (i): a hyperplane through the origin contains all but one generator.
  for (int i = 0; i < n; ++i) {
    std::vector<int> keep;
    for (int j = 0; j < n; ++j)
      if (j != i) keep.push_back(j);
    IntMat sub = subset_matrix(keep);
    if (rank(sub) < d) {
      auto ker = integer_kernel_basis(IntMat(sub.transpose()));
      w.cosimple = false;
      w.obstruction = CosimplicityWitness::Obstruction{canonical_sign(ker.front()), 1, {i}};
      return w;
    }
  }
  // Case (ii): all but two in a hyperplane, the two at equal distance.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      std::vector<int> keep;
      for (int k = 0; k < n; ++k)
        if (k != i && k != j) keep.push_back(k);
      IntMat sub = subset_matrix(keep);
      if (rank(sub) != d - 1) continue;
      auto ker = integer_kernel_basis(IntMat(sub.transpose()));
      const IntVec& a = ker.front();
      if (abs(a.dot(g.col(i))) == abs(a.dot(g.col(j)))) {
        w.cosimple = false;
        w.obstruction = CosimplicityWitness::Obstruction{canonical_sign(a), 2, {i, j}};
        return w;
      }
    }
  }
  w.cosimple = true;

  // Certificate search in the dependence lattice, by growing coefficient
  // shells; the witness itself is capped at infinity-norm 10^4.
  auto kernel = integer_kernel_basis(g);
  const int k = static_cast<int>(kernel.size());
  const Int norm_cap(10000);
  auto distinct_abs = [&](const IntVec& lam) {
    std::set<Int> seen;
    for (int i = 0; i < n; ++i) {
      if (lam(i) == 0) return false;
      if (!seen.insert(abs(lam(i))).second) return false;
    }
    return true;
  };
  for (Int r = 1; r <= norm_cap; ++r) {
    IntVec lo = IntVec::Constant(k, -r), hi = IntVec::Constant(k, r);
    bool all_beyond_cap = true;
    for (BoxIter it(lo, hi); !it.done; it.next()) {
      bool on_shell = false;
      for (int i = 0; i < k && !on_shell; ++i)
        if (abs(it.cur(i)) == r) on_shell = true;
      if (!on_shell) continue;
      IntVec lam = IntVec::Zero(n);
      for (int i = 0; i < k; ++i) lam += it.cur(i) * kernel[static_cast<size_t>(i)];
      Int norm = 0;
      for (int i = 0; i < n; ++i) norm = std::max(norm, Int(abs(lam(i))));
      if (norm > norm_cap) continue;
      all_beyond_cap = false;
      if (distinct_abs(lam)) {
        w.dependence = canonical_sign(lam);
        return w;
      }
    }
    if (all_beyond_cap && r > 1) break;
  }
  w.witness_search_exhausted = true;
  return w;
}

IntMat gale_transform(const IntMat& a) {
  const int d = static_cast<int>(a.rows()), n = static_cast<int>(a.cols());
  if (rank(a) != d) throw PreconditionError("gale_transform: configuration must have full rank");
  auto kernel = integer_kernel_basis(a);
  IntMat b(n - d, n);
  for (int i = 0; i < n - d; ++i) b.row(i) = kernel[static_cast<size_t>(i)].transpose();
  return b;
}

bool plucker_check(const std::array<Int, 6>& p) {
  // order: p12, p13, p14, p23, p24, p34
  return p[2] * p[3] - p[1] * p[4] + p[0] * p[5] == 0;
}

bool plucker_signable(const std::array<Int, 6>& absvals) {
  // Some assignment partitions the six values into three complementary pairs
  // whose products a, b, c admit signs with a - b + c = 0; for positive
  // values that means the largest product equals the sum of the other two.
  static const int pairings[15][6] = {
      {0, 1, 2, 3, 4, 5}, {0, 1, 2, 4, 3, 5}, {0, 1, 2, 5, 3, 4}, {0, 2, 1, 3, 4, 5},
      {0, 2, 1, 4, 3, 5}, {0, 2, 1, 5, 3, 4}, {0, 3, 1, 2, 4, 5}, {0, 3, 1, 4, 2, 5},
      {0, 3, 1, 5, 2, 4}, {0, 4, 1, 2, 3, 5}, {0, 4, 1, 3, 2, 5}, {0, 4, 1, 5, 2, 3},
      {0, 5, 1, 2, 3, 4}, {0, 5, 1, 3, 2, 4}, {0, 5, 1, 4, 2, 3}};
  for (const auto& pr : pairings) {
    Int a = abs(absvals[static_cast<size_t>(pr[0])]) * abs(absvals[static_cast<size_t>(pr[1])]);
    Int b = abs(absvals[static_cast<size_t>(pr[2])]) * abs(absvals[static_cast<size_t>(pr[3])]);
    Int c = abs(absvals[static_cast<size_t>(pr[4])]) * abs(absvals[static_cast<size_t>(pr[5])]);
    Int hi = std::max({a, b, c});
    if (a + b + c == 2 * hi) return true;
  }
  return false;
}

IntMat canonical_generator_matrix(const Zonotope& z) {
  const int d = z.dim(), n = z.count();
  if (n > 6) throw UnsupportedError("canonical_generator_matrix: too many generators");
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::optional<std::vector<Int>> best_key;
  IntMat best;
  std::sort(perm.begin(), perm.end());
  do {
    for (unsigned signs = 0; signs < (1u << n); ++signs) {
      IntMat m(d, n);
      for (int j = 0; j < n; ++j) {
        IntVec c = z.generators().col(perm[static_cast<size_t>(j)]);
        if (signs & (1u << j)) c = -c;
        m.col(j) = c;
      }
      IntMat h = hermite_normal_form(m).h;
      std::vector<Int> key;
      key.reserve(static_cast<size_t>(d) * n);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < n; ++j) key.push_back(h(i, j));
      if (!best_key || key < *best_key) {
        best_key = std::move(key);
        best = h;
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace zonorun
