#include "zonorun/intlinalg.hpp"

#include <algorithm>

namespace zonorun {

RatMat to_rational(const IntMat& m) {
  RatMat r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

RatVec to_rational(const IntVec& v) {
  RatVec r(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) r(i) = Rat(v(i));
  return r;
}

Int content(const IntVec& v) {
  Int g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) g = gcd(g, v(i));
  return g;
}

IntVec primitive_part(const IntVec& v) {
  Int g = content(v);
  if (g == 0) return v;
  IntVec p(v.size());
  int lead = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    p(i) = v(i) / g;
    if (lead == 0) lead = sign(p(i));
  }
  if (lead < 0) p = -p;
  return p;
}

Int determinant(const IntMat& m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant: non-square matrix");
  const Eigen::Index n = m.rows();
  if (n == 0) return 1;
  IntMat w = m;
  Int prev = 1;
  int sgn_flip = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (w(k, k) == 0) {
      Eigen::Index r = k + 1;
      while (r < n && w(r, k) == 0) ++r;
      if (r == n) return 0;
      w.row(k).swap(w.row(r));
      sgn_flip = -sgn_flip;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        Int t = w(k, k) * w(i, j) - w(i, k) * w(k, j);
        mpz_divexact(w(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      w(i, k) = 0;
    }
    prev = w(k, k);
  }
  return sgn_flip > 0 ? w(n - 1, n - 1) : Int(-w(n - 1, n - 1));
}

IntMat adjugate(const IntMat& m) {
  if (m.rows() != m.cols()) throw DimensionError("adjugate: non-square matrix");
  const Eigen::Index n = m.rows();
  IntMat adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  IntMat sub(n - 1, n - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      Eigen::Index r = 0;
      for (Eigen::Index ii = 0; ii < n; ++ii) {
        if (ii == j) continue;
        Eigen::Index c = 0;
        for (Eigen::Index jj = 0; jj < n; ++jj) {
          if (jj == i) continue;
          sub(r, c++) = m(ii, jj);
        }
        ++r;
      }
      Int d = determinant(sub);
      adj(i, j) = ((i + j) % 2 == 0) ? d : Int(-d);
    }
  }
  return adj;
}

std::vector<int> independent_columns(const IntMat& m, int want) {
  std::vector<int> picked;
  std::vector<RatVec> reduced;  // row-reduced representatives of picked columns
  for (int j = 0; j < m.cols() && static_cast<int>(picked.size()) < want; ++j) {
    RatVec v = to_rational(IntVec(m.col(j)));
    for (const RatVec& r : reduced) {
      Eigen::Index lead = 0;
      while (lead < r.size() && r(lead) == 0) ++lead;
      if (lead < r.size() && v(lead) != 0) v -= (v(lead) / r(lead)) * r;
    }
    bool nonzero = false;
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (v(i) != 0) {
        nonzero = true;
        break;
      }
    if (nonzero) {
      picked.push_back(j);
      reduced.push_back(v);
    }
  }
  if (static_cast<int>(picked.size()) < want)
    throw PreconditionError("independent_columns: rank too low");
  return picked;
}

std::vector<Int> maximal_minors(const IntMat& m) {
  const int d = static_cast<int>(m.rows());
  const int n = static_cast<int>(m.cols());
  if (d > n) throw DimensionError("maximal_minors: more rows than columns");
  std::vector<int> idx(d);
  for (int i = 0; i < d; ++i) idx[i] = i;
  std::vector<Int> out;
  IntMat sub(d, d);
  while (true) {
    for (int j = 0; j < d; ++j) sub.col(j) = m.col(idx[j]);
    out.push_back(determinant(sub));
    int i = d - 1;
    while (i >= 0 && idx[i] == n - d + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

HnfResult hermite_normal_form(const IntMat& m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  IntMat h = m;
  IntMat u = IntMat::Identity(rows, rows);
  Eigen::Index piv_row = 0;
  for (Eigen::Index col = 0; col < cols && piv_row < rows; ++col) {
    // Reduce the column below piv_row to a single nonzero entry by gcd steps.
    while (true) {
      Eigen::Index best = -1;
      for (Eigen::Index i = piv_row; i < rows; ++i)
        if (h(i, col) != 0 && (best < 0 || abs(h(i, col)) < abs(h(best, col)))) best = i;
      if (best < 0) break;
      if (best != piv_row) {
        h.row(piv_row).swap(h.row(best));
        u.row(piv_row).swap(u.row(best));
      }
      bool clean = true;
      for (Eigen::Index i = piv_row + 1; i < rows; ++i) {
        if (h(i, col) == 0) continue;
        Int q = floor_div(h(i, col), h(piv_row, col));
        if (q != 0) {
          h.row(i) -= (q * h.row(piv_row)).eval();
          u.row(i) -= (q * u.row(piv_row)).eval();
        }
        if (h(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(piv_row, col) == 0) continue;
    if (h(piv_row, col) < 0) {
      h.row(piv_row) = -h.row(piv_row);
      u.row(piv_row) = -u.row(piv_row);
    }
    // Entries above the pivot into [0, pivot).
    for (Eigen::Index i = 0; i < piv_row; ++i) {
      Int q = floor_div(h(i, col), h(piv_row, col));
      if (q != 0) {
        h.row(i) -= (q * h.row(piv_row)).eval();
        u.row(i) -= (q * u.row(piv_row)).eval();
      }
    }
    ++piv_row;
  }
  return {h, u};
}

int rank(const IntMat& m) {
  HnfResult r = hermite_normal_form(m);
  int rk = 0;
  for (Eigen::Index i = 0; i < r.h.rows(); ++i) {
    bool nonzero = false;
    for (Eigen::Index j = 0; j < r.h.cols(); ++j)
      if (r.h(i, j) != 0) {
        nonzero = true;
        break;
      }
    if (nonzero) ++rk;
  }
  return rk;
}

std::vector<IntVec> integer_kernel_basis(const IntMat& m) {
  IntMat mt = m.transpose();
  HnfResult r = hermite_normal_form(mt);
  std::vector<IntVec> basis;
  for (Eigen::Index i = 0; i < r.h.rows(); ++i) {
    bool zero_row = true;
    for (Eigen::Index j = 0; j < r.h.cols(); ++j)
      if (r.h(i, j) != 0) {
        zero_row = false;
        break;
      }
    if (!zero_row) continue;
    IntVec b = r.u.row(i).transpose();
    int lead = 0;
    for (Eigen::Index k = 0; k < b.size() && lead == 0; ++k) lead = sign(b(k));
    if (lead < 0) b = -b;
    basis.push_back(std::move(b));
  }
  return basis;
}

BasisExtension extend_lattice_basis(const IntMat& lb) {
  const Eigen::Index d = lb.rows(), s = lb.cols();
  if (s > d) throw DimensionError("extend_lattice_basis: too many columns");
  // Row-reduce c * lb = [I_s; 0] while maintaining v = c^-1.
  IntMat w = lb;
  IntMat c = IntMat::Identity(d, d);
  IntMat v = IntMat::Identity(d, d);
  auto row_sub = [&](Eigen::Index i, Eigen::Index j, const Int& q) {
    // row_i -= q * row_j on (w, c); inverse column op on v.
    w.row(i) -= (q * w.row(j)).eval();
    c.row(i) -= (q * c.row(j)).eval();
    v.col(j) += (q * v.col(i)).eval();
  };
  auto row_swap = [&](Eigen::Index i, Eigen::Index j) {
    w.row(i).swap(w.row(j));
    c.row(i).swap(c.row(j));
    v.col(i).swap(v.col(j));
  };
  auto row_neg = [&](Eigen::Index i) {
    w.row(i) = -w.row(i);
    c.row(i) = -c.row(i);
    v.col(i) = -v.col(i);
  };
  for (Eigen::Index col = 0; col < s; ++col) {
    while (true) {
      Eigen::Index best = -1;
      for (Eigen::Index i = col; i < d; ++i)
        if (w(i, col) != 0 && (best < 0 || abs(w(i, col)) < abs(w(best, col)))) best = i;
      if (best < 0) throw PreconditionError("extend_lattice_basis: rank-deficient basis");
      if (best != col) row_swap(col, best);
      bool clean = true;
      for (Eigen::Index i = col + 1; i < d; ++i) {
        if (w(i, col) == 0) continue;
        row_sub(i, col, floor_div(w(i, col), w(col, col)));
        if (w(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (w(col, col) < 0) row_neg(col);
    if (w(col, col) != 1)
      throw PreconditionError("extend_lattice_basis: basis does not span a saturated lattice");
    for (Eigen::Index i = 0; i < col; ++i)
      if (w(i, col) != 0) row_sub(i, col, w(i, col));
  }
  // Now c * lb = [I_s; 0] and v = c^-1, whose first s columns equal lb.
  BasisExtension ext;
  ext.basis = IntMat(d, d);
  ext.basis.leftCols(d - s) = v.rightCols(d - s);
  ext.basis.rightCols(s) = v.leftCols(s);
  ext.projection = c.bottomRows(d - s);
  return ext;
}

IntMat extend_primitive_to_basis(const IntVec& w) {
  if (content(w) != 1)
    throw PreconditionError("extend_primitive_to_basis: vector is not primitive");
  IntMat lb(w.size(), 1);
  lb.col(0) = w;
  return extend_lattice_basis(lb).basis;
}

std::optional<RatVec> solve_square(const RatMat& a, const RatVec& b) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || b.size() != n) throw DimensionError("solve_square: shape mismatch");
  RatMat w(n, n + 1);
  w.leftCols(n) = a;
  w.col(n) = b;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = k; i < n; ++i)
      if (w(i, k) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return std::nullopt;
    if (piv != k) w.row(k).swap(w.row(piv));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (w(i, k) == 0) continue;
      Rat f = w(i, k) / w(k, k);
      for (Eigen::Index j = k; j <= n; ++j) w(i, j) -= f * w(k, j);
    }
  }
  RatVec x(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    Rat acc = w(i, n);
    for (Eigen::Index j = i + 1; j < n; ++j) acc -= w(i, j) * x(j);
    x(i) = acc / w(i, i);
  }
  return x;
}

}  // namespace zonorun
