#include "zonorun/polytope.hpp"

#include <set>

namespace zonorun {

bool RationalPolytope::contains(const RatVec& x) const {
  for (size_t i = 0; i < normals.size(); ++i) {
    Rat s(0);
    for (int j = 0; j < dim; ++j) s += Rat(normals[i](j)) * x(j);
    if (s > offsets[i]) return false;
  }
  return true;
}

RationalPolytope zonotope_to_halfspaces(const Zonotope& z) {
  if (z.dim() > 3) throw UnsupportedError("zonotope_to_halfspaces: dimension > 3");
  RationalPolytope p;
  p.dim = z.dim();
  for (const IntVec& a : z.facet_normals()) {
    p.normals.push_back(a);
    p.offsets.emplace_back(z.support_max(a));
    p.normals.push_back(IntVec(-a));
    p.offsets.emplace_back(-z.support_min(a));
  }
  return p;
}

std::vector<RatVec> polytope_vertices(const RationalPolytope& p) {
  const int d = p.dim;
  const int m = p.facet_count();
  std::vector<RatVec> verts;
  std::set<std::vector<Rat>> seen;
  std::vector<int> idx(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) idx[static_cast<size_t>(i)] = i;
  if (m < d) return verts;
  while (true) {
    RatMat a(d, d);
    RatVec b(d);
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) a(r, c) = Rat(p.normals[static_cast<size_t>(idx[static_cast<size_t>(r)])](c));
      b(r) = p.offsets[static_cast<size_t>(idx[static_cast<size_t>(r)])];
    }
    if (auto x = solve_square(a, b)) {
      if (p.contains(*x)) {
        std::vector<Rat> key(x->data(), x->data() + d);
        if (seen.insert(key).second) verts.push_back(*x);
      }
    }
    int i = d - 1;
    while (i >= 0 && idx[static_cast<size_t>(i)] == m - d + i) --i;
    if (i < 0) break;
    ++idx[static_cast<size_t>(i)];
    for (int j = i + 1; j < d; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
  }
  return verts;
}

RationalPolytope translate(const RationalPolytope& p, const RatVec& t) {
  RationalPolytope q = p;
  for (size_t i = 0; i < q.normals.size(); ++i) {
    Rat shift(0);
    for (int j = 0; j < q.dim; ++j) shift += Rat(q.normals[i](j)) * t(j);
    q.offsets[i] += shift;
  }
  return q;
}

RationalPolytope dilate(const RationalPolytope& p, const Rat& k) {
  if (k <= 0) throw PreconditionError("dilate: factor must be positive");
  RationalPolytope q = p;
  for (Rat& b : q.offsets) b *= k;
  return q;
}

}  // namespace zonorun
