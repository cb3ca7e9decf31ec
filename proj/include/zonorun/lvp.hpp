#pragma once

// The lonely-vector machinery: the n^2 multiset P u {p_i + p_j} u {p_i - p_j}
// of a planar vector family, the lonely-vector decision with witnesses, and
// the all-but-two-collinear special case. Scalar-generic so the same code
// runs over Q and over Q(sqrt2).

#include <optional>
#include <string>
#include <vector>

#include "zonorun/numeric.hpp"

namespace zonorun {

template <typename Scalar>
struct PlanarVec {
  Scalar x{};
  Scalar y{};
  bool operator==(const PlanarVec& o) const { return x == o.x && y == o.y; }
};

template <typename Scalar>
Scalar cross(const PlanarVec<Scalar>& a, const PlanarVec<Scalar>& b) {
  return a.x * b.y - a.y * b.x;
}

template <typename Scalar>
bool is_zero_vec(const PlanarVec<Scalar>& v) {
  return v.x == Scalar(0) && v.y == Scalar(0);
}

template <typename Scalar>
bool parallel(const PlanarVec<Scalar>& a, const PlanarVec<Scalar>& b) {
  return cross(a, b) == Scalar(0);
}

// Valid input for the lonely-vector property: nonzero vectors, not all
// parallel, no two equal or opposite.
template <typename Scalar>
class VectorFamily {
 public:
  static VectorFamily create(std::vector<PlanarVec<Scalar>> vecs) {
    if (vecs.size() < 2) throw PreconditionError("VectorFamily: needs at least two vectors");
    for (const auto& v : vecs)
      if (is_zero_vec(v)) throw PreconditionError("VectorFamily: zero vector");
    for (size_t i = 0; i < vecs.size(); ++i)
      for (size_t j = i + 1; j < vecs.size(); ++j) {
        PlanarVec<Scalar> sum{vecs[i].x + vecs[j].x, vecs[i].y + vecs[j].y};
        PlanarVec<Scalar> diff{vecs[i].x - vecs[j].x, vecs[i].y - vecs[j].y};
        if (is_zero_vec(sum) || is_zero_vec(diff))
          throw PreconditionError("VectorFamily: equal or opposite pair");
      }
    bool all_par = true;
    for (size_t i = 1; i < vecs.size() && all_par; ++i)
      if (!parallel(vecs[0], vecs[i])) all_par = false;
    if (all_par) throw PreconditionError("VectorFamily: all vectors parallel");
    VectorFamily f;
    f.vecs_ = std::move(vecs);
    return f;
  }

  int size() const { return static_cast<int>(vecs_.size()); }
  const std::vector<PlanarVec<Scalar>>& vectors() const { return vecs_; }

 private:
  VectorFamily() = default;
  std::vector<PlanarVec<Scalar>> vecs_;
};

enum class EntryKind { Original, Sum, Difference };

template <typename Scalar>
struct MultisetEntry {
  PlanarVec<Scalar> vec;
  EntryKind kind;
  int i;
  int j;  // -1 for originals; differences are p_i - p_j with i < j
};

// P u {p_i + p_j : i < j} u {p_i - p_j : i < j}; exactly n^2 entries.
template <typename Scalar>
std::vector<MultisetEntry<Scalar>> build_multiset(const VectorFamily<Scalar>& p) {
  const auto& v = p.vectors();
  const int n = p.size();
  std::vector<MultisetEntry<Scalar>> out;
  out.reserve(static_cast<size_t>(n) * static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    out.push_back({v[static_cast<size_t>(i)], EntryKind::Original, i, -1});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      out.push_back({{v[static_cast<size_t>(i)].x + v[static_cast<size_t>(j)].x,
                      v[static_cast<size_t>(i)].y + v[static_cast<size_t>(j)].y},
                     EntryKind::Sum,
                     i,
                     j});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      out.push_back({{v[static_cast<size_t>(i)].x - v[static_cast<size_t>(j)].x,
                      v[static_cast<size_t>(i)].y - v[static_cast<size_t>(j)].y},
                     EntryKind::Difference,
                     i,
                     j});
  return out;
}

template <typename Scalar>
struct LvpResult {
  bool has_lvp = false;
  std::optional<MultisetEntry<Scalar>> lonely;
  // complete partition into parallel classes (each of size >= 2) on failure
  std::vector<std::vector<MultisetEntry<Scalar>>> parallel_classes;
};

template <typename Scalar>
LvpResult<Scalar> has_lvp(const VectorFamily<Scalar>& p) {
  auto entries = build_multiset(p);
  const size_t m = entries.size();
  LvpResult<Scalar> out;
  std::vector<int> cls(m, -1);
  int next_class = 0;
  for (size_t i = 0; i < m; ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = next_class;
    bool alone = true;
    for (size_t j = i + 1; j < m; ++j) {
      if (cls[j] >= 0) continue;
      if (parallel(entries[i].vec, entries[j].vec)) {
        cls[j] = next_class;
        alone = false;
      }
    }
    if (alone) {
      out.has_lvp = true;
      out.lonely = entries[i];
      return out;
    }
    ++next_class;
  }
  out.parallel_classes.assign(static_cast<size_t>(next_class), {});
  for (size_t i = 0; i < m; ++i)
    out.parallel_classes[static_cast<size_t>(cls[i])].push_back(entries[i]);
  return out;
}

// Named harness entry for the all-but-two-collinear case: requires
// p_3, ..., p_n pairwise parallel and always reports true.
template <typename Scalar>
bool lvp_collinear_case(const VectorFamily<Scalar>& p) {
  const auto& v = p.vectors();
  for (size_t i = 2; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j)
      if (!parallel(v[i], v[j]))
        throw PreconditionError("lvp_collinear_case: tail vectors not parallel");
  return has_lvp(p).has_lvp;
}

using RatFamily = VectorFamily<Rat>;
using QuadFamily = VectorFamily<QuadRat>;

// CLI formats: "a,b;c,d;..." with rational coordinates "p/q"; with sqrt2
// coordinates "r:s" read as r + s*sqrt2.
RatFamily parse_rat_family(const std::string& s);
QuadFamily parse_quad_family(const std::string& s);

// The four-consecutive-octagon-vertex family (1,0), (L,1), (1,L), (0,1) with
// L = sqrt2: the known lonely-vector failure.
QuadFamily octagon_family();

}  // namespace zonorun
