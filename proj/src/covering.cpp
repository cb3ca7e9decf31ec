#include "zonorun/covering.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <set>

#include "zonorun/textio.hpp"

namespace zonorun {

LatticeBasis LatticeBasis::standard(int d) {
  LatticeBasis b;
  b.columns = RatMat::Identity(d, d);
  return b;
}

std::string CoveringCertificate::to_text() const {
  return "mu = " + to_string(mu) + ", deep_point = " + format_rat_point(deep_point) +
         ", translates_checked = " + std::to_string(translates_checked);
}

namespace {

// ---------------------------------------------------------------------------
// Working pieces: closed convex polytopes tracked as integer hyperplanes plus
// homogeneous vertices. Plane provenance (facet index + lattice translate) is
// kept so active-constraint systems, linear in (z, mu), can be rebuilt from a
// residual region.

struct CutPlane {
  IntVec a;  // a . x <= c
  Int c;
  int facet = -2;  // >= 0: facet of a translate copy; -2: static plane
  IntVec w;        // translate vector (facet >= 0 only)
};

CutPlane normalize_plane(CutPlane p) {
  Int g = abs(p.c);
  for (Eigen::Index i = 0; i < p.a.size(); ++i) g = gcd(g, p.a(i));
  if (g > 1) {
    p.a /= g;
    p.c /= g;
  }
  return p;
}

struct HomPt {
  IntVec num;
  Int den;  // > 0
  RatVec to_rat() const {
    RatVec r(num.size());
    for (Eigen::Index i = 0; i < num.size(); ++i) r(i) = make_rat(num(i), den);
    return r;
  }
};

HomPt normalize_point(HomPt p) {
  Int g = p.den;
  for (Eigen::Index i = 0; i < p.num.size(); ++i) g = gcd(g, p.num(i));
  if (g > 1) {
    p.num /= g;
    p.den /= g;
  }
  return p;
}

struct RatBox {
  std::vector<Rat> lo, hi;
};

struct Piece {
  std::vector<CutPlane> planes;
  std::vector<HomPt> verts;
  std::vector<uint64_t> masks;  // per-vertex plane-tightness bits
  RatBox bbox;                  // cached from verts
};

// Simplest rational strictly between a and b (continued-fraction descent);
// probing at low-denominator values keeps all derived integers small.
Rat simplest_between(const Rat& a, const Rat& b) {
  if (!(a < b)) throw PreconditionError("simplest_between: empty interval");
  Int fa = rat_floor(a);
  Rat n(fa + 1);  // smallest integer > a, or a + 1 when a is integral
  if (n < b) return n;
  Rat af = a - Rat(fa), bf = b - Rat(fa);
  if (af == 0) {
    // interval (0, bf) shifted by fa: take 1/k with the smallest valid k
    Int k = rat_floor(Rat(1) / bf) + 1;
    return Rat(fa) + make_rat(1, k);
  }
  return Rat(fa) + Rat(1) / simplest_between(Rat(1) / bf, Rat(1) / af);
}

void refresh_bbox(Piece& p, int d) {
  p.bbox.lo.assign(static_cast<size_t>(d), Rat(0));
  p.bbox.hi.assign(static_cast<size_t>(d), Rat(0));
  bool first = true;
  for (const HomPt& v : p.verts) {
    for (int j = 0; j < d; ++j) {
      Rat c = make_rat(v.num(j), v.den);
      if (first || c < p.bbox.lo[static_cast<size_t>(j)]) p.bbox.lo[static_cast<size_t>(j)] = c;
      if (first || c > p.bbox.hi[static_cast<size_t>(j)]) p.bbox.hi[static_cast<size_t>(j)] = c;
    }
    first = false;
  }
}

Int plane_eval(const CutPlane& pl, const HomPt& v) {
  return pl.c * v.den - pl.a.dot(v.num);  // >= 0 inside
}

bool same_plane(const CutPlane& x, const CutPlane& y) { return x.c == y.c && x.a == y.a; }

bool full_dimensional(const std::vector<HomPt>& verts, int d) {
  if (static_cast<int>(verts.size()) < d + 1) return false;
  RatMat m(static_cast<int>(verts.size()) - 1, d);
  RatVec v0 = verts[0].to_rat();
  for (size_t i = 1; i < verts.size(); ++i) {
    RatVec vi = verts[i].to_rat();
    for (int j = 0; j < d; ++j) m(static_cast<int>(i) - 1, j) = vi(j) - v0(j);
  }
  int rk = 0;
  int rows = static_cast<int>(m.rows());
  for (int col = 0; col < d && rk < rows; ++col) {
    int piv = -1;
    for (int r = rk; r < rows; ++r)
      if (m(r, col) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    m.row(rk).swap(m.row(piv));
    for (int r = rk + 1; r < rows; ++r) {
      if (m(r, col) == 0) continue;
      Rat f = m(r, col) / m(rk, col);
      for (int cc = col; cc < d; ++cc) m(r, cc) -= f * m(rk, cc);
    }
    ++rk;
  }
  return rk == d;
}

// Drop duplicate planes, keep facet-defining ones (tight on >= d vertices),
// cache the vertex tightness masks and bounding box. The caller guarantees
// full dimension: clipping a full-dim piece by a halfspace whose interior
// meets it stays full-dim.
bool tidy_piece(Piece& p, int d) {
  const size_t nv = p.verts.size();
  if (static_cast<int>(nv) < d + 1) return false;
  std::vector<CutPlane> planes;
  std::vector<std::vector<bool>> tight_rows;
  for (const CutPlane& pl : p.planes) {
    bool dup = false;
    for (const CutPlane& q : planes)
      if (same_plane(pl, q)) {
        dup = true;
        break;
      }
    if (dup) continue;
    std::vector<bool> row(nv, false);
    int tight = 0;
    for (size_t i = 0; i < nv; ++i)
      if (plane_eval(pl, p.verts[i]) == 0) {
        row[i] = true;
        ++tight;
      }
    if (tight >= d) {
      planes.push_back(pl);
      tight_rows.push_back(std::move(row));
    }
  }
  if (planes.size() > 64) throw ResourceError("covering: piece plane list overflow");
  p.planes = std::move(planes);
  p.masks.assign(nv, 0);
  for (size_t j = 0; j < p.planes.size(); ++j)
    for (size_t i = 0; i < nv; ++i)
      if (tight_rows[j][i]) p.masks[i] |= (uint64_t(1) << j);
  refresh_bbox(p, d);
  return true;
}

// Clip to the side a . x <= c. Returns false when the result is empty or not
// full-dimensional; `changed` reports whether the plane actually cut.
bool clip_piece(const Piece& in, const CutPlane& plane_raw, Piece& out, bool& changed) {
  CutPlane plane = normalize_plane(plane_raw);
  const int d = static_cast<int>(plane.a.size());
  const size_t nv = in.verts.size();
  std::vector<Int> ev(nv);
  bool any_pos = false, any_neg = false;
  for (size_t i = 0; i < nv; ++i) {
    ev[i] = plane_eval(plane, in.verts[i]);
    if (ev[i] > 0) any_pos = true;
    if (ev[i] < 0) any_neg = true;
  }
  if (!any_neg) {
    out = in;
    changed = false;
    return true;
  }
  changed = true;
  if (!any_pos) return false;

  const std::vector<uint64_t>& mask = in.masks;
  Piece res;
  res.planes = in.planes;
  res.planes.push_back(plane);
  std::set<std::vector<Int>> seen;
  auto push_vert = [&](HomPt v) {
    v = normalize_point(std::move(v));
    std::vector<Int> key(v.num.data(), v.num.data() + v.num.size());
    key.push_back(v.den);
    if (seen.insert(key).second) res.verts.push_back(std::move(v));
  };
  for (size_t i = 0; i < nv; ++i)
    if (ev[i] >= 0) push_vert(in.verts[i]);
  for (size_t i = 0; i < nv; ++i) {
    if (ev[i] <= 0) continue;
    for (size_t j = 0; j < nv; ++j) {
      if (ev[j] >= 0) continue;
      int shared = 0;
      uint64_t both = mask[i] & mask[j];
      while (both) {
        both &= both - 1;
        ++shared;
      }
      if (shared < d - 1) continue;  // vertices adjacent iff they share d-1 facets
      const HomPt& u = in.verts[i];
      const HomPt& v = in.verts[j];
      Int alpha = ev[i] * v.den;  // > 0
      Int beta = -ev[j] * u.den;  // > 0
      HomPt x;
      x.num = Int(beta * v.den) * u.num + Int(alpha * u.den) * v.num;
      x.den = u.den * v.den * (alpha + beta);
      push_vert(std::move(x));
    }
  }
  if (!tidy_piece(res, d)) return false;
  out = std::move(res);
  return true;
}

RatBox region_bbox(const std::vector<Piece>& region, int d) {
  RatBox rb;
  rb.lo.assign(static_cast<size_t>(d), Rat(0));
  rb.hi.assign(static_cast<size_t>(d), Rat(0));
  bool first = true;
  for (const Piece& pc : region) {
    for (int j = 0; j < d; ++j) {
      if (first || pc.bbox.lo[static_cast<size_t>(j)] < rb.lo[static_cast<size_t>(j)])
        rb.lo[static_cast<size_t>(j)] = pc.bbox.lo[static_cast<size_t>(j)];
      if (first || pc.bbox.hi[static_cast<size_t>(j)] > rb.hi[static_cast<size_t>(j)])
        rb.hi[static_cast<size_t>(j)] = pc.bbox.hi[static_cast<size_t>(j)];
    }
    first = false;
  }
  return rb;
}

// ---------------------------------------------------------------------------

struct Facet {
  IntVec a;
  Int c;     // a . x <= c, c > 0 (origin interior)
  Rat amin;  // min of a . x over the centered polytope (amax is c)
};

struct CertifyResult {
  bool covered = false;
  std::vector<Piece> residual;
  long translates = 0;
};

class CoveringEngine {
 public:
  CoveringEngine(const RationalPolytope& p, const LatticeBasis& lattice)
      : d_(p.dim), lattice_(lattice) {
    if (lattice.columns.rows() != d_ || lattice.columns.cols() != d_)
      throw DimensionError("covering: lattice basis shape mismatch");
    // lattice coordinates: x = B y
    RationalPolytope q;
    q.dim = d_;
    for (size_t i = 0; i < p.normals.size(); ++i) {
      RatVec row(d_);
      for (int j = 0; j < d_; ++j) {
        Rat s(0);
        for (int k = 0; k < d_; ++k) s += Rat(p.normals[i](k)) * lattice.columns(k, j);
        row(j) = s;
      }
      Int den = 1;
      for (int j = 0; j < d_; ++j) den = den / gcd(den, row(j).get_den()) * row(j).get_den();
      den = den / gcd(den, p.offsets[i].get_den()) * p.offsets[i].get_den();
      IntVec a(d_);
      for (int j = 0; j < d_; ++j) a(j) = Int(row(j) * Rat(den));
      q.normals.push_back(a);
      q.offsets.push_back(p.offsets[i] * Rat(den));
    }
    std::vector<RatVec> verts = polytope_vertices(q);
    if (verts.size() < static_cast<size_t>(d_) + 1)
      throw PreconditionError("covering: polytope is degenerate");
    center_ = RatVec::Zero(d_);
    for (const RatVec& v : verts) center_ += v;
    for (int j = 0; j < d_; ++j) center_(j) /= Rat(static_cast<long>(verts.size()));
    qlo_.assign(static_cast<size_t>(d_), Rat(0));
    qhi_.assign(static_cast<size_t>(d_), Rat(0));
    bool first = true;
    bool fulldim = false;
    for (const RatVec& v : verts) {
      for (int j = 0; j < d_; ++j) {
        Rat c = v(j) - center_(j);
        if (first || c < qlo_[static_cast<size_t>(j)]) qlo_[static_cast<size_t>(j)] = c;
        if (first || c > qhi_[static_cast<size_t>(j)]) qhi_[static_cast<size_t>(j)] = c;
      }
      first = false;
    }
    for (size_t i = 0; i < q.normals.size(); ++i) {
      Rat off = q.offsets[i];
      for (int j = 0; j < d_; ++j) off -= Rat(q.normals[i](j)) * center_(j);
      if (off <= 0) throw PreconditionError("covering: polytope is degenerate");
      Facet f;
      Int den = off.get_den();
      f.a = den * q.normals[i];
      f.c = Int(off * Rat(den));
      bool first_v = true;
      for (const RatVec& v : verts) {
        Rat s(0);
        for (int j = 0; j < d_; ++j) s += Rat(f.a(j)) * (v(j) - center_(j));
        if (first_v || s < f.amin) f.amin = s;
        first_v = false;
      }
      facets_.push_back(f);
    }
    {
      std::vector<HomPt> hv;
      for (const RatVec& v : verts) {
        Int den = 1;
        for (int j = 0; j < d_; ++j) den = den / gcd(den, v(j).get_den()) * v(j).get_den();
        HomPt h;
        h.den = den;
        h.num.resize(d_);
        for (int j = 0; j < d_; ++j) h.num(j) = Int(v(j) * Rat(den));
        hv.push_back(normalize_point(h));
      }
      fulldim = full_dimensional(hv, d_);
    }
    if (!fulldim) throw PreconditionError("covering: polytope is degenerate");
  }

  int dim() const { return d_; }
  const RatVec& centering() const { return center_; }
  const LatticeBasis& lattice() const { return lattice_; }

  Rat min_coord_width() const {
    Rat w = qhi_[0] - qlo_[0];
    for (int j = 1; j < d_; ++j) w = std::min(w, Rat(qhi_[static_cast<size_t>(j)] - qlo_[static_cast<size_t>(j)]));
    return w;
  }

  // Lattice vectors w for which mu Q' + w can meet the given box, screened by
  // per-facet support overlap (tight for skewed bodies where the coordinate
  // box overshoots).
  std::vector<IntVec> overlap_translates(const RatBox& rb, const Rat& mu) const {
    std::vector<IntVec> out;
    IntVec wlo(d_), whi(d_);
    for (int j = 0; j < d_; ++j) {
      wlo(j) = rat_ceil(rb.lo[static_cast<size_t>(j)] - mu * qhi_[static_cast<size_t>(j)]);
      whi(j) = rat_floor(rb.hi[static_cast<size_t>(j)] - mu * qlo_[static_cast<size_t>(j)]);
      if (wlo(j) > whi(j)) return out;
    }
    const size_t nf = facets_.size();
    std::vector<Rat> fmin(nf, Rat(0)), fmax(nf, Rat(0)), tmax(nf), tmin(nf);
    for (size_t i = 0; i < nf; ++i) {
      for (int j = 0; j < d_; ++j) {
        Rat aj = Rat(facets_[i].a(j));
        if (aj >= 0) {
          fmin[i] += aj * rb.lo[static_cast<size_t>(j)];
          fmax[i] += aj * rb.hi[static_cast<size_t>(j)];
        } else {
          fmin[i] += aj * rb.hi[static_cast<size_t>(j)];
          fmax[i] += aj * rb.lo[static_cast<size_t>(j)];
        }
      }
      tmax[i] = mu * Rat(facets_[i].c);   // max of a . x over mu Q'
      tmin[i] = mu * facets_[i].amin;     // min of a . x over mu Q'
    }
    IntVec w = wlo;
    while (true) {
      bool ok = true;
      for (size_t i = 0; i < nf && ok; ++i) {
        Rat aw = Rat(facets_[i].a.dot(w));
        if (aw + tmax[i] < fmin[i] || aw + tmin[i] > fmax[i]) ok = false;
      }
      if (ok) out.push_back(w);
      int j = 0;
      while (j < d_ && w(j) == whi(j)) {
        w(j) = wlo(j);
        ++j;
      }
      if (j == d_) break;
      ++w(j);
    }
    return out;
  }

  std::vector<IntVec> translates_near(const std::vector<Piece>& region, const Rat& cap) const {
    return overlap_translates(region_bbox(region, d_), cap);
  }

  // min over the supplied translates of the dilation putting z inside; the
  // list must contain every translate that can cover z at dilation <= cap.
  std::optional<Rat> min_gauge_over(const RatVec& z, const std::vector<IntVec>& ws,
                                    const Rat& cap) const {
    Int den = 1;
    for (int j = 0; j < d_; ++j) den = den / gcd(den, z(j).get_den()) * z(j).get_den();
    IntVec zn(d_);
    for (int j = 0; j < d_; ++j) zn(j) = Int(z(j) * Rat(den));
    const size_t nf = facets_.size();
    std::vector<Int> az(nf), cd(nf);
    for (size_t i = 0; i < nf; ++i) {
      az[i] = facets_[i].a.dot(zn);
      cd[i] = facets_[i].c * den;
    }
    std::optional<Rat> best;
    std::vector<Int> lvals(nf);
    for (const IntVec& w : ws) {
      const Rat& thr = best ? *best : cap;
      const Int tn = thr.get_num(), td = thr.get_den();
      bool ok = true;
      for (size_t i = 0; i < nf; ++i) {
        lvals[i] = az[i] - den * facets_[i].a.dot(w);
        if (lvals[i] * td > tn * cd[i]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      Rat g(0);
      for (size_t i = 0; i < nf; ++i) {
        Rat gi = make_rat(lvals[i], cd[i]);
        if (gi > g) g = gi;
      }
      if (!best || g < *best) best = g;
    }
    return best;
  }

  std::vector<Piece> unit_box() const {
    Piece b;
    for (int j = 0; j < d_; ++j) {
      CutPlane hi, lo;
      hi.a = IntVec::Zero(d_);
      hi.a(j) = 1;
      hi.c = 1;
      lo.a = IntVec::Zero(d_);
      lo.a(j) = -1;
      lo.c = 0;
      b.planes.push_back(hi);
      b.planes.push_back(lo);
    }
    for (unsigned m = 0; m < (1u << d_); ++m) {
      HomPt v;
      v.den = 1;
      v.num = IntVec::Zero(d_);
      for (int j = 0; j < d_; ++j) v.num(j) = (m & (1u << j)) ? 1 : 0;
      b.verts.push_back(v);
    }
    tidy_piece(b, d_);
    return {b};
  }

  // Subtract all lattice translates of mu * Q' that can meet the region.
  CertifyResult certify(const Rat& mu, const std::vector<Piece>& region) const {
    static const bool dbg = std::getenv("ZONORUN_COVDBG") != nullptr;
    struct DbgTimer {
      const Rat& mu;
      const CertifyResult& out;
      std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
      DbgTimer(const Rat& m, const CertifyResult& o) : mu(m), out(o) {}
      ~DbgTimer() {
        if (std::getenv("ZONORUN_COVDBG"))
          std::fprintf(stderr, "[certify] mu=%s covered=%d translates=%ld pieces=%zu ms=%ld\n",
                       to_string(mu).c_str(), out.covered ? 1 : 0, out.translates,
                       out.residual.size(),
                       static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                             std::chrono::steady_clock::now() - t0)
                                             .count()));
      }
    };
    CertifyResult out;
    std::optional<DbgTimer> timer;
    if (dbg) timer.emplace(mu, out);
    if (mu <= 0) throw PreconditionError("covering: dilation factor must be positive");
    if (region.empty()) {
      out.covered = true;
      return out;
    }
    const Int p = mu.get_num(), q = mu.get_den();
    RatBox rb = region_bbox(region, d_);

    std::vector<std::pair<Int, IntVec>> ws;
    for (const IntVec& w : overlap_translates(rb, mu)) {
      Int key = 0;
      for (int j = 0; j < d_; ++j) {
        Int t = 2 * w(j) - 1;
        key += t * t;
      }
      ws.emplace_back(key, w);
    }
    std::sort(ws.begin(), ws.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    std::vector<Piece> pieces = region;
    std::vector<IntVec> scaled_a(facets_.size());
    for (size_t i = 0; i < facets_.size(); ++i) scaled_a[i] = q * facets_[i].a;

    for (const auto& [key, wv] : ws) {
      (void)key;
      if (pieces.empty()) break;
      ++out.translates;
      std::vector<Rat> tlo(static_cast<size_t>(d_)), thi(static_cast<size_t>(d_));
      for (int j = 0; j < d_; ++j) {
        tlo[static_cast<size_t>(j)] = mu * qlo_[static_cast<size_t>(j)] + Rat(wv(j));
        thi[static_cast<size_t>(j)] = mu * qhi_[static_cast<size_t>(j)] + Rat(wv(j));
      }
      std::vector<CutPlane> inside(facets_.size());
      for (size_t i = 0; i < facets_.size(); ++i) {
        inside[i].a = scaled_a[i];
        inside[i].c = p * facets_[i].c + q * facets_[i].a.dot(wv);
        inside[i].facet = static_cast<int>(i);
        inside[i].w = wv;
      }
      std::vector<Piece> next;
      for (Piece& pc : pieces) {
        bool disjoint = false;
        for (int j = 0; j < d_ && !disjoint; ++j)
          if (pc.bbox.hi[static_cast<size_t>(j)] < tlo[static_cast<size_t>(j)] ||
              pc.bbox.lo[static_cast<size_t>(j)] > thi[static_cast<size_t>(j)])
            disjoint = true;
        if (disjoint) {
          next.push_back(std::move(pc));
          continue;
        }
        Piece cur = std::move(pc);
        for (const CutPlane& in_pl : inside) {
          CutPlane out_pl = in_pl;
          out_pl.a = -out_pl.a;
          out_pl.c = -out_pl.c;
          Piece outside;
          bool changed = false;
          if (clip_piece(cur, out_pl, outside, changed)) {
            next.push_back(std::move(outside));
            if (!changed) break;  // piece fully outside this facet: untouched
          }
          Piece in_piece;
          if (!clip_piece(cur, in_pl, in_piece, changed)) break;
          cur = std::move(in_piece);
          // chain exhausted: cur lies inside the translate and is dropped
        }
      }
      pieces = std::move(next);
      if (pieces.size() > 200000) throw ResourceError("covering: piece explosion");
    }
    out.covered = pieces.empty();
    out.residual = std::move(pieces);
    return out;
  }

  // Linear systems in (z, mu) from any plane pool; each full-rank
  // (d+1)-subset contributes its unique solution when mu lands in (lo, hi].
  std::vector<std::pair<Rat, RatVec>> systems_from_planes(const std::vector<CutPlane>& pool,
                                                          const Rat& lo, const Rat& hi) const {
    std::vector<std::pair<Rat, RatVec>> out;
    std::set<std::pair<std::vector<Rat>, std::vector<Rat>>> dedupe;
    const int np = static_cast<int>(pool.size());
    if (np < d_ + 1) return out;
    std::vector<int> idx(static_cast<size_t>(d_) + 1);
    for (int i = 0; i <= d_; ++i) idx[static_cast<size_t>(i)] = i;
    while (true) {
      RatMat m(d_ + 1, d_ + 1);
      RatVec rhs(d_ + 1);
      for (int r = 0; r <= d_; ++r) {
        const CutPlane& pl = pool[static_cast<size_t>(idx[static_cast<size_t>(r)])];
        if (pl.facet >= 0) {
          const Facet& f = facets_[static_cast<size_t>(pl.facet)];
          for (int j = 0; j < d_; ++j) m(r, j) = Rat(f.a(j));
          m(r, d_) = Rat(-f.c);
          rhs(r) = Rat(f.a.dot(pl.w));
        } else {
          for (int j = 0; j < d_; ++j) m(r, j) = Rat(pl.a(j));
          m(r, d_) = 0;
          rhs(r) = Rat(pl.c);
        }
      }
      if (auto sol = solve_square(m, rhs)) {
        Rat mu = (*sol)(d_);
        if (mu > lo && mu <= hi) {
          RatVec z(d_);
          for (int j = 0; j < d_; ++j) z(j) = (*sol)(j);
          std::vector<Rat> kz(z.data(), z.data() + d_);
          if (dedupe.insert({{mu}, kz}).second) out.emplace_back(mu, z);
        }
      }
      int i = d_;
      while (i >= 0 && idx[static_cast<size_t>(i)] == np - (d_ + 1) + i) --i;
      if (i < 0) break;
      ++idx[static_cast<size_t>(i)];
      for (int j = i + 1; j <= d_; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
    }
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
  }

  // Keep only planes whose mu-parametric copies can pass through the box for
  // some mu in [lo, hi]; static planes always stay.
  std::vector<CutPlane> live_planes(const std::vector<CutPlane>& planes, const RatBox& rb,
                                    const Rat& lo, const Rat& hi) const {
    std::vector<CutPlane> out;
    for (const CutPlane& pl : planes) {
      if (pl.facet < 0) {
        out.push_back(pl);
        continue;
      }
      const Facet& f = facets_[static_cast<size_t>(pl.facet)];
      Rat zmin(0), zmax(0);
      for (int j = 0; j < d_; ++j) {
        Rat aj = Rat(f.a(j));
        if (aj >= 0) {
          zmin += aj * rb.lo[static_cast<size_t>(j)];
          zmax += aj * rb.hi[static_cast<size_t>(j)];
        } else {
          zmin += aj * rb.hi[static_cast<size_t>(j)];
          zmax += aj * rb.lo[static_cast<size_t>(j)];
        }
      }
      Rat aw = Rat(f.a.dot(pl.w));
      if (zmax < lo * Rat(f.c) + aw || zmin > hi * Rat(f.c) + aw) continue;
      out.push_back(pl);
    }
    return out;
  }

  std::vector<std::pair<Rat, RatVec>> candidates(const std::vector<Piece>& region,
                                                 const Rat& lo, const Rat& hi) const {
    std::vector<std::pair<Rat, RatVec>> out;
    for (const Piece& pc : region) {
      auto sys = systems_from_planes(live_planes(pc.planes, pc.bbox, lo, hi), lo, hi);
      out.insert(out.end(), sys.begin(), sys.end());
    }
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const auto& x, const auto& y) {
                            return x.first == y.first && x.second == y.second;
                          }),
              out.end());
    return out;
  }

  // All (facet, translate) planes whose copies can pass through a piece for
  // some dilation in [lo, hi], plus the unit-box planes; applied per piece so
  // the pools stay small.
  std::vector<std::pair<Rat, RatVec>> universe_candidates(const std::vector<Piece>& region,
                                                          const Rat& lo, const Rat& hi) const {
    std::vector<std::pair<Rat, RatVec>> out;
    for (const Piece& pc : region) {
      std::vector<CutPlane> pool;
      for (int j = 0; j < d_; ++j) {
        CutPlane hi_pl, lo_pl;
        hi_pl.a = IntVec::Zero(d_);
        hi_pl.a(j) = 1;
        hi_pl.c = 1;
        lo_pl.a = IntVec::Zero(d_);
        lo_pl.a(j) = -1;
        lo_pl.c = 0;
        pool.push_back(hi_pl);
        pool.push_back(lo_pl);
      }
      for (const IntVec& w : overlap_translates(pc.bbox, hi)) {
        for (size_t i = 0; i < facets_.size(); ++i) {
          CutPlane pl;
          pl.a = facets_[i].a;
          pl.c = 0;
          pl.facet = static_cast<int>(i);
          pl.w = w;
          pool.push_back(pl);
        }
      }
      pool = live_planes(pool, pc.bbox, lo, hi);
      if (pool.size() > 72) throw ResourceError("covering: candidate universe too large");
      auto sys = systems_from_planes(pool, lo, hi);
      out.insert(out.end(), sys.begin(), sys.end());
    }
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const auto& x, const auto& y) {
                            return x.first == y.first && x.second == y.second;
                          }),
              out.end());
    return out;
  }

  // Smallest dilation at which some lattice translate covers z; nullopt when
  // that exceeds cap. Integer arithmetic with early rejection per translate.
  std::optional<Rat> min_gauge(const RatVec& z, const Rat& cap) const {
    Int den = 1;
    for (int j = 0; j < d_; ++j) den = den / gcd(den, z(j).get_den()) * z(j).get_den();
    IntVec zn(d_);
    for (int j = 0; j < d_; ++j) zn(j) = Int(z(j) * Rat(den));
    IntVec wlo(d_), whi(d_);
    for (int j = 0; j < d_; ++j) {
      wlo(j) = rat_ceil(z(j) - cap * qhi_[static_cast<size_t>(j)]);
      whi(j) = rat_floor(z(j) - cap * qlo_[static_cast<size_t>(j)]);
      if (wlo(j) > whi(j)) return std::nullopt;
    }
    const size_t nf = facets_.size();
    std::vector<Int> az(nf), cd(nf);
    for (size_t i = 0; i < nf; ++i) {
      az[i] = facets_[i].a.dot(zn);
      cd[i] = facets_[i].c * den;
    }
    std::optional<Rat> best;
    std::vector<Int> lvals(nf);
    IntVec w = wlo;
    while (true) {
      const Rat& thr = best ? *best : cap;
      const Int tn = thr.get_num(), td = thr.get_den();
      bool ok = true;
      for (size_t i = 0; i < nf; ++i) {
        lvals[i] = az[i] - den * facets_[i].a.dot(w);
        if (lvals[i] * td > tn * cd[i]) {
          ok = false;
          break;
        }
      }
      if (ok) {
        Rat g(0);
        for (size_t i = 0; i < nf; ++i) {
          Rat gi = make_rat(lvals[i], cd[i]);
          if (gi > g) g = gi;
        }
        if (!best || g < *best) best = g;
      }
      int j = 0;
      while (j < d_ && w(j) == whi(j)) {
        w(j) = wlo(j);
        ++j;
      }
      if (j == d_) break;
      ++w(j);
    }
    return best;
  }

 private:
  int d_;
  LatticeBasis lattice_;
  std::vector<Facet> facets_;
  RatVec center_;
  std::vector<Rat> qlo_, qhi_;
};

}  // namespace

bool certify_mu_upper(const RationalPolytope& p, const LatticeBasis& lattice, const Rat& mu_star) {
  CoveringEngine eng(p, lattice);
  return eng.certify(mu_star, eng.unit_box()).covered;
}

bool certify_mu_upper(const RationalPolytope& p, const Rat& mu_star) {
  return certify_mu_upper(p, LatticeBasis::standard(p.dim), mu_star);
}

CoveringCertificate covering_radius(const RationalPolytope& p, const LatticeBasis& lattice,
                                    const Rat& lower_hint) {
  CoveringEngine eng(p, lattice);
  const int d = eng.dim();

  auto finish = [&](const Rat& mu, const RatVec& z, long translates) {
    CoveringCertificate cert;
    cert.mu = mu;
    cert.mode = CoveringCertificate::Mode::Exact;
    cert.translates_checked = translates;
    RatVec deep = z + mu * eng.centering();
    RatVec x = RatVec::Zero(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) x(i) += eng.lattice().columns(i, j) * deep(j);
    cert.deep_point = x;
    return cert;
  };

  // bracket (lo, hi]: hi covered, lo uncovered with residual in hand
  Rat hi(1);
  long translates = 0;
  {
    int guard = 0;
    while (true) {
      auto r = eng.certify(hi, eng.unit_box());
      translates = std::max(translates, r.translates);
      if (r.covered) break;
      hi *= 2;
      if (++guard > 64) throw ResourceError("covering: no upper bound found");
    }
  }
  // Invariants maintained below:
  //   certify(lo) = uncovered, certify(hi) = covered, region superset of the
  //   uncovered set for every mu >= lo, and glb <= mu* is a proven lower
  //   bound (from a point whose min-gauge equals glb).
  Rat glb(0);
  std::optional<RatVec> glb_z;

  // Half-integral classes frequently realize the deepest hole of a centered
  // body; their gauges are certified lower bounds and often mu* itself.
  for (unsigned m = 1; m < (1u << d); ++m) {
    RatVec z = RatVec::Zero(d);
    for (int j = 0; j < d; ++j)
      if (m & (1u << j)) z(j) = make_rat(1, 2);
    auto g = eng.min_gauge(z, hi);
    if (g && *g > glb) {
      glb = *g;
      glb_z = z;
    }
  }

  // a covering must be at least one unit wide in every coordinate direction,
  // so mu* >= 1 / min coordinate width; start probing at the strongest known
  // lower bound
  Rat lo = std::max({Rat(Rat(1) / eng.min_coord_width()), lower_hint, glb});
  lo = std::min(hi, lo);
  std::vector<Piece> region;
  {
    int guard = 0;
    while (true) {
      auto r = eng.certify(lo, eng.unit_box());
      translates = std::max(translates, r.translates);
      if (!r.covered) {
        region = std::move(r.residual);
        break;
      }
      if (glb_z && lo == glb) return finish(glb, *glb_z, translates);
      hi = lo;
      lo = std::max(Rat(lo / 2), glb);
      if (++guard > 128) throw ResourceError("covering: radius is implausibly small");
    }
  }

  // subtracting inside a heavily fragmented region costs more than a fresh
  // full-cell run; prefer the cheaper representation
  auto probe = [&](const Rat& mu) {
    return region.size() <= 150 ? eng.certify(mu, region) : eng.certify(mu, eng.unit_box());
  };

  // Gauge ascent: the min-gauge of any point is a certified lower bound on
  // mu*; jumping to the best vertex gauge tightens the bracket fast, and
  // when the gauge value itself certifies as covered it is mu* exactly.
  std::optional<CoveringCertificate> ascent_result;
  auto ascend = [&]() -> bool {  // true when progress was made
    Rat best = lo;
    std::optional<RatVec> bestz;
    std::set<std::vector<Int>> seen;
    auto ws = eng.translates_near(region, hi);
    auto consider = [&](const RatVec& vz) {
      auto g = eng.min_gauge_over(vz, ws, hi);
      if (g && *g > best) {
        best = *g;
        bestz = vz;
      }
    };
    for (const Piece& pc : region) {
      RatVec centroid = RatVec::Zero(eng.dim());
      for (const HomPt& v : pc.verts) {
        RatVec vz = v.to_rat();
        centroid += vz;
        std::vector<Int> key(v.num.data(), v.num.data() + v.num.size());
        key.push_back(v.den);
        if (!seen.insert(key).second) continue;
        consider(vz);
      }
      for (int j = 0; j < eng.dim(); ++j)
        centroid(j) /= Rat(static_cast<long>(pc.verts.size()));
      consider(centroid);  // interior points reach deeper than corners
    }
    if (!bestz || best <= lo) return false;
    if (best > glb) {
      glb = best;
      glb_z = *bestz;
    }
    const bool via_box = region.size() > 150;  // probe() re-extracts already
    if (best.get_den() <= 4096) {
      auto r = probe(best);
      if (r.covered) {
        ascent_result = finish(best, *bestz, translates);
        return true;
      }
      lo = best;
      region = std::move(r.residual);
    } else {
      // probe at a low-denominator value below the gauge bound (certainly
      // uncovered) so later plane coefficients stay small
      Rat pv = simplest_between(lo, best);
      auto r = probe(pv);
      if (r.covered) throw ResourceError("covering: inconsistent certify");
      lo = pv;
      region = std::move(r.residual);
    }
    if (!via_box && region.size() > 120) {
      // incremental residuals accumulate fragmentation: re-extract at lo
      auto fresh = eng.certify(lo, eng.unit_box());
      if (fresh.covered) throw ResourceError("covering: inconsistent certify");
      region = std::move(fresh.residual);
    }
    return true;
  };
  for (int pass = 0; pass < 3; ++pass) {
    if (!ascend()) break;
    if (ascent_result) return *ascent_result;
  }

  const bool dbg = std::getenv("ZONORUN_COVDBG") != nullptr;
  Rat last_extracted_lo(-1);
  for (int round = 0; round < 256; ++round) {
    bool progressed = false;
    if (dbg)
      std::fprintf(stderr, "[cov] round %d lo=%s glb=%s hi=%s pieces=%zu\n", round,
                   to_string(lo).c_str(), to_string(glb).c_str(), to_string(hi).c_str(),
                   region.size());

    auto search = [&](const std::vector<std::pair<Rat, RatVec>>& cand)
        -> std::optional<CoveringCertificate> {
      std::vector<Rat> vals;
      for (const auto& c : cand)
        if (vals.empty() || c.first != vals.back()) vals.push_back(c.first);
      // binary search for the smallest covered candidate value
      size_t a = 0, b = vals.size();
      while (a < b) {
        size_t mid = (a + b) / 2;
        auto r = probe(vals[mid]);
        if (r.covered) {
          b = mid;
        } else {
          if (vals[mid] > lo) {
            lo = vals[mid];
            region = std::move(r.residual);
            progressed = true;
          }
          a = mid + 1;
        }
      }
      Rat mu_c = hi;
      std::vector<const RatVec*> zs;
      if (a < vals.size()) {
        mu_c = vals[a];
        if (mu_c < hi) {
          hi = mu_c;
          progressed = true;
        }
      }
      for (const auto& c : cand)
        if (c.first == mu_c) zs.push_back(&c.second);
      if (dbg)
        std::fprintf(stderr, "[cov]   cands=%zu mu_c=%s zs=%zu\n", cand.size(),
                     to_string(mu_c).c_str(), zs.size());
      // a deep point proves mu* = mu_c: covered at mu_c, uncovered below
      RatBox rb = region_bbox(region, d);
      auto shared_ws = eng.translates_near(region, hi);
      auto gauge_of = [&](const RatVec& z) -> std::optional<Rat> {
        bool inside = true;
        for (int j = 0; j < d && inside; ++j)
          if (z(j) < rb.lo[static_cast<size_t>(j)] || z(j) > rb.hi[static_cast<size_t>(j)])
            inside = false;
        // the shared translate list is complete only for points in the box
        if (inside) return eng.min_gauge_over(z, shared_ws, hi);
        return eng.min_gauge(z, hi);
      };
      std::optional<Rat> best_lower;
      const RatVec* best_z = nullptr;
      for (const RatVec* z : zs) {
        auto g = gauge_of(*z);
        if (!g) continue;
        if (*g == mu_c) return finish(mu_c, *z, translates);
        if (!best_lower || *g > *best_lower) {
          best_lower = *g;
          best_z = z;
        }
      }
      if (best_lower && *best_lower > glb) {
        glb = *best_lower;
        glb_z = *best_z;
      }
      if (best_lower && *best_lower > lo && *best_lower < mu_c) {
        auto r = probe(*best_lower);
        if (r.covered) return finish(*best_lower, *best_z, translates);
        lo = *best_lower;
        region = std::move(r.residual);
        progressed = true;
      }
      return std::nullopt;
    };

    if (auto cert = search(eng.candidates(region, std::max(lo, glb), hi))) return *cert;
    if (progressed) continue;
    // the proven lower bound may be mu* itself
    if (glb > lo && glb_z) {
      auto r = probe(glb);
      if (r.covered) return finish(glb, *glb_z, translates);
      lo = glb;
      region = std::move(r.residual);
      continue;
    }
    // a vertex-gauge pass on the current residual often jumps straight to
    // the deciding neighborhood
    if (ascend()) {
      if (ascent_result) return *ascent_result;
      continue;
    }
    // stale active set: narrow the bracket with the simplest probes from the
    // middle half of the window, shrinking at least a quarter per step while
    // keeping plane coefficients small
    for (int k = 0; k < 3 && lo < hi; ++k) {
      Rat a = lo + (hi - lo) / 4;
      Rat b = hi - (hi - lo) / 4;
      Rat mid = (a < b) ? simplest_between(a, b) : simplest_between(lo, hi);
      auto r = probe(mid);
      if (r.covered) {
        hi = mid;
      } else {
        lo = mid;
        region = std::move(r.residual);
      }
    }
    if (lo != last_extracted_lo) {
      // the next candidate round should see the planes that matter near mu*
      auto fresh = eng.certify(lo, eng.unit_box());
      if (fresh.covered) throw ResourceError("covering: inconsistent certify");
      region = std::move(fresh.residual);
      last_extracted_lo = lo;
    }
    if (round >= 64) {
      if (auto cert = search(eng.universe_candidates(region, std::max(lo, glb), hi)))
        return *cert;
      throw ResourceError("covering: candidate search stalled");
    }
  }
  throw ResourceError("covering: did not converge");
}

CoveringCertificate covering_radius(const RationalPolytope& p) {
  return covering_radius(p, LatticeBasis::standard(p.dim));
}

CoveringCertificate covering_radius(const Zonotope& z) {
  if (z.dim() > 3) throw UnsupportedError("covering_radius: dimension > 3");
  Rat hint = make_rat(1, lattice_width(z).width);
  return covering_radius(zonotope_to_halfspaces(z), LatticeBasis::standard(z.dim()), hint);
}

Rat mu_projection_bound(const Zonotope& z) {
  const int d = z.dim();
  if (d < 2) throw PreconditionError("mu_projection_bound: needs dimension >= 2");
  FirstMinimum fm = first_minimum_diff(z);
  IntMat lb(d, 1);
  lb.col(0) = fm.vector;
  auto ext = extend_lattice_basis(lb);
  IntMat pg = ext.projection * z.generators();
  Zonotope proj = Zonotope::from_columns(pg);
  Rat mu_down = (proj.dim() <= 3) ? covering_radius(proj).mu : mu_projection_bound(proj);
  return fm.lambda1 + mu_down;
}

Rat mu_fiber_bound(const Zonotope& z, const std::vector<int>& generator_subset) {
  const int d = z.dim();
  const int s = static_cast<int>(generator_subset.size());
  if (s < 1 || s >= d) throw PreconditionError("mu_fiber_bound: bad subset size");
  IntMat v(d, s);
  for (int j = 0; j < s; ++j)
    v.col(j) = z.generators().col(generator_subset[static_cast<size_t>(j)]);
  if (rank(v) != s) throw PreconditionError("mu_fiber_bound: selected generators dependent");

  // saturated span lattice of the selected generators
  auto normal = integer_kernel_basis(IntMat(v.transpose()));
  IntMat nm(static_cast<int>(normal.size()), d);
  for (size_t i = 0; i < normal.size(); ++i) nm.row(static_cast<int>(i)) = normal[i].transpose();
  auto span_basis = integer_kernel_basis(nm);
  IntMat lb(d, s);
  for (int j = 0; j < s; ++j) lb.col(j) = span_basis[static_cast<size_t>(j)];

  auto ext = extend_lattice_basis(lb);
  IntMat pg = ext.projection * z.generators();
  Zonotope proj = Zonotope::from_columns(pg);
  Rat mu_proj = (proj.dim() <= 3) ? covering_radius(proj).mu : mu_projection_bound(proj);

  auto rows = independent_columns(IntMat(lb.transpose()), s);
  RatMat sq(s, s);
  for (int r = 0; r < s; ++r)
    for (int c = 0; c < s; ++c) sq(r, c) = Rat(lb(rows[static_cast<size_t>(r)], c));
  IntMat sub(s, s);
  for (int j = 0; j < s; ++j) {
    RatVec rhs(s);
    for (int r = 0; r < s; ++r) rhs(r) = Rat(v(rows[static_cast<size_t>(r)], j));
    auto sol = solve_square(sq, rhs);
    if (!sol) throw PreconditionError("mu_fiber_bound: span solve failed");
    for (int r = 0; r < s; ++r) {
      if ((*sol)(r).get_den() != 1)
        throw PreconditionError("mu_fiber_bound: non-integer span coordinates");
      sub(r, j) = (*sol)(r).get_num();
    }
  }
  Zonotope subz = Zonotope::from_columns(sub);
  Rat mu_sub = (subz.dim() <= 3) ? covering_radius(subz).mu : mu_projection_bound(subz);
  return std::max(mu_proj, mu_sub);
}

bool certify_mu_upper(const Zonotope& z, const Rat& mu_star) {
  return certify_mu_upper(zonotope_to_halfspaces(z), mu_star);
}

}  // namespace zonorun
