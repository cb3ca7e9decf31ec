#include "zonorun/survey.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "zonorun/covering.hpp"
#include "zonorun/textio.hpp"

namespace zonorun {

namespace {

using ordered_json = nlohmann::ordered_json;

int thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ZONORUN_THREADS")) {
    int t = std::atoi(env);
    if (t > 0) return t;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// Rewrites the file to its complete, valid JSONL prefix (the checkpoint is
// the last complete line) and returns how many records are present.
long truncate_to_complete_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) return 0;
  std::vector<std::string> keep;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (ordered_json::accept(line)) keep.push_back(line);
  }
  in.close();
  std::ofstream out(path, std::ios::trunc);
  for (const auto& l : keep) out << l << "\n";
  return static_cast<long>(keep.size());
}

// Ordered parallel map: applies fn to every instance, emits results in
// stream order through sink.
void ordered_parallel(const std::vector<VelocityVector>& items, int threads,
                      const std::function<std::string(const VelocityVector&)>& fn,
                      const std::function<void(const std::string&)>& sink) {
  if (items.empty()) return;
  std::atomic<size_t> next_task{0};
  std::map<size_t, std::string> done;
  std::mutex m;
  std::condition_variable cv;
  auto worker = [&]() {
    while (true) {
      size_t t = next_task.fetch_add(1);
      if (t >= items.size()) return;
      std::string line = fn(items[t]);
      {
        std::lock_guard<std::mutex> lock(m);
        done[t] = std::move(line);
      }
      cv.notify_one();
    }
  };
  std::vector<std::thread> pool;
  int n = std::max(1, threads);
  for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  size_t emit = 0;
  {
    std::unique_lock<std::mutex> lock(m);
    while (emit < items.size()) {
      cv.wait(lock, [&] { return done.count(emit) > 0; });
      while (done.count(emit)) {
        sink(done.at(emit));
        done.erase(emit);
        ++emit;
      }
    }
  }
  for (auto& th : pool) th.join();
}

std::vector<long> json_velocities(const VelocityVector& v) {
  std::vector<long> out;
  for (const Int& x : v.entries()) out.push_back(x.get_si());
  return out;
}

}  // namespace

void for_each_lrc_instance(int n, long sum_bound,
                           const std::function<void(const VelocityVector&)>& fn) {
  std::vector<long> cur(static_cast<size_t>(n));
  std::function<void(int, long, long)> rec = [&](int pos, long min_v, long left) {
    if (pos == n) {
      std::vector<Int> v(cur.begin(), cur.end());
      VelocityVector vel = VelocityVector::from(std::move(v));
      if (vel.coprime()) fn(vel);
      return;
    }
    for (long x = min_v; x * (n - pos) <= left; ++x) {
      cur[static_cast<size_t>(pos)] = x;
      rec(pos + 1, x, left - x);
    }
  };
  rec(0, 1, sum_bound);
}

void for_each_slrc4_instance(long sum_bound,
                             const std::function<void(const VelocityVector&)>& fn) {
  for (long a = 1; 4 * a + 6 <= sum_bound; ++a)
    for (long b = a + 1; a + 3 * b + 3 <= sum_bound; ++b)
      for (long c = b + 1; a + b + 2 * c + 1 <= sum_bound; ++c)
        for (long d = c + 1; a + b + c + d <= sum_bound; ++d) {
          VelocityVector v = VelocityVector::from({Int(a), Int(b), Int(c), Int(d)});
          if (v.coprime()) fn(v);
        }
}

namespace {

SweepSummary run_sweep(const SweepOptions& opt, bool slrc) {
  std::vector<VelocityVector> shard_items;
  long index = 0;
  auto take = [&](const VelocityVector& v) {
    if (index % opt.shard_count == opt.shard_index) shard_items.push_back(v);
    ++index;
  };
  if (slrc)
    for_each_slrc4_instance(opt.sum_bound, take);
  else
    for_each_lrc_instance(opt.runners, opt.sum_bound, take);

  long skip = 0;
  if (opt.resume && !opt.out_path.empty()) skip = truncate_to_complete_lines(opt.out_path);
  if (skip > static_cast<long>(shard_items.size())) skip = static_cast<long>(shard_items.size());
  std::vector<VelocityVector> todo(shard_items.begin() + skip, shard_items.end());

  SweepSummary sum;
  std::mutex sum_mutex;

  if (skip > 0) {
    // fold the already-complete records into the summary
    std::ifstream in(opt.out_path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      ordered_json j = ordered_json::parse(line, nullptr, false);
      if (j.is_discarded()) continue;
      std::string vstr;
      for (const auto& x : j["v"]) {
        if (!vstr.empty()) vstr += ",";
        vstr += std::to_string(x.get<long>());
      }
      if (j.value("tight", false)) {
        ++sum.tight;
        sum.tight_instances.push_back(vstr);
      }
      if (!j.value("holds", false)) {
        sum.all_hold = false;
        sum.violations.push_back(vstr);
      }
      std::string cert = j.value("cert", "");
      if (cert.find("filter:allbut") != std::string::npos) ++sum.eliminated_by_filter;
    }
  }

  std::ofstream out;
  if (!opt.out_path.empty()) {
    out.open(opt.out_path, opt.resume ? std::ios::app : std::ios::trunc);
    if (!out) throw ResourceError("sweep: cannot open output file " + opt.out_path);
  }

  auto compute = [&](const VelocityVector& v) -> std::string {
    auto t0 = std::chrono::steady_clock::now();
    ordered_json rec;
    rec["mode"] = slrc ? "slrc4" : "lrc";
    rec["v"] = json_velocities(v);
    bool holds = false, tight = false;
    std::string cert;
    try {
    if (slrc) {
      ReductionTag tag = gcd_reduction_filter(v);
      CoveringCertificate cr = covering_radius(build_zonotope(v));
      Rat thr = make_rat(v.runners() - 1, v.runners() + 1);
      rec["mu"] = to_string(cr.mu);
      holds = cr.mu <= thr;
      tight = cr.mu == thr;
      cert = cr.to_text() + "; filter:" + tag.to_string();
      if (tag.rule != ReductionTag::Rule::None) {
        std::lock_guard<std::mutex> lock(sum_mutex);
        ++sum.eliminated_by_filter;
      }
    } else {
      LrcVerdict r = check_lrc_kinematic(v);
      rec["gap"] = to_string(r.max_gap);
      holds = r.holds;
      tight = r.max_gap == make_rat(1, v.runners() + 1);
      cert = "t=" + to_string(r.witness_time);
    }
    } catch (const std::exception& err) {
      // resource failures are recorded per instance, never skipped
      holds = false;
      tight = false;
      cert = std::string("error: ") + err.what();
    }
    rec["holds"] = holds;
    rec["tight"] = tight;
    rec["cert"] = cert;
    rec["ms"] = static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                      std::chrono::steady_clock::now() - t0)
                                      .count());
    {
      std::lock_guard<std::mutex> lock(sum_mutex);
      ++sum.instances;
      if (tight) {
        ++sum.tight;
        sum.tight_instances.push_back(v.to_string());
      }
      if (!holds) {
        sum.all_hold = false;
        sum.violations.push_back(v.to_string());
      }
    }
    return rec.dump();
  };

  auto sink = [&](const std::string& line) {
    if (out.is_open()) {
      out << line << "\n";
      out.flush();
    }
  };
  ordered_parallel(todo, thread_count(opt.threads), compute, sink);
  sum.instances = static_cast<long>(shard_items.size());
  return sum;
}

}  // namespace

SweepSummary sweep_lrc(const SweepOptions& opt) { return run_sweep(opt, false); }

SweepSummary sweep_slrc4(const SweepOptions& opt) {
  SweepOptions o = opt;
  if (o.full) o.sum_bound = 195;
  return run_sweep(o, true);
}

namespace {

Zonotope zono_rows(std::initializer_list<std::initializer_list<long>> gen_rows,
                   GeneratorPolicy policy = GeneratorPolicy::KeepAll) {
  IntMat byrow(static_cast<Eigen::Index>(gen_rows.size()),
               static_cast<Eigen::Index>(gen_rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : gen_rows) {
    Eigen::Index j = 0;
    for (long x : r) byrow(i, j++) = x;
    ++i;
  }
  return Zonotope::from_columns(IntMat(byrow.transpose()), policy);
}

Zonotope parallelogram_pq(long p, long q) { return zono_rows({{1, 0}, {p, q}}); }

Zonotope family1_rep(long k) { return zono_rows({{1, 0}, {0, k}}); }
Zonotope family3_rep(long k) { return zono_rows({{1, 0}, {0, 1}, {k, 1}}); }

bool same_class(const Zonotope& a, const Zonotope& b) {
  return canonical_generator_matrix(a) == canonical_generator_matrix(b);
}

}  // namespace

ClassifyDim2Report classify_dim2(long area_bound, long family_k_bound) {
  ClassifyDim2Report rep;

  auto classify_entry = [&](const std::string& desc, const Zonotope& z) {
    ClassifiedEntry e;
    e.description = desc;
    e.generators = z.generators();
    e.mu = covering_radius(z).mu;
    e.width = lattice_width(z).width;
    e.family = 0;
    if (e.mu > make_rat(1, 2)) {
      int matches = 0;
      Int area = volume(z);
      if (z.count() == 2 && same_class(z, family1_rep(area.get_si()))) {
        e.family = 1;
        ++matches;
      }
      if (z.count() == 2 && area >= 2 && same_class(z, parallelogram_pq(1, area.get_si()))) {
        e.family = 2;
        ++matches;
      }
      if (z.count() == 3) {
        auto vvec = volume_vector(z);
        std::multiset<Int> ms(vvec.entries.begin(), vvec.entries.end());
        for (long k = 1; k <= family_k_bound; ++k) {
          if (ms == std::multiset<Int>{Int(1), Int(1), Int(k)} &&
              same_class(z, family3_rep(k))) {
            e.family = 3;
            ++matches;
            break;
          }
        }
      }
      if (z.count() == 2 && same_class(z, parallelogram_pq(2, 5))) {
        e.family = 4;
        ++matches;
      }
      if (matches != 1) rep.closed = false;
    }
    rep.entries.push_back(std::move(e));
  };

  rep.closed = true;

  // parallelograms up to unimodular equivalence: column-style normal forms
  // (a, 0), (p, q) with 0 <= p < q, deduplicated by canonical form
  {
    std::set<std::vector<Int>> seen;
    for (long a = 1; a <= area_bound; ++a) {
      for (long q = 1; a * q <= area_bound; ++q) {
        for (long p = 0; p < std::max(1L, q); ++p) {
          Zonotope z = zono_rows({{a, 0}, {p, q}});
          IntMat canon = canonical_generator_matrix(z);
          std::vector<Int> key(canon.data(), canon.data() + canon.size());
          if (!seen.insert(key).second) continue;
          std::ostringstream desc;
          desc << "parallelogram (" << a << ",0),(" << p << "," << q << ")";
          classify_entry(desc.str(), z);
        }
      }
    }
  }

  // class reductions p ~ -p, p ~ p^{-1} (mod q) on primitive parallelograms
  rep.reductions_verified = true;
  for (long q = 2; q <= area_bound; ++q) {
    for (long p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      long pm = ((q - p) % q + q) % q;
      long pinv = 0;
      for (long t = 1; t < q; ++t)
        if ((p * t) % q == 1) {
          pinv = t;
          break;
        }
      if (!same_class(parallelogram_pq(p, q), parallelogram_pq(pm, q))) rep.reductions_verified = false;
      if (pinv && !same_class(parallelogram_pq(p, q), parallelogram_pq(pinv, q)))
        rep.reductions_verified = false;
    }
  }
  {
    // the reductions leave exactly the expected width-three classes
    bool p25 = same_class(parallelogram_pq(2, 5), parallelogram_pq(3, 5));
    bool p27 = same_class(parallelogram_pq(2, 7), parallelogram_pq(5, 7));
    bool p38 = same_class(parallelogram_pq(3, 8), parallelogram_pq(5, 8));
    if (!(p25 && p27 && p38)) rep.reductions_verified = false;
  }

  // hexagons: every class with three pairwise-independent generators and
  // area within the bound, via the normal form (p,0), (x,q), (y,z) with
  // p,q >= 1 and 0 <= x < q (volume vectors with a common factor split into
  // several classes, so enumerate classes rather than volume vectors)
  {
    std::set<std::vector<Int>> seen;
    for (long p = 1; p <= area_bound; ++p) {
      for (long q = 1; p * q + 2 <= area_bound; ++q) {
        for (long x = 0; x < q; ++x) {
          for (long z = -area_bound; z <= area_bound; ++z) {
            if (z == 0) continue;
            long used = p * q + p * std::abs(z);
            if (used + 1 > area_bound) continue;
            long r = area_bound - used;
            for (long qy = x * z - r; qy <= x * z + r; ++qy) {
              if (qy % q != 0) continue;
              long y = qy / q;
              long d23 = std::abs(x * z - q * y);
              if (d23 == 0) continue;
              Zonotope z3 = zono_rows({{p, 0}, {x, q}, {y, z}});
              IntMat canon = canonical_generator_matrix(z3);
              std::vector<Int> key(canon.data(), canon.data() + canon.size());
              if (!seen.insert(key).second) continue;
              auto vvec = volume_vector(z3);
              std::vector<Int> sorted_v = vvec.entries;
              std::sort(sorted_v.begin(), sorted_v.end());
              std::ostringstream desc;
              desc << "hexagon volume vector (" << sorted_v[0] << "," << sorted_v[1] << ","
                   << sorted_v[2] << ")";
              classify_entry(desc.str(), z3);
            }
          }
        }
      }
    }
  }

  // four pairwise independent generators: the six pairwise minors sum to the
  // area, and the multiset must admit a signed alternating relation
  rep.pluecker_verified = true;
  {
    std::vector<std::array<Int, 6>> tuples;
    std::array<long, 6> t{};
    std::function<void(int, long, long)> rec = [&](int pos, long min_v, long left) {
      if (pos == 6) {
        tuples.push_back({Int(t[0]), Int(t[1]), Int(t[2]), Int(t[3]), Int(t[4]), Int(t[5])});
        return;
      }
      for (long x = min_v; x * (6 - pos) <= left; ++x) {
        t[static_cast<size_t>(pos)] = x;
        rec(pos + 1, x, left - x);
      }
    };
    rec(0, 1, area_bound);
    int signable = 0;
    for (const auto& tu : tuples) {
      if (plucker_signable(tu)) {
        ++signable;
        std::multiset<Int> ms(tu.begin(), tu.end());
        if (ms != std::multiset<Int>{Int(1), Int(1), Int(1), Int(1), Int(1), Int(2)})
          rep.pluecker_verified = false;
      }
    }
    if (signable != 1) rep.pluecker_verified = false;
    Zonotope octagon = zono_rows({{1, 0}, {0, 1}, {1, 1}, {1, -1}});
    classify_entry("octagon minors (1,1,1,1,1,2)", octagon);
    rep.notes.push_back("five or more pairwise independent generators force area >= 10");
  }

  // reference members of the infinite families, verified against the
  // closed-form covering radii
  for (long k = 1; k <= family_k_bound; ++k) {
    classify_entry("width-one parallelogram k=" + std::to_string(k), family1_rep(k));
    if (k >= 2)
      classify_entry("diagonal parallelogram (1," + std::to_string(k) + ")",
                     parallelogram_pq(1, k));
    classify_entry("hexagon (1,1," + std::to_string(k) + ")", family3_rep(k));
  }

  return rep;
}

bool is_parallelepiped_over_p25(const Zonotope& z) {
  if (z.dim() != 3) return false;
  // group generators by direction
  std::vector<IntVec> dirs;
  for (int i = 0; i < z.count(); ++i) {
    IntVec p = primitive_part(z.generator(i));
    bool found = false;
    for (const IntVec& d : dirs)
      if (d == p) {
        found = true;
        break;
      }
    if (!found) dirs.push_back(p);
  }
  if (dirs.size() != 3) return false;
  Zonotope p25 = parallelogram_pq(2, 5);
  for (const IntVec& d : dirs) {
    auto proj = projection_along(d);
    IntMat img = proj.matrix * z.generators();
    try {
      Zonotope zi = Zonotope::from_columns(img, GeneratorPolicy::MergePairs);
      if (zi.count() <= 2 && volume(zi) == 5 && same_class(zi, p25)) return true;
    } catch (const PreconditionError&) {
      continue;  // projected generators degenerate
    }
  }
  return false;
}

SpotcheckReport spotcheck_dim3(const std::vector<Zonotope>& corpus) {
  SpotcheckReport rep;
  Rat threshold = make_rat(3, 5);
  for (const Zonotope& z : corpus) {
    if (z.dim() != 3) throw PreconditionError("spotcheck_dim3: corpus member is not 3-dimensional");
    SpotcheckEntry e;
    std::ostringstream desc;
    write_zonotope(desc, z);
    e.instance = desc.str();
    e.mu = covering_radius(z).mu;
    e.vol = volume(z);
    e.width = 0;
    if (e.mu >= threshold) {
      e.relevant = true;
      e.width = lattice_width(z).width;
      ++rep.relevant;
      e.exception = is_parallelepiped_over_p25(z);
      long w = e.width.get_si();
      if (w > 6) e.ok = false;
      if (w == 3 && !(e.vol <= 120 || e.exception)) e.ok = false;
      if (w == 4 && e.vol > 195) e.ok = false;
      if (w == 5 && e.vol > 125) e.ok = false;
      if (w == 6 && e.vol > 98) e.ok = false;
      if (w == 3 && is_slrz(z) && !e.exception && e.vol > 80) e.ok = false;
      if (!e.ok) rep.all_ok = false;
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

std::vector<Zonotope> default_dim3_corpus(long slrz_sum_bound, int random_count, unsigned seed) {
  std::vector<Zonotope> corpus;
  for_each_slrc4_instance(slrz_sum_bound,
                          [&](const VelocityVector& v) { corpus.push_back(build_zonotope(v)); });
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-2, 2);
  int made = 0;
  while (made < random_count) {
    int n = 3 + static_cast<int>(rng() % 3);
    IntMat g(3, n);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = entry(rng);
    try {
      corpus.push_back(Zonotope::from_columns(g));
      ++made;
    } catch (const PreconditionError&) {
    }
  }
  // parallelepipeds projecting onto the area-5 parallelogram, with long
  // third generators: the exception family of the width-three case
  corpus.push_back(zono_rows({{1, 0, 0}, {2, 5, 0}, {0, 0, 30}}));
  corpus.push_back(zono_rows({{1, 0, 1}, {2, 5, -1}, {0, 0, 25}}));
  return corpus;
}

}  // namespace zonorun
