#pragma once

// Enumeration harness: velocity sweeps with JSONL output, sharding and
// resume, the two-dimensional classification regression, and the
// three-dimensional width/volume spot-checks.

#include <functional>
#include <string>
#include <vector>

#include "zonorun/lrz.hpp"
#include "zonorun/projection.hpp"

namespace zonorun {

struct SweepOptions {
  std::string mode;  // "lrc" | "slrc4"
  int runners = 3;   // lrc only
  long sum_bound = 30;
  int shard_index = 0;
  int shard_count = 1;
  std::string out_path;  // JSONL file
  bool resume = false;
  int threads = 0;  // 0: ZONORUN_THREADS or hardware
  bool full = false;
};

struct SweepSummary {
  long instances = 0;
  long tight = 0;
  long eliminated_by_filter = 0;
  bool all_hold = true;
  std::vector<std::string> tight_instances;
  std::vector<std::string> violations;
};

// All nondecreasing coprime tuples (v_1 <= ... <= v_n), sum bounded, in
// lexicographic order.
void for_each_lrc_instance(int n, long sum_bound,
                           const std::function<void(const VelocityVector&)>& fn);
// Distinct coprime quadruples in the same order.
void for_each_slrc4_instance(long sum_bound,
                             const std::function<void(const VelocityVector&)>& fn);

SweepSummary sweep_lrc(const SweepOptions& opt);
SweepSummary sweep_slrc4(const SweepOptions& opt);

struct ClassifiedEntry {
  std::string description;
  IntMat generators;
  Rat mu;
  Int width;
  int family = 0;  // 1..4; 0 = covering radius at most 1/2
};

struct ClassifyDim2Report {
  std::vector<ClassifiedEntry> entries;
  bool closed = false;            // every mu > 1/2 entry matched exactly one family
  bool reductions_verified = false;  // parallelogram class reductions held
  bool pluecker_verified = false;    // only (1,1,1,1,1,2) survives the relation
  std::vector<std::string> notes;
};

ClassifyDim2Report classify_dim2(long area_bound = 8, long family_k_bound = 8);

struct SpotcheckEntry {
  std::string instance;
  Rat mu;
  Int width;
  Int vol;
  bool relevant = false;   // mu >= 3/5
  bool exception = false;  // parallelepiped projecting onto the area-5 parallelogram
  bool ok = true;          // within the width/volume caps when relevant
};

struct SpotcheckReport {
  std::vector<SpotcheckEntry> entries;
  long relevant = 0;
  bool all_ok = true;
};

SpotcheckReport spotcheck_dim3(const std::vector<Zonotope>& corpus);
std::vector<Zonotope> default_dim3_corpus(long slrz_sum_bound = 26, int random_count = 60,
                                          unsigned seed = 7);

bool is_parallelepiped_over_p25(const Zonotope& z);

}  // namespace zonorun
