#include "zonorun/cli.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "zonorun/covering.hpp"
#include "zonorun/survey.hpp"
#include "zonorun/textio.hpp"

namespace zonorun {

namespace {

using ordered_json = nlohmann::ordered_json;

Zonotope zonotope_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open zonotope file " + path);
  return read_zonotope(in, GeneratorPolicy::KeepAll);
}

Zonotope zonotope_from_rows(const std::string& rows) {
  std::vector<std::vector<Int>> parsed;
  std::istringstream in(rows);
  std::string part;
  while (std::getline(in, part, ';')) parsed.push_back(parse_int_list(part));
  if (parsed.empty()) throw PreconditionError("no generators given");
  IntMat g(static_cast<int>(parsed[0].size()), static_cast<int>(parsed.size()));
  for (size_t j = 0; j < parsed.size(); ++j) {
    if (parsed[j].size() != parsed[0].size())
      throw PreconditionError("generators of mixed dimension");
    for (size_t i = 0; i < parsed[j].size(); ++i)
      g(static_cast<int>(i), static_cast<int>(j)) = parsed[j][i];
  }
  return Zonotope::from_columns(g, GeneratorPolicy::KeepAll);
}

void parse_shard(const std::string& s, SweepOptions& opt) {
  auto slash = s.find('/');
  if (slash == std::string::npos) throw PreconditionError("--shard expects i/k");
  opt.shard_index = std::stoi(s.substr(0, slash));
  opt.shard_count = std::stoi(s.substr(slash + 1));
  if (opt.shard_count < 1 || opt.shard_index < 0 || opt.shard_index >= opt.shard_count)
    throw PreconditionError("--shard needs 0 <= i < k");
}

template <typename Scalar>
int report_lvp(const LvpResult<Scalar>& r, bool json_out) {
  if (json_out) {
    std::cout << ordered_json{{"lvp", r.has_lvp}, {"classes", r.parallel_classes.size()}}.dump()
              << "\n";
  } else if (r.has_lvp) {
    std::cout << "LVP: yes, lonely vector " << to_string(r.lonely->vec.x) << ","
              << to_string(r.lonely->vec.y) << "\n";
  } else {
    std::cout << "LVP: no, " << r.parallel_classes.size() << " parallel classes\n";
  }
  return 0;
}

}  // namespace

int cli_dispatch(int argc, char** argv) {
  CLI::App app{"exact lattice-zonotope computations around the lonely runner problem"};
  app.require_subcommand(1);
  bool json_out = false;
  app.add_flag("--json", json_out, "machine-readable output");

  auto* lrc = app.add_subcommand("check-lrc", "exact sup-min gap of a velocity vector");
  std::string lrc_v;
  bool lrc_geometric = false;
  lrc->add_option("velocities", lrc_v, "comma-separated positive integers")->required();
  lrc->add_flag("--geometric", lrc_geometric, "also run the lattice-point test");

  auto* slrc = app.add_subcommand("check-slrc", "covering-radius test for distinct velocities");
  std::string slrc_v;
  slrc->add_option("velocities", slrc_v)->required();

  auto* cov = app.add_subcommand("covrad", "exact covering radius (dimensions 1..3)");
  std::string cov_par, cov_hex, cov_vel, cov_file, cov_gens;
  bool cov_octagon = false;
  cov->add_option("--parallelogram", cov_par, "p,q for (1,0),(p,q)");
  cov->add_option("--hexagon", cov_hex, "volume vector a,b,c");
  cov->add_option("--velocity", cov_vel, "velocity vector");
  cov->add_option("--file", cov_file, "zonotope text file");
  cov->add_option("--generators", cov_gens, "a,b;c,d;... generator rows");
  cov->add_flag("--octagon", cov_octagon, "the (1,0),(0,1),(1,1),(1,-1) octagon");

  auto* lvp_cmd = app.add_subcommand("lvp", "lonely vector property");
  lvp_cmd->require_subcommand(1);
  auto* lvp_check = lvp_cmd->add_subcommand("check", "decide the property for a family");
  std::string lvp_vecs;
  bool lvp_sqrt2 = false;
  lvp_check->add_option("vectors", lvp_vecs, "a,b;c,d;... (rationals p/q; with --sqrt2, r:s)")
      ->required();
  lvp_check->add_flag("--sqrt2", lvp_sqrt2, "coordinates in Q(sqrt2), written r:s");
  auto* lvp_search = lvp_cmd->add_subcommand("search", "randomized counterexample search");
  int lvp_n = 5;
  long lvp_trials = 1000;
  unsigned lvp_seed = 1;
  int lvp_height = 6;
  lvp_search->add_option("--n", lvp_n, "family size");
  lvp_search->add_option("--trials", lvp_trials);
  lvp_search->add_option("--seed", lvp_seed);
  lvp_search->add_option("--height", lvp_height, "entry bound");

  auto* cos = app.add_subcommand("cosimple", "cosimplicity verdict with witness");
  std::string cos_file, cos_gens;
  cos->add_option("--file", cos_file);
  cos->add_option("--generators", cos_gens, "a,b;c,d;... generator rows");

  auto* zono = app.add_subcommand("zonotope", "zonotope utilities");
  zono->require_subcommand(1);
  auto* zinfo = zono->add_subcommand("info", "volume, points, width, cosimplicity");
  std::string zi_file, zi_vel, zi_gens;
  zinfo->add_option("--file", zi_file);
  zinfo->add_option("--velocity", zi_vel);
  zinfo->add_option("--generators", zi_gens);

  auto* sweep = app.add_subcommand("sweep", "exhaustive instance sweeps with JSONL output");
  SweepOptions sopt;
  std::string shard_spec;
  sweep->add_option("--mode", sopt.mode, "lrc | slrc4")->required();
  sweep->add_option("--n", sopt.runners, "runners (lrc mode)");
  sweep->add_option("--sum", sopt.sum_bound, "velocity sum bound");
  sweep->add_option("--out", sopt.out_path, "JSONL output path")->required();
  sweep->add_option("--shard", shard_spec, "i/k: every k-th instance starting at i");
  sweep->add_flag("--resume", sopt.resume, "continue after the last complete record");
  sweep->add_option("--threads", sopt.threads, "worker threads (default: ZONORUN_THREADS)");
  sweep->add_flag("--full", sopt.full, "slrc4: the full sum <= 195 run");

  auto* cls = app.add_subcommand("classify-dim2", "two-dimensional classification regression");

  auto* spot = app.add_subcommand("spotcheck-dim3", "width/volume caps on a 3D corpus");
  long spot_sum = 26;
  int spot_random = 60;
  std::string spot_corpus;
  spot->add_option("--sum", spot_sum, "velocity sum bound for the swept part");
  spot->add_option("--random", spot_random, "number of random corpus members");
  spot->add_option("--corpus", spot_corpus, "file with concatenated zonotopes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*lrc) {
      VelocityVector v = VelocityVector::parse(lrc_v);
      LrcVerdict r = check_lrc_kinematic(v);
      ordered_json j{{"v", lrc_v},
                     {"gap", to_string(r.max_gap)},
                     {"witness_time", to_string(r.witness_time)},
                     {"holds", r.holds}};
      if (lrc_geometric) {
        GeometricCheck g = check_lrc_geometric(v);
        j["geometric_holds"] = g.holds;
        if (g.holds != r.holds)
          throw PreconditionError("kinematic and geometric checks disagree");
      }
      if (json_out)
        std::cout << j.dump() << "\n";
      else
        std::cout << "gap = " << to_string(r.max_gap) << " at t = " << to_string(r.witness_time)
                  << (r.holds ? ", holds" : ", VIOLATION") << "\n";
      return r.holds ? 0 : 1;
    }
    if (*slrc) {
      SlrcResult r = check_slrc(VelocityVector::parse(slrc_v));
      if (json_out)
        std::cout << ordered_json{{"v", slrc_v},
                                  {"mu", to_string(r.mu)},
                                  {"holds", r.holds},
                                  {"tight", r.tight}}
                         .dump()
                  << "\n";
      else
        std::cout << "mu = " << to_string(r.mu)
                  << (r.holds ? (r.tight ? ", holds (tight)" : ", holds") : ", VIOLATION") << "\n";
      return r.holds ? 0 : 1;
    }
    if (*cov) {
      std::optional<Zonotope> z;
      if (!cov_par.empty()) {
        auto pq = parse_int_list(cov_par);
        if (pq.size() != 2) throw PreconditionError("--parallelogram wants p,q");
        IntMat g(2, 2);
        g << 1, pq[0], 0, pq[1];
        z = Zonotope::from_columns(g, GeneratorPolicy::KeepAll);
      } else if (!cov_hex.empty()) {
        auto abc = parse_int_list(cov_hex);
        if (abc.size() != 3) throw PreconditionError("--hexagon wants a,b,c");
        z = build_zonotope(VelocityVector::from({abc[0], abc[1], abc[2]}));
      } else if (!cov_vel.empty()) {
        z = build_zonotope(VelocityVector::parse(cov_vel));
      } else if (!cov_file.empty()) {
        z = zonotope_from_file(cov_file);
      } else if (!cov_gens.empty()) {
        z = zonotope_from_rows(cov_gens);
      } else if (cov_octagon) {
        IntMat g(2, 4);
        g << 1, 0, 1, 1, 0, 1, 1, -1;
        z = Zonotope::from_columns(g, GeneratorPolicy::KeepAll);
      } else {
        throw PreconditionError("covrad: choose an input form");
      }
      CoveringCertificate cert = covering_radius(*z);
      if (json_out)
        std::cout << ordered_json{{"mu", to_string(cert.mu)}, {"certificate", cert.to_text()}}
                         .dump()
                  << "\n";
      else
        std::cout << to_string(cert.mu) << "\n";
      return 0;
    }
    if (*lvp_check) {
      if (lvp_sqrt2) return report_lvp(has_lvp(parse_quad_family(lvp_vecs)), json_out);
      return report_lvp(has_lvp(parse_rat_family(lvp_vecs)), json_out);
    }
    if (*lvp_search) {
      std::mt19937_64 rng(lvp_seed);
      std::uniform_int_distribution<int> c(-lvp_height, lvp_height);
      long failures = 0, tested = 0;
      for (long t = 0; t < lvp_trials; ++t) {
        std::vector<PlanarVec<Rat>> vecs;
        for (int i = 0; i < lvp_n; ++i) vecs.push_back({Rat(c(rng)), Rat(c(rng))});
        try {
          auto fam = RatFamily::create(vecs);
          ++tested;
          if (!has_lvp(fam).has_lvp) {
            ++failures;
            std::cout << "lonely-vector failure at:";
            for (auto& v : vecs)
              std::cout << " (" << to_string(v.x) << "," << to_string(v.y) << ")";
            std::cout << "\n";
          }
        } catch (const PreconditionError&) {
        }
      }
      std::cout << "tested " << tested << " random rational families of size " << lvp_n << ", "
                << failures << " failures\n";
      return 0;
    }
    if (*cos) {
      if (cos_file.empty() && cos_gens.empty())
        throw PreconditionError("cosimple: choose --file or --generators");
      Zonotope z = !cos_file.empty() ? zonotope_from_file(cos_file) : zonotope_from_rows(cos_gens);
      CosimplicityWitness w = is_cosimple(z);
      if (json_out) {
        ordered_json j{{"cosimple", w.cosimple}};
        if (w.dependence) {
          std::vector<std::string> dep;
          for (Eigen::Index i = 0; i < w.dependence->size(); ++i)
            dep.push_back((*w.dependence)(i).get_str());
          j["dependence"] = dep;
        }
        if (w.obstruction) j["obstruction_case"] = w.obstruction->case_tag;
        std::cout << j.dump() << "\n";
      } else if (w.cosimple) {
        std::cout << "cosimple";
        if (w.dependence) {
          std::cout << ", dependence";
          for (Eigen::Index i = 0; i < w.dependence->size(); ++i)
            std::cout << " " << (*w.dependence)(i).get_str();
        } else if (w.witness_search_exhausted) {
          std::cout << " (witness search exhausted)";
        }
        std::cout << "\n";
      } else {
        std::cout << "not cosimple: hyperplane obstruction, case " << w.obstruction->case_tag
                  << "\n";
      }
      return 0;
    }
    if (*zinfo) {
      if (zi_file.empty() && zi_vel.empty() && zi_gens.empty())
        throw PreconditionError("zonotope info: choose an input form");
      Zonotope z = !zi_file.empty()
                       ? zonotope_from_file(zi_file)
                       : (!zi_vel.empty() ? build_zonotope(VelocityVector::parse(zi_vel))
                                          : zonotope_from_rows(zi_gens));
      ordered_json j;
      j["dim"] = z.dim();
      j["generators"] = z.count();
      j["volume"] = volume(z).get_str();
      j["width"] = lattice_width(z).width.get_str();
      if (z.count() == z.dim() + 1) {
        auto vv = volume_vector(z);
        std::vector<std::string> entries;
        for (const Int& e : vv.entries) entries.push_back(e.get_str());
        j["volume_vector"] = entries;
      }
      try {
        j["lattice_points"] = lattice_point_count_formula(z).get_str();
      } catch (const ResourceError&) {
      }
      j["cosimple"] = is_cosimple(z).cosimple;
      if (z.dim() <= 3) j["mu"] = to_string(covering_radius(z).mu);
      if (json_out) {
        std::cout << j.dump() << "\n";
      } else {
        for (auto& [k, v] : j.items())
          std::cout << k << " = " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
      return 0;
    }
    if (*sweep) {
      if (!shard_spec.empty()) parse_shard(shard_spec, sopt);
      if (sopt.mode != "lrc" && sopt.mode != "slrc4")
        throw PreconditionError("--mode must be lrc or slrc4");
      if (sopt.mode == "slrc4" && sopt.full) {
        long cnt = 0;
        for_each_slrc4_instance(195, [&](const VelocityVector&) { ++cnt; });
        std::cerr << "full sweep: " << cnt
                  << " instances; expect days of CPU time at desk scale\n";
      }
      SweepSummary s = sopt.mode == "lrc" ? sweep_lrc(sopt) : sweep_slrc4(sopt);
      std::cout << ordered_json{{"instances", s.instances},
                                {"tight", s.tight},
                                {"eliminated_by_filter", s.eliminated_by_filter},
                                {"all_hold", s.all_hold}}
                       .dump()
                << "\n";
      return s.all_hold ? 0 : 1;
    }
    if (*cls) {
      ClassifyDim2Report rep = classify_dim2();
      long in_family = 0, excluded = 0;
      for (const auto& e : rep.entries) (e.family > 0 ? in_family : excluded)++;
      std::cout << ordered_json{{"entries", rep.entries.size()},
                                {"in_families", in_family},
                                {"excluded", excluded},
                                {"closed", rep.closed},
                                {"reductions_verified", rep.reductions_verified},
                                {"pluecker_verified", rep.pluecker_verified}}
                       .dump()
                << "\n";
      bool ok = rep.closed && rep.reductions_verified && rep.pluecker_verified;
      return ok ? 0 : 1;
    }
    if (*spot) {
      std::vector<Zonotope> corpus;
      if (!spot_corpus.empty()) {
        std::ifstream in(spot_corpus);
        if (!in) throw PreconditionError("cannot open corpus file");
        in >> std::ws;
        while (in.peek() != EOF) {
          corpus.push_back(read_zonotope(in, GeneratorPolicy::KeepAll));
          in >> std::ws;
        }
      } else {
        corpus = default_dim3_corpus(spot_sum, spot_random);
      }
      SpotcheckReport rep = spotcheck_dim3(corpus);
      std::cout << ordered_json{{"corpus", rep.entries.size()},
                                {"relevant", rep.relevant},
                                {"all_ok", rep.all_ok}}
                       .dump()
                << "\n";
      return rep.all_ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace zonorun
