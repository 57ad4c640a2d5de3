#include <algorithm>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include <mdet/mdet.hpp>

namespace {

using namespace mdet;

// fixed exit-code map, every path
constexpr int kExitPass = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitViolation = 3;
constexpr int kExitDisagreement = 4;

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

EngineSet parse_engines(const std::string& csv) {
  EngineSet set;
  for (const auto& name : split_csv(csv)) {
    auto e = engine_from_name(name);
    if (!e)
      throw std::invalid_argument("unknown engine \"" + name +
                                  "\" (bareiss|modular_crt|structural)");
    set.insert(*e);
  }
  if (set.empty()) throw std::invalid_argument("engine list must not be empty");
  return set;
}

int default_jobs() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

struct OutputTarget {
  std::ofstream file;
  std::ostream* os = &std::cout;

  explicit OutputTarget(const std::string& path) {
    if (path.empty()) return;
    file.open(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open for writing: " + path);
    os = &file;
  }

  void finish(const std::string& path) {
    os->flush();
    if (!*os) throw std::runtime_error("write failed" + (path.empty() ? "" : ": " + path));
  }
};

// ---- det ----

Int run_engine(Engine e, const SparseColMatrix& m, const CrtMode& mode) {
  switch (e) {
    case Engine::laplace: return det_laplace(to_dense(m)).value;
    case Engine::bareiss: return det_bareiss(to_dense(m)).value;
    case Engine::modular_crt: return det_crt(m, mode).value;
    case Engine::structural: return det_structural(m).value;
  }
  throw std::invalid_argument("unknown engine");
}

// ---- verify / campaign ----

struct CampaignCli {
  i64 min_d = 1;
  i64 max_d = 0;
  std::string engines_csv;
  std::string mode_str;  // empty = derived from the engine set
  int k = 5;
  int jobs = 0;  // 0 = hardware concurrency
  u64 seed = 0;
  std::string checkpoint;
  std::string report_path;
  std::string bfile_path;
  bool timings = false;
  bool json_out = false;
};

CampaignConfig make_config(const CampaignCli& cli) {
  CampaignConfig cfg;
  cfg.d_min = cli.min_d;
  cfg.d_max = cli.max_d;
  cfg.engines = parse_engines(cli.engines_csv);
  const bool has_certifier =
      cfg.engines.has(Engine::bareiss) || cfg.engines.has(Engine::modular_crt);
  if (cli.mode_str.empty())
    // certified whenever a certifying engine is present; a structural-only
    // sweep cannot claim certified results
    cfg.mode = has_certifier ? CrtMode::certified() : CrtMode::probabilistic(cli.k, 0);
  else if (cli.mode_str == "certified")
    cfg.mode = CrtMode::certified();
  else if (cli.mode_str == "probabilistic")
    cfg.mode = CrtMode::probabilistic(cli.k, 0);
  else
    throw std::invalid_argument("unknown mode \"" + cli.mode_str +
                                "\" (certified|probabilistic)");
  cfg.jobs = cli.jobs > 0 ? cli.jobs : default_jobs();
  cfg.seed = cli.seed;
  cfg.checkpoint_path = cli.checkpoint;
  cfg.timings = cli.timings;
  return cfg;
}

void print_records(const CampaignReport& report) {
  std::string buf;
  buf.reserve(1 << 20);
  for (const auto& rec : report.records) {
    buf += "d=";
    buf += std::to_string(rec.d);
    buf += " det=";
    buf += rec.det.str();
    buf += " expected=";
    buf += std::to_string(rec.expected);
    buf += rec.pass ? " ok" : " FAIL";
    if (report.config.timings) {
      char t[32];
      std::snprintf(t, sizeof(t), " (%.3fs)", rec.seconds);
      buf += t;
    }
    buf += "\n";
    if (buf.size() > (1 << 20) - 128) {
      std::fwrite(buf.data(), 1, buf.size(), stdout);
      buf.clear();
    }
  }
  std::fwrite(buf.data(), 1, buf.size(), stdout);
  std::fflush(stdout);
}

int run_campaign_cli(const CampaignCli& cli) {
  const CampaignConfig cfg = make_config(cli);
  const CampaignReport report = run_campaign(cfg);

  if (cli.json_out)
    write_report(report, std::cout);
  else
    print_records(report);

  if (!cli.report_path.empty()) write_report_file(report, cli.report_path);
  if (!cli.bfile_path.empty()) export_bfile_file(report, cli.bfile_path);

  i64 passed = 0;
  const VerifyRecord* offender = nullptr;
  for (const auto& rec : report.records) {
    if (rec.pass)
      ++passed;
    else if (!offender)
      offender = &rec;
  }
  std::ostream& human = cli.json_out ? std::cerr : std::cout;
  human << passed << "/" << report.records.size() << " pass";
  if (report.config.timings) human << " (" << report.total_seconds << "s)";
  human << "\n";
  if (offender) {
    human << "conjecture violated at d=" << offender->d << ": det=" << offender->det
          << " expected=" << offender->expected << "\n";
    return kExitViolation;
  }
  return kExitPass;
}

void add_campaign_flags(CLI::App* cmd, CampaignCli& cli, bool with_min_d) {
  if (with_min_d) cmd->add_option("--min-d", cli.min_d, "first d to verify (default 1)");
  auto* max_d = cmd->add_option("--max-d", cli.max_d, "last d to verify");
  if (cli.max_d <= 0) max_d->required();
  cmd->add_option("--engines", cli.engines_csv,
                  "comma-separated engines: bareiss,modular_crt,structural");
  cmd->add_option("--mode", cli.mode_str, "certified|probabilistic");
  cmd->add_option("--k", cli.k, "prime count in probabilistic mode (default 5)");
  cmd->add_option("--jobs", cli.jobs, "worker count (default: hardware)");
  cmd->add_option("--seed", cli.seed, "seed for probabilistic prime sampling");
  cmd->add_option("--checkpoint", cli.checkpoint, "JSON-lines checkpoint file to resume from");
  cmd->add_option("--out", cli.report_path, "write the JSON report here");
  cmd->add_option("--bfile", cli.bfile_path, "export the determinant sequence as a b-file");
  cmd->add_flag("--timings", cli.timings,
                "record wall times in the report (breaks byte-reproducibility)");
  cmd->add_flag("--json", cli.json_out, "print the JSON report to stdout instead of per-d lines");
}

// ---- bench ----

int run_bench(const std::string& ds_csv, const std::string& engines_csv, int reps, bool json_out) {
  if (reps < 1) throw std::invalid_argument("bench: repetitions must be >= 1");
  std::vector<i64> ds;
  for (const auto& tok : split_csv(ds_csv)) ds.push_back(std::stoll(tok));
  if (ds.empty()) throw std::invalid_argument("bench: --d list must not be empty");
  const EngineSet engines = parse_engines(engines_csv);

  json rows = json::array();
  if (!json_out) std::printf("%8s  %-12s  %14s  %4s\n", "d", "engine", "median_seconds", "reps");
  for (i64 d : ds) {
    const SparseColMatrix m = build_m(d);
    for (Engine e : engines.list()) {
      std::vector<double> times;
      times.reserve(static_cast<std::size_t>(reps));
      for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        volatile bool sink = run_engine(e, m, CrtMode::certified()) == 0;
        (void)sink;
        times.push_back(
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
      }
      std::sort(times.begin(), times.end());
      const double median = times[times.size() / 2];
      if (json_out) {
        json row;
        row["d"] = d;
        row["engine"] = engine_name(e);
        row["median_seconds"] = median;
        row["reps"] = reps;
        rows.push_back(std::move(row));
      } else {
        std::printf("%8lld  %-12s  %14.6f  %4d\n", static_cast<long long>(d), engine_name(e),
                    median, reps);
      }
    }
  }
  if (json_out) {
    json out;
    out["results"] = std::move(rows);
    std::cout << out.dump(2) << "\n";
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact determinant toolkit for the 2d x 2d {-1,0,1} matrix family"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "write the sparse matrix M(d) in text form");
  i64 gen_d = 0;
  std::string gen_out;
  gen->add_option("--d", gen_d, "family index d >= 1")->required();
  gen->add_option("--out", gen_out, "output path (default stdout)");

  // det
  auto* det = app.add_subcommand("det", "evaluate one determinant exactly");
  i64 det_d = 0;
  std::string det_in, det_engine = "bareiss", det_mode = "certified";
  int det_k = 5;
  u64 det_seed = 0;
  auto* det_d_opt = det->add_option("--d", det_d, "evaluate det M(d)");
  auto* det_in_opt = det->add_option("--in", det_in, "evaluate the determinant of a matrix file");
  det_d_opt->excludes(det_in_opt);
  det->add_option("--engine", det_engine, "laplace|bareiss|modular_crt|structural");
  det->add_option("--mode", det_mode, "modular_crt stop rule: certified|probabilistic");
  det->add_option("--k", det_k, "prime count in probabilistic mode");
  det->add_option("--seed", det_seed, "prime sampling seed in probabilistic mode");

  // verify
  auto* verify = app.add_subcommand("verify", "check det M(d) = (-1)^d for d = 1..max");
  CampaignCli verify_cli;
  verify_cli.engines_csv = "modular_crt,structural";
  add_campaign_flags(verify, verify_cli, /*with_min_d=*/false);

  // campaign; the defaults reproduce the d <= 200 verification with full
  // cross-checking
  auto* campaign = app.add_subcommand("campaign", "verification campaign over a d range");
  CampaignCli campaign_cli;
  campaign_cli.max_d = 200;
  campaign_cli.engines_csv = "bareiss,modular_crt,structural";
  add_campaign_flags(campaign, campaign_cli, /*with_min_d=*/true);

  // explore
  auto* explore = app.add_subcommand("explore", "export cofactor or principal-minor sequences");
  i64 exp_d = 0, exp_row = 0;
  std::string exp_what = "cofactors", exp_out;
  explore->add_option("--d", exp_d, "family index d >= 1")->required();
  explore->add_option("--row", exp_row, "row to expand along (default 2d)");
  explore->add_option("--what", exp_what, "cofactors|minors");
  explore->add_option("--out", exp_out, "output path (default stdout)");

  // bench
  auto* bench = app.add_subcommand("bench", "time engines on a list of d values");
  std::string bench_ds, bench_engines = "bareiss,modular_crt,structural";
  int bench_reps = 3;
  bool bench_json = false;
  bench->add_option("--d", bench_ds, "comma-separated d values")->required();
  bench->add_option("--engines", bench_engines, "comma-separated engines");
  bench->add_option("--reps", bench_reps, "repetitions per cell (default 3)");
  bench->add_flag("--json", bench_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen) {
      const SparseColMatrix m = build_m(gen_d);
      OutputTarget out(gen_out);
      write_matrix(m, *out.os);
      out.finish(gen_out);
      return kExitPass;
    }
    if (*det) {
      if (det_d_opt->count() == 0 && det_in_opt->count() == 0)
        throw std::invalid_argument("det: pass --d or --in");
      auto engine = engine_from_name(det_engine);
      if (!engine)
        throw std::invalid_argument("unknown engine \"" + det_engine +
                                    "\" (laplace|bareiss|modular_crt|structural)");
      CrtMode mode = CrtMode::certified();
      if (det_mode == "probabilistic")
        mode = CrtMode::probabilistic(det_k, det_seed);
      else if (det_mode != "certified")
        throw std::invalid_argument("unknown mode \"" + det_mode + "\"");
      const SparseColMatrix m = det_in_opt->count() ? read_matrix_file(det_in) : build_m(det_d);
      std::cout << run_engine(*engine, m, mode) << "\n";
      return kExitPass;
    }
    if (*verify) return run_campaign_cli(verify_cli);
    if (*campaign) return run_campaign_cli(campaign_cli);
    if (*explore) {
      OutputTarget out(exp_out);
      if (exp_what == "cofactors") {
        const i64 row = exp_row > 0 ? exp_row : 2 * exp_d;
        write_cofactor_profile(cofactor_profile(exp_d, row), *out.os);
      } else if (exp_what == "minors") {
        const std::vector<Int> minors = principal_minors(exp_d);
        std::vector<std::pair<i64, Int>> terms;
        terms.reserve(minors.size());
        for (std::size_t k = 0; k < minors.size(); ++k)
          terms.emplace_back(static_cast<i64>(k + 1), minors[k]);
        write_bfile(terms, *out.os);
      } else {
        throw std::invalid_argument("explore: --what must be cofactors or minors");
      }
      out.finish(exp_out);
      return kExitPass;
    }
    if (*bench) return run_bench(bench_ds, bench_engines, bench_reps, bench_json);
  } catch (const EngineDisagreementError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDisagreement;
  } catch (const CheckpointError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const StructuralMismatchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
