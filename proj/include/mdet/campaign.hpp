#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bareiss.hpp"
#include "crt.hpp"
#include "det.hpp"
#include "matrix.hpp"
#include "structural.hpp"

namespace mdet {

struct EngineSet {
  unsigned bits = 0;

  static constexpr unsigned bit(Engine e) { return 1u << static_cast<unsigned>(e); }

  EngineSet() = default;
  EngineSet(std::initializer_list<Engine> engines) {
    for (Engine e : engines) insert(e);
  }

  void insert(Engine e) { bits |= bit(e); }
  bool has(Engine e) const { return (bits & bit(e)) != 0; }
  bool empty() const { return bits == 0; }

  // canonical enum order, independent of insertion order
  std::vector<Engine> list() const {
    std::vector<Engine> out;
    for (Engine e : {Engine::laplace, Engine::bareiss, Engine::modular_crt, Engine::structural})
      if (has(e)) out.push_back(e);
    return out;
  }

  friend bool operator==(const EngineSet&, const EngineSet&) = default;
};

struct CampaignConfig {
  i64 d_min = 1;
  i64 d_max = 1;
  EngineSet engines;
  CrtMode mode = CrtMode::certified();
  int jobs = 1;
  u64 seed = 0;
  std::string checkpoint_path;  // empty = no checkpointing
  bool timings = false;         // measured wall times make reports non-reproducible
};

inline void validate(const CampaignConfig& cfg) {
  if (cfg.d_min < 1) throw std::invalid_argument("campaign: d_min must be >= 1");
  if (cfg.d_min > cfg.d_max) throw std::invalid_argument("campaign: d_min must be <= d_max");
  if (cfg.engines.empty()) throw std::invalid_argument("campaign: engine set must not be empty");
  if (cfg.engines.has(Engine::laplace))
    throw std::invalid_argument("campaign: the laplace oracle is not a campaign engine");
  if (cfg.mode.target == Certification::certified && !cfg.engines.has(Engine::bareiss) &&
      !cfg.engines.has(Engine::modular_crt))
    throw std::invalid_argument(
        "campaign: certified mode requires the bareiss or modular_crt engine");
  if (cfg.mode.target == Certification::probabilistic && cfg.mode.k < 1)
    throw std::invalid_argument("campaign: probabilistic mode needs k >= 1 primes");
  if (cfg.jobs < 1) throw std::invalid_argument("campaign: jobs must be >= 1");
}

struct VerifyRecord {
  i64 d = 0;
  Int det;
  int expected = 0;
  bool pass = false;
  EngineSet engines_used;
  std::vector<PrimeResidue> prime_trace;
  double seconds = 0.0;
};

struct CampaignReport {
  CampaignConfig config;
  std::vector<VerifyRecord> records;  // ordered by d, gap-free
  bool all_pass = false;
  double total_seconds = 0.0;
};

// two engines returned different values: always a software bug
struct EngineDisagreementError : std::runtime_error {
  EngineDisagreementError(i64 d_, std::string details_)
      : std::runtime_error("engine disagreement at d=" + std::to_string(d_) + ": " + details_),
        d(d_),
        details(std::move(details_)) {}
  i64 d;
  std::string details;
};

struct CheckpointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CampaignCancelled : std::runtime_error {
  explicit CampaignCancelled(i64 last)
      : std::runtime_error("campaign cancelled after d=" + std::to_string(last)), last_d(last) {}
  i64 last_d;
};

// per-d sampling seed, independent of worker scheduling
inline u64 prime_seed_for(u64 campaign_seed, i64 d) {
  return splitmix64(campaign_seed ^ splitmix64(static_cast<u64>(d)));
}

// build M(d), run every requested engine, cross-check, compare against the
// conjectured value. A structural mismatch only skips that engine.
inline VerifyRecord verify_one(const CampaignConfig& cfg, i64 d) {
  const auto t0 = std::chrono::steady_clock::now();
  const SparseColMatrix m = build_m(d);
  VerifyRecord rec;
  rec.d = d;
  rec.expected = conjectured_value(d);
  std::vector<std::pair<Engine, Int>> values;
  if (cfg.engines.has(Engine::bareiss))
    values.emplace_back(Engine::bareiss, det_bareiss(to_dense(m)).value);
  if (cfg.engines.has(Engine::modular_crt)) {
    CrtMode mode = cfg.mode;
    mode.seed = prime_seed_for(cfg.seed, d);
    DetResult r = det_crt(m, mode);
    rec.prime_trace = std::move(r.prime_trace);
    values.emplace_back(Engine::modular_crt, std::move(r.value));
  }
  if (cfg.engines.has(Engine::structural)) {
    try {
      values.emplace_back(Engine::structural, det_structural(m).value);
    } catch (const StructuralMismatchError&) {
      // input outside the engine's shape: skip, never fail the record
    }
  }
  if (values.empty())
    throw std::runtime_error("verify_one: no engine produced a value for d=" + std::to_string(d));
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i].second != values[0].second) {
      std::ostringstream os;
      for (const auto& [e, v] : values) os << engine_name(e) << "=" << v << " ";
      throw EngineDisagreementError(d, os.str());
    }
  }
  rec.det = std::move(values[0].second);
  for (const auto& [e, v] : values) rec.engines_used.insert(e);
  rec.pass = rec.det == rec.expected;
  if (cfg.timings)
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

using json = nlohmann::json;

inline json record_to_json(const VerifyRecord& rec) {
  json engines = json::array();
  for (Engine e : rec.engines_used.list()) engines.push_back(engine_name(e));
  json trace = json::array();
  for (const auto& pr : rec.prime_trace) trace.push_back(json::array({pr.prime, pr.residue}));
  json j;
  j["d"] = rec.d;
  j["det"] = rec.det.str();
  j["engines"] = std::move(engines);
  j["expected"] = std::to_string(rec.expected);
  j["pass"] = rec.pass;
  j["prime_trace"] = std::move(trace);
  j["seconds"] = rec.seconds;
  return j;
}

inline VerifyRecord record_from_json(const json& j) {
  if (!j.is_object()) throw CheckpointError("checkpoint record is not an object");
  try {
    VerifyRecord rec;
    rec.d = j.at("d").get<i64>();
    rec.det = Int(j.at("det").get<std::string>());
    rec.expected = std::stoi(j.at("expected").get<std::string>());
    rec.pass = j.at("pass").get<bool>();
    for (const auto& name : j.at("engines")) {
      auto e = engine_from_name(name.get<std::string>());
      if (!e) throw CheckpointError("unknown engine name in checkpoint record");
      rec.engines_used.insert(*e);
    }
    for (const auto& pr : j.at("prime_trace")) {
      if (!pr.is_array() || pr.size() != 2) throw CheckpointError("bad prime trace entry");
      rec.prime_trace.push_back({pr.at(0).get<u64>(), pr.at(1).get<u64>()});
    }
    rec.seconds = j.at("seconds").get<double>();
    if (rec.d < 1) throw CheckpointError("checkpoint record with d < 1");
    return rec;
  } catch (const json::exception& e) {
    throw CheckpointError(std::string("malformed checkpoint record: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw CheckpointError(std::string("malformed checkpoint record: ") + e.what());
  } catch (const std::runtime_error& e) {
    throw CheckpointError(std::string("malformed checkpoint record: ") + e.what());
  }
}

// Result-affecting fields only. Execution details (jobs, checkpoint path,
// timing collection) stay out so they cannot perturb report bytes.
inline json config_to_json(const CampaignConfig& cfg) {
  json engines = json::array();
  for (Engine e : cfg.engines.list()) engines.push_back(engine_name(e));
  json j;
  j["d_min"] = cfg.d_min;
  j["d_max"] = cfg.d_max;
  j["engines"] = std::move(engines);
  if (cfg.mode.target == Certification::certified) {
    j["mode"] = "certified";
  } else {
    j["mode"] = "probabilistic";
    j["k"] = cfg.mode.k;
  }
  j["seed"] = cfg.seed;
  return j;
}

inline json report_to_json(const CampaignReport& report) {
  json records = json::array();
  for (const auto& rec : report.records) records.push_back(record_to_json(rec));
  json j;
  j["all_pass"] = report.all_pass;
  j["config"] = config_to_json(report.config);
  j["records"] = std::move(records);
  j["total_seconds"] = report.total_seconds;
  return j;
}

inline void write_report(const CampaignReport& report, std::ostream& os) {
  os << report_to_json(report).dump(2) << "\n";
}

inline void write_report_file(const CampaignReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_report(report, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

// One JSON object per line, one line per completed d. Anything that does not
// parse back cleanly halts the run rather than silently recomputing.
inline std::map<i64, VerifyRecord> load_checkpoint(const std::string& path,
                                                   const CampaignConfig& cfg) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot read checkpoint: " + path);
  std::map<i64, VerifyRecord> out;
  std::string line;
  std::size_t lineno = 0;
  // engines that can never be skipped must appear in every completed record
  EngineSet required = cfg.engines;
  required.bits &= ~EngineSet::bit(Engine::structural);
  while (std::getline(in, line)) {
    ++lineno;
    const json j = json::parse(line, nullptr, false);
    if (j.is_discarded())
      throw CheckpointError("unparseable checkpoint line " + std::to_string(lineno));
    VerifyRecord rec = record_from_json(j);
    if ((rec.engines_used.bits & ~cfg.engines.bits) != 0 ||
        (required.bits & ~rec.engines_used.bits) != 0)
      throw CheckpointError("checkpoint line " + std::to_string(lineno) +
                            " was produced by a different engine configuration");
    const i64 d = rec.d;
    if (!out.emplace(d, std::move(rec)).second)
      throw CheckpointError("duplicate d=" + std::to_string(d) + " in checkpoint");
  }
  return out;
}

// optional cooperative stop: called after each freshly computed record has
// been checkpointed; returning true halts the run with CampaignCancelled
using CancelFn = std::function<bool(i64)>;

namespace detail {

inline void append_checkpoint(std::ofstream& ckpt, const VerifyRecord& rec) {
  if (!ckpt.is_open()) return;
  ckpt << record_to_json(rec).dump() << "\n";
  ckpt.flush();
  if (!ckpt) throw std::runtime_error("checkpoint write failed");
}

// sequential scan for structural-only campaigns; O(d_max) for the whole
// range, which is what makes million-d sweeps practical
inline void run_structural_only(const CampaignConfig& cfg,
                                const std::map<i64, VerifyRecord>& done, std::ofstream& ckpt,
                                const CancelFn& cancel, CampaignReport& report) {
  FamilyDetScan scan(cfg.d_max);
  for (i64 d = 1; d <= cfg.d_max; ++d) {
    const auto t0 = std::chrono::steady_clock::now();
    const int value = scan.advance();
    if (d < cfg.d_min) continue;
    if (auto it = done.find(d); it != done.end()) {
      report.records.push_back(it->second);
      continue;
    }
    VerifyRecord rec;
    rec.d = d;
    rec.det = value;
    rec.expected = conjectured_value(d);
    rec.pass = rec.det == rec.expected;
    rec.engines_used.insert(Engine::structural);
    if (cfg.timings)
      rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    append_checkpoint(ckpt, rec);
    report.records.push_back(std::move(rec));
    if (cancel && cancel(d)) throw CampaignCancelled(d);
  }
}

inline void run_pooled(const CampaignConfig& cfg, std::map<i64, VerifyRecord>& done,
                       std::ofstream& ckpt, const CancelFn& cancel, CampaignReport& report) {
  const i64 count = cfg.d_max - cfg.d_min + 1;
  std::vector<std::optional<VerifyRecord>> slots(static_cast<std::size_t>(count));
  std::vector<char> from_checkpoint(static_cast<std::size_t>(count), 0);
  for (auto& [d, rec] : done) {
    if (d < cfg.d_min || d > cfg.d_max) continue;  // stale rows from a wider run
    slots[static_cast<std::size_t>(d - cfg.d_min)] = std::move(rec);
    from_checkpoint[static_cast<std::size_t>(d - cfg.d_min)] = 1;
  }

  std::mutex mu;
  std::condition_variable cv;
  std::exception_ptr failure;
  std::atomic<i64> next{0};
  std::atomic<bool> stop{false};

  auto worker = [&] {
    for (;;) {
      if (stop.load(std::memory_order_relaxed)) return;
      const i64 i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      if (from_checkpoint[static_cast<std::size_t>(i)]) continue;
      try {
        VerifyRecord rec = verify_one(cfg, cfg.d_min + i);
        {
          std::lock_guard<std::mutex> lock(mu);
          slots[static_cast<std::size_t>(i)] = std::move(rec);
        }
        cv.notify_all();
      } catch (...) {
        {
          std::lock_guard<std::mutex> lock(mu);
          if (!failure) failure = std::current_exception();
        }
        stop.store(true);
        cv.notify_all();
        return;
      }
    }
  };

  const int workers = static_cast<int>(std::min<i64>(cfg.jobs, count));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);

  i64 cancelled_at = 0;
  // the aggregator alone writes the checkpoint and report, strictly by d
  for (i64 i = 0; i < count; ++i) {
    std::unique_lock<std::mutex> lock(mu);
    cv.wait(lock, [&] { return slots[static_cast<std::size_t>(i)].has_value() || failure; });
    if (failure) break;
    VerifyRecord rec = std::move(*slots[static_cast<std::size_t>(i)]);
    slots[static_cast<std::size_t>(i)].reset();
    lock.unlock();
    const bool fresh = !from_checkpoint[static_cast<std::size_t>(i)];
    if (fresh) append_checkpoint(ckpt, rec);
    const i64 d = rec.d;
    report.records.push_back(std::move(rec));
    if (fresh && cancel && cancel(d)) {
      cancelled_at = d;
      break;
    }
  }

  stop.store(true);
  cv.notify_all();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  if (cancelled_at) throw CampaignCancelled(cancelled_at);
}

}  // namespace detail

// Executes verify_one over [d_min, d_max]. The report is deterministic for a
// fixed config and seed: ordered by d, independent of the worker count, and
// byte-identical on resume from a checkpoint.
inline CampaignReport run_campaign(const CampaignConfig& cfg, const CancelFn& cancel = {}) {
  validate(cfg);
  const auto t0 = std::chrono::steady_clock::now();

  std::map<i64, VerifyRecord> done;
  if (!cfg.checkpoint_path.empty() && std::filesystem::exists(cfg.checkpoint_path))
    done = load_checkpoint(cfg.checkpoint_path, cfg);

  std::ofstream ckpt;
  if (!cfg.checkpoint_path.empty()) {
    ckpt.open(cfg.checkpoint_path, std::ios::app | std::ios::binary);
    if (!ckpt) throw std::runtime_error("cannot open checkpoint for append: " + cfg.checkpoint_path);
  }

  CampaignReport report;
  report.config = cfg;
  report.records.reserve(static_cast<std::size_t>(cfg.d_max - cfg.d_min + 1));

  if (cfg.engines == EngineSet{Engine::structural})
    detail::run_structural_only(cfg, done, ckpt, cancel, report);
  else
    detail::run_pooled(cfg, done, ckpt, cancel, report);

  report.all_pass = true;
  for (const auto& rec : report.records)
    if (!rec.pass) {
      report.all_pass = false;
      break;
    }
  if (cfg.timings)
    report.total_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

// "d a(d)" lines for a gap-free report
inline void export_bfile(const CampaignReport& report, std::ostream& os) {
  if (report.records.empty()) throw std::invalid_argument("b-file export: empty report");
  if (report.records.front().d < 1)
    throw std::invalid_argument("b-file export: range must start at d >= 1");
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    if (i > 0 && report.records[i].d != report.records[i - 1].d + 1)
      throw std::invalid_argument("b-file export: records are not contiguous");
    os << report.records[i].d << " " << report.records[i].det << "\n";
  }
}

inline void export_bfile_file(const CampaignReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  export_bfile(report, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace mdet
