// SPDX-License-Identifier: MIT
//
// pvgait: photovoltaic gait sensing toolbox.
//
// Machine-readable results go to stdout (key=value or NDJSON); everything
// meant for humans goes to stderr. Exit 0 on success, 1 on domain errors,
// 2 on usage errors.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "pvgait/datastore.hpp"
#include "pvgait/energy.hpp"
#include "pvgait/evaluate.hpp"
#include "pvgait/pipeline.hpp"
#include "pvgait/recognition.hpp"
#include "pvgait/simulate.hpp"

namespace {

using namespace pvgait;

void emit(const std::string& key, const std::string& value) {
  std::cout << key << "=" << value << "\n";
}

void emit(const std::string& key, Scalar value) { emit(key, format_scalar(value)); }

void emit(const std::string& key, std::size_t value) {
  emit(key, std::to_string(value));
}

// Shared pipeline knobs; every subcommand that touches raw samples takes them.
struct PipelineFlags {
  Scalar rate = 28.0;
  Scalar alpha = 0.9;
  Scalar prominence = 0.0;  // <= 0 selects the per-trace automatic threshold
  Scalar refractory = 0.25;
  Scalar t_thr = 2.0;
  bool complement = true;

  void attach(CLI::App* cmd) {
    cmd->add_option("--rate", rate, "Sampling grid rate, Hz")
        ->capture_default_str();
    cmd->add_option("--alpha", alpha, "Low-pass smoothing factor in [0,1]")
        ->capture_default_str();
    cmd->add_option("--prominence", prominence,
                    "Step threshold, volts/s; 0 = automatic")
        ->capture_default_str();
    cmd->add_option("--refractory", refractory, "Minimum step spacing, s")
        ->capture_default_str();
    cmd->add_option("--t-thr", t_thr, "Max same-foot gap bridged, s")
        ->capture_default_str();
    cmd->add_flag("--complement,!--no-complement", complement,
                  "Infer missed steps from same-foot gaps")
        ->capture_default_str();
  }

  PipelineConfig to_config() const {
    PipelineConfig cfg;
    cfg.grid_rate = rate;
    cfg.filter.alpha = alpha;
    cfg.detector.prominence_thr = prominence;
    cfg.detector.refractory = refractory;
    cfg.detector.t_thr = t_thr;
    cfg.complement = complement;
    return cfg;
  }
};

struct MatchFlags {
  int k = 1;
  std::string metric = "mdtw";
  Scalar thr_prune = 0.1;
  std::string locate = "nearest";

  void attach(CLI::App* cmd) {
    cmd->add_option("-k,--k", k, "Neighbors voting")->capture_default_str();
    cmd->add_option("--metric", metric, "euclid | dtw | mdtw")
        ->capture_default_str();
    cmd->add_option("--thr-prune", thr_prune, "Head-phase pruning gate")
        ->capture_default_str();
    cmd->add_option("--locate", locate, "nearest | centroid")
        ->capture_default_str();
  }

  KnnConfig to_config() const {
    KnnConfig cfg;
    cfg.k = k;
    cfg.metric = metric_from_name(metric);
    cfg.thr_prune = thr_prune;
    cfg.locate = locate_mode_from_name(locate);
    return cfg;
  }
};

std::pair<std::string, std::string> split_pair(const std::string& spec,
                                               const char* what) {
  const auto comma = spec.find(',');
  if (comma == std::string::npos || comma == 0 || comma + 1 == spec.size()) {
    throw std::invalid_argument(std::string(what) +
                                " expects two comma-separated paths, got '" +
                                spec + "'");
  }
  return {spec.substr(0, comma), spec.substr(comma + 1)};
}

SubjectProfile profile_by_name(const std::string& name) {
  for (const SubjectProfile& p : default_profiles()) {
    if (p.name == name) return p;
  }
  throw std::invalid_argument("unknown subject profile '" + name + "'");
}

int cmd_simulate(const std::string& subject, Scalar duration, Scalar speed,
                 Scalar rate, Scalar noise, std::uint64_t seed,
                 const std::string& out_samples, const std::string& out_truth) {
  SubjectProfile profile = profile_by_name(subject);
  WalkScenario scenario;
  scenario.path = default_loop_path();
  scenario.speed = speed;
  scenario.duration = duration;
  scenario.rate = rate;
  scenario.noise_sigma = noise;
  scenario.seed = seed;

  const SimResult sim = generate(profile, default_light_map(), scenario);
  write_samples(sim.samples, out_samples);
  if (!out_truth.empty()) write_truth(sim.truth, out_truth);

  emit("subject", profile.name);
  emit("samples", std::to_string(sim.samples.front().samples.size()));
  emit("steps", sim.truth.steps.size());
  emit("samples_file", out_samples);
  if (!out_truth.empty()) emit("truth_file", out_truth);
  return 0;
}

int cmd_detect(const std::string& in, const std::string& out,
               const PipelineFlags& flags) {
  const std::vector<SampleStream> raw = read_samples(in, flags.rate);
  const PipelineOutput run = run_pipeline(raw, flags.to_config());
  if (!out.empty()) write_steps(run.steps, out);

  emit("detected", run.detected.size());
  emit("steps", run.steps.size());
  if (!out.empty()) emit("steps_file", out);
  return 0;
}

std::vector<FeatureRecord> records_for_session(const std::string& samples_path,
                                               const GroundTruth& truth,
                                               const PipelineFlags& flags) {
  const std::vector<SampleStream> raw = read_samples(samples_path, flags.rate);
  const PipelineOutput run =
      run_pipeline(raw, flags.to_config(), truth.subject, &truth.track);
  return run.records;
}

int cmd_build_db(const std::vector<std::string>& session_specs,
                 const std::string& out, Scalar window_s, Scalar stride_s,
                 const PipelineFlags& flags, const MatchFlags& match) {
  std::vector<SessionRecords> sessions;
  for (const std::string& spec : session_specs) {
    const auto [samples_path, truth_path] = split_pair(spec, "--session");
    const GroundTruth truth = read_truth(truth_path);
    SessionRecords s;
    s.session = samples_path;
    s.records = records_for_session(samples_path, truth, flags);
    sessions.push_back(std::move(s));
  }
  const FingerprintDb db = build_db(sessions, window_s, stride_s, flags.rate);
  write_db(db, out, match.to_config());

  emit("sessions", sessions.size());
  emit("entries", db.entries.size());
  emit("db_file", out);
  return 0;
}

FeatureSeq query_from_samples(const std::string& in, Scalar start, Scalar length,
                              const PipelineFlags& flags) {
  const std::vector<SampleStream> raw = read_samples(in, flags.rate);
  const PipelineOutput run = run_pipeline(raw, flags.to_config());
  return seq_from_records(run.records, start, length);
}

int cmd_identify(const std::string& in, const std::string& db_path, Scalar start,
                 Scalar length, const PipelineFlags& flags,
                 const MatchFlags& match) {
  const FingerprintDb db = read_db(db_path);
  const Scalar window = length > 0 ? length : db.window_s;
  const FeatureSeq query = query_from_samples(in, start, window, flags);
  const IdentifyResult result = identify(query, db, match.to_config());

  emit("subject", result.subject);
  std::string joined;
  for (std::size_t i = 0; i < result.distances.size(); ++i) {
    if (i) joined += ",";
    joined += format_scalar(result.distances[i]);
  }
  emit("distances", joined);
  return 0;
}

int cmd_localize(const std::string& in, const std::string& db_path, Scalar start,
                 Scalar length, const PipelineFlags& flags,
                 const MatchFlags& match) {
  const FingerprintDb db = read_db(db_path);
  const Scalar window = length > 0 ? length : db.window_s;
  const FeatureSeq query = query_from_samples(in, start, window, flags);
  const Vec2 position = localize(query, db, match.to_config());

  emit("x", position.x());
  emit("y", position.y());
  return 0;
}

int cmd_evaluate(const std::vector<std::string>& pair_specs, std::size_t band,
                 Scalar match_tol) {
  std::vector<StepTraceMetrics> traces;
  Scalar match_sum = 0;
  for (const std::string& spec : pair_specs) {
    const auto [pred_path, truth_path] = split_pair(spec, "--pair");
    const std::vector<StepEvent> predicted = read_steps(pred_path);
    const GroundTruth truth = read_truth(truth_path);
    traces.push_back(step_metrics(predicted, truth.steps));
    match_sum += step_match_rate(predicted, truth.steps, match_tol);
  }
  const StepMetrics metrics = aggregate_step_metrics(traces);

  std::cout << step_metrics_ndjson(metrics);
  emit("within_band", within_band_accuracy(metrics, band));
  emit("match_rate", match_sum / static_cast<Scalar>(pair_specs.size()));
  std::cerr << render_step_table(metrics);
  return 0;
}

int cmd_bench(const std::string& db_path,
              const std::vector<std::string>& query_specs,
              const std::vector<std::string>& metric_names, Scalar stride_s,
              const PipelineFlags& flags, const MatchFlags& match) {
  const FingerprintDb db = read_db(db_path);
  std::vector<LabeledQuery> queries;
  for (const std::string& spec : query_specs) {
    const auto [samples_path, truth_path] = split_pair(spec, "--query");
    const GroundTruth truth = read_truth(truth_path);
    const std::vector<FeatureRecord> records =
        records_for_session(samples_path, truth, flags);
    if (records.empty()) continue;
    const Scalar span = records.back().t - records.front().t;
    for (int w = 0;; ++w) {
      const Scalar start = w * stride_s;
      if (start + db.window_s > span + 1e-9) break;
      LabeledQuery q;
      q.seq = seq_from_records(records, start, db.window_s);
      q.subject = truth.subject;
      queries.push_back(std::move(q));
    }
  }

  std::vector<Metric> methods;
  for (const std::string& name : metric_names) {
    methods.push_back(metric_from_name(name));
  }
  const std::vector<BenchResult> results =
      bench_similarity(db, queries, methods, match.to_config());

  std::cout << bench_ndjson(results);
  std::cerr << render_bench(results);
  return 0;
}

int cmd_energy(const PowerBudget& budget, Scalar comm_mw, Scalar density,
               Scalar derating) {
  const PowerRange total = total_power(budget, comm_mw);
  HarvestModel harvest;
  harvest.density_uw_cm2 = density;
  harvest.derating = derating;

  emit("comm_mw", comm_mw);
  emit("total_min_mw", total.min_mw);
  emit("total_max_mw", total.max_mw);
  emit("area_min_cm2", required_area_cm2(total.min_mw, harvest));
  emit("area_max_cm2", required_area_cm2(total.max_mw, harvest));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pvgait: step counting, subject identification, and indoor "
               "localization from shoe-mounted photovoltaic cells"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Config file (flags override it)")
      ->envname("PVGAIT_CONFIG");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Generate a synthetic walk");
  std::string sim_subject = "s1";
  Scalar sim_duration = 30.0, sim_speed = 1.2, sim_rate = 28.0, sim_noise = 0.0;
  std::uint64_t sim_seed = 1;
  std::string sim_out = "samples.csv", sim_truth = "truth.txt";
  sim->add_option("--subject", sim_subject, "Profile name (s1..s6)")
      ->capture_default_str();
  sim->add_option("--duration", sim_duration, "Walk length, s")
      ->capture_default_str();
  sim->add_option("--speed", sim_speed, "Walking speed, m/s")
      ->capture_default_str();
  sim->add_option("--rate", sim_rate, "Sampling rate, Hz")->capture_default_str();
  sim->add_option("--noise", sim_noise, "Gaussian noise sigma, volts")
      ->capture_default_str();
  sim->add_option("--seed", sim_seed, "RNG seed")->capture_default_str();
  sim->add_option("-o,--out", sim_out, "Samples CSV path")->capture_default_str();
  sim->add_option("--truth", sim_truth, "Ground-truth sidecar path (empty: skip)")
      ->capture_default_str();

  // detect
  auto* det = app.add_subcommand("detect", "Count steps in a samples file");
  std::string det_in, det_out;
  PipelineFlags det_flags;
  det->add_option("-i,--in", det_in, "Samples CSV")->required();
  det->add_option("-o,--out", det_out, "Step events output path");
  det_flags.attach(det);

  // build-db
  auto* bdb = app.add_subcommand("build-db", "Window labeled sessions into a "
                                             "fingerprint database");
  std::vector<std::string> bdb_sessions;
  std::string bdb_out = "fingerprints.db";
  Scalar bdb_window = 5.0, bdb_stride = 1.0;
  PipelineFlags bdb_flags;
  MatchFlags bdb_match;
  bdb->add_option("--session", bdb_sessions, "samples.csv,truth.txt (repeatable)")
      ->required();
  bdb->add_option("-o,--out", bdb_out, "Database path")->capture_default_str();
  bdb->add_option("--window", bdb_window, "Window length, s")
      ->capture_default_str();
  bdb->add_option("--stride", bdb_stride, "Window stride, s")
      ->capture_default_str();
  bdb_flags.attach(bdb);
  bdb_match.attach(bdb);

  // identify
  auto* ident = app.add_subcommand("identify", "Match a walk window to a subject");
  std::string ident_in, ident_db;
  Scalar ident_start = 0.0, ident_length = 0.0;
  PipelineFlags ident_flags;
  MatchFlags ident_match;
  ident->add_option("-i,--in", ident_in, "Samples CSV")->required();
  ident->add_option("--db", ident_db, "Fingerprint database")->required();
  ident->add_option("--start", ident_start, "Window start offset, s")
      ->capture_default_str();
  ident->add_option("--length", ident_length, "Window length, s (0: db default)")
      ->capture_default_str();
  ident_flags.attach(ident);
  ident_match.attach(ident);

  // localize
  auto* loc = app.add_subcommand("localize", "Estimate position from a window");
  std::string loc_in, loc_db;
  Scalar loc_start = 0.0, loc_length = 0.0;
  PipelineFlags loc_flags;
  MatchFlags loc_match;
  loc->add_option("-i,--in", loc_in, "Samples CSV")->required();
  loc->add_option("--db", loc_db, "Fingerprint database")->required();
  loc->add_option("--start", loc_start, "Window start offset, s")
      ->capture_default_str();
  loc->add_option("--length", loc_length, "Window length, s (0: db default)")
      ->capture_default_str();
  loc_flags.attach(loc);
  loc_match.attach(loc);

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "Score step predictions against "
                                            "ground truth");
  std::vector<std::string> ev_pairs;
  std::size_t ev_band = 0;
  Scalar ev_tol = 0.25;
  ev->add_option("--pair", ev_pairs, "steps_file,truth_file (repeatable)")
      ->required();
  ev->add_option("--band", ev_band, "Count-accuracy band, steps")
      ->capture_default_str();
  ev->add_option("--match-tol", ev_tol, "Per-step match tolerance, s")
      ->capture_default_str();

  // bench
  auto* bench = app.add_subcommand("bench", "Compare similarity methods on one "
                                            "database");
  std::string bench_db;
  std::vector<std::string> bench_queries;
  std::vector<std::string> bench_metrics = {"euclid", "dtw", "mdtw"};
  Scalar bench_stride = 2.0;
  PipelineFlags bench_flags;
  MatchFlags bench_match;
  bench->add_option("--db", bench_db, "Fingerprint database")->required();
  bench->add_option("--query", bench_queries,
                    "samples.csv,truth.txt (repeatable)")
      ->required();
  bench->add_option("--metrics", bench_metrics, "Methods to compare")
      ->capture_default_str();
  bench->add_option("--stride", bench_stride, "Query window stride, s")
      ->capture_default_str();
  bench_flags.attach(bench);
  bench_match.attach(bench);

  // energy
  auto* en = app.add_subcommand("energy", "Size the harvesting panel for a "
                                          "power budget");
  PowerBudget budget;
  Scalar en_comm = kIntermittentCommMw;
  HarvestModel harvest_defaults;
  Scalar en_density = harvest_defaults.density_uw_cm2;
  Scalar en_derating = harvest_defaults.derating;
  en->add_option("--adc", budget.adc_mw, "ADC draw, mW")->capture_default_str();
  en->add_option("--compute-min", budget.compute_min_mw, "Compute draw floor, mW")
      ->capture_default_str();
  en->add_option("--compute-max", budget.compute_max_mw, "Compute draw peak, mW")
      ->capture_default_str();
  en->add_option("--comm", en_comm, "Average communication draw, mW")
      ->capture_default_str();
  en->add_option("--density", en_density, "Harvest density, uW/cm^2")
      ->capture_default_str();
  en->add_option("--derating", en_derating, "Usable output share, (0,1]")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message and usage hint to stderr
    return 2;
  }

  try {
    if (*sim) {
      return cmd_simulate(sim_subject, sim_duration, sim_speed, sim_rate,
                          sim_noise, sim_seed, sim_out, sim_truth);
    }
    if (*det) return cmd_detect(det_in, det_out, det_flags);
    if (*bdb) {
      return cmd_build_db(bdb_sessions, bdb_out, bdb_window, bdb_stride,
                          bdb_flags, bdb_match);
    }
    if (*ident) {
      return cmd_identify(ident_in, ident_db, ident_start, ident_length,
                          ident_flags, ident_match);
    }
    if (*loc) {
      return cmd_localize(loc_in, loc_db, loc_start, loc_length, loc_flags,
                          loc_match);
    }
    if (*ev) return cmd_evaluate(ev_pairs, ev_band, ev_tol);
    if (*bench) {
      return cmd_bench(bench_db, bench_queries, bench_metrics, bench_stride,
                       bench_flags, bench_match);
    }
    if (*en) return cmd_energy(budget, en_comm, en_density, en_derating);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
