#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pvgait/datastore.hpp"
#include "pvgait/pipeline.hpp"
#include "pvgait/simulate.hpp"

using namespace pvgait;
namespace fs = std::filesystem;

namespace {

PipelineConfig timing_config() {
  PipelineConfig cfg;
  cfg.filter.alpha = 0.0;  // smoothing delays the rise edge; keep timing sharp
  return cfg;
}

SimResult short_walk(const std::string& subject, Scalar duration,
                     std::uint64_t seed) {
  SubjectProfile profile;
  for (const SubjectProfile& p : default_profiles()) {
    if (p.name == subject) profile = p;
  }
  WalkScenario scenario;
  scenario.path = default_loop_path();
  scenario.duration = duration;
  scenario.seed = seed;
  return generate(profile, default_light_map(), scenario);
}

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "pvgait-cli-tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Runs the installed command line tool; returns its exit status and captures
// both output streams into files next to the test data.
int run_cli(const std::string& args, std::string* out = nullptr,
            std::string* err = nullptr) {
  const fs::path out_path = temp_dir() / "cli-stdout.txt";
  const fs::path err_path = temp_dir() / "cli-stderr.txt";
  const std::string cmd = std::string(PVGAIT_CLI_PATH) + " " + args + " > " +
                          out_path.string() + " 2> " + err_path.string();
  const int rc = std::system(cmd.c_str());
  if (out) *out = slurp(out_path);
  if (err) *err = slurp(err_path);
  REQUIRE(rc != -1);
  REQUIRE(WIFEXITED(rc));
  return WEXITSTATUS(rc);
}

std::string value_of(const std::string& text, const std::string& key) {
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.rfind(key + "=", 0) == 0) return line.substr(key.size() + 1);
  }
  return {};
}

}  // namespace

TEST_CASE("pipeline recovers a clean walk from the sample grid") {
  const SimResult sim = short_walk("s2", 30.0, 21);
  const PipelineOutput out =
      run_pipeline_on_grid(sim.grid, timing_config(), "s2", &sim.truth.track);

  const auto truth_n = sim.truth.steps.size();
  REQUIRE(truth_n > 30);
  CHECK(out.steps.size() >= truth_n - 1);
  CHECK(out.steps.size() <= truth_n + 1);

  for (std::size_t i = 1; i < out.steps.size(); ++i) {
    CHECK(out.steps[i].t > out.steps[i - 1].t);
    CHECK(out.steps[i].foot == opposite(out.steps[i - 1].foot));
  }

  REQUIRE(!out.records.empty());
  Scalar prev = -1;
  for (const FeatureRecord& r : out.records) {
    CHECK(r.t >= prev);
    prev = r.t;
    CHECK(r.posture >= 0.0);
    CHECK(r.posture < 2.0);
    REQUIRE(r.subject.has_value());
    CHECK(*r.subject == "s2");
    REQUIRE(r.location.has_value());
    const Vec2 expected = sim.truth.track.position_at(r.t);
    CHECK((*r.location - expected).norm() <= 1e-9);
  }
}

TEST_CASE("pipeline from raw samples agrees with the grid entry point") {
  const SimResult sim = short_walk("s4", 20.0, 22);
  const PipelineConfig cfg = timing_config();
  const PipelineOutput from_grid = run_pipeline_on_grid(sim.grid, cfg);
  const PipelineOutput from_raw = run_pipeline(sim.samples, cfg);
  // The raw path re-aligns jittered timestamps first, so allow one step of
  // disagreement at the trace edges.
  const auto a = from_grid.steps.size();
  const auto b = from_raw.steps.size();
  CHECK((a > b ? a - b : b - a) <= 1);
  CHECK(!from_raw.records.empty());
  CHECK(from_raw.grid.size() > 0);
}

TEST_CASE("pipeline without complement never adds events") {
  const SimResult sim = short_walk("s5", 20.0, 23);
  PipelineConfig cfg = timing_config();
  cfg.complement = false;
  const PipelineOutput out = run_pipeline_on_grid(sim.grid, cfg);
  CHECK(out.steps.size() <= out.detected.size());
  for (const StepEvent& e : out.steps) {
    CHECK(e.origin == StepOrigin::Detected);
  }
}

TEST_CASE("cli simulate, detect and evaluate chain") {
  const fs::path dir = temp_dir();
  const fs::path samples = dir / "chain-samples.csv";
  const fs::path truth = dir / "chain-truth.txt";
  const fs::path steps = dir / "chain-steps.txt";

  std::string out;
  int rc = run_cli("simulate --subject s2 --duration 20 --seed 5 -o " +
                       samples.string() + " --truth " + truth.string(),
                   &out);
  REQUIRE(rc == 0);
  CHECK(value_of(out, "subject") == "s2");
  CHECK(fs::exists(samples));
  CHECK(fs::exists(truth));
  const std::size_t truth_steps = std::stoul(value_of(out, "steps"));
  REQUIRE(truth_steps > 20);

  rc = run_cli("detect -i " + samples.string() + " -o " + steps.string() +
                   " --alpha 0",
               &out);
  REQUIRE(rc == 0);
  CHECK(fs::exists(steps));
  const std::size_t detected = std::stoul(value_of(out, "steps"));
  CHECK(detected >= truth_steps - 1);
  CHECK(detected <= truth_steps + 1);
  CHECK(read_steps(steps).size() == detected);

  std::string err;
  rc = run_cli("evaluate --pair " + steps.string() + "," + truth.string(),
               &out, &err);
  REQUIRE(rc == 0);
  CHECK(!value_of(out, "within_band").empty());
  CHECK(!value_of(out, "match_rate").empty());
  CHECK(out.find("\"record\":\"aggregate\"") != std::string::npos);
}

TEST_CASE("cli detect reports zero steps on a flat recording") {
  const fs::path flat = temp_dir() / "flat.csv";
  {
    std::ofstream f(flat, std::ios::binary);
    f << "t_ms,lt,ls,rt,rs\n";
    for (int i = 0; i < 120; ++i) {
      f << i * 36 << ",1.5,1.5,1.5,1.5\n";
    }
  }
  std::string out;
  const int rc = run_cli("detect -i " + flat.string(), &out);
  CHECK(rc == 0);
  CHECK(value_of(out, "steps") == "0");
  CHECK(value_of(out, "detected") == "0");
}

TEST_CASE("cli identification round trip on its own database") {
  const fs::path dir = temp_dir();
  const fs::path samples = dir / "id-samples.csv";
  const fs::path truth = dir / "id-truth.txt";
  const fs::path db = dir / "id.db";

  REQUIRE(run_cli("simulate --subject s3 --duration 30 --seed 9 -o " +
                  samples.string() + " --truth " + truth.string()) == 0);
  std::string out;
  int rc = run_cli("build-db --session " + samples.string() + "," +
                       truth.string() + " -o " + db.string() + " --alpha 0",
                   &out);
  REQUIRE(rc == 0);
  REQUIRE(std::stoul(value_of(out, "entries")) > 10);

  rc = run_cli("identify -i " + samples.string() + " --db " + db.string() +
                   " --alpha 0",
               &out);
  REQUIRE(rc == 0);
  CHECK(value_of(out, "subject") == "s3");

  rc = run_cli("localize -i " + samples.string() + " --db " + db.string() +
                   " --alpha 0",
               &out);
  REQUIRE(rc == 0);
  CHECK(!value_of(out, "x").empty());
  CHECK(!value_of(out, "y").empty());
}

TEST_CASE("cli energy reproduces the published draw and panel numbers") {
  std::string out;
  REQUIRE(run_cli("energy", &out) == 0);
  CHECK(std::abs(std::stod(value_of(out, "total_min_mw")) - 2.56) < 1e-9);
  CHECK(std::abs(std::stod(value_of(out, "total_max_mw")) - 2.89) < 1e-9);
  CHECK(std::abs(std::stod(value_of(out, "area_max_cm2")) - 2.89 * 1000 / 60) <
        1e-9);
}

TEST_CASE("cli exit codes separate usage errors from data errors") {
  std::string out, err;
  SUBCASE("unknown subcommand") {
    CHECK(run_cli("frobnicate", &out, &err) == 2);
  }
  SUBCASE("missing required option") {
    CHECK(run_cli("detect", &out, &err) == 2);
  }
  SUBCASE("unreadable input file") {
    CHECK(run_cli("detect -i /nonexistent/nope.csv", &out, &err) == 1);
    CHECK(err.find("error:") != std::string::npos);
  }
  SUBCASE("help exits clean") {
    CHECK(run_cli("--help", &out, &err) == 0);
    CHECK(run_cli("simulate --help", &out, &err) == 0);
  }
}
