#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "pvgait/errors.hpp"
#include "pvgait/recognition.hpp"

using namespace pvgait;

namespace {

FeatureSeq const_seq(Scalar level, Scalar posture, Eigen::Index n = 8) {
  FeatureSeq s;
  s.values = MatrixX::Constant(4, n, level);
  s.postures = ArrayX::Constant(n, posture);
  return s;
}

Fingerprint entry(Scalar level, Scalar posture, const std::string& subject,
                  Vec2 loc = Vec2::Zero()) {
  Fingerprint fp;
  fp.seq = const_seq(level, posture);
  fp.subject = subject;
  fp.location = loc;
  fp.session = "lap0";
  return fp;
}

std::vector<FeatureRecord> grid_records(int n, Scalar rate, const std::string& subject) {
  std::vector<FeatureRecord> out;
  for (int i = 0; i < n; ++i) {
    FeatureRecord r;
    r.t = i / rate;
    r.posture = std::fmod(0.01 * i, 2.0);
    r.voltages = Vec4::Constant(0.5 + 0.001 * i);
    r.subject = subject;
    r.location = Vec2(0.1 * i, 1.0);
    out.push_back(r);
  }
  return out;
}

}  // namespace

TEST_CASE("identify returns the only subject in a one-subject db") {
  FingerprintDb db;
  db.entries.push_back(entry(1.0, 0.5, "ada"));
  db.entries.push_back(entry(2.0, 0.5, "ada"));
  KnnConfig cfg;
  cfg.metric = Metric::Euclid;
  const IdentifyResult r = identify(const_seq(5.0, 0.5), db, cfg);
  CHECK(r.subject == "ada");
  REQUIRE(r.distances.size() == 1);  // k = 1
}

TEST_CASE("self-retrieval returns the entry with distance zero") {
  FingerprintDb db;
  db.entries.push_back(entry(1.0, 0.4, "ada", Vec2(1, 2)));
  db.entries.push_back(entry(3.0, 0.4, "bob", Vec2(3, 4)));
  db.entries.push_back(entry(7.0, 1.4, "eve", Vec2(5, 6)));
  for (Metric m : {Metric::Euclid, Metric::Dtw, Metric::ModifiedDtw}) {
    KnnConfig cfg;
    cfg.metric = m;
    for (const Fingerprint& fp : db.entries) {
      const IdentifyResult r = identify(fp.seq, db, cfg);
      CHECK(r.subject == fp.subject);
      CHECK(r.distances[0] == doctest::Approx(0.0));
      const Vec2 loc = localize(fp.seq, db, cfg);
      CHECK(loc.x() == doctest::Approx(fp.location.x()));
      CHECK(loc.y() == doctest::Approx(fp.location.y()));
    }
  }
}

TEST_CASE("vote ties fall to the smaller summed distance") {
  FingerprintDb db;
  db.entries.push_back(entry(1.0, 0.5, "near"));   // distance 8 to query level 2
  db.entries.push_back(entry(4.0, 0.5, "far"));    // distance 16
  db.entries.push_back(entry(0.5, 0.5, "near"));   // distance 12
  db.entries.push_back(entry(4.5, 0.5, "far"));    // distance 20
  KnnConfig cfg;
  cfg.k = 4;
  cfg.metric = Metric::Euclid;
  const IdentifyResult r = identify(const_seq(2.0, 0.5), db, cfg);
  CHECK(r.subject == "near");
  REQUIRE(r.distances.size() == 4);
  CHECK(std::is_sorted(r.distances.begin(), r.distances.end()));
}

TEST_CASE("all-pruned query raises NoMatchError") {
  FingerprintDb db;
  db.entries.push_back(entry(1.0, 0.0, "ada"));
  db.entries.push_back(entry(2.0, 0.0, "bob"));
  KnnConfig cfg;
  cfg.metric = Metric::ModifiedDtw;
  cfg.thr_prune = 0.1;
  CHECK_THROWS_AS(identify(const_seq(1.0, 1.0), db, cfg), NoMatchError);
  CHECK_THROWS_AS(localize(const_seq(1.0, 1.0), db, cfg), NoMatchError);
  CHECK_THROWS_AS(identify(const_seq(1.0, 1.0), FingerprintDb{}, cfg), NoMatchError);
}

TEST_CASE("adding an entry beyond the k-th neighbor never changes the result") {
  FingerprintDb db;
  db.entries.push_back(entry(1.0, 0.5, "ada"));
  db.entries.push_back(entry(1.5, 0.5, "ada"));
  db.entries.push_back(entry(5.0, 0.5, "bob"));
  KnnConfig cfg;
  cfg.k = 2;
  cfg.metric = Metric::Euclid;
  const FeatureSeq query = const_seq(1.2, 0.5);
  const IdentifyResult before = identify(query, db, cfg);
  db.entries.push_back(entry(50.0, 0.5, "mallory"));
  const IdentifyResult after = identify(query, db, cfg);
  CHECK(before.subject == after.subject);
  REQUIRE(before.distances.size() == after.distances.size());
  for (std::size_t i = 0; i < before.distances.size(); ++i) {
    CHECK(before.distances[i] == doctest::Approx(after.distances[i]));
  }
}

TEST_CASE("weighted centroid of two equal neighbors is their midpoint") {
  FingerprintDb db;
  db.entries.push_back(entry(1.0, 0.5, "ada", Vec2(0, 0)));
  db.entries.push_back(entry(3.0, 0.5, "ada", Vec2(4, 2)));
  KnnConfig cfg;
  cfg.k = 2;
  cfg.metric = Metric::Euclid;
  cfg.locate = LocateMode::WeightedCentroid;
  const Vec2 loc = localize(const_seq(2.0, 0.5), db, cfg);  // both at distance 8
  CHECK(loc.x() == doctest::Approx(2.0));
  CHECK(loc.y() == doctest::Approx(1.0));
}

TEST_CASE("build_db windows sessions with the stated counts") {
  const Scalar rate = 28.0;
  SUBCASE("10 s stream, window 5, stride 5 gives two entries") {
    SessionRecords s;
    s.session = "lap1";
    s.records = grid_records(281, rate, "ada");  // spans exactly 10 s
    const FingerprintDb db = build_db({s}, 5.0, 5.0, rate);
    CHECK(db.entries.size() == 2);
    CHECK(db.window_s == doctest::Approx(5.0));
    for (const Fingerprint& fp : db.entries) {
      CHECK(fp.subject == "ada");
      CHECK(fp.session == "lap1");
      CHECK(fp.seq.length() == 140);
    }
  }
  SUBCASE("stream shorter than the window gives an empty db") {
    SessionRecords s;
    s.session = "lap1";
    s.records = grid_records(100, rate, "ada");  // ~3.5 s
    CHECK(build_db({s}, 5.0, 1.0, rate).entries.empty());
  }
  SUBCASE("window location comes from the record nearest the midpoint") {
    SessionRecords s;
    s.session = "lap1";
    s.records = grid_records(281, rate, "ada");
    const FingerprintDb db = build_db({s}, 5.0, 5.0, rate);
    // First window [0,5): midpoint 2.5 s -> record index 70 -> x = 7.0.
    CHECK(db.entries[0].location.x() == doctest::Approx(7.0).epsilon(1e-6));
  }
  SUBCASE("missing labels are rejected") {
    SessionRecords s;
    s.session = "lap1";
    s.records = grid_records(281, rate, "ada");
    for (auto& r : s.records) r.subject.reset();
    CHECK_THROWS_AS(build_db({s}, 5.0, 5.0, rate), std::invalid_argument);
  }
}

TEST_CASE("seq_from_records slices a half-open window") {
  const auto records = grid_records(281, 28.0, "ada");
  const FeatureSeq seq = seq_from_records(records, 0.0, 5.0);
  CHECK(seq.length() == 140);
  CHECK(seq.dim() == 4);
  CHECK(seq.postures.size() == 140);
  CHECK(seq.values(0, 0) == doctest::Approx(0.5));
  // Offset slicing starts relative to the first record.
  const FeatureSeq tail = seq_from_records(records, 5.0, 5.0);
  CHECK(tail.length() == 140);
  CHECK(tail.values(0, 0) == doctest::Approx(0.5 + 0.001 * 140));
}

TEST_CASE("locate mode names round-trip") {
  CHECK(locate_mode_from_name(locate_mode_name(LocateMode::Nearest)) ==
        LocateMode::Nearest);
  CHECK(locate_mode_from_name(locate_mode_name(LocateMode::WeightedCentroid)) ==
        LocateMode::WeightedCentroid);
  CHECK_THROWS_AS(locate_mode_from_name("triangulate"), std::invalid_argument);
}
