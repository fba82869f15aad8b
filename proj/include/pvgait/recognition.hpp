#pragma once

#include <string>
#include <vector>

#include "pvgait/gait.hpp"
#include "pvgait/similarity.hpp"

namespace pvgait {

// One reference window with its labels.
struct Fingerprint {
  FeatureSeq seq;
  std::string subject;
  Vec2 location = Vec2::Zero();
  std::string session;
};

struct FingerprintDb {
  std::vector<Fingerprint> entries;
  Scalar window_s = 5.0;
  Scalar grid_rate = 28.0;
};

enum class LocateMode { Nearest, WeightedCentroid };

std::string locate_mode_name(LocateMode m);  // "nearest", "centroid"
LocateMode locate_mode_from_name(const std::string& name);

struct KnnConfig {
  int k = 1;
  Metric metric = Metric::ModifiedDtw;
  Scalar thr_prune = 0.1;
  LocateMode locate = LocateMode::Nearest;
};

struct IdentifyResult {
  std::string subject;
  std::vector<Scalar> distances;  // the k nearest, ascending
};

// Majority vote over the k nearest finite-distance entries; vote ties fall to
// the label with the smaller summed distance. Every candidate infinite (or an
// empty db) raises NoMatchError.
IdentifyResult identify(const FeatureSeq& query, const FingerprintDb& db,
                        const KnnConfig& cfg);

// Nearest returns the best entry's location; WeightedCentroid blends the k
// nearest by inverse distance (an exact-distance-zero neighbor wins outright).
Vec2 localize(const FeatureSeq& query, const FingerprintDb& db, const KnnConfig& cfg);

// One labeled recording session, already run through the gait pipeline.
struct SessionRecords {
  std::string session;
  std::vector<FeatureRecord> records;
};

// Slices each session into window_s-long windows every stride_s and labels
// them: subject from the records, location from the record nearest to the
// window midpoint. Sessions shorter than one window contribute nothing.
FingerprintDb build_db(const std::vector<SessionRecords>& sessions, Scalar window_s,
                       Scalar stride_s, Scalar grid_rate);

// The records' voltages and phases between [start, start + length) as one
// comparable sequence; start is an offset from the first record.
FeatureSeq seq_from_records(const std::vector<FeatureRecord>& records, Scalar start,
                            Scalar length);

}  // namespace pvgait
