#include "pvgait/recognition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "pvgait/errors.hpp"

namespace pvgait {

namespace {

constexpr Scalar kTimeEps = 1e-9;

Distance score(const FeatureSeq& query, const Fingerprint& entry, const KnnConfig& cfg) {
  switch (cfg.metric) {
    case Metric::Euclid:
      return euclid_seq(query, entry.seq);
    case Metric::Dtw:
      return dtw_full(query, entry.seq);
    case Metric::ModifiedDtw: {
      ModifiedDtwParams params;
      params.thr_prune = cfg.thr_prune;
      return dtw_modified(query, entry.seq, params);
    }
  }
  throw std::invalid_argument("unknown metric");
}

struct Scored {
  Scalar distance;
  std::size_t index;
};

// Finite-distance candidates ordered by (distance, db position); pruned and
// infinite entries are gone. Deterministic for a fixed db order.
std::vector<Scored> nearest(const FeatureSeq& query, const FingerprintDb& db,
                            const KnnConfig& cfg) {
  if (cfg.k < 1) throw std::invalid_argument("k must be at least 1");
  std::vector<Scored> scored;
  for (std::size_t i = 0; i < db.entries.size(); ++i) {
    const Distance d = score(query, db.entries[i], cfg);
    if (!d.is_infinite()) scored.push_back(Scored{d.value(), i});
  }
  if (scored.empty()) {
    throw NoMatchError("every database entry was pruned or the database is empty");
  }
  std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    return a.distance != b.distance ? a.distance < b.distance : a.index < b.index;
  });
  scored.resize(std::min<std::size_t>(scored.size(), static_cast<std::size_t>(cfg.k)));
  return scored;
}

}  // namespace

std::string locate_mode_name(LocateMode m) {
  return m == LocateMode::Nearest ? "nearest" : "centroid";
}

LocateMode locate_mode_from_name(const std::string& name) {
  if (name == "nearest") return LocateMode::Nearest;
  if (name == "centroid") return LocateMode::WeightedCentroid;
  throw std::invalid_argument("unknown locate mode '" + name + "'");
}

IdentifyResult identify(const FeatureSeq& query, const FingerprintDb& db,
                        const KnnConfig& cfg) {
  const std::vector<Scored> top = nearest(query, db, cfg);

  std::map<std::string, std::pair<int, Scalar>> votes;  // label -> (count, sum)
  for (const Scored& s : top) {
    auto& v = votes[db.entries[s.index].subject];
    v.first += 1;
    v.second += s.distance;
  }
  const std::string* best = nullptr;
  for (const auto& [label, v] : votes) {
    if (best == nullptr) {
      best = &label;
      continue;
    }
    const auto& bv = votes.at(*best);
    if (v.first > bv.first || (v.first == bv.first && v.second < bv.second)) {
      best = &label;
    }
  }

  IdentifyResult out;
  out.subject = *best;
  for (const Scored& s : top) out.distances.push_back(s.distance);
  return out;
}

Vec2 localize(const FeatureSeq& query, const FingerprintDb& db, const KnnConfig& cfg) {
  const std::vector<Scored> top = nearest(query, db, cfg);
  if (cfg.locate == LocateMode::Nearest) return db.entries[top.front().index].location;

  // Exact hits pin the answer; otherwise inverse-distance weights.
  Vec2 exact_sum = Vec2::Zero();
  int exact_count = 0;
  for (const Scored& s : top) {
    if (s.distance == 0) {
      exact_sum += db.entries[s.index].location;
      ++exact_count;
    }
  }
  if (exact_count > 0) return exact_sum / exact_count;

  Vec2 weighted = Vec2::Zero();
  Scalar total = 0;
  for (const Scored& s : top) {
    const Scalar w = 1 / s.distance;
    weighted += w * db.entries[s.index].location;
    total += w;
  }
  return weighted / total;
}

FeatureSeq seq_from_records(const std::vector<FeatureRecord>& records, Scalar start,
                            Scalar length) {
  if (records.empty()) throw std::invalid_argument("no records to slice");
  if (!(length > 0)) throw std::invalid_argument("window length must be positive");
  const Scalar t0 = records.front().t;
  std::size_t lo = 0;
  while (lo < records.size() && records[lo].t < t0 + start - kTimeEps) ++lo;
  std::size_t hi = lo;
  while (hi < records.size() && records[hi].t < t0 + start + length - kTimeEps) ++hi;
  if (hi <= lo) throw std::invalid_argument("window contains no records");

  const auto n = static_cast<Eigen::Index>(hi - lo);
  FeatureSeq seq;
  seq.values.resize(kChannelCount, n);
  seq.postures.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    seq.values.col(i) = records[lo + static_cast<std::size_t>(i)].voltages;
    seq.postures[i] = records[lo + static_cast<std::size_t>(i)].posture;
  }
  return seq;
}

FingerprintDb build_db(const std::vector<SessionRecords>& sessions, Scalar window_s,
                       Scalar stride_s, Scalar grid_rate) {
  if (!(window_s > 0) || !(stride_s > 0) || !(grid_rate > 0)) {
    throw std::invalid_argument("window_s, stride_s and grid_rate must be positive");
  }
  FingerprintDb db;
  db.window_s = window_s;
  db.grid_rate = grid_rate;

  for (const SessionRecords& session : sessions) {
    if (session.records.empty()) continue;
    const Scalar t0 = session.records.front().t;
    const Scalar span = session.records.back().t - t0;
    for (long long w = 0;; ++w) {
      const Scalar start = static_cast<Scalar>(w) * stride_s;
      if (start + window_s > span + kTimeEps) break;
      Fingerprint fp;
      fp.seq = seq_from_records(session.records, start, window_s);
      fp.session = session.session;

      const Scalar t_mid = t0 + start + window_s / 2;
      const FeatureRecord* nearest_rec = nullptr;
      for (const FeatureRecord& r : session.records) {
        if (nearest_rec == nullptr ||
            std::abs(r.t - t_mid) < std::abs(nearest_rec->t - t_mid)) {
          nearest_rec = &r;
        }
      }
      if (!nearest_rec->subject.has_value() || !nearest_rec->location.has_value()) {
        throw std::invalid_argument("records lack subject or location labels");
      }
      fp.subject = *nearest_rec->subject;
      fp.location = *nearest_rec->location;
      db.entries.push_back(std::move(fp));
    }
  }
  return db;
}

}  // namespace pvgait
