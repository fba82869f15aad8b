#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "pvgait/recognition.hpp"
#include "pvgait/simulate.hpp"

namespace pvgait {

// Every write here is lossless: numbers are serialized with 17 significant
// digits, so read(write(x)) reproduces x bit for bit. Sample timestamps are
// integer milliseconds by format; all other times are plain seconds.

// CSV with the exact header "t_ms,lt,ls,rt,rs"; timestamps integer
// milliseconds, strictly increasing. Returns the four channels in that order.
std::vector<SampleStream> read_samples(const std::filesystem::path& path,
                                       Scalar nominal_rate = 28.0);
void write_samples(const std::vector<SampleStream>& streams,
                   const std::filesystem::path& path);

void write_steps(const std::vector<StepEvent>& events,
                 const std::filesystem::path& path);
std::vector<StepEvent> read_steps(const std::filesystem::path& path);

void write_truth(const GroundTruth& truth, const std::filesystem::path& path);
GroundTruth read_truth(const std::filesystem::path& path);

// Newline-delimited fingerprint records under a versioned header that also
// carries the window geometry and matching defaults.
void write_db(const FingerprintDb& db, const std::filesystem::path& path,
              const KnnConfig& defaults = {});
FingerprintDb read_db(const std::filesystem::path& path);
KnnConfig read_db_defaults(const std::filesystem::path& path);

// Shortest exact decimal form used across all writers.
std::string format_scalar(Scalar v);

}  // namespace pvgait
