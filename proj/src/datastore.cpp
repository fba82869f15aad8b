#include "pvgait/datastore.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "pvgait/errors.hpp"

namespace pvgait {

namespace {

constexpr const char* kSamplesHeader = "t_ms,lt,ls,rt,rs";
constexpr const char* kStepsMagic = "pvgait-steps";
constexpr const char* kTruthMagic = "pvgait-truth";
constexpr const char* kDbMagic = "pvgait-db";
constexpr int kFormatVersion = 1;

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

Scalar parse_scalar(const std::string& token, const std::filesystem::path& path,
                    std::size_t line) {
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (token.empty() || end != token.c_str() + token.size() || !std::isfinite(v)) {
    throw ParseError(path.string(), line, "expected a number, got '" + token + "'");
  }
  return v;
}

long long parse_int(const std::string& token, const std::filesystem::path& path,
                    std::size_t line) {
  char* end = nullptr;
  const long long v = std::strtoll(token.c_str(), &end, 10);
  if (token.empty() || end != token.c_str() + token.size()) {
    throw ParseError(path.string(), line, "expected an integer, got '" + token + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t from = 0;
  while (true) {
    const std::size_t to = s.find(sep, from);
    if (to == std::string::npos) {
      out.push_back(s.substr(from));
      return out;
    }
    out.push_back(s.substr(from, to - from));
    from = to + 1;
  }
}

void check_version(const std::string& line, const char* magic,
                   const std::filesystem::path& path) {
  const std::vector<std::string> parts = split(line, ' ');
  if (parts.size() != 2 || parts[0] != magic) {
    throw ParseError(path.string(), 1,
                     std::string("expected a '") + magic + "' header");
  }
  if (parts[1] != std::to_string(kFormatVersion)) {
    throw VersionError("'" + path.string() + "' declares " + magic + " version " +
                       parts[1] + "; this build reads version " +
                       std::to_string(kFormatVersion));
  }
}

std::string label_token(const std::string& s, const char* what) {
  if (s.empty() || s.find_first_of("\t\n\r ,") != std::string::npos) {
    throw std::invalid_argument(std::string(what) +
                                " must be non-empty and free of separators");
  }
  return s;
}

ArrayX parse_scalar_list(const std::string& token, Eigen::Index expected,
                         const std::filesystem::path& path, std::size_t line) {
  const std::vector<std::string> parts = split(token, ',');
  if (static_cast<Eigen::Index>(parts.size()) != expected) {
    throw ParseError(path.string(), line,
                     "expected " + std::to_string(expected) + " values, got " +
                         std::to_string(parts.size()));
  }
  ArrayX out(expected);
  for (Eigen::Index i = 0; i < expected; ++i) {
    out[i] = parse_scalar(parts[static_cast<std::size_t>(i)], path, line);
  }
  return out;
}

std::string join_scalars(const ArrayX& values) {
  std::string out;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += format_scalar(values[i]);
  }
  return out;
}

std::string origin_label(StepOrigin o) {
  return o == StepOrigin::Detected ? "detected" : "complemented";
}

StepOrigin origin_from_label(const std::string& s, const std::filesystem::path& path,
                             std::size_t line) {
  if (s == "detected") return StepOrigin::Detected;
  if (s == "complemented") return StepOrigin::Complemented;
  throw ParseError(path.string(), line, "unknown step origin '" + s + "'");
}

}  // namespace

std::string format_scalar(Scalar v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<SampleStream> read_samples(const std::filesystem::path& path,
                                       Scalar nominal_rate) {
  std::ifstream in = open_in(path);
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line) || ++line_no != 1 || line != kSamplesHeader) {
    throw ParseError(path.string(), 1,
                     std::string("expected header '") + kSamplesHeader + "'");
  }

  std::vector<SampleStream> streams(kChannelCount);
  for (int c = 0; c < kChannelCount; ++c) {
    streams[c].channel = channel_at(c);
    streams[c].nominal_rate = nominal_rate;
  }
  long long prev_ms = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> fields = split(line, ',');
    if (fields.size() != 1 + kChannelCount) {
      throw ParseError(path.string(), line_no,
                       "expected 5 comma-separated fields, got " +
                           std::to_string(fields.size()));
    }
    const long long ms = parse_int(fields[0], path, line_no);
    if (!first && ms <= prev_ms) {
      throw ParseError(path.string(), line_no,
                       "timestamps must be strictly increasing");
    }
    prev_ms = ms;
    first = false;
    const Scalar t = static_cast<Scalar>(ms) / 1000;
    for (int c = 0; c < kChannelCount; ++c) {
      streams[c].samples.push_back(
          Sample{t, parse_scalar(fields[static_cast<std::size_t>(c) + 1], path, line_no)});
    }
  }
  return streams;
}

void write_samples(const std::vector<SampleStream>& streams,
                   const std::filesystem::path& path) {
  if (streams.size() != kChannelCount) {
    throw std::invalid_argument("samples file needs exactly the four channels");
  }
  const std::size_t n = streams[0].samples.size();
  for (int c = 0; c < kChannelCount; ++c) {
    const int idx = channel_index(streams[static_cast<std::size_t>(c)].channel);
    if (idx != c) {
      throw std::invalid_argument("streams must arrive in lt, ls, rt, rs order");
    }
    if (streams[static_cast<std::size_t>(c)].samples.size() != n) {
      throw std::invalid_argument("channels carry different sample counts");
    }
  }

  std::ofstream out = open_out(path);
  out << kSamplesHeader << "\n";
  for (std::size_t i = 0; i < n; ++i) {
    const Scalar t = streams[0].samples[i].t;
    const auto ms = std::llround(t * 1000);
    if (std::abs(t * 1000 - static_cast<Scalar>(ms)) > 1e-6) {
      throw std::invalid_argument(
          "sample timestamps must sit on integer milliseconds");
    }
    out << ms;
    for (int c = 0; c < kChannelCount; ++c) {
      const Sample& s = streams[static_cast<std::size_t>(c)].samples[i];
      if (s.t != t) {
        throw std::invalid_argument("channels disagree on sample timestamps");
      }
      out << ',' << format_scalar(s.v);
    }
    out << "\n";
  }
}

void write_steps(const std::vector<StepEvent>& events,
                 const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << kStepsMagic << " " << kFormatVersion << "\n";
  out << "t_s,foot,origin\n";
  for (const StepEvent& e : events) {
    out << format_scalar(e.t) << ',' << foot_label(e.foot) << ','
        << origin_label(e.origin) << "\n";
  }
}

std::vector<StepEvent> read_steps(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path.string(), 1, "empty file");
  check_version(line, kStepsMagic, path);
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != "t_s,foot,origin") {
    throw ParseError(path.string(), 2, "expected header 't_s,foot,origin'");
  }
  ++line_no;

  std::vector<StepEvent> events;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> fields = split(line, ',');
    if (fields.size() != 3) {
      throw ParseError(path.string(), line_no, "expected 3 fields");
    }
    StepEvent e;
    e.t = parse_scalar(fields[0], path, line_no);
    if (fields[1] != "L" && fields[1] != "R") {
      throw ParseError(path.string(), line_no, "unknown foot '" + fields[1] + "'");
    }
    e.foot = foot_from_label(fields[1]);
    e.origin = origin_from_label(fields[2], path, line_no);
    events.push_back(e);
  }
  return events;
}

void write_truth(const GroundTruth& truth, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << kTruthMagic << " " << kFormatVersion << "\n";
  out << "subject " << label_token(truth.subject, "subject") << "\n";
  for (const StepEvent& e : truth.steps) {
    out << "step " << format_scalar(e.t) << " " << foot_label(e.foot) << "\n";
  }
  for (Eigen::Index i = 0; i < truth.track.t.size(); ++i) {
    out << "track " << format_scalar(truth.track.t[i]) << " "
        << format_scalar(truth.track.xy(0, i)) << " "
        << format_scalar(truth.track.xy(1, i)) << "\n";
  }
}

GroundTruth read_truth(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path.string(), 1, "empty file");
  check_version(line, kTruthMagic, path);

  GroundTruth truth;
  std::vector<Scalar> ts;
  std::vector<Vec2> xys;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> fields = split(line, ' ');
    if (fields[0] == "subject" && fields.size() == 2) {
      truth.subject = fields[1];
    } else if (fields[0] == "step" && fields.size() == 3) {
      if (fields[2] != "L" && fields[2] != "R") {
        throw ParseError(path.string(), line_no, "unknown foot '" + fields[2] + "'");
      }
      StepEvent e;
      e.t = parse_scalar(fields[1], path, line_no);
      e.foot = foot_from_label(fields[2]);
      truth.steps.push_back(e);
    } else if (fields[0] == "track" && fields.size() == 4) {
      ts.push_back(parse_scalar(fields[1], path, line_no));
      xys.emplace_back(parse_scalar(fields[2], path, line_no),
                       parse_scalar(fields[3], path, line_no));
    } else {
      throw ParseError(path.string(), line_no, "unrecognized record '" + line + "'");
    }
  }
  truth.track.t.resize(static_cast<Eigen::Index>(ts.size()));
  truth.track.xy.resize(2, static_cast<Eigen::Index>(ts.size()));
  for (std::size_t i = 0; i < ts.size(); ++i) {
    truth.track.t[static_cast<Eigen::Index>(i)] = ts[i];
    truth.track.xy.col(static_cast<Eigen::Index>(i)) = xys[i];
  }
  return truth;
}

void write_db(const FingerprintDb& db, const std::filesystem::path& path,
              const KnnConfig& defaults) {
  std::ofstream out = open_out(path);
  out << kDbMagic << " " << kFormatVersion << "\n";
  out << "window_s=" << format_scalar(db.window_s)
      << " grid_rate=" << format_scalar(db.grid_rate)
      << " metric=" << metric_name(defaults.metric) << " k=" << defaults.k
      << " thr_prune=" << format_scalar(defaults.thr_prune)
      << " locate=" << locate_mode_name(defaults.locate) << "\n";
  for (const Fingerprint& fp : db.entries) {
    if (fp.seq.postures.size() != fp.seq.length() ||
        fp.seq.dim() != kChannelCount) {
      throw std::invalid_argument(
          "db entries need 4-channel values and one posture per column");
    }
    out << "entry\t" << label_token(fp.subject, "subject") << '\t'
        << label_token(fp.session, "session") << '\t' << format_scalar(fp.location.x())
        << '\t' << format_scalar(fp.location.y()) << '\t' << fp.seq.length() << '\t'
        << join_scalars(fp.seq.postures);
    for (int c = 0; c < kChannelCount; ++c) {
      out << '\t' << join_scalars(fp.seq.values.row(c).transpose().array());
    }
    out << "\n";
  }
}

namespace {

KnnConfig parse_db_header(const std::string& line, FingerprintDb* db,
                          const std::filesystem::path& path) {
  KnnConfig defaults;
  for (const std::string& part : split(line, ' ')) {
    const std::size_t eq = part.find('=');
    if (eq == std::string::npos) {
      throw ParseError(path.string(), 2, "malformed header field '" + part + "'");
    }
    const std::string key = part.substr(0, eq);
    const std::string value = part.substr(eq + 1);
    if (key == "window_s") {
      db->window_s = parse_scalar(value, path, 2);
    } else if (key == "grid_rate") {
      db->grid_rate = parse_scalar(value, path, 2);
    } else if (key == "metric") {
      defaults.metric = metric_from_name(value);
    } else if (key == "k") {
      defaults.k = static_cast<int>(parse_int(value, path, 2));
    } else if (key == "thr_prune") {
      defaults.thr_prune = parse_scalar(value, path, 2);
    } else if (key == "locate") {
      defaults.locate = locate_mode_from_name(value);
    } else {
      throw ParseError(path.string(), 2, "unknown header field '" + key + "'");
    }
  }
  return defaults;
}

}  // namespace

FingerprintDb read_db(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path.string(), 1, "empty file");
  check_version(line, kDbMagic, path);
  if (!std::getline(in, line)) {
    throw ParseError(path.string(), 2, "missing db header line");
  }
  FingerprintDb db;
  parse_db_header(line, &db, path);

  std::size_t line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> fields = split(line, '\t');
    if (fields.size() != 7 + kChannelCount || fields[0] != "entry") {
      throw ParseError(path.string(), line_no, "malformed fingerprint record");
    }
    Fingerprint fp;
    fp.subject = fields[1];
    fp.session = fields[2];
    fp.location = Vec2(parse_scalar(fields[3], path, line_no),
                       parse_scalar(fields[4], path, line_no));
    const long long n = parse_int(fields[5], path, line_no);
    if (n < 1) throw ParseError(path.string(), line_no, "entry length must be >= 1");
    fp.seq.postures = parse_scalar_list(fields[6], static_cast<Eigen::Index>(n), path,
                                        line_no);
    fp.seq.values.resize(kChannelCount, static_cast<Eigen::Index>(n));
    for (int c = 0; c < kChannelCount; ++c) {
      fp.seq.values.row(c) = parse_scalar_list(fields[static_cast<std::size_t>(c) + 7],
                                               static_cast<Eigen::Index>(n), path,
                                               line_no)
                                 .transpose();
    }
    db.entries.push_back(std::move(fp));
  }
  return db;
}

KnnConfig read_db_defaults(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path.string(), 1, "empty file");
  check_version(line, kDbMagic, path);
  if (!std::getline(in, line)) {
    throw ParseError(path.string(), 2, "missing db header line");
  }
  FingerprintDb db;
  return parse_db_header(line, &db, path);
}

}  // namespace pvgait
