// Copyright 2026 The ModWD Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modwd/runner.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "modwd/error.h"
#include "modwd/metrics.h"
#include "modwd/modwd.h"
#include "modwd/spectrogram_io.h"

namespace modwd {

namespace {

// Runs job(i) for i in [0, count) on `workers` threads.
template <typename Job>
void ParallelFor(std::size_t count, int workers, Job job) {
  const auto threads = static_cast<std::size_t>(std::max(1, workers));
  if (threads == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::min(threads, count); ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) job(i);
    });
  for (std::thread &th : pool) th.join();
}

std::string FormatMetric(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string MethodDirName(const std::string &token,
                          const std::optional<double> &alpha,
                          bool uses_grid) {
  std::string dir = token;
  std::replace(dir.begin(), dir.end(), ':', '_');
  if (uses_grid && alpha) dir += "_a" + FormatNumber(*alpha);
  return dir;
}

}  // namespace

std::string NoisyFileName(const std::string &utterance_id, double snr_db) {
  return utterance_id + "_" + FormatNumber(snr_db) + "dB.wav";
}

MixSummary RunMix(const RunConfig &config) {
  ValidateForMix(config);
  const PcmSignal noise = ReadWav(config.noise_file);
  const std::vector<std::filesystem::path> clean_files = ListCleanFiles(config);
  const std::filesystem::path dir = config.output_dir / "noisy";
  std::filesystem::create_directories(dir);

  const std::size_t cells = clean_files.size() * config.snr_grid.size();
  std::vector<std::optional<RunFailure>> failures(cells);
  ParallelFor(cells, config.jobs, [&](std::size_t i) {
    const auto &path = clean_files[i / config.snr_grid.size()];
    const double snr = config.snr_grid[i % config.snr_grid.size()];
    const std::string name = NoisyFileName(path.stem().string(), snr);
    try {
      WriteWav(dir / name, MixAtSnr(ReadWav(path), noise, snr),
               config.output_format);
    } catch (const std::exception &e) {
      failures[i] = RunFailure{name, e.what()};
    }
  });

  MixSummary summary;
  for (auto &f : failures) {
    if (f)
      summary.failures.push_back(*f);
    else
      ++summary.files_written;
  }
  return summary;
}

EnhanceSummary RunEnhance(const RunConfig &config) {
  ValidateForEnhance(config);
  const PcmSignal noise = ReadWav(config.noise_file);
  const std::vector<std::filesystem::path> clean_files = ListCleanFiles(config);

  struct Variant {
    const MethodToken *method;
    std::optional<double> alpha;
  };
  std::vector<MethodToken> methods;
  for (const std::string &m : config.methods)
    methods.push_back(ParseMethodToken(m, config.stage_defaults));
  std::vector<Variant> variants;
  for (const MethodToken &m : methods) {
    if (m.uses_alpha_grid)
      for (double a : config.alpha_grid) variants.push_back({&m, a});
    else
      variants.push_back({&m, m.fixed_alpha});
  }

  std::vector<PcmSignal> clean;
  std::vector<std::string> ids;
  for (const auto &p : clean_files) {
    clean.push_back(ReadWav(p));
    ids.push_back(p.stem().string());
  }

  const std::size_t n_snr = config.snr_grid.size();
  const std::size_t n_utt = clean.size();
  const std::size_t cells = variants.size() * n_snr * n_utt;
  std::vector<ReportRow> rows(cells);

  const std::filesystem::path enhanced_root = config.output_dir / "enhanced";
  for (const Variant &v : variants)
    std::filesystem::create_directories(
        enhanced_root /
        MethodDirName(v.method->token, v.alpha, v.method->uses_alpha_grid));

  // Cell index order is the report order: variant, snr, utterance.
  ParallelFor(cells, config.jobs, [&](std::size_t i) {
    const Variant &v = variants[i / (n_snr * n_utt)];
    const std::size_t s = (i / n_utt) % n_snr;
    const std::size_t u = i % n_utt;
    ReportRow &row = rows[i];
    row.utterance_id = ids[u];
    row.method = v.method->token;
    row.alpha = v.alpha;
    row.snr_db = config.snr_grid[s];
    row.seg_snr_db = row.lsd_db = std::nan("");
    try {
      const PcmSignal noisy = MixAtSnr(clean[u], noise, row.snr_db);
      const CascadeSpec cascade =
          BindAlpha(*v.method, v.alpha.value_or(config.stage_defaults.alpha));
      const PcmSignal enhanced = Cascade(cascade, noisy);
      const std::filesystem::path out_path =
          enhanced_root /
          MethodDirName(v.method->token, v.alpha, v.method->uses_alpha_grid) /
          NoisyFileName(ids[u], row.snr_db);
      WriteWav(out_path, enhanced, config.output_format);
      const MetricValues m = Evaluate(clean[u], enhanced);
      row.seg_snr_db = m.seg_snr_db;
      row.lsd_db = m.lsd_db;
      if (!config.external_metric.empty())
        row.external_score =
            ExternalScore(config.external_metric, clean_files[u], out_path,
                          config.external_metric_pattern);
    } catch (const std::exception &e) {
      row.error = e.what();
    }
  });

  EnhanceSummary summary;
  summary.rows = std::move(rows);
  for (const ReportRow &row : summary.rows)
    if (!row.error.empty())
      summary.failures.push_back(
          {row.method + "/" + NoisyFileName(row.utterance_id, row.snr_db),
           row.error});

  const std::filesystem::path report = config.ResolvedReportPath();
  if (report.has_parent_path())
    std::filesystem::create_directories(report.parent_path());
  const std::string csv =
      FormatReportCsv(summary.rows, !config.external_metric.empty());
  WriteFileBytes(report, std::span<const unsigned char>(
                             reinterpret_cast<const unsigned char *>(csv.data()),
                             csv.size()));
  return summary;
}

std::string FormatReportCsv(const std::vector<ReportRow> &rows,
                            bool with_external) {
  std::string out = "utterance_id,method,alpha,snr_db,seg_snr_db,lsd_db";
  if (with_external) out += ",external_score";
  out += '\n';
  for (const ReportRow &r : rows) {
    const bool failed = !r.error.empty();
    out += r.utterance_id + ',' + r.method + ',' +
           (r.alpha ? FormatNumber(*r.alpha) : std::string("NA")) + ',' +
           FormatNumber(r.snr_db) + ',' +
           (failed ? "nan" : FormatMetric(r.seg_snr_db)) + ',' +
           (failed ? "nan" : FormatMetric(r.lsd_db));
    if (with_external)
      out += ',' + (r.external_score && !failed ? FormatMetric(*r.external_score)
                                                : std::string("nan"));
    out += '\n';
  }
  return out;
}

std::vector<ReportRow> ParseReportCsv(const std::string &text) {
  std::vector<ReportRow> rows;
  std::stringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("utterance_id,method,alpha", 0) != 0)
    throw Error(ErrorCode::kParseFailure, "missing report header");
  const bool with_external = line.find("external_score") != std::string::npos;
  auto number = [](const std::string &s) {
    return s == "nan" ? std::nan("") : std::stod(s);
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) f.push_back(field);
    if (f.size() != (with_external ? 7u : 6u))
      throw Error(ErrorCode::kParseFailure, "bad report line: " + line);
    try {
      ReportRow r;
      r.utterance_id = f[0];
      r.method = f[1];
      if (f[2] != "NA") r.alpha = std::stod(f[2]);
      r.snr_db = std::stod(f[3]);
      r.seg_snr_db = number(f[4]);
      r.lsd_db = number(f[5]);
      if (with_external) r.external_score = number(f[6]);
      if (std::isnan(r.seg_snr_db)) r.error = "failed";
      rows.push_back(std::move(r));
    } catch (const std::logic_error &) {
      throw Error(ErrorCode::kParseFailure, "bad number in: " + line);
    }
  }
  return rows;
}

std::string SummarizeReport(const std::vector<ReportRow> &rows) {
  struct Acc {
    double seg = 0, lsd = 0, ext = 0;
    std::size_t n = 0, n_ext = 0, failed = 0;
  };
  // Keep first-seen method order; sort alpha and snr numerically.
  std::vector<std::string> method_order;
  std::map<std::tuple<std::size_t, double, double>, Acc> table;
  for (const ReportRow &r : rows) {
    auto it = std::find(method_order.begin(), method_order.end(), r.method);
    const std::size_t mi = static_cast<std::size_t>(it - method_order.begin());
    if (it == method_order.end()) method_order.push_back(r.method);
    Acc &a = table[{mi, r.alpha.value_or(-1.0), r.snr_db}];
    if (!r.error.empty()) {
      ++a.failed;
      continue;
    }
    a.seg += r.seg_snr_db;
    a.lsd += r.lsd_db;
    ++a.n;
    if (r.external_score && std::isfinite(*r.external_score)) {
      a.ext += *r.external_score;
      ++a.n_ext;
    }
  }
  std::ostringstream out;
  out << std::left << std::setw(24) << "method" << std::setw(8) << "alpha"
      << std::setw(8) << "snr" << std::right << std::setw(12) << "segSNR"
      << std::setw(10) << "LSD" << std::setw(10) << "ext" << std::setw(6)
      << "n" << '\n';
  out << std::fixed << std::setprecision(3);
  for (const auto &[key, a] : table) {
    const auto &[mi, alpha, snr] = key;
    out << std::left << std::setw(24) << method_order[mi] << std::setw(8)
        << (alpha < 0 ? std::string("NA") : FormatNumber(alpha)) << std::setw(8)
        << FormatNumber(snr) << std::right;
    if (a.n) {
      out << std::setw(12) << a.seg / a.n << std::setw(10) << a.lsd / a.n;
    } else {
      out << std::setw(12) << "nan" << std::setw(10) << "nan";
    }
    if (a.n_ext)
      out << std::setw(10) << a.ext / a.n_ext;
    else
      out << std::setw(10) << "-";
    out << std::setw(6) << a.n;
    if (a.failed) out << "  (" << a.failed << " failed)";
    out << '\n';
  }
  return out.str();
}

std::filesystem::path PhasePathFor(const std::filesystem::path &payload) {
  return std::filesystem::path(payload.string() + ".phase");
}

CompressResult CompressWav(const std::filesystem::path &input,
                           const std::filesystem::path &payload,
                           const FrameParams &params,
                           const BiorFilterBank &bank) {
  const PcmSignal signal = ReadWav(input);
  const MagPhase spec = ToMagPhase(Stft(signal, params));
  const WaveletSpectrogram ws = DecomposeRows(spec.magnitude, bank, params);
  const std::vector<unsigned char> bytes = SerializeApproximationPayload(ws);
  WriteFileBytes(payload, bytes);
  WriteFileBytes(PhasePathFor(payload),
                 EncodePhaseRecord({spec.phase, params, spec.sample_rate_hz}));
  return {bytes.size(), PayloadFloatCount(ws),
          spec.num_frames() * spec.num_bins()};
}

PcmSignal DecompressSignal(std::span<const unsigned char> payload,
                           std::span<const unsigned char> phase,
                           const BiorFilterBank &bank) {
  PhaseRecord record = DecodePhaseRecord(phase);
  const WaveletSpectrogram ws =
      DeserializeApproximationPayload(payload, bank, record.params);
  if (ws.num_frames() != record.phase.rows() ||
      ws.num_bins() != record.phase.cols())
    throw Error(ErrorCode::kVersionError,
                "payload and phase record describe different spectrograms");
  MagPhase spec;
  spec.params = record.params;
  spec.sample_rate_hz = record.sample_rate_hz;
  spec.magnitude = ReconstructRows(ws, bank);
  spec.phase = std::move(record.phase);
  return Istft(spec);
}

void DecompressToWav(const std::filesystem::path &payload,
                     const std::filesystem::path &output,
                     const BiorFilterBank &bank, WavSampleFormat format) {
  const std::vector<unsigned char> bytes = ReadFileBytes(payload);
  const std::vector<unsigned char> phase = ReadFileBytes(PhasePathFor(payload));
  WriteWav(output, DecompressSignal(bytes, phase, bank), format);
}

}  // namespace modwd
