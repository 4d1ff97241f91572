// Copyright 2026 The ModWD Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modwd/metrics.h"

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <regex>
#include <string>

#include "modwd/error.h"
#include "modwd/stft.h"

namespace modwd {

namespace {

// Trims both signals to their common length after checking the contract.
std::size_t AlignedLength(const PcmSignal &clean, const PcmSignal &processed) {
  if (clean.sample_rate_hz != processed.sample_rate_hz)
    throw Error(ErrorCode::kInvalidArgument, "sample rates differ");
  const std::size_t frame =
      static_cast<std::size_t>(std::lround(0.02 * clean.sample_rate_hz));
  const std::size_t a = clean.size(), b = processed.size();
  const std::size_t diff = a > b ? a - b : b - a;
  if (diff > frame)
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(a) + " vs " + std::to_string(b) + " samples");
  return std::min(a, b);
}

PcmSignal Head(const PcmSignal &s, std::size_t n) {
  PcmSignal out;
  out.sample_rate_hz = s.sample_rate_hz;
  out.samples.assign(s.samples.begin(),
                     s.samples.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

}  // namespace

double SegmentalSnr(const PcmSignal &clean, const PcmSignal &processed) {
  const std::size_t n = AlignedLength(clean, processed);
  const std::size_t frame =
      static_cast<std::size_t>(std::lround(0.02 * clean.sample_rate_hz));
  double total = 0.0;
  std::size_t counted = 0;
  for (std::size_t start = 0; start + frame <= n; start += frame) {
    double signal = 0.0, error = 0.0;
    for (std::size_t i = start; i < start + frame; ++i) {
      const double c = clean.samples[i];
      const double e = c - processed.samples[i];
      signal += c * c;
      error += e * e;
    }
    if (signal < kSegSnrSilenceEnergy) continue;
    double snr = error > 0.0 ? 10.0 * std::log10(signal / error) : kSegSnrMaxDb;
    total += std::clamp(snr, kSegSnrMinDb, kSegSnrMaxDb);
    ++counted;
  }
  if (counted == 0)
    throw Error(ErrorCode::kAllFramesSilent, "no frame carries clean energy");
  return total / static_cast<double>(counted);
}

double LogSpectralDistance(const PcmSignal &clean, const PcmSignal &processed) {
  const std::size_t n = AlignedLength(clean, processed);
  const FrameParams params;
  MagPhase c = ToMagPhase(Stft(Head(clean, n), params));
  MagPhase p = ToMagPhase(Stft(Head(processed, n), params));
  const auto &cm = c.magnitude.data();
  const auto &pm = p.magnitude.data();
  double acc = 0.0;
  for (std::size_t i = 0; i < cm.size(); ++i) {
    const double d = 20.0 * std::log10((cm[i] + kLsdEpsilon) /
                                       (pm[i] + kLsdEpsilon));
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(cm.size()));
}

MetricValues Evaluate(const PcmSignal &clean, const PcmSignal &processed) {
  return {SegmentalSnr(clean, processed),
          LogSpectralDistance(clean, processed)};
}

void Summarize(QualityReport *report) {
  MetricValues mean;
  for (const auto &[snr, values] : report->per_snr) {
    mean.seg_snr_db += values.seg_snr_db;
    mean.lsd_db += values.lsd_db;
  }
  if (!report->per_snr.empty()) {
    mean.seg_snr_db /= static_cast<double>(report->per_snr.size());
    mean.lsd_db /= static_cast<double>(report->per_snr.size());
  }
  report->overall = mean;
}

namespace {

std::string ShellQuote(const std::string &s) {
  std::string out = "'";
  for (char ch : s) {
    if (ch == '\'')
      out += "'\\''";
    else
      out += ch;
  }
  return out + "'";
}

void ReplaceAll(std::string *s, const std::string &from, const std::string &to) {
  for (std::size_t pos = s->find(from); pos != std::string::npos;
       pos = s->find(from, pos + to.size()))
    s->replace(pos, from.size(), to);
}

}  // namespace

double ExternalScore(const std::string &command_template,
                     const std::filesystem::path &clean,
                     const std::filesystem::path &processed,
                     const std::string &pattern) {
  std::string command = command_template;
  ReplaceAll(&command, "{clean}", ShellQuote(clean.string()));
  ReplaceAll(&command, "{processed}", ShellQuote(processed.string()));

  FILE *pipe = popen(command.c_str(), "r");
  if (pipe == nullptr)
    throw Error(ErrorCode::kProcessFailure, "cannot start: " + command);
  std::string output;
  char buffer[4096];
  std::size_t got;
  while ((got = std::fread(buffer, 1, sizeof(buffer), pipe)) > 0)
    output.append(buffer, got);
  const int status = pclose(pipe);
  if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0)
    throw Error(ErrorCode::kProcessFailure,
                "scorer exited with status " + std::to_string(status) + ": " +
                    command);

  std::smatch match;
  const std::regex re(pattern);
  if (!std::regex_search(output, match, re))
    throw Error(ErrorCode::kParseFailure, "no score in output: " + output);
  const std::string text = match.size() > 1 && pattern != kDefaultScorePattern &&
                                   match[1].matched
                               ? match[1].str()
                               : match[0].str();
  try {
    std::size_t used = 0;
    double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception &) {
    throw Error(ErrorCode::kParseFailure, "cannot parse '" + text + "'");
  }
}

}  // namespace modwd
