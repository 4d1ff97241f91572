// Copyright 2026 The ModWD Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef MODWD_CONFIG_H_
#define MODWD_CONFIG_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "modwd/enhance.h"
#include "modwd/metrics.h"
#include "modwd/signal_io.h"

namespace modwd {

// Batch run configuration. Loaded from a flat "key = value" text file in
// which list values are comma-separated and '#' starts a comment. Every
// per-stage constant is exposed through `stage_defaults`.
struct RunConfig {
  std::filesystem::path clean_dir;
  std::string clean_pattern = "*.wav";
  std::filesystem::path noise_file;
  std::vector<double> snr_grid = {0, 5, 10, 15, 20};
  std::vector<std::string> methods = {"noisy", "modwd"};
  std::vector<double> alpha_grid = {0, 0.25, 0.5, 0.75, 1};
  std::filesystem::path output_dir = "modwd_out";
  std::filesystem::path report_path;  // empty: <output_dir>/report.csv
  int jobs = 1;
  std::string external_metric;  // command template, empty disables
  std::string external_metric_pattern = kDefaultScorePattern;
  WavSampleFormat output_format = WavSampleFormat::kPcm16;
  EnhancerSpec stage_defaults;

  std::filesystem::path ResolvedReportPath() const;
};

// Applies one key/value pair; throws ConfigError on unknown keys or values
// that do not parse.
void ApplyConfigEntry(RunConfig *config, const std::string &key,
                      const std::string &value);

// Reads a config file on top of `config`.
void LoadConfigFile(const std::filesystem::path &path, RunConfig *config);
void LoadConfigText(const std::string &text, RunConfig *config);

std::vector<double> ParseNumberList(const std::string &text);
std::vector<std::string> ParseStringList(const std::string &text);

// A method token is a '-'-separated list of stages applied left to right,
// e.g. "modwd:0.25-ss" or "logstsa-modwd:0". Stage names: noisy, ss, wf,
// stsa, logstsa, modwd[:alpha]. A bare "modwd" takes its alpha from the
// alpha grid.
struct MethodToken {
  std::string token;  // normalized (lower case, no spaces)
  CascadeSpec cascade;
  bool uses_alpha_grid = false;
  std::optional<double> fixed_alpha;  // alpha of explicit modwd:<a> stages
};

MethodToken ParseMethodToken(const std::string &token,
                             const EnhancerSpec &defaults = {});

// Copy of `method.cascade` with every grid-driven ModWD stage set to alpha.
CascadeSpec BindAlpha(const MethodToken &method, double alpha);

// Checks grids, method tokens and that the referenced inputs exist. Throws
// ConfigError.
void ValidateForMix(const RunConfig &config);
void ValidateForEnhance(const RunConfig &config);

// Clean utterances matched by clean_dir/clean_pattern, sorted by name.
std::vector<std::filesystem::path> ListCleanFiles(const RunConfig &config);

// Shortest round-trip decimal text, e.g. 0.25, 10, -2.5.
std::string FormatNumber(double value);

}  // namespace modwd

#endif  // MODWD_CONFIG_H_
