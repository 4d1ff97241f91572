// Copyright 2026 The ModWD Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modwd/config.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "modwd/error.h"

namespace modwd {

namespace {

std::string Trim(const std::string &s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string Lower(std::string s) {
  for (char &c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

double ParseNumber(const std::string &text) {
  const std::string t = Trim(text);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() ||
      !std::isfinite(value))
    throw Error(ErrorCode::kConfigError, "not a number: '" + text + "'");
  return value;
}

int ParseInt(const std::string &text) {
  const double v = ParseNumber(text);
  if (v != std::floor(v) || std::abs(v) > 1e9)
    throw Error(ErrorCode::kConfigError, "not an integer: '" + text + "'");
  return static_cast<int>(v);
}

// Simple glob: '*' matches any run, '?' one character.
bool WildcardMatch(const std::string &pattern, const std::string &name) {
  std::size_t p = 0, n = 0, star = std::string::npos, mark = 0;
  while (n < name.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == name[n])) {
      ++p;
      ++n;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = n;
    } else if (star != std::string::npos) {
      p = star + 1;
      n = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

using Setter = std::function<void(RunConfig *, const std::string &)>;

const std::map<std::string, Setter> &Setters() {
  static const std::map<std::string, Setter> setters = {
      {"clean_dir", [](RunConfig *c, const std::string &v) { c->clean_dir = v; }},
      {"clean_pattern",
       [](RunConfig *c, const std::string &v) { c->clean_pattern = v; }},
      {"noise_file", [](RunConfig *c, const std::string &v) { c->noise_file = v; }},
      {"snr_grid",
       [](RunConfig *c, const std::string &v) { c->snr_grid = ParseNumberList(v); }},
      {"methods",
       [](RunConfig *c, const std::string &v) { c->methods = ParseStringList(v); }},
      {"alpha_grid",
       [](RunConfig *c, const std::string &v) { c->alpha_grid = ParseNumberList(v); }},
      {"output_dir", [](RunConfig *c, const std::string &v) { c->output_dir = v; }},
      {"report_path", [](RunConfig *c, const std::string &v) { c->report_path = v; }},
      {"jobs", [](RunConfig *c, const std::string &v) { c->jobs = ParseInt(v); }},
      {"external_metric",
       [](RunConfig *c, const std::string &v) { c->external_metric = v; }},
      {"external_metric_pattern",
       [](RunConfig *c, const std::string &v) { c->external_metric_pattern = v; }},
      {"output_format",
       [](RunConfig *c, const std::string &v) {
         const std::string f = Lower(v);
         if (f == "pcm16")
           c->output_format = WavSampleFormat::kPcm16;
         else if (f == "float32")
           c->output_format = WavSampleFormat::kFloat32;
         else
           throw Error(ErrorCode::kConfigError, "output_format: " + v);
       }},
      {"frame_len",
       [](RunConfig *c, const std::string &v) {
         c->stage_defaults.frame_params.frame_len = ParseInt(v);
       }},
      {"hop",
       [](RunConfig *c, const std::string &v) {
         c->stage_defaults.frame_params.hop = ParseInt(v);
       }},
      {"fft_size",
       [](RunConfig *c, const std::string &v) {
         c->stage_defaults.frame_params.fft_size = ParseInt(v);
       }},
      {"window",
       [](RunConfig *c, const std::string &v) {
         const std::string w = Lower(v);
         if (w == "hamming")
           c->stage_defaults.frame_params.window = WindowKind::kHamming;
         else if (w == "hamming_periodic")
           c->stage_defaults.frame_params.window = WindowKind::kHammingPeriodic;
         else
           throw Error(ErrorCode::kConfigError, "window: " + v);
       }},
      {"noise_frames",
       [](RunConfig *c, const std::string &v) {
         const int n = ParseInt(v);
         if (n < 1) throw Error(ErrorCode::kConfigError, "noise_frames < 1");
         c->stage_defaults.noise_frames = static_cast<std::size_t>(n);
       }},
      {"modwd.alpha",
       [](RunConfig *c, const std::string &v) {
         c->stage_defaults.alpha = ParseNumber(v);
       }},
      {"dwt.extension",
       [](RunConfig *c, const std::string &v) {
         const std::string e = Lower(v);
         if (e == "symmetric")
           c->stage_defaults.extension = Extension::kSymmetric;
         else if (e == "zero")
           c->stage_defaults.extension = Extension::kZero;
         else
           throw Error(ErrorCode::kConfigError, "dwt.extension: " + v);
       }},
      {"ss.num_bands",
       [](RunConfig *c, const std::string &v) {
         c->stage_defaults.ss.num_bands = ParseInt(v);
       }},
      {"ss.beta_max",
       [](RunConfig *c, const std::string &v) {
         c->stage_defaults.ss.beta_max = ParseNumber(v);
       }},
      {"ss.beta_min",
       [](RunConfig *c, const std::string &v) {
         c->stage_defaults.ss.beta_min = ParseNumber(v);
       }},
      {"ss.snr_low_db",
       [](RunConfig *c, const std::string &v) {
         c->stage_defaults.ss.snr_low_db = ParseNumber(v);
       }},
      {"ss.snr_high_db",
       [](RunConfig *c, const std::string &v) {
         c->stage_defaults.ss.snr_high_db = ParseNumber(v);
       }},
      {"ss.delta_low",
       [](RunConfig *c, const std::string &v) {
         c->stage_defaults.ss.delta_low = ParseNumber(v);
       }},
      {"ss.delta_mid",
       [](RunConfig *c, const std::string &v) {
         c->stage_defaults.ss.delta_mid = ParseNumber(v);
       }},
      {"ss.delta_high",
       [](RunConfig *c, const std::string &v) {
         c->stage_defaults.ss.delta_high = ParseNumber(v);
       }},
      {"ss.spectral_floor",
       [](RunConfig *c, const std::string &v) {
         c->stage_defaults.ss.spectral_floor = ParseNumber(v);
       }},
      {"dd.a_dd",
       [](RunConfig *c, const std::string &v) {
         c->stage_defaults.dd.a_dd = ParseNumber(v);
       }},
      {"dd.gain_floor",
       [](RunConfig *c, const std::string &v) {
         c->stage_defaults.dd.gain_floor = ParseNumber(v);
       }},
  };
  return setters;
}

void CheckAlpha(double alpha, const std::string &context) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw Error(ErrorCode::kConfigError,
                context + ": alpha " + FormatNumber(alpha) +
                    " outside [0, 1]");
}

}  // namespace

std::filesystem::path RunConfig::ResolvedReportPath() const {
  return report_path.empty() ? output_dir / "report.csv" : report_path;
}

std::string FormatNumber(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::vector<double> ParseNumberList(const std::string &text) {
  std::vector<double> out;
  for (const std::string &item : ParseStringList(text))
    out.push_back(ParseNumber(item));
  return out;
}

std::vector<std::string> ParseStringList(const std::string &text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void ApplyConfigEntry(RunConfig *config, const std::string &key,
                      const std::string &value) {
  auto it = Setters().find(Lower(Trim(key)));
  if (it == Setters().end())
    throw Error(ErrorCode::kConfigError, "unknown key '" + key + "'");
  it->second(config, Trim(value));
}

void LoadConfigText(const std::string &text, RunConfig *config) {
  std::stringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    if (Trim(line).empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::kConfigError,
                  "line " + std::to_string(line_no) + ": expected key = value");
    try {
      ApplyConfigEntry(config, line.substr(0, eq), line.substr(eq + 1));
    } catch (const Error &e) {
      throw Error(ErrorCode::kConfigError,
                  "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void LoadConfigFile(const std::filesystem::path &path, RunConfig *config) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::kConfigError, "cannot read config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  LoadConfigText(buffer.str(), config);
}

MethodToken ParseMethodToken(const std::string &token,
                             const EnhancerSpec &defaults) {
  MethodToken out;
  for (char c : token)
    if (!std::isspace(static_cast<unsigned char>(c)))
      out.token += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (out.token.empty())
    throw Error(ErrorCode::kConfigError, "empty method token");

  std::stringstream ss(out.token);
  std::string stage;
  while (std::getline(ss, stage, '-')) {
    if (stage.empty())
      throw Error(ErrorCode::kConfigError,
                  "empty stage in method '" + token + "'");
    EnhancerSpec spec = defaults;
    std::string name = stage;
    std::optional<double> alpha;
    if (auto colon = stage.find(':'); colon != std::string::npos) {
      name = stage.substr(0, colon);
      if (name != "modwd")
        throw Error(ErrorCode::kConfigError,
                    "only modwd takes a parameter: '" + stage + "'");
      alpha = ParseNumber(stage.substr(colon + 1));
      CheckAlpha(*alpha, "method '" + token + "'");
    }
    if (name == "noisy") {
      spec.kind = EnhancerKind::kNone;
    } else if (name == "ss") {
      spec.kind = EnhancerKind::kSS;
    } else if (name == "wf") {
      spec.kind = EnhancerKind::kWF;
    } else if (name == "stsa") {
      spec.kind = EnhancerKind::kSTSA;
    } else if (name == "logstsa") {
      spec.kind = EnhancerKind::kLogSTSA;
    } else if (name == "modwd") {
      spec.kind = EnhancerKind::kModwd;
      if (alpha) {
        spec.alpha = *alpha;
        if (out.fixed_alpha && *out.fixed_alpha != *alpha)
          throw Error(ErrorCode::kConfigError,
                      "method '" + token + "' mixes ModWD alphas");
        out.fixed_alpha = alpha;
      } else {
        out.uses_alpha_grid = true;
      }
    } else {
      throw Error(ErrorCode::kConfigError, "unknown stage '" + stage + "'");
    }
    out.cascade.stages.push_back(spec);
  }
  if (out.uses_alpha_grid && out.fixed_alpha)
    throw Error(ErrorCode::kConfigError,
                "method '" + token + "' mixes fixed and grid ModWD alphas");
  return out;
}

CascadeSpec BindAlpha(const MethodToken &method, double alpha) {
  CascadeSpec out = method.cascade;
  if (!method.uses_alpha_grid) return out;
  for (EnhancerSpec &stage : out.stages)
    if (stage.kind == EnhancerKind::kModwd) stage.alpha = alpha;
  return out;
}

namespace {

void ValidateCommon(const RunConfig &config) {
  if (config.snr_grid.empty())
    throw Error(ErrorCode::kConfigError, "snr grid is empty");
  if (config.clean_dir.empty() || !std::filesystem::is_directory(config.clean_dir))
    throw Error(ErrorCode::kConfigError,
                "clean_dir '" + config.clean_dir.string() + "' is not a directory");
  if (config.noise_file.empty() ||
      !std::filesystem::is_regular_file(config.noise_file))
    throw Error(ErrorCode::kConfigError,
                "noise_file '" + config.noise_file.string() + "' does not exist");
  if (ListCleanFiles(config).empty())
    throw Error(ErrorCode::kConfigError,
                "no files match " + config.clean_pattern + " in " +
                    config.clean_dir.string());
  if (config.jobs < 1) throw Error(ErrorCode::kConfigError, "jobs < 1");
  try {
    config.stage_defaults.frame_params.Validate();
  } catch (const Error &e) {
    throw Error(ErrorCode::kConfigError, e.what());
  }
}

}  // namespace

void ValidateForMix(const RunConfig &config) { ValidateCommon(config); }

void ValidateForEnhance(const RunConfig &config) {
  ValidateCommon(config);
  if (config.methods.empty())
    throw Error(ErrorCode::kConfigError, "method list is empty");
  bool any_grid = false;
  for (const std::string &m : config.methods)
    any_grid |= ParseMethodToken(m, config.stage_defaults).uses_alpha_grid;
  if (any_grid && config.alpha_grid.empty())
    throw Error(ErrorCode::kConfigError, "alpha grid is empty");
  for (double a : config.alpha_grid) CheckAlpha(a, "alpha_grid");
  try {
    config.stage_defaults.ss.Validate();
    config.stage_defaults.dd.Validate();
  } catch (const Error &e) {
    throw Error(ErrorCode::kConfigError, e.what());
  }
}

std::vector<std::filesystem::path> ListCleanFiles(const RunConfig &config) {
  std::vector<std::filesystem::path> out;
  std::error_code ec;
  for (const auto &entry : std::filesystem::directory_iterator(config.clean_dir, ec))
    if (entry.is_regular_file() &&
        WildcardMatch(config.clean_pattern, entry.path().filename().string()))
      out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace modwd
