// Copyright 2026 The ModWD Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

// modwd: batch front end for modulation-domain wavelet denoising.
//
//   modwd mix --config run.cfg                 # noisy corpus on disk
//   modwd enhance --config run.cfg --jobs 4    # enhanced audio + CSV report
//   modwd report --config run.cfg              # per-cell means of the CSV
//   modwd compress in.wav out.mwd              # approximation payload
//   modwd decompress out.mwd restored.wav
//   modwd stages in.wav stage_dir --alpha 0    # four spectrogram planes
//
// Exit codes: 0 success, 1 runtime or per-cell failures, 2 config error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "modwd/config.h"
#include "modwd/error.h"
#include "modwd/modwd.h"
#include "modwd/runner.h"
#include "modwd/spectrogram_io.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailures = 1;
constexpr int kExitConfig = 2;

struct Options {
  std::string config_path;
  std::vector<std::string> set;
  std::string alpha;
  std::string method;
  std::string snr;
  int jobs = 0;
  std::string external_metric;
  std::string csv_path;
  std::string input;
  std::string output;
  std::string format = "csv";
};

modwd::RunConfig BuildConfig(const Options &opt) {
  modwd::RunConfig cfg;
  if (!opt.config_path.empty()) modwd::LoadConfigFile(opt.config_path, &cfg);
  for (const std::string &kv : opt.set) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw modwd::Error(modwd::ErrorCode::kConfigError,
                         "--set expects key=value, got '" + kv + "'");
    modwd::ApplyConfigEntry(&cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!opt.alpha.empty()) cfg.alpha_grid = modwd::ParseNumberList(opt.alpha);
  if (!opt.method.empty()) cfg.methods = modwd::ParseStringList(opt.method);
  if (!opt.snr.empty()) cfg.snr_grid = modwd::ParseNumberList(opt.snr);
  if (opt.jobs > 0) cfg.jobs = opt.jobs;
  if (!opt.external_metric.empty()) cfg.external_metric = opt.external_metric;
  return cfg;
}

void PrintFailures(const std::vector<modwd::RunFailure> &failures) {
  for (const auto &f : failures)
    std::cerr << "FAILED " << f.item << ": " << f.message << '\n';
}

int CmdMix(const Options &opt) {
  const modwd::RunConfig cfg = BuildConfig(opt);
  modwd::ValidateForMix(cfg);
  const modwd::MixSummary summary = modwd::RunMix(cfg);
  PrintFailures(summary.failures);
  std::cerr << "wrote " << summary.files_written << " files to "
            << (cfg.output_dir / "noisy").string() << '\n';
  return summary.failures.empty() ? kExitOk : kExitFailures;
}

int CmdEnhance(const Options &opt) {
  const modwd::RunConfig cfg = BuildConfig(opt);
  modwd::ValidateForEnhance(cfg);
  const modwd::EnhanceSummary summary = modwd::RunEnhance(cfg);
  PrintFailures(summary.failures);
  std::cerr << summary.rows.size() << " report rows written to "
            << cfg.ResolvedReportPath().string() << '\n';
  return summary.failures.empty() ? kExitOk : kExitFailures;
}

int CmdReport(const Options &opt) {
  std::filesystem::path csv = opt.csv_path;
  if (csv.empty()) csv = BuildConfig(opt).ResolvedReportPath();
  const std::vector<unsigned char> bytes = modwd::ReadFileBytes(csv);
  const auto rows =
      modwd::ParseReportCsv(std::string(bytes.begin(), bytes.end()));
  std::cout << modwd::SummarizeReport(rows);
  return kExitOk;
}

int CmdCompress(const Options &opt) {
  const modwd::RunConfig cfg = BuildConfig(opt);
  const auto result = modwd::CompressWav(opt.input, opt.output,
                                         cfg.stage_defaults.frame_params);
  std::cerr << "payload " << result.payload_bytes << " bytes, "
            << result.payload_values << " of " << result.full_plane_values
            << " magnitude values ("
            << static_cast<double>(result.payload_values) /
                   static_cast<double>(result.full_plane_values)
            << ")\n";
  return kExitOk;
}

int CmdDecompress(const Options &opt) {
  const modwd::RunConfig cfg = BuildConfig(opt);
  modwd::DecompressToWav(opt.input, opt.output, modwd::Bior37(),
                         cfg.output_format);
  return kExitOk;
}

int CmdStages(const Options &opt) {
  const modwd::RunConfig cfg = BuildConfig(opt);
  modwd::ModwdConfig mcfg;
  mcfg.frame_params = cfg.stage_defaults.frame_params;
  mcfg.extension = cfg.stage_defaults.extension;
  mcfg.alpha = opt.alpha.empty() ? cfg.stage_defaults.alpha
                                 : modwd::ParseNumberList(opt.alpha).at(0);
  const auto stages =
      modwd::ExportSpectrogramStages(modwd::ReadWav(opt.input), mcfg);
  const std::filesystem::path dir = opt.output;
  std::filesystem::create_directories(dir);
  const std::pair<const char *, const modwd::Plane *> planes[] = {
      {"a_original", &stages.original},
      {"b_approximation", &stages.approximation},
      {"c_detail", &stages.detail},
      {"d_reconstructed", &stages.reconstructed}};
  for (const auto &[name, plane] : planes) {
    if (opt.format == "f32")
      modwd::WritePlaneFloat32(dir / (std::string(name) + ".f32"), *plane);
    else
      modwd::WritePlaneCsv(dir / (std::string(name) + ".csv"), *plane);
    std::cout << name << ' ' << plane->rows() << 'x' << plane->cols() << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Modulation-domain wavelet denoising toolkit"};
  app.require_subcommand(1);
  Options opt;

  auto add_run_flags = [&](CLI::App *cmd) {
    cmd->add_option("--config", opt.config_path, "key = value config file");
    cmd->add_option("--set", opt.set, "override one config key (key=value)");
    cmd->add_option("--alpha", opt.alpha, "alpha grid, comma separated");
    cmd->add_option("--method", opt.method,
                    "method tokens, comma separated (e.g. modwd:0.25-ss)");
    cmd->add_option("--snr", opt.snr, "SNR grid in dB, comma separated");
    cmd->add_option("--jobs", opt.jobs, "worker threads");
    cmd->add_option("--external-metric", opt.external_metric,
                    "scorer command template using {clean} and {processed}");
  };

  CLI::App *mix = app.add_subcommand("mix", "write the clean x SNR noisy corpus");
  add_run_flags(mix);
  CLI::App *enhance =
      app.add_subcommand("enhance", "run every method cell and write the CSV");
  add_run_flags(enhance);
  CLI::App *report = app.add_subcommand("report", "summarize a metrics CSV");
  add_run_flags(report);
  report->add_option("--csv", opt.csv_path, "report to read");

  CLI::App *compress =
      app.add_subcommand("compress", "emit the approximation-only payload");
  add_run_flags(compress);
  compress->add_option("input", opt.input, "input WAV")->required();
  compress->add_option("payload", opt.output, "payload path")->required();

  CLI::App *decompress =
      app.add_subcommand("decompress", "rebuild audio from a payload");
  add_run_flags(decompress);
  decompress->add_option("payload", opt.input, "payload path")->required();
  decompress->add_option("output", opt.output, "output WAV")->required();

  CLI::App *stages =
      app.add_subcommand("stages", "export the four spectrogram planes");
  add_run_flags(stages);
  stages->add_option("input", opt.input, "input WAV")->required();
  stages->add_option("outdir", opt.output, "output directory")->required();
  stages->add_option("--format", opt.format, "csv or f32")
      ->check(CLI::IsMember({"csv", "f32"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*mix) return CmdMix(opt);
    if (*enhance) return CmdEnhance(opt);
    if (*report) return CmdReport(opt);
    if (*compress) return CmdCompress(opt);
    if (*decompress) return CmdDecompress(opt);
    if (*stages) return CmdStages(opt);
  } catch (const modwd::Error &e) {
    std::cerr << "modwd: " << e.what() << '\n';
    return e.code() == modwd::ErrorCode::kConfigError ? kExitConfig
                                                      : kExitFailures;
  } catch (const std::exception &e) {
    std::cerr << "modwd: " << e.what() << '\n';
    return kExitFailures;
  }
  return kExitFailures;
}
