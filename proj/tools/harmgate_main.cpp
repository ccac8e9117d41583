// Copyright 2026 The harmgate authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "harmgate/config.hpp"
#include "harmgate/matrix_io.hpp"
#include "harmgate/pipeline.hpp"
#include "harmgate/version.hpp"
#include "harmgate/wav.hpp"

namespace {

namespace fs = std::filesystem;
using harmgate::PipelineConfig;
using harmgate::VrdState;

struct CommonFlags {
  std::string config_path;
  std::string band;
  std::string mask;
  std::string vrd_state_path;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path,
                  "key=value config file ('#' comments); keys: band, sample_rate, fft_size, "
                  "window_ms, overlap_fraction, vrd_alpha, gate_kernel, gamma, mask, "
                  "template_mode");
  cmd->add_option("--band", flags.band, "band preset override: wb (16 kHz) or fb (48 kHz)")
      ->check(CLI::IsMember({"wb", "fb"}));
  cmd->add_option("--mask", flags.mask, "mask source: oracle | constant:<v> | file:<path>");
  cmd->add_option("--vrd-state", flags.vrd_state_path,
                  "voicing detector state file, read if present and rewritten after the run");
}

PipelineConfig resolve_config(const CommonFlags& flags) {
  PipelineConfig cfg;
  if (!flags.config_path.empty()) cfg = harmgate::parse_config_file(flags.config_path);
  if (!flags.band.empty()) harmgate::apply_band(cfg, flags.band);
  if (!flags.mask.empty()) cfg.mask = flags.mask;
  cfg.validate();
  return cfg;
}

VrdState load_vrd_state(const std::string& path) {
  if (!path.empty() && fs::exists(path)) return harmgate::read_vrd_state(path);
  return VrdState{};
}

void store_vrd_state(const std::string& path, const VrdState& state) {
  if (!path.empty()) harmgate::write_vrd_state(path, state);
}

harmgate::AudioBuffer read_checked_wav(const std::string& path, const PipelineConfig& cfg) {
  harmgate::AudioBuffer buf = harmgate::read_wav(path);
  if (buf.sample_rate != cfg.analysis.sample_rate)
    throw harmgate::FormatError(path + " is " + std::to_string(buf.sample_rate) +
                                " Hz but band '" + cfg.band + "' expects " +
                                std::to_string(cfg.analysis.sample_rate) +
                                " Hz; resample or pass --band");
  return buf;
}

void print_report(const harmgate::LossReport& report) {
  std::printf("l_hb=%.9g\n", report.l_hb);
  std::printf("l_apc_coarse=%.9g\n", report.l_apc_coarse);
  std::printf("l_apc_refined=%.9g\n", report.l_apc_refined);
  std::printf("l_focal=%.9g\n", report.l_focal);
  std::printf("total=%.9g\n", report.total);
}

int cmd_analyze(const std::string& wav_path, const CommonFlags& flags,
                const std::string& out_dir) {
  const PipelineConfig cfg = resolve_config(flags);
  const harmgate::AudioBuffer audio = read_checked_wav(wav_path, cfg);
  VrdState state = load_vrd_state(flags.vrd_state_path);
  const harmgate::AnalyzeResult res = harmgate::run_analyze(audio, cfg, state);
  store_vrd_state(flags.vrd_state_path, state);

  fs::create_directories(out_dir);
  const std::string pitch_path = (fs::path(out_dir) / "pitch.csv").string();
  const std::string gates_path = (fs::path(out_dir) / "gates.bin").string();
  const std::string sig_path = (fs::path(out_dir) / "significance.bin").string();
  harmgate::write_pitch_csv(pitch_path, res.track, res.spec.frame_hop,
                            cfg.analysis.sample_rate);
  harmgate::write_matrix(gates_path, res.gate);
  harmgate::write_matrix(sig_path, res.Q);

  nlohmann::ordered_json manifest;
  manifest["tool"] = "harmgate";
  manifest["version"] = harmgate::kVersion;
  manifest["command"] = "analyze";
  manifest["inputs"] = {wav_path};
  manifest["outputs"] = {pitch_path, gates_path, sig_path};
  manifest["config_hash"] = harmgate::config_hash(cfg);
  manifest["timings_ms"] = {{"stft", res.timings.stft_ms},
                            {"significance", res.timings.significance_ms},
                            {"gating", res.timings.gating_ms},
                            {"total", res.timings.total_ms}};
  std::ofstream mf((fs::path(out_dir) / "manifest.json").string(), std::ios::trunc);
  if (!mf) throw harmgate::FormatError("cannot write manifest in " + out_dir);
  mf << manifest.dump(2) << '\n';

  std::printf("frames=%lld voiced=%lld\n", static_cast<long long>(res.track.frames()),
              static_cast<long long>(res.flags.sum()));
  return 0;
}

int cmd_enhance(const std::string& noisy_path, const std::string& clean_path,
                const std::string& out_wav, const CommonFlags& flags) {
  const PipelineConfig cfg = resolve_config(flags);
  const harmgate::AudioBuffer noisy = read_checked_wav(noisy_path, cfg);
  const harmgate::AudioBuffer clean = read_checked_wav(clean_path, cfg);
  VrdState state = load_vrd_state(flags.vrd_state_path);
  const harmgate::EnhanceResult res = harmgate::run_enhance(noisy, clean, cfg, state);
  store_vrd_state(flags.vrd_state_path, state);
  harmgate::write_wav(out_wav, res.out);
  print_report(res.report);
  std::printf("apc_snr_noisy_db=%.9g\n", res.apc_noisy_db);
  std::printf("apc_snr_coarse_db=%.9g\n", res.apc_coarse_db);
  std::printf("apc_snr_refined_db=%.9g\n", res.apc_refined_db);
  return 0;
}

int cmd_metrics(const std::string& est_path, const std::string& ref_path,
                const CommonFlags& flags, const std::string& csv_path) {
  const PipelineConfig cfg = resolve_config(flags);
  const harmgate::AudioBuffer est = read_checked_wav(est_path, cfg);
  const harmgate::AudioBuffer ref = read_checked_wav(ref_path, cfg);
  const harmgate::LossReport report = harmgate::run_metrics(est, ref, cfg);
  print_report(report);
  if (!csv_path.empty()) {
    std::ofstream f(csv_path, std::ios::trunc);
    if (!f) throw harmgate::FormatError("cannot open for writing: " + csv_path);
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "l_hb,l_apc_coarse,l_apc_refined,l_focal,total\n%.9g,%.9g,%.9g,%.9g,%.9g\n",
                  report.l_hb, report.l_apc_coarse, report.l_apc_refined, report.l_focal,
                  report.total);
    f << buf;
  }
  return 0;
}

int cmd_matrix(const CommonFlags& flags, const std::string& out_path) {
  const PipelineConfig cfg = resolve_config(flags);
  const int F = cfg.band == "fb" ? harmgate::kWbBins : cfg.analysis.bins();
  const harmgate::IntegralMatrix U = harmgate::build_integral_matrix(F, cfg.analysis.bin_hz());
  harmgate::write_matrix(out_path, U.values);
  long long nnz = 0;
  for (Eigen::Index j = 0; j < U.values.rows(); ++j)
    for (Eigen::Index f = 0; f < U.values.cols(); ++f)
      if (U.values(j, f) != 0.0f) ++nnz;
  std::printf("rows=%lld cols=%lld nnz=%lld\n", static_cast<long long>(U.values.rows()),
              static_cast<long long>(U.values.cols()), nnz);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"harmonic-gated speech enhancement toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", harmgate::kVersion);

  CommonFlags flags;
  std::string wav_path, noisy_path, clean_path, est_path, ref_path;
  std::string out_dir = ".";
  std::string out_wav, matrix_out, csv_path;

  CLI::App* analyze = app.add_subcommand(
      "analyze",
      "pitch track, significance and gate for one WAV; writes pitch.csv "
      "(frame,time_s,candidate,pitch_hz,significance; candidate -1 = unvoiced, pitch 0.0), "
      "gates.bin and significance.bin (binary matrices) and manifest.json");
  analyze->add_option("wav", wav_path, "mono WAV (PCM16 or float32)")->required();
  analyze->add_option("--out", out_dir, "output directory (default .)");
  add_common_flags(analyze, flags);

  CLI::App* enhance = app.add_subcommand(
      "enhance", "two-stage masking (coarse complex mask, then gated compensation) "
                 "of an aligned noisy/clean pair; prints the loss report as key=value");
  enhance->add_option("noisy", noisy_path, "noisy mono WAV")->required();
  enhance->add_option("clean", clean_path, "aligned clean mono WAV")->required();
  enhance->add_option("out", out_wav, "output WAV path")->required();
  add_common_flags(enhance, flags);

  CLI::App* metrics = app.add_subcommand(
      "metrics", "loss report for an estimate/reference pair, key=value lines "
                 "(l_hb, l_apc_coarse, l_apc_refined, l_focal, total)");
  metrics->add_option("est", est_path, "estimate mono WAV")->required();
  metrics->add_option("ref", ref_path, "reference mono WAV")->required();
  metrics->add_option("--csv", csv_path, "also write the report as a two-line CSV");
  add_common_flags(metrics, flags);

  CLI::App* matrix = app.add_subcommand(
      "matrix", "build the harmonic integral matrix for the configured band and save it "
                "(header HGM1 + rows/cols/reserved uint32, float32 row-major)");
  matrix->add_option("out", matrix_out, "output matrix path")->required();
  add_common_flags(matrix, flags);

  try {
    app.parse(argc, argv);
    if (*analyze) return cmd_analyze(wav_path, flags, out_dir);
    if (*enhance) return cmd_enhance(noisy_path, clean_path, out_wav, flags);
    if (*metrics) return cmd_metrics(est_path, ref_path, flags, csv_path);
    if (*matrix) return cmd_matrix(flags, matrix_out);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit clean, parse failures are usage errors
  } catch (const harmgate::UsageError& e) {
    std::cerr << "harmgate: usage error: " << e.what() << '\n';
    return 2;
  } catch (const harmgate::FormatError& e) {
    std::cerr << "harmgate: input error: " << e.what() << '\n';
    return 3;
  } catch (const harmgate::NumericError& e) {
    std::cerr << "harmgate: numeric error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "harmgate: internal error: " << e.what() << '\n';
    return 1;
  }
}
