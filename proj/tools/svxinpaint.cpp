/*
Copyright 2026 The svxinpaint Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

// svxinpaint: phantom generation, supervoxelization, inpainting-pair
// synthesis, mask statistics and Dice evaluation.
//
// Exit codes: 0 success, 2 usage, 3 input format / I/O, 4 constraint or empty
// result.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "svx/manifest.hpp"
#include "svx/metrics.hpp"
#include "svx/parallel.hpp"
#include "svx/phantom.hpp"
#include "svx/slic.hpp"
#include "svx/svol.hpp"
#include "svx/synth.hpp"
#include "svx/volume_ops.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitFormat = 3;
constexpr int kExitConstraint = 4;

enum class LogLevel { kError, kWarn, kInfo, kDebug };

struct GlobalOptions {
  std::uint64_t seed = 17;
  int threads = svx::default_thread_count();
  std::string log_level = "warn";
  bool json = false;

  LogLevel level() const {
    if (log_level == "error") return LogLevel::kError;
    if (log_level == "info") return LogLevel::kInfo;
    if (log_level == "debug") return LogLevel::kDebug;
    return LogLevel::kWarn;
  }
};

GlobalOptions g_options;

void log(LogLevel level, const std::string& message) {
  static constexpr const char* kNames[] = {"error", "warn", "info", "debug"};
  if (level <= g_options.level()) {
    std::cerr << "[" << kNames[static_cast<int>(level)] << "] " << message << '\n';
  }
}

// Thrown for semantic usage errors detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_slic_flags(CLI::App* cmd, svx::SlicParams& slic) {
  cmd->add_option("--compactness", slic.compactness, "SLIC compactness")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-supervoxels", slic.max_supervoxels, "Upper bound on seeds")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--iterations", slic.iterations, "k-means rounds")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--connectivity", slic.connectivity, "6 or 26")
      ->capture_default_str()
      ->check(CLI::IsMember({6, 26}));
  cmd->add_option("--min-fragment", slic.min_fragment_factor,
                  "Fragments below this fraction of the mean size are merged")
      ->capture_default_str()
      ->check(CLI::Range(1e-9, 1.0));
}

// --- phantom ---------------------------------------------------------------

struct PhantomArgs {
  std::string preset = "brats-like";
  int count = 10;
  std::string out;
  std::string config;
  std::vector<int> dims;
  std::vector<int> lesion_count;
  std::vector<double> lesion_radius;
  std::optional<double> noise;
  std::optional<double> bias;
};

int cmd_phantom(const PhantomArgs& args) {
  auto spec = svx::phantom_preset(args.preset);
  if (!spec) throw UsageError("unknown preset \"" + args.preset + "\" (brats-like, wmh-like)");
  if (!args.config.empty()) {
    std::ifstream in(args.config);
    if (!in) throw svx::IoError("missing file: " + args.config);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw svx::FormatError("malformed phantom config " + args.config + ": " + e.what());
    }
    *spec = svx::phantom_spec_from_json(j, *spec);
  }
  if (!args.dims.empty()) spec->dims = svx::Dims{args.dims[0], args.dims[1], args.dims[2]};
  if (!args.lesion_count.empty()) {
    spec->lesion_count_min = args.lesion_count[0];
    spec->lesion_count_max = args.lesion_count[1];
  }
  if (!args.lesion_radius.empty()) {
    spec->lesion_radius_min = args.lesion_radius[0];
    spec->lesion_radius_max = args.lesion_radius[1];
  }
  if (args.noise) spec->noise_sigma = *args.noise;
  if (args.bias) spec->bias_strength = *args.bias;
  spec->validate();

  const svx::TrainingSet set =
      svx::generate_corpus(args.count, *spec, args.out, g_options.seed, g_options.threads);
  const fs::path listing = fs::path(args.out) / "train.json";
  if (g_options.json) {
    std::cout << json{{"count", set.entries.size()},
                      {"train", listing.string()},
                      {"spec", svx::to_json(*spec)}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << "phantoms=" << set.entries.size() << " train=" << listing.string() << '\n';
  }
  return kExitOk;
}

// --- supervoxelize -----------------------------------------------------------

struct SupervoxelizeArgs {
  std::string input;
  std::string output;
  bool assume_normalized = false;
  svx::SlicParams slic;
};

int cmd_supervoxelize(SupervoxelizeArgs args) {
  const svx::MultiModalVolume raw = svx::load_image(args.input);
  const svx::MultiModalVolume vol =
      args.assume_normalized ? raw : svx::normalize_intensities(raw);
  args.slic.threads = g_options.threads;
  args.slic.seed = g_options.seed;
  log(LogLevel::kInfo, "supervoxelizing " + args.input + " (" + svx::to_string(vol.dims()) + ")");
  const svx::SupervoxelMap map = svx::run_slic(vol, args.slic);

  fs::path output = args.output;
  if (output.empty()) {
    output = svx::svol_stem(args.input);
    output += ".svx";
  }
  svx::save_svol(map.labels, output,
                 json{{"supervoxel_count", map.count},
                      {"compactness", args.slic.compactness},
                      {"max_supervoxels", args.slic.max_supervoxels}});
  if (g_options.json) {
    std::cout << json{{"supervoxel_count", map.count},
                      {"output", svx::svol_header_path(output).string()}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << "supervoxels=" << map.count << '\n';
  }
  return kExitOk;
}

// --- synth -----------------------------------------------------------------

struct SynthArgs {
  std::string train;
  std::string strategy = "roi-supervoxel";
  std::string out = "synth";
  bool relaxed = false;
  bool stream = false;
  svx::SynthParams params;
};

int cmd_synth(SynthArgs args) {
  const auto strategy = svx::parse_strategy(args.strategy);
  if (!strategy) {
    throw UsageError("invalid strategy \"" + args.strategy +
                     "\"; valid strategies: " + svx::strategy_names());
  }
  if (args.params.min_edge > args.params.max_edge) {
    throw UsageError("--min-edge must not exceed --max-edge");
  }
  args.params.strategy = *strategy;
  args.params.strict = !args.relaxed;
  args.params.seed = g_options.seed;
  args.params.slic.seed = g_options.seed;

  const svx::TrainingSet train = svx::read_training_set(args.train);
  svx::RecordSink sink;
  if (args.stream) {
    sink = [](const svx::SynthRecord& rec) {
      svx::SynthManifest one;
      one.records.push_back(rec);
      std::cout << svx::to_json(one).at("records").at(0).dump() << std::endl;
    };
  }
  const svx::SynthManifest manifest =
      svx::synthesize_dataset(train, args.params, args.out, g_options.threads, sink);
  for (const auto& w : manifest.warnings) {
    log(LogLevel::kWarn, "skipped " + w.source_id + ": " + w.reason);
  }

  const std::size_t skipped = manifest.warnings.size();
  const fs::path manifest_path = fs::path(args.out) / "manifest.json";
  std::ostream& summary = args.stream ? std::cerr : std::cout;
  if (g_options.json && !args.stream) {
    summary << json{{"records", manifest.records.size()},
                    {"skipped", skipped},
                    {"manifest", manifest_path.string()}}
                   .dump(2)
            << '\n';
  } else {
    summary << "records=" << manifest.records.size() << " skipped=" << skipped << '\n';
  }
  if (manifest.records.empty() && skipped == train.entries.size()) {
    log(LogLevel::kError, "every image was skipped");
    return kExitConstraint;
  }
  return kExitOk;
}

// --- stats -----------------------------------------------------------------

int cmd_stats(const std::string& path, bool validate) {
  const svx::SynthManifest manifest = svx::read_manifest(path, validate);
  const svx::MaskStats stats = svx::mask_statistics(manifest);
  if (g_options.json) {
    std::cout << svx::to_json(stats).dump(2) << '\n';
  } else {
    std::cout << svx::format_table(stats);
  }
  return kExitOk;
}

// --- eval ------------------------------------------------------------------

svx::MaskVolume load_binary(const fs::path& path, double threshold) {
  svx::AnyVolume any = svx::load_svol(path);
  return std::visit(
      [&](const auto& v) {
        using Scalar = typename std::decay_t<decltype(v)>::Storage::Scalar;
        if (v.channels() != 1) throw svx::FormatError("expected one channel: " + path.string());
        svx::MaskVolume m(v.dims(), 1, v.spacing());
        if constexpr (std::is_floating_point_v<Scalar>) {
          m.data() = (v.data() >= static_cast<float>(threshold)).template cast<std::uint8_t>();
        } else {
          m.data() = (v.data() != Scalar{0}).template cast<std::uint8_t>();
        }
        return m;
      },
      any);
}

int cmd_eval(const std::string& pred_dir, const std::string& truth_dir, double threshold) {
  if (!fs::is_directory(truth_dir)) throw svx::IoError("missing directory: " + truth_dir);
  if (!fs::is_directory(pred_dir)) throw svx::IoError("missing directory: " + pred_dir);
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(truth_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      names.push_back(entry.path().filename().string());
    }
  }
  std::sort(names.begin(), names.end());
  if (names.empty()) throw svx::ConstraintError("no SVOL volumes in " + truth_dir);

  std::vector<std::string> cases;
  std::vector<double> values;
  for (const std::string& name : names) {
    const fs::path pred = fs::path(pred_dir) / name;
    if (!fs::exists(pred)) throw svx::IoError("missing prediction: " + pred.string());
    const double d = svx::dice(load_binary(pred, threshold),
                               load_binary(fs::path(truth_dir) / name, threshold));
    cases.push_back(svx::svol_stem(name).string());
    values.push_back(d);
  }
  const svx::DiceReport report = svx::summarize_dice(std::move(cases), std::move(values));
  if (g_options.json) {
    json j = svx::to_json(report);
    j["formatted"] = svx::format_mean_std(report.mean, report.stddev);
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << svx::format_mean_std(report.mean, report.stddev) << '\n';
  }
  return kExitOk;
}

// --- crop ------------------------------------------------------------------

int cmd_crop(const std::string& input, const std::string& output, const std::vector<int>& size) {
  svx::AnyVolume any = svx::load_svol(input);
  std::visit(
      [&](const auto& v) {
        svx::Dims target{size[0], size[1], size.size() == 3 ? size[2] : v.dims().z};
        const auto cropped = svx::center_crop(v, target);
        svx::save_svol(cropped, output);
        if (g_options.json) {
          std::cout << json{{"dims", {target.x, target.y, target.z}},
                            {"output", svx::svol_header_path(output).string()}}
                           .dump(2)
                    << '\n';
        } else {
          std::cout << "cropped " << svx::to_string(v.dims()) << " -> "
                    << svx::to_string(target) << '\n';
        }
      },
      any);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ROI-guided supervoxel inpainting data synthesis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", svx::tool_version());
  app.add_option("--seed", g_options.seed, "Global RNG seed")->capture_default_str();
  app.add_option("--threads", g_options.threads, "Worker threads (output is independent of it)")
      ->check(CLI::PositiveNumber);
  app.add_option("--log-level", g_options.log_level, "error, warn, info or debug")
      ->capture_default_str()
      ->check(CLI::IsMember({"error", "warn", "info", "debug"}));
  app.add_flag("--json", g_options.json, "Structured output on stdout");

  PhantomArgs phantom_args;
  auto* phantom = app.add_subcommand("phantom", "Generate a labelled phantom corpus");
  phantom->add_option("--preset", phantom_args.preset, "brats-like or wmh-like")
      ->capture_default_str();
  phantom->add_option("-n,--count", phantom_args.count, "Number of phantoms")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  phantom->add_option("-o,--out", phantom_args.out, "Output directory")->required();
  phantom->add_option("--config", phantom_args.config, "PhantomSpec JSON overriding the preset");
  phantom->add_option("--dims", phantom_args.dims, "X Y Z")->expected(3);
  phantom->add_option("--lesion-count", phantom_args.lesion_count, "MIN MAX")->expected(2);
  phantom->add_option("--lesion-radius", phantom_args.lesion_radius, "MIN MAX")->expected(2);
  phantom->add_option("--noise", phantom_args.noise, "Noise sigma");
  phantom->add_option("--bias", phantom_args.bias, "Bias field strength");

  SupervoxelizeArgs svx_args;
  auto* supervoxelize = app.add_subcommand("supervoxelize", "Run 3D SLIC on a volume");
  supervoxelize->add_option("--input", svx_args.input, "SVOL or NIfTI intensity volume")
      ->required();
  supervoxelize->add_option("--output", svx_args.output,
                            "Output SVOL stem (default: <input>.svx)");
  supervoxelize->add_flag("--assume-normalized", svx_args.assume_normalized,
                          "Skip per-channel min-max normalization");
  add_slic_flags(supervoxelize, svx_args.slic);

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Synthesize inpainting pairs from a training set");
  synth->add_option("--train", synth_args.train, "Training-set listing JSON")->required();
  synth->add_option("--strategy", synth_args.strategy,
                    "roi-supervoxel, noroi-supervoxel, roi-grid or noroi-grid")
      ->capture_default_str();
  synth->add_option("-o,--out", synth_args.out, "Output directory")->capture_default_str();
  synth->add_option("--min-volume", synth_args.params.min_volume, "Minimum supervoxel volume")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  synth->add_option("--min-overlap", synth_args.params.min_overlap,
                    "ROI voxels a supervoxel must contain")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  synth->add_option("--cap", synth_args.params.cap, "Synthetic images per input image")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  synth->add_option("--min-edge", synth_args.params.min_edge, "Minimum cuboid edge")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  synth->add_option("--max-edge", synth_args.params.max_edge, "Maximum cuboid edge")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  synth->add_option("--epoch", synth_args.params.epoch,
                    "Derive a fresh draw for this epoch (0 = base seed)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  synth->add_flag("--relaxed", synth_args.relaxed,
                  "Fall back to the largest ROI supervoxels when none reach --min-volume");
  synth->add_flag("--stream", synth_args.stream, "Emit records as JSON lines on stdout");
  add_slic_flags(synth, synth_args.params.slic);

  std::string stats_manifest;
  bool stats_validate = false;
  auto* stats = app.add_subcommand("stats", "Summarize a synthesis manifest");
  stats->add_option("manifest", stats_manifest, "manifest.json")->required();
  stats->add_flag("--validate", stats_validate, "Check that every referenced file exists");

  std::string eval_pred, eval_truth;
  double eval_threshold = 0.5;
  auto* eval = app.add_subcommand("eval", "Dice between prediction and truth directories");
  eval->add_option("--pred", eval_pred, "Directory of predicted SVOL masks")->required();
  eval->add_option("--truth", eval_truth, "Directory of ground-truth SVOL masks")->required();
  eval->add_option("--threshold", eval_threshold, "Cut-off for f32 predictions")
      ->capture_default_str();

  std::string crop_input, crop_output;
  std::vector<int> crop_size;
  auto* crop = app.add_subcommand("crop", "Center-crop a volume, e.g. to 160 216 32");
  crop->add_option("--input", crop_input, "Input SVOL")->required();
  crop->add_option("--output", crop_output, "Output SVOL stem")->required();
  crop->add_option("--size", crop_size, "X Y [Z]")->required()->expected(2, 3)->check(
      CLI::PositiveNumber);

  app.fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help, --version
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*phantom) return cmd_phantom(phantom_args);
    if (*supervoxelize) return cmd_supervoxelize(svx_args);
    if (*synth) return cmd_synth(synth_args);
    if (*stats) return cmd_stats(stats_manifest, stats_validate);
    if (*eval) return cmd_eval(eval_pred, eval_truth, eval_threshold);
    if (*crop) return cmd_crop(crop_input, crop_output, crop_size);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const svx::Error& e) {
    log(LogLevel::kError, e.what());
    return e.kind() == svx::ErrorKind::kConstraint ? kExitConstraint : kExitFormat;
  } catch (const std::exception& e) {
    log(LogLevel::kError, e.what());
    return kExitFormat;
  }
  return kExitUsage;
}
