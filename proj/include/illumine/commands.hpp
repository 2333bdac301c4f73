#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "illumine/config.hpp"

namespace illumine {

// Exit codes shared by every command: 0 success, 1 usage error, 2
// processing error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitProcessing = 2;

struct EnhanceArgs {
  std::filesystem::path input;   // PNG file or directory of PNGs
  std::filesystem::path output;  // file, or directory when input is one
  PipelineConfig config;
  bool no_denoise = false;
  bool dump_intermediates = false;
};

struct EstimateNoiseArgs {
  std::filesystem::path input;
  int order = 1;
};

struct DegradeArgs {
  std::filesystem::path input;
  std::filesystem::path output;
  double gamma = 1.0;
  double noise_sigma_255 = 0.0;  // CLI sigmas are on the 255 scale
  std::uint64_t seed = 0;
};

struct EvaluateArgs {
  std::filesystem::path enhanced;
  std::filesystem::path reference;
  std::vector<std::string> metrics;  // empty selects psnr,ssim,loe,mse
};

struct ValidateEstimatorArgs {
  std::vector<double> sigmas_255{5, 10, 20, 30, 40};
  std::vector<int> orders{1, 2, 3};
  int trials = 100;
  std::filesystem::path corpus;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> output;  // default: stdout
};

struct DiffmapArgs {
  std::filesystem::path a;
  std::filesystem::path b;
  std::filesystem::path output;
};

int cmd_enhance(const EnhanceArgs& args, std::ostream& out, std::ostream& err);
int cmd_estimate_noise(const EstimateNoiseArgs& args, std::ostream& out, std::ostream& err);
int cmd_degrade(const DegradeArgs& args, std::ostream& out, std::ostream& err);
int cmd_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err);
int cmd_validate_estimator(const ValidateEstimatorArgs& args, std::ostream& out,
                           std::ostream& err);
int cmd_diffmap(const DiffmapArgs& args, std::ostream& out, std::ostream& err);

}  // namespace illumine
