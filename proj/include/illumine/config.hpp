#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace illumine {

enum class IllumVariant { Mean, Optimized };

std::string variant_name(IllumVariant v);
IllumVariant variant_from_string(const std::string& name);

// Every tunable of the pipeline. Config files are plain `key = value` lines
// with `#` comments; keys match the field names below. Sigma-valued fields
// are on the unit intensity scale.
struct PipelineConfig {
  int order = 1;              // gradient order of the noise estimator
  double sigma_gate = 0.01;   // denoising gate threshold
  double eta = 2.0;           // TV weight multiplier
  double tv_epsilon = 1e-3;
  int denoise_iters = 200;
  double denoise_step = 0.1;
  double rel_tol = 1e-6;
  IllumVariant variant = IllumVariant::Optimized;
  int alpha_grid = 16;   // interpolation grid is alpha_grid x alpha_grid per channel
  int opt_iters = 200;
  double opt_step = 0.5;
  double lambda_srr = 1.0;
  double lambda_nr = 1.0;
  double epsilon_div = 1e-4;  // guard for the Retinex division
  std::uint64_t seed = 0;
};

// Applies one key/value pair; unknown keys and malformed values raise
// ParamError.
void apply_config_entry(PipelineConfig& config, const std::string& key,
                        const std::string& value);

// Parses a config file on top of `base`. Rejects unknown keys before any
// other work happens.
PipelineConfig load_config_file(const std::filesystem::path& path,
                                const PipelineConfig& base = {});

// Domain check over all fields; raises ParamError on the first violation.
void validate_config(const PipelineConfig& config);

}  // namespace illumine
