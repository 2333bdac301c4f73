#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "illumine/commands.hpp"
#include "illumine/config.hpp"
#include "illumine/error.hpp"

namespace {

using illumine::PipelineConfig;

// Deferred key=value overrides recorded while parsing; applied on top of the
// config file so flags always win.
struct ConfigCli {
  std::string file;
  std::vector<std::pair<std::string, std::string>> overrides;

  void attach(CLI::App* cmd) {
    cmd->add_option("-c,--config", file, "config file with 'key = value' lines");
    static const std::pair<const char*, const char*> keys[] = {
        {"--order", "order"},
        {"--sigma-gate", "sigma_gate"},
        {"--eta", "eta"},
        {"--tv-epsilon", "tv_epsilon"},
        {"--denoise-iters", "denoise_iters"},
        {"--denoise-step", "denoise_step"},
        {"--rel-tol", "rel_tol"},
        {"--variant", "variant"},
        {"--alpha-grid", "alpha_grid"},
        {"--opt-iters", "opt_iters"},
        {"--opt-step", "opt_step"},
        {"--lambda-srr", "lambda_srr"},
        {"--lambda-nr", "lambda_nr"},
        {"--epsilon-div", "epsilon_div"},
        {"--seed", "seed"}};
    for (const auto& [flag, key] : keys) {
      const std::string k = key;
      cmd->add_option_function<std::string>(
          flag,
          [this, k](const std::string& v) { overrides.emplace_back(k, v); },
          "overrides config key " + k);
    }
  }

  PipelineConfig resolve() const {
    PipelineConfig config;
    if (!file.empty()) config = illumine::load_config_file(file);
    for (const auto& [key, value] : overrides)
      illumine::apply_config_entry(config, key, value);
    illumine::validate_config(config);
    return config;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"low-light image enhancement: noise-gated TV denoising followed by "
               "illuminance interpolation"};
  app.require_subcommand(1);
  int rc = 0;

  // enhance
  illumine::EnhanceArgs enhance_args;
  ConfigCli enhance_cfg;
  auto* enh = app.add_subcommand("enhance", "enhance a PNG (or a directory of PNGs)");
  enh->add_option("input", enhance_args.input, "input PNG file or directory")->required();
  enh->add_option("output", enhance_args.output, "output PNG file or directory")->required();
  enh->add_flag("--no-denoise", enhance_args.no_denoise, "skip the denoising stage");
  enh->add_flag("--dump-intermediates", enhance_args.dump_intermediates,
                "also write _u, _v, _y and _alpha PNGs next to the output");
  enhance_cfg.attach(enh);
  enh->callback([&] {
    enhance_args.config = enhance_cfg.resolve();
    rc = illumine::cmd_enhance(enhance_args, std::cout, std::cerr);
  });

  // estimate-noise
  illumine::EstimateNoiseArgs noise_args;
  auto* est = app.add_subcommand("estimate-noise",
                                 "print the estimated noise level (255 scale) as JSON");
  est->add_option("input", noise_args.input, "input PNG file")->required();
  est->add_option("--order", noise_args.order, "gradient order of the estimator");
  est->callback([&] { rc = illumine::cmd_estimate_noise(noise_args, std::cout, std::cerr); });

  // degrade
  illumine::DegradeArgs degrade_args;
  auto* deg = app.add_subcommand("degrade", "synthesize a low-light version of a PNG");
  deg->add_option("input", degrade_args.input, "input PNG file")->required();
  deg->add_option("output", degrade_args.output, "output PNG file")->required();
  deg->add_option("--gamma", degrade_args.gamma, "degradation strength, >= 0");
  deg->add_option("--noise-sigma", degrade_args.noise_sigma_255,
                  "Gaussian noise sigma on the 255 scale");
  deg->add_option("--seed", degrade_args.seed, "noise stream seed");
  deg->callback([&] { rc = illumine::cmd_degrade(degrade_args, std::cout, std::cerr); });

  // evaluate
  illumine::EvaluateArgs eval_args;
  auto* ev = app.add_subcommand("evaluate", "print a JSON metrics report for an image pair");
  ev->add_option("enhanced", eval_args.enhanced, "enhanced PNG")->required();
  ev->add_option("reference", eval_args.reference, "reference PNG")->required();
  ev->add_option("--metrics", eval_args.metrics,
                 "comma-separated subset of psnr,ssim,loe,mse")
      ->delimiter(',');
  ev->callback([&] { rc = illumine::cmd_evaluate(eval_args, std::cout, std::cerr); });

  // validate-estimator
  illumine::ValidateEstimatorArgs val_args;
  auto* val = app.add_subcommand(
      "validate-estimator", "Monte-Carlo study of the noise estimator, CSV output");
  val->add_option("--corpus", val_args.corpus, "directory of PNG images")->required();
  val->add_option("--sigmas", val_args.sigmas_255, "noise sigmas on the 255 scale")
      ->delimiter(',');
  val->add_option("--orders", val_args.orders, "gradient orders to evaluate")->delimiter(',');
  val->add_option("--trials", val_args.trials, "noise realizations per image and sigma");
  val->add_option("--seed", val_args.seed, "base seed for the noise streams");
  std::string val_output;
  val->add_option("--output", val_output, "write CSV here instead of stdout");
  val->callback([&] {
    if (!val_output.empty()) val_args.output = val_output;
    rc = illumine::cmd_validate_estimator(val_args, std::cout, std::cerr);
  });

  // diffmap
  illumine::DiffmapArgs diff_args;
  auto* dif = app.add_subcommand("diffmap",
                                 "write the scaled squared-difference heatmap of two PNGs");
  dif->add_option("a", diff_args.a, "first PNG")->required();
  dif->add_option("b", diff_args.b, "second PNG")->required();
  dif->add_option("output", diff_args.output, "heatmap PNG")->required();
  dif->callback([&] { rc = illumine::cmd_diffmap(diff_args, std::cout, std::cerr); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : illumine::kExitUsage;
  } catch (const illumine::ParamError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return illumine::kExitUsage;
  }
  return rc;
}
