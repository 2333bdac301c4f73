#include "illumine/commands.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>

#include "illumine/error.hpp"
#include "illumine/illum.hpp"
#include "illumine/metrics.hpp"
#include "illumine/noise.hpp"
#include "illumine/png_io.hpp"
#include "illumine/synth.hpp"

namespace illumine {
namespace {

namespace fs = std::filesystem;

// Signals a bad invocation rather than a failed computation.
struct UsageError : Error {
  using Error::Error;
};

std::vector<fs::path> list_pngs(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (ext == ".png") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

fs::path with_suffix(const fs::path& path, const std::string& suffix) {
  fs::path out = path.parent_path() / path.stem();
  out += suffix;
  out += path.extension().empty() ? fs::path(".png") : path.extension();
  return out;
}

void enhance_one(const fs::path& input, const fs::path& output,
                 const EnhanceArgs& args) {
  const ImageF x = read_png(input);
  const EnhanceResult res = enhance(x, args.config, args.no_denoise);
  write_png(output, res.s);
  if (args.dump_intermediates) {
    write_png(with_suffix(output, "_u"), res.u);

    // v is signed; encode it around mid gray
    ImageF v_vis = res.v;
    double* pv = v_vis.data();
    for (std::size_t i = 0; i < v_vis.size(); ++i) pv[i] += 0.5;
    v_vis.clamp01();
    write_png(with_suffix(output, "_v"), v_vis);

    write_png(with_suffix(output, "_y"), res.y);
    write_png(with_suffix(output, "_alpha"), res.alpha);
  }
}

int run_guarded(std::ostream& err, const std::string& context,
                const std::function<void()>& body) {
  try {
    body();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << (context.empty() ? "" : context + ": ") << e.what() << "\n";
    return kExitProcessing;
  }
}

}  // namespace

int cmd_enhance(const EnhanceArgs& args, std::ostream& out, std::ostream& err) {
  (void)out;
  // run_guarded holds a reference; batch mode updates this to the file in
  // flight so failures are reported with the right name.
  std::string current = args.input.string();
  return run_guarded(err, current, [&] {
    validate_config(args.config);
    if (fs::is_directory(args.input)) {
      const std::vector<fs::path> files = list_pngs(args.input);
      if (files.empty())
        throw Error("no .png files in directory " + args.input.string());
      fs::create_directories(args.output);
      for (const fs::path& f : files) {
        current = f.string();
        enhance_one(f, args.output / f.filename(), args);
      }
    } else {
      enhance_one(args.input, args.output, args);
    }
  });
}

int cmd_estimate_noise(const EstimateNoiseArgs& args, std::ostream& out,
                       std::ostream& err) {
  return run_guarded(err, args.input.string(), [&] {
    const ImageF img = read_png(args.input);
    const NoiseEstimate est = estimate_sigma(img, args.order);
    nlohmann::json j;
    j["order"] = est.order;
    j["aggregate_sigma"] = est.aggregate_sigma * 255.0;
    nlohmann::json per = nlohmann::json::array();
    for (double s : est.per_channel_sigma) per.push_back(s * 255.0);
    j["per_channel_sigma"] = per;
    out << j.dump() << "\n";
  });
}

int cmd_degrade(const DegradeArgs& args, std::ostream& out, std::ostream& err) {
  (void)out;
  return run_guarded(err, args.input.string(), [&] {
    const ImageF s = read_png(args.input);
    DegradeSettings settings;
    settings.gamma = args.gamma;
    settings.noise_sigma = args.noise_sigma_255 / 255.0;
    settings.seed = args.seed;
    write_png(args.output, degrade(s, settings));
  });
}

int cmd_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err) {
  return run_guarded(err, args.enhanced.string(), [&] {
    std::vector<std::string> wanted = args.metrics;
    if (wanted.empty()) wanted = {"psnr", "ssim", "loe", "mse"};
    for (const std::string& m : wanted)
      if (m != "psnr" && m != "ssim" && m != "loe" && m != "mse" && m != "tv_y" &&
          m != "shifted_fidelity")
        throw UsageError("unknown metric '" + m +
                         "' (expected psnr, ssim, loe, mse, tv_y, shifted_fidelity)");

    const ImageF a = promote3(read_png(args.enhanced));
    const ImageF b = promote3(read_png(args.reference));
    MetricsReport report;
    for (const std::string& m : wanted) {
      if (m == "psnr") report.psnr = psnr(a, b);
      else if (m == "ssim") report.ssim = ssim(a, b);
      else if (m == "loe") report.loe = loe(b, a);  // reference is the original
      else if (m == "mse") report.mse = mse(a, b);
      else if (m == "tv_y") report.tv_y = illum_diagnostics(b, a).tv_y;
      else report.shifted_fidelity = illum_diagnostics(b, a).shifted_fidelity;
    }
    out << report.to_json() << "\n";
  });
}

int cmd_validate_estimator(const ValidateEstimatorArgs& args, std::ostream& out,
                           std::ostream& err) {
  return run_guarded(err, args.corpus.string(), [&] {
    if (args.corpus.empty() || !fs::is_directory(args.corpus))
      throw UsageError("corpus must name a directory of PNG images");
    const std::vector<fs::path> files = list_pngs(args.corpus);
    if (files.empty())
      throw UsageError("corpus directory has no .png files: " + args.corpus.string());

    std::vector<ImageF> corpus;
    corpus.reserve(files.size());
    for (const fs::path& f : files) corpus.push_back(read_png(f));

    std::vector<double> sigmas;
    for (double s : args.sigmas_255) sigmas.push_back(s / 255.0);

    const std::vector<ValidationRow> rows =
        validate_estimator(corpus, sigmas, args.orders, args.trials, args.seed);
    const std::string csv = validation_csv(rows);
    if (args.output) {
      std::vector<std::uint8_t> bytes(csv.begin(), csv.end());
      write_file_atomic(*args.output, bytes);
    } else {
      out << csv;
    }
  });
}

int cmd_diffmap(const DiffmapArgs& args, std::ostream& out, std::ostream& err) {
  return run_guarded(err, args.a.string(), [&] {
    const ImageF a = read_png(args.a);
    const ImageF b = read_png(args.b);
    const DiffHeatmap heat = diff_heatmap(a, b);
    write_png(args.output, heat.map);
    nlohmann::json j;
    j["mse"] = heat.mse;
    out << j.dump() << "\n";
  });
}

}  // namespace illumine
