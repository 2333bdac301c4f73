#include "illumine/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "illumine/error.hpp"

namespace illumine {
namespace {

std::string trim(const std::string& s) {
  const std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end)
    throw ParamError("malformed value '" + value + "' for key '" + key + "'");
  return out;
}

int parse_int(const std::string& key, const std::string& value) {
  int out = 0;
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end)
    throw ParamError("malformed value '" + value + "' for key '" + key + "'");
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end)
    throw ParamError("malformed value '" + value + "' for key '" + key + "'");
  return out;
}

}  // namespace

std::string variant_name(IllumVariant v) {
  return v == IllumVariant::Mean ? "mean" : "optimized";
}

IllumVariant variant_from_string(const std::string& name) {
  if (name == "mean") return IllumVariant::Mean;
  if (name == "optimized") return IllumVariant::Optimized;
  throw ParamError("variant must be 'mean' or 'optimized', got '" + name + "'");
}

void apply_config_entry(PipelineConfig& c, const std::string& key,
                        const std::string& value) {
  if (key == "order") c.order = parse_int(key, value);
  else if (key == "sigma_gate") c.sigma_gate = parse_double(key, value);
  else if (key == "eta") c.eta = parse_double(key, value);
  else if (key == "tv_epsilon") c.tv_epsilon = parse_double(key, value);
  else if (key == "denoise_iters") c.denoise_iters = parse_int(key, value);
  else if (key == "denoise_step") c.denoise_step = parse_double(key, value);
  else if (key == "rel_tol") c.rel_tol = parse_double(key, value);
  else if (key == "variant") c.variant = variant_from_string(value);
  else if (key == "alpha_grid") c.alpha_grid = parse_int(key, value);
  else if (key == "opt_iters") c.opt_iters = parse_int(key, value);
  else if (key == "opt_step") c.opt_step = parse_double(key, value);
  else if (key == "lambda_srr") c.lambda_srr = parse_double(key, value);
  else if (key == "lambda_nr") c.lambda_nr = parse_double(key, value);
  else if (key == "epsilon_div") c.epsilon_div = parse_double(key, value);
  else if (key == "seed") c.seed = parse_u64(key, value);
  else throw ParamError("unknown config key '" + key + "'");
}

PipelineConfig load_config_file(const std::filesystem::path& path,
                                const PipelineConfig& base) {
  std::ifstream in(path);
  if (!in) throw ParamError("cannot open config file " + path.string());
  PipelineConfig config = base;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParamError(path.string() + ":" + std::to_string(lineno) +
                       ": expected 'key = value'");
    try {
      apply_config_entry(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ParamError& e) {
      throw ParamError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  validate_config(config);
  return config;
}

void validate_config(const PipelineConfig& c) {
  auto fail = [](const std::string& what) { throw ParamError("config: " + what); };
  if (c.order < 1 || c.order > 16) fail("order must be in [1, 16]");
  if (!(c.sigma_gate >= 0.0) || !std::isfinite(c.sigma_gate)) fail("sigma_gate must be >= 0");
  if (!(c.eta > 0.0) || !std::isfinite(c.eta)) fail("eta must be > 0");
  if (!(c.tv_epsilon > 0.0)) fail("tv_epsilon must be > 0");
  if (c.denoise_iters < 1) fail("denoise_iters must be >= 1");
  if (!(c.denoise_step > 0.0)) fail("denoise_step must be > 0");
  if (!(c.rel_tol >= 0.0)) fail("rel_tol must be >= 0");
  if (c.alpha_grid < 1) fail("alpha_grid must be >= 1");
  if (c.opt_iters < 0) fail("opt_iters must be >= 0");
  if (!(c.opt_step > 0.0)) fail("opt_step must be > 0");
  if (!(c.lambda_srr >= 0.0) || !std::isfinite(c.lambda_srr)) fail("lambda_srr must be >= 0");
  if (!(c.lambda_nr >= 0.0) || !std::isfinite(c.lambda_nr)) fail("lambda_nr must be >= 0");
  if (!(c.epsilon_div > 0.0)) fail("epsilon_div must be > 0");
}

}  // namespace illumine
