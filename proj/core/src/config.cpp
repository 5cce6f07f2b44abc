#include "lk/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace lk {

namespace {

using nlohmann::json;

std::vector<double> doubles(const json& j, const std::string& where) {
  if (!j.is_array())
    throw ConfigError(where + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number())
      throw ConfigError(where + ": expected an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

DriverPath parse_real_path(const json& j, double T, const std::string& where) {
  if (!j.is_object() || !j.contains("times") || !j.contains("values"))
    throw ConfigError(where + ": expected {\"times\": [...], \"values\": [...]}");
  auto times = doubles(j.at("times"), where + ".times");
  auto values = doubles(j.at("values"), where + ".values");
  try {
    DriverPath path = make_piecewise_linear(std::move(times), std::move(values));
    if (path.horizon() != T)
      throw ConfigError(where + ": final time differs from T");
    return path;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

DriverPath parse_complex_path(const json& j, double T, const std::string& where) {
  if (!j.is_object() || !j.contains("times") || !j.contains("re"))
    throw ConfigError(where + ": expected {\"times\": [...], \"re\": [...], \"im\": [...]}");
  auto times = doubles(j.at("times"), where + ".times");
  auto re = doubles(j.at("re"), where + ".re");
  std::vector<double> im(re.size(), 0.0);
  if (j.contains("im"))
    im = doubles(j.at("im"), where + ".im");
  if (im.size() != re.size())
    throw ConfigError(where + ": re/im length mismatch");
  std::vector<Complex> values(re.size());
  for (std::size_t i = 0; i < re.size(); ++i)
    values[i] = Complex(re[i], im[i]);
  try {
    DriverPath path = make_piecewise_linear(std::move(times), std::move(values));
    if (path.horizon() != T)
      throw ConfigError(where + ": final time differs from T");
    return path;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

ControlFunction parse_omega(const json& j) {
  if (!j.is_object() || !j.contains("form"))
    throw ConfigError("omega: expected {\"form\": \"linear\"|\"table\", ...}");
  const std::string form = j.at("form").get<std::string>();
  try {
    if (form == "linear") {
      if (!j.contains("rate") || !j.at("rate").is_number())
        throw ConfigError("omega: linear form needs a numeric \"rate\"");
      return ControlFunction::linear(j.at("rate").get<double>());
    }
    if (form == "table") {
      return ControlFunction::tabulated(doubles(j.at("s"), "omega.s"),
                                        doubles(j.at("t"), "omega.t"),
                                        doubles(j.at("values"), "omega.values"));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("omega: ") + e.what());
  }
  throw ConfigError("omega: unknown form \"" + form + "\"");
}

int positive_int(const json& j, const std::string& key, int fallback) {
  if (!j.contains(key))
    return fallback;
  if (!j.at(key).is_number_integer() || j.at(key).get<long long>() < 1)
    throw ConfigError(key + ": expected a positive integer");
  return j.at(key).get<int>();
}

} // namespace

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object())
    throw ConfigError("config: expected a JSON object");
  if (!j.contains("T") || !j.at("T").is_number())
    throw ConfigError("config: missing numeric \"T\"");
  const double T = j.at("T").get<double>();
  if (!(T > 0.0) || !std::isfinite(T))
    throw ConfigError("config: T must be positive and finite");
  if (!j.contains("x0"))
    throw ConfigError("config: missing \"x0\"");

  DriverPath x0 = parse_real_path(j.at("x0"), T, "x0");
  std::vector<DriverPath> modes;
  if (j.contains("xs")) {
    if (!j.at("xs").is_array())
      throw ConfigError("xs: expected an array of paths");
    std::size_t idx = 1;
    for (const auto& p : j.at("xs")) {
      std::ostringstream where;
      where << "xs[" << idx - 1 << "]";
      modes.push_back(parse_complex_path(p, T, where.str()));
      ++idx;
    }
  }

  std::optional<double> decay;
  if (j.contains("decay_ratio")) {
    if (!j.at("decay_ratio").is_number())
      throw ConfigError("decay_ratio: expected a number in (0, 1)");
    decay = j.at("decay_ratio").get<double>();
  }

  std::optional<ControlFunction> omega;
  if (j.contains("omega"))
    omega = parse_omega(j.at("omega"));

  RunConfig config([&] {
    try {
      return DriverFamily(std::move(x0), std::move(modes), decay);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("drivers: ") + e.what());
    }
  }());
  config.omega = std::move(omega);

  config.order = positive_int(j, "N", config.order);
  config.grid_segments = positive_int(j, "grid", config.grid_segments);
  config.refinement = positive_int(j, "refinement", config.refinement);
  config.composition_cap = positive_int(j, "composition_cap", config.composition_cap);
  config.control_nmax = positive_int(j, "n_max", config.control_nmax);
  config.control_grid = positive_int(j, "control_grid", config.control_grid);
  config.picard_iterations = positive_int(j, "picard_iterations", config.picard_iterations);

  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer())
      throw ConfigError("seed: expected an unsigned integer");
    config.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("out_dir")) {
    if (!j.at("out_dir").is_string())
      throw ConfigError("out_dir: expected a string");
    config.out_dir = j.at("out_dir").get<std::string>();
  }
  if (j.contains("methods")) {
    if (!j.at("methods").is_array())
      throw ConfigError("methods: expected an array of method names");
    config.methods.clear();
    for (const auto& m : j.at("methods")) {
      const std::string name = m.get<std::string>();
      if (name == "recurrence")
        config.methods.push_back(SolveMethod::recurrence);
      else if (name == "compositions")
        config.methods.push_back(SolveMethod::compositions);
      else if (name == "picard")
        config.methods.push_back(SolveMethod::picard);
      else if (name == "stepper")
        config.methods.push_back(SolveMethod::stepper);
      else
        throw ConfigError("methods: unknown method \"" + name + "\"");
    }
    if (config.methods.empty())
      throw ConfigError("methods: at least one method required");
  }

  if (config.composition_cap > kMaxCompositionOrder)
    throw ConfigError("composition_cap: exceeds the hard cap of 16");
  if (config.control_nmax > config.composition_cap)
    throw ConfigError("n_max: exceeds composition_cap");
  if (static_cast<std::size_t>(config.order) > config.family.truncation_level())
    throw ConfigError("N: exceeds the number of stored driver modes");
  const bool wants_compositions =
      std::find(config.methods.begin(), config.methods.end(),
                SolveMethod::compositions) != config.methods.end();
  if (wants_compositions && config.order > config.composition_cap)
    throw ConfigError("N: exceeds composition_cap while the compositions method is requested");

  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

} // namespace lk
