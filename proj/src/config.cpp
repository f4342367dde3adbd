#include "wavexp/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace wavexp {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key))
      throw std::invalid_argument("unknown key \"" + key + "\" in " + where);
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (aux_order < 3)
    throw std::invalid_argument("wavelet.aux_order must be >= 3");
  if (kernel != "squared_exponential" && kernel != "matern" && kernel != "zero")
    throw std::invalid_argument("model.kernel must be squared_exponential, "
                                "matern, or zero");
  if (kernel != "zero") {
    if (!(variance > 0.0))
      throw std::invalid_argument("model.variance must be positive");
    if (!(length > 0.0))
      throw std::invalid_argument("model.length must be positive");
  }
  if (kernel == "matern" && !(nu >= 2.5))
    throw std::invalid_argument(
        "model.nu must be >= 2.5 (condition 6: finite fourth spectral "
        "moments)");
  if (schedule.empty())
    throw std::invalid_argument("schedule must contain at least one scheme");
  for (const auto& s : schedule) s.validate();
  if (!(T > 0.0)) throw std::invalid_argument("grid.T must be positive");
  if (grid_points < 2)
    throw std::invalid_argument("grid.points must be >= 2");
  if (!(alpha > 0.5 && alpha <= 1.0))
    throw std::invalid_argument("parameters.alpha must lie in (1/2, 1]");
  if (!(gamma > 0.0 && gamma < 0.5))
    throw std::invalid_argument("parameters.gamma must lie in (0, 1/2)");
  for (double e : eps)
    if (!(e > 0.0))
      throw std::invalid_argument("parameters.eps entries must be positive");
  if (replicates < 100)
    throw std::invalid_argument("parameters.replicates must be >= 100");
  if (out_dir.empty())
    throw std::invalid_argument("output.dir must be non-empty");
}

SpectralModel ExperimentConfig::build_model() const {
  if (kernel == "squared_exponential")
    return make_squared_exponential(variance, length);
  if (kernel == "matern") return make_matern(nu, variance, length);
  return make_zero();
}

WaveletPair ExperimentConfig::build_pair() const {
  return WaveletPair::build_meyer(aux_order);
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") +
                                e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config root must be an object");
  require_keys(j, "config root",
               {"wavelet", "model", "schedule", "grid", "parameters",
                "output"});

  ExperimentConfig c;
  if (j.contains("wavelet")) {
    require_keys(j["wavelet"], "wavelet", {"aux_order"});
    c.aux_order = j["wavelet"].value("aux_order", c.aux_order);
  }
  if (j.contains("model")) {
    require_keys(j["model"], "model", {"kernel", "variance", "length", "nu"});
    c.kernel = j["model"].value("kernel", c.kernel);
    c.variance = j["model"].value("variance", c.variance);
    c.length = j["model"].value("length", c.length);
    c.nu = j["model"].value("nu", c.nu);
  }
  if (j.contains("schedule")) {
    if (!j["schedule"].is_array())
      throw std::invalid_argument("schedule must be an array");
    for (const auto& s : j["schedule"]) {
      require_keys(s, "schedule entry", {"n", "k0", "kj"});
      TruncationScheme scheme;
      scheme.n = s.value("n", 0);
      scheme.k0 = s.value("k0", 0);
      if (s.contains("kj")) {
        if (s["kj"].is_array())
          scheme.kj = s["kj"].get<std::vector<int>>();
        else
          scheme.kj.assign(static_cast<size_t>(std::max(scheme.n, 0)),
                           s["kj"].get<int>());
      }
      c.schedule.push_back(std::move(scheme));
    }
  }
  if (j.contains("grid")) {
    require_keys(j["grid"], "grid", {"T", "points"});
    c.T = j["grid"].value("T", c.T);
    c.grid_points = j["grid"].value("points", c.grid_points);
  }
  if (j.contains("parameters")) {
    require_keys(j["parameters"], "parameters",
                 {"alpha", "gamma", "eps", "replicates", "seed"});
    c.alpha = j["parameters"].value("alpha", c.alpha);
    c.gamma = j["parameters"].value("gamma", c.gamma);
    if (j["parameters"].contains("eps"))
      c.eps = j["parameters"]["eps"].get<std::vector<double>>();
    c.replicates = j["parameters"].value("replicates", c.replicates);
    c.seed = j["parameters"].value("seed", c.seed);
  }
  if (j.contains("output")) {
    require_keys(j["output"], "output", {"dir"});
    c.out_dir = j["output"].value("dir", c.out_dir);
  }
  if (c.eps.empty()) c.eps = {0.5};
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string default_config_json() {
  return R"({
  "wavelet": {"aux_order": 3},
  "model": {"kernel": "squared_exponential", "variance": 1.0, "length": 1.0},
  "schedule": [
    {"n": 1, "k0": 8, "kj": 8},
    {"n": 2, "k0": 16, "kj": 16},
    {"n": 4, "k0": 32, "kj": 32},
    {"n": 6, "k0": 64, "kj": 64}
  ],
  "grid": {"T": 10.0, "points": 257},
  "parameters": {"alpha": 0.75, "gamma": 0.4, "eps": [0.5],
                 "replicates": 2000, "seed": 1},
  "output": {"dir": "out"}
})";
}

}  // namespace wavexp
