#include "shocklab/run_config.hpp"

#include <charconv>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "shocklab/errors.hpp"

namespace shocklab {

RunConfig::RunConfig() {
  values_ = {
      {"seed.family", "bump"},
      {"seed.amplitude", "1"},
      {"seed.target_margin", ""},
      {"seed.csv", ""},
      {"model.g2", "1"},
      {"model.delta", "0.05"},
      {"model.r0", "10"},
      {"grid.cells_per_delta", "512"},
      {"grid.pad_in", "2"},
      {"grid.pad_out", "3"},
      {"grid.cfl", "0.8"},
      {"solver.viscosity", "0.001"},
      {"solver.viscosity_threshold", "0.1"},
      {"run.t_end", "-1"},
      {"run.stop_mu", "0.05"},
      {"run.snapshots", "20"},
      {"fan.n_rays", "257"},
      {"fan.buffer_fraction", "0.2"},
      {"fan.samples", "200"},
      {"fan.csv_ray_stride", "4"},
      {"burgers.profile", "sine"},
      {"burgers.n_rays", "1024"},
      {"burgers.t_check", "0.5"},
      {"burgers.dt", "0.001"},
      {"burgers.window_fraction", "0.9"},
      {"sweep.param", "r0"},
      {"sweep.values", "10,20,40,80"},
      {"sweep.mode", "datagen"},
      {"sweep.workers", "0"},
  };
}

RunConfig RunConfig::from_ini(const std::filesystem::path& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(path.string(), tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("cannot read config: ") + e.what());
  }
  RunConfig cfg;
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw ConfigError("config key '" + section + "' must sit inside a [section]");
    for (const auto& [key, value] : body) cfg.set(section + "." + key, value.data());
  }
  return cfg;
}

void RunConfig::set(const std::string& assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + assignment + "'");
  set(assignment.substr(0, eq), assignment.substr(eq + 1));
}

void RunConfig::set(const std::string& key, const std::string& value) {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown config key '" + key + "'");
  it->second = value;
}

std::string RunConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown config key '" + key + "'");
  return it->second;
}

namespace {

double parse_double(const std::string& key, std::string text) {
  auto b = text.find_first_not_of(" \t");
  auto e = text.find_last_not_of(" \t");
  text = b == std::string::npos ? std::string() : text.substr(b, e - b + 1);
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ConfigError("config key '" + key + "' expects a number, got '" + text + "'");
  }
  return v;
}

}  // namespace

double RunConfig::number(const std::string& key) const { return parse_double(key, get(key)); }

int RunConfig::integer(const std::string& key) const {
  double v = number(key);
  if (v != static_cast<int>(v)) throw ConfigError("config key '" + key + "' expects an integer");
  return static_cast<int>(v);
}

std::vector<double> RunConfig::number_list(const std::string& key) const {
  std::vector<double> out;
  std::stringstream ss(get(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(parse_double(key, item));
  }
  return out;
}

ModelParams RunConfig::model() const {
  ModelParams p{number("model.g2"), number("model.delta"), number("model.r0")};
  p.validate();
  return p;
}

SeedProfile RunConfig::seed() const {
  SeedProfile seed = has_value("seed.csv") ? load_seed_csv(get("seed.csv"))
                                            : make_seed(get("seed.family"), number("seed.amplitude"));
  seed.validate();
  if (has_value("seed.target_margin")) seed = scale_to_margin(seed, model(), number("seed.target_margin"));
  return seed;
}

GridSpec RunConfig::grid() const {
  GridSpec g = pulse_grid(model(), integer("grid.cells_per_delta"), integer("grid.pad_in"), integer("grid.pad_out"),
                          number("grid.cfl"));
  g.validate();
  return g;
}

SolverOptions RunConfig::solver() const {
  SolverOptions s;
  s.cfl = number("grid.cfl");
  s.viscosity = number("solver.viscosity");
  s.viscosity_threshold = number("solver.viscosity_threshold");
  return s;
}

FanOptions RunConfig::fan() const {
  FanOptions f;
  f.n_rays = integer("fan.n_rays");
  f.buffer_fraction = number("fan.buffer_fraction");
  f.sample_count = integer("fan.samples");
  return f;
}

EvolveOptions RunConfig::evolve() const {
  EvolveOptions e;
  e.t_end = number("run.t_end");
  e.stop_mu = number("run.stop_mu");
  e.snapshot_count = integer("run.snapshots");
  return e;
}

}  // namespace shocklab
