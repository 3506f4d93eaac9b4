#include "tunnel/run_config.hpp"

#include "tunnel/atom_field.hpp"
#include "tunnel/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace tunnel {

namespace {

namespace pt = boost::property_tree;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& raw, const std::string& key) {
  const std::string text = trim(raw);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ConfigError("config: '" + key + "' expects a number, got '" + raw + "'");
  return value;
}

int parse_int(const std::string& raw, const std::string& key) {
  const double v = parse_number(raw, key);
  if (v != static_cast<int>(v)) throw ConfigError("config: '" + key + "' expects an integer, got '" + raw + "'");
  return static_cast<int>(v);
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

Setter number(double RunSettings::*field) {
  return [field](RunConfig& c, const std::string& v, const std::string& k) { c.settings.*field = parse_number(v, k); };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"atom.Z", number(&RunSettings::Z)},
      {"sweep.e0_over_z3",
       [](RunConfig& c, const std::string& v, const std::string&) { c.e0_over_z3 = parse_number_list(v); }},
      {"sweep.gamma", [](RunConfig& c, const std::string& v, const std::string&) { c.gammas = parse_number_list(v); }},
      {"grid.dx", number(&RunSettings::dx)},
      {"grid.spectrum_half_width", number(&RunSettings::spectrum_half_width)},
      {"grid.box_left", number(&RunSettings::box_left)},
      {"grid.box_right", number(&RunSettings::box_right)},
      {"grid.delay_half_width", number(&RunSettings::delay_half_width)},
      {"propagation.dt", number(&RunSettings::dt)},
      {"propagation.record_stride",
       [](RunConfig& c, const std::string& v, const std::string& k) { c.settings.record_stride = parse_int(v, k); }},
      {"propagation.pre_window", number(&RunSettings::pre_window)},
      {"propagation.post_window", number(&RunSettings::post_window)},
      {"propagation.absorber_width", number(&RunSettings::absorber_width)},
      {"propagation.absorber_strength", number(&RunSettings::absorber_strength)},
      {"propagation.growth_threshold", number(&RunSettings::growth_threshold)},
      {"propagation.resolved_momentum", number(&RunSettings::resolved_momentum)},
      {"propagation.mode",
       [](RunConfig& c, const std::string& v, const std::string& k) {
         const std::string mode = trim(v);
         if (mode == "full")
           c.settings.delay_only = false;
         else if (mode == "delay")
           c.settings.delay_only = true;
         else
           throw ConfigError("config: '" + k + "' must be 'full' or 'delay', got '" + v + "'");
       }},
      {"output.directory", [](RunConfig& c, const std::string& v, const std::string&) { c.output_dir = trim(v); }},
      {"output.snapshot_times",
       [](RunConfig& c, const std::string& v, const std::string&) { c.settings.snapshot_times = parse_number_list(v); }},
  };
  return table;
}

RunConfig from_tree(const pt::ptree& tree) {
  RunConfig cfg;
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw ConfigError("config: key '" + section + "' outside of a section");
    for (const auto& [key, value] : body) {
      const std::string full = section + "." + key;
      const auto it = setters().find(full);
      if (it == setters().end()) throw ConfigError("config: unknown key '" + full + "'");
      it->second(cfg, value.data(), full);
    }
  }
  return cfg;
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item, "list"));
  return out;
}

void RunConfig::validate() const {
  const RunSettings& s = settings;
  if (!(s.Z > 0.0)) throw ConfigError("config: Z must be positive");
  if (!(s.dx > 0.0) || !(s.dt > 0.0)) throw ConfigError("config: dx and dt must be positive");
  if (s.record_stride < 1) throw ConfigError("config: record_stride must be >= 1");
  if (s.box_left < s.spectrum_half_width || s.box_right < s.spectrum_half_width)
    throw ConfigError("config: the propagation box must contain the eigenstate box");
  if (s.detector_count < 2) throw ConfigError("config: need at least two detectors");
  if (e0_over_z3.empty() || gammas.empty()) throw ConfigError("config: the E0 and gamma lists must not be empty");
  const double limit = over_barrier_threshold(1.0);
  for (double r : e0_over_z3)
    if (!(r > 0.0) || !(r < limit))
      throw ConfigError("config: E0/Z^3 = " + std::to_string(r) + " is not in (0, " + std::to_string(limit) + ")");
  for (double g : gammas)
    if (!(g > 0.0) || !(g < 1.0)) throw ConfigError("config: gamma = " + std::to_string(g) + " is not in (0, 1)");
}

RunConfig parse_config_text(const std::string& text) {
  std::istringstream is(text);
  pt::ptree tree;
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return from_tree(tree);
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot open " + path.string());
  std::stringstream buffer;
  buffer << is.rdbuf();
  try {
    return parse_config_text(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace tunnel
