#include "config.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace nmd::cli {

namespace {

namespace pt = boost::property_tree;

// Round-trip exact representation for dumped configs.
std::string exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double to_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("config key " + key + ": '" + text + "' is not a number");
  }
  if (used != text.size()) throw std::invalid_argument("config key " + key + ": trailing characters in '" + text + "'");
  return v;
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw std::invalid_argument("config key " + key + ": '" + text + "' is not a boolean");
}

}  // namespace

BellCoefficients parse_triple(const std::string& text) {
  std::stringstream ss(text);
  std::string item;
  double v[3];
  int n = 0;
  while (std::getline(ss, item, ',')) {
    if (n == 3) throw std::invalid_argument("expected three comma-separated numbers, got '" + text + "'");
    v[n++] = to_double("c", item);
  }
  if (n != 3) throw std::invalid_argument("expected three comma-separated numbers, got '" + text + "'");
  return {v[0], v[1], v[2]};
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  if (text == "text") return OutputFormat::text;
  throw std::invalid_argument("unknown format '" + text + "' (expected csv, json or text)");
}

const char* format_name(OutputFormat format) {
  switch (format) {
    case OutputFormat::csv: return "csv";
    case OutputFormat::json: return "json";
    case OutputFormat::text: return "text";
  }
  return "csv";
}

void RunConfig::validate() const {
  kernel.validate();
  grid.validate();
  if (family_sign != 1 && family_sign != -1) throw std::invalid_argument("family sign must be +1 or -1");
  if (c && family) throw std::invalid_argument("give either --c or --family, not both");
  if (family && family_param.empty()) throw std::invalid_argument("--family needs --family-param");
}

BellCoefficients RunConfig::initial_state() const {
  if (c) return *c;
  if (!family) throw std::invalid_argument("no initial state: give --c or --family");
  InitialFamily f;
  f.kind = *family;
  f.sign = family_sign;
  std::stringstream ss(family_param);
  std::string first, second;
  std::getline(ss, first, ',');
  f.x = to_double("family_param", first);
  if (std::getline(ss, second, ',')) {
    if (f.kind != FamilyKind::sudden_change)
      throw std::invalid_argument("only the sudden_change family takes two parameters");
    f.y = to_double("family_param", second);
  } else if (f.kind == FamilyKind::sudden_change) {
    throw std::invalid_argument("sudden_change family needs --family-param c_x,c_y");
  }
  return make_family_state(f);
}

void load_config(std::istream& is, RunConfig& config) {
  pt::ptree tree;
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw std::invalid_argument(std::string("config file: ") + e.what());
  }
  auto with = [&](const char* key, auto&& apply) {
    if (auto v = tree.get_optional<std::string>(key)) apply(std::string(key), *v);
  };
  with("kernel.a", [&](const std::string& k, const std::string& v) { config.kernel.a = to_double(k, v); });
  with("kernel.A", [&](const std::string& k, const std::string& v) { config.kernel.A = to_double(k, v); });
  with("kernel.gamma", [&](const std::string& k, const std::string& v) { config.kernel.gamma = to_double(k, v); });
  with("channels.a", [&](const std::string&, const std::string& v) { config.channel_a = parse_channel(v); });
  with("channels.b", [&](const std::string&, const std::string& v) { config.channel_b = parse_channel(v); });
  with("state.c", [&](const std::string&, const std::string& v) {
    if (!v.empty()) config.c = parse_triple(v);
  });
  with("state.family", [&](const std::string&, const std::string& v) {
    if (!v.empty()) config.family = parse_family(v);
  });
  with("state.family_param", [&](const std::string&, const std::string& v) { config.family_param = v; });
  with("state.family_sign", [&](const std::string& k, const std::string& v) {
    config.family_sign = static_cast<int>(to_double(k, v));
  });
  with("state.rho", [&](const std::string&, const std::string& v) { config.rho_path = v; });
  with("grid.t_max", [&](const std::string& k, const std::string& v) { config.grid.t_max = to_double(k, v); });
  with("grid.t_steps", [&](const std::string& k, const std::string& v) {
    const double n = to_double(k, v);
    if (n < 2 || n != static_cast<double>(static_cast<std::size_t>(n)))
      throw std::invalid_argument("config key grid.t_steps must be an integer >= 2");
    config.grid.points = static_cast<std::size_t>(n);
  });
  with("output.out", [&](const std::string&, const std::string& v) { config.out = v; });
  with("output.format", [&](const std::string&, const std::string& v) {
    if (!v.empty()) config.format = parse_format(v);
  });
  with("run.markovian", [&](const std::string& k, const std::string& v) { config.markovian = to_bool(k, v); });
  with("run.oracle", [&](const std::string& k, const std::string& v) { config.oracle = to_bool(k, v); });
  with("run.threads", [&](const std::string& k, const std::string& v) {
    config.threads = static_cast<unsigned>(to_double(k, v));
  });
}

void save_config(std::ostream& os, const RunConfig& config) {
  pt::ptree tree;
  tree.put("kernel.a", exact(config.kernel.a));
  tree.put("kernel.A", exact(config.kernel.A));
  tree.put("kernel.gamma", exact(config.kernel.gamma));
  tree.put("channels.a", channel_name(config.channel_a));
  tree.put("channels.b", channel_name(config.channel_b));
  if (config.c)
    tree.put("state.c", exact(config.c->cx) + "," + exact(config.c->cy) + "," + exact(config.c->cz));
  if (config.family) {
    tree.put("state.family", family_name(*config.family));
    tree.put("state.family_param", config.family_param);
    tree.put("state.family_sign", std::to_string(config.family_sign));
  }
  if (!config.rho_path.empty()) tree.put("state.rho", config.rho_path);
  tree.put("grid.t_max", exact(config.grid.t_max));
  tree.put("grid.t_steps", std::to_string(config.grid.points));
  if (!config.out.empty()) tree.put("output.out", config.out);
  if (config.format) tree.put("output.format", format_name(*config.format));
  tree.put("run.markovian", config.markovian ? "true" : "false");
  tree.put("run.oracle", config.oracle ? "true" : "false");
  tree.put("run.threads", std::to_string(config.threads));
  pt::write_ini(os, tree);
}

}  // namespace nmd::cli
