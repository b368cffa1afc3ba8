#include "lab_config.hpp"

#include <fstream>
#include <sstream>

namespace lab {

using nlohmann::json;

namespace {

std::string scalar_text(const json& v, const std::string& path) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return v.dump();
  throw ConfigError{path + ": expected a number or string"};
}

void check_value(const json& v, const std::string& path) {
  if (v.is_boolean()) return;
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) scalar_text(v[i], path + "[" + std::to_string(i) + "]");
    return;
  }
  scalar_text(v, path);
}

}  // namespace

std::string flag_text(const json& value) {
  if (!value.is_array()) return scalar_text(value, "value");
  std::string out;
  for (std::size_t i = 0; i < value.size(); ++i) out += (i ? "," : "") + scalar_text(value[i], "value");
  return out;
}

LabConfig LabConfig::parse(const std::string& text, const std::string& expected_command,
                           const std::set<std::string>& allowed) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError{std::string("config: ") + e.what()};
  }
  if (!doc.is_object()) throw ConfigError{"config: top level must be an object"};
  LabConfig cfg;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() == "command") {
      if (!it->is_string()) throw ConfigError{"config.command: expected a string"};
      cfg.command = it->get<std::string>();
    } else if (it.key() == "options") {
      if (!it->is_object()) throw ConfigError{"config.options: expected an object"};
      cfg.options = *it;
    } else {
      throw ConfigError{"config." + it.key() + ": unknown key"};
    }
  }
  if (cfg.command.empty()) cfg.command = expected_command;
  if (cfg.command != expected_command)
    throw ConfigError{"config.command: '" + cfg.command + "' does not match subcommand '" + expected_command + "'"};
  for (auto it = cfg.options.begin(); it != cfg.options.end(); ++it) {
    std::string path = "config.options." + it.key();
    if (!allowed.count(it.key())) throw ConfigError{path + ": unknown option for '" + expected_command + "'"};
    check_value(*it, path);
  }
  return cfg;
}

LabConfig LabConfig::load(const std::string& path, const std::string& expected_command,
                          const std::set<std::string>& allowed) {
  std::ifstream in(path);
  if (!in) throw ConfigError{"config: cannot open '" + path + "'"};
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), expected_command, allowed);
}

std::string LabConfig::dump() const {
  json doc = {{"command", command}, {"options", options}};
  return doc.dump(2) + "\n";
}

std::vector<std::string> LabConfig::as_args(const std::set<std::string>& given) const {
  std::vector<std::string> args;
  for (auto it = options.begin(); it != options.end(); ++it) {
    if (given.count(it.key())) continue;
    if (it->is_boolean()) {
      if (it->get<bool>()) args.push_back("--" + it.key());
      continue;
    }
    args.push_back("--" + it.key());
    args.push_back(flag_text(*it));
  }
  return args;
}

}  // namespace lab
