#pragma once

#include <set>
#include <string>
#include <vector>

#include "json.hpp"

namespace lab {

struct ConfigError {
  std::string message;
};

/// One subcommand's options as a JSON object keyed by long flag name (without the dashes).
/// Scalars are numbers or strings, vectors are arrays, switches are booleans.
struct LabConfig {
  std::string command;
  nlohmann::json options = nlohmann::json::object();

  /// `allowed` is the option set of the subcommand; a mismatching command or unknown key throws ConfigError.
  static LabConfig parse(const std::string& text, const std::string& expected_command,
                         const std::set<std::string>& allowed);
  static LabConfig load(const std::string& path, const std::string& expected_command,
                        const std::set<std::string>& allowed);

  /// Canonical form: sorted keys, two-space indent, trailing newline.
  std::string dump() const;

  /// Flag arguments for every option not in `given`, so command-line flags win.
  std::vector<std::string> as_args(const std::set<std::string>& given) const;
};

/// Text of a scalar or array value as it would be written on the command line.
std::string flag_text(const nlohmann::json& value);

}  // namespace lab
