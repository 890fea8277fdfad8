#pragma once

// Flat key-value run configuration and the command entry points behind the
// C API.  Every command returns a Table.

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace vdw {

struct ConfigKey {
  const char* name;
  const char* default_value;
  const char* doc;
};

const std::vector<ConfigKey>& config_keys();

class RunConfig {
 public:
  RunConfig();

  // Unknown keys and unparsable values raise invalid_argument.
  void set(const std::string& key, const std::string& value);
  const std::string& get(const std::string& key) const;

  double real(const std::string& key) const;
  long integer(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;
  std::vector<long> integers(const std::string& key) const;

  // Checks the common bounds plus the ones specific to `command`.
  void validate(const std::string& command) const;

 private:
  std::map<std::string, std::string> values_;
};

struct Cell {
  double num = 0.0;
  std::string text;
  bool is_text = false;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, std::string>> meta;
  // False when a verification inside the command failed.
  bool passed = true;
};

const std::vector<std::string>& commands();

// Dispatches to simulate, verify, sweep, growth, continue or picard.
Table run_command(const RunConfig& cfg, const std::string& command);

}  // namespace vdw
