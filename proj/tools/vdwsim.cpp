// vdwsim: command-line front end over the vdw C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "csv_io.hpp"
#include "vdw/vdw.h"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct Failure {
  int code;
  std::string message;
};

void check(vdw_status s, const std::string& context) {
  if (s != VDW_OK) throw Failure{1, context + ": " + vdw_last_error()};
}

std::string flag_name(std::string key) {
  for (char& c : key)
    if (c == '_') c = '-';
  return "--" + key;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// key = value lines, '#' starts a comment.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{1, "cannot open config file '" + path + "'"};
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Failure{1, path + ":" + std::to_string(n) + ": expected 'key = value'"};
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

void write_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Failure{1, "cannot write '" + tmp.string() + "'"};
    out << content;
    out.flush();
    if (!out) throw Failure{1, "write failed for '" + tmp.string() + "'"};
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Failure{1, "cannot rename into '" + path.string() + "'"};
  }
}

struct TableDeleter {
  void operator()(vdw_table* t) const { vdw_table_destroy(t); }
};
struct ConfigDeleter {
  void operator()(vdw_config* c) const { vdw_config_destroy(c); }
};

std::string cell_string(const vdw_table* t, size_t r, size_t c) {
  if (vdw_table_is_text(t, r, c)) return vdw_table_text(t, r, c);
  return vdwsim::format_number(vdw_table_number(t, r, c));
}

vdwsim::CsvData to_csv(const vdw_table* t) {
  vdwsim::CsvData d;
  for (size_t c = 0; c < vdw_table_cols(t); ++c) d.columns.push_back(vdw_table_column(t, c));
  for (size_t r = 0; r < vdw_table_rows(t); ++r) {
    std::vector<std::string> row;
    for (size_t c = 0; c < vdw_table_cols(t); ++c) row.push_back(cell_string(t, r, c));
    d.rows.push_back(std::move(row));
  }
  return d;
}

std::map<std::string, std::string> meta_of(const vdw_table* t) {
  std::map<std::string, std::string> m;
  for (size_t i = 0; i < vdw_table_meta_count(t); ++i) m[vdw_table_meta_key(t, i)] = vdw_table_meta_value(t, i);
  return m;
}

struct Options {
  std::string config_file;
  std::vector<std::string> sets;
  std::map<std::string, std::string> flags;
  std::string name;
  bool quiet = false;
};

int run(const std::string& command, const Options& opt) {
  vdw_config* raw = nullptr;
  check(vdw_config_create(&raw), "config");
  std::unique_ptr<vdw_config, ConfigDeleter> cfg(raw);

  if (const char* env = std::getenv("VDW_OUTPUT_DIR")) check(vdw_config_set(cfg.get(), "output_dir", env), "env");
  if (!opt.config_file.empty())
    for (const auto& [k, v] : read_config_file(opt.config_file))
      check(vdw_config_set(cfg.get(), k.c_str(), v.c_str()), opt.config_file);
  for (const auto& s : opt.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw Failure{1, "--set expects key=value, got '" + s + "'"};
    check(vdw_config_set(cfg.get(), trim(s.substr(0, eq)).c_str(), trim(s.substr(eq + 1)).c_str()), "--set");
  }
  for (const auto& [k, v] : opt.flags) check(vdw_config_set(cfg.get(), k.c_str(), v.c_str()), flag_name(k));
  check(vdw_config_validate(cfg.get(), command.c_str()), "invalid configuration");

  const char* od = nullptr;
  check(vdw_config_get(cfg.get(), "output_dir", &od), "output_dir");
  const fs::path dir = *od ? fs::path(od) : fs::path(".");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Failure{1, "cannot create output directory '" + dir.string() + "'"};
  const std::string name = opt.name.empty() ? command : opt.name;

  const auto t0 = std::chrono::steady_clock::now();
  vdw_table* traw = nullptr;
  const vdw_status st = vdw_run(cfg.get(), command.c_str(), &traw);
  if (st != VDW_OK) throw Failure{1, command + " failed (" + vdw_status_string(st) + "): " + vdw_last_error()};
  std::unique_ptr<vdw_table, TableDeleter> table(traw);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool passed = vdw_table_passed(table.get()) != 0;
  const auto meta = meta_of(table.get());

  ordered_json manifest;
  manifest["command"] = command;
  manifest["version"] = vdw_version();
  ordered_json jc = ordered_json::object();
  for (size_t i = 0; i < vdw_config_key_count(); ++i) {
    const char* v = nullptr;
    check(vdw_config_get(cfg.get(), vdw_config_key_name(i), &v), "config");
    jc[vdw_config_key_name(i)] = v;
  }
  manifest["config"] = jc;
  manifest["wall_time_s"] = wall;
  const auto sit = meta.find("status");
  manifest["status"] = sit != meta.end() ? sit->second : (passed ? "ok" : "failed");
  manifest["passed"] = passed;
  ordered_json jm = ordered_json::object();
  for (size_t i = 0; i < vdw_table_meta_count(table.get()); ++i)
    jm[vdw_table_meta_key(table.get(), i)] = vdw_table_meta_value(table.get(), i);
  manifest["results"] = jm;

  vdwsim::CsvData csv = to_csv(table.get());
  std::vector<std::string> outputs;
  if (command == "continue") {
    ordered_json rows = ordered_json::array();
    for (const auto& r : csv.rows) rows.push_back({{"k", r[0]}, {"rho", r[1]}, {"T", r[2]}});
    manifest["schedule"] = rows;
  } else {
    if (command == "sweep") {
      std::string line = "fit";
      for (const char* k : {"has_fit", "slope", "intercept", "fit_residual", "message"})
        line += std::string(" ") + k + "=" + meta.at(k);
      csv.comments.push_back(line);
    }
    std::ostringstream os;
    vdwsim::write_csv(os, csv);
    const fs::path p = dir / (name + ".csv");
    write_atomic(p, os.str());
    outputs.push_back(p.string());
  }
  const fs::path mp = dir / (name + ".json");
  outputs.push_back(mp.string());
  manifest["outputs"] = outputs;
  write_atomic(mp, manifest.dump(2) + "\n");

  if (!opt.quiet) {
    if (command == "verify" || command == "growth") {
      for (const auto& r : csv.rows) {
        for (size_t c = 0; c < r.size(); ++c) std::cout << (c ? "  " : "") << csv.columns[c] << "=" << r[c];
        std::cout << "\n";
      }
    }
    for (size_t i = 0; i < vdw_table_meta_count(table.get()); ++i)
      std::cout << vdw_table_meta_key(table.get(), i) << ": " << vdw_table_meta_value(table.get(), i) << "\n";
    for (const auto& o : outputs) std::cout << "wrote " << o << "\n";
  }
  if (!passed) {
    std::cerr << command << ": verification failed\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation and verification tool for the regularized Van der Waals system"};
  app.set_version_flag("--version", std::string(vdw_version()));
  app.require_subcommand(1);

  std::map<std::string, Options> opts;
  std::vector<std::string> keys;
  for (size_t i = 0; i < vdw_config_key_count(); ++i) keys.emplace_back(vdw_config_key_name(i));
  // Raw flag values, filled by CLI11 and copied into Options after parsing.
  std::map<std::string, std::map<std::string, std::string>> raw;

  const std::map<std::string, std::string> help = {
      {"simulate", "integrate one trajectory, write CSV and manifest"},
      {"verify", "run the identity and residual suites"},
      {"sweep", "existence-time sweep over epsilon with log-log fit"},
      {"growth", "linearized growth rates about a constant state"},
      {"continue", "continuation schedule arithmetic"},
      {"picard", "Picard iteration of the reduced Duhamel map"},
  };
  for (size_t c = 0; c < vdw_command_count(); ++c) {
    const std::string cmd = vdw_command_name(c);
    CLI::App* sub = app.add_subcommand(cmd, help.at(cmd));
    Options& o = opts[cmd];
    sub->add_option("--config", o.config_file, "key = value configuration file")->check(CLI::ExistingFile);
    sub->add_option("--set", o.sets, "override a configuration key, key=value");
    sub->add_option("--name", o.name, "output file stem (default: command name)");
    sub->add_flag("--quiet", o.quiet, "print nothing on success");
    for (size_t i = 0; i < keys.size(); ++i)
      sub->add_option(flag_name(keys[i]), raw[cmd][keys[i]], vdw_config_key_doc(i));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  for (CLI::App* sub : app.get_subcommands()) {
    const std::string cmd = sub->get_name();
    Options& o = opts[cmd];
    for (const auto& k : keys)
      if (sub->count(flag_name(k)) > 0) o.flags[k] = raw[cmd][k];
    try {
      return run(cmd, o);
    } catch (const Failure& f) {
      std::cerr << "vdwsim " << cmd << ": " << f.message << "\n";
      return f.code;
    } catch (const std::exception& e) {
      std::cerr << "vdwsim " << cmd << ": " << e.what() << "\n";
      return 1;
    }
  }
  return 1;
}
