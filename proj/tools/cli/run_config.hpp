#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fracperiodic/double_well.hpp"

namespace fracperiodic::cli {

/// Bad flag, bad config key or unparsable value. Maps to exit code 2.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct KeySpec {
  std::string name;
  std::string default_value;  // empty: no default
  std::string help;
  bool required = false;
};

struct CommandSpec {
  std::string name;
  std::string help;
  std::vector<KeySpec> keys;

  const KeySpec* find(std::string_view key) const;
};

/// Every subcommand with its accepted keys.
const std::vector<CommandSpec>& command_specs();
const CommandSpec& command_spec(std::string_view name);

/// Flat key=value configuration of one command. Blank lines and lines
/// starting with '#' are ignored; keys and values are trimmed. The canonical
/// form lists `command` first and the remaining keys sorted, one per line.
class RunConfig {
public:
  explicit RunConfig(std::string command);

  /// Rejects unknown keys, duplicate keys, lines without '=' and a
  /// `command` entry naming a different command.
  static RunConfig parse(std::string_view text, const CommandSpec& spec);
  static RunConfig load(const std::string& path, const CommandSpec& spec);

  const std::string& command() const noexcept { return command_; }
  const std::map<std::string, std::string>& values() const noexcept { return values_; }

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;
  /// Empty values count as unset.
  bool is_set(const std::string& key) const;

  std::string canonical() const;

  const std::string& text(const std::string& key) const;
  double number(const std::string& key) const;
  int integer(const std::string& key) const;
  std::uint64_t unsigned_integer(const std::string& key) const;
  bool boolean(const std::string& key) const;
  std::vector<double> number_list(const std::string& key) const;

private:
  std::string command_;
  std::map<std::string, std::string> values_;
};

/// "quartic", "quartic:<scale>" or "taylor:F(0),F'(0),F''(0),...".
DoubleWell parse_potential(const std::string& spec);

}  // namespace fracperiodic::cli
