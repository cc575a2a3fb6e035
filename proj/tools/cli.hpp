#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kahlerlab/serialize.hpp"

namespace kl::cli {

// Exit codes.
inline constexpr int kPass = 0;
inline constexpr int kCheckFailure = 1;
inline constexpr int kUsageError = 2;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ValueType { Int, UInt, Double, String, IntList, DoubleList };

struct KeySpec {
  std::string name;
  ValueType type;
  bool required = false;
  std::string default_value;  // used when not required and absent
};

// Flat `key = value` configuration; '#' starts a comment, lists are comma separated.
class Config {
 public:
  Config(std::vector<KeySpec> schema, std::map<std::string, std::string> values);

  bool has(const std::string& key) const;
  long get_int(const std::string& key) const;
  std::uint64_t get_uint(const std::string& key) const;
  double get_double(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::vector<long> get_int_list(const std::string& key) const;
  std::vector<double> get_double_list(const std::string& key) const;
  void set(const std::string& key, const std::string& value);

  // Every schema key with its effective value, in schema order.
  Json to_json() const;

 private:
  const KeySpec& spec(const std::string& key) const;
  std::string raw(const std::string& key) const;
  std::vector<KeySpec> schema_;
  std::map<std::string, std::string> values_;
};

// Parses and validates against the schema: unknown keys, duplicates, missing required keys and
// values of the wrong type are ConfigErrors.
Config parse_config(const std::string& text, const std::vector<KeySpec>& schema);
const std::vector<KeySpec>& schema_for(const std::string& command);

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct RunResult {
  Json report;                // deterministic for a given config
  std::string csv;            // flow trace, empty otherwise
  int exit_code = kPass;
};

RunResult run_verify(const Config& cfg);
RunResult run_flow(const Config& cfg);
RunResult run_reduce2d(const Config& cfg);
RunResult run_example(const Config& cfg);

// Entry point shared by the executable and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kl::cli
