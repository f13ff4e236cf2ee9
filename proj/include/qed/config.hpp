#pragma once
// Flat key-value run configuration. Lines are `key = value`; `#` starts a
// comment; keys may not repeat. There are no defaults for physical
// parameters: callers must ask explicitly, and a missing key is an error
// unless the caller supplies a fallback. Values use natural units (the box
// volume carries length^3, momenta inverse length).

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qed {

// Raised on malformed files, missing keys, and unparsable values; the CLI
// maps it to the configuration-error exit code.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  bool has(const std::string& key) const;
  const std::string& get(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback) const;
  double get_real(const std::string& key) const;
  double get_real(const std::string& key, double fallback) const;
  long get_int(const std::string& key) const;
  long get_int(const std::string& key, long fallback) const;
  // Comma-separated lists.
  std::vector<double> get_reals(const std::string& key) const;
  std::vector<long> get_ints(const std::string& key) const;

  void set(const std::string& key, const std::string& value);
  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace qed
