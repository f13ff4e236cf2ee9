#include "qed/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace qed {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_real(const std::string& key, const std::string& raw) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(raw, &used);
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' has non-numeric value '" +
                      raw + "'");
  }
  if (used != raw.size())
    throw ConfigError("config: trailing characters in value of '" + key + "'");
  return v;
}

long parse_int(const std::string& key, const std::string& raw) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(raw, &used);
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' has non-integer value '" +
                      raw + "'");
  }
  if (used != raw.size())
    throw ConfigError("config: trailing characters in value of '" + key + "'");
  return v;
}

std::vector<std::string> split_list(const std::string& raw) {
  std::vector<std::string> parts;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(trim(item));
  return parts;
}

}  // namespace

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str());
}

Config Config::parse_string(const std::string& text) {
  Config cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config: line " + std::to_string(lineno) +
                        ": empty key or value");
    if (cfg.values_.count(key))
      throw ConfigError("config: line " + std::to_string(lineno) +
                        ": duplicate key '" + key + "'");
    cfg.values_[key] = value;
  }
  return cfg;
}

bool Config::has(const std::string& key) const { return values_.count(key); }

const std::string& Config::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end())
    throw ConfigError("config: missing required key '" + key + "'");
  return it->second;
}

std::string Config::get(const std::string& key,
                        const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double Config::get_real(const std::string& key) const {
  return parse_real(key, get(key));
}

double Config::get_real(const std::string& key, double fallback) const {
  return has(key) ? get_real(key) : fallback;
}

long Config::get_int(const std::string& key) const {
  return parse_int(key, get(key));
}

long Config::get_int(const std::string& key, long fallback) const {
  return has(key) ? get_int(key) : fallback;
}

std::vector<double> Config::get_reals(const std::string& key) const {
  std::vector<double> out;
  for (const std::string& part : split_list(get(key)))
    out.push_back(parse_real(key, part));
  return out;
}

std::vector<long> Config::get_ints(const std::string& key) const {
  std::vector<long> out;
  for (const std::string& part : split_list(get(key)))
    out.push_back(parse_int(key, part));
  return out;
}

void Config::set(const std::string& key, const std::string& value) {
  values_[key] = value;
}

}  // namespace qed
