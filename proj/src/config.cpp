#include "asl/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "asl/csv.hpp"

namespace asl {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": empty key");
    const std::string full = section.empty() ? key : section + "." + key;
    if (cfg.values_.count(full))
      throw std::invalid_argument("config: duplicate key " + full);
    cfg.values_[full] = value;
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::invalid_argument("cannot read config file " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return parse(os.str());
}

std::string Config::get_str(const std::string& key,
                            const std::string& dflt) const {
  const auto it = values_.find(key);
  return it == values_.end() ? dflt : it->second;
}

double Config::get_double(const std::string& key, double dflt) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return dflt;
  size_t pos = 0;
  double v;
  try {
    v = std::stod(it->second, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: " + key + " is not a number");
  }
  if (pos != it->second.size())
    throw std::invalid_argument("config: " + key + " is not a number");
  return v;
}

int Config::get_int(const std::string& key, int dflt) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return dflt;
  size_t pos = 0;
  int v;
  try {
    v = std::stoi(it->second, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: " + key + " is not an integer");
  }
  if (pos != it->second.size())
    throw std::invalid_argument("config: " + key + " is not an integer");
  return v;
}

bool Config::get_bool(const std::string& key, bool dflt) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return dflt;
  if (it->second == "true" || it->second == "1") return true;
  if (it->second == "false" || it->second == "0") return false;
  throw std::invalid_argument("config: " + key + " is not a boolean");
}

void Config::check_known(const std::set<std::string>& known) const {
  std::string bad;
  for (const auto& [k, v] : values_)
    if (!known.count(k)) bad += (bad.empty() ? "" : ", ") + k;
  if (!bad.empty())
    throw std::invalid_argument("config: unknown keys: " + bad);
}

std::string Config::canonical() const {
  std::string out;
  for (const auto& [k, v] : values_) out += k + "=" + v + "\n";
  return out;
}

std::uint64_t Config::hash() const { return fnv1a(canonical()); }

}  // namespace asl
