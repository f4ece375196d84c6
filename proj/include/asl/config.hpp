#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>

namespace asl {

/// Flat key-value config with [section] headers; entries are addressed as
/// "section.key". Unknown keys are rejected against a per-command allowlist
/// so a misspelled guard cannot silently fall back to a default.
class Config {
 public:
  static Config parse(const std::string& text);
  static Config parse_file(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::string get_str(const std::string& key, const std::string& dflt) const;
  double get_double(const std::string& key, double dflt) const;
  int get_int(const std::string& key, int dflt) const;
  bool get_bool(const std::string& key, bool dflt) const;

  /// Throws listing every key not in `known`.
  void check_known(const std::set<std::string>& known) const;

  /// Canonical sorted "key=value" text; the hash carried by output CSVs.
  std::string canonical() const;
  std::uint64_t hash() const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace asl
