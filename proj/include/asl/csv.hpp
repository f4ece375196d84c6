#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace asl {

std::uint64_t fnv1a(std::string_view s);

/// Write-temp-then-rename so readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

/// Leading comment line carried by every emitted CSV.
std::string config_hash_comment(std::uint64_t hash);

/// Full-precision, locale-independent float formatting for CSV cells.
std::string csv_num(double v);

}  // namespace asl
