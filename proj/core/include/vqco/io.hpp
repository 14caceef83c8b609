#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vqco {

/// Raised for filesystem failures; bad input raises std::invalid_argument.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

std::string read_file(const std::filesystem::path& path);

/// Full-precision decimal (17 significant digits), "nan" for NaN.
std::string format_real(double value);

}  // namespace vqco
