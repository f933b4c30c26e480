#pragma once

#include <string>
#include <string_view>

namespace ccc {

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);
/// Streams the file; throws DataError when it cannot be read.
std::string sha256_file(const std::string& path);

}  // namespace ccc
