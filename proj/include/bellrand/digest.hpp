#pragma once

#include <string>
#include <string_view>

namespace bellrand {

// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

}  // namespace bellrand
