#pragma once

#include <string>

namespace hclab {

// SHA-256 hex digest; used for content-addressed cache filenames.
std::string sha256_hex(const std::string& data);

} // namespace hclab
