#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

namespace loewner {

/// Compact JSON with keys in sorted order and every floating-point number
/// written as "%.17g", so equal documents serialize to equal bytes.
std::string canonical_dump(const nlohmann::json& j, int indent = -1);

/// 64-bit FNV-1a of the canonical dump, as 16 lowercase hex digits.
std::string digest(const nlohmann::json& j);

}  // namespace loewner
