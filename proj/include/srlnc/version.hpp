#pragma once

#include <string_view>

namespace srlnc {

/// Toolkit version, e.g. "0.1.0".
std::string_view version() noexcept;

}  // namespace srlnc
