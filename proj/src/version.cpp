#include "srlnc/version.hpp"

namespace srlnc {

std::string_view version() noexcept { return SRLNC_VERSION; }

}  // namespace srlnc
