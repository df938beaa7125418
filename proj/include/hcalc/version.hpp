#pragma once

namespace hcalc {

inline constexpr const char* version = "0.1.0";

} // namespace hcalc
