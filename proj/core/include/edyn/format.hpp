#pragma once

#include <string>

namespace edyn {

/// Shortest round-trip decimal form of a double (%.17g).
std::string fmt_double(double v);

} // namespace edyn
