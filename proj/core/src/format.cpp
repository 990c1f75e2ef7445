#include "edyn/format.hpp"

#include <cstdio>

namespace edyn {

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace edyn
