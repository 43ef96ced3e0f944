#pragma once

#include <cstdio>
#include <string>

namespace trifit {

// All emitted numbers go through this one formatter so that output is
// byte-reproducible across runs: %.17g round-trips every double exactly.
inline std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace trifit
