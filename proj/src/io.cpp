#include "bergman/io.hpp"

#include <cstdio>

namespace bergman {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace bergman
