#pragma once

#include <string>

namespace bergman {

// Floating output convention: 17 significant digits, round-trip exact.
std::string fmt17(double v);

}
