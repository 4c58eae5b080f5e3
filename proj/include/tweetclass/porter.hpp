#pragma once

#include <string>

namespace twc {

// Porter (1980) stemmer. The input is lowercased internally; tokens
// containing anything but ASCII letters are returned unchanged.
std::string porter_stem(const std::string& token);

}  // namespace twc
