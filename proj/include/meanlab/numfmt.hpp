#pragma once

#include <string>

namespace meanlab {

/// Shortest decimal representation that round-trips to the same double.
/// Locale-independent; used for all CSV/JSON/CLI number output.
std::string format_double(double value);

}  // namespace meanlab
