#pragma once

#include <string>

namespace wnv {

/// Locale-free formatting with 17 significant digits (the pinned CSV format).
std::string fmt17(double v);

/// Locale-free shortest round-trip formatting (reports, SVG labels).
std::string fmt_short(double v);

/// Strict full-token double parse; returns false on trailing garbage.
bool parse_double(std::string_view text, double& out);

std::string_view trim(std::string_view text);

}  // namespace wnv
