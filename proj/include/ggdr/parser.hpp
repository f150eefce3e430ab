#pragma once

#include <string>

#include "ggdr/ggd.hpp"

namespace ggdr {

/// Parses GGD rule text. Throws ParseError with line/column on syntax
/// errors, undeclared constraint variables, or label clashes.
GgdSet parse_ggds(const std::string& text);
GgdSet load_ggds(const std::string& path);

std::string to_text(const GraphPattern& pattern);
std::string to_text(const Ggd& ggd);
std::string to_text(const GgdSet& set);

}  // namespace ggdr
