#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "rainbow/scfcore.hpp"
#include "rainbow/setpart.hpp"

namespace rainbow::cli {

enum class Format { Text, Json, Csv };
Format parse_format(const std::string& s);

/// Coefficients print symbolically, or as integers when q is given.
void print_decomposition(const std::string& kind, const Decomposition& d, Format fmt, std::optional<long> q,
                         std::ostream& out);
void print_poly(const QPoly& p, Format fmt, std::optional<long> q, std::ostream& out);

/// Node row with arcs drawn below it (supercharacter convention), or above when `above`.
std::string arc_diagram(const std::vector<Arc>& arcs, const GroundSet& ground, bool above = false);

}  // namespace rainbow::cli
