#pragma once

#include <string>

#include "stda/lca.hpp"

namespace stda {

/// Plain-text PBM (P1) for p = 2: 0 renders white, 1 black. The top row of
/// the image is the highest n. A comment line carries the window so the
/// image parses back to the exact grid.
std::string render_pbm(const SpacetimeGrid& grid);

/// Plain-text PGM (P2): value v maps to gray floor(255 (p-1-v) / (p-1)).
std::string render_pgm(const SpacetimeGrid& grid);

SpacetimeGrid parse_pbm(const std::string& text);
SpacetimeGrid parse_pgm(const std::string& text, int p);

/// Writes .pbm for p = 2 and .pgm otherwise; returns the path written.
std::string render_to_file(const SpacetimeGrid& grid, const std::string& path,
                           const std::string& format);

} // namespace stda
