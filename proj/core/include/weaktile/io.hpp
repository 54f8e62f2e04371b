#pragma once

// Plain-text set and weight files.
//
//   group: 5,5,5,5
//   0,0,0,0
//   1,2,0,4
//
// Weight files use the same header and lines "x1,...,xk : num/den".
// Blank lines and lines starting with '#' are ignored.

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "weaktile/fourier.hpp"
#include "weaktile/group.hpp"

namespace weaktile::io {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_set(std::ostream& os, const ElementSet& set);
void write_set(const std::filesystem::path& path, const ElementSet& set);
ElementSet read_set(std::istream& is);
ElementSet read_set(const std::filesystem::path& path);

void write_weights(std::ostream& os, const GroupFunction& f);
void write_weights(const std::filesystem::path& path, const GroupFunction& f);
GroupFunction read_weights(std::istream& is);
GroupFunction read_weights(const std::filesystem::path& path);

/// "x1,...,xk"
std::string format_coords(const Coords& c);
Coords parse_coords(const GroupSpec& spec, const std::string& text);

}  // namespace weaktile::io
