#pragma once

#include <iosfwd>
#include <string>

#include "boxmis/geometry.hpp"

namespace boxmis::geometry {

/// Reads the text format:
///   dim=<d> shape=<tag> order=<tag> n=<n>
///   l1 u1 l2 u2 ... ld ud        (one line per box, in arrival order)
/// `#` starts a comment. Coordinates are rationals or exact decimals.
/// Only the syntax is checked here; call require_valid for the claimed classes.
Arrangement read_arrangement(std::istream& in);
Arrangement read_arrangement_file(const std::string& path);

std::string write_arrangement(const Arrangement& arrangement);

}  // namespace boxmis::geometry
