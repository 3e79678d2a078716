#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "lociso/structure.hpp"

namespace lociso {

// Line-oriented text form:
//
//   lociso-structure v1
//   language Succ/2 White/1 Black/1
//   elements
//   <id>            one per line, lexicographic
//   frontier
//   <id>            one per line, lexicographic
//   tuples
//   Succ(a,b)       ordered by symbol declaration, then argument ids
//   end
//
// Blank lines and lines starting with '#' are ignored. Writing is canonical,
// so read(write(m)) == m and write(read(write(m))) == write(m) byte for byte.
std::string write_structure(const Structure& m);
void write_structure(std::ostream& out, const Structure& m);

RawStructure parse_structure(std::string_view text);
Structure read_structure(std::string_view text);
Structure read_structure(std::istream& in);

Structure load_structure(const std::string& path);
void save_structure(const std::string& path, const Structure& m);

}  // namespace lociso
