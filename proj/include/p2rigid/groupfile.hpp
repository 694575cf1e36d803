// Text format for matrix groups and the cyclotomic expression grammar.
//
//   # comment
//   conductor: 7
//   generator:
//   row: z, 0, 0
//   row: 0, z^2, 0
//   row: 0, 0, z^4
//
// Entries: expr := term (('+' | '-') term)*, term := unary ('*' unary)*,
// unary := '-' unary | atom ('^' int)?, atom := int ('/' int)? | 'z' | '(' expr ')'.
// z stands for exp(2 pi i / N) with N the declared conductor; negative
// exponents are allowed on z only.

#pragma once

#include <string>
#include <vector>

#include "p2rigid/linalg.hpp"
#include "p2rigid/projgroup.hpp"

namespace p2r {

struct GroupFile {
  int conductor = 1;
  std::vector<Mat3> generators;
};

/// ParseError (with line and column) on malformed text.
CycloNum parse_cyclo_expr(const std::string& text, int conductor);

/// ParseError on syntax errors; InputError for a singular generator;
/// ConductorError for a conductor outside 1..2520.
GroupFile parse_group_file(const std::string& text);

std::string serialize_group_file(const GroupFile& f);

/// "x,y,z" with each coordinate an expression in z = zeta_conductor.
ProjPoint parse_point(const std::string& text, int conductor);

}  // namespace p2r
