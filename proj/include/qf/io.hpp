// Text format for Cayley tables and JSON for arithmetic forms.
//
// Table format: the first line holds n, then n rows of n space-separated
// entries; row x lists x*0 ... x*(n-1). '#' starts a comment that runs to
// the end of the line. Blank lines are ignored and the text must end with a
// newline.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qf/forms.hpp"
#include "qf/qcore.hpp"

namespace qf {

// Throws parse_error ("line L: reason") or not_latin.
CayleyTable parse_table(std::string_view text);
std::string render_table(CayleyTable const& q);

// Several tables back to back, as emitted by the enumerate command.
std::vector<CayleyTable> parse_table_stream(std::string_view text);

// FNV-1a 64 of the rendered table, as 16 hex digits.
std::string table_digest(CayleyTable const& q);

// Keys e, f, g, loop_table, order, strong, zero in that order.
std::string form_to_json(ArithmeticForm const& form);
// Throws parse_error.
ArithmeticForm form_from_json(std::string_view text);

}  // namespace qf
