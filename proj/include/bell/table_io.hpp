#pragma once

#include "bell/scenario.hpp"

#include <string>

namespace bell {

/// Parse a bipartite coefficient table. Alice-input blocks are separated by
/// a line of dashes, Bob-input column groups by '|'. Rows inside a block are
/// Alice outcomes, columns inside a group Bob outcomes. If every cell is an
/// integer the expression keeps an exact mirror.
BellExpression parse_table(const std::string& text);

/// Inverse of parse_table up to whitespace.
std::string format_table(const BellExpression&);

/// format_table with columns padded for reading.
std::string render_table(const BellExpression&);

std::string format_number(double v);

}  // namespace bell
