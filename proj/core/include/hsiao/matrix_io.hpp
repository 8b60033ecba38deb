#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hsiao/bit_matrix.hpp"

namespace hsiao {

// txt: "rows cols" header, then one line of exactly cols '0'/'1' chars per
//      row. Row 0 is the first bit line; column 0 is the leftmost character.
// csv: one comma-separated 0/1 row per line, no header (shape is implied).
// hex: "rows cols" header, then ceil(cols/4) lowercase hex digits per row;
//      column 0 is the most significant bit of the first digit and the final
//      nibble is zero-padded on the right.
// All three formats allow trailing comment lines prefixed '#'; parsers ignore
// them, so parse(render(M)) == M regardless of attached comments.
enum class MatrixFormat { txt, csv, hex };

std::string to_string(MatrixFormat);
std::optional<MatrixFormat> matrix_format_from_string(std::string_view);

struct MatrixParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string render_matrix(const BitMatrix&, MatrixFormat,
                          const std::vector<std::string>& comments = {});
BitMatrix parse_matrix(std::string_view text, MatrixFormat);

} // namespace hsiao
