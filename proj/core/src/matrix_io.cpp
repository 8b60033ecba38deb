#include "hsiao/matrix_io.hpp"

#include <charconv>
#include <sstream>

namespace hsiao {

namespace {

// Lines terminated by '\n'; an unterminated final chunk still counts. A file
// of R empty lines is R rows of width zero, so empties are preserved.
std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        const auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(start));
            return lines;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

bool is_comment(std::string_view line) { return !line.empty() && line.front() == '#'; }

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
    std::ostringstream os;
    os << "matrix parse error at line " << line_no + 1 << ": " << what;
    throw MatrixParseError(os.str());
}

void require_only_trailing_comments(const std::vector<std::string_view>& lines,
                                    std::size_t from) {
    for (std::size_t i = from; i < lines.size(); ++i)
        if (!is_comment(lines[i])) fail(i, "expected only '#' comment lines here");
}

std::int64_t parse_count(std::string_view token, std::size_t line_no, const char* what) {
    std::int64_t value = 0;
    const auto* begin = token.data();
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || value < 0)
        fail(line_no, std::string("bad ") + what);
    return value;
}

std::pair<std::int64_t, std::int64_t> parse_header(std::string_view line,
                                                   std::size_t line_no) {
    const auto space = line.find(' ');
    if (space == std::string_view::npos || space == 0 || space + 1 >= line.size())
        fail(line_no, "expected header \"rows cols\"");
    const auto rows = parse_count(line.substr(0, space), line_no, "row count");
    const auto cols = parse_count(line.substr(space + 1), line_no, "column count");
    if (rows > (std::int64_t{1} << 30)) fail(line_no, "row count out of range");
    return {rows, cols};
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

constexpr char kHexDigits[] = "0123456789abcdef";

std::string render_txt(const BitMatrix& mat) {
    std::string out;
    out += std::to_string(mat.rows());
    out += ' ';
    out += std::to_string(mat.cols());
    out += '\n';
    for (int r = 0; r < mat.rows(); ++r) {
        const auto row = mat.row(r);
        for (const auto b : row) out += b ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::string render_csv(const BitMatrix& mat) {
    std::string out;
    for (int r = 0; r < mat.rows(); ++r) {
        const auto row = mat.row(r);
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out += ',';
            out += row[c] ? '1' : '0';
        }
        out += '\n';
    }
    return out;
}

std::string render_hex(const BitMatrix& mat) {
    std::string out;
    out += std::to_string(mat.rows());
    out += ' ';
    out += std::to_string(mat.cols());
    out += '\n';
    for (int r = 0; r < mat.rows(); ++r) {
        const auto row = mat.row(r);
        for (std::size_t c = 0; c < row.size(); c += 4) {
            int nibble = 0;
            for (std::size_t b = 0; b < 4; ++b)
                if (c + b < row.size() && row[c + b]) nibble |= 8 >> b;
            out += kHexDigits[nibble];
        }
        out += '\n';
    }
    return out;
}

BitMatrix parse_txt(const std::vector<std::string_view>& lines) {
    if (lines.empty()) fail(0, "missing header");
    const auto [rows, cols] = parse_header(lines[0], 0);
    if (lines.size() < 1 + static_cast<std::size_t>(rows)) fail(lines.size(), "missing rows");
    BitMatrix mat(static_cast<int>(rows), cols);
    for (std::int64_t r = 0; r < rows; ++r) {
        const auto line = lines[1 + static_cast<std::size_t>(r)];
        if (static_cast<std::int64_t>(line.size()) != cols)
            fail(1 + static_cast<std::size_t>(r), "row width mismatch");
        for (std::int64_t c = 0; c < cols; ++c) {
            const char ch = line[static_cast<std::size_t>(c)];
            if (ch != '0' && ch != '1')
                fail(1 + static_cast<std::size_t>(r), "expected '0' or '1'");
            mat.set(static_cast<int>(r), c, ch == '1');
        }
    }
    require_only_trailing_comments(lines, 1 + static_cast<std::size_t>(rows));
    return mat;
}

BitMatrix parse_csv(const std::vector<std::string_view>& lines) {
    std::vector<std::vector<std::uint8_t>> rows;
    std::size_t body_end = lines.size();
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (is_comment(lines[i])) {
            body_end = i;
            break;
        }
    }
    require_only_trailing_comments(lines, body_end);
    for (std::size_t i = 0; i < body_end; ++i) {
        const auto line = lines[i];
        std::vector<std::uint8_t> row;
        if (!line.empty()) {
            std::size_t start = 0;
            while (true) {
                const auto comma = line.find(',', start);
                const auto cell = line.substr(
                    start, comma == std::string_view::npos ? line.size() - start
                                                           : comma - start);
                if (cell != "0" && cell != "1") fail(i, "expected '0' or '1' cell");
                row.push_back(cell == "1" ? 1 : 0);
                if (comma == std::string_view::npos) break;
                start = comma + 1;
            }
        }
        if (!rows.empty() && row.size() != rows.front().size()) fail(i, "ragged rows");
        rows.push_back(std::move(row));
    }
    const auto cols = rows.empty() ? 0 : static_cast<std::int64_t>(rows.front().size());
    BitMatrix mat(static_cast<int>(rows.size()), cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::int64_t c = 0; c < cols; ++c)
            mat.set(static_cast<int>(r), c, rows[r][static_cast<std::size_t>(c)] != 0);
    return mat;
}

BitMatrix parse_hex(const std::vector<std::string_view>& lines) {
    if (lines.empty()) fail(0, "missing header");
    const auto [rows, cols] = parse_header(lines[0], 0);
    if (lines.size() < 1 + static_cast<std::size_t>(rows)) fail(lines.size(), "missing rows");
    const std::int64_t digits = (cols + 3) / 4;
    BitMatrix mat(static_cast<int>(rows), cols);
    for (std::int64_t r = 0; r < rows; ++r) {
        const std::size_t line_no = 1 + static_cast<std::size_t>(r);
        const auto line = lines[line_no];
        if (static_cast<std::int64_t>(line.size()) != digits)
            fail(line_no, "hex digit count mismatch");
        for (std::int64_t d = 0; d < digits; ++d) {
            const int nibble = hex_value(line[static_cast<std::size_t>(d)]);
            if (nibble < 0) fail(line_no, "bad hex digit");
            for (std::int64_t b = 0; b < 4; ++b) {
                const bool bit = (nibble & (8 >> b)) != 0;
                const std::int64_t c = d * 4 + b;
                if (c < cols) mat.set(static_cast<int>(r), c, bit);
                else if (bit) fail(line_no, "nonzero padding bits");
            }
        }
    }
    require_only_trailing_comments(lines, 1 + static_cast<std::size_t>(rows));
    return mat;
}

} // namespace

std::string to_string(MatrixFormat format) {
    switch (format) {
        case MatrixFormat::txt: return "txt";
        case MatrixFormat::csv: return "csv";
        case MatrixFormat::hex: return "hex";
    }
    return "unknown";
}

std::optional<MatrixFormat> matrix_format_from_string(std::string_view text) {
    if (text == "txt") return MatrixFormat::txt;
    if (text == "csv") return MatrixFormat::csv;
    if (text == "hex") return MatrixFormat::hex;
    return std::nullopt;
}

std::string render_matrix(const BitMatrix& mat, MatrixFormat format,
                          const std::vector<std::string>& comments) {
    std::string out;
    switch (format) {
        case MatrixFormat::txt: out = render_txt(mat); break;
        case MatrixFormat::csv: out = render_csv(mat); break;
        case MatrixFormat::hex: out = render_hex(mat); break;
    }
    for (const auto& comment : comments) {
        out += "# ";
        out += comment;
        out += '\n';
    }
    return out;
}

BitMatrix parse_matrix(std::string_view text, MatrixFormat format) {
    const auto lines = split_lines(text);
    switch (format) {
        case MatrixFormat::txt: return parse_txt(lines);
        case MatrixFormat::csv: return parse_csv(lines);
        case MatrixFormat::hex: return parse_hex(lines);
    }
    throw MatrixParseError("unknown matrix format");
}

} // namespace hsiao
