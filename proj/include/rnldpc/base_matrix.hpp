#pragma once

#include <charconv>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rnldpc {

// Block-level description of a quasi-cyclic code: an m_rows x n_b grid of
// circulant shifts with -1 marking the all-zero block.
struct BaseMatrix {
    int z = 0;       // expansion factor (circulant size)
    int n_b = 0;     // block columns
    int m_rows = 0;  // block rows (parity checks)
    std::vector<std::vector<int>> entries;

    int entry(int r, int c) const { return entries[r][c]; }
    bool operator==(const BaseMatrix&) const = default;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line_no, int column_no)
        : std::runtime_error("line " + std::to_string(line_no) + ", col " +
                             std::to_string(column_no) + ": " + msg),
          line(line_no),
          column(column_no) {}

    int line;
    int column;
};

namespace detail {

struct Token {
    std::string_view text;
    int column;  // 1-based character offset of the token start
};

inline std::vector<Token> split_tokens(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i >= line.size()) break;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return out;
}

inline bool parse_int(std::string_view text, int& value) {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    return ec == std::errc{} && ptr == last;
}

inline bool is_comment_or_blank(std::string_view line) {
    for (char c : line) {
        if (c == ' ' || c == '\t') continue;
        return c == '#';
    }
    return true;
}

}  // namespace detail

// Base matrix file format: header line "z N_B M_ROWS", then M_ROWS lines of
// N_B whitespace-separated shift tokens ("-" or "-1" for the zero block).
// Lines starting with '#' are comments.
inline BaseMatrix parse_base_matrix(std::istream& in) {
    using detail::Token;

    BaseMatrix bm;
    std::string raw;
    int line_no = 0;
    bool have_header = false;
    int rows_read = 0;

    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        std::string_view line(raw);
        if (detail::is_comment_or_blank(line)) continue;

        std::vector<Token> toks = detail::split_tokens(line);
        if (!have_header) {
            if (toks.size() != 3)
                throw ParseError("malformed header: expected \"z N_B M_ROWS\"", line_no,
                                 toks.empty() ? 1 : toks[0].column);
            int vals[3];
            for (int i = 0; i < 3; ++i) {
                if (!detail::parse_int(toks[i].text, vals[i]))
                    throw ParseError("malformed header: \"" + std::string(toks[i].text) +
                                         "\" is not an integer",
                                     line_no, toks[i].column);
            }
            if (vals[0] < 1 || vals[1] < 1 || vals[2] < 1)
                throw ParseError("malformed header: dimensions must be positive", line_no,
                                 toks[0].column);
            bm.z = vals[0];
            bm.n_b = vals[1];
            bm.m_rows = vals[2];
            if (bm.m_rows >= bm.n_b)
                throw ParseError("malformed header: M_ROWS must be less than N_B "
                                 "(code must have positive rate)",
                                 line_no, toks[2].column);
            have_header = true;
            continue;
        }

        if (rows_read == bm.m_rows)
            throw ParseError("trailing content after last matrix row", line_no, toks[0].column);
        if (static_cast<int>(toks.size()) != bm.n_b)
            throw ParseError("ragged row: expected " + std::to_string(bm.n_b) +
                                 " entries, got " + std::to_string(toks.size()),
                             line_no, toks.empty() ? 1 : toks[0].column);

        std::vector<int> row(bm.n_b);
        for (int c = 0; c < bm.n_b; ++c) {
            const Token& tok = toks[c];
            if (tok.text == "-") {
                row[c] = -1;
                continue;
            }
            int v = 0;
            if (!detail::parse_int(tok.text, v))
                throw ParseError("\"" + std::string(tok.text) + "\" is not an integer",
                                 line_no, tok.column);
            if (v < -1)
                throw ParseError("shift " + std::to_string(v) + " out of range [-1, z-1]",
                                 line_no, tok.column);
            if (v >= bm.z)
                throw ParseError("shift " + std::to_string(v) + " >= z = " + std::to_string(bm.z),
                                 line_no, tok.column);
            row[c] = v;
        }
        bm.entries.push_back(std::move(row));
        ++rows_read;
    }

    if (!have_header) throw ParseError("empty input: missing header", line_no + 1, 1);
    if (rows_read < bm.m_rows)
        throw ParseError("unexpected end of input: expected " + std::to_string(bm.m_rows) +
                             " rows, got " + std::to_string(rows_read),
                         line_no + 1, 1);
    return bm;
}

inline BaseMatrix parse_base_matrix(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_base_matrix(in);
}

// Canonical writer; parse_base_matrix(write_base_matrix(bm)) == bm.
inline std::string write_base_matrix(const BaseMatrix& bm) {
    std::string out = std::to_string(bm.z) + " " + std::to_string(bm.n_b) + " " +
                      std::to_string(bm.m_rows) + "\n";
    for (int r = 0; r < bm.m_rows; ++r) {
        for (int c = 0; c < bm.n_b; ++c) {
            if (c) out += ' ';
            int v = bm.entries[r][c];
            out += (v < 0) ? "-" : std::to_string(v);
        }
        out += '\n';
    }
    return out;
}

namespace builtin {

// IEEE 802.11n block length 648 codes, z = 27.
inline constexpr std::string_view wifi_r12 = R"(27 24 12
0 - - - 0 0 - - 0 - - 0 1 0 - - - - - - - - - -
22 0 - - 17 - 0 0 12 - - - - 0 0 - - - - - - - - -
6 - 0 - 10 - - - 24 - 0 - - - 0 0 - - - - - - - -
2 - - 0 20 - - - 25 0 - - - - - 0 0 - - - - - - -
23 - - - 3 - - - 0 - 9 11 - - - - 0 0 - - - - - -
24 - 23 1 17 - 3 - 10 - - - - - - - - 0 0 - - - - -
25 - - - 8 - - - 7 18 - - 0 - - - - - 0 0 - - - -
13 24 - - 0 - 8 - 6 - - - - - - - - - - 0 0 - - -
7 20 - 16 22 10 - - 23 - - - - - - - - - - - 0 0 - -
11 - - - 19 - - - 13 - 3 17 - - - - - - - - - 0 0 -
25 - 8 - 23 18 - 14 9 - - - - - - - - - - - - - 0 0
3 - - - 16 - - 2 25 5 - - 1 - - - - - - - - - - 0
)";

inline constexpr std::string_view wifi_r23 = R"(27 24 8
25 26 14 - 20 - 2 - 4 - - 8 - 16 - 18 1 0 - - - - - -
10 9 15 11 - 0 - 1 - 1 18 - 8 - 10 - - 0 0 - - - - -
16 2 20 26 21 - 6 - 1 26 - 7 - - - - - - 0 0 - - - -
10 13 5 0 - 3 - 7 - - 26 - - 13 - 16 - - - 0 0 - - -
23 14 24 - 12 - 19 - 17 - - - 20 - 21 - 0 - - - 0 0 - -
6 22 9 20 - 25 - 17 - 8 - 14 - 18 - - - - - - - 0 0 -
14 23 21 11 20 - 24 - 18 - 19 - - - - 22 - - - - - - 0 0
17 11 11 20 - 21 - 26 - 3 - - 18 - 26 - 1 - - - - - - 0
)";

inline constexpr std::string_view wifi_r34 = R"(27 24 6
16 17 22 24 9 3 14 - 4 2 7 - 26 - 2 - 21 - 1 0 - - - -
25 12 12 3 3 26 6 21 - 15 22 - 15 - 4 - - 16 - 0 0 - - -
25 18 26 16 22 23 9 - 0 - 4 - 4 1 0 - - 6 - - 0 0 - -
9 7 0 1 17 - - 7 3 - 3 23 - 16 - - 21 - 0 - - 0 0 -
24 5 26 7 1 - - 15 24 15 - 8 - 13 - 13 - 11 - - - - 0 0
2 2 19 14 24 1 15 19 - 21 - 2 - 24 - 3 - 2 1 - - - - 0
)";

// Toy rate-1/2 code with z = 1 and a pure staircase parity part; small enough
// for hand-checked traces.
inline constexpr std::string_view t1 = R"(1 6 3
0 0 - 0 - -
- 0 0 0 0 -
0 - 0 - 0 0
)";

}  // namespace builtin

inline BaseMatrix builtin_code(std::string_view name) {
    if (name == "wifi-r12") return parse_base_matrix(builtin::wifi_r12);
    if (name == "wifi-r23") return parse_base_matrix(builtin::wifi_r23);
    if (name == "wifi-r34") return parse_base_matrix(builtin::wifi_r34);
    if (name == "t1") return parse_base_matrix(builtin::t1);
    throw std::invalid_argument("unknown code \"" + std::string(name) +
                                "\" (known: wifi-r12, wifi-r23, wifi-r34, t1)");
}

inline std::vector<std::string> builtin_code_names() {
    return {"wifi-r12", "wifi-r23", "wifi-r34", "t1"};
}

}  // namespace rnldpc
