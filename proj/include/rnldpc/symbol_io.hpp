#pragma once

#include <charconv>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "base_matrix.hpp"
#include "format.hpp"
#include "parity_matrix.hpp"

namespace rnldpc {

// Symbol vector files: whitespace-separated base-10 decimals, one frame per
// line. Blank lines and lines starting with '#' are skipped.
inline std::vector<std::vector<double>> read_frames(std::istream& in, int expected_len = -1) {
    std::vector<std::vector<double>> frames;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (detail::is_comment_or_blank(raw)) continue;
        std::vector<double> frame;
        for (const detail::Token& tok : detail::split_tokens(raw)) {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
            if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size())
                throw ParseError("\"" + std::string(tok.text) + "\" is not a number", line_no,
                                 tok.column);
            frame.push_back(v);
        }
        if (expected_len >= 0 && static_cast<int>(frame.size()) != expected_len)
            throw ParseError("expected " + std::to_string(expected_len) + " symbols, got " +
                                 std::to_string(frame.size()),
                             line_no, 1);
        frames.push_back(std::move(frame));
    }
    return frames;
}

inline void write_frame(std::ostream& out, const std::vector<double>& frame) {
    for (std::size_t i = 0; i < frame.size(); ++i) {
        if (i) out << ' ';
        out << fmt_plain(frame[i]);
    }
    out << '\n';
}

inline void write_frames(std::ostream& out, const std::vector<std::vector<double>>& frames) {
    for (const auto& f : frames) write_frame(out, f);
}

// Expanded matrix as one "row col sign" triple per line, row-major.
inline void write_matrix_triples(std::ostream& out, const SparseParityMatrix& h) {
    for (int i = 0; i < h.m(); ++i)
        for (const Entry& e : h.row(i))
            out << i << ' ' << e.index << ' ' << static_cast<int>(e.sign) << '\n';
}

}  // namespace rnldpc
