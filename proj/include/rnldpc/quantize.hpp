#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gdsu.hpp"
#include "parity_matrix.hpp"

namespace rnldpc {

class QuantizeError : public std::runtime_error {
public:
    QuantizeError(const std::string& msg, int pos)
        : std::runtime_error("position " + std::to_string(pos) + ": " + msg), position(pos) {}

    int position;
};

// Guard bits covering worst-case growth of a d_c-term signed sum of p-bit
// values, plus one mandated headroom bit.
inline int required_guard_bits(int d_c_max) {
    if (d_c_max < 2) throw std::invalid_argument("d_c_max must be >= 2");
    return std::bit_width(static_cast<unsigned>(d_c_max - 1));  // ceil(log2(d_c_max))
}

inline int required_parity_bits(int p, int d_c_max) {
    if (p < 2) throw std::invalid_argument("data precision p must be >= 2");
    return p + required_guard_bits(d_c_max) + 1;
}

// Two's-complement layout: data symbols carry p bits, parity symbols and all
// decoding accumulations carry parity_bits; values share one power-of-two
// scale exponent.
struct FixedPointFormat {
    int p = 0;
    int guard = 0;
    int parity_bits = 0;

    static FixedPointFormat for_code(int p, int d_c_max) {
        FixedPointFormat f;
        f.p = p;
        f.parity_bits = required_parity_bits(p, d_c_max);
        f.guard = f.parity_bits - p - 1;
        if (f.parity_bits > 62)
            throw std::invalid_argument("format exceeds the 64-bit working range");
        return f;
    }

    std::int64_t data_limit() const { return (std::int64_t{1} << (p - 1)) - 1; }
    std::int64_t parity_limit() const { return (std::int64_t{1} << (parity_bits - 1)) - 1; }
};

struct QuantizedVector {
    std::vector<std::int64_t> values;
    FixedPointFormat format;
    int scale = 0;  // stored value v represents v / 2^scale
};

// Round-to-nearest-even onto the format's grid. The first data_len positions
// are checked against the data range, the rest against the parity range;
// data_len < 0 checks every position as data.
inline QuantizedVector quantize_frame(const std::vector<double>& y, FixedPointFormat fmt,
                                      int scale = 0, int data_len = -1) {
    QuantizedVector q;
    q.format = fmt;
    q.scale = scale;
    q.values.resize(y.size());
    const double factor = std::ldexp(1.0, scale);
    for (std::size_t i = 0; i < y.size(); ++i) {
        double scaled = y[i] * factor;
        double rounded = std::nearbyint(scaled);  // FE_TONEAREST: ties to even
        std::int64_t limit =
            (data_len >= 0 && static_cast<int>(i) >= data_len) ? fmt.parity_limit() : fmt.data_limit();
        if (!(std::abs(rounded) <= static_cast<double>(limit)))
            throw QuantizeError("value " + std::to_string(y[i]) + " overflows " +
                                    std::to_string(static_cast<int>(i) < data_len || data_len < 0
                                                       ? fmt.p
                                                       : fmt.parity_bits) +
                                    "-bit range at scale " + std::to_string(scale),
                                static_cast<int>(i));
        q.values[i] = static_cast<std::int64_t>(rounded);
    }
    return q;
}

// Exact-integer decoding; every accumulation is asserted within the format's
// parity range, so a violated guard-bit precondition surfaces as an
// OverflowError instead of silent wraparound.
inline DecodeResult<std::int64_t> decode_fixed(const QuantizedVector& yq,
                                               const SparseParityMatrix& h,
                                               const DecoderParams& params = {}) {
    DecoderParams p = params;
    p.overflow_limit = yq.format.parity_limit();
    return decode(yq.values, h, p);
}

}  // namespace rnldpc
