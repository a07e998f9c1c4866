#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "encoder.hpp"
#include "gdsu.hpp"
#include "gf2.hpp"
#include "parity_matrix.hpp"

namespace rnldpc {

using Bit = std::uint8_t;

// GF(2) encode through the shared block schedule; bits in {0,1}.
inline std::vector<Bit> binary_encode(const SparseParityMatrix& h, const ParityStructure& st,
                                      const std::vector<Bit>& src) {
    if (static_cast<int>(src.size()) != h.k())
        throw std::invalid_argument("source length does not match k");
    std::vector<Gf2> s2(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) s2[i] = Gf2(src[i]);
    std::vector<Gf2> x2 = encode(h, st, s2);
    std::vector<Bit> x(x2.size());
    for (std::size_t i = 0; i < x2.size(); ++i) x[i] = x2[i].v;
    return x;
}

inline std::vector<Bit> binary_syndrome(const SparseParityMatrix& h, const std::vector<Bit>& x) {
    if (static_cast<int>(x.size()) != h.n())
        throw std::invalid_argument("symbol count does not match n");
    std::vector<Bit> s(h.m());
    for (int i = 0; i < h.m(); ++i) {
        Bit acc = 0;
        for (const Entry& e : h.row(i)) acc ^= x[e.index];
        s[i] = acc;
    }
    return s;
}

// Bit-flipping baseline: score is the binary local energy alone; every
// argmax bit flips each iteration.
inline DecodeResult<Bit> gdbf_decode(const std::vector<Bit>& y, const SparseParityMatrix& h,
                                     int max_iters = 300) {
    if (static_cast<int>(y.size()) != h.n())
        throw std::invalid_argument("received length does not match n");
    if (h.variant != Variant::binary)
        throw std::invalid_argument("gdbf_decode requires the binary-variant parity matrix");
    if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");

    const int n = h.n();
    const int m = h.m();

    DecodeResult<Bit> res;
    res.x_hat = y;
    std::vector<Bit>& x = res.x_hat;

    std::vector<Bit> s(m);
    auto recompute_syndrome = [&] {
        for (int i = 0; i < m; ++i) {
            Bit acc = 0;
            for (const Entry& e : h.row(i)) acc ^= x[e.index];
            s[i] = acc;
        }
    };
    auto unsatisfied = [&] {
        int c = 0;
        for (int i = 0; i < m; ++i) c += s[i];
        return c;
    };

    std::vector<int> e_bin(n);
    recompute_syndrome();
    while (true) {
        if (unsatisfied() == 0) {
            res.converged = true;
            break;
        }
        if (res.iterations == max_iters) break;

        int mx = std::numeric_limits<int>::min();
        for (int k = 0; k < n; ++k) {
            int acc = (x[k] != y[k]) ? +1 : -1;
            for (const Entry& en : h.col(k)) acc += s[en.index] ? +1 : -1;
            e_bin[k] = acc;
            mx = std::max(mx, acc);
        }
        for (int k = 0; k < n; ++k)
            if (e_bin[k] == mx) x[k] ^= 1;

        ++res.iterations;
        recompute_syndrome();
    }

    res.final_syndrome_l1 = unsatisfied();
    return res;
}

}  // namespace rnldpc
