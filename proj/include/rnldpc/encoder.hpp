#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "parity_matrix.hpp"

namespace rnldpc {

class EncodeError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

template <class S>
constexpr S apply_sign(int sign, S v) {
    return sign < 0 ? S(-v) : v;
}

// Row combination coefficients that cancel every staircase block: the upper
// entry of stair column i (row i, sign u) pairs with its lower entry
// (row i+1, sign l), forcing c_{i+1} = -c_i * u * l.
inline std::vector<int> stair_coefficients(const ParityStructure& st, Variant variant) {
    std::vector<int> c(st.m_rows, 1);
    for (int i = 0; i + 1 < st.m_rows; ++i)
        c[i + 1] = -c[i] * st.upper_sign(variant) * st.lower_sign(i, variant);
    return c;
}

}  // namespace detail

// Per-block-row inner products of the source part: lambda[r][j] is the signed
// sum of source symbols selected by check row r*z + j.
template <class S>
std::vector<std::vector<S>> compute_lambda(const SparseParityMatrix& h, const std::vector<S>& src) {
    if (static_cast<int>(src.size()) != h.k())
        throw std::invalid_argument("source length " + std::to_string(src.size()) +
                                    " does not match k = " + std::to_string(h.k()));
    const int z = h.z;
    std::vector<std::vector<S>> lambda(h.m() / z, std::vector<S>(z, S{}));
    for (int row = 0; row < h.m(); ++row) {
        S acc{};
        for (const Entry& e : h.row(row)) {
            if (e.index >= h.k()) break;  // entries are column-sorted; parity columns follow
            acc += detail::apply_sign(e.sign, src[e.index]);
        }
        lambda[row / z][row % z] = acc;
    }
    return lambda;
}

// First parity block. With an h_b column, combining the check rows with the
// stair-cancelling coefficients leaves A * q0 = -sum(c_r * lambda_r) where A
// is the signed sum of the h_b shifts; encodability requires A to reduce to a
// single +-shifted identity, which is then inverted by index arithmetic.
// Without h_b (pure staircase), row 0 couples only lambda_0 and the first
// stair block.
template <class S>
std::vector<S> compute_first_parity(const std::vector<std::vector<S>>& lambda,
                                    const ParityStructure& st,
                                    Variant variant = Variant::real) {
    if (static_cast<int>(lambda.size()) != st.m_rows)
        throw std::invalid_argument("lambda block count does not match m_rows");
    const int z = st.z;

    if (!st.has_hb) {
        std::vector<S> p0(z);
        int u0 = st.upper_sign(variant);
        for (int j = 0; j < z; ++j) p0[j] = detail::apply_sign(-u0, lambda[0][j]);
        return p0;
    }

    std::vector<int> c = detail::stair_coefficients(st, variant);

    std::vector<std::pair<int, int>> residual;  // (coefficient, shift)
    for (const HbBlock& b : st.hb_blocks) {
        int coef = c[b.row];
        bool cancelled = false;
        for (auto it = residual.begin(); it != residual.end(); ++it)
            if (it->second == b.shift && it->first == -coef) {
                residual.erase(it);
                cancelled = true;
                break;
            }
        if (!cancelled) residual.emplace_back(coef, b.shift);
    }
    if (residual.size() != 1)
        throw EncodeError("h_b block combination does not reduce to a single shift; "
                          "matrix is not encodable by back-substitution");
    auto [eps, shift] = residual.front();

    std::vector<S> acc(z, S{});
    for (int r = 0; r < st.m_rows; ++r)
        for (int j = 0; j < z; ++j) acc[j] += detail::apply_sign(c[r], lambda[r][j]);

    std::vector<S> p0(z);
    for (int j = 0; j < z; ++j) p0[(j + shift) % z] = detail::apply_sign(-eps, acc[j]);
    return p0;
}

// Remaining parity blocks in staircase-column order. Check row r reads
// lambda_r + h_b contribution + lower(prev stair) + upper(this stair) = 0
// and is solved for the upper block; the last row of an h_b-style staircase
// is satisfied by the construction of p0.
template <class S>
std::vector<std::vector<S>> back_substitute(const std::vector<std::vector<S>>& lambda,
                                            const std::vector<S>& p0,
                                            const ParityStructure& st,
                                            Variant variant = Variant::real) {
    const int z = st.z;
    if (static_cast<int>(lambda.size()) != st.m_rows)
        throw std::invalid_argument("lambda block count does not match m_rows");
    if (static_cast<int>(p0.size()) != z)
        throw std::invalid_argument("p0 length does not match z");

    std::vector<std::vector<S>> blocks;
    blocks.reserve(st.staircase.size());
    const int u = st.upper_sign(variant);

    if (!st.has_hb) {
        blocks.push_back(p0);
        for (int r = 1; r < st.m_rows; ++r) {
            int l = st.lower_sign(r - 1, variant);
            const std::vector<S>& prev = blocks.back();
            std::vector<S> cur(z);
            for (int j = 0; j < z; ++j)
                cur[j] = detail::apply_sign(-u, S(lambda[r][j] + detail::apply_sign(l, prev[j])));
            blocks.push_back(std::move(cur));
        }
        return blocks;
    }

    std::vector<S> rhs(z);
    for (int r = 0; r < st.m_rows - 1; ++r) {
        for (int j = 0; j < z; ++j) rhs[j] = lambda[r][j];
        for (const HbBlock& b : st.hb_blocks)
            if (b.row == r)
                for (int i = 0; i < z; ++i) rhs[i] += p0[(i + b.shift) % z];
        if (r > 0) {
            int l = st.lower_sign(r - 1, variant);
            const std::vector<S>& prev = blocks.back();
            for (int j = 0; j < z; ++j) rhs[j] += detail::apply_sign(l, prev[j]);
        }
        std::vector<S> cur(z);
        for (int j = 0; j < z; ++j) cur[j] = detail::apply_sign(-u, rhs[j]);
        blocks.push_back(std::move(cur));
    }
    return blocks;
}

// Systematic encode: source symbols first, then the h_b block (when present)
// and the staircase blocks in column order. Uses additions, subtractions and
// cyclic index shifts only.
template <class S>
std::vector<S> encode(const SparseParityMatrix& h, const ParityStructure& st,
                      const std::vector<S>& src) {
    std::vector<std::vector<S>> lambda = compute_lambda(h, src);
    std::vector<S> p0 = compute_first_parity(lambda, st, h.variant);
    std::vector<std::vector<S>> stairs = back_substitute(lambda, p0, st, h.variant);

    const int z = h.z;
    std::vector<S> x(h.n(), S{});
    for (int i = 0; i < h.k(); ++i) x[i] = src[i];
    if (st.has_hb)
        for (int j = 0; j < z; ++j) x[st.hb_col * z + j] = p0[j];
    for (std::size_t i = 0; i < st.staircase.size(); ++i)
        for (int j = 0; j < z; ++j) x[st.staircase[i].col * z + j] = stairs[i][j];
    return x;
}

template <class S>
void syndrome_into(const SparseParityMatrix& h, const std::vector<S>& x, std::vector<S>& out) {
    if (static_cast<int>(x.size()) != h.n())
        throw std::invalid_argument("symbol count " + std::to_string(x.size()) +
                                    " does not match n = " + std::to_string(h.n()));
    out.resize(h.m());
    for (int i = 0; i < h.m(); ++i) {
        S acc{};
        for (const Entry& e : h.row(i)) acc += detail::apply_sign(e.sign, x[e.index]);
        out[i] = acc;
    }
}

template <class S>
std::vector<S> syndrome(const SparseParityMatrix& h, const std::vector<S>& x) {
    std::vector<S> s;
    syndrome_into(h, x, s);
    return s;
}

}  // namespace rnldpc
