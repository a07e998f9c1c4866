#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "encoder.hpp"
#include "parity_matrix.hpp"

namespace rnldpc {

class OverflowError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DecoderParams {
    std::vector<double> beta;  // empty: all 1; one value: broadcast; else per symbol
    std::vector<double> t;     // same conventions; must be integer-valued for integer decoding
    int max_iters = 300;
    double eps_zero = -1.0;  // negative: default to 0 (integers) or 1e-9*(1+max|y|) (float)
    bool sign_weighted_consensus = false;
    std::int64_t overflow_limit = 0;  // >0: integer partial sums asserted within +-limit
};

template <class S>
struct DecodeResult {
    std::vector<S> x_hat;
    bool converged = false;
    bool stalled = false;  // active set emptied before convergence
    int iterations = 0;
    double final_syndrome_l1 = 0.0;
};

// Snapshot of one update step, valid only during the observer callback.
struct IterationTrace {
    int iteration;      // 0-based index of the step being applied
    double objective;   // half the squared maximum score, before the update
    const std::vector<int>& e_bin;
    const std::vector<int>& d;
    const std::vector<double>& scores;
    const std::vector<std::int32_t>& active;
    const std::vector<double>& deltas;  // aligned with active
};

using DecodeObserver = std::function<void(const IterationTrace&)>;

namespace detail {

template <class S>
inline double magnitude(S v) {
    if constexpr (std::is_integral_v<S>)
        return static_cast<double>(std::llabs(static_cast<long long>(v)));
    else
        return std::abs(static_cast<double>(v));
}

template <class S>
inline bool exceeds(S v, double eps) {
    return magnitude(v) > eps;
}

template <class S>
inline int sign_of(S v, double eps) {
    if (!exceeds(v, eps)) return 0;
    return v < S{} ? -1 : +1;
}

template <class S>
inline double default_eps_zero(const std::vector<S>& y) {
    if constexpr (std::is_integral_v<S>) {
        return 0.0;
    } else {
        double mx = 0.0;
        for (S v : y) mx = std::max(mx, std::abs(static_cast<double>(v)));
        return 1e-9 * (1.0 + mx);
    }
}

// Broadcast an empty/scalar/per-symbol parameter vector to length n.
inline std::vector<double> broadcast_param(const std::vector<double>& v, int n,
                                           const char* name) {
    if (v.empty()) return std::vector<double>(n, 1.0);
    if (v.size() == 1) return std::vector<double>(n, v[0]);
    if (static_cast<int>(v.size()) == n) return v;
    throw std::invalid_argument(std::string(name) + " must have length 1 or n");
}

template <class S>
inline void checked_add(S& acc, S term, std::int64_t limit) {
    acc += term;
    if constexpr (std::is_integral_v<S>) {
        if (limit > 0 && (acc > limit || acc < -limit))
            throw OverflowError("accumulated value " + std::to_string(acc) +
                                " exceeds the fixed-point bound " + std::to_string(limit));
    }
}

}  // namespace detail

template <class S>
std::vector<std::int8_t> binarize_syndrome(const std::vector<S>& s, double eps_zero) {
    std::vector<std::int8_t> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        out[i] = detail::exceeds(s[i], eps_zero) ? std::int8_t{+1} : std::int8_t{-1};
    return out;
}

// E^bin_k: mismatch-with-received term plus binarized syndromes of the
// incident checks.
template <class S>
std::vector<int> local_energy(const std::vector<S>& x, const std::vector<S>& y,
                              const std::vector<std::int8_t>& s_bin,
                              const SparseParityMatrix& h, double eps_zero) {
    if (x.size() != y.size() || static_cast<int>(x.size()) != h.n())
        throw std::invalid_argument("x and y must both have length n");
    std::vector<int> e(h.n());
    for (int k = 0; k < h.n(); ++k) {
        bool moved;
        if constexpr (std::is_integral_v<S>)
            moved = x[k] != y[k];
        else
            moved = detail::exceeds(S(x[k] - y[k]), eps_zero);
        int acc = moved ? +1 : -1;
        for (const Entry& en : h.col(k)) acc += s_bin[en.index];
        e[k] = acc;
    }
    return e;
}

// D_k: sum of syndrome signs over the incident checks; zero syndromes
// contribute nothing. The sign_weighted variant multiplies each term by the
// stored entry sign.
template <class S>
std::vector<int> sign_consensus(const std::vector<S>& s, const SparseParityMatrix& h,
                                double eps_zero, bool sign_weighted = false) {
    std::vector<int> d(h.n());
    for (int k = 0; k < h.n(); ++k) {
        int acc = 0;
        for (const Entry& en : h.col(k)) {
            int sg = detail::sign_of(s[en.index], eps_zero);
            acc += sign_weighted ? en.sign * sg : sg;
        }
        d[k] = acc;
    }
    return d;
}

inline std::vector<double> scores(const std::vector<int>& e_bin, const std::vector<int>& d,
                                  const std::vector<double>& beta) {
    const int n = static_cast<int>(e_bin.size());
    if (d.size() != e_bin.size()) throw std::invalid_argument("e_bin and d length mismatch");
    std::vector<double> b = detail::broadcast_param(beta, n, "beta");
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k) out[k] = e_bin[k] + b[k] * std::abs(d[k]);
    return out;
}

inline double objective(const std::vector<double>& score) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double v : score) mx = std::max(mx, v);
    return 0.5 * mx * mx;
}

// Argmax of the scores, filtered to symbols with at least one unsatisfied
// incident check (others have no defined correction magnitude). Empty result
// means the decoder is stalled.
template <class S>
std::vector<std::int32_t> active_set(const std::vector<double>& score,
                                     const SparseParityMatrix& h, const std::vector<S>& s,
                                     double eps_zero) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double v : score) mx = std::max(mx, v);
    std::vector<std::int32_t> out;
    for (int k = 0; k < h.n(); ++k) {
        if (score[k] != mx) continue;
        for (const Entry& en : h.col(k))
            if (detail::exceeds(s[en.index], eps_zero)) {
                out.push_back(k);
                break;
            }
    }
    return out;
}

// Correction sign: consensus sign when available, else the sign of the
// received symbol, with sign(0) = +1.
inline int majority_vote(long long d_k, double y_k) {
    if (d_k != 0) return d_k < 0 ? -1 : +1;
    return y_k < 0 ? -1 : +1;
}

// Magnitude of the smallest nonzero incident syndrome; ties keep the
// smallest row index.
template <class S>
S correction_magnitude(int k, const std::vector<S>& s, const SparseParityMatrix& h,
                       double eps_zero) {
    bool found = false;
    double best = 0.0;
    S best_val{};
    for (const Entry& en : h.col(k)) {
        if (!detail::exceeds(s[en.index], eps_zero)) continue;
        double mag = detail::magnitude(s[en.index]);
        if (!found || mag < best) {
            found = true;
            best = mag;
            best_val = s[en.index] < S{} ? S(-s[en.index]) : s[en.index];
        }
    }
    if (!found)
        throw std::logic_error("correction_magnitude: no nonzero syndrome in column " +
                               std::to_string(k));
    return best_val;
}

namespace detail {

template <class S>
DecodeResult<S> decode_impl(const std::vector<S>& y, const SparseParityMatrix& h,
                            const DecoderParams& params, const DecodeObserver* observer) {
    if (static_cast<int>(y.size()) != h.n())
        throw std::invalid_argument("received length " + std::to_string(y.size()) +
                                    " does not match n = " + std::to_string(h.n()));
    if (h.variant != Variant::real)
        throw std::invalid_argument("decode requires the real-variant parity matrix");
    if (params.max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");

    const int n = h.n();
    const int m = h.m();
    std::vector<double> beta = broadcast_param(params.beta, n, "beta");
    std::vector<double> t = broadcast_param(params.t, n, "t");
    for (double b : beta)
        if (b < 0.0 || b > 1.0) throw std::invalid_argument("beta values must lie in [0,1]");
    for (double v : t) {
        if (v <= 0.0) throw std::invalid_argument("t values must be positive");
        if constexpr (std::is_integral_v<S>)
            if (std::nearbyint(v) != v)
                throw std::invalid_argument("t values must be integers for integer decoding");
    }
    const double eps = params.eps_zero >= 0.0 ? params.eps_zero : default_eps_zero(y);
    const std::int64_t limit = params.overflow_limit;

    DecodeResult<S> res;
    res.x_hat = y;
    std::vector<S>& x = res.x_hat;

    std::vector<S> s(m);
    auto recompute_syndrome = [&] {
        for (int i = 0; i < m; ++i) {
            S acc{};
            for (const Entry& e : h.row(i)) checked_add(acc, apply_sign(e.sign, x[e.index]), limit);
            s[i] = acc;
        }
    };
    auto syndrome_clear = [&] {
        for (int i = 0; i < m; ++i)
            if (exceeds(s[i], eps)) return false;
        return true;
    };

    std::vector<std::int8_t> s_bin(m);
    std::vector<int> e_bin(n), d(n);
    std::vector<double> score(n);
    std::vector<S> min_mag(n);
    std::vector<std::uint8_t> has_nz(n);
    std::vector<std::int32_t> active;
    std::vector<double> deltas;

    recompute_syndrome();
    while (true) {
        if (syndrome_clear()) {
            res.converged = true;
            break;
        }
        if (res.iterations == params.max_iters) break;

        for (int i = 0; i < m; ++i) s_bin[i] = exceeds(s[i], eps) ? +1 : -1;

        for (int k = 0; k < n; ++k) {
            bool moved;
            if constexpr (std::is_integral_v<S>)
                moved = x[k] != y[k];
            else
                moved = exceeds(S(x[k] - y[k]), eps);
            int e_acc = moved ? +1 : -1;
            int d_acc = 0;
            bool nz = false;
            double best = 0.0;
            S best_val{};
            for (const Entry& en : h.col(k)) {
                e_acc += s_bin[en.index];
                int sg = sign_of(s[en.index], eps);
                d_acc += params.sign_weighted_consensus ? en.sign * sg : sg;
                if (sg != 0) {
                    double mag = magnitude(s[en.index]);
                    if (!nz || mag < best) {
                        nz = true;
                        best = mag;
                        best_val = s[en.index] < S{} ? S(-s[en.index]) : s[en.index];
                    }
                }
            }
            e_bin[k] = e_acc;
            d[k] = d_acc;
            score[k] = e_acc + beta[k] * std::abs(d_acc);
            min_mag[k] = best_val;
            has_nz[k] = nz;
        }

        double mx = -std::numeric_limits<double>::infinity();
        for (int k = 0; k < n; ++k) mx = std::max(mx, score[k]);
        active.clear();
        for (int k = 0; k < n; ++k)
            if (score[k] == mx && has_nz[k]) active.push_back(k);
        if (active.empty()) {
            res.stalled = true;
            break;
        }

        deltas.clear();
        for (std::int32_t k : active) {
            int mv = majority_vote(d[k], static_cast<double>(y[k]));
            S delta;
            if constexpr (std::is_integral_v<S>)
                delta = static_cast<S>(std::llround(t[k])) * mv * min_mag[k];
            else
                delta = static_cast<S>(t[k] * mv * min_mag[k]);
            deltas.push_back(static_cast<double>(delta));
            x[k] -= delta;
            if constexpr (std::is_integral_v<S>) {
                if (limit > 0 && (x[k] > limit || x[k] < -limit))
                    throw OverflowError("updated symbol " + std::to_string(k) +
                                        " exceeds the fixed-point bound");
            }
        }

        if (observer && *observer) {
            IterationTrace trace{res.iterations, objective(score), e_bin, d,
                                 score,          active,           deltas};
            (*observer)(trace);
        }

        ++res.iterations;
        recompute_syndrome();
    }

    for (int i = 0; i < m; ++i) res.final_syndrome_l1 += magnitude(s[i]);
    return res;
}

}  // namespace detail

template <class S>
DecodeResult<S> decode(const std::vector<S>& y, const SparseParityMatrix& h,
                       const DecoderParams& params = {}) {
    return detail::decode_impl(y, h, params, nullptr);
}

template <class S>
DecodeResult<S> decode_traced(const std::vector<S>& y, const SparseParityMatrix& h,
                              const DecoderParams& params, const DecodeObserver& observer) {
    return detail::decode_impl(y, h, params, &observer);
}

}  // namespace rnldpc
