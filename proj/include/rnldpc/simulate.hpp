#pragma once

#include <cmath>
#include <cstdint>
#include <exception>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "base_matrix.hpp"
#include "channel.hpp"
#include "encoder.hpp"
#include "format.hpp"
#include "gdbf.hpp"
#include "gdsu.hpp"
#include "parity_matrix.hpp"
#include "quantize.hpp"

namespace rnldpc {

enum class DecoderKind { gdsu, gdbf };

inline const char* decoder_name(DecoderKind d) { return d == DecoderKind::gdsu ? "gdsu" : "gdbf"; }

inline DecoderKind parse_decoder(const std::string& text) {
    if (text == "gdsu") return DecoderKind::gdsu;
    if (text == "gdbf") return DecoderKind::gdbf;
    throw std::invalid_argument("unknown decoder \"" + text + "\" (expected gdsu or gdbf)");
}

// Source symbol distribution: all-zero frames, or i.i.d. uniform draws
// (uniform bits in the binary domain).
struct SourceMode {
    bool zero = true;
    double lo = -1.0;
    double hi = 1.0;

    static SourceMode parse(const std::string& text) {
        SourceMode m;
        if (text == "zero") return m;
        m.zero = false;
        if (text == "random") return m;
        if (text.rfind("random:", 0) == 0) {
            std::string rest = text.substr(7);
            std::size_t colon = rest.find(':');
            if (colon != std::string::npos) {
                m.lo = parse_double(rest.substr(0, colon), "source bound");
                m.hi = parse_double(rest.substr(colon + 1), "source bound");
                if (m.hi < m.lo) throw std::invalid_argument("source range is inverted");
                return m;
            }
        }
        throw std::invalid_argument("invalid source mode \"" + text +
                                    "\" (expected zero or random:LO:HI)");
    }

    std::string str() const {
        return zero ? "zero" : "random:" + fmt_plain(lo) + ":" + fmt_plain(hi);
    }
};

struct SimConfig {
    std::string code_name = "wifi-r23";
    BaseMatrix base;  // resolved by the caller (builtin name or file)
    DecoderKind decoder = DecoderKind::gdsu;
    ChannelModel channel{};
    long long frames = 1000;
    int max_iters = 300;
    double beta = 1.0;
    double t = 1.0;
    std::uint64_t seed = 1;
    int quantize_bits = 0;  // 0: floating point
    int quantize_scale = 0;
    int workers = 0;  // 0: hardware concurrency
    SourceMode source{};
    int point_index = 0;  // rng stream component; sweep sets it per alpha
};

struct SimStats {
    long long frames_run = 0;
    long long symbols_run = 0;
    long long frame_errors = 0;
    long long symbol_errors = 0;
    long long undetected = 0;
    long long iterations_total = 0;

    double fer() const { return frames_run ? static_cast<double>(frame_errors) / frames_run : 0.0; }
    double ser() const { return symbols_run ? static_cast<double>(symbol_errors) / symbols_run : 0.0; }
    double avg_iterations() const {
        return frames_run ? static_cast<double>(iterations_total) / frames_run : 0.0;
    }

    SimStats& operator+=(const SimStats& o) {
        frames_run += o.frames_run;
        symbols_run += o.symbols_run;
        frame_errors += o.frame_errors;
        symbol_errors += o.symbol_errors;
        undetected += o.undetected;
        iterations_total += o.iterations_total;
        return *this;
    }
};

struct WilsonInterval {
    double lo = 0.0;
    double hi = 1.0;
};

inline WilsonInterval wilson95(long long errors, long long trials) {
    if (trials <= 0) return {0.0, 1.0};
    const double zc = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double ph = static_cast<double>(errors) / n;
    const double z2 = zc * zc;
    const double denom = 1.0 + z2 / n;
    const double center = (ph + z2 / (2.0 * n)) / denom;
    const double half = zc * std::sqrt(ph * (1.0 - ph) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace detail {

struct PointSetup {
    SparseParityMatrix h;
    ParityStructure st;
    DecoderParams dp;
    FixedPointFormat fmt{};
    std::int64_t data_limit = 0;
    std::int64_t parity_limit = 0;
};

inline PointSetup make_setup(const SimConfig& cfg) {
    PointSetup ps;
    ps.st = detect_structure(cfg.base);
    ps.h = expand(cfg.base, cfg.decoder == DecoderKind::gdbf ? Variant::binary : Variant::real);
    ps.dp.beta = {cfg.beta};
    ps.dp.t = {cfg.t};
    ps.dp.max_iters = cfg.max_iters;
    if (cfg.quantize_bits > 0) {
        ps.fmt = FixedPointFormat::for_code(cfg.quantize_bits, max_row_degree(ps.h));
        ps.data_limit = ps.fmt.data_limit();
        ps.parity_limit = ps.fmt.parity_limit();
        ps.dp.overflow_limit = ps.parity_limit;
    }
    return ps;
}

inline void tally(SimStats& stats, long long n, long long diff, bool converged, int iterations) {
    stats.frames_run += 1;
    stats.symbols_run += n;
    stats.iterations_total += iterations;
    if (diff > 0) {
        stats.frame_errors += 1;
        stats.symbol_errors += diff;
        if (converged) stats.undetected += 1;
    }
}

inline void simulate_frame(const SimConfig& cfg, const PointSetup& ps, long long frame,
                           SimStats& stats) {
    FrameRng rng(cfg.seed, static_cast<std::uint64_t>(cfg.point_index), static_cast<std::uint64_t>(frame));
    const int n = ps.h.n();
    const int k = ps.h.k();

    if (cfg.decoder == DecoderKind::gdbf) {
        std::vector<Bit> src(k, 0);
        if (!cfg.source.zero)
            for (auto& b : src) b = rng.bit() ? 1 : 0;
        std::vector<Bit> x = binary_encode(ps.h, ps.st, src);
        std::vector<Bit> y = inject_errors(x, cfg.channel, rng);
        DecodeResult<Bit> res = gdbf_decode(y, ps.h, cfg.max_iters);
        long long diff = 0;
        for (int i = 0; i < n; ++i) diff += res.x_hat[i] != x[i];
        tally(stats, n, diff, res.converged, res.iterations);
        return;
    }

    if (cfg.quantize_bits > 0) {
        const double factor = std::ldexp(1.0, cfg.quantize_scale);
        std::vector<std::int64_t> src(k, 0);
        if (!cfg.source.zero)
            for (auto& v : src) {
                v = static_cast<std::int64_t>(
                    std::nearbyint(rng.uniform(cfg.source.lo, cfg.source.hi) * factor));
                if (v > ps.data_limit || v < -ps.data_limit)
                    throw std::invalid_argument(
                        "source range exceeds the quantized data range; raise --quantize-bits "
                        "or narrow --source");
            }
        std::vector<std::int64_t> x = encode(ps.h, ps.st, src);
        std::vector<std::int64_t> y = x;
        for (int i = 0; i < n; ++i)
            if (rng.bernoulli(cfg.channel.alpha)) {
                y[i] += static_cast<std::int64_t>(
                    std::nearbyint(cfg.channel.amplitude.draw(rng) * factor));
                if (y[i] > ps.parity_limit || y[i] < -ps.parity_limit)
                    throw QuantizeError("received symbol overflows the quantized parity range", i);
            }
        DecodeResult<std::int64_t> res = decode(y, ps.h, ps.dp);
        long long diff = 0;
        for (int i = 0; i < n; ++i) diff += res.x_hat[i] != x[i];
        tally(stats, n, diff, res.converged, res.iterations);
        return;
    }

    std::vector<double> src(k, 0.0);
    if (!cfg.source.zero)
        for (auto& v : src) v = rng.uniform(cfg.source.lo, cfg.source.hi);
    std::vector<double> x = encode(ps.h, ps.st, src);
    std::vector<double> y = inject_errors(x, cfg.channel, rng);
    DecodeResult<double> res = decode(y, ps.h, ps.dp);
    double mx = 0.0;
    for (double v : x) mx = std::max(mx, std::abs(v));
    const double eps_cmp = 1e-6 * (1.0 + mx);
    long long diff = 0;
    for (int i = 0; i < n; ++i) diff += std::abs(res.x_hat[i] - x[i]) > eps_cmp;
    tally(stats, n, diff, res.converged, res.iterations);
}

}  // namespace detail

// Fixed frame count, frames striped across workers; identical results for
// any worker count because every frame owns its rng stream and the merge is
// integer addition.
inline SimStats run_point(const SimConfig& cfg) {
    if (cfg.frames < 1) throw std::invalid_argument("frames must be >= 1");
    cfg.channel.validate();
    detail::PointSetup ps = detail::make_setup(cfg);

    int workers = cfg.workers > 0
                      ? cfg.workers
                      : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = static_cast<int>(std::min<long long>(workers, cfg.frames));

    if (workers == 1) {
        SimStats stats;
        for (long long f = 0; f < cfg.frames; ++f) detail::simulate_frame(cfg, ps, f, stats);
        return stats;
    }

    std::vector<SimStats> parts(workers);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (long long f = w; f < cfg.frames; f += workers)
                    detail::simulate_frame(cfg, ps, f, parts[w]);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    SimStats total;
    for (const SimStats& p : parts) total += p;
    return total;
}

// One run_point per alpha; each point gets its own rng stream index.
template <class RowFn>
std::vector<SimStats> sweep(const SimConfig& base_cfg, const std::vector<double>& alphas,
                            RowFn&& on_row) {
    std::vector<SimStats> out;
    out.reserve(alphas.size());
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        SimConfig cfg = base_cfg;
        cfg.channel.alpha = alphas[i];
        cfg.point_index = static_cast<int>(i);
        SimStats stats = run_point(cfg);
        on_row(cfg, stats);
        out.push_back(stats);
    }
    return out;
}

inline std::vector<SimStats> sweep(const SimConfig& base_cfg, const std::vector<double>& alphas) {
    return sweep(base_cfg, alphas, [](const SimConfig&, const SimStats&) {});
}

inline constexpr std::string_view csv_header =
    "decoder,code,z,alpha,frames,frame_errors,fer,fer_ci_lo,fer_ci_hi,symbol_errors,ser,"
    "undetected,avg_iterations,max_iters,beta,t,quantize_bits,amp_model,seed";

inline std::string csv_row(const SimConfig& cfg, const SimStats& stats) {
    WilsonInterval ci = wilson95(stats.frame_errors, stats.frames_run);
    std::string r;
    r += decoder_name(cfg.decoder);
    r += ',';
    r += cfg.code_name;
    r += ',';
    r += std::to_string(cfg.base.z);
    r += ',';
    r += fmt_plain(cfg.channel.alpha);
    r += ',';
    r += std::to_string(stats.frames_run);
    r += ',';
    r += std::to_string(stats.frame_errors);
    r += ',';
    r += fmt_plain(stats.fer());
    r += ',';
    r += fmt_plain(ci.lo);
    r += ',';
    r += fmt_plain(ci.hi);
    r += ',';
    r += std::to_string(stats.symbol_errors);
    r += ',';
    r += fmt_plain(stats.ser());
    r += ',';
    r += std::to_string(stats.undetected);
    r += ',';
    r += fmt_plain(stats.avg_iterations());
    r += ',';
    r += std::to_string(cfg.max_iters);
    r += ',';
    r += fmt_plain(cfg.beta);
    r += ',';
    r += fmt_plain(cfg.t);
    r += ',';
    r += std::to_string(cfg.quantize_bits);
    r += ',';
    r += cfg.channel.amplitude.str();
    r += ',';
    r += std::to_string(cfg.seed);
    return r;
}

}  // namespace rnldpc
