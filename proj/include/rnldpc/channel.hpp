#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "format.hpp"

namespace rnldpc {

// splitmix64 stream keyed by (seed, stream, index): every frame owns an
// independent deterministic generator, so results cannot depend on worker
// scheduling.
struct FrameRng {
    std::uint64_t state;

    static constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;

    static constexpr std::uint64_t mix(std::uint64_t x) {
        x ^= x >> 30;
        x *= 0xBF58476D1CE4E5B9ULL;
        x ^= x >> 27;
        x *= 0x94D049BB133111EBULL;
        x ^= x >> 31;
        return x;
    }

    FrameRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
        : state(mix(seed + golden) ^ mix(stream + 2 * golden) ^ mix(index + 3 * golden)) {}

    std::uint64_t next() {
        std::uint64_t z = (state += golden);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }  // [0, 1)

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    bool bernoulli(double p) { return unit() < p; }

    int sign() { return (next() & 1) ? +1 : -1; }

    bool bit() { return next() & 1; }

    double gaussian(double sigma) {
        double u1 = 1.0 - unit();  // (0, 1]
        double u2 = unit();
        return sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }
};

enum class AmpKind { constant, uniform, gaussian };

// Error amplitude distribution; constant and uniform magnitudes get an
// independent random sign, and draws are never exactly zero.
struct AmplitudeModel {
    AmpKind kind = AmpKind::uniform;
    double a = 0.0;
    double lo = 0.5;
    double hi = 8.0;
    double sigma = 0.0;

    static AmplitudeModel constant(double a) {
        if (a <= 0.0) throw std::invalid_argument("constant amplitude must be positive");
        AmplitudeModel m;
        m.kind = AmpKind::constant;
        m.a = a;
        return m;
    }
    static AmplitudeModel uniform_range(double lo, double hi) {
        if (lo <= 0.0) throw std::invalid_argument("uniform amplitude lower bound must be positive");
        if (hi < lo) throw std::invalid_argument("uniform amplitude range is inverted");
        AmplitudeModel m;
        m.kind = AmpKind::uniform;
        m.lo = lo;
        m.hi = hi;
        return m;
    }
    static AmplitudeModel gaussian_sigma(double sigma) {
        if (sigma <= 0.0) throw std::invalid_argument("gaussian sigma must be positive");
        AmplitudeModel m;
        m.kind = AmpKind::gaussian;
        m.sigma = sigma;
        return m;
    }

    // "constant:A" | "uniform:LO:HI" | "gaussian:SIGMA"
    static AmplitudeModel parse(const std::string& text) {
        std::vector<std::string> parts;
        std::size_t start = 0;
        while (true) {
            std::size_t colon = text.find(':', start);
            parts.push_back(text.substr(start, colon - start));
            if (colon == std::string::npos) break;
            start = colon + 1;
        }
        if (parts[0] == "constant" && parts.size() == 2)
            return constant(parse_double(parts[1], "amplitude"));
        if (parts[0] == "uniform" && parts.size() == 3)
            return uniform_range(parse_double(parts[1], "amplitude bound"),
                                 parse_double(parts[2], "amplitude bound"));
        if (parts[0] == "gaussian" && parts.size() == 2)
            return gaussian_sigma(parse_double(parts[1], "sigma"));
        throw std::invalid_argument("invalid amplitude model \"" + text +
                                    "\" (expected constant:A, uniform:LO:HI or gaussian:SIGMA)");
    }

    std::string str() const {
        switch (kind) {
            case AmpKind::constant: return "constant:" + fmt_plain(a);
            case AmpKind::uniform: return "uniform:" + fmt_plain(lo) + ":" + fmt_plain(hi);
            case AmpKind::gaussian: return "gaussian:" + fmt_plain(sigma);
        }
        return {};
    }

    double draw(FrameRng& rng) const {
        double e = 0.0;
        do {
            switch (kind) {
                case AmpKind::constant: e = a * rng.sign(); break;
                case AmpKind::uniform: e = rng.uniform(lo, hi) * rng.sign(); break;
                case AmpKind::gaussian: e = rng.gaussian(sigma); break;
            }
        } while (e == 0.0);
        return e;
    }
};

enum class Domain { binary, real };

struct ChannelModel {
    double alpha = 0.01;  // per-symbol error probability
    AmplitudeModel amplitude{};
    Domain domain = Domain::real;

    void validate() const {
        if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("alpha must lie in [0,1]");
    }
};

inline std::vector<std::uint8_t> inject_errors(const std::vector<std::uint8_t>& x,
                                               const ChannelModel& ch, FrameRng& rng) {
    std::vector<std::uint8_t> y = x;
    for (auto& b : y)
        if (rng.bernoulli(ch.alpha)) b ^= 1;
    return y;
}

inline std::vector<double> inject_errors(const std::vector<double>& x, const ChannelModel& ch,
                                         FrameRng& rng) {
    std::vector<double> y = x;
    for (auto& v : y)
        if (rng.bernoulli(ch.alpha)) v += ch.amplitude.draw(rng);
    return y;
}

}  // namespace rnldpc
