#pragma once

#include <cstdint>

namespace rnldpc {

// GF(2) scalar with the arithmetic surface the encoder templates use:
// + and - are XOR, unary minus is the identity. Lets the binary encoder
// share the real encoder's block schedule verbatim.
struct Gf2 {
    std::uint8_t v = 0;

    constexpr Gf2() = default;
    constexpr explicit Gf2(int b) : v(static_cast<std::uint8_t>(b & 1)) {}

    constexpr Gf2 operator-() const { return *this; }
    friend constexpr Gf2 operator+(Gf2 a, Gf2 b) { return Gf2(a.v ^ b.v); }
    friend constexpr Gf2 operator-(Gf2 a, Gf2 b) { return Gf2(a.v ^ b.v); }
    constexpr Gf2& operator+=(Gf2 o) {
        v ^= o.v;
        return *this;
    }
    constexpr Gf2& operator-=(Gf2 o) {
        v ^= o.v;
        return *this;
    }
    friend constexpr bool operator==(Gf2 a, Gf2 b) { return a.v == b.v; }
};

}  // namespace rnldpc
