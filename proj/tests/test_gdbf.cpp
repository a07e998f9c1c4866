#include <catch2/catch_amalgamated.hpp>

#include <rnldpc/gdbf.hpp>

#include "support/test_support.hpp"

#include <cstdint>
#include <vector>

using namespace rnldpc;

namespace {

struct BinaryToy {
    SparseParityMatrix h;
    ParityStructure st;
    BinaryToy()
        : h(expand(builtin_code("t1"), Variant::binary)),
          st(detect_structure(builtin_code("t1"))) {}
};

}  // namespace

TEST_CASE("single flip is repaired in one pass") {
    BinaryToy tc;
    std::vector<Bit> x = binary_encode(tc.h, tc.st, {1, 0, 1});
    REQUIRE(x == std::vector<Bit>{1, 0, 1, 1, 0, 0});
    std::vector<Bit> y = x;
    y[0] ^= 1;
    DecodeResult<Bit> res = gdbf_decode(y, tc.h);
    REQUIRE(res.converged);
    REQUIRE(res.iterations == 1);
    REQUIRE(res.x_hat == x);
    REQUIRE(res.final_syndrome_l1 == 0.0);
}

TEST_CASE("clean word converges without iterating") {
    BinaryToy tc;
    std::vector<Bit> x = binary_encode(tc.h, tc.st, {0, 1, 1});
    DecodeResult<Bit> res = gdbf_decode(x, tc.h);
    REQUIRE(res.converged);
    REQUIRE(res.iterations == 0);
}

TEST_CASE("an error pattern on a codeword converges undetected") {
    BinaryToy tc;
    std::vector<Bit> x = binary_encode(tc.h, tc.st, {1, 1, 0});
    std::vector<Bit> y = x;
    y[1] ^= 1;
    y[3] ^= 1;
    for (Bit s : binary_syndrome(tc.h, y)) REQUIRE(s == 0);
    DecodeResult<Bit> res = gdbf_decode(y, tc.h);
    REQUIRE(res.converged);
    REQUIRE(res.iterations == 0);
    REQUIRE(res.x_hat != x);
}

TEST_CASE("oscillating pattern hits the iteration cap") {
    BinaryToy tc;
    std::vector<Bit> x = binary_encode(tc.h, tc.st, {0, 0, 0});
    std::vector<Bit> y = x;
    y[0] ^= 1;
    y[5] ^= 1;
    DecodeResult<Bit> res = gdbf_decode(y, tc.h, 30);
    REQUIRE_FALSE(res.converged);
    REQUIRE(res.iterations == 30);
    REQUIRE(res.final_syndrome_l1 >= 1.0);
}

TEST_CASE("all argmax bits flip together") {
    BinaryToy tc;
    std::vector<Bit> y{1, 0, 0, 1, 0, 1};
    DecodeResult<Bit> res = gdbf_decode(y, tc.h, 1);
    std::vector<Bit> diff;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (res.x_hat[i] != y[i]) diff.push_back(static_cast<Bit>(i));
    REQUIRE(diff.size() >= 2);
}

TEST_CASE("single flips on the standard code always repair in one iteration") {
    BaseMatrix bm = builtin_code("wifi-r23");
    SparseParityMatrix h = expand(bm, Variant::binary);
    ParityStructure st = detect_structure(bm);
    FrameRng rng(31, 0, 0);
    for (int f = 0; f < 50; ++f) {
        std::vector<Bit> src(static_cast<std::size_t>(h.k()));
        for (auto& b : src) b = rng.bit();
        std::vector<Bit> x = binary_encode(h, st, src);
        std::vector<Bit> y = x;
        y[rng.next() % static_cast<std::uint64_t>(h.n())] ^= 1;
        DecodeResult<Bit> res = gdbf_decode(y, h);
        REQUIRE(res.converged);
        REQUIRE(res.iterations == 1);
        REQUIRE(res.x_hat == x);
    }
}

TEST_CASE("gdbf input validation") {
    BinaryToy tc;
    REQUIRE_THROWS_AS(gdbf_decode(std::vector<Bit>(5, 0), tc.h), std::invalid_argument);
    REQUIRE_THROWS_AS(gdbf_decode(std::vector<Bit>(6, 0), tc.h, 0), std::invalid_argument);
    SparseParityMatrix hr = expand(builtin_code("t1"), Variant::real);
    REQUIRE_THROWS_AS(gdbf_decode(std::vector<Bit>(6, 0), hr), std::invalid_argument);
}
