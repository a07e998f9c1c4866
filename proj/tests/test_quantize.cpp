#include <catch2/catch_amalgamated.hpp>

#include <rnldpc/encoder.hpp>
#include <rnldpc/quantize.hpp>

#include "support/test_support.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

using namespace rnldpc;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("guard bits cover worst-case row accumulation") {
    REQUIRE(required_guard_bits(2) == 1);
    REQUIRE(required_guard_bits(3) == 2);
    REQUIRE(required_guard_bits(8) == 3);
    REQUIRE(required_guard_bits(11) == 4);
    REQUIRE(required_guard_bits(12) == 4);
    REQUIRE_THROWS_AS(required_guard_bits(1), std::invalid_argument);
}

TEST_CASE("parity width follows the data width plus guard plus sign") {
    REQUIRE(required_parity_bits(8, 11) == 13);
    REQUIRE(required_parity_bits(8, 2) == 10);
    REQUIRE(required_parity_bits(16, 8) == 20);
    REQUIRE_THROWS_AS(required_parity_bits(1, 8), std::invalid_argument);
}

TEST_CASE("format limits") {
    FixedPointFormat fmt = FixedPointFormat::for_code(8, 12);
    REQUIRE(fmt.p == 8);
    REQUIRE(fmt.guard == 4);
    REQUIRE(fmt.parity_bits == 13);
    REQUIRE(fmt.data_limit() == 127);
    REQUIRE(fmt.parity_limit() == 4095);
    REQUIRE_THROWS_AS(FixedPointFormat::for_code(60, 12), std::invalid_argument);
}

TEST_CASE("rounding is to nearest even") {
    FixedPointFormat fmt = FixedPointFormat::for_code(8, 12);
    QuantizedVector q = quantize_frame({0.5, 1.5, 2.5, -0.5, -1.5, 1.25}, fmt, 0);
    REQUIRE(q.values == std::vector<std::int64_t>{0, 2, 2, 0, -2, 1});
    REQUIRE(q.scale == 0);

    QuantizedVector q2 = quantize_frame({0.5, -0.375}, fmt, 3);
    REQUIRE(q2.values == std::vector<std::int64_t>{4, -3});
}

TEST_CASE("range checks distinguish data and parity positions") {
    FixedPointFormat fmt = FixedPointFormat::for_code(8, 12);

    REQUIRE_NOTHROW(quantize_frame({127.0, 4095.0}, fmt, 0, 1));
    try {
        quantize_frame({128.0, 0.0}, fmt, 0, 1);
        FAIL("expected QuantizeError");
    } catch (const QuantizeError& e) {
        REQUIRE(e.position == 0);
        REQUIRE_THAT(e.what(), ContainsSubstring("8-bit"));
    }
    try {
        quantize_frame({0.0, 4096.0}, fmt, 0, 1);
        FAIL("expected QuantizeError");
    } catch (const QuantizeError& e) {
        REQUIRE(e.position == 1);
        REQUIRE_THAT(e.what(), ContainsSubstring("13-bit"));
    }
    REQUIRE_THROWS_AS(quantize_frame({128.0}, fmt, 0), QuantizeError);
    REQUIRE_NOTHROW(quantize_frame({127.49, -127.49}, fmt, 0));
}

TEST_CASE("fixed point decode corrects integer grid errors") {
    BaseMatrix bm = builtin_code("wifi-r23");
    SparseParityMatrix h = expand(bm, Variant::real);
    ParityStructure st = detect_structure(bm);
    FixedPointFormat fmt = FixedPointFormat::for_code(8, max_row_degree(h));
    REQUIRE(max_row_degree(h) == 12);

    FrameRng rng(41, 0, 0);
    for (int f = 0; f < 10; ++f) {
        std::vector<std::int64_t> src(static_cast<std::size_t>(h.k()));
        for (auto& v : src) v = static_cast<std::int64_t>(rng.next() % 17) - 8;
        std::vector<std::int64_t> x = encode(h, st, src);
        std::vector<double> xd(x.begin(), x.end());
        QuantizedVector yq = quantize_frame(xd, fmt, 0, h.k());
        REQUIRE(yq.values == x);
        yq.values[static_cast<std::size_t>(rng.next() % 432)] += 6;
        DecodeResult<std::int64_t> res = decode_fixed(yq, h);
        REQUIRE(res.converged);
        REQUIRE(res.iterations == 1);
        REQUIRE(res.x_hat == x);
    }
}

TEST_CASE("quantized and float decoding agree on grid inputs") {
    BaseMatrix bm = builtin_code("wifi-r23");
    SparseParityMatrix h = expand(bm, Variant::real);
    ParityStructure st = detect_structure(bm);
    FixedPointFormat fmt = FixedPointFormat::for_code(8, max_row_degree(h));
    const int scale = 2;
    const double step = std::ldexp(1.0, -scale);

    DecoderParams params;
    params.max_iters = 6;

    FrameRng rng(42, 0, 0);
    for (int f = 0; f < 10; ++f) {
        std::vector<double> src(static_cast<std::size_t>(h.k()));
        for (auto& v : src)
            v = static_cast<double>(static_cast<std::int64_t>(rng.next() % 17) - 8) * step;
        std::vector<double> x = encode(h, st, src);
        std::vector<double> y = x;
        for (int e = 0; e < 3; ++e)
            y[rng.next() % static_cast<std::uint64_t>(h.n())] += (rng.sign() > 0 ? 2.0 : -3.5);

        QuantizedVector yq = quantize_frame(y, fmt, scale, h.k());
        DecodeResult<std::int64_t> rq = decode_fixed(yq, h, params);
        DecodeResult<double> rf = decode(y, h, params);

        REQUIRE(rq.converged == rf.converged);
        REQUIRE(rq.stalled == rf.stalled);
        REQUIRE(rq.iterations == rf.iterations);
        for (std::size_t i = 0; i < y.size(); ++i)
            REQUIRE(static_cast<double>(rq.x_hat[i]) * step == rf.x_hat[i]);
    }
}

TEST_CASE("undersized formats fail during decoding, not up front") {
    BaseMatrix bm = builtin_code("wifi-r23");
    SparseParityMatrix h = expand(bm, Variant::real);
    ParityStructure st = detect_structure(bm);

    std::vector<std::int64_t> src(static_cast<std::size_t>(h.k()), 100);
    std::vector<std::int64_t> x = encode(h, st, src);

    QuantizedVector yq;
    yq.values = x;
    yq.format = FixedPointFormat::for_code(4, 12);
    yq.scale = 0;
    REQUIRE(yq.format.parity_limit() == 255);
    REQUIRE_THROWS_AS(decode_fixed(yq, h), OverflowError);
}

TEST_CASE("quantize validation") {
    FixedPointFormat fmt = FixedPointFormat::for_code(8, 12);
    REQUIRE_NOTHROW(quantize_frame({}, fmt, 0));
    REQUIRE_THROWS_AS(FixedPointFormat::for_code(1, 12), std::invalid_argument);
}
