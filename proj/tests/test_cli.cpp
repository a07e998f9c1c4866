#include <catch2/catch_amalgamated.hpp>

#include <rnldpc/simulate.hpp>

#include "support/test_support.hpp"

#include <string>

using namespace rnldpc;
using Catch::Matchers::ContainsSubstring;
using testsup::run_cli;
using testsup::scratch_path;
using testsup::slurp;
using testsup::spit;

TEST_CASE("help exits cleanly") {
    auto res = run_cli("--help");
    REQUIRE(res.status == 0);
    REQUIRE_THAT(res.out, ContainsSubstring("simulate"));
    REQUIRE_THAT(res.out, ContainsSubstring("encode"));
}

TEST_CASE("usage errors exit with 2") {
    REQUIRE(run_cli("simulate --no-such-flag").status == 2);
    REQUIRE(run_cli("simulate").status == 2);
    REQUIRE(run_cli("simulate --alphas 0.02,oops --frames 1").status == 2);
    REQUIRE(run_cli("simulate --alphas 1.5 --frames 1").status == 2);
    REQUIRE(run_cli("").status == 2);

    std::string frame_path = scratch_path("frame_beta.txt");
    spit(frame_path, "1 2 3 3 8 12\n");
    REQUIRE(run_cli("decode --code t1 --beta 7 --in " + frame_path).status == 2);
}

TEST_CASE("runtime errors exit with 1") {
    auto res = run_cli("expand --base /nonexistent/file.txt");
    REQUIRE(res.status == 1);
    REQUIRE_THAT(res.err, ContainsSubstring("cannot open"));
}

TEST_CASE("unknown code names are reported") {
    auto res = run_cli("complexity --code wifi-r99");
    REQUIRE(res.status == 2);
    REQUIRE_THAT(res.err, ContainsSubstring("wifi-r99"));
}

TEST_CASE("complexity report prints") {
    auto res = run_cli("complexity --code wifi-r23");
    REQUIRE(res.status == 0);
    REQUIRE_THAT(res.out, ContainsSubstring("N = 648, M = 216"));
    REQUIRE_THAT(res.out, ContainsSubstring("ADD"));

    auto bin = run_cli("complexity --code wifi-r23 --variant binary");
    REQUIRE(bin.status == 0);
    REQUIRE_THAT(bin.out, ContainsSubstring("XOR"));
}

TEST_CASE("expand emits triples") {
    auto res = run_cli("expand --code t1");
    REQUIRE(res.status == 0);
    REQUIRE(res.out.substr(0, 12) == "0 0 1\n0 1 1\n");
}

TEST_CASE("encode and decode round-trip through files") {
    std::string src_path = scratch_path("src.txt");
    std::string enc_path = scratch_path("enc.txt");
    std::string dec_path = scratch_path("dec.txt");
    spit(src_path, "1 2 3\n");

    auto enc = run_cli("encode --code t1 --in " + src_path + " --out " + enc_path);
    REQUIRE(enc.status == 0);
    REQUIRE(slurp(enc_path) == "1 2 3 3 8 12\n");

    spit(enc_path, "6 2 3 3 8 12\n");
    auto dec = run_cli("decode --code t1 --in " + enc_path + " --out " + dec_path);
    REQUIRE(dec.status == 0);
    REQUIRE(slurp(dec_path) == "1 2 3 3 8 12\n");
    REQUIRE_THAT(dec.err, ContainsSubstring("converged in 1 iterations"));
}

TEST_CASE("base matrix files work like built-ins") {
    std::string base_path = scratch_path("toy.bm");
    spit(base_path, write_base_matrix(builtin_code("t1")));
    std::string src_path = scratch_path("src2.txt");
    spit(src_path, "1 2 3\n");
    auto res = run_cli("encode --base " + base_path + " --in " + src_path);
    REQUIRE(res.status == 0);
    REQUIRE(res.out == "1 2 3 3 8 12\n");
}

TEST_CASE("simulate writes the csv header and rows") {
    std::string out_path = scratch_path("sim.csv");
    auto res = run_cli("simulate --code t1 --alphas 0.1,0.3 --frames 20 --max-iters 20 --seed 7 --out " +
                       out_path);
    REQUIRE(res.status == 0);
    std::string csv = slurp(out_path);
    REQUIRE(csv.substr(0, csv.find('\n')) == std::string(csv_header));
    int lines = 0;
    for (char c : csv) lines += c == '\n';
    REQUIRE(lines == 3);
    REQUIRE_THAT(csv, ContainsSubstring("gdsu,t1,1,0.1,20,"));
    REQUIRE_THAT(res.err, ContainsSubstring("point 0"));
    REQUIRE_THAT(res.err, ContainsSubstring("point 1"));
}

TEST_CASE("simulate output is byte-stable across reruns and worker counts") {
    std::string a = scratch_path("sim_a.csv");
    std::string b = scratch_path("sim_b.csv");
    std::string c = scratch_path("sim_c.csv");
    std::string args = "simulate --code wifi-r34 --alphas 0.02 --frames 12 --max-iters 40 --seed 3";
    REQUIRE(run_cli(args + " --workers 1 --out " + a).status == 0);
    REQUIRE(run_cli(args + " --workers 1 --out " + b).status == 0);
    REQUIRE(run_cli(args + " --workers 4 --out " + c).status == 0);
    REQUIRE(slurp(a) == slurp(b));
    REQUIRE(slurp(a) == slurp(c));
}

TEST_CASE("simulate gdbf defaults to the binary channel") {
    std::string out_path = scratch_path("sim_gdbf.csv");
    auto res = run_cli("simulate --decoder gdbf --code wifi-r34 --alphas 0.001 --frames 10 --out " +
                       out_path);
    REQUIRE(res.status == 0);
    REQUIRE_THAT(slurp(out_path), ContainsSubstring("gdbf,wifi-r34,27,0.001,10,"));
    REQUIRE_THAT(res.err, ContainsSubstring("source=zero"));
}

TEST_CASE("quantized decode through the cli") {
    std::string in_path = scratch_path("qdec_in.txt");
    std::string out_path = scratch_path("qdec_out.txt");
    spit(in_path, "6 2 3 3 8 12\n");
    auto res = run_cli("decode --code t1 --quantize-bits 8 --in " + in_path + " --out " + out_path);
    REQUIRE(res.status == 0);
    REQUIRE(slurp(out_path) == "1 2 3 3 8 12\n");
}
