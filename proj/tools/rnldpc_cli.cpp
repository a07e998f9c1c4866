#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <rnldpc/rnldpc.hpp>

namespace {

using namespace rnldpc;

BaseMatrix load_matrix(const std::string& code, const std::string& base_path) {
    if (!base_path.empty()) {
        std::ifstream in(base_path);
        if (!in) throw std::runtime_error("cannot open base matrix file \"" + base_path + "\"");
        return parse_base_matrix(in);
    }
    return builtin_code(code);
}

std::vector<double> parse_alpha_list(const std::string& text) {
    std::vector<double> alphas;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string tok = text.substr(start, comma - start);
        if (tok.empty()) throw std::invalid_argument("empty entry in --alphas list");
        alphas.push_back(parse_double(tok, "alpha"));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (alphas.empty()) throw std::invalid_argument("--alphas list is empty");
    for (double a : alphas)
        if (a < 0.0 || a > 1.0) throw std::invalid_argument("alpha values must lie in [0,1]");
    return alphas;
}

Variant parse_variant(const std::string& text) {
    if (text == "binary") return Variant::binary;
    if (text == "real") return Variant::real;
    throw std::invalid_argument("unknown variant \"" + text + "\" (expected binary or real)");
}

// Output stream selector: stdout by default, truncating file via --out.
class OutFile {
public:
    explicit OutFile(const std::string& path) {
        if (path.empty()) return;
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_) throw std::runtime_error("cannot open output file \"" + path + "\"");
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

class InFile {
public:
    explicit InFile(const std::string& path) {
        if (path.empty() || path == "-") return;
        file_ = std::make_unique<std::ifstream>(path);
        if (!*file_) throw std::runtime_error("cannot open input file \"" + path + "\"");
    }
    std::istream& stream() { return file_ ? *file_ : std::cin; }

private:
    std::unique_ptr<std::ifstream> file_;
};

struct SimulateOpts {
    std::string code = "wifi-r23";
    std::string base_path;
    std::string decoder = "gdsu";
    std::string alphas;
    long long frames = 1000;
    int max_iters = 300;
    double beta = 1.0;
    double t = 1.0;
    std::uint64_t seed = 1;
    int workers = 0;
    int quantize_bits = 0;
    int quantize_scale = 0;
    std::string amp_model = "uniform:0.5:8";
    std::string source;
    std::string out_path;
};

int run_simulate(const SimulateOpts& o) {
    SimConfig cfg;
    cfg.code_name = o.base_path.empty() ? o.code : o.base_path;
    cfg.base = load_matrix(o.code, o.base_path);
    cfg.decoder = parse_decoder(o.decoder);
    cfg.channel.amplitude = AmplitudeModel::parse(o.amp_model);
    cfg.channel.domain = cfg.decoder == DecoderKind::gdbf ? Domain::binary : Domain::real;
    cfg.frames = o.frames;
    cfg.max_iters = o.max_iters;
    cfg.beta = o.beta;
    cfg.t = o.t;
    cfg.seed = o.seed;
    cfg.workers = o.workers;
    cfg.quantize_bits = o.quantize_bits;
    cfg.quantize_scale = o.quantize_scale;
    if (o.source.empty())
        cfg.source = SourceMode::parse(cfg.decoder == DecoderKind::gdbf ? "zero" : "random:-1:1");
    else
        cfg.source = SourceMode::parse(o.source);

    std::vector<double> alphas = parse_alpha_list(o.alphas);

    OutFile out(o.out_path);
    out.stream() << csv_header << '\n' << std::flush;
    sweep(cfg, alphas, [&](const SimConfig& point_cfg, const SimStats& stats) {
        static auto last = std::chrono::steady_clock::now();
        auto now = std::chrono::steady_clock::now();
        double secs = std::chrono::duration<double>(now - last).count();
        last = now;
        out.stream() << csv_row(point_cfg, stats) << '\n' << std::flush;
        std::cerr << "point " << point_cfg.point_index << ": alpha=" << fmt_plain(point_cfg.channel.alpha)
                  << " frames=" << stats.frames_run << " fer=" << fmt_plain(stats.fer())
                  << " avg_iters=" << fmt_plain(stats.avg_iterations()) << " source="
                  << point_cfg.source.str() << " (" << fmt_plain(secs) << "s)\n";
    });
    return 0;
}

struct CodecOpts {
    std::string code = "wifi-r23";
    std::string base_path;
    std::string in_path;
    std::string out_path;
    int max_iters = 300;
    double beta = 1.0;
    double t = 1.0;
    int quantize_bits = 0;
    int quantize_scale = 0;
};

int run_encode(const CodecOpts& o) {
    BaseMatrix bm = load_matrix(o.code, o.base_path);
    ParityStructure st = detect_structure(bm);
    SparseParityMatrix h = expand(bm, Variant::real);
    InFile in(o.in_path);
    OutFile out(o.out_path);
    for (const auto& frame : read_frames(in.stream(), h.k())) {
        std::vector<double> x = encode(h, st, frame);
        write_frame(out.stream(), x);
    }
    return 0;
}

int run_decode(const CodecOpts& o) {
    BaseMatrix bm = load_matrix(o.code, o.base_path);
    SparseParityMatrix h = expand(bm, Variant::real);
    DecoderParams params;
    params.beta = {o.beta};
    params.t = {o.t};
    params.max_iters = o.max_iters;

    InFile in(o.in_path);
    OutFile out(o.out_path);
    int index = 0;
    for (const auto& frame : read_frames(in.stream(), h.n())) {
        if (o.quantize_bits > 0) {
            FixedPointFormat fmt = FixedPointFormat::for_code(o.quantize_bits, max_row_degree(h));
            QuantizedVector yq = quantize_frame(frame, fmt, o.quantize_scale, h.k());
            DecodeResult<std::int64_t> res = decode_fixed(yq, h, params);
            double factor = std::ldexp(1.0, -o.quantize_scale);
            std::vector<double> x(res.x_hat.size());
            for (std::size_t i = 0; i < x.size(); ++i) x[i] = res.x_hat[i] * factor;
            write_frame(out.stream(), x);
            std::cerr << "frame " << index << ": "
                      << (res.converged ? "converged in " + std::to_string(res.iterations) + " iterations"
                                        : "not converged after " + std::to_string(res.iterations) +
                                              " iterations" + (res.stalled ? " (stalled)" : ""))
                      << '\n';
        } else {
            DecodeResult<double> res = decode(frame, h, params);
            write_frame(out.stream(), res.x_hat);
            std::cerr << "frame " << index << ": "
                      << (res.converged ? "converged in " + std::to_string(res.iterations) + " iterations"
                                        : "not converged after " + std::to_string(res.iterations) +
                                              " iterations" + (res.stalled ? " (stalled)" : ""))
                      << '\n';
        }
        ++index;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"real-number QC-LDPC encoder, gradient-descent decoders and FER test bench"};
    app.require_subcommand(1);

    SimulateOpts sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo FER/SER sweep, CSV output");
    auto* sim_code = sim_cmd->add_option("--code", sim.code, "built-in code name")
                         ->default_str("wifi-r23");
    sim_cmd->add_option("--base", sim.base_path, "base matrix file (instead of --code)")
        ->excludes(sim_code);
    sim_cmd->add_option("--decoder", sim.decoder, "gdsu (real) or gdbf (binary)")
        ->default_str("gdsu");
    sim_cmd->add_option("--alphas", sim.alphas, "comma-separated symbol error probabilities")
        ->required();
    sim_cmd->add_option("--frames", sim.frames, "frames per alpha point")->default_str("1000");
    sim_cmd->add_option("--max-iters", sim.max_iters, "decoder iteration cap")->default_str("300");
    sim_cmd->add_option("--beta", sim.beta, "consensus weight in [0,1]")->default_str("1");
    sim_cmd->add_option("--t", sim.t, "correction step factor")->default_str("1");
    sim_cmd->add_option("--seed", sim.seed, "rng seed")->default_str("1");
    sim_cmd->add_option("--workers", sim.workers, "worker threads (0 = hardware)")
        ->default_str("0");
    sim_cmd->add_option("--quantize-bits", sim.quantize_bits,
                        "data precision bits p (0 = floating point)")
        ->default_str("0");
    sim_cmd->add_option("--quantize-scale", sim.quantize_scale, "power-of-two scale exponent")
        ->default_str("0");
    sim_cmd->add_option("--amp-model", sim.amp_model,
                        "error amplitudes: constant:A | uniform:LO:HI | gaussian:SIGMA")
        ->default_str("uniform:0.5:8");
    sim_cmd->add_option("--source", sim.source,
                        "source symbols: zero | random:LO:HI (default: random:-1:1 for gdsu, "
                        "zero for gdbf)");
    sim_cmd->add_option("--out", sim.out_path, "CSV output file (default: stdout)");

    CodecOpts enc;
    auto* enc_cmd = app.add_subcommand("encode", "encode source frames to codewords");
    auto* enc_code = enc_cmd->add_option("--code", enc.code, "built-in code name")
                         ->default_str("wifi-r23");
    enc_cmd->add_option("--base", enc.base_path, "base matrix file")->excludes(enc_code);
    enc_cmd->add_option("--in", enc.in_path, "input frames, one per line (default: stdin)");
    enc_cmd->add_option("--out", enc.out_path, "output file (default: stdout)");

    CodecOpts dec;
    auto* dec_cmd = app.add_subcommand("decode", "decode received frames");
    auto* dec_code = dec_cmd->add_option("--code", dec.code, "built-in code name")
                         ->default_str("wifi-r23");
    dec_cmd->add_option("--base", dec.base_path, "base matrix file")->excludes(dec_code);
    dec_cmd->add_option("--in", dec.in_path, "received frames, one per line (default: stdin)");
    dec_cmd->add_option("--out", dec.out_path, "output file (default: stdout)");
    dec_cmd->add_option("--max-iters", dec.max_iters, "decoder iteration cap")->default_str("300");
    dec_cmd->add_option("--beta", dec.beta, "consensus weight in [0,1]")->default_str("1");
    dec_cmd->add_option("--t", dec.t, "correction step factor")->default_str("1");
    dec_cmd->add_option("--quantize-bits", dec.quantize_bits,
                        "decode on the p-bit fixed-point grid (0 = floating point)")
        ->default_str("0");
    dec_cmd->add_option("--quantize-scale", dec.quantize_scale, "power-of-two scale exponent")
        ->default_str("0");

    std::string exp_code, exp_base, exp_variant = "real", exp_out;
    auto* exp_cmd = app.add_subcommand("expand", "write the expanded matrix as row/col/sign triples");
    auto* exp_code_opt = exp_cmd->add_option("--code", exp_code, "built-in code name");
    exp_cmd->add_option("--base", exp_base, "base matrix file")->excludes(exp_code_opt);
    exp_cmd->add_option("--variant", exp_variant, "binary or real")->default_str("real");
    exp_cmd->add_option("--out", exp_out, "output file (default: stdout)");

    std::string cx_code = "wifi-r23", cx_base, cx_variant = "real";
    auto* cx_cmd = app.add_subcommand("complexity", "per-iteration operation count report");
    auto* cx_code_opt = cx_cmd->add_option("--code", cx_code, "built-in code name")
                            ->default_str("wifi-r23");
    cx_cmd->add_option("--base", cx_base, "base matrix file")->excludes(cx_code_opt);
    cx_cmd->add_option("--variant", cx_variant, "binary or real")->default_str("real");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sim_cmd->parsed()) return run_simulate(sim);
        if (enc_cmd->parsed()) return run_encode(enc);
        if (dec_cmd->parsed()) return run_decode(dec);
        if (exp_cmd->parsed()) {
            if (exp_code.empty() && exp_base.empty())
                throw std::invalid_argument("expand needs --code or --base");
            BaseMatrix bm = load_matrix(exp_code, exp_base);
            SparseParityMatrix h = expand(bm, parse_variant(exp_variant));
            OutFile out(exp_out);
            write_matrix_triples(out.stream(), h);
            return 0;
        }
        if (cx_cmd->parsed()) {
            BaseMatrix bm = load_matrix(cx_code, cx_base);
            SparseParityMatrix h = expand(bm, parse_variant(cx_variant));
            std::cout << complexity_text(complexity_report(h));
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
