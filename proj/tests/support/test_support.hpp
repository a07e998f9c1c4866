#pragma once

#include <sys/wait.h>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <rnldpc/channel.hpp>
#include <rnldpc/encoder.hpp>
#include <rnldpc/parity_matrix.hpp>

namespace testsup {

// Dense LU with partial pivoting; independent check against the two-phase
// encoder (solves H_p * p = -H_s * s and verifies the rounded solution with
// exact integer arithmetic).
class DenseLu {
public:
    explicit DenseLu(std::vector<double> a, int n) : n_(n), lu_(std::move(a)), piv_(n) {
        for (int i = 0; i < n_; ++i) piv_[i] = i;
        for (int col = 0; col < n_; ++col) {
            int best = col;
            double best_mag = std::abs(lu_[col * n_ + col]);
            for (int r = col + 1; r < n_; ++r) {
                double mag = std::abs(lu_[r * n_ + col]);
                if (mag > best_mag) {
                    best = r;
                    best_mag = mag;
                }
            }
            if (best_mag == 0.0) throw std::runtime_error("oracle matrix is singular");
            if (best != col) {
                for (int j = 0; j < n_; ++j) std::swap(lu_[col * n_ + j], lu_[best * n_ + j]);
                std::swap(piv_[col], piv_[best]);
            }
            double pivot = lu_[col * n_ + col];
            for (int r = col + 1; r < n_; ++r) {
                double f = lu_[r * n_ + col] / pivot;
                lu_[r * n_ + col] = f;
                for (int j = col + 1; j < n_; ++j) lu_[r * n_ + j] -= f * lu_[col * n_ + j];
            }
        }
    }

    std::vector<double> solve(const std::vector<double>& b) const {
        std::vector<double> x(n_);
        for (int i = 0; i < n_; ++i) x[i] = b[piv_[i]];
        for (int i = 1; i < n_; ++i)
            for (int j = 0; j < i; ++j) x[i] -= lu_[i * n_ + j] * x[j];
        for (int i = n_ - 1; i >= 0; --i) {
            for (int j = i + 1; j < n_; ++j) x[i] -= lu_[i * n_ + j] * x[j];
            x[i] /= lu_[i * n_ + i];
        }
        return x;
    }

private:
    int n_;
    std::vector<double> lu_;
    std::vector<int> piv_;
};

class ParityOracle {
public:
    explicit ParityOracle(const rnldpc::SparseParityMatrix& h)
        : h_(h), lu_(build_dense(h), h.m()) {}

    // Integer parity part solving H_p * p = -H_s * src; verified exactly.
    std::vector<std::int64_t> parity(const std::vector<std::int64_t>& src) const {
        const int m = h_.m();
        const int k = h_.k();
        std::vector<double> rhs(m, 0.0);
        for (int i = 0; i < m; ++i)
            for (const rnldpc::Entry& e : h_.row(i))
                if (e.index < k) rhs[i] -= e.sign * static_cast<double>(src[e.index]);
        std::vector<double> sol = lu_.solve(rhs);

        std::vector<std::int64_t> p(m);
        for (int i = 0; i < m; ++i) {
            p[i] = static_cast<std::int64_t>(std::llround(sol[i]));
            if (std::abs(sol[i] - static_cast<double>(p[i])) > 0.25)
                throw std::runtime_error("oracle solution is not integral");
        }
        for (int i = 0; i < m; ++i) {
            std::int64_t acc = 0;
            for (const rnldpc::Entry& e : h_.row(i)) {
                std::int64_t v = e.index < k ? src[e.index] : p[e.index - k];
                acc += e.sign < 0 ? -v : v;
            }
            if (acc != 0) throw std::runtime_error("oracle verification failed: nonzero syndrome");
        }
        return p;
    }

    std::vector<std::int64_t> codeword(const std::vector<std::int64_t>& src) const {
        std::vector<std::int64_t> x = src;
        std::vector<std::int64_t> p = parity(src);
        x.insert(x.end(), p.begin(), p.end());
        return x;
    }

private:
    static std::vector<double> build_dense(const rnldpc::SparseParityMatrix& h) {
        const int m = h.m();
        const int k = h.k();
        std::vector<double> a(static_cast<std::size_t>(m) * m, 0.0);
        for (int i = 0; i < m; ++i)
            for (const rnldpc::Entry& e : h.row(i))
                if (e.index >= k) a[static_cast<std::size_t>(i) * m + (e.index - k)] = e.sign;
        return a;
    }

    const rnldpc::SparseParityMatrix& h_;
    DenseLu lu_;
};

// Random base matrix with a detectable parity structure. hb-style matrices
// use an even row count so the alternating binary coefficients cancel the
// repeated h_b shift, mirroring the 802.11n layout.
inline rnldpc::BaseMatrix random_structured_base(rnldpc::FrameRng& rng, bool pure_staircase) {
    rnldpc::BaseMatrix bm;
    bm.z = 1 + static_cast<int>(rng.next() % 9);
    int m_rows;
    if (pure_staircase)
        m_rows = 2 + static_cast<int>(rng.next() % 5);
    else
        m_rows = 4 + 2 * static_cast<int>(rng.next() % 3);
    int src_blocks = 2 + static_cast<int>(rng.next() % 5);
    bm.m_rows = m_rows;
    bm.n_b = src_blocks + m_rows;
    bm.entries.assign(m_rows, std::vector<int>(bm.n_b, -1));

    for (int r = 0; r < m_rows; ++r)
        for (int c = 0; c < src_blocks; ++c)
            if (rng.unit() < 0.6) bm.entries[r][c] = static_cast<int>(rng.next() % bm.z);

    int fp = src_blocks;
    if (pure_staircase) {
        for (int i = 0; i < m_rows; ++i) {
            bm.entries[i][fp + i] = 0;
            if (i + 1 < m_rows) bm.entries[i + 1][fp + i] = 0;
        }
        return bm;
    }

    for (int i = 0; i + 1 < m_rows; ++i) {
        bm.entries[i][fp + 1 + i] = 0;
        bm.entries[i + 1][fp + 1 + i] = 0;
    }
    int s = static_cast<int>(rng.next() % bm.z);
    int mid = 1 + static_cast<int>(rng.next() % (m_rows - 2));
    bm.entries[0][fp] = s;
    bm.entries[mid][fp] = static_cast<int>(rng.next() % bm.z);
    bm.entries[m_rows - 1][fp] = s;
    return bm;
}

struct CmdResult {
    int status = -1;
    std::string out;
    std::string err;
};

inline std::string scratch_path(const std::string& name) {
    static const std::filesystem::path dir = [] {
        std::filesystem::path p =
            std::filesystem::temp_directory_path() / ("rnldpc_tests_" + std::to_string(::getpid()));
        std::filesystem::create_directories(p);
        return p;
    }();
    return (dir / name).string();
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

// Runs the CLI binary through the shell with captured stdout/stderr.
inline CmdResult run_cli(const std::string& args) {
    static int counter = 0;
    std::string out_path = scratch_path("out" + std::to_string(counter) + ".txt");
    std::string err_path = scratch_path("err" + std::to_string(counter) + ".txt");
    ++counter;
    std::string cmd =
        std::string(RNLDPC_CLI_PATH) + " " + args + " >" + out_path + " 2>" + err_path;
    int rc = std::system(cmd.c_str());
    CmdResult res;
    res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    res.out = slurp(out_path);
    res.err = slurp(err_path);
    return res;
}

}  // namespace testsup
