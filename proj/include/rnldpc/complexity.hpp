#pragma once

#include <string>

#include "parity_matrix.hpp"

namespace rnldpc {

// Per-iteration operation counts. Closed forms treat the code as regular
// with the maximum degrees; exact counts use the true nonzero total.
// maxfinder_comparisons is the naive pairwise figure, maxfinder_actual the
// linear scan a direct implementation performs.
struct ComplexityReport {
    Variant variant = Variant::binary;
    int n = 0;
    int m = 0;
    int d_v = 0;
    int d_c = 0;
    bool regular = false;

    long long syndrome_ops = 0;  // m * d_c
    const char* syndrome_unit = "XOR";
    long long energy_ops = 0;  // n * d_v, doubled for the real variant
    long long maxfinder_comparisons = 0;  // n * (n - 1)
    long long maxfinder_actual = 0;       // n - 1
    long long update_ops_per_symbol = 1;

    long long exact_syndrome_ops = 0;  // nnz
    long long exact_energy_ops = 0;    // nnz, doubled for the real variant
};

inline ComplexityReport complexity_report(const SparseParityMatrix& h) {
    ComplexityReport r;
    r.variant = h.variant;
    r.n = h.n();
    r.m = h.m();
    r.d_v = max_col_degree(h);
    r.d_c = max_row_degree(h);

    bool reg = true;
    for (int d : h.params.row_degrees) reg = reg && d == r.d_c;
    for (int d : h.params.col_degrees) reg = reg && d == r.d_v;
    r.regular = reg;

    const long long n = r.n, m = r.m;
    const long long nnz = static_cast<long long>(h.nnz());
    const int fold = h.variant == Variant::real ? 2 : 1;

    r.syndrome_ops = m * r.d_c;
    r.syndrome_unit = h.variant == Variant::real ? "ADD" : "XOR";
    r.energy_ops = fold * n * r.d_v;
    r.maxfinder_comparisons = n * (n - 1);
    r.maxfinder_actual = n - 1;
    r.update_ops_per_symbol = 1;
    r.exact_syndrome_ops = nnz;
    r.exact_energy_ops = fold * nnz;
    return r;
}

inline std::string complexity_text(const ComplexityReport& r) {
    std::string s;
    s += "variant: ";
    s += variant_name(r.variant);
    s += "\nN = " + std::to_string(r.n) + ", M = " + std::to_string(r.m) +
         ", d_v = " + std::to_string(r.d_v) + ", d_c = " + std::to_string(r.d_c) +
         (r.regular ? " (regular)" : " (irregular; degrees are maxima)");
    s += "\nsyndrome:   " + std::to_string(r.syndrome_ops) + " " + r.syndrome_unit +
         " ops (M*d_c); exact " + std::to_string(r.exact_syndrome_ops);
    s += "\nenergies:   " + std::to_string(r.energy_ops) + " ADD ops (" +
         (r.variant == Variant::real ? "2*N*d_v" : "N*d_v") + "); exact " +
         std::to_string(r.exact_energy_ops);
    s += "\nmax finder: " + std::to_string(r.maxfinder_comparisons) +
         " comparisons (N*(N-1) pairwise); linear scan " + std::to_string(r.maxfinder_actual);
    s += "\nupdate:     " + std::to_string(r.update_ops_per_symbol) + " ADD op per updated symbol\n";
    return s;
}

}  // namespace rnldpc
