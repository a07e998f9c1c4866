#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "base_matrix.hpp"

namespace rnldpc {

enum class Variant { binary, real };

inline const char* variant_name(Variant v) { return v == Variant::binary ? "binary" : "real"; }

struct CodeParams {
    int n = 0;     // codeword length z * n_b
    int m = 0;     // check count z * m_rows
    int k = 0;     // source length n - m
    double rate = 0.0;
    std::vector<int> col_degrees;
    std::vector<int> row_degrees;
};

// One nonzero of H: the counterpart index (column in row views, row in column
// views) and the entry sign.
struct Entry {
    std::int32_t index;
    std::int8_t sign;
};

struct SparseParityMatrix {
    Variant variant = Variant::binary;
    int z = 0;
    CodeParams params;

    // CSR view over checks and CSC view over symbols; same triples, both
    // sorted by the counterpart index.
    std::vector<std::int32_t> row_ptr;
    std::vector<Entry> row_entries;
    std::vector<std::int32_t> col_ptr;
    std::vector<Entry> col_entries;

    int n() const { return params.n; }
    int m() const { return params.m; }
    int k() const { return params.k; }
    std::size_t nnz() const { return row_entries.size(); }

    std::span<const Entry> row(int i) const {
        return {row_entries.data() + row_ptr[i], static_cast<std::size_t>(row_ptr[i + 1] - row_ptr[i])};
    }
    std::span<const Entry> col(int j) const {
        return {col_entries.data() + col_ptr[j], static_cast<std::size_t>(col_ptr[j + 1] - col_ptr[j])};
    }
};

class StructureError : public std::runtime_error {
public:
    StructureError(const std::string& msg, int block_col)
        : std::runtime_error("block column " + std::to_string(block_col) + ": " + msg),
          column(block_col) {}

    int column;
};

struct HbBlock {
    int row;
    int shift;
};

// Staircase column: zero-shift block at upper_row, and at upper_row + 1 when
// has_lower (absent only for the terminal column of an hb-free staircase).
struct StairColumn {
    int col;
    int upper_row;
    bool has_lower;
};

// Dual-diagonal layout of the parity block columns. Two accepted shapes:
// an h_b column followed by m_rows-1 staircase columns, or a pure staircase
// of m_rows columns whose terminal column has a single block.
struct ParityStructure {
    int z = 0;
    int n_b = 0;
    int m_rows = 0;
    int first_parity_col = 0;
    bool has_hb = false;
    int hb_col = -1;
    std::vector<HbBlock> hb_blocks;
    std::vector<StairColumn> staircase;

    // Signs of the expanded real-variant blocks; binary blocks are all +1.
    // The negated set is the upper staircase diagonal plus, when an h_b
    // column is present, the lower block of the terminal staircase column.
    int upper_sign(Variant v) const { return v == Variant::real ? -1 : +1; }
    int lower_sign(std::size_t stair_index, Variant v) const {
        bool terminal_bold = has_hb && stair_index + 1 == staircase.size();
        return (v == Variant::real && terminal_bold) ? -1 : +1;
    }
};

namespace detail {

inline std::vector<int> column_rows(const BaseMatrix& bm, int c) {
    std::vector<int> rows;
    for (int r = 0; r < bm.m_rows; ++r)
        if (bm.entries[r][c] >= 0) rows.push_back(r);
    return rows;
}

inline bool is_stair_column(const BaseMatrix& bm, int c, int upper_row, bool want_lower) {
    std::vector<int> rows = column_rows(bm, c);
    if (want_lower) {
        if (rows.size() != 2 || rows[0] != upper_row || rows[1] != upper_row + 1) return false;
        return bm.entries[rows[0]][c] == 0 && bm.entries[rows[1]][c] == 0;
    }
    return rows.size() == 1 && rows[0] == upper_row && bm.entries[upper_row][c] == 0;
}

}  // namespace detail

inline ParityStructure detect_structure(const BaseMatrix& bm) {
    ParityStructure st;
    st.z = bm.z;
    st.n_b = bm.n_b;
    st.m_rows = bm.m_rows;
    st.first_parity_col = bm.n_b - bm.m_rows;

    if (bm.m_rows < 2)
        throw StructureError("no dual diagonal: need at least 2 block rows to form a staircase",
                             st.first_parity_col);

    int fp = st.first_parity_col;

    // Pure staircase: every parity column is a stair step; the terminal
    // column holds a single zero-shift block in the last row.
    bool pure = true;
    for (int i = 0; i < bm.m_rows && pure; ++i)
        pure = detail::is_stair_column(bm, fp + i, i, /*want_lower=*/i + 1 < bm.m_rows);
    if (pure) {
        st.has_hb = false;
        for (int i = 0; i < bm.m_rows; ++i)
            st.staircase.push_back({fp + i, i, i + 1 < bm.m_rows});
        return st;
    }

    // h_b shape: first parity column is h_b, the rest is a staircase of
    // paired zero-shift blocks ending in the last row.
    for (int i = 0; i < bm.m_rows - 1; ++i) {
        int c = fp + 1 + i;
        if (!detail::is_stair_column(bm, c, i, /*want_lower=*/true))
            throw StructureError("expected a staircase column with zero-shift blocks in rows " +
                                     std::to_string(i) + " and " + std::to_string(i + 1),
                                 c);
        st.staircase.push_back({c, i, true});
    }
    st.has_hb = true;
    st.hb_col = fp;
    for (int r = 0; r < bm.m_rows; ++r)
        if (bm.entries[r][fp] >= 0) st.hb_blocks.push_back({r, bm.entries[r][fp]});
    if (st.hb_blocks.empty())
        throw StructureError("h_b column has no nonzero blocks", fp);
    return st;
}

inline SparseParityMatrix expand(const BaseMatrix& bm, Variant variant) {
    SparseParityMatrix h;
    h.variant = variant;
    h.z = bm.z;
    h.params.n = bm.z * bm.n_b;
    h.params.m = bm.z * bm.m_rows;
    h.params.k = h.params.n - h.params.m;
    h.params.rate = static_cast<double>(h.params.k) / h.params.n;

    // Block signs: +1 everywhere except the real-variant negated set.
    std::vector<std::int8_t> block_sign(static_cast<std::size_t>(bm.m_rows) * bm.n_b, 1);
    if (variant == Variant::real) {
        ParityStructure st = detect_structure(bm);
        for (std::size_t i = 0; i < st.staircase.size(); ++i) {
            const StairColumn& sc = st.staircase[i];
            block_sign[static_cast<std::size_t>(sc.upper_row) * bm.n_b + sc.col] =
                static_cast<std::int8_t>(st.upper_sign(variant));
            if (sc.has_lower)
                block_sign[static_cast<std::size_t>(sc.upper_row + 1) * bm.n_b + sc.col] =
                    static_cast<std::int8_t>(st.lower_sign(i, variant));
        }
    }

    const int z = bm.z;
    std::vector<std::int32_t> row_deg(h.params.m, 0), col_deg(h.params.n, 0);
    for (int r = 0; r < bm.m_rows; ++r)
        for (int c = 0; c < bm.n_b; ++c)
            if (bm.entries[r][c] >= 0)
                for (int i = 0; i < z; ++i) {
                    ++row_deg[r * z + i];
                    ++col_deg[c * z + (i + bm.entries[r][c]) % z];
                }

    h.row_ptr.assign(h.params.m + 1, 0);
    std::partial_sum(row_deg.begin(), row_deg.end(), h.row_ptr.begin() + 1);
    h.col_ptr.assign(h.params.n + 1, 0);
    std::partial_sum(col_deg.begin(), col_deg.end(), h.col_ptr.begin() + 1);
    h.row_entries.resize(h.row_ptr.back());
    h.col_entries.resize(h.col_ptr.back());

    std::vector<std::int32_t> row_fill(h.row_ptr.begin(), h.row_ptr.end() - 1);
    std::vector<std::int32_t> col_fill(h.col_ptr.begin(), h.col_ptr.end() - 1);
    for (int r = 0; r < bm.m_rows; ++r)
        for (int c = 0; c < bm.n_b; ++c) {
            int s = bm.entries[r][c];
            if (s < 0) continue;
            std::int8_t sign = block_sign[static_cast<std::size_t>(r) * bm.n_b + c];
            for (int i = 0; i < z; ++i) {
                std::int32_t row = r * z + i;
                std::int32_t col = c * z + (i + s) % z;
                h.row_entries[row_fill[row]++] = {col, sign};
                h.col_entries[col_fill[col]++] = {row, sign};
            }
        }

    h.params.row_degrees.assign(row_deg.begin(), row_deg.end());
    h.params.col_degrees.assign(col_deg.begin(), col_deg.end());
    return h;
}

inline int max_row_degree(const SparseParityMatrix& h) {
    int d = 0;
    for (int v : h.params.row_degrees) d = std::max(d, v);
    return d;
}

inline int max_col_degree(const SparseParityMatrix& h) {
    int d = 0;
    for (int v : h.params.col_degrees) d = std::max(d, v);
    return d;
}

}  // namespace rnldpc
