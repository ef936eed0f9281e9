#include "aesspmm/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace aes {

std::string ValidationResult::message() const {
    switch (error) {
        case CsrError::Ok:
            return "ok";
        case CsrError::NonMonotonicRowPtr:
            return "NonMonotonicRowPtr at row " + std::to_string(row);
        case CsrError::ColumnOutOfRange:
            return "ColumnOutOfRange at row " + std::to_string(row);
        case CsrError::UnsortedRow:
            return "UnsortedRow at row " + std::to_string(row);
        case CsrError::LengthMismatch:
            return "LengthMismatch";
        case CsrError::NotSquare:
            return "NotSquare";
    }
    return "unknown";
}

ValidationResult validate_csr(const CsrMatrix& m) {
    if (m.row_ptr.size() != m.n_rows + 1 || m.row_ptr.empty() ||
        m.row_ptr.front() != 0 || m.col_ind.size() != m.val.size()) {
        return {CsrError::LengthMismatch, 0};
    }
    for (std::size_t i = 0; i < m.n_rows; ++i) {
        if (m.row_ptr[i + 1] < m.row_ptr[i]) {
            return {CsrError::NonMonotonicRowPtr, i + 1};
        }
    }
    if (m.row_ptr.back() != m.col_ind.size()) {
        return {CsrError::LengthMismatch, 0};
    }
    for (std::size_t i = 0; i < m.n_rows; ++i) {
        for (std::uint64_t k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k) {
            if (m.col_ind[k] >= m.n_cols) {
                return {CsrError::ColumnOutOfRange, i};
            }
            if (k > m.row_ptr[i] && m.col_ind[k] <= m.col_ind[k - 1]) {
                return {CsrError::UnsortedRow, i};
            }
        }
    }
    return {};
}

RowStats row_stats(const CsrMatrix& m) {
    RowStats s;
    s.row_nnz.resize(m.n_rows);
    for (std::size_t i = 0; i < m.n_rows; ++i) {
        s.row_nnz[i] = m.row_ptr[i + 1] - m.row_ptr[i];
        s.max_row_nnz = std::max(s.max_row_nnz, s.row_nnz[i]);
    }
    s.avg_degree = m.n_rows == 0 ? 0.0 : double(m.nnz()) / double(m.n_rows);
    return s;
}

CsrMatrix csr_from_triplets(std::size_t n_rows, std::size_t n_cols,
                            std::vector<std::uint32_t> rows,
                            std::vector<std::uint32_t> cols,
                            std::vector<float> vals) {
    if (rows.size() != cols.size() || rows.size() != vals.size()) {
        throw std::invalid_argument("triplet arrays differ in length");
    }
    std::vector<std::size_t> order(rows.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (rows[a] != rows[b]) return rows[a] < rows[b];
        return cols[a] < cols[b];
    });

    CsrMatrix m(n_rows, n_cols);
    m.col_ind.reserve(rows.size());
    m.val.reserve(rows.size());
    bool have_prev = false;
    std::uint32_t prev_row = 0, prev_col = 0;
    for (std::size_t k : order) {
        if (rows[k] >= n_rows || cols[k] >= n_cols) {
            throw std::out_of_range("triplet index outside matrix shape");
        }
        // duplicates are adjacent after the sort; sum them
        if (have_prev && rows[k] == prev_row && cols[k] == prev_col) {
            m.val.back() += vals[k];
            continue;
        }
        m.col_ind.push_back(cols[k]);
        m.val.push_back(vals[k]);
        m.row_ptr[rows[k] + 1]++;
        prev_row = rows[k];
        prev_col = cols[k];
        have_prev = true;
    }
    for (std::size_t i = 0; i < n_rows; ++i) m.row_ptr[i + 1] += m.row_ptr[i];
    return m;
}

namespace {

// Structure of a [+ I] with sorted columns; values left for the caller.
CsrMatrix with_optional_self_loops(const CsrMatrix& a, bool add_self_loops) {
    CsrMatrix out(a.n_rows, a.n_cols);
    out.col_ind.reserve(a.nnz() + (add_self_loops ? a.n_rows : 0));
    for (std::size_t i = 0; i < a.n_rows; ++i) {
        bool has_diag = false;
        for (std::uint64_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            has_diag |= (a.col_ind[k] == i);
        }
        bool insert_diag = add_self_loops && !has_diag;
        std::uint64_t k = a.row_ptr[i];
        while (k < a.row_ptr[i + 1] && a.col_ind[k] < i) {
            out.col_ind.push_back(a.col_ind[k++]);
        }
        if (insert_diag) out.col_ind.push_back(std::uint32_t(i));
        while (k < a.row_ptr[i + 1]) out.col_ind.push_back(a.col_ind[k++]);
        out.row_ptr[i + 1] = out.col_ind.size();
    }
    out.val.resize(out.col_ind.size());
    return out;
}

}  // namespace

CsrMatrix gcn_normalize(const CsrMatrix& a, bool add_self_loops) {
    if (a.n_rows != a.n_cols) throw std::invalid_argument("NotSquare");
    CsrMatrix out = with_optional_self_loops(a, add_self_loops);
    std::vector<float> inv_sqrt_deg(out.n_rows, 0.0f);
    for (std::size_t i = 0; i < out.n_rows; ++i) {
        std::size_t deg = out.row_nnz(i);
        if (deg > 0) inv_sqrt_deg[i] = 1.0f / std::sqrt(float(deg));
    }
    for (std::size_t i = 0; i < out.n_rows; ++i) {
        for (std::uint64_t k = out.row_ptr[i]; k < out.row_ptr[i + 1]; ++k) {
            out.val[k] = inv_sqrt_deg[i] * inv_sqrt_deg[out.col_ind[k]];
        }
    }
    return out;
}

CsrMatrix row_mean_normalize(const CsrMatrix& a) {
    if (a.n_rows != a.n_cols) throw std::invalid_argument("NotSquare");
    CsrMatrix out = a;
    for (std::size_t i = 0; i < out.n_rows; ++i) {
        std::size_t nnz = out.row_nnz(i);
        if (nnz == 0) continue;
        float w = 1.0f / float(nnz);
        for (std::uint64_t k = out.row_ptr[i]; k < out.row_ptr[i + 1]; ++k) {
            out.val[k] = w;
        }
    }
    return out;
}

}  // namespace aes
