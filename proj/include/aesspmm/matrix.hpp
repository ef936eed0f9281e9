#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace aes {

/// Sparse matrix in canonical CSR form: row_ptr offsets, strictly
/// increasing column indices within each row, float32 values.
struct CsrMatrix {
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::vector<std::uint64_t> row_ptr;  // length n_rows + 1
    std::vector<std::uint32_t> col_ind;  // length nnz
    std::vector<float> val;              // length nnz

    CsrMatrix() : row_ptr{0} {}
    CsrMatrix(std::size_t rows, std::size_t cols)
        : n_rows(rows), n_cols(cols), row_ptr(rows + 1, 0) {}

    std::size_t nnz() const { return col_ind.size(); }
    std::size_t row_nnz(std::size_t i) const {
        return static_cast<std::size_t>(row_ptr[i + 1] - row_ptr[i]);
    }
};

/// Row-major dense float32 matrix.
struct DenseMatrix {
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::vector<float> data;

    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, float fill = 0.0f)
        : n_rows(rows), n_cols(cols), data(rows * cols, fill) {}

    float& at(std::size_t i, std::size_t j) { return data[i * n_cols + j]; }
    float at(std::size_t i, std::size_t j) const { return data[i * n_cols + j]; }
    const float* row(std::size_t i) const { return data.data() + i * n_cols; }
    float* row(std::size_t i) { return data.data() + i * n_cols; }
};

struct RowStats {
    std::vector<std::uint64_t> row_nnz;
    std::uint64_t max_row_nnz = 0;
    double avg_degree = 0.0;
};

enum class CsrError {
    Ok,
    NonMonotonicRowPtr,
    ColumnOutOfRange,
    UnsortedRow,
    LengthMismatch,
    NotSquare,
};

/// Outcome of validate_csr: which invariant broke first, and where.
struct ValidationResult {
    CsrError error = CsrError::Ok;
    std::size_t row = 0;

    bool ok() const { return error == CsrError::Ok; }
    std::string message() const;
};

ValidationResult validate_csr(const CsrMatrix& m);

RowStats row_stats(const CsrMatrix& m);

/// Builds a canonical CSR matrix from (possibly unsorted, duplicated)
/// triplets. Duplicate (i, j) entries are summed.
CsrMatrix csr_from_triplets(std::size_t n_rows, std::size_t n_cols,
                            std::vector<std::uint32_t> rows,
                            std::vector<std::uint32_t> cols,
                            std::vector<float> vals);

/// Symmetric normalization D^{-1/2} (A [+ I]) D^{-1/2} with unit edge
/// weights; deg(i) is the post-self-loop row nnz. Throws on non-square.
CsrMatrix gcn_normalize(const CsrMatrix& a, bool add_self_loops);

/// Rescales every nonzero row so its values are 1/row_nnz (mean
/// aggregation weights). Empty rows stay empty. Throws on non-square.
CsrMatrix row_mean_normalize(const CsrMatrix& a);

}  // namespace aes
