#pragma once

#include <cstdint>

#include "aesspmm/matrix.hpp"
#include "aesspmm/sampling.hpp"

namespace aes {

/// Exact operation counts for one kernel invocation.
struct WorkCounter {
    std::uint64_t fma_count = 0;  // multiply-accumulates
    std::uint64_t loads_a = 0;    // sparse (val, col) element loads
    std::uint64_t loads_b = 0;    // dense operand element loads
};

/// C = A * B over the full CSR structure, accumulating each output row in
/// ascending column-index order. Deterministic for any thread count.
DenseMatrix spmm_exact(const CsrMatrix& a, const DenseMatrix& b,
                       unsigned n_threads = 0);

/// Plan-driven sampled SpMM: each row's buffer is filled per its plan
/// (slot s + j*sample_cnt <- nonzero at offset starts[s] + j), then
/// accumulated in ascending slot order. Rows with empty plans emit zeros.
DenseMatrix spmm_sampled(const CsrMatrix& a, const DenseMatrix& b,
                         const SamplePlanSet& plans, unsigned n_threads = 0);

DenseMatrix spmm_sampled_instrumented(const CsrMatrix& a, const DenseMatrix& b,
                                      const SamplePlanSet& plans,
                                      WorkCounter& counter,
                                      unsigned n_threads = 0);

/// Work of the exact kernel on this pair, for speedup accounting.
WorkCounter exact_work(const CsrMatrix& a, const DenseMatrix& b);

}  // namespace aes
