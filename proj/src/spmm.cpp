#include "aesspmm/spmm.hpp"

#include <stdexcept>
#include <vector>

#include "parallel.hpp"

namespace aes {

namespace {

void check_shapes(const CsrMatrix& a, const DenseMatrix& b) {
    if (a.n_cols != b.n_rows) throw std::invalid_argument("ShapeMismatch");
}

}  // namespace

DenseMatrix spmm_exact(const CsrMatrix& a, const DenseMatrix& b,
                       unsigned n_threads) {
    check_shapes(a, b);
    DenseMatrix c(a.n_rows, b.n_cols);
    detail::parallel_blocks(a.n_rows, n_threads,
                            [&](std::size_t rb, std::size_t re, unsigned) {
        for (std::size_t i = rb; i < re; ++i) {
            float* out = c.row(i);
            for (std::uint64_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
                float av = a.val[k];
                const float* brow = b.row(a.col_ind[k]);
                for (std::size_t j = 0; j < b.n_cols; ++j) {
                    out[j] += av * brow[j];
                }
            }
        }
    });
    return c;
}

namespace {

DenseMatrix spmm_sampled_impl(const CsrMatrix& a, const DenseMatrix& b,
                              const SamplePlanSet& plans, WorkCounter* counter,
                              unsigned n_threads) {
    check_shapes(a, b);
    if (plans.plans.size() != a.n_rows) {
        throw std::invalid_argument("PlanMatrixMismatch");
    }
    DenseMatrix c(a.n_rows, b.n_cols);
    n_threads = detail::resolve_threads(n_threads);
    std::vector<WorkCounter> work(n_threads);

    detail::parallel_blocks(a.n_rows, n_threads,
                            [&](std::size_t rb, std::size_t re, unsigned tid) {
        // worker-local sampled buffer, the shared-memory analog
        std::vector<float> sh_val(plans.width);
        std::vector<std::uint32_t> sh_col(plans.width);
        WorkCounter& w = work[tid];
        for (std::size_t i = rb; i < re; ++i) {
            const RowSamplePlan& plan = plans.plans[i];
            if (plan.empty()) continue;
            const std::uint64_t base = a.row_ptr[i];
            const std::uint32_t cnt = plan.params.sample_cnt;
            const std::uint32_t chunk = plan.params.chunk_len;
            const std::size_t slots = std::size_t(cnt) * chunk;
            if (slots > sh_val.size()) {  // full plans ignore the width cap
                sh_val.resize(slots);
                sh_col.resize(slots);
            }
            for (std::uint32_t s = 0; s < cnt; ++s) {
                std::uint64_t src = base + plan.starts[s];
                std::size_t slot = s;
                for (std::uint32_t j = 0; j < chunk; ++j) {
                    sh_val[slot] = a.val[src + j];
                    sh_col[slot] = a.col_ind[src + j];
                    slot += cnt;
                }
            }
            float* out = c.row(i);
            for (std::size_t k = 0; k < slots; ++k) {
                const float* brow = b.row(sh_col[k]);
                float v = sh_val[k];
                for (std::size_t j = 0; j < b.n_cols; ++j) {
                    out[j] += v * brow[j];
                }
            }
            w.fma_count += std::uint64_t(slots) * b.n_cols;
            w.loads_a += slots;
            w.loads_b += std::uint64_t(slots) * b.n_cols;
        }
    });

    if (counter != nullptr) {
        *counter = {};
        for (const WorkCounter& w : work) {
            counter->fma_count += w.fma_count;
            counter->loads_a += w.loads_a;
            counter->loads_b += w.loads_b;
        }
    }
    return c;
}

}  // namespace

DenseMatrix spmm_sampled(const CsrMatrix& a, const DenseMatrix& b,
                         const SamplePlanSet& plans, unsigned n_threads) {
    return spmm_sampled_impl(a, b, plans, nullptr, n_threads);
}

DenseMatrix spmm_sampled_instrumented(const CsrMatrix& a, const DenseMatrix& b,
                                      const SamplePlanSet& plans,
                                      WorkCounter& counter,
                                      unsigned n_threads) {
    return spmm_sampled_impl(a, b, plans, &counter, n_threads);
}

WorkCounter exact_work(const CsrMatrix& a, const DenseMatrix& b) {
    WorkCounter w;
    w.fma_count = std::uint64_t(a.nnz()) * b.n_cols;
    w.loads_a = a.nnz();
    w.loads_b = w.fma_count;
    return w;
}

}  // namespace aes
