#include "aesspmm/gnn.hpp"

#include <algorithm>
#include <stdexcept>

#include "aesspmm/spmm.hpp"
#include "parallel.hpp"

namespace aes {

DenseMatrix dense_matmul(const DenseMatrix& a, const DenseMatrix& b,
                         unsigned n_threads) {
    if (a.n_cols != b.n_rows) throw std::invalid_argument("ShapeMismatch");
    DenseMatrix c(a.n_rows, b.n_cols);
    detail::parallel_blocks(a.n_rows, n_threads,
                            [&](std::size_t rb, std::size_t re, unsigned) {
        for (std::size_t i = rb; i < re; ++i) {
            const float* arow = a.row(i);
            float* out = c.row(i);
            for (std::size_t k = 0; k < a.n_cols; ++k) {
                float av = arow[k];
                if (av == 0.0f) continue;
                const float* brow = b.row(k);
                for (std::size_t j = 0; j < b.n_cols; ++j) {
                    out[j] += av * brow[j];
                }
            }
        }
    });
    return c;
}

namespace {

DenseMatrix spmm_dispatch(const CsrMatrix& adj, const DenseMatrix& h,
                          const SamplePlanSet* plans, unsigned n_threads) {
    if (plans != nullptr) return spmm_sampled(adj, h, *plans, n_threads);
    return spmm_exact(adj, h, n_threads);
}

void add_bias_inplace(DenseMatrix& m, const std::vector<float>& bias) {
    if (bias.empty()) return;
    if (bias.size() != m.n_cols) throw std::invalid_argument("ShapeMismatch");
    for (std::size_t i = 0; i < m.n_rows; ++i) {
        float* row = m.row(i);
        for (std::size_t j = 0; j < m.n_cols; ++j) row[j] += bias[j];
    }
}

void relu_inplace(DenseMatrix& m) {
    for (float& v : m.data) v = std::max(v, 0.0f);
}

DenseMatrix concat_cols(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix c(a.n_rows, a.n_cols + b.n_cols);
    for (std::size_t i = 0; i < a.n_rows; ++i) {
        float* out = c.row(i);
        std::copy_n(a.row(i), a.n_cols, out);
        std::copy_n(b.row(i), b.n_cols, out + a.n_cols);
    }
    return c;
}

}  // namespace

DenseMatrix gcn_forward(const CsrMatrix& adj, const DenseMatrix& features,
                        const GnnModel& model, const SamplePlanSet* plans,
                        unsigned n_threads) {
    if (model.kind != ModelKind::Gcn) throw std::invalid_argument("not a GCN model");
    DenseMatrix h = features;
    for (std::size_t l = 0; l < model.layers.size(); ++l) {
        DenseMatrix agg = spmm_dispatch(adj, h, plans, n_threads);
        h = dense_matmul(agg, model.layers[l].weight, n_threads);
        add_bias_inplace(h, model.layers[l].bias);
        if (l + 1 < model.layers.size()) relu_inplace(h);
    }
    return h;
}

DenseMatrix sage_forward(const CsrMatrix& adj_mean, const DenseMatrix& features,
                         const GnnModel& model, const SamplePlanSet* plans,
                         unsigned n_threads) {
    if (model.kind != ModelKind::SageMean) {
        throw std::invalid_argument("not a SAGE model");
    }
    DenseMatrix h = features;
    for (std::size_t l = 0; l < model.layers.size(); ++l) {
        DenseMatrix agg = spmm_dispatch(adj_mean, h, plans, n_threads);
        DenseMatrix z = concat_cols(h, agg);
        h = dense_matmul(z, model.layers[l].weight, n_threads);
        add_bias_inplace(h, model.layers[l].bias);
        if (l + 1 < model.layers.size()) relu_inplace(h);
    }
    return h;
}

DenseMatrix gnn_forward(const CsrMatrix& adj, const DenseMatrix& features,
                        const GnnModel& model, const SamplePlanSet* plans,
                        unsigned n_threads) {
    return model.kind == ModelKind::Gcn
               ? gcn_forward(adj, features, model, plans, n_threads)
               : sage_forward(adj, features, model, plans, n_threads);
}

std::vector<std::uint32_t> argmax_rows(const DenseMatrix& logits) {
    std::vector<std::uint32_t> out(logits.n_rows);
    for (std::size_t i = 0; i < logits.n_rows; ++i) {
        const float* row = logits.row(i);
        std::uint32_t best = 0;
        for (std::size_t j = 1; j < logits.n_cols; ++j) {
            if (row[j] > row[best]) best = std::uint32_t(j);
        }
        out[i] = best;
    }
    return out;
}

EvalResult evaluate(const DenseMatrix& logits,
                    const std::vector<std::uint32_t>& labels,
                    const DenseMatrix* reference_logits,
                    const std::vector<std::uint8_t>& mask) {
    if (labels.size() != logits.n_rows) {
        throw std::invalid_argument("labels length != n_nodes");
    }
    for (std::uint32_t l : labels) {
        if (l >= logits.n_cols) throw std::out_of_range("LabelOutOfRange");
    }
    if (!mask.empty() && mask.size() != logits.n_rows) {
        throw std::invalid_argument("mask length != n_nodes");
    }

    EvalResult res;
    res.per_class.assign(logits.n_cols, 0);
    std::vector<std::uint32_t> pred = argmax_rows(logits);
    std::vector<std::uint32_t> ref;
    if (reference_logits != nullptr) {
        if (reference_logits->n_rows != logits.n_rows) {
            throw std::invalid_argument("reference shape mismatch");
        }
        ref = argmax_rows(*reference_logits);
    }

    std::uint64_t n = 0, correct = 0, agree = 0;
    for (std::size_t i = 0; i < logits.n_rows; ++i) {
        if (!mask.empty() && mask[i] == 0) continue;
        ++n;
        res.per_class[pred[i]]++;
        if (pred[i] == labels[i]) ++correct;
        if (!ref.empty() && pred[i] == ref[i]) ++agree;
    }
    res.accuracy = n == 0 ? 0.0 : double(correct) / double(n);
    res.agreement =
        ref.empty() ? 0.0 : (n == 0 ? 0.0 : double(agree) / double(n));
    return res;
}

}  // namespace aes
