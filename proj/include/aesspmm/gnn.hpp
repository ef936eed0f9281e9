#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "aesspmm/matrix.hpp"
#include "aesspmm/sampling.hpp"

namespace aes {

enum class ModelKind { Gcn, SageMean };

struct GnnLayer {
    DenseMatrix weight;       // in_dim x out_dim
    std::vector<float> bias;  // out_dim, may be empty
};

/// Feed-forward GNN: ReLU between layers, none after the last. For
/// SageMean the layer input is concat(H, aggregate(H)), so each weight's
/// in_dim is twice the incoming feature width.
struct GnnModel {
    ModelKind kind = ModelKind::Gcn;
    std::vector<GnnLayer> layers;
};

struct EvalResult {
    double accuracy = 0.0;
    double agreement = 0.0;
    std::vector<std::uint64_t> per_class;  // predicted-class histogram
};

/// H <- relu( spmm(adj, H) * W + b ) per layer; sampled aggregation when
/// plans are given. Returns final logits (n_nodes x n_classes).
DenseMatrix gcn_forward(const CsrMatrix& adj, const DenseMatrix& features,
                        const GnnModel& model,
                        const SamplePlanSet* plans = nullptr,
                        unsigned n_threads = 0);

/// H <- relu( concat(H, spmm(adj_mean, H)) * W + b ) per layer.
DenseMatrix sage_forward(const CsrMatrix& adj_mean, const DenseMatrix& features,
                         const GnnModel& model,
                         const SamplePlanSet* plans = nullptr,
                         unsigned n_threads = 0);

/// Dispatches on model.kind.
DenseMatrix gnn_forward(const CsrMatrix& adj, const DenseMatrix& features,
                        const GnnModel& model,
                        const SamplePlanSet* plans = nullptr,
                        unsigned n_threads = 0);

/// Row-wise argmax, ties broken toward the lowest class index.
std::vector<std::uint32_t> argmax_rows(const DenseMatrix& logits);

/// Accuracy vs labels over `mask` (all nodes when empty) and argmax
/// agreement vs reference logits when given.
EvalResult evaluate(const DenseMatrix& logits,
                    const std::vector<std::uint32_t>& labels,
                    const DenseMatrix* reference_logits = nullptr,
                    const std::vector<std::uint8_t>& mask = {});

/// C = A * B for row-major dense operands, parallel over rows.
DenseMatrix dense_matmul(const DenseMatrix& a, const DenseMatrix& b,
                         unsigned n_threads = 0);

}  // namespace aes
