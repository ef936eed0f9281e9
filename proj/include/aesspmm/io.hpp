#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "aesspmm/gnn.hpp"
#include "aesspmm/matrix.hpp"
#include "aesspmm/quantize.hpp"

namespace aes {

enum class GraphFormat { EdgeListText, CsrBinary };

/// Loads a graph. Edge-list lines are "u v" or "u v w", whitespace
/// separated, '#' comments ignored; the result is canonical CSR with
/// duplicate edges summed. `declared_nodes` (when nonzero) fixes the
/// node count and makes larger indices an error.
CsrMatrix load_graph(const std::string& path, GraphFormat format,
                     std::size_t declared_nodes = 0);

/// CSRB: "CSRB", version u8, n_rows u64, n_cols u64, nnz u64, then
/// row_ptr (u64), col_ind (u32), val (f32), all little-endian.
void save_csr_binary(const CsrMatrix& m, const std::string& path);
CsrMatrix load_csr_binary(const std::string& path);

/// FMAT: "FMAT", version u8, dtype u8 (0 = f32, 1 = u8 quantized),
/// n_rows u64, n_cols u64, for dtype 1 two f32 (x_min, x_max), then the
/// row-major payload.
void save_fmat(const DenseMatrix& m, const std::string& path);
void save_fmat(const QuantizedFeatures& qf, const std::string& path);

using Features = std::variant<DenseMatrix, QuantizedFeatures>;

/// Loads either FMAT dtype; `load_ms`, when given, receives the wall
/// time of the read.
Features load_features(const std::string& path, double* load_ms = nullptr);

/// Plain-text model manifest:
///   kind gcn|sage_mean
///   layer WEIGHT_FMAT [BIAS_FMAT]
/// Bias files are 1 x out_dim FMAT dtype 0. Paths are relative to the
/// manifest's directory.
GnnModel load_model_manifest(const std::string& path);

void save_labels(const std::vector<std::uint32_t>& labels,
                 const std::string& path);
std::vector<std::uint32_t> load_labels(const std::string& path);

}  // namespace aes
