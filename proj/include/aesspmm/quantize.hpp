#pragma once

#include <cstdint>
#include <vector>

#include "aesspmm/matrix.hpp"

namespace aes {

struct QuantParams {
    float x_min = 0.0f;
    float x_max = 0.0f;
    std::uint32_t bits = 8;  // 1..16

    std::uint32_t levels() const { return (1u << bits) - 1u; }
};

/// b-bit scalar-quantized feature matrix. Codes fit in 16 bits; files
/// store one byte per code for b = 8.
struct QuantizedFeatures {
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::vector<std::uint16_t> codes;  // row-major, length n_rows * n_cols
    QuantParams params;
};

/// Global min/max over all entries. Throws on empty or non-finite input.
QuantParams fit_params(const DenseMatrix& x, std::uint32_t bits = 8);

/// q = floor((x - x_min) / (x_max - x_min) * (2^b - 1)), clamped to
/// [0, 2^b - 1]. Degenerate range (x_max == x_min) maps everything to 0.
QuantizedFeatures quantize(const DenseMatrix& x, const QuantParams& p);

/// x_hat = q * (x_max - x_min) / (2^b - 1) + x_min.
DenseMatrix dequantize(const QuantizedFeatures& qf);

}  // namespace aes
