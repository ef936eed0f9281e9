#include "aesspmm/quantize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parallel.hpp"

namespace aes {

QuantParams fit_params(const DenseMatrix& x, std::uint32_t bits) {
    if (x.data.empty()) throw std::invalid_argument("EmptyMatrix");
    if (bits < 1 || bits > 16) throw std::invalid_argument("bits must be 1..16");
    float lo = x.data[0], hi = x.data[0];
    for (float v : x.data) {
        if (!std::isfinite(v)) throw std::invalid_argument("NonFinite");
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {lo, hi, bits};
}

QuantizedFeatures quantize(const DenseMatrix& x, const QuantParams& p) {
    if (p.bits < 1 || p.bits > 16 || !(p.x_min <= p.x_max)) {
        throw std::invalid_argument("invalid QuantParams");
    }
    QuantizedFeatures qf;
    qf.n_rows = x.n_rows;
    qf.n_cols = x.n_cols;
    qf.params = p;
    qf.codes.resize(x.data.size());

    const double range = double(p.x_max) - double(p.x_min);
    const std::uint32_t levels = p.levels();
    if (range == 0.0) {
        std::fill(qf.codes.begin(), qf.codes.end(), std::uint16_t{0});
        return qf;
    }
    detail::parallel_blocks(x.data.size(), 0,
                            [&](std::size_t b, std::size_t e, unsigned) {
        for (std::size_t k = b; k < e; ++k) {
            double ratio = (double(x.data[k]) - double(p.x_min)) / range;
            // the 2^-7 code-unit guard keeps dequantized values (which sit
            // a float-rounding below an exact level) on their own code
            double q = std::floor(ratio * double(levels) + 0.0078125);
            q = std::clamp(q, 0.0, double(levels));
            qf.codes[k] = std::uint16_t(q);
        }
    });
    return qf;
}

DenseMatrix dequantize(const QuantizedFeatures& qf) {
    DenseMatrix x(qf.n_rows, qf.n_cols);
    const double step =
        (double(qf.params.x_max) - double(qf.params.x_min)) / qf.params.levels();
    detail::parallel_blocks(qf.codes.size(), 0,
                            [&](std::size_t b, std::size_t e, unsigned) {
        for (std::size_t k = b; k < e; ++k) {
            x.data[k] = float(double(qf.codes[k]) * step + qf.params.x_min);
        }
    });
    return x;
}

}  // namespace aes
