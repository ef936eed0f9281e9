#include <cmath>
#include <random>

#include <doctest.h>

#include "aesspmm/quantize.hpp"

using namespace aes;

namespace {

DenseMatrix matrix_of(std::vector<float> vals) {
    DenseMatrix m(1, vals.size());
    m.data = std::move(vals);
    return m;
}

}  // namespace

TEST_CASE("fit_params finds the global extrema") {
    DenseMatrix constant(3, 3, 5.0f);
    QuantParams p = fit_params(constant);
    CHECK(p.x_min == 5.0f);
    CHECK(p.x_max == 5.0f);

    QuantParams q = fit_params(matrix_of({0.25f, 0.0f, 1.0f, 0.5f}));
    CHECK(q.x_min == 0.0f);
    CHECK(q.x_max == 1.0f);
}

TEST_CASE("fit_params matches a linear scan on random data") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<float> dist(-100.0f, 100.0f);
    DenseMatrix m(37, 21);
    float lo = 1e30f, hi = -1e30f;
    for (float& v : m.data) {
        v = dist(rng);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    QuantParams p = fit_params(m);
    CHECK(p.x_min == lo);
    CHECK(p.x_max == hi);
}

TEST_CASE("fit_params rejects empty and non-finite input") {
    CHECK_THROWS(fit_params(DenseMatrix()));
    DenseMatrix bad(1, 2);
    bad.data = {1.0f, std::nanf("")};
    CHECK_THROWS(fit_params(bad));
}

TEST_CASE("quantize evaluates the floor formula") {
    QuantParams p{0.0f, 1.0f, 8};
    QuantizedFeatures qf = quantize(matrix_of({0.5f}), p);
    CHECK(qf.codes[0] == 127);  // floor(0.5 * 255)
}

TEST_CASE("endpoint codes are 0 and 255") {
    QuantParams p{-2.5f, 7.25f, 8};
    QuantizedFeatures qf = quantize(matrix_of({-2.5f, 7.25f}), p);
    CHECK(qf.codes[0] == 0);
    CHECK(qf.codes[1] == 255);
}

TEST_CASE("degenerate range maps everything to code 0 and back to x_min") {
    QuantParams p{3.0f, 3.0f, 8};
    QuantizedFeatures qf = quantize(matrix_of({3.0f, 3.0f}), p);
    CHECK(qf.codes[0] == 0);
    DenseMatrix back = dequantize(qf);
    CHECK(back.data[0] == 3.0f);
}

TEST_CASE("out-of-range inputs clamp") {
    QuantParams p{0.0f, 1.0f, 8};
    QuantizedFeatures qf = quantize(matrix_of({-5.0f, 42.0f}), p);
    CHECK(qf.codes[0] == 0);
    CHECK(qf.codes[1] == 255);
}

TEST_CASE("dequantize evaluates the scale formula") {
    QuantizedFeatures qf;
    qf.n_rows = 1;
    qf.n_cols = 3;
    qf.codes = {0, 127, 255};
    qf.params = {0.0f, 1.0f, 8};
    DenseMatrix x = dequantize(qf);
    CHECK(x.data[0] == 0.0f);
    CHECK(x.data[1] == doctest::Approx(127.0 / 255.0).epsilon(1e-7));
    CHECK(x.data[2] == 1.0f);
}

TEST_CASE("round-trip error stays within one step") {
    std::mt19937_64 rng(23);
    for (auto [lo, hi] : std::vector<std::pair<float, float>>{
             {0.0f, 1.0f}, {-3.0f, 5.0f}, {100.0f, 250.0f}}) {
        std::uniform_real_distribution<float> dist(lo, hi);
        DenseMatrix x(100, 100);
        for (float& v : x.data) v = dist(rng);
        QuantParams p{lo, hi, 8};
        DenseMatrix back = dequantize(quantize(x, p));
        double step = (double(hi) - double(lo)) / 255.0;
        for (std::size_t k = 0; k < x.data.size(); ++k) {
            CHECK(std::abs(double(back.data[k]) - double(x.data[k])) <= step);
        }
    }
}

TEST_CASE("round-trip bound holds for other bit widths") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<float> dist(-1.0f, 1.0f);
    DenseMatrix x(64, 64);
    for (float& v : x.data) v = dist(rng);
    for (std::uint32_t bits : {1u, 4u, 12u, 16u}) {
        QuantParams p{-1.0f, 1.0f, bits};
        DenseMatrix back = dequantize(quantize(x, p));
        double step = 2.0 / ((1u << bits) - 1u);
        for (std::size_t k = 0; k < x.data.size(); ++k) {
            CHECK(std::abs(double(back.data[k]) - double(x.data[k])) <= step);
        }
    }
}

TEST_CASE("quantization is monotone") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<float> dist(-4.0f, 4.0f);
    QuantParams p{-4.0f, 4.0f, 8};
    for (int t = 0; t < 5000; ++t) {
        float a = dist(rng), b = dist(rng);
        if (a > b) std::swap(a, b);
        QuantizedFeatures qf = quantize(matrix_of({a, b}), p);
        CHECK(qf.codes[0] <= qf.codes[1]);
    }
}

TEST_CASE("codebook is a fixed point of the codec") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<float> dist(0.0f, 10.0f);
    DenseMatrix x(50, 50);
    for (float& v : x.data) v = dist(rng);
    QuantParams p = fit_params(x, 8);
    QuantizedFeatures once = quantize(x, p);
    QuantizedFeatures again = quantize(dequantize(once), p);
    CHECK(once.codes == again.codes);
}

TEST_CASE("invalid params are rejected") {
    CHECK_THROWS(quantize(matrix_of({1.0f}), QuantParams{1.0f, 0.0f, 8}));
    CHECK_THROWS(quantize(matrix_of({1.0f}), QuantParams{0.0f, 1.0f, 0}));
    CHECK_THROWS(quantize(matrix_of({1.0f}), QuantParams{0.0f, 1.0f, 17}));
    CHECK_THROWS(fit_params(matrix_of({1.0f}), 17));
}
