#pragma once

// Deterministic desk-scale citation-network fixture: typical node and
// edge counts, class-structured features, seeded random weights. Labels
// are the exact pipeline's argmax, so agreement tests are self-contained.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "aesspmm/gnn.hpp"
#include "aesspmm/matrix.hpp"

namespace aes::fixtures {

struct CitationFixture {
    CsrMatrix graph;        // raw directed adjacency, no self-loops
    DenseMatrix features;   // n x feature_dim, values in [0, 1]
    std::size_t n_classes = 7;
    std::vector<std::uint32_t> latent;  // class used to structure the data
};

inline CitationFixture make_citation_fixture(std::size_t n = 2708,
                                             std::size_t feature_dim = 1433,
                                             std::size_t n_classes = 7,
                                             std::uint64_t seed = 42) {
    CitationFixture fx;
    fx.n_classes = n_classes;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    fx.latent.resize(n);
    for (auto& c : fx.latent) c = std::uint32_t(rng() % n_classes);

    // power-law out-degrees, homophilous edges (mostly within class)
    std::vector<std::uint32_t> rows, cols;
    std::vector<std::vector<std::uint32_t>> by_class(n_classes);
    for (std::size_t i = 0; i < n; ++i) by_class[fx.latent[i]].push_back(i);
    for (std::size_t i = 0; i < n; ++i) {
        double u = unit(rng);
        std::uint32_t degree =
            std::uint32_t(std::clamp(std::pow(1.0 - u, -1.0 / 1.5), 1.0, 160.0));
        for (std::uint32_t e = 0; e < degree; ++e) {
            std::uint32_t target;
            if (unit(rng) < 0.85) {
                const auto& pool = by_class[fx.latent[i]];
                target = pool[rng() % pool.size()];
            } else {
                target = std::uint32_t(rng() % n);
            }
            if (target == i) continue;
            rows.push_back(std::uint32_t(i));
            cols.push_back(target);
        }
    }
    fx.graph = csr_from_triplets(n, n, rows, cols,
                                 std::vector<float>(rows.size(), 1.0f));

    // sparse bag-of-words-like features with a per-class block raised
    fx.features = DenseMatrix(n, feature_dim);
    std::size_t block = feature_dim / n_classes;
    for (std::size_t i = 0; i < n; ++i) {
        float* row = fx.features.row(i);
        for (std::size_t f = 0; f < feature_dim; ++f) {
            if (unit(rng) < 0.05) row[f] = float(unit(rng)) * 0.3f;
        }
        std::size_t lo = fx.latent[i] * block;
        for (std::size_t f = lo; f < lo + block; ++f) {
            if (unit(rng) < 0.35) row[f] = 0.4f + 0.6f * float(unit(rng));
        }
    }
    return fx;
}

inline GnnModel make_fixture_model(ModelKind kind, std::size_t in_dim,
                                   std::size_t hidden, std::size_t n_classes,
                                   std::uint64_t seed = 7) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<float> dist(-0.5f, 0.5f);
    auto make_weight = [&](std::size_t r, std::size_t c) {
        DenseMatrix w(r, c);
        for (float& v : w.data) v = dist(rng);
        return w;
    };
    std::size_t mult = kind == ModelKind::SageMean ? 2 : 1;
    GnnModel model;
    model.kind = kind;
    model.layers.push_back({make_weight(in_dim * mult, hidden),
                            std::vector<float>(hidden, 0.01f)});
    model.layers.push_back({make_weight(hidden * mult, n_classes),
                            std::vector<float>(n_classes, 0.0f)});
    return model;
}

}  // namespace aes::fixtures
