#include <algorithm>
#include <random>
#include <set>

#include <doctest.h>

#include "aesspmm/matrix.hpp"
#include "aesspmm/sampling.hpp"

using namespace aes;

namespace {

CsrMatrix graph_with_degrees(const std::vector<std::uint32_t>& degrees) {
    std::size_t n = std::max<std::size_t>(
        degrees.size(),
        degrees.empty() ? 1
                        : *std::max_element(degrees.begin(), degrees.end()));
    std::vector<std::uint32_t> rows, cols;
    std::vector<float> vals;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        for (std::uint32_t j = 0; j < degrees[i]; ++j) {
            rows.push_back(std::uint32_t(i));
            cols.push_back(j);
            vals.push_back(1.0f);
        }
    }
    return csr_from_triplets(std::max(n, degrees.size()), n, rows, cols, vals);
}

// offsets a plan touches, duplicates collapsed
std::set<std::uint32_t> coverage(const RowSamplePlan& p) {
    std::set<std::uint32_t> s;
    for (std::uint32_t start : p.starts) {
        for (std::uint32_t j = 0; j < p.params.chunk_len; ++j) {
            s.insert(start + j);
        }
    }
    return s;
}

}  // namespace

TEST_CASE("select_strategy follows the branch table") {
    // row fits: take it whole
    CHECK(select_strategy(20, 32).chunk_len == 20);
    CHECK(select_strategy(20, 32).sample_cnt == 1);
    // R = 3.125 -> (W/8, 8)
    CHECK(select_strategy(100, 32).chunk_len == 4);
    CHECK(select_strategy(100, 32).sample_cnt == 8);
    // R = 1.875 -> (W/4, 4)
    CHECK(select_strategy(60, 32).chunk_len == 8);
    CHECK(select_strategy(60, 32).sample_cnt == 4);
    // R = 62.5 -> (W/32, 32), then both clamps fire
    CHECK(select_strategy(1000, 16).chunk_len == 1);
    CHECK(select_strategy(1000, 16).sample_cnt == 16);
    // empty row
    CHECK(select_strategy(0, 64).chunk_len == 0);
    CHECK(select_strategy(0, 64).sample_cnt == 0);
}

TEST_CASE("select_strategy boundary ratios stay in the upper branch") {
    CHECK(select_strategy(32, 32).sample_cnt == 1);        // R == 1
    CHECK(select_strategy(64, 32).sample_cnt == 4);        // R == 2
    CHECK(select_strategy(36 * 32, 32).sample_cnt == 8);   // R == 36
    CHECK(select_strategy(54 * 32, 32).sample_cnt == 16);  // R == 54
    CHECK(select_strategy(54 * 32 + 1, 32).sample_cnt == 32);
}

TEST_CASE("select_strategy rejects zero width") {
    CHECK_THROWS(select_strategy(10, 0));
    CHECK_THROWS(build_plan(0, 10, 0, Strategy::Adaptive));
    CHECK_THROWS(build_plan_set(CsrMatrix(2, 2), 0, Strategy::Full));
}

TEST_CASE("strategy params invariants hold across the sweep grid") {
    for (std::uint32_t w : {16u, 32u, 64u, 128u, 256u, 512u, 1024u}) {
        for (std::uint64_t nnz = 0; nnz <= 65536; nnz += (nnz < 256 ? 1 : 97)) {
            StrategyParams p = select_strategy(nnz, w);
            if (nnz == 0) {
                CHECK(p.sample_cnt == 0);
                continue;
            }
            CHECK(p.chunk_len >= 1);
            CHECK(p.sample_cnt >= 1);
            CHECK(p.sample_cnt <= w);
            CHECK(std::uint64_t(p.chunk_len) * p.sample_cnt <=
                  std::max<std::uint64_t>(w, nnz <= w ? nnz : w));
            if (nnz <= w) {
                CHECK(p.chunk_len == nnz);
                CHECK(p.sample_cnt == 1);
            } else {
                CHECK(std::uint64_t(p.chunk_len) * p.sample_cnt <= w);
            }
        }
    }
}

TEST_CASE("hash_start evaluates the modular form") {
    CHECK(hash_start(0, 10, 1) == 0);
    CHECK(hash_start(1, 10, 1) == 9);   // 1429 mod 10
    CHECK(hash_start(3, 100, 4) == 19); // 4287 mod 97
}

TEST_CASE("hash_start stays in range over random draws") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20000; ++t) {
        std::uint64_t nnz = 1 + rng() % 100000;
        std::uint32_t n = 1 + std::uint32_t(rng() % std::min<std::uint64_t>(nnz, 64));
        std::uint32_t s = std::uint32_t(rng() % 33);
        std::uint32_t got = hash_start(s, nnz, n);
        CHECK(got <= nnz - n);
        CHECK(got == (std::uint64_t(s) * 1429) % (nnz - n + 1));
    }
}

TEST_CASE("adaptive plan takes short rows whole") {
    RowSamplePlan p = build_plan(7, 3, 4, Strategy::Adaptive);
    CHECK(p.params.chunk_len == 3);
    CHECK(p.params.sample_cnt == 1);
    CHECK(p.starts == std::vector<std::uint32_t>{0});
}

TEST_CASE("sfs plan is one leading window") {
    RowSamplePlan p = build_plan(0, 500, 32, Strategy::Sfs);
    CHECK(p.params.chunk_len == 32);
    CHECK(p.params.sample_cnt == 1);
    CHECK(p.starts == std::vector<std::uint32_t>{0});
}

TEST_CASE("afs plan spaces single elements evenly") {
    RowSamplePlan p = build_plan(0, 8, 4, Strategy::Afs);
    CHECK(p.params.chunk_len == 1);
    CHECK(p.starts == std::vector<std::uint32_t>{0, 2, 4, 6});
}

TEST_CASE("afs starts strictly increase when sample_cnt <= row_nnz") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 500; ++t) {
        std::uint64_t nnz = 1 + rng() % 5000;
        std::uint32_t w = 1 + std::uint32_t(rng() % 256);
        RowSamplePlan p = build_plan(0, nnz, w, Strategy::Afs);
        REQUIRE(p.params.sample_cnt <= nnz);
        for (std::size_t s = 1; s < p.starts.size(); ++s) {
            CHECK(p.starts[s] > p.starts[s - 1]);
        }
    }
}

TEST_CASE("plan starts keep sampled offsets inside the row") {
    std::mt19937_64 rng(29);
    for (Strategy strat : {Strategy::Adaptive, Strategy::Afs, Strategy::Sfs,
                           Strategy::Full}) {
        for (int t = 0; t < 500; ++t) {
            std::uint64_t nnz = rng() % 3000;
            std::uint32_t w = 1 + std::uint32_t(rng() % 200);
            RowSamplePlan p = build_plan(0, nnz, w, strat);
            for (std::uint32_t start : p.starts) {
                CHECK(std::uint64_t(start) + p.params.chunk_len <= nnz);
            }
        }
    }
}

TEST_CASE("full coverage whenever W >= row_nnz") {
    for (std::uint64_t nnz = 1; nnz <= 64; ++nnz) {
        RowSamplePlan p = build_plan(0, nnz, 64, Strategy::Adaptive);
        CHECK(p.slots() == nnz);
        CHECK(coverage(p).size() == nnz);
    }
}

TEST_CASE("build_plan_set is deterministic and row-wise correct") {
    CsrMatrix g = graph_with_degrees({0, 3, 17, 65, 400, 2000});
    SamplePlanSet a = build_plan_set(g, 16, Strategy::Adaptive);
    SamplePlanSet b = build_plan_set(g, 16, Strategy::Adaptive);
    REQUIRE(a.plans.size() == g.n_rows);
    for (std::size_t i = 0; i < a.plans.size(); ++i) {
        CHECK(a.plans[i].starts == b.plans[i].starts);
        StrategyParams want = select_strategy(g.row_nnz(i), 16);
        CHECK(a.plans[i].params.chunk_len == want.chunk_len);
        CHECK(a.plans[i].params.sample_cnt == want.sample_cnt);
    }
}

TEST_CASE("adaptive equals full when W covers the widest row") {
    CsrMatrix g = graph_with_degrees({1, 5, 12, 30, 31});
    SamplePlanSet adaptive = build_plan_set(g, 32, Strategy::Adaptive);
    SamplePlanSet full = build_plan_set(g, 32, Strategy::Full);
    for (std::size_t i = 0; i < g.n_rows; ++i) {
        CHECK(coverage(adaptive.plans[i]) == coverage(full.plans[i]));
    }
}

TEST_CASE("sampling_rate on full plans is 1.0 everywhere") {
    CsrMatrix g = graph_with_degrees({2, 9, 40});
    SamplePlanSet plans = build_plan_set(g, 8, Strategy::Full);
    SamplingRates r = sampling_rate(plans, row_stats(g));
    for (double rate : r.per_row) CHECK(rate == 1.0);
    CHECK(r.aggregate == 1.0);
    CHECK(r.unique_coverage == 1.0);
}

TEST_CASE("sampling_rate counts slots, not unique edges") {
    CsrMatrix g = graph_with_degrees({100});
    SamplePlanSet plans = build_plan_set(g, 32, Strategy::Adaptive);
    SamplingRates r = sampling_rate(plans, row_stats(g));
    CHECK(r.per_row[0] == doctest::Approx(0.32));  // 8 samples of 4
    CHECK(r.unique_coverage <= r.aggregate);
}

TEST_CASE("empty rows rate 1.0 and empty plan") {
    CsrMatrix g = graph_with_degrees({0, 4});
    SamplePlanSet plans = build_plan_set(g, 8, Strategy::Adaptive);
    CHECK(plans.plans[0].empty());
    SamplingRates r = sampling_rate(plans, row_stats(g));
    CHECK(r.per_row[0] == 1.0);
}
