#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aesspmm/matrix.hpp"

namespace aes {

/// Prime multiplier of the start-index hash.
inline constexpr std::uint64_t kHashPrime = 1429;

enum class Strategy { Adaptive, Afs, Sfs, Full };

Strategy strategy_from_string(const std::string& s);
std::string to_string(Strategy s);

/// Per-row sampling parameters: how many windows (sample_cnt) of how many
/// consecutive nonzeros (chunk_len) go into a width-W buffer.
struct StrategyParams {
    std::uint32_t chunk_len = 0;   // consecutive elements per sample (N)
    std::uint32_t sample_cnt = 0;  // number of samples per row
};

/// One row's sampling decision. Buffer slot for (sample s, element j)
/// is s + j * sample_cnt; slots() of them are filled in total.
struct RowSamplePlan {
    std::uint32_t row_id = 0;
    StrategyParams params;
    std::vector<std::uint32_t> starts;  // length sample_cnt, offsets in-row

    std::uint64_t slots() const {
        return std::uint64_t(params.chunk_len) * params.sample_cnt;
    }
    bool empty() const { return params.sample_cnt == 0; }
};

struct SamplePlanSet {
    std::uint32_t width = 0;
    Strategy strategy = Strategy::Full;
    std::vector<RowSamplePlan> plans;
};

/// Picks (chunk_len, sample_cnt) from the row_nnz / W ratio:
///   R <= 1        -> (row_nnz, 1)
///   1 < R <= 2    -> (W/4, 4)
///   2 < R <= 36   -> (W/8, 8)
///   36 < R <= 54  -> (W/16, 16)
///   R > 54        -> (W/32, 32)
/// with integer-floor divisions, then chunk_len clamped up to 1 and
/// sample_cnt clamped down to W. Empty rows get (0, 0).
StrategyParams select_strategy(std::uint64_t row_nnz, std::uint32_t width);

/// start_ind = (current_ind * 1429) mod (row_nnz - chunk_len + 1).
std::uint32_t hash_start(std::uint32_t current_ind, std::uint64_t row_nnz,
                         std::uint32_t chunk_len);

RowSamplePlan build_plan(std::uint32_t row_id, std::uint64_t row_nnz,
                         std::uint32_t width, Strategy strategy);

/// One plan per row; pure function of (row_nnz, width, strategy), so the
/// result is identical no matter how rows are scheduled.
SamplePlanSet build_plan_set(const CsrMatrix& m, std::uint32_t width,
                             Strategy strategy);

/// Per-row sampling rates plus aggregates. `rate` counts every filled
/// buffer slot (collisions included); `unique` deduplicates offsets.
struct SamplingRates {
    std::vector<double> per_row;      // slots / row_nnz, 1.0 for empty rows
    double aggregate = 0.0;           // total slots / nnz
    double unique_coverage = 0.0;     // distinct sampled offsets / nnz
};

SamplingRates sampling_rate(const SamplePlanSet& plans, const RowStats& stats);

}  // namespace aes
