#include "aesspmm/sampling.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "parallel.hpp"

namespace aes {

Strategy strategy_from_string(const std::string& s) {
    if (s == "adaptive") return Strategy::Adaptive;
    if (s == "afs") return Strategy::Afs;
    if (s == "sfs") return Strategy::Sfs;
    if (s == "full") return Strategy::Full;
    throw std::invalid_argument("unknown strategy: " + s);
}

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::Adaptive: return "adaptive";
        case Strategy::Afs: return "afs";
        case Strategy::Sfs: return "sfs";
        case Strategy::Full: return "full";
    }
    return "?";
}

StrategyParams select_strategy(std::uint64_t row_nnz, std::uint32_t width) {
    if (width == 0) throw std::invalid_argument("ZeroWidth");
    if (row_nnz == 0) return {0, 0};

    std::uint32_t chunk, cnt;
    // R = row_nnz / width; integer comparisons keep the exact-boundary
    // cases (R == 1, 2, 36, 54) in the upper branch.
    if (row_nnz <= width) {
        return {std::uint32_t(row_nnz), 1};
    } else if (row_nnz <= std::uint64_t(width) * 2) {
        chunk = width / 4;
        cnt = 4;
    } else if (row_nnz <= std::uint64_t(width) * 36) {
        chunk = width / 8;
        cnt = 8;
    } else if (row_nnz <= std::uint64_t(width) * 54) {
        chunk = width / 16;
        cnt = 16;
    } else {
        chunk = width / 32;
        cnt = 32;
    }
    chunk = std::max(chunk, 1u);
    cnt = std::min(cnt, width);
    return {chunk, cnt};
}

std::uint32_t hash_start(std::uint32_t current_ind, std::uint64_t row_nnz,
                         std::uint32_t chunk_len) {
    std::uint64_t range = row_nnz - chunk_len + 1;
    return std::uint32_t((current_ind * kHashPrime) % range);
}

RowSamplePlan build_plan(std::uint32_t row_id, std::uint64_t row_nnz,
                         std::uint32_t width, Strategy strategy) {
    if (width == 0) throw std::invalid_argument("ZeroWidth");
    RowSamplePlan plan;
    plan.row_id = row_id;
    if (row_nnz == 0) return plan;

    switch (strategy) {
        case Strategy::Full:
            plan.params = {std::uint32_t(row_nnz), 1};
            plan.starts = {0};
            break;
        case Strategy::Sfs:
            plan.params = {std::uint32_t(std::min<std::uint64_t>(row_nnz, width)), 1};
            plan.starts = {0};
            break;
        case Strategy::Afs: {
            std::uint32_t cnt =
                std::uint32_t(std::min<std::uint64_t>(row_nnz, width));
            plan.params = {1, cnt};
            plan.starts.resize(cnt);
            for (std::uint32_t s = 0; s < cnt; ++s) {
                plan.starts[s] = std::uint32_t(std::uint64_t(s) * row_nnz / cnt);
            }
            break;
        }
        case Strategy::Adaptive: {
            plan.params = select_strategy(row_nnz, width);
            if (row_nnz <= width) {
                plan.starts = {0};
            } else {
                plan.starts.resize(plan.params.sample_cnt);
                for (std::uint32_t s = 0; s < plan.params.sample_cnt; ++s) {
                    plan.starts[s] = hash_start(s, row_nnz, plan.params.chunk_len);
                }
            }
            break;
        }
    }
    return plan;
}

SamplePlanSet build_plan_set(const CsrMatrix& m, std::uint32_t width,
                             Strategy strategy) {
    if (width == 0) throw std::invalid_argument("ZeroWidth");
    SamplePlanSet set;
    set.width = width;
    set.strategy = strategy;
    set.plans.resize(m.n_rows);
    detail::parallel_blocks(m.n_rows, 0, [&](std::size_t b, std::size_t e, unsigned) {
        for (std::size_t i = b; i < e; ++i) {
            set.plans[i] =
                build_plan(std::uint32_t(i), m.row_nnz(i), width, strategy);
        }
    });
    return set;
}

SamplingRates sampling_rate(const SamplePlanSet& plans, const RowStats& stats) {
    if (plans.plans.size() != stats.row_nnz.size()) {
        throw std::invalid_argument("plan/stats row count mismatch");
    }
    SamplingRates r;
    r.per_row.resize(plans.plans.size());
    std::uint64_t total_slots = 0, total_unique = 0, total_nnz = 0;
    std::vector<std::uint8_t> seen;
    for (std::size_t i = 0; i < plans.plans.size(); ++i) {
        const RowSamplePlan& p = plans.plans[i];
        std::uint64_t nnz = stats.row_nnz[i];
        total_nnz += nnz;
        if (nnz == 0) {
            r.per_row[i] = 1.0;
            continue;
        }
        std::uint64_t slots = p.slots();
        total_slots += slots;
        r.per_row[i] = double(slots) / double(nnz);

        seen.assign(nnz, 0);
        for (std::uint32_t start : p.starts) {
            for (std::uint32_t j = 0; j < p.params.chunk_len; ++j) {
                seen[start + j] = 1;
            }
        }
        for (std::uint8_t s : seen) total_unique += s;
    }
    r.aggregate = total_nnz == 0 ? 1.0 : double(total_slots) / double(total_nnz);
    r.unique_coverage =
        total_nnz == 0 ? 1.0 : double(total_unique) / double(total_nnz);
    return r;
}

}  // namespace aes
