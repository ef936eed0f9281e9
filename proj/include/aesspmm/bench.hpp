#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "aesspmm/gnn.hpp"
#include "aesspmm/matrix.hpp"
#include "aesspmm/quantize.hpp"
#include "aesspmm/sampling.hpp"

namespace aes {

struct Dataset {
    std::string name;
    CsrMatrix graph;
    DenseMatrix features;
    std::vector<std::uint32_t> labels;
    std::vector<std::uint8_t> eval_mask;  // empty = all nodes
};

struct BenchRecord {
    Strategy strategy = Strategy::Full;
    std::uint32_t width = 0;
    double kernel_ms = 0.0;      // median sampled-kernel time
    double plan_ms = 0.0;        // plan construction time
    double fused_ms = 0.0;       // plan + kernel, Algorithm-1-style total
    double load_ms = 0.0;
    std::uint64_t fma = 0;
    double rate = 0.0;           // aggregate slot rate
    double unique_rate = 0.0;    // deduplicated coverage
    double accuracy = 0.0;
    double agreement = 0.0;      // vs exact-kernel inference
};

struct BenchReport {
    std::string dataset;
    std::string normalization;   // which adjacency normalizer ran
    std::string model_kind;
    unsigned threads = 0;
    std::vector<BenchRecord> records;
};

/// Runs inference per (strategy, width) pair, timing the aggregation
/// kernels with a monotonic clock (median of `repeats`) and scoring
/// accuracy/agreement against the exact-kernel reference.
BenchReport run_sweep(const Dataset& dataset, const GnnModel& model,
                      const std::vector<Strategy>& strategies,
                      const std::vector<std::uint32_t>& widths,
                      unsigned repeats, unsigned n_threads = 0);

/// CSV header: strategy,W,kernel_ms,load_ms,fma,rate,unique_rate,accuracy,agreement
void emit_report(const BenchReport& report, const std::string& path,
                 const std::string& format);
std::string report_csv(const BenchReport& report);

/// Empirical CDF of per-row sampling rates as (rate, cumulative fraction).
std::vector<std::pair<double, double>> cdf_stats(std::vector<double> rates);

enum class DegreeModel { Uniform, PowerLaw };

struct SyntheticParams {
    DegreeModel model = DegreeModel::PowerLaw;
    std::uint32_t degree = 4;     // uniform model
    double alpha = 1.5;           // power-law exponent
    std::uint32_t max_degree = 256;
    std::uint64_t seed = 0;
};

/// Seed-reproducible random digraph; power_law draws row degrees from a
/// truncated Pareto so heavy rows exercise every strategy branch.
CsrMatrix gen_synthetic(std::size_t n_nodes, const SyntheticParams& params);

}  // namespace aes
