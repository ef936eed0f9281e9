// Command-line front end: sampling statistics, kernel benchmarks, GNN
// inference, feature quantization, synthetic graph generation, and a
// built-in verification suite.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aesspmm/bench.hpp"
#include "aesspmm/gnn.hpp"
#include "aesspmm/io.hpp"
#include "aesspmm/matrix.hpp"
#include "aesspmm/quantize.hpp"
#include "aesspmm/sampling.hpp"
#include "aesspmm/spmm.hpp"

namespace {

using namespace aes;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

GraphFormat sniff_graph_format(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    char magic[4] = {};
    is.read(magic, 4);
    if (is && std::string(magic, 4) == "CSRB") return GraphFormat::CsrBinary;
    return GraphFormat::EdgeListText;
}

CsrMatrix load_graph_auto(const std::string& path) {
    return load_graph(path, sniff_graph_format(path));
}

DenseMatrix random_dense(std::size_t rows, std::size_t cols,
                         std::uint64_t seed) {
    DenseMatrix m(rows, cols);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<float> dist(-1.0f, 1.0f);
    for (float& v : m.data) v = dist(rng);
    return m;
}

int cmd_sample_stats(const std::string& graph_path, std::uint32_t width,
                     const std::string& strategy_name,
                     const std::string& cdf_out) {
    CsrMatrix g = load_graph_auto(graph_path);
    RowStats stats = row_stats(g);
    SamplePlanSet plans =
        build_plan_set(g, width, strategy_from_string(strategy_name));
    SamplingRates rates = sampling_rate(plans, stats);

    std::cout << "nodes: " << g.n_rows << "\nnnz: " << g.nnz()
              << "\nmax_row_nnz: " << stats.max_row_nnz
              << "\navg_degree: " << stats.avg_degree
              << "\naggregate_rate: " << rates.aggregate
              << "\nunique_coverage: " << rates.unique_coverage << "\n";
    if (!cdf_out.empty()) {
        std::ofstream os(cdf_out);
        os << "rate,cumulative_fraction\n";
        for (auto [rate, frac] : cdf_stats(rates.per_row)) {
            os << rate << ',' << frac << '\n';
        }
        if (!os) {
            std::cerr << "cannot write " << cdf_out << "\n";
            return 1;
        }
    }
    return 0;
}

int cmd_spmm_bench(const std::string& graph_path, std::uint32_t cols,
                   const std::vector<std::uint32_t>& widths,
                   const std::vector<std::string>& strategy_names,
                   unsigned repeats, const std::string& out,
                   std::uint64_t seed) {
    CsrMatrix g = load_graph_auto(graph_path);
    RowStats stats = row_stats(g);
    DenseMatrix b = random_dense(g.n_cols, cols, seed);
    DenseMatrix exact = spmm_exact(g, b);
    std::vector<std::uint32_t> exact_pred = argmax_rows(exact);

    BenchReport report;
    report.dataset = graph_path;
    report.model_kind = "spmm";
    report.normalization = "none";
    report.threads = std::max(1u, std::thread::hardware_concurrency());

    for (const std::string& name : strategy_names) {
        Strategy strategy = strategy_from_string(name);
        for (std::uint32_t width : widths) {
            BenchRecord rec;
            rec.strategy = strategy;
            rec.width = width;
            auto tp = Clock::now();
            SamplePlanSet plans = build_plan_set(g, width, strategy);
            rec.plan_ms = ms_since(tp);
            SamplingRates rates = sampling_rate(plans, stats);
            rec.rate = rates.aggregate;
            rec.unique_rate = rates.unique_coverage;

            std::vector<double> times;
            WorkCounter work;
            DenseMatrix sampled;
            for (unsigned r = 0; r < std::max(repeats, 1u); ++r) {
                auto tk = Clock::now();
                sampled = spmm_sampled_instrumented(g, b, plans, work);
                times.push_back(ms_since(tk));
            }
            std::sort(times.begin(), times.end());
            rec.kernel_ms = times[times.size() / 2];
            rec.fused_ms = rec.plan_ms + rec.kernel_ms;
            rec.fma = work.fma_count;

            EvalResult ev = evaluate(sampled, exact_pred, &exact);
            rec.accuracy = ev.accuracy;
            rec.agreement = ev.agreement;
            report.records.push_back(rec);
        }
    }
    if (out.empty()) {
        std::cout << report_csv(report);
    } else {
        emit_report(report, out, "csv");
    }
    return 0;
}

int cmd_infer(const std::string& graph_path, const std::string& features_path,
              const std::string& model_path, std::uint32_t width,
              const std::string& strategy_name, bool expect_quantized) {
    CsrMatrix g = load_graph_auto(graph_path);
    GnnModel model = load_model_manifest(model_path);

    double load_ms = 0.0;
    Features f = load_features(features_path, &load_ms);
    DenseMatrix features;
    if (std::holds_alternative<QuantizedFeatures>(f)) {
        features = dequantize(std::get<QuantizedFeatures>(f));
    } else {
        if (expect_quantized) {
            std::cerr << "--quantized given but " << features_path
                      << " holds Float32 data\n";
            return 1;
        }
        features = std::get<DenseMatrix>(std::move(f));
    }

    CsrMatrix adj = model.kind == ModelKind::Gcn ? gcn_normalize(g, true)
                                                 : row_mean_normalize(g);
    SamplePlanSet plans =
        build_plan_set(adj, width, strategy_from_string(strategy_name));

    auto t0 = Clock::now();
    DenseMatrix logits = gnn_forward(adj, features, model, &plans);
    double infer_ms = ms_since(t0);
    DenseMatrix reference = gnn_forward(adj, features, model, nullptr);

    std::vector<std::uint32_t> ref_pred = argmax_rows(reference);
    EvalResult ev = evaluate(logits, ref_pred, &reference);
    std::cout << "nodes: " << g.n_rows << "\nfeature_load_ms: " << load_ms
              << "\ninfer_ms: " << infer_ms
              << "\nagreement_vs_exact: " << ev.agreement << "\n";
    return 0;
}

int cmd_quantize(const std::string& in_path, const std::string& out_path) {
    Features f = load_features(in_path);
    if (!std::holds_alternative<DenseMatrix>(f)) {
        std::cerr << in_path << " is already quantized\n";
        return 1;
    }
    const DenseMatrix& x = std::get<DenseMatrix>(f);
    QuantizedFeatures qf = quantize(x, fit_params(x, 8));
    save_fmat(qf, out_path);
    std::cout << "wrote " << out_path << " (" << qf.codes.size()
              << " codes, x_min=" << qf.params.x_min
              << ", x_max=" << qf.params.x_max << ")\n";
    return 0;
}

int cmd_gen(std::size_t nodes, const std::string& model_name,
            std::uint32_t degree, double alpha, std::uint32_t max_deg,
            std::uint64_t seed, const std::string& out) {
    SyntheticParams params;
    if (model_name == "uniform") {
        params.model = DegreeModel::Uniform;
        params.degree = degree;
    } else if (model_name == "power_law") {
        params.model = DegreeModel::PowerLaw;
        params.alpha = alpha;
        params.max_degree = max_deg;
    } else {
        std::cerr << "unknown degree model: " << model_name << "\n";
        return 1;
    }
    params.seed = seed;
    CsrMatrix g = gen_synthetic(nodes, params);
    save_csr_binary(g, out);
    std::cout << "wrote " << out << " (" << g.n_rows << " nodes, " << g.nnz()
              << " edges)\n";
    return 0;
}

// ----- verify: self-contained oracle checks ------------------------------

bool check(const char* name, bool ok, int& failures) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
    if (!ok) ++failures;
    return ok;
}

// Independent restatement of the strategy table, kept deliberately naive.
StrategyParams table_oracle(std::uint64_t row_nnz, std::uint32_t w) {
    if (row_nnz == 0) return {0, 0};
    double r = double(row_nnz) / double(w);
    std::uint32_t chunk, cnt;
    if (r <= 1.0) {
        chunk = std::uint32_t(row_nnz);
        cnt = 1;
    } else if (r <= 2.0) {
        chunk = w / 4;
        cnt = 4;
    } else if (r <= 36.0) {
        chunk = w / 8;
        cnt = 8;
    } else if (r <= 54.0) {
        chunk = w / 16;
        cnt = 16;
    } else {
        chunk = w / 32;
        cnt = 32;
    }
    if (chunk < 1) chunk = 1;
    if (cnt > w) cnt = w;
    return {chunk, cnt};
}

int cmd_verify() {
    int failures = 0;

    bool table_ok = true;
    for (std::uint32_t w : {16u, 32u, 64u, 128u, 256u, 512u, 1024u}) {
        for (std::uint64_t nnz = 0; nnz <= 65536 && table_ok; ++nnz) {
            StrategyParams got = select_strategy(nnz, w);
            StrategyParams want = table_oracle(nnz, w);
            table_ok = got.chunk_len == want.chunk_len &&
                       got.sample_cnt == want.sample_cnt;
        }
    }
    check("strategy table vs oracle (row_nnz <= 65536, 7 widths)", table_ok,
          failures);

    bool hash_ok = true;
    for (std::uint64_t nnz = 1; nnz <= 2048 && hash_ok; ++nnz) {
        for (std::uint32_t n = 1; n <= std::min<std::uint64_t>(nnz, 64); ++n) {
            for (std::uint32_t s = 0; s <= 32; ++s) {
                std::uint64_t got = hash_start(s, nnz, n);
                if (got != (std::uint64_t(s) * 1429) % (nnz - n + 1) ||
                    got > nnz - n) {
                    hash_ok = false;
                }
            }
        }
    }
    check("start-index hash vs direct modular arithmetic", hash_ok, failures);

    std::mt19937_64 rng(7);
    bool spmm_ok = true;
    for (int trial = 0; trial < 100 && spmm_ok; ++trial) {
        std::size_t n = 1 + rng() % 48;
        std::vector<std::uint32_t> rows, cols;
        std::vector<float> vals;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (rng() % 10 < 4) {
                    rows.push_back(std::uint32_t(i));
                    cols.push_back(std::uint32_t(j));
                    vals.push_back(float(int(rng() % 17) - 8) * 0.25f);
                }
            }
        }
        CsrMatrix a = csr_from_triplets(n, n, rows, cols, vals);
        DenseMatrix b = random_dense(n, 1 + rng() % 8, rng());
        std::uint32_t w = std::uint32_t(4u << (rng() % 3));
        SamplePlanSet plans = build_plan_set(a, w, Strategy::Adaptive);
        DenseMatrix got = spmm_sampled(a, b, plans);
        // plan replay, scalar
        for (std::size_t i = 0; i < n && spmm_ok; ++i) {
            const RowSamplePlan& p = plans.plans[i];
            std::vector<std::pair<std::uint32_t, float>> slots(p.slots());
            for (std::uint32_t s = 0; s < p.params.sample_cnt; ++s) {
                for (std::uint32_t j = 0; j < p.params.chunk_len; ++j) {
                    std::uint64_t k = a.row_ptr[i] + p.starts[s] + j;
                    slots[s + std::size_t(j) * p.params.sample_cnt] = {
                        a.col_ind[k], a.val[k]};
                }
            }
            for (std::size_t c = 0; c < b.n_cols; ++c) {
                float acc = 0.0f;
                for (auto [col, v] : slots) acc += v * b.at(col, c);
                if (acc != got.at(i, c)) spmm_ok = false;
            }
        }
    }
    check("sampled SpMM vs scalar plan replay (100 random instances)", spmm_ok,
          failures);

    bool quant_ok = true;
    std::uniform_real_distribution<float> dist(-3.0f, 5.0f);
    DenseMatrix x(100, 100);
    for (float& v : x.data) v = dist(rng);
    QuantParams p = fit_params(x, 8);
    DenseMatrix back = dequantize(quantize(x, p));
    double bound = (double(p.x_max) - double(p.x_min)) / 255.0;
    for (std::size_t k = 0; k < x.data.size(); ++k) {
        if (std::abs(double(back.data[k]) - double(x.data[k])) > bound) {
            quant_ok = false;
        }
    }
    check("quantization round-trip error bound", quant_ok, failures);

    if (failures > 0) {
        std::cerr << failures << " verification check(s) failed\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"AES-SpMM: adaptively edge-sampled SpMM, INT8 feature "
                 "quantization, and a GNN inference benchmark harness"};
    app.require_subcommand(1);

    std::string graph, features_path, model_path, out, cdf_out, strategy =
        "adaptive";
    std::vector<std::string> strategies{"adaptive"};
    std::vector<std::uint32_t> widths{16, 32, 64, 128, 256, 512, 1024};
    std::uint32_t width = 32, cols = 16, degree = 4, max_deg = 256;
    std::size_t nodes = 1000;
    unsigned repeats = 3;
    double alpha = 1.5;
    std::uint64_t seed = 0;
    std::string degree_model = "power_law", in_path;
    bool quantized = false;

    auto* stats_cmd =
        app.add_subcommand("sample-stats", "Sampling-rate statistics per row");
    stats_cmd->add_option("--graph", graph)->required();
    stats_cmd->add_option("--width", width);
    stats_cmd->add_option("--strategy", strategy);
    stats_cmd->add_option("--cdf-out", cdf_out,
                          "Write the sampling-rate CDF as CSV");

    auto* bench_cmd =
        app.add_subcommand("spmm-bench", "Kernel benchmark over (strategy, W)");
    bench_cmd->add_option("--graph", graph)->required();
    bench_cmd->add_option("--cols", cols, "Dense operand column count");
    bench_cmd->add_option("--widths", widths)->delimiter(',');
    bench_cmd->add_option("--strategies", strategies)->delimiter(',');
    bench_cmd->add_option("--repeats", repeats);
    bench_cmd->add_option("--seed", seed);
    bench_cmd->add_option("--out", out, "CSV path (stdout when omitted)");

    auto* infer_cmd = app.add_subcommand("infer", "GNN forward pass");
    infer_cmd->add_option("--graph", graph)->required();
    infer_cmd->add_option("--features", features_path)->required();
    infer_cmd->add_option("--model", model_path)->required();
    infer_cmd->add_option("--width", width);
    infer_cmd->add_option("--strategy", strategy);
    infer_cmd->add_flag("--quantized", quantized,
                        "Require an INT8 feature file");

    auto* quant_cmd =
        app.add_subcommand("quantize", "Float32 FMAT -> INT8 FMAT");
    quant_cmd->add_option("--in", in_path)->required();
    quant_cmd->add_option("--out", out)->required();

    auto* gen_cmd = app.add_subcommand("gen", "Synthetic graph generator");
    gen_cmd->add_option("--nodes", nodes);
    gen_cmd->add_option("--model", degree_model, "uniform | power_law");
    gen_cmd->add_option("--degree", degree, "Uniform out-degree");
    gen_cmd->add_option("--alpha", alpha, "Power-law exponent");
    gen_cmd->add_option("--max-deg", max_deg);
    gen_cmd->add_option("--seed", seed);
    gen_cmd->add_option("--out", out)->required();

    auto* verify_cmd =
        app.add_subcommand("verify", "Run the built-in oracle checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (stats_cmd->parsed()) {
            return cmd_sample_stats(graph, width, strategy, cdf_out);
        }
        if (bench_cmd->parsed()) {
            return cmd_spmm_bench(graph, cols, widths, strategies, repeats, out,
                                  seed);
        }
        if (infer_cmd->parsed()) {
            return cmd_infer(graph, features_path, model_path, width, strategy,
                             quantized);
        }
        if (quant_cmd->parsed()) return cmd_quantize(in_path, out);
        if (gen_cmd->parsed()) {
            return cmd_gen(nodes, degree_model, degree, alpha, max_deg, seed,
                           out);
        }
        if (verify_cmd->parsed()) return cmd_verify();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
