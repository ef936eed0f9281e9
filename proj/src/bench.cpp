#include "aesspmm/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "aesspmm/spmm.hpp"
#include "parallel.hpp"

namespace aes {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

BenchReport run_sweep(const Dataset& dataset, const GnnModel& model,
                      const std::vector<Strategy>& strategies,
                      const std::vector<std::uint32_t>& widths,
                      unsigned repeats, unsigned n_threads) {
    if (repeats == 0) repeats = 1;
    BenchReport report;
    report.dataset = dataset.name;
    report.model_kind = model.kind == ModelKind::Gcn ? "gcn" : "sage_mean";
    report.normalization =
        model.kind == ModelKind::Gcn ? "gcn_symmetric" : "row_mean";
    report.threads = detail::resolve_threads(n_threads);

    const CsrMatrix adj = model.kind == ModelKind::Gcn
                              ? gcn_normalize(dataset.graph, true)
                              : row_mean_normalize(dataset.graph);
    const RowStats stats = row_stats(adj);
    const DenseMatrix reference =
        gnn_forward(adj, dataset.features, model, nullptr, n_threads);

    for (Strategy strategy : strategies) {
        for (std::uint32_t width : widths) {
            BenchRecord rec;
            rec.strategy = strategy;
            rec.width = width;

            auto tp = Clock::now();
            SamplePlanSet plans = build_plan_set(adj, width, strategy);
            rec.plan_ms = ms_since(tp);

            SamplingRates rates = sampling_rate(plans, stats);
            rec.rate = rates.aggregate;
            rec.unique_rate = rates.unique_coverage;

            // kernel timing and work counting cover the first-layer
            // aggregation, the SpMM the sweep is about
            std::vector<double> kernel_times;
            WorkCounter work;
            for (unsigned r = 0; r < repeats; ++r) {
                auto tk = Clock::now();
                DenseMatrix agg = spmm_sampled_instrumented(
                    adj, dataset.features, plans, work, n_threads);
                kernel_times.push_back(ms_since(tk));
            }
            rec.kernel_ms = median(kernel_times);
            rec.fused_ms = rec.plan_ms + rec.kernel_ms;
            rec.fma = work.fma_count;

            DenseMatrix logits =
                gnn_forward(adj, dataset.features, model, &plans, n_threads);

            EvalResult ev =
                evaluate(logits, dataset.labels, &reference, dataset.eval_mask);
            rec.accuracy = ev.accuracy;
            rec.agreement = ev.agreement;
            report.records.push_back(rec);
        }
    }
    return report;
}

std::string report_csv(const BenchReport& report) {
    std::ostringstream os;
    os << "strategy,W,kernel_ms,load_ms,fma,rate,unique_rate,accuracy,"
          "agreement\n";
    for (const BenchRecord& r : report.records) {
        os << to_string(r.strategy) << ',' << r.width << ',' << r.kernel_ms
           << ',' << r.load_ms << ',' << r.fma << ',' << r.rate << ','
           << r.unique_rate << ',' << r.accuracy << ',' << r.agreement << '\n';
    }
    return os.str();
}

void emit_report(const BenchReport& report, const std::string& path,
                 const std::string& format) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("Io: cannot open: " + path);
    if (format == "csv") {
        os << report_csv(report);
    } else if (format == "text") {
        os << "dataset: " << report.dataset << '\n'
           << "model: " << report.model_kind << '\n'
           << "normalization: " << report.normalization << '\n'
           << "threads: " << report.threads << '\n'
           << report_csv(report);
    } else {
        throw std::invalid_argument("unknown report format: " + format);
    }
    if (!os) throw std::runtime_error("Io: write failed: " + path);
}

std::vector<std::pair<double, double>> cdf_stats(std::vector<double> rates) {
    if (rates.empty()) throw std::invalid_argument("rates must be nonempty");
    std::sort(rates.begin(), rates.end());
    std::vector<std::pair<double, double>> cdf;
    std::size_t n = rates.size();
    for (std::size_t i = 0; i < n; ++i) {
        double fraction = double(i + 1) / double(n);
        if (!cdf.empty() && cdf.back().first == rates[i]) {
            cdf.back().second = fraction;  // merge ties into one step
        } else {
            cdf.emplace_back(rates[i], fraction);
        }
    }
    return cdf;
}

namespace {

// Inverse-CDF draw from a continuous power law p(d) ~ d^-alpha truncated
// to [1, max_degree], floored to an integer degree.
std::uint32_t draw_power_law_degree(double u, double alpha,
                                    std::uint32_t max_degree) {
    if (max_degree <= 1) return 1;
    double m = double(max_degree);
    double d;
    if (std::abs(alpha - 1.0) < 1e-9) {
        d = std::exp(u * std::log(m));
    } else {
        double e = 1.0 - alpha;
        d = std::pow(1.0 + u * (std::pow(m, e) - 1.0), 1.0 / e);
    }
    d = std::floor(d);
    return std::uint32_t(std::clamp(d, 1.0, m));
}

}  // namespace

CsrMatrix gen_synthetic(std::size_t n_nodes, const SyntheticParams& params) {
    if (n_nodes == 0) throw std::invalid_argument("InvalidParams: n == 0");
    if (params.model == DegreeModel::Uniform && params.degree >= n_nodes) {
        throw std::invalid_argument("InvalidParams: degree >= n");
    }
    if (params.model == DegreeModel::PowerLaw &&
        (params.alpha <= 0.0 || params.max_degree == 0 ||
         params.max_degree >= n_nodes)) {
        throw std::invalid_argument("InvalidParams: bad power-law parameters");
    }

    std::mt19937_64 rng(params.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::uint32_t> rows, cols;
    std::vector<std::uint32_t> picked;
    for (std::size_t i = 0; i < n_nodes; ++i) {
        std::uint32_t degree =
            params.model == DegreeModel::Uniform
                ? params.degree
                : draw_power_law_degree(unit(rng), params.alpha,
                                        params.max_degree);
        // distinct neighbors by partial Fisher-Yates over a virtual range
        picked.clear();
        std::unordered_map<std::uint32_t, std::uint32_t> swapped;
        for (std::uint32_t k = 0; k < degree; ++k) {
            std::uniform_int_distribution<std::uint32_t> pick(
                k, std::uint32_t(n_nodes - 1));
            std::uint32_t j = pick(rng);
            std::uint32_t vj = swapped.count(j) ? swapped[j] : j;
            std::uint32_t vk = swapped.count(k) ? swapped[k] : k;
            swapped[j] = vk;
            picked.push_back(vj);
        }
        for (std::uint32_t c : picked) {
            rows.push_back(std::uint32_t(i));
            cols.push_back(c);
        }
    }
    std::vector<float> vals(rows.size(), 1.0f);
    return csr_from_triplets(n_nodes, n_nodes, std::move(rows), std::move(cols),
                             std::move(vals));
}

}  // namespace aes
