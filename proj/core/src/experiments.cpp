#include "qeclab/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "qeclab/version.hpp"

namespace qeclab::experiments {

namespace {

constexpr double kZ95 = 1.959963984540054;

std::vector<int> iota_vec(int first, int count) {
    std::vector<int> v(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) v[static_cast<size_t>(i)] = first + i;
    return v;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

bool memory_trial(Rng& rng, double eps_store, double eps_gate, int rounds, steane::Method method) {
    const bool ft_ancilla = method == steane::Method::Steane;
    const int n_anc = ft_ancilla ? 13 : 5;  // 7-qubit ancilla block + nested recovery, or cat+verifier
    stab::Tableau sim(7 + n_anc);
    NoiseModel model = NoiseModel::uniform(eps_gate, eps_store);
    TableauEngine noisy(sim, model, &rng);
    TableauEngine ideal(sim, {}, &rng);

    const auto block = steane::CodeBlock::contiguous(0);
    const auto anc = iota_vec(7, n_anc);
    const steane::Workspace ws{anc};

    steane::encode_logical(ideal, block, 0);
    for (int r = 0; r < rounds; ++r) {
        noisy.rest(block.qubits);
        try {
            steane::recovery_cycle(noisy, block, ws, method, 16, ft_ancilla);
        } catch (const std::runtime_error&) {
            return true;  // agreement budget blown: count as failure
        }
    }
    return steane::measure_logical_destructive(ideal, block) == 1;
}

bool memory_trial_unencoded(Rng& rng, double eps_store, int rounds) {
    stab::Tableau sim(1);
    NoiseModel model;
    model.eps_store = eps_store;
    TableauEngine noisy(sim, model, &rng);
    TableauEngine ideal(sim, {}, &rng);
    const std::array<int, 1> qubits = {0};
    for (int r = 0; r < rounds; ++r) noisy.rest(qubits);
    return ideal.measure(0) == 1;
}

bool xor_trial(Rng& rng, double eps_xor, int n_gates, steane::Method method) {
    const bool ft_ancilla = method == steane::Method::Steane;
    const int n_anc = ft_ancilla ? 13 : 5;
    stab::Tableau sim(14 + n_anc);
    TableauEngine noisy(sim, NoiseModel::xor_only(eps_xor), &rng);
    TableauEngine ideal(sim, {}, &rng);

    const auto source = steane::CodeBlock::contiguous(0);
    const auto target = steane::CodeBlock::contiguous(7);
    const auto anc = iota_vec(14, n_anc);
    const steane::Workspace ws{anc};

    steane::encode_logical(ideal, source, 0);
    steane::encode_logical(ideal, target, 0);
    for (int g = 0; g < n_gates; ++g) {
        for (int p = 1; p <= 7; ++p) noisy.cnot(source.at(p), target.at(p));
    }
    try {
        steane::recovery_cycle(noisy, source, ws, method, 16, ft_ancilla);
        steane::recovery_cycle(noisy, target, ws, method, 16, ft_ancilla);
    } catch (const std::runtime_error&) {
        return true;
    }
    return steane::measure_logical_destructive(ideal, source) == 1 ||
           steane::measure_logical_destructive(ideal, target) == 1;
}

long count_failures(long trials, int jobs, const std::function<bool(long)>& trial_fails) {
    if (trials < 1) throw std::invalid_argument("count_failures: need at least one trial");
    int n_threads = jobs > 0 ? jobs : static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads < 1) n_threads = 1;
    if (n_threads > trials) n_threads = static_cast<int>(trials);

    std::vector<long> partial(static_cast<size_t>(n_threads), 0);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) {
        pool.emplace_back([&, t] {
            long local = 0;
            for (long i = t; i < trials; i += n_threads) {
                if (trial_fails(i)) ++local;
            }
            partial[static_cast<size_t>(t)] = local;
        });
    }
    for (auto& th : pool) th.join();
    long total = 0;
    for (long p : partial) total += p;
    return total;
}

WilsonInterval wilson(long failures, long trials) {
    if (trials < 1 || failures < 0 || failures > trials)
        throw std::invalid_argument("wilson: bad counts");
    const double n = static_cast<double>(trials);
    if (failures == 0) return {0.0, std::min(1.0, 3.0 / n)};
    const double p = static_cast<double>(failures) / n;
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / n;
    const double center = p + z2 / (2.0 * n);
    const double spread = kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    return {(center - spread) / denom, (center + spread) / denom};
}

ScalingFit fit_scaling(std::span<const std::pair<double, double>> eps_rate) {
    std::vector<std::pair<double, double>> logs;
    for (const auto& [eps, rate] : eps_rate) {
        if (rate > 0 && eps > 0) logs.emplace_back(std::log(eps), std::log(rate));
    }
    if (logs.size() < 3)
        throw std::invalid_argument("fit_scaling: fewer than 3 usable (nonzero) points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : logs) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(logs.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    ScalingFit fit{slope, intercept, {}, logs.size()};
    for (const auto& [x, y] : logs) fit.residuals.push_back(y - (intercept + slope * x));
    return fit;
}

namespace {

ExperimentResult run_points(const ExperimentConfig& config, const std::string& name,
                            const std::function<bool(Rng&, double)>& trial,
                            int n_or_rounds) {
    if (config.trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
    for (double eps : config.eps_points) {
        if (eps < 0 || eps > 1) throw std::invalid_argument("experiment: eps out of range");
    }
    ExperimentResult result;
    result.config = config;
    for (size_t pt = 0; pt < config.eps_points.size(); ++pt) {
        const double eps = config.eps_points[pt];
        const long failures =
            count_failures(config.trials, config.jobs, [&, pt, eps](long trial_idx) {
                Rng rng = Rng::stream(config.seed, pt, static_cast<uint64_t>(trial_idx));
                return trial(rng, eps);
            });
        const auto ci = wilson(failures, config.trials);
        result.points.push_back({name, eps, n_or_rounds, config.trials, failures,
                                 static_cast<double>(failures) / static_cast<double>(config.trials),
                                 ci.low, ci.high});
    }
    return result;
}

}  // namespace

ExperimentResult run_memory_experiment(const ExperimentConfig& config) {
    if (config.rounds < 1) throw std::invalid_argument("mc-memory: rounds must be >= 1");
    ExperimentResult result = run_points(
        config, "mc-memory",
        [&config](Rng& rng, double eps) {
            const double gate = config.eps_gate < 0 ? eps : config.eps_gate;
            return memory_trial(rng, eps, gate, config.rounds, config.method);
        },
        config.rounds);
    if (config.include_baseline) {
        // The bare-qubit comparison column: same storage rates, no encoding.
        ExperimentConfig bare = config;
        bare.seed = splitmix64(config.seed ^ 0x62617265ULL);
        ExperimentResult baseline = run_points(
            bare, "mc-memory-unencoded",
            [&config](Rng& rng, double eps) {
                return memory_trial_unencoded(rng, eps, config.rounds);
            },
            config.rounds);
        for (auto& p : baseline.points) result.points.push_back(std::move(p));
    }
    return result;
}

ExperimentResult run_xor_experiment(const ExperimentConfig& config) {
    if (config.n_gates < 1) throw std::invalid_argument("mc-xor: n-gates must be >= 1");
    return run_points(
        config, "mc-xor",
        [&config](Rng& rng, double eps) {
            return xor_trial(rng, eps, config.n_gates, config.method);
        },
        config.n_gates);
}

std::string to_csv(const ExperimentResult& result) {
    std::string out = "experiment,eps,n_or_rounds,trials,failures,rate,ci_low,ci_high,seed,version\n";
    for (const auto& p : result.points) {
        out += p.experiment;
        out += ',';
        out += format_double(p.eps);
        out += ',';
        out += std::to_string(p.n_or_rounds);
        out += ',';
        out += std::to_string(p.trials);
        out += ',';
        out += std::to_string(p.failures);
        out += ',';
        out += format_double(p.rate);
        out += ',';
        out += format_double(p.ci_low);
        out += ',';
        out += format_double(p.ci_high);
        out += ',';
        out += std::to_string(result.config.seed);
        out += ',';
        out += kVersion;
        out += '\n';
    }
    return out;
}

}  // namespace qeclab::experiments
