// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Criteria mirror the project contract: exact code-state and gadget algebra,
// the exhaustive fault sweeps, the analytic layer, and the Monte Carlo
// scaling laws at pinned seeds and tolerances.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "qeclab/experiments.hpp"
#include "qeclab/gadgets.hpp"
#include "qeclab/threshold.hpp"
#include "qeclab/verify.hpp"

namespace {

using namespace qeclab;
using Clock = std::chrono::steady_clock;

int g_failures = 0;

void report(int number, const std::string& name, bool pass, double seconds,
            const std::string& detail = "") {
    std::printf("[%2d] %-58s %s  (%.1f s)%s%s\n", number, name.c_str(), pass ? "PASS" : "FAIL",
                seconds, detail.empty() ? "" : "  ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

bool all_ok(const std::vector<verify::CheckResult>& rs) {
    for (const auto& r : rs)
        if (!r.ok()) return false;
    return true;
}

double ols_slope(const std::vector<std::pair<double, double>>& pts) {
    return experiments::fit_scaling(pts).slope;
}

}  // namespace

int main() {
    const auto t_suite = Clock::now();

    // 1. Hamming exhaustive, under a second.
    {
        const auto t0 = Clock::now();
        const auto r = verify::check_hamming();
        const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
        report(1, "Hamming code: 16 codewords, 112 single-flip decodings", r.ok() && dt < 1.0, dt,
               std::to_string(r.passed) + " checks");
    }

    // 2. Logical state amplitudes, exact.
    {
        const auto t0 = Clock::now();
        const auto r = verify::check_logical_states();
        report(2, "logical |0>/|1> amplitudes (1/sqrt8 on the listed words)", r.ok(),
               std::chrono::duration<double>(Clock::now() - t0).count());
    }

    // 3. Rotated-basis law under bitwise Hadamard.
    {
        const auto t0 = Clock::now();
        const auto r = verify::check_rotated_basis();
        report(3, "bitwise Hadamard maps the basis to (|0> +/- |1>)/sqrt2", r.ok(),
               std::chrono::duration<double>(Clock::now() - t0).count());
    }

    // 4. Recovery oracle: 21 single Paulis under both methods; double errors.
    {
        const auto t0 = Clock::now();
        const bool ok = all_ok({verify::check_extraction_agreement(), verify::check_recovery_oracle(),
                                verify::check_double_errors()});
        report(4, "recovery oracle: 21 Paulis x 2 methods; double-error faults", ok,
               std::chrono::duration<double>(Clock::now() - t0).count());
    }

    // 5. Exhaustive single-fault sweeps over a recovery cycle and FT |0> prep.
    {
        const auto t0 = Clock::now();
        const auto a = verify::check_shor_ancilla_fault_oracle();
        const auto b = verify::check_fault_sweep_recovery();
        const auto c = verify::check_fault_sweep_prepare_zero();
        const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
        report(5, "single-fault sweeps: no logical error from any one fault",
               all_ok({a, b, c}) && dt < 300.0, dt,
               std::to_string(a.passed + b.passed + c.passed) + " fault cases");
    }

    // 6. Toffoli gadget at block size 1: every branch, probabilities sum to 1.
    {
        const auto t0 = Clock::now();
        const auto r = verify::check_toffoli_branches();
        report(6, "Toffoli gadget: 18 inputs x 16 branches, ideal output", r.ok(),
               std::chrono::duration<double>(Clock::now() - t0).count());
    }

    // 7. Rotation gadgets: exact branches plus empirical statistics.
    {
        const auto t0 = Clock::now();
        bool ok = verify::check_rotation_gadgets().ok();

        Rng rng(2027);
        const long trials = 100000;
        long first_try = 0;
        for (long t = 0; t < trials; ++t) {
            sv::PureState s(3);
            s.apply(sv::Gate::h(0));
            DenseEngine eng(s, {}, &rng);
            if (gadgets::rotate_theta0(eng, 0, {1, 2}) == 1) ++first_try;
        }
        const double p58 = 5.0 / 8.0;
        ok = ok && std::abs(static_cast<double>(first_try) / trials - p58) <
                       4.0 * std::sqrt(p58 * (1 - p58) / trials);

        std::array<long, 5> chains{};
        std::vector<int> entry_qubits;  // entries reuse measured-out qubits
        for (int k = 0; k < 40; ++k) entry_qubits.push_back(1 + (k % 5));
        for (long t = 0; t < trials; ++t) {
            sv::PureState s(6);
            s.apply(sv::Gate::h(0));
            DenseEngine eng(s, {}, &rng);
            gadgets::AngleLibrary lib{0.375, entry_qubits};
            const int attempts = gadgets::rotate_from_library(eng, 0, lib);
            for (int n = 1; n <= 4; ++n)
                if (attempts - 1 >= n) ++chains[static_cast<size_t>(n)];
        }
        for (int n = 1; n <= 4; ++n) {
            const double p = std::pow(0.5, n);
            ok = ok && std::abs(static_cast<double>(chains[static_cast<size_t>(n)]) / trials - p) <
                           4.0 * std::sqrt(p * (1 - p) / trials);
        }
        report(7, "rotation gadgets: 5/8 and 2^-n statistics, exact branches", ok,
               std::chrono::duration<double>(Clock::now() - t0).count());
    }

    // 8. Analytic layer.
    {
        const auto t0 = Clock::now();
        const auto r = verify::check_analytic_layer();
        namespace th = qeclab::threshold;
        char detail[128];
        std::snprintf(detail, sizeof detail, "N=8 -> 684, threshold %.4e, K=430 -> %.4e Toffoli",
                      th::threshold_estimate(), th::factoring_resources(430).toffoli_count);
        report(8, "analytic layer: N-sweep, concatenation, resources", r.ok(),
               std::chrono::duration<double>(Clock::now() - t0).count(), detail);
    }

    // 9. Monte Carlo scaling: memory slope 2.0 +/- 0.15; XOR bounded by 684 eps^2.
    {
        const auto t0 = Clock::now();
        experiments::ExperimentConfig mem;
        mem.kind = experiments::ExperimentKind::McMemory;
        mem.eps_points = {3e-4, 1e-3, 3e-3};
        mem.rounds = 1;
        mem.trials = 100000;
        mem.seed = 7;
        mem.include_baseline = false;
        const auto mem_result = experiments::run_memory_experiment(mem);
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : mem_result.points) pts.emplace_back(p.eps, p.rate);
        const double slope = ols_slope(pts);
        const bool slope_ok = slope >= 1.85 && slope <= 2.15;

        experiments::ExperimentConfig xr;
        xr.kind = experiments::ExperimentKind::McXor;
        xr.eps_points = {3e-4, 1e-3};
        xr.n_gates = 8;
        xr.trials = 100000;
        xr.seed = 1;
        const auto xor_result = experiments::run_xor_experiment(xr);
        bool bound_ok = true;
        std::vector<std::pair<double, double>> xor_pts;
        for (const auto& p : xor_result.points) {
            bound_ok =
                bound_ok && p.per_gate_rate() <= threshold::gate_failure_rate(p.n_or_rounds, p.eps);
            xor_pts.emplace_back(p.eps, p.per_gate_rate());
        }
        const double xor_slope =
            std::log(xor_pts[1].second / xor_pts[0].second) / std::log(xor_pts[1].first / xor_pts[0].first);
        const bool xor_slope_ok = xor_slope >= 1.8 && xor_slope <= 2.2;
        const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
        char detail[96];
        std::snprintf(detail, sizeof detail, "memory slope %.3f, xor slope %.3f, per-gate <= 684 eps^2",
                      slope, xor_slope);
        report(9, "Monte Carlo scaling: quadratic memory law, bounded XOR rate",
               slope_ok && bound_ok && xor_slope_ok && dt < 900.0, dt, detail);
    }

    // 10. Leak detection and erasure recovery.
    {
        const auto t0 = Clock::now();
        const auto r = verify::check_leak_gadgets();
        report(10, "leak detection; erasure recovery at all 7 positions", r.ok(),
               std::chrono::duration<double>(Clock::now() - t0).count());
    }

    // 11. Out-of-desk-scale results stay quoted, covered analytically.
    {
        const auto t0 = Clock::now();
        // The full flow-equation thresholds and L >= 2 Monte Carlo are quoted
        // conclusions; the analytic recursion of criterion 8 stands in for them.
        namespace th = qeclab::threshold;
        const bool ok = th::kFlowGateThreshold == 1e-4 && th::kFlowStorageThreshold == 1e-5 &&
                        th::required_levels(1e-6, 1e-5, 1e-12) == 3;
        report(11, "flow-equation headlines documented as quoted, not recomputed", ok,
               std::chrono::duration<double>(Clock::now() - t0).count());
    }

    // 12. Determinism: byte-identical CSV for a fixed seed, any thread count.
    {
        const auto t0 = Clock::now();
        experiments::ExperimentConfig config;
        config.kind = experiments::ExperimentKind::McXor;
        config.eps_points = {1e-3, 3e-3};
        config.n_gates = 8;
        config.trials = 20000;
        config.seed = 99;
        config.jobs = 1;
        const std::string csv1 = experiments::to_csv(experiments::run_xor_experiment(config));
        config.jobs = 5;
        const std::string csv5 = experiments::to_csv(experiments::run_xor_experiment(config));
        config.jobs = 0;
        const std::string csv_all = experiments::to_csv(experiments::run_xor_experiment(config));

        experiments::ExperimentConfig mem;
        mem.kind = experiments::ExperimentKind::McMemory;
        mem.eps_points = {1e-3};
        mem.trials = 20000;
        mem.seed = 99;
        mem.jobs = 2;
        const std::string mem1 = experiments::to_csv(experiments::run_memory_experiment(mem));
        mem.jobs = 7;
        const std::string mem2 = experiments::to_csv(experiments::run_memory_experiment(mem));

        report(12, "determinism: identical CSV across runs and thread counts",
               csv1 == csv5 && csv1 == csv_all && mem1 == mem2,
               std::chrono::duration<double>(Clock::now() - t0).count());
    }

    const double total = std::chrono::duration<double>(Clock::now() - t_suite).count();
    std::printf("acceptance: %s (%d criteria failed, %.1f s total)\n",
                g_failures == 0 ? "all criteria PASS" : "FAILURES", g_failures, total);
    return g_failures == 0 ? 0 : 1;
}
