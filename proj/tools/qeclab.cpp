// qeclab: a desk-scale laboratory for fault-tolerant error correction on the
// 7-qubit code. Subcommands:
//   verify     run the deterministic oracle suite (exit nonzero on any failure)
//   mc-memory  Monte Carlo logical error rate of the encoded memory
//   mc-xor     Monte Carlo per-gate failure of the XOR network
//   flow-table the analytic N-sweep, threshold, and recovery-failure rates
//   resources  factoring resource estimate for a K-bit input
//   leak-demo  leak detection and erasure recovery walkthrough

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "qeclab/experiments.hpp"
#include "qeclab/gadgets.hpp"
#include "qeclab/threshold.hpp"
#include "qeclab/verify.hpp"
#include "qeclab/version.hpp"

namespace {

using namespace qeclab;

int run_verify(bool fast, int jobs) {
    const auto results = verify::run_all(!fast, jobs);
    long passed = 0, failed = 0;
    for (const auto& r : results) {
        std::printf("%-60s %6ld passed %5ld failed%s%s\n", r.name.c_str(), r.passed, r.failed,
                    r.note.empty() ? "" : "  -- ", r.note.c_str());
        passed += r.passed;
        failed += r.failed;
    }
    std::printf("total: %ld checks passed, %ld failed\n", passed, failed);
    return failed == 0 ? 0 : 1;
}

void emit(const experiments::ExperimentResult& result, const std::string& out_path) {
    const std::string csv = experiments::to_csv(result);
    if (out_path.empty()) {
        std::fputs(csv.c_str(), stdout);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw CLI::ValidationError("--out", "cannot open " + out_path);
        out << csv;
        std::fprintf(stderr, "wrote %zu points to %s\n", result.points.size(), out_path.c_str());
    }
    for (const auto& p : result.points) {
        if (p.experiment == "mc-xor" && p.n_or_rounds > 0) {
            std::fprintf(stderr, "eps=%g: per-gate failure %.3e (bound %.3e)\n", p.eps,
                         p.per_gate_rate(), threshold::gate_failure_rate(p.n_or_rounds, p.eps));
        }
    }
}

void print_flow_table(double eps_xor) {
    namespace th = qeclab::threshold;
    std::printf("XOR-network flow table at eps_xor = %g\n", eps_xor);
    std::printf("  syndrome error rate   12 eps      = %.6e\n", th::syndrome_error_rate(eps_xor));
    std::printf("  recovery failure      1440 eps^2  = %.6e\n", th::recovery_failure_rate(eps_xor));
    std::printf("\n  %3s  %12s  %14s\n", "N", "coefficient", "eps_fail");
    const auto opt = th::optimize_n(eps_xor);
    for (int n = 1; n <= 16; ++n) {
        const double coeff = th::gate_failure_rate(n, 1.0);
        std::printf("  %3d  %12.2f  %14.6e%s\n", n, coeff, th::gate_failure_rate(n, eps_xor),
                    n == opt.n ? "   <- minimum" : "");
    }
    std::printf("\n  threshold estimate: eps_xor < 1/%d = %.4e\n",
                static_cast<int>(opt.coefficient), th::threshold_estimate());
    const auto oracle = th::repetition_failure_oracle();
    std::printf("  agree-twice combinatorics: q^2 coefficient %g under the documented model\n",
                oracle.q2_coefficient);
    std::printf("  (the quoted constant is %g; recovery_failure_rate keeps it)\n",
                oracle.quoted_coefficient);
    std::printf(
        "  full flow-equation thresholds (quoted, not recomputed): gates ~%.0e, storage ~%.0e\n",
        th::kFlowGateThreshold, th::kFlowStorageThreshold);
}

void print_resources(double k, double eps_gate, double eps_store) {
    const auto r = threshold::factoring_resources(k, eps_gate, eps_store);
    std::printf("factoring a %.0f-bit number at eps_gate=%g, eps_store=%g:\n", k, eps_gate,
                eps_store);
    std::printf("  Toffoli gates        38 K^3      = %.6e\n", r.toffoli_count);
    std::printf("  encoded qubits       5 K         = %.0f\n", r.encoded_qubits);
    std::printf("  concatenation levels             = %d\n", r.levels);
    std::printf("  block size           7^L         = %.0f\n", r.block_size);
    std::printf("  physical qubits (x%.1f ancilla)   = %.3e  (order 10^%d)\n",
                threshold::kAncillaOverheadFactor, r.physical_qubits, r.physical_qubits_order);
}

void leak_demo(uint64_t seed) {
    Rng rng(seed);
    const auto block = steane::CodeBlock::contiguous(0);
    const std::vector<int> anc = {7, 8, 9, 10, 11};
    const int detect_anc = 12;

    sv::PureState state(13);
    steane::inject_logical(state, block, 0.6, 0.8);
    const sv::PureState reference = state;
    DenseEngine eng(state, {}, &rng);

    const int leaked_position = 1 + static_cast<int>(rng.below(7));
    eng.sim().set_leaked(block.at(leaked_position), true);
    std::printf("encoded 0.6|0>+0.8|1>; leaking position %d\n", leaked_position);

    int found = 0;
    for (int p = 1; p <= 7; ++p) {
        const int outcome = gadgets::leak_detect(eng, block.at(p), detect_anc);
        std::printf("  leak check position %d -> %d%s\n", p, outcome,
                    outcome == 0 ? "  (leaked)" : "");
        if (outcome == 0) found = p;
    }
    gadgets::recover_erasure(eng, block, found, steane::Workspace{anc});
    // Clear the measured ancillas before comparing against the reference.
    for (int q : anc)
        if (eng.measure(q) == 1) eng.x(q);
    if (eng.measure(detect_anc) == 1) eng.x(detect_anc);
    std::printf("erasure recovery at position %d: fidelity with original = %.12f\n", found,
                sv::fidelity(state, reference));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fault-tolerant quantum error correction laboratory (Steane 7-qubit code)"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run the deterministic oracle suite");
    bool fast = false;
    int verify_jobs = 0;
    verify_cmd->add_flag("--fast", fast, "skip the exhaustive single-fault sweeps");
    verify_cmd->add_option("--jobs", verify_jobs, "worker threads (default: all cores)");

    // shared Monte Carlo options
    experiments::ExperimentConfig config;
    std::string eps_store_list = "3e-4,1e-3,3e-3";
    std::string eps_xor_list = "3e-4,1e-3";
    std::string method = "shor";
    std::string out_path;
    double eps_gate = -1.0;
    bool no_baseline = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--trials", config.trials, "Monte Carlo trials per point");
        cmd->add_option("--seed", config.seed, "master seed");
        cmd->add_option("--jobs", config.jobs, "worker threads (default: all cores)");
        cmd->add_option("--method", method, "syndrome extraction method: shor|steane")
            ->check(CLI::IsMember({"shor", "steane"}));
        cmd->add_option("--out", out_path, "CSV output path (default: stdout)");
    };

    auto* mem_cmd = app.add_subcommand("mc-memory", "encoded-memory logical error rate");
    add_common(mem_cmd);
    mem_cmd->add_option("--eps-store", eps_store_list, "comma-separated storage rates");
    mem_cmd->add_option("--eps-gate", eps_gate,
                        "gate error rate for all gate kinds (default: tied to eps-store)");
    mem_cmd->add_option("--rounds", config.rounds, "noise+recovery rounds per trial");
    mem_cmd->add_flag("--no-baseline", no_baseline, "skip the bare-qubit comparison rows");

    auto* xor_cmd = app.add_subcommand("mc-xor", "XOR-network per-gate failure rate");
    add_common(xor_cmd);
    xor_cmd->add_option("--eps-xor", eps_xor_list, "comma-separated XOR gate rates");
    xor_cmd->add_option("--n-gates", config.n_gates, "transversal XORs between recoveries");

    auto* flow_cmd = app.add_subcommand("flow-table", "analytic N-sweep and threshold");
    double flow_eps = 1e-3;
    flow_cmd->add_option("--eps-xor", flow_eps, "XOR error rate for the table");

    auto* res_cmd = app.add_subcommand("resources", "factoring resource estimate");
    double k_bits = 430;
    double res_eps_gate = 1e-6, res_eps_store = 1e-6;
    res_cmd->add_option("--k", k_bits, "bits of the number to factor");
    res_cmd->add_option("--eps-gate", res_eps_gate, "physical gate error rate");
    res_cmd->add_option("--eps-store", res_eps_store, "physical storage error rate");

    auto* leak_cmd = app.add_subcommand("leak-demo", "leak detection walkthrough");
    uint64_t leak_seed = 1;
    leak_cmd->add_option("--seed", leak_seed, "demo seed");

    CLI11_PARSE(app, argc, argv);

    const auto parse_list = [](const std::string& s) {
        std::vector<double> out;
        size_t pos = 0;
        while (pos < s.size()) {
            size_t next = s.find(',', pos);
            if (next == std::string::npos) next = s.size();
            out.push_back(std::stod(s.substr(pos, next - pos)));
            pos = next + 1;
        }
        return out;
    };

    try {
        if (verify_cmd->parsed()) return run_verify(fast, verify_jobs);
        config.method = method == "steane" ? steane::Method::Steane : steane::Method::Shor;
        if (mem_cmd->parsed()) {
            config.kind = experiments::ExperimentKind::McMemory;
            config.eps_points = parse_list(eps_store_list);
            config.eps_gate = eps_gate;
            config.include_baseline = !no_baseline;
            emit(experiments::run_memory_experiment(config), out_path);
        } else if (xor_cmd->parsed()) {
            config.kind = experiments::ExperimentKind::McXor;
            config.eps_points = parse_list(eps_xor_list);
            emit(experiments::run_xor_experiment(config), out_path);
        } else if (flow_cmd->parsed()) {
            print_flow_table(flow_eps);
        } else if (res_cmd->parsed()) {
            print_resources(k_bits, res_eps_gate, res_eps_store);
        } else if (leak_cmd->parsed()) {
            leak_demo(leak_seed);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
