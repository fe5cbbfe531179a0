#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "acbw/experiments.hpp"
#include "acbw/instances.hpp"
#include "acbw/neural_planner.hpp"
#include "acbw/planner.hpp"

namespace {

constexpr int kExitFailure = 1;    // plan invalid or readouts incomplete
constexpr int kExitBadInput = 2;   // task or plan file did not parse

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-")
        std::cout << text;
    else
        acbw::write_file(out_path, text);
}

struct PlanOptions {
    std::string task_path;
    std::string algo = "approx";
    std::string mode = "symbolic";
    std::string out = "-";
    acbw::NeuralPlannerParams neural{};
};

int cmd_plan(const PlanOptions& opt) {
    acbw::TaskFile task;
    try {
        task = acbw::parse_task(slurp(opt.task_path));
    } catch (const std::invalid_argument& e) {
        std::cerr << "task file: " << e.what() << "\n";
        return kExitBadInput;
    }
    auto algo = opt.algo == "naive" ? acbw::Provenance::naive
                                    : acbw::Provenance::two_approx;

    acbw::Plan plan;
    bool neural_ok = true;
    if (opt.mode == "neural") {
        auto result = acbw::neural_plan(task.initial, task.goal, algo,
                                        opt.neural);
        plan = result.plan;
        neural_ok = result.readouts_complete;
        std::cout.setf(std::ios::fixed);
        if (result.blocks_processed > 0)
            std::cout << std::setprecision(1) << "rounds per block: "
                      << double(result.rounds_total) /
                             double(result.blocks_processed)
                      << "\n";
        std::cout << "readouts: "
                  << (neural_ok ? "complete" : "incomplete")
                  << " (min confidence " << std::setprecision(2)
                  << result.min_confidence << ")\n";
        std::cout.unsetf(std::ios::fixed);
        if (!neural_ok)
            for (const auto& line : result.trace)
                std::cerr << "trace: " << line << "\n";
    } else {
        plan = algo == acbw::Provenance::naive
                   ? acbw::plan_naive(task.initial, task.goal)
                   : acbw::plan_2approx(task.initial, task.goal);
    }

    int failure = -1;
    bool valid = acbw::validate_plan(task.initial, task.goal, plan, &failure);
    std::cout << "moves: " << plan.moves.size() << "\n";
    std::cout << "misplaced: " << acbw::misplaced_count(task.initial, task.goal)
              << "\n";
    std::cout << "valid: " << (valid ? "yes" : "no");
    if (!valid && failure >= 0) std::cout << " (fails at move " << failure << ")";
    std::cout << "\n";
    emit(opt.out, acbw::plan_to_text(plan));
    return (valid && neural_ok) ? 0 : kExitFailure;
}

int cmd_validate(const std::string& task_path, const std::string& plan_path) {
    acbw::TaskFile task;
    acbw::Plan plan;
    try {
        task = acbw::parse_task(slurp(task_path));
        plan = acbw::plan_from_text(slurp(plan_path));
    } catch (const std::invalid_argument& e) {
        std::cerr << "parse: " << e.what() << "\n";
        return kExitBadInput;
    }
    int failure = -1;
    if (acbw::validate_plan(task.initial, task.goal, plan, &failure)) {
        std::cout << "valid: yes (" << plan.moves.size() << " moves)\n";
        return 0;
    }
    if (failure >= 0)
        std::cout << "valid: no, move " << failure << " does not apply\n";
    else
        std::cout << "valid: no, result differs from the goal\n";
    return kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Assembly-calculus blocks-world planner and experiments"};
    app.require_subcommand(1);

    PlanOptions plan_opt;
    auto* plan_cmd =
        app.add_subcommand("plan", "Plan one task file and emit the move list");
    plan_cmd->add_option("task", plan_opt.task_path, "task file")->required();
    plan_cmd->add_option("--algo", plan_opt.algo, "naive or approx")
        ->check(CLI::IsMember({"naive", "approx"}));
    plan_cmd->add_option("--mode", plan_opt.mode, "symbolic or neural")
        ->check(CLI::IsMember({"symbolic", "neural"}));
    plan_cmd->add_option("--out", plan_opt.out, "plan file path, - for stdout");
    plan_cmd->add_option("--n", plan_opt.neural.n, "neurons per area");
    plan_cmd->add_option("--k", plan_opt.neural.k, "assembly size");
    plan_cmd->add_option("--p", plan_opt.neural.p, "connection probability");
    plan_cmd->add_option("--beta", plan_opt.neural.beta, "plasticity");
    plan_cmd->add_option("--seed", plan_opt.neural.seed, "brain seed");

    std::string vtask, vplan;
    auto* val_cmd =
        app.add_subcommand("validate", "Check a plan file against a task file");
    val_cmd->add_option("task", vtask, "task file")->required();
    val_cmd->add_option("plan", vplan, "plan file")->required();

    uint32_t gen_blocks = 10, gen_stacks = 5, gen_height = 7;
    uint64_t gen_seed = 1;
    std::string gen_out = "-";
    auto* gen_cmd = app.add_subcommand("gen", "Emit a random task file");
    gen_cmd->add_option("--blocks", gen_blocks, "number of blocks");
    gen_cmd->add_option("--max-stacks", gen_stacks, "stack count bound");
    gen_cmd->add_option("--max-height", gen_height, "stack height bound");
    gen_cmd->add_option("--seed", gen_seed, "generator seed");
    gen_cmd->add_option("--out", gen_out, "output path, - for stdout");

    acbw::ChainExperimentConfig chain_cfg;
    std::string chain_out = "chain.csv";
    auto* chain_cmd = app.add_subcommand(
        "chain-exp", "Parse+readout grid over (n, chain length)");
    chain_cmd->add_option("--n", chain_cfg.n_list, "neuron counts");
    chain_cmd->add_option("--k", chain_cfg.k, "assembly size");
    chain_cmd->add_option("--p", chain_cfg.p, "connection probability");
    chain_cmd->add_option("--beta", chain_cfg.beta, "plasticity");
    chain_cmd->add_option("--lengths", chain_cfg.lengths, "chain lengths");
    chain_cmd->add_option("--trials", chain_cfg.trials, "trials per cell");
    chain_cmd->add_option("--seed", chain_cfg.master_seed, "master seed");
    chain_cmd->add_option("--out", chain_out, "per-trial CSV path");

    acbw::MaxChainExperimentConfig max_cfg;
    std::string max_out = "maxchain.csv";
    auto* max_cmd = app.add_subcommand(
        "maxchain-exp", "Largest fully parsed chain over (n, k)");
    max_cmd->add_option("--n", max_cfg.n_list, "neuron counts");
    max_cmd->add_option("--k", max_cfg.k_list, "assembly sizes");
    max_cmd->add_option("--p", max_cfg.p, "connection probability");
    max_cmd->add_option("--beta", max_cfg.beta, "plasticity");
    max_cmd->add_option("--trials", max_cfg.trials, "trials per cell");
    max_cmd->add_option("--cap", max_cfg.length_cap, "length search cap");
    max_cmd->add_option("--seed", max_cfg.master_seed, "master seed");
    max_cmd->add_option("--out", max_out, "per-trial CSV path");

    acbw::ChainExperimentConfig strong_cfg;
    std::string strong_out = "strong.csv";
    auto* strong_cmd = app.add_subcommand(
        "strong-exp", "Strong-assembly counts over the chain grid");
    strong_cmd->add_option("--n", strong_cfg.n_list, "neuron counts");
    strong_cmd->add_option("--k", strong_cfg.k, "assembly size");
    strong_cmd->add_option("--p", strong_cfg.p, "connection probability");
    strong_cmd->add_option("--beta", strong_cfg.beta, "plasticity");
    strong_cmd->add_option("--lengths", strong_cfg.lengths, "chain lengths");
    strong_cmd->add_option("--trials", strong_cfg.trials, "trials per cell");
    strong_cmd->add_option("--seed", strong_cfg.master_seed, "master seed");
    strong_cmd->add_option("--out", strong_out, "per-trial CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*plan_cmd) return cmd_plan(plan_opt);
        if (*val_cmd) return cmd_validate(vtask, vplan);
        if (*gen_cmd) {
            auto task =
                acbw::random_task(gen_blocks, gen_stacks, gen_height, gen_seed);
            emit(gen_out, acbw::serialize_task(task));
            return 0;
        }
        auto run_grid = [](const acbw::ChainExperimentConfig& cfg,
                           const std::string& out) {
            auto records = acbw::run_chain_experiment(cfg);
            acbw::write_file(out, acbw::records_csv(records));
            auto summary = acbw::summary_csv(acbw::summarize_chain(records));
            acbw::write_file(out + ".summary.csv", summary);
            std::cout << summary;
            return 0;
        };
        if (*chain_cmd) return run_grid(chain_cfg, chain_out);
        if (*strong_cmd) return run_grid(strong_cfg, strong_out);
        if (*max_cmd) {
            auto records = acbw::run_maxchain_experiment(max_cfg);
            acbw::write_file(max_out, acbw::records_csv(records));
            auto summary =
                acbw::summary_csv(acbw::summarize_maxchain(records));
            acbw::write_file(max_out + ".summary.csv", summary);
            std::cout << summary;
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return 0;
}
