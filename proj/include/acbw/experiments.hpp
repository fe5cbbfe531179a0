#pragma once

// Seed-reproducible experiment grids over the chain parser, with per-trial
// CSV records and per-cell summaries. Trials are independent (one brain
// each) and may run on a small thread pool; output order is deterministic
// regardless of scheduling.

#include <cstdint>
#include <string>
#include <vector>

#include "acbw/chain.hpp"

namespace acbw {

struct ChainTrialRecord {
    uint32_t n = 0;
    uint32_t k = 0;
    double p = 0.0;
    double beta = 0.0;
    uint32_t chain_len = 0;  // for max-chain rows: the largest length that
                             // parsed fully, with correct_prefix equal to it
    uint32_t trial = 0;
    uint64_t seed = 0;
    uint32_t correct_prefix = 0;
    uint32_t strong = 0;
    uint64_t rounds = 0;
};

struct ChainExperimentConfig {
    std::vector<uint32_t> n_list{10000, 100000};
    uint32_t k = 50;
    double p = 0.1;
    double beta = 0.1;
    std::vector<uint32_t> lengths{3, 4, 5};
    uint32_t trials = 20;
    uint64_t master_seed = 1;
    ChainParams chain{};
};

struct MaxChainExperimentConfig {
    std::vector<uint32_t> n_list{10000, 100000};
    std::vector<uint32_t> k_list{10, 20, 30, 50};
    double p = 0.1;
    double beta = 0.1;
    uint32_t trials = 20;
    uint32_t length_cap = 64;  // search stops here even without a failure
    uint64_t master_seed = 1;
    ChainParams chain{};
};

// Parses one seed-derived permutation of 1..chain_len in a fresh brain and
// scores the readout prefix against it.
ChainTrialRecord run_parse_trial(uint32_t n, uint32_t k, double p, double beta,
                                 uint32_t chain_len, uint32_t trial,
                                 uint64_t seed, const ChainParams& chain);

// Cells are (n, length) pairs in the listed order; one record per trial.
std::vector<ChainTrialRecord> run_chain_experiment(
    const ChainExperimentConfig& config);

// Cells are (n, k) pairs; each trial searches lengths 1, 2, ... until the
// first incomplete parse and records the last full one.
std::vector<ChainTrialRecord> run_maxchain_experiment(
    const MaxChainExperimentConfig& config);

struct CellSummary {
    uint32_t n = 0;
    uint32_t k = 0;
    double p = 0.0;
    double beta = 0.0;
    uint32_t chain_len = 0;
    uint32_t trials = 0;
    double mean_correct = 0.0;
    double std_correct = 0.0;  // sample standard deviation
    double mean_strong = 0.0;
    double std_strong = 0.0;
    double mean_rounds = 0.0;
};

struct MaxChainSummary {
    uint32_t n = 0;
    uint32_t k = 0;
    double p = 0.0;
    double beta = 0.0;
    uint32_t trials = 0;
    double mean_maxchain = 0.0;
    double std_maxchain = 0.0;
};

std::vector<CellSummary> summarize_chain(
    const std::vector<ChainTrialRecord>& records);
std::vector<MaxChainSummary> summarize_maxchain(
    const std::vector<ChainTrialRecord>& records);

// Header: n,k,p,beta,chain_len,trial,seed,correct_prefix,strong,rounds
std::string records_csv(const std::vector<ChainTrialRecord>& records);
std::string summary_csv(const std::vector<CellSummary>& cells);
std::string summary_csv(const std::vector<MaxChainSummary>& cells);

void write_file(const std::string& path, const std::string& text);

// Per-trial seed derivation: cell index in enumeration order folded into the
// master seed, then the trial index.
uint64_t trial_seed(uint64_t master_seed, uint64_t cell_index, uint32_t trial);

// ACBW_THREADS when set (min 1), else the hardware count.
uint32_t thread_count();

}  // namespace acbw
