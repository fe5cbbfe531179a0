#include "acbw/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "acbw/rng.hpp"

namespace acbw {

namespace {

std::vector<BlockId> trial_chain(uint32_t chain_len, uint64_t seed) {
    std::vector<BlockId> chain(chain_len);
    for (uint32_t i = 0; i < chain_len; ++i) chain[i] = i + 1;
    rng::Xoshiro256ss gen(rng::mix(seed, 0x51ACu));
    for (uint32_t i = chain_len; i > 1; --i) {
        uint32_t j = gen.bounded(i);
        std::swap(chain[i - 1], chain[j]);
    }
    return chain;
}

// Deterministic fan-out: jobs fill a preallocated slot each, so completion
// order cannot reorder results.
void run_jobs(size_t count, const std::function<void(size_t)>& job) {
    uint32_t workers = std::min<uint32_t>(thread_count(), uint32_t(count));
    if (workers <= 1) {
        for (size_t i = 0; i < count; ++i) job(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (uint32_t w = 0; w < workers; ++w)
        pool.emplace_back([&]() {
            for (size_t i = next.fetch_add(1); i < count;
                 i = next.fetch_add(1))
                job(i);
        });
    for (auto& t : pool) t.join();
}

double mean_of(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return xs.empty() ? 0.0 : s / double(xs.size());
}

double sample_std(const std::vector<double>& xs, double mean) {
    if (xs.size() < 2) return 0.0;
    double s = 0.0;
    for (double x : xs) s += (x - mean) * (x - mean);
    return std::sqrt(s / double(xs.size() - 1));
}

}  // namespace

ChainTrialRecord run_parse_trial(uint32_t n, uint32_t k, double p, double beta,
                                 uint32_t chain_len, uint32_t trial,
                                 uint64_t seed, const ChainParams& chain) {
    ChainTrialRecord rec;
    rec.n = n;
    rec.k = k;
    rec.p = p;
    rec.beta = beta;
    rec.chain_len = chain_len;
    rec.trial = trial;
    rec.seed = seed;

    auto stack = trial_chain(chain_len, seed);
    Brain b(p, seed, beta);
    AreaId blocks = b.add_explicit_area("blocks", chain_len, k);
    auto regs = make_stack_registers(b, blocks, n, k, "s0");
    auto rep = parse_stack(b, regs, stack, chain);
    auto stats = readout_with_stats(b, rep, chain_len, chain);

    uint32_t prefix = 0;
    while (prefix < stats.blocks.size() && prefix < stack.size() &&
           stats.blocks[prefix] == stack[prefix])
        ++prefix;
    rec.correct_prefix = prefix;
    rec.strong = stats.strong_assemblies;
    rec.rounds = rep.rounds_total;
    return rec;
}

std::vector<ChainTrialRecord> run_chain_experiment(
    const ChainExperimentConfig& config) {
    struct Job {
        uint32_t n, length, trial;
        uint64_t seed;
    };
    std::vector<Job> jobs;
    uint64_t cell = 0;
    for (uint32_t n : config.n_list)
        for (uint32_t length : config.lengths) {
            for (uint32_t t = 0; t < config.trials; ++t)
                jobs.push_back(
                    {n, length, t, trial_seed(config.master_seed, cell, t)});
            ++cell;
        }
    std::vector<ChainTrialRecord> records(jobs.size());
    run_jobs(jobs.size(), [&](size_t i) {
        const Job& j = jobs[i];
        records[i] = run_parse_trial(j.n, config.k, config.p, config.beta,
                                     j.length, j.trial, j.seed, config.chain);
    });
    return records;
}

std::vector<ChainTrialRecord> run_maxchain_experiment(
    const MaxChainExperimentConfig& config) {
    struct Job {
        uint32_t n, k, trial;
        uint64_t seed;
    };
    std::vector<Job> jobs;
    uint64_t cell = 0;
    for (uint32_t n : config.n_list)
        for (uint32_t k : config.k_list) {
            for (uint32_t t = 0; t < config.trials; ++t)
                jobs.push_back(
                    {n, k, t, trial_seed(config.master_seed, cell, t)});
            ++cell;
        }
    std::vector<ChainTrialRecord> records(jobs.size());
    run_jobs(jobs.size(), [&](size_t i) {
        const Job& j = jobs[i];
        ChainTrialRecord best;
        best.n = j.n;
        best.k = j.k;
        best.p = config.p;
        best.beta = config.beta;
        best.trial = j.trial;
        best.seed = j.seed;
        for (uint32_t len = 1; len <= config.length_cap; ++len) {
            auto rec =
                run_parse_trial(j.n, j.k, config.p, config.beta, len, j.trial,
                                rng::mix(j.seed, len), config.chain);
            if (rec.correct_prefix < len) break;
            best = rec;
            best.trial = j.trial;
            best.seed = j.seed;
        }
        records[i] = best;
    });
    return records;
}

std::vector<CellSummary> summarize_chain(
    const std::vector<ChainTrialRecord>& records) {
    using Key = std::tuple<uint32_t, uint32_t, double, double, uint32_t>;
    std::map<Key, std::vector<const ChainTrialRecord*>> cells;
    for (const auto& r : records)
        cells[{r.n, r.k, r.p, r.beta, r.chain_len}].push_back(&r);
    std::vector<CellSummary> out;
    for (const auto& [key, rs] : cells) {
        CellSummary c;
        std::tie(c.n, c.k, c.p, c.beta, c.chain_len) = key;
        c.trials = uint32_t(rs.size());
        std::vector<double> correct, strong, rounds;
        for (const auto* r : rs) {
            correct.push_back(double(r->correct_prefix));
            strong.push_back(double(r->strong));
            rounds.push_back(double(r->rounds));
        }
        c.mean_correct = mean_of(correct);
        c.std_correct = sample_std(correct, c.mean_correct);
        c.mean_strong = mean_of(strong);
        c.std_strong = sample_std(strong, c.mean_strong);
        c.mean_rounds = mean_of(rounds);
        out.push_back(c);
    }
    return out;
}

std::vector<MaxChainSummary> summarize_maxchain(
    const std::vector<ChainTrialRecord>& records) {
    using Key = std::tuple<uint32_t, uint32_t, double, double>;
    std::map<Key, std::vector<double>> cells;
    for (const auto& r : records)
        cells[{r.n, r.k, r.p, r.beta}].push_back(double(r.chain_len));
    std::vector<MaxChainSummary> out;
    for (const auto& [key, lens] : cells) {
        MaxChainSummary c;
        std::tie(c.n, c.k, c.p, c.beta) = key;
        c.trials = uint32_t(lens.size());
        c.mean_maxchain = mean_of(lens);
        c.std_maxchain = sample_std(lens, c.mean_maxchain);
        out.push_back(c);
    }
    return out;
}

std::string records_csv(const std::vector<ChainTrialRecord>& records) {
    std::ostringstream out;
    out << "n,k,p,beta,chain_len,trial,seed,correct_prefix,strong,rounds\n";
    for (const auto& r : records)
        out << r.n << ',' << r.k << ',' << r.p << ',' << r.beta << ','
            << r.chain_len << ',' << r.trial << ',' << r.seed << ','
            << r.correct_prefix << ',' << r.strong << ',' << r.rounds << '\n';
    return out.str();
}

std::string summary_csv(const std::vector<CellSummary>& cells) {
    std::ostringstream out;
    out << "n,k,p,beta,chain_len,trials,mean_correct,std_correct,"
           "mean_strong,std_strong,mean_rounds\n";
    for (const auto& c : cells)
        out << c.n << ',' << c.k << ',' << c.p << ',' << c.beta << ','
            << c.chain_len << ',' << c.trials << ',' << c.mean_correct << ','
            << c.std_correct << ',' << c.mean_strong << ',' << c.std_strong
            << ',' << c.mean_rounds << '\n';
    return out.str();
}

std::string summary_csv(const std::vector<MaxChainSummary>& cells) {
    std::ostringstream out;
    out << "n,k,p,beta,trials,mean_maxchain,std_maxchain\n";
    for (const auto& c : cells)
        out << c.n << ',' << c.k << ',' << c.p << ',' << c.beta << ','
            << c.trials << ',' << c.mean_maxchain << ',' << c.std_maxchain
            << '\n';
    return out.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

uint64_t trial_seed(uint64_t master_seed, uint64_t cell_index,
                    uint32_t trial) {
    return rng::mix(rng::mix(master_seed, cell_index), trial);
}

uint32_t thread_count() {
    if (const char* env = std::getenv("ACBW_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return uint32_t(v);
    }
    uint32_t hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

}  // namespace acbw
