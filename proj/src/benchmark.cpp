#include "ddna/benchmark.hpp"

#include <malloc.h>
#include <unistd.h>
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "ddna/detection.hpp"
#include "ddna/lcs.hpp"
#include "ddna/rng.hpp"
#include "ddna/synthetic.hpp"

namespace ddna {

namespace {

std::uint64_t read_status_kb(const char* key) {
    std::ifstream in("/proc/self/status");
    std::string line;
    const std::size_t key_len = std::strlen(key);
    while (std::getline(in, line)) {
        if (line.compare(0, key_len, key) == 0) {
            std::uint64_t kb = 0;
            std::sscanf(line.c_str() + key_len, " %llu",
                        reinterpret_cast<unsigned long long*>(&kb));
            return kb;
        }
    }
    return 0;
}

// Resets the kernel's peak-RSS counter for this process; not permitted in
// every environment, so callers fall back to live-RSS deltas.
bool reset_peak_rss() {
    std::FILE* f = std::fopen("/proc/self/clear_refs", "w");
    if (!f) return false;
    const bool ok = std::fputs("5", f) >= 0;
    return (std::fclose(f) == 0) && ok;
}

struct RunResult {
    double seconds = 0;
    double peak_bytes = 0;
};

// Full pipeline on generated data: synthesize timelines, encode, index,
// solve the curve, split. Samples memory while the structures are alive.
RunResult run_pipeline(int accounts, int length, AlphabetId alpha, std::uint64_t seed,
                       bool forked) {
    GeneratorConfig cfg;
    cfg.alphabet_id = alpha;
    cfg.len_min = cfg.len_max = length;
    cfg.template_length = std::min(40, length);
    cfg.noise_rate = 0.05;

    const int n_bots = accounts / 2;
    cfg.n_accounts = std::max(1, n_bots);
    cfg.seed = derive_seed(seed, 11);
    const AccountGroup bots = gen_bots(cfg);
    cfg.n_accounts = std::max(1, accounts - n_bots);
    cfg.seed = derive_seed(seed, 13);
    const AccountGroup humans = gen_humans(cfg);

    std::vector<std::vector<ActionRecord>> timelines;
    timelines.reserve(accounts);
    for (const DnaSequence& s : bots.sequences)
        timelines.push_back(timeline_from_sequence(s));
    for (const DnaSequence& s : humans.sequences)
        timelines.push_back(timeline_from_sequence(s));

    // Return freed arena pages to the kernel first: a forked child inherits
    // the parent's resident heap, and allocations served from those pages
    // would not show up as RSS growth.
    malloc_trim(0);
    const std::uint64_t rss_before_kb = read_status_kb("VmRSS:");
    const bool peak_reset = forked && reset_peak_rss();

    const auto t0 = std::chrono::steady_clock::now();
    AccountGroup group;
    group.alphabet_id = alpha;
    for (const auto& tl : timelines)
        group.sequences.push_back(encode_sequence(tl, alpha));
    const LcsCurve curve = common_substring_curve(build_index(group));
    if (group.size() >= 3) {
        const SplitResult split = unsupervised_split(curve);
        (void)split;
    }
    const auto t1 = std::chrono::steady_clock::now();

    const std::uint64_t rss_after_kb = read_status_kb("VmRSS:");
    std::uint64_t peak_kb = rss_after_kb > rss_before_kb ? rss_after_kb - rss_before_kb : 0;
    if (peak_reset) {
        const std::uint64_t hwm_kb = read_status_kb("VmHWM:");
        if (hwm_kb > rss_before_kb) peak_kb = std::max(peak_kb, hwm_kb - rss_before_kb);
    }

    RunResult r;
    r.seconds = std::chrono::duration<double>(t1 - t0).count();
    r.peak_bytes = static_cast<double>(peak_kb) * 1024.0;
    return r;
}

// One measurement in a fresh child so peak readings cannot inherit a larger
// earlier cell's high-water mark.
RunResult run_forked(int accounts, int length, AlphabetId alpha, std::uint64_t seed) {
    int fd[2];
    if (pipe(fd) != 0) return run_pipeline(accounts, length, alpha, seed, false);
    const pid_t pid = fork();
    if (pid < 0) {
        close(fd[0]);
        close(fd[1]);
        return run_pipeline(accounts, length, alpha, seed, false);
    }
    if (pid == 0) {
        close(fd[0]);
        const RunResult r = run_pipeline(accounts, length, alpha, seed, true);
        ssize_t unused = write(fd[1], &r, sizeof(r));
        (void)unused;
        close(fd[1]);
        _exit(0);
    }
    close(fd[1]);
    RunResult r;
    const ssize_t got = read(fd[0], &r, sizeof(r));
    close(fd[0]);
    int status = 0;
    waitpid(pid, &status, 0);
    if (got != static_cast<ssize_t>(sizeof(r)))
        return run_pipeline(accounts, length, alpha, seed, false);
    return r;
}

}  // namespace

std::vector<BenchmarkCell> benchmark(const std::vector<int>& account_counts,
                                     const std::vector<int>& sequence_lengths,
                                     const std::vector<AlphabetId>& alphabets,
                                     int repeats,
                                     std::uint64_t seed) {
    if (repeats < 1) throw ConfigError("at least one repeat required");
    for (int a : account_counts)
        if (a < 2) throw ConfigError("account counts must be at least 2");
    for (int l : sequence_lengths)
        if (l < 1) throw ConfigError("sequence lengths must be positive");

    std::vector<BenchmarkCell> cells;
    std::uint64_t run_index = 0;
    for (AlphabetId alpha : alphabets) {
        for (int length : sequence_lengths) {
            for (int accounts : account_counts) {
                // warmup run populates caches/allocator and is discarded
                run_forked(accounts, length, alpha, derive_seed(seed, run_index++));
                double sum_s = 0, sumsq_s = 0, sum_b = 0, sumsq_b = 0;
                for (int rep = 0; rep < repeats; ++rep) {
                    const RunResult r =
                        run_forked(accounts, length, alpha, derive_seed(seed, run_index++));
                    sum_s += r.seconds;
                    sumsq_s += r.seconds * r.seconds;
                    sum_b += r.peak_bytes;
                    sumsq_b += r.peak_bytes * r.peak_bytes;
                }
                BenchmarkCell cell;
                cell.accounts = accounts;
                cell.sequence_length = length;
                cell.alphabet_id = alpha;
                cell.mean_seconds = sum_s / repeats;
                cell.std_seconds =
                    std::sqrt(std::max(0.0, sumsq_s / repeats - cell.mean_seconds * cell.mean_seconds));
                cell.mean_peak_bytes = sum_b / repeats;
                cell.std_peak_bytes = std::sqrt(
                    std::max(0.0, sumsq_b / repeats - cell.mean_peak_bytes * cell.mean_peak_bytes));
                cells.push_back(cell);
            }
        }
    }
    return cells;
}

}  // namespace ddna
