#pragma once
//
// Seeded generators for human-like and bot-like DNA corpora, the permutation
// robustness experiment, and the class-imbalance sweep. Every operation is
// deterministic for a fixed seed; per-trial streams derive from
// (master seed, trial index).
//

#include <cstdint>
#include <string>
#include <vector>

#include "ddna/detection.hpp"
#include "ddna/dna.hpp"
#include "ddna/lcs.hpp"

namespace ddna {

struct GeneratorConfig {
    AlphabetId alphabet_id = AlphabetId::Type3;
    int n_accounts = 0;
    int len_min = 180;
    int len_max = 220;
    int template_length = 40;   // bots only
    double noise_rate = 0.05;   // per-position template corruption
    double dominant_base_prob = 0.7;  // bot filler skew
    std::uint64_t seed = 0;
    std::string id_prefix;      // defaults to "hum"/"bot"
};

// I.i.d. uniform symbols, lengths uniform in [len_min, len_max].
AccountGroup gen_humans(const GeneratorConfig& config);

// One shared random template (corrupted once: each position re-rolled with
// probability noise_rate), embedded verbatim in every sequence at a per-bot
// random offset; filler skewed toward the alphabet's first base.
AccountGroup gen_bots(const GeneratorConfig& config);

// The exact template variant gen_bots embeds for this config.
std::string bot_template(const GeneratorConfig& config);

// Uniformly shuffles every sequence's characters; base histograms invariant.
AccountGroup permuted_copy(const AccountGroup& group, std::uint64_t seed);

// Rebuilds timelines whose encoding reproduces the given sequences
// (timestamps 0..n-1); used by the benchmark pipeline and round-trip tests.
std::vector<ActionRecord> timeline_from_sequence(const DnaSequence& sequence);

struct PermutationStats {
    int group_size = 0;           // M
    std::vector<int> original;    // LCS[k], k = 2..M
    std::vector<double> mean;     // mean permuted LCS[k]
    std::vector<double> stddev;   // population std over trials
};

// `trials` independent shuffles of the whole group, each re-solved for its
// LCS curve; per-k mean and standard deviation over the trials.
PermutationStats permute_sequences(const AccountGroup& group, int trials,
                                   std::uint64_t seed);

struct ImbalancePoint {
    double ratio = 0;
    double mean_mcc = 0;
    double std_mcc = 0;
};

// Per run: ratio*total bots plus humans for the remainder, unsupervised
// split, MCC against the planted labels; mean/std over `runs` per ratio.
std::vector<ImbalancePoint> imbalance_experiment(const std::vector<double>& ratios,
                                                 int total_accounts,
                                                 int runs,
                                                 std::uint64_t seed,
                                                 const GeneratorConfig& shape = {},
                                                 int window = kDefaultSmoothWindow,
                                                 double min_prominence = kAutoProminence);

}  // namespace ddna
