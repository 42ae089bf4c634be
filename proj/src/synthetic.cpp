#include "ddna/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "ddna/rng.hpp"

namespace ddna {

namespace {

void validate_common(const GeneratorConfig& c) {
    if (c.n_accounts < 1) throw ConfigError("n_accounts must be at least 1");
    if (c.len_min < 1 || c.len_max < c.len_min)
        throw ConfigError("length range must satisfy 1 <= len_min <= len_max");
    if (c.noise_rate < 0.0 || c.noise_rate > 1.0)
        throw ConfigError("noise_rate must lie in [0, 1]");
    if (c.dominant_base_prob <= 0.0 || c.dominant_base_prob >= 1.0)
        throw ConfigError("dominant_base_prob must lie in (0, 1)");
}

std::string account_id(const std::string& prefix, const char* fallback, int ordinal) {
    const std::string& p = prefix.empty() ? std::string(fallback) : prefix;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%06d", ordinal);
    return p + buf;
}

// stream indices for per-purpose sub-seeds
constexpr std::uint64_t kTemplateStream = 0x7e3a11ce;

}  // namespace

AccountGroup gen_humans(const GeneratorConfig& config) {
    validate_common(config);
    const Alphabet& a = alphabet(config.alphabet_id);
    const int span = config.len_max - config.len_min + 1;

    AccountGroup group;
    group.alphabet_id = config.alphabet_id;
    group.sequences.reserve(config.n_accounts);
    for (int i = 0; i < config.n_accounts; ++i) {
        Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(i)));
        DnaSequence s;
        s.account_id = account_id(config.id_prefix, "hum", i);
        s.alphabet_id = config.alphabet_id;
        s.label = AccountLabel::Genuine;
        const int len = config.len_min + static_cast<int>(rng.below(span));
        s.symbols.reserve(len);
        for (int j = 0; j < len; ++j)
            s.symbols.push_back(a.bases[rng.below(a.size())]);
        group.sequences.push_back(std::move(s));
    }
    return group;
}

// The group's shared behavioral template; corruption re-rolls each position
// once, and every bot embeds the same corrupted variant.
std::string bot_template(const GeneratorConfig& config) {
    const Alphabet& a = alphabet(config.alphabet_id);
    Rng tmpl_rng(derive_seed(config.seed, kTemplateStream));
    std::string tmpl(config.template_length, a.bases[0]);
    for (char& c : tmpl) c = a.bases[tmpl_rng.below(a.size())];
    for (char& c : tmpl)
        if (tmpl_rng.unit() < config.noise_rate) c = a.bases[tmpl_rng.below(a.size())];
    return tmpl;
}

AccountGroup gen_bots(const GeneratorConfig& config) {
    validate_common(config);
    if (config.template_length < 1)
        throw ConfigError("template_length must be at least 1");
    if (config.template_length > config.len_min)
        throw ConfigError("template_length must not exceed len_min");
    const Alphabet& a = alphabet(config.alphabet_id);
    const int n_bases = a.size();
    const int span = config.len_max - config.len_min + 1;

    const std::string tmpl = bot_template(config);

    AccountGroup group;
    group.alphabet_id = config.alphabet_id;
    group.sequences.reserve(config.n_accounts);
    for (int i = 0; i < config.n_accounts; ++i) {
        Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(i)));
        DnaSequence s;
        s.account_id = account_id(config.id_prefix, "bot", i);
        s.alphabet_id = config.alphabet_id;
        s.label = AccountLabel::Spambot;
        const int len = config.len_min + static_cast<int>(rng.below(span));
        s.symbols.resize(len);
        for (int j = 0; j < len; ++j) {
            if (rng.unit() < config.dominant_base_prob)
                s.symbols[j] = a.bases[0];
            else
                s.symbols[j] = a.bases[1 + rng.below(n_bases - 1)];
        }
        const int offset = static_cast<int>(rng.below(len - config.template_length + 1));
        std::copy(tmpl.begin(), tmpl.end(), s.symbols.begin() + offset);
        group.sequences.push_back(std::move(s));
    }
    return group;
}

AccountGroup permuted_copy(const AccountGroup& group, std::uint64_t seed) {
    AccountGroup out = group;
    for (std::size_t i = 0; i < out.sequences.size(); ++i) {
        Rng rng(derive_seed(seed, i));
        std::string& sym = out.sequences[i].symbols;
        for (std::size_t j = sym.size(); j > 1; --j)
            std::swap(sym[j - 1], sym[rng.below(j)]);
    }
    return out;
}

std::vector<ActionRecord> timeline_from_sequence(const DnaSequence& sequence) {
    std::vector<ActionRecord> actions;
    actions.reserve(sequence.length());
    std::int64_t ts = 0;
    for (char c : sequence.symbols) {
        ActionRecord a;
        a.account_id = sequence.account_id;
        a.timestamp = ts++;
        switch (sequence.alphabet_id) {
            case AlphabetId::Type3:
                a.kind = c == 'A' ? ActionKind::Tweet
                                  : c == 'C' ? ActionKind::Reply : ActionKind::Retweet;
                break;
            case AlphabetId::Content3:
                if (c == 'E') a.has_url = true;
                if (c == 'X') a.has_url = a.has_hashtag = true;
                break;
            case AlphabetId::Content6:
                if (c == 'U') a.has_url = true;
                if (c == 'H') a.has_hashtag = true;
                if (c == 'M') a.has_mention = true;
                if (c == 'D') a.has_media = true;
                if (c == 'X') a.has_url = a.has_mention = true;
                break;
        }
        actions.push_back(std::move(a));
    }
    return actions;
}

PermutationStats permute_sequences(const AccountGroup& group, int trials,
                                   std::uint64_t seed) {
    if (trials < 1) throw ConfigError("at least one permutation trial required");
    const LcsCurve original = common_substring_curve(build_index(group));
    const int M = original.group_size();

    PermutationStats stats;
    stats.group_size = M;
    stats.original.reserve(M - 1);
    for (int k = 2; k <= M; ++k) stats.original.push_back(original.length(k));

    std::vector<double> sum(M - 1, 0.0), sumsq(M - 1, 0.0);
    for (int t = 0; t < trials; ++t) {
        const AccountGroup shuffled = permuted_copy(group, derive_seed(seed, t));
        const LcsCurve curve = common_substring_curve(build_index(shuffled));
        for (int k = 2; k <= M; ++k) {
            const double v = curve.length(k);
            sum[k - 2] += v;
            sumsq[k - 2] += v * v;
        }
    }
    stats.mean.resize(M - 1);
    stats.stddev.resize(M - 1);
    for (int i = 0; i < M - 1; ++i) {
        const double mean = sum[i] / trials;
        stats.mean[i] = mean;
        stats.stddev[i] = std::sqrt(std::max(0.0, sumsq[i] / trials - mean * mean));
    }
    return stats;
}

std::vector<ImbalancePoint> imbalance_experiment(const std::vector<double>& ratios,
                                                 int total_accounts,
                                                 int runs,
                                                 std::uint64_t seed,
                                                 const GeneratorConfig& shape,
                                                 int window,
                                                 double min_prominence) {
    if (runs < 1) throw ConfigError("at least one run required");
    if (total_accounts < 3) throw ConfigError("total_accounts must be at least 3");
    for (double r : ratios) {
        if (r <= 0.0 || r > 1.0) throw ConfigError("ratios must lie in (0, 1]");
        if (std::llround(r * total_accounts) < 2)
            throw ConfigError("each ratio must yield at least two bots");
    }

    std::vector<ImbalancePoint> out;
    out.reserve(ratios.size());
    for (std::size_t ri = 0; ri < ratios.size(); ++ri) {
        const int n_bots = static_cast<int>(std::llround(ratios[ri] * total_accounts));
        const int n_humans = total_accounts - n_bots;
        double sum = 0.0, sumsq = 0.0;
        for (int run = 0; run < runs; ++run) {
            const std::uint64_t run_seed =
                derive_seed(seed, (static_cast<std::uint64_t>(ri) << 32) | run);

            GeneratorConfig bots_cfg = shape;
            bots_cfg.n_accounts = n_bots;
            bots_cfg.seed = derive_seed(run_seed, 0);
            GeneratorConfig hums_cfg = shape;
            hums_cfg.n_accounts = std::max(n_humans, 0);
            hums_cfg.seed = derive_seed(run_seed, 1);

            AccountGroup mixed = gen_bots(bots_cfg);
            if (n_humans > 0) {
                AccountGroup humans = gen_humans(hums_cfg);
                for (DnaSequence& s : humans.sequences)
                    mixed.sequences.push_back(std::move(s));
            }

            std::map<std::string, AccountLabel> truth;
            for (const DnaSequence& s : mixed.sequences) truth.emplace(s.account_id, s.label);

            const LcsCurve curve = common_substring_curve(build_index(mixed));
            const SplitResult split = unsupervised_split(curve, window, min_prominence);

            std::map<std::string, AccountLabel> predicted;
            for (const auto& [id, unused] : truth) predicted.emplace(id, AccountLabel::Genuine);
            for (const std::string& id : split.spambots) predicted[id] = AccountLabel::Spambot;

            const double mcc = compute_metrics(confusion_matrix(predicted, truth)).mcc;
            sum += mcc;
            sumsq += mcc * mcc;
        }
        const double mean = sum / runs;
        out.push_back({ratios[ri], mean, std::sqrt(std::max(0.0, sumsq / runs - mean * mean))});
    }
    return out;
}

}  // namespace ddna
