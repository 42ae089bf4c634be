// ddna — behavioral DNA toolkit.
//
// Encodes account timelines as DNA strings, solves the k-common substring
// curve of a group, and splits heterogeneous account sets into spambot vs.
// genuine subgroups (supervised or unsupervised).

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ddna/benchmark.hpp"
#include "ddna/rng.hpp"
#include "ddna/curve_analysis.hpp"
#include "ddna/detection.hpp"
#include "ddna/dna.hpp"
#include "ddna/io.hpp"
#include "ddna/lcs.hpp"
#include "ddna/metrics.hpp"
#include "ddna/synthetic.hpp"
#include "ddna/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitConfig = 2;

struct Out {
    std::ofstream file;
    std::ostream* stream = &std::cout;

    explicit Out(const std::string& path) {
        if (path.empty() || path == "-") return;
        file.open(path, std::ios::binary);
        if (!file) throw ddna::InputError("cannot open output file '" + path + "'");
        stream = &file;
    }
    std::ostream& ref() { return *stream; }
};

struct In {
    std::ifstream file;
    std::istream* stream = &std::cin;

    explicit In(const std::string& path) {
        if (path.empty() || path == "-") return;
        file.open(path, std::ios::binary);
        if (!file) throw ddna::InputError("cannot open input file '" + path + "'");
        stream = &file;
    }
    std::istream& ref() { return *stream; }
};

ddna::AlphabetId alphabet_flag(const std::string& name) {
    const auto id = ddna::parse_alphabet(name);
    if (!id) throw ddna::ConfigError("unknown alphabet '" + name + "'");
    return *id;
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
}

ddna::AccountGroup load_group(const std::string& path) {
    In in(path);
    std::vector<std::string> warnings;
    auto group = ddna::make_group(ddna::read_sequences(in.ref()), &warnings);
    print_warnings(warnings);
    return group;
}

std::map<std::string, ddna::AccountLabel> labels_of(const ddna::AccountGroup& group) {
    std::map<std::string, ddna::AccountLabel> labels;
    for (const auto& s : group.sequences)
        if (s.label != ddna::AccountLabel::Unlabeled) labels.emplace(s.account_id, s.label);
    return labels;
}

std::vector<int> parse_int_list(const std::string& csv, const char* what) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw ddna::ConfigError(std::string("bad ") + what + " list entry '" + item + "'");
        }
    }
    if (out.empty()) throw ddna::ConfigError(std::string("empty ") + what + " list");
    return out;
}

int cmd_encode(const std::string& in_path, const std::string& out_path,
               const std::string& alphabet) {
    const ddna::AlphabetId alpha = alphabet_flag(alphabet);
    In in(in_path);
    std::vector<std::string> warnings;
    const auto timelines = ddna::ingest_timelines(in.ref(), &warnings);
    print_warnings(warnings);

    std::vector<ddna::DnaSequence> sequences;
    sequences.reserve(timelines.size());
    for (const auto& tl : timelines) {
        std::size_t dropped = 0;
        ddna::DnaSequence s = ddna::encode_sequence(tl.actions, alpha, &dropped);
        s.account_id = tl.account_id;  // keep ids of empty timelines too
        s.label = tl.label;
        if (dropped)
            std::cerr << "warning: account '" << tl.account_id << "': dropped " << dropped
                      << " oldest actions beyond the timeline cap\n";
        sequences.push_back(std::move(s));
    }
    Out out(out_path);
    ddna::write_sequences(out.ref(), sequences);
    return kExitOk;
}

int cmd_curve(const std::string& in_path, const std::string& out_path, int window) {
    const auto group = load_group(in_path);
    if (group.size() < 2) throw ddna::InputError("a curve needs at least two sequences");
    const ddna::LcsCurve curve = ddna::common_substring_curve(ddna::build_index(group));
    const ddna::LcsCurve smoothed = ddna::smooth(curve, window);
    Out out(out_path);
    if (group.size() >= 3) {
        ddna::write_curve_csv(out.ref(), curve, smoothed, ddna::derivative(smoothed));
    } else {
        ddna::DerivativeSeries empty;
        ddna::write_curve_csv(out.ref(), curve, smoothed, empty);
    }
    return kExitOk;
}

int cmd_detect(const std::string& in_path, const std::string& out_path,
               const std::string& mode, const std::string& train_path, int window,
               double min_prominence, std::uint64_t seed) {
    const auto group = load_group(in_path);
    const ddna::LcsCurve curve = ddna::common_substring_curve(ddna::build_index(group));

    ddna::SplitResult split;
    std::unique_ptr<ddna::TrainedClassifier> clf;
    if (mode == "unsupervised") {
        split = ddna::unsupervised_split(curve, window, min_prominence);
    } else if (mode == "supervised") {
        if (train_path.empty())
            throw ddna::ConfigError("supervised mode requires --train");
        const auto train_group = load_group(train_path);
        const ddna::LcsCurve train_curve =
            ddna::common_substring_curve(ddna::build_index(train_group));
        clf = std::make_unique<ddna::TrainedClassifier>(
            ddna::supervised_train(train_curve, labels_of(train_group)));
        split = ddna::supervised_classify(curve, *clf);
    } else {
        throw ddna::ConfigError("mode must be 'supervised' or 'unsupervised'");
    }

    // score against truth labels when the input carries them for everyone
    std::unique_ptr<ddna::ConfusionMatrix> cm;
    std::unique_ptr<ddna::MetricsReport> metrics;
    const auto truth = labels_of(group);
    if (!truth.empty() && truth.size() == static_cast<std::size_t>(group.size())) {
        std::map<std::string, ddna::AccountLabel> predicted;
        for (const auto& s : group.sequences)
            predicted.emplace(s.account_id, ddna::AccountLabel::Genuine);
        for (const auto& id : split.spambots) predicted[id] = ddna::AccountLabel::Spambot;
        cm = std::make_unique<ddna::ConfusionMatrix>(ddna::confusion_matrix(predicted, truth));
        metrics = std::make_unique<ddna::MetricsReport>(ddna::compute_metrics(*cm));
    }

    ddna::ReportParams params;
    params.window = split.window_used;
    params.min_prominence = split.prominence_used;
    params.seed = seed;
    Out out(out_path);
    out.ref() << ddna::detect_report(split, params, clf.get(), cm.get(), metrics.get());
    return kExitOk;
}

std::map<std::string, ddna::AccountLabel> read_label_file(const std::string& path) {
    In in(path);
    std::map<std::string, ddna::AccountLabel> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in.ref(), line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto rec = nlohmann::json::parse(line, nullptr, false);
        if (rec.is_discarded() || !rec.is_object() || !rec.contains("account_id"))
            throw ddna::InputError("malformed record", lineno);
        std::string label;
        for (const char* key : {"label", "class", "predicted"})
            if (rec.contains(key)) label = rec[key].get<std::string>();
        ddna::AccountLabel parsed;
        if (label == "spambot") parsed = ddna::AccountLabel::Spambot;
        else if (label == "genuine") parsed = ddna::AccountLabel::Genuine;
        else throw ddna::InputError("missing or unknown label", lineno);
        const std::string id = rec["account_id"].get<std::string>();
        if (!out.emplace(id, parsed).second)
            throw ddna::InputError("duplicate account id '" + id + "'", lineno);
    }
    return out;
}

int cmd_eval(const std::string& pred_path, const std::string& truth_path,
             const std::string& out_path) {
    const auto predicted = read_label_file(pred_path);
    const auto truth = read_label_file(truth_path);
    const auto cm = ddna::confusion_matrix(predicted, truth);
    Out out(out_path);
    out.ref() << ddna::metrics_json(cm, ddna::compute_metrics(cm));
    return kExitOk;
}

int cmd_synth(const std::string& out_path, int humans, int bots, int template_len,
              double noise, std::uint64_t seed, const std::string& alphabet, int len_min,
              int len_max) {
    ddna::GeneratorConfig cfg;
    cfg.alphabet_id = alphabet_flag(alphabet);
    cfg.len_min = len_min;
    cfg.len_max = len_max;
    cfg.template_length = template_len;
    cfg.noise_rate = noise;
    if (humans < 1 && bots < 1)
        throw ddna::ConfigError("need at least one human or bot account");

    std::vector<ddna::DnaSequence> sequences;
    if (bots > 0) {
        cfg.n_accounts = bots;
        cfg.seed = ddna::derive_seed(seed, 0);
        for (auto& s : ddna::gen_bots(cfg).sequences) sequences.push_back(std::move(s));
    }
    if (humans > 0) {
        cfg.n_accounts = humans;
        cfg.seed = ddna::derive_seed(seed, 1);
        for (auto& s : ddna::gen_humans(cfg).sequences) sequences.push_back(std::move(s));
    }
    std::cerr << "seed: " << seed << "\n";
    Out out(out_path);
    ddna::write_sequences(out.ref(), sequences);
    return kExitOk;
}

int cmd_permute(const std::string& in_path, const std::string& out_path, int trials,
                std::uint64_t seed) {
    const auto group = load_group(in_path);
    if (group.size() < 2) throw ddna::InputError("need at least two sequences");
    std::cerr << "seed: " << seed << "\n";
    const auto stats = ddna::permute_sequences(group, trials, seed);
    Out out(out_path);
    ddna::write_permutation_csv(out.ref(), stats);
    return kExitOk;
}

int cmd_imbalance(const std::string& out_path, const std::string& ratios_csv, int total,
                  int runs, std::uint64_t seed, int window, double min_prominence,
                  const std::string& alphabet, int template_len, double noise, int len_min,
                  int len_max) {
    std::vector<double> ratios;
    std::stringstream ss(ratios_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            ratios.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ddna::ConfigError("bad ratio '" + item + "'");
        }
    }
    ddna::GeneratorConfig shape;
    shape.alphabet_id = alphabet_flag(alphabet);
    shape.template_length = template_len;
    shape.noise_rate = noise;
    shape.len_min = len_min;
    shape.len_max = len_max;
    std::cerr << "seed: " << seed << "\n";
    const auto points =
        ddna::imbalance_experiment(ratios, total, runs, seed, shape, window, min_prominence);
    Out out(out_path);
    ddna::write_imbalance_csv(out.ref(), points);
    return kExitOk;
}

int cmd_bench(const std::string& out_path, const std::string& accounts,
              const std::string& lengths, const std::string& alphabets, int repeats,
              std::uint64_t seed) {
    std::vector<ddna::AlphabetId> alpha_ids;
    std::stringstream ss(alphabets);
    std::string item;
    while (std::getline(ss, item, ',')) alpha_ids.push_back(alphabet_flag(item));
    if (alpha_ids.empty()) throw ddna::ConfigError("empty alphabet list");
    std::cerr << "seed: " << seed << "\n";
    const auto cells =
        ddna::benchmark(parse_int_list(accounts, "account"), parse_int_list(lengths, "length"),
                        alpha_ids, repeats, seed);
    Out out(out_path);
    ddna::write_benchmark_csv(out.ref(), cells);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"behavioral DNA toolkit"};
    app.set_version_flag("--version", ddna::kVersion);
    app.require_subcommand(1);

    std::string in_path, out_path, alphabet = "type3", mode = "unsupervised";
    std::string train_path, pred_path, truth_path;
    std::string accounts = "250,500,1000,2000", lengths = "200", alphabets = "type3";
    int window = ddna::kDefaultSmoothWindow;
    double min_prominence = -1.0;
    int humans = 0, bots = 0, template_len = 40, len_min = 180, len_max = 220;
    int trials = 1000, repeats = 20;
    double noise = 0.05;
    std::uint64_t seed = 1;

    auto* enc = app.add_subcommand("encode", "timelines (JSONL) -> sequences file");
    enc->add_option("-i,--input", in_path, "timelines file, '-' for stdin");
    enc->add_option("-o,--output", out_path, "sequences file, '-' for stdout");
    enc->add_option("--alphabet", alphabet, "type3|content3|content6");

    auto* cur = app.add_subcommand("curve", "sequences -> LCS curve CSV");
    cur->add_option("-i,--input", in_path, "sequences file");
    cur->add_option("-o,--output", out_path, "CSV output");
    cur->add_option("--window", window, "odd smoothing window");

    auto* det = app.add_subcommand("detect", "split a group into spambot/genuine");
    det->add_option("-i,--input", in_path, "sequences file");
    det->add_option("-o,--output", out_path, "report output");
    det->add_option("--mode", mode, "supervised|unsupervised");
    det->add_option("--train", train_path, "labeled sequences (supervised mode)");
    det->add_option("--window", window, "odd smoothing window");
    det->add_option("--min-prominence", min_prominence,
                    "peak floor; negative = data-relative default");
    det->add_option("--seed", seed, "echoed into the report");

    auto* eva = app.add_subcommand("eval", "predictions + truth -> metrics");
    eva->add_option("--pred", pred_path, "predictions JSONL")->required();
    eva->add_option("--truth", truth_path, "truth JSONL")->required();
    eva->add_option("-o,--output", out_path, "metrics output");

    auto* syn = app.add_subcommand("synth", "generate a labeled synthetic corpus");
    syn->add_option("-o,--output", out_path, "sequences file");
    syn->add_option("--humans", humans, "human-like accounts");
    syn->add_option("--bots", bots, "bot-like accounts");
    syn->add_option("--template-len", template_len, "planted template length");
    syn->add_option("--noise", noise, "template corruption rate in [0,1]");
    syn->add_option("--seed", seed, "generator seed");
    syn->add_option("--alphabet", alphabet, "type3|content3|content6");
    syn->add_option("--len-min", len_min, "minimum sequence length");
    syn->add_option("--len-max", len_max, "maximum sequence length");

    auto* per = app.add_subcommand("permute", "permutation robustness experiment");
    per->add_option("-i,--input", in_path, "sequences file");
    per->add_option("-o,--output", out_path, "CSV output");
    per->add_option("--trials", trials, "number of shuffles");
    per->add_option("--seed", seed, "trial seed");

    std::string ratios = "0.01,0.02,0.03,0.04,0.05,0.06,0.07,0.08,0.09,0.10";
    int total_accounts = 5000, runs = 20;
    auto* imb = app.add_subcommand("imbalance", "class-imbalance detection sweep");
    imb->add_option("-o,--output", out_path, "CSV output");
    imb->add_option("--ratios", ratios, "comma-separated bot ratios in (0,1]");
    imb->add_option("--total", total_accounts, "accounts per run");
    imb->add_option("--runs", runs, "runs per ratio");
    imb->add_option("--seed", seed, "experiment seed");
    imb->add_option("--window", window, "odd smoothing window");
    imb->add_option("--min-prominence", min_prominence,
                    "peak floor; negative = data-relative default");
    imb->add_option("--template-len", template_len, "planted template length");
    imb->add_option("--noise", noise, "template corruption rate");
    imb->add_option("--alphabet", alphabet, "type3|content3|content6");
    imb->add_option("--len-min", len_min, "minimum sequence length");
    imb->add_option("--len-max", len_max, "maximum sequence length");

    auto* ben = app.add_subcommand("bench", "time/memory scalability benchmark");
    ben->add_option("-o,--output", out_path, "CSV output");
    ben->add_option("--accounts", accounts, "comma-separated account counts");
    ben->add_option("--lengths", lengths, "comma-separated sequence lengths");
    ben->add_option("--alphabets", alphabets, "comma-separated alphabets");
    ben->add_option("--repeats", repeats, "runs per cell");
    ben->add_option("--seed", seed, "generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return kExitConfig;
    }

    try {
        const double prom = min_prominence < 0 ? ddna::kAutoProminence : min_prominence;
        if (enc->parsed()) return cmd_encode(in_path, out_path, alphabet);
        if (cur->parsed()) return cmd_curve(in_path, out_path, window);
        if (det->parsed())
            return cmd_detect(in_path, out_path, mode, train_path, window, prom, seed);
        if (eva->parsed()) return cmd_eval(pred_path, truth_path, out_path);
        if (syn->parsed())
            return cmd_synth(out_path, humans, bots, template_len, noise, seed, alphabet,
                             len_min, len_max);
        if (per->parsed()) return cmd_permute(in_path, out_path, trials, seed);
        if (imb->parsed())
            return cmd_imbalance(out_path, ratios, total_accounts, runs, seed, window, prom,
                                 alphabet, template_len, noise, len_min, len_max);
        if (ben->parsed())
            return cmd_bench(out_path, accounts, lengths, alphabets, repeats, seed);
    } catch (const ddna::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ddna::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
