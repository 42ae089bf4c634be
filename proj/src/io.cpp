#include "ddna/io.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <unordered_set>

#include <json.hpp>

#include "ddna/benchmark.hpp"
#include "ddna/version.hpp"

namespace ddna {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

const char* label_name(AccountLabel label) {
    switch (label) {
        case AccountLabel::Spambot: return "spambot";
        case AccountLabel::Genuine: return "genuine";
        case AccountLabel::Unlabeled: return "unlabeled";
    }
    return "?";
}

AccountLabel parse_label(const std::string& s, std::size_t line) {
    if (s == "spambot") return AccountLabel::Spambot;
    if (s == "genuine") return AccountLabel::Genuine;
    throw InputError("unknown label '" + s + "'", line);
}

std::int64_t require_count(const json& rec, const char* key, std::size_t line) {
    if (!rec.contains(key)) return 0;
    const json& v = rec[key];
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        throw InputError(std::string("field '") + key + "' must be a non-negative integer",
                         line);
    return v.get<std::int64_t>();
}

}  // namespace

std::vector<AccountTimeline> ingest_timelines(std::istream& in,
                                              std::vector<std::string>* warnings) {
    std::vector<AccountTimeline> out;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const json rec = json::parse(line, nullptr, false);
        if (rec.is_discarded() || !rec.is_object())
            throw InputError("malformed record", lineno);
        try {
        if (!rec.contains("account_id") || !rec["account_id"].is_string() ||
            rec["account_id"].get<std::string>().empty())
            throw InputError("missing or empty account_id", lineno);

        AccountTimeline tl;
        tl.account_id = rec["account_id"].get<std::string>();
        if (!seen.insert(tl.account_id).second)
            throw InputError("duplicate account id '" + tl.account_id + "'", lineno);
        if (rec.contains("label"))
            tl.label = parse_label(rec["label"].get<std::string>(), lineno);

        if (rec.contains("actions")) {
            if (!rec["actions"].is_array())
                throw InputError("'actions' must be an array", lineno);
            for (const json& act : rec["actions"]) {
                ActionRecord a;
                a.account_id = tl.account_id;
                if (act.contains("kind")) {
                    const std::string kind = act["kind"].get<std::string>();
                    if (kind == "tweet") a.kind = ActionKind::Tweet;
                    else if (kind == "reply") a.kind = ActionKind::Reply;
                    else if (kind == "retweet") a.kind = ActionKind::Retweet;
                    else throw InputError("unknown kind '" + kind + "'", lineno);
                } else if (act.contains("is_reply") || act.contains("is_retweet")) {
                    a.kind = resolve_kind(act.value("is_reply", false),
                                          act.value("is_retweet", false));
                } else {
                    throw InputError("action without a kind", lineno);
                }
                a.has_url = require_count(act, "urls", lineno) > 0;
                a.has_hashtag = require_count(act, "hashtags", lineno) > 0;
                a.has_mention = require_count(act, "mentions", lineno) > 0;
                a.has_media = require_count(act, "media", lineno) > 0;
                if (!act.contains("ts") || !act["ts"].is_number_integer())
                    throw InputError("action without an integer 'ts'", lineno);
                a.timestamp = act["ts"].get<std::int64_t>();
                if (a.timestamp < 0) throw InputError("negative timestamp", lineno);
                tl.actions.push_back(std::move(a));
            }
        }
        std::stable_sort(tl.actions.begin(), tl.actions.end(),
                         [](const ActionRecord& x, const ActionRecord& y) {
                             return x.timestamp < y.timestamp;
                         });
        out.push_back(std::move(tl));
        } catch (const json::exception&) {
            throw InputError("malformed record", lineno);
        }
    }
    if (out.empty() && warnings) warnings->push_back("input contained no timelines");
    return out;
}

void write_sequences(std::ostream& out, const std::vector<DnaSequence>& sequences) {
    for (const DnaSequence& s : sequences) {
        ordered_json rec;
        rec["account_id"] = s.account_id;
        rec["alphabet"] = alphabet_name(s.alphabet_id);
        rec["symbols"] = s.symbols;
        if (s.label != AccountLabel::Unlabeled) rec["label"] = label_name(s.label);
        out << rec.dump() << '\n';
    }
}

std::vector<DnaSequence> read_sequences(std::istream& in) {
    std::vector<DnaSequence> out;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const json rec = json::parse(line, nullptr, false);
        if (rec.is_discarded() || !rec.is_object())
            throw InputError("malformed record", lineno);
        try {
        DnaSequence s;
        if (!rec.contains("account_id") || !rec["account_id"].is_string())
            throw InputError("missing account_id", lineno);
        s.account_id = rec["account_id"].get<std::string>();
        if (s.account_id.empty()) throw InputError("empty account_id", lineno);
        if (!seen.insert(s.account_id).second)
            throw InputError("duplicate account id '" + s.account_id + "'", lineno);
        const auto alpha = parse_alphabet(rec.value("alphabet", ""));
        if (!alpha) throw InputError("missing or unknown alphabet", lineno);
        s.alphabet_id = *alpha;
        if (!rec.contains("symbols") || !rec["symbols"].is_string())
            throw InputError("missing symbols", lineno);
        s.symbols = rec["symbols"].get<std::string>();
        const Alphabet& a = alphabet(s.alphabet_id);
        for (char c : s.symbols)
            if (!a.contains(c))
                throw InputError("symbol '" + std::string(1, c) + "' is not a base of " +
                                 alphabet_name(s.alphabet_id), lineno);
        if (rec.contains("label"))
            s.label = parse_label(rec["label"].get<std::string>(), lineno);
        out.push_back(std::move(s));
        } catch (const json::exception&) {
            throw InputError("malformed record", lineno);
        }
    }
    return out;
}

void write_curve_csv(std::ostream& out, const LcsCurve& raw, const LcsCurve& smoothed,
                     const DerivativeSeries& deriv) {
    out << "k,lcs_length,smoothed_length,derivative,log10_abs_derivative,"
           "member_count,witness\n";
    const int M = raw.group_size();
    char buf[32];
    for (int k = 2; k <= M; ++k) {
        out << k << ',' << raw.length(k) << ',' << smoothed.length(k) << ',';
        if (k >= deriv.min_k) {
            out << deriv.value_at(k);
            out << ',';
            const auto& lg = deriv.log_magnitude[k - deriv.min_k];
            if (lg) {
                std::snprintf(buf, sizeof(buf), "%.6f", *lg);
                out << buf;
            }
        } else {
            out << ',';
        }
        out << ',' << raw.member_count(k) << ',' << raw.witness(k) << '\n';
    }
}

void write_permutation_csv(std::ostream& out, const PermutationStats& stats) {
    out << "k,original_lcs,mean_permuted_lcs,std_permuted_lcs\n";
    char buf[64];
    for (int k = 2; k <= stats.group_size; ++k) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%.6f,%.6f", k, stats.original[k - 2],
                      stats.mean[k - 2], stats.stddev[k - 2]);
        out << buf << '\n';
    }
}

void write_imbalance_csv(std::ostream& out, const std::vector<ImbalancePoint>& points) {
    out << "ratio,mean_mcc,std_mcc\n";
    char buf[64];
    for (const ImbalancePoint& p : points) {
        std::snprintf(buf, sizeof(buf), "%.4f,%.6f,%.6f", p.ratio, p.mean_mcc, p.std_mcc);
        out << buf << '\n';
    }
}

void write_benchmark_csv(std::ostream& out, const std::vector<BenchmarkCell>& cells) {
    out << "accounts,sequence_length,alphabet,mean_seconds,std_seconds,"
           "mean_peak_bytes,std_peak_bytes\n";
    char buf[128];
    for (const BenchmarkCell& c : cells) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%s,%.6f,%.6f,%.0f,%.0f", c.accounts,
                      c.sequence_length, alphabet_name(c.alphabet_id), c.mean_seconds,
                      c.std_seconds, c.mean_peak_bytes, c.std_peak_bytes);
        out << buf << '\n';
    }
}

namespace {

double round6(double v) { return std::round(v * 1e6) / 1e6; }

ordered_json confusion_json(const ConfusionMatrix& cm) {
    ordered_json j;
    j["tp"] = cm.tp;
    j["tn"] = cm.tn;
    j["fp"] = cm.fp;
    j["fn"] = cm.fn;
    return j;
}

ordered_json metrics_obj(const MetricsReport& m) {
    ordered_json j;
    j["precision"] = round6(m.precision);
    j["recall"] = round6(m.recall);
    j["specificity"] = round6(m.specificity);
    j["accuracy"] = round6(m.accuracy);
    j["f_measure"] = round6(m.f_measure);
    j["mcc"] = round6(m.mcc);
    return j;
}

}  // namespace

std::string detect_report(const SplitResult& split,
                          const ReportParams& params,
                          const TrainedClassifier* classifier,
                          const ConfusionMatrix* confusion,
                          const MetricsReport* metrics) {
    ordered_json j;
    j["tool"] = "ddna";
    j["version"] = kVersion;
    j["mode"] = split_mode_name(split.mode);
    j["k_star"] = split.k_star;
    j["threshold_length"] = split.threshold_length;
    j["parameters"]["window"] = params.window;
    j["parameters"]["min_prominence"] = round6(params.min_prominence);
    j["parameters"]["seed"] = params.seed;
    if (classifier) {
        j["classifier"]["threshold_length"] = classifier->threshold_length;
        j["classifier"]["k_best"] = classifier->k_best;
        j["classifier"]["training_mcc"] = round6(classifier->training_mcc);
    }
    j["spambots"] = split.spambots;
    j["genuine"] = split.genuine;
    if (confusion) j["confusion_matrix"] = confusion_json(*confusion);
    if (metrics) j["metrics"] = metrics_obj(*metrics);
    return j.dump(2) + "\n";
}

std::string metrics_json(const ConfusionMatrix& cm, const MetricsReport& metrics) {
    ordered_json j;
    j["confusion_matrix"] = confusion_json(cm);
    j["metrics"] = metrics_obj(metrics);
    return j.dump(2) + "\n";
}

}  // namespace ddna
