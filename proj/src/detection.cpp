#include "ddna/detection.hpp"

#include <algorithm>
#include <cmath>

namespace ddna {

const char* split_mode_name(SplitMode mode) {
    switch (mode) {
        case SplitMode::Unsupervised: return "unsupervised";
        case SplitMode::Supervised: return "supervised";
        case SplitMode::None: return "none";
    }
    return "?";
}

namespace {

std::vector<std::string> sorted_ids(const LcsCurve& curve) {
    std::vector<std::string> ids = curve.account_ids();
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<std::string> complement(const std::vector<std::string>& all_sorted,
                                    const std::vector<std::string>& part_sorted) {
    std::vector<std::string> out;
    out.reserve(all_sorted.size() - part_sorted.size());
    std::set_difference(all_sorted.begin(), all_sorted.end(), part_sorted.begin(),
                        part_sorted.end(), std::back_inserter(out));
    return out;
}

SplitResult all_genuine(const LcsCurve& curve, int window, double prominence) {
    SplitResult r;
    r.mode = SplitMode::None;
    r.genuine = sorted_ids(curve);
    r.window_used = window;
    r.prominence_used = prominence;
    return r;
}

}  // namespace

SplitResult unsupervised_split(const LcsCurve& curve, int window, double min_prominence) {
    if (curve.group_size() < 3)
        throw ConfigError("unsupervised split needs a group of at least three");

    const LcsCurve smoothed = smooth(curve, window);
    const DerivativeSeries series = derivative(smoothed);
    const double prominence =
        std::isnan(min_prominence) ? default_min_prominence(series) : min_prominence;
    const auto peaks = detect_peaks(series, prominence);
    if (peaks.empty()) return all_genuine(curve, window, prominence);

    // The drop at derivative index k separates curve point k-1 (the
    // high-similarity side) from k; accounts left of the line are spambots.
    const int k_star = peaks.front().k - 1;
    SplitResult r;
    r.mode = SplitMode::Unsupervised;
    r.k_star = k_star;
    r.threshold_length = curve.length(k_star);
    r.spambots = curve.members(k_star);
    r.genuine = complement(sorted_ids(curve), r.spambots);
    r.window_used = window;
    r.prominence_used = prominence;
    return r;
}

TrainedClassifier supervised_train(const LcsCurve& curve,
                                   const std::map<std::string, AccountLabel>& labels) {
    const int M = curve.group_size();
    std::map<std::string, AccountLabel> truth;
    int bots = 0, humans = 0;
    for (const std::string& id : curve.account_ids()) {
        const auto it = labels.find(id);
        if (it == labels.end() || it->second == AccountLabel::Unlabeled)
            throw ConfigError("account '" + id + "' has no training label");
        truth.emplace(id, it->second);
        (it->second == AccountLabel::Spambot ? bots : humans)++;
    }
    if (bots == 0 || humans == 0)
        throw ConfigError("training labels must contain both classes");

    TrainedClassifier clf;
    clf.roc.reserve(M - 1);
    bool have_best = false;
    for (int k = 2; k <= M; ++k) {
        std::map<std::string, AccountLabel> predicted;
        for (const std::string& id : curve.account_ids())
            predicted.emplace(id, AccountLabel::Genuine);
        for (const std::string& id : curve.members(k))
            predicted[id] = AccountLabel::Spambot;

        const ConfusionMatrix cm = confusion_matrix(predicted, truth);
        const double mcc = compute_metrics(cm).mcc;
        clf.roc.push_back(roc_point(cm));
        if (!have_best || mcc > clf.training_mcc) {
            have_best = true;
            clf.training_mcc = mcc;
            clf.k_best = k;
            clf.threshold_length = curve.length(k);
            clf.best_confusion = cm;
        }
    }
    return clf;
}

SplitResult supervised_classify(const LcsCurve& curve, const TrainedClassifier& clf) {
    const int M = curve.group_size();
    int k_star = 0;
    for (int k = M; k >= 2; --k) {
        if (curve.length(k) >= clf.threshold_length) {
            k_star = k;  // largest k at or above the learned threshold
            break;
        }
    }
    if (k_star == 0) {
        SplitResult r = all_genuine(curve, 0, 0);
        return r;
    }
    SplitResult r;
    r.mode = SplitMode::Supervised;
    r.k_star = k_star;
    r.threshold_length = curve.length(k_star);
    r.spambots = curve.members(k_star);
    r.genuine = complement(sorted_ids(curve), r.spambots);
    r.window_used = 0;  // no smoothing in the supervised path
    r.prominence_used = 0;
    return r;
}

namespace {

std::unique_ptr<DivisiveNode> divide(const AccountGroup& group, const LcsCurve* curve,
                                     int depth_left, int window, double min_prominence) {
    auto node = std::make_unique<DivisiveNode>();
    for (const DnaSequence& s : group.sequences) node->account_ids.push_back(s.account_id);
    std::sort(node->account_ids.begin(), node->account_ids.end());

    if (group.size() < 3 || depth_left <= 0) return node;

    LcsCurve local = curve ? *curve : common_substring_curve(build_index(group));
    const SplitResult split = unsupervised_split(local, window, min_prominence);
    if (split.mode == SplitMode::None || split.spambots.empty() || split.genuine.empty())
        return node;

    node->split_k = split.k_star;
    AccountGroup left, right;
    left.alphabet_id = right.alphabet_id = group.alphabet_id;
    for (const DnaSequence& s : group.sequences) {
        const bool is_left = std::binary_search(split.spambots.begin(),
                                                split.spambots.end(), s.account_id);
        (is_left ? left : right).sequences.push_back(s);
    }
    node->children.push_back(divide(left, nullptr, depth_left - 1, window, min_prominence));
    node->children.push_back(divide(right, nullptr, depth_left - 1, window, min_prominence));
    return node;
}

}  // namespace

std::unique_ptr<DivisiveNode> divisive_cluster(const LcsCurve& curve,
                                               const AccountGroup& group,
                                               int max_depth,
                                               int window,
                                               double min_prominence) {
    if (max_depth < 1) throw ConfigError("max_depth must be positive");
    return divide(group, &curve, max_depth, window, min_prominence);
}

}  // namespace ddna
