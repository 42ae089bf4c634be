#pragma once
//
// Turning LCS-curve structure into account partitions: unsupervised
// derivative-peak splitting, MCC-optimal supervised thresholding, and
// divisive hierarchical clustering.
//

#include <limits>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ddna/curve_analysis.hpp"
#include "ddna/metrics.hpp"

namespace ddna {

// Sentinel: resolve min_prominence from the analyzed series.
inline constexpr double kAutoProminence = std::numeric_limits<double>::quiet_NaN();

enum class SplitMode { Unsupervised, Supervised, None };

const char* split_mode_name(SplitMode mode);

struct SplitResult {
    SplitMode mode = SplitMode::None;
    int k_star = 0;            // splitting index on the curve; 0 when mode == None
    int threshold_length = 0;  // LCS[k_star] of the unsmoothed curve
    std::vector<std::string> spambots;  // sorted account ids
    std::vector<std::string> genuine;   // sorted account ids
    // parameters actually applied (echoed into reports)
    int window_used = kDefaultSmoothWindow;
    double prominence_used = 0;
};

// smooth -> derivative -> detect_peaks; the rank-1 peak marks the steepest
// drop and the curve point left of it carries the spambot side. No
// qualifying peak: mode = None, everyone genuine. Requires M >= 3.
SplitResult unsupervised_split(const LcsCurve& curve,
                               int window = kDefaultSmoothWindow,
                               double min_prominence = kAutoProminence);

struct TrainedClassifier {
    int threshold_length = 0;  // learned LCS threshold
    int k_best = 0;
    double training_mcc = 0;
    ConfusionMatrix best_confusion;
    std::vector<RocPoint> roc;  // one point per evaluated k, k = 2..M
};

// Evaluates every splitting point of the training curve against the labels
// and keeps the one with the highest MCC (ties toward smaller k). Labels
// must cover every curve account and contain both classes.
TrainedClassifier supervised_train(const LcsCurve& curve,
                                   const std::map<std::string, AccountLabel>& labels);

// Applies a learned threshold: k* is the largest k with LCS[k] >= threshold
// (threshold 0 gives k* = M); above the whole curve: mode = None.
SplitResult supervised_classify(const LcsCurve& curve, const TrainedClassifier& clf);

struct DivisiveNode {
    std::vector<std::string> account_ids;  // sorted
    int split_k = 0;                       // 0 at leaves
    std::vector<std::unique_ptr<DivisiveNode>> children;  // empty or exactly two

    bool is_leaf() const { return children.empty(); }
};

// Top-down splitting at the rank-1 peak, recursing on each side with a
// freshly computed curve until no qualifying peak, subgroup size < 3, or the
// depth budget is spent. Groups with M < 3 give a single leaf.
std::unique_ptr<DivisiveNode> divisive_cluster(const LcsCurve& curve,
                                               const AccountGroup& group,
                                               int max_depth,
                                               int window = kDefaultSmoothWindow,
                                               double min_prominence = kAutoProminence);

}  // namespace ddna
