#pragma once
//
// Confusion matrix (spambot = positive class) and the six evaluation
// metrics: precision, recall, specificity, accuracy, F-measure, MCC.
// Any metric whose denominator is zero evaluates to 0.
//

#include <cstdint>
#include <map>
#include <string>

#include "ddna/dna.hpp"

namespace ddna {

struct ConfusionMatrix {
    std::int64_t tp = 0;
    std::int64_t tn = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;

    std::int64_t total() const { return tp + tn + fp + fn; }
};

// Requires identical key sets and binary labels on both sides.
ConfusionMatrix confusion_matrix(const std::map<std::string, AccountLabel>& predicted,
                                 const std::map<std::string, AccountLabel>& truth);

struct MetricsReport {
    double precision = 0;
    double recall = 0;
    double specificity = 0;
    double accuracy = 0;
    double f_measure = 0;
    double mcc = 0;
};

MetricsReport compute_metrics(const ConfusionMatrix& cm);

struct RocPoint {
    double fpr = 0;  // FP / (FP + TN)
    double tpr = 0;  // recall
};

RocPoint roc_point(const ConfusionMatrix& cm);

}  // namespace ddna
