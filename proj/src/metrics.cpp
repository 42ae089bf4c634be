#include "ddna/metrics.hpp"

#include <cmath>

namespace ddna {

ConfusionMatrix confusion_matrix(const std::map<std::string, AccountLabel>& predicted,
                                 const std::map<std::string, AccountLabel>& truth) {
    if (predicted.size() != truth.size())
        throw InputError("predicted and truth cover different account sets");
    ConfusionMatrix cm;
    for (const auto& [id, actual] : truth) {
        const auto it = predicted.find(id);
        if (it == predicted.end())
            throw InputError("account '" + id + "' missing from predictions");
        if (actual == AccountLabel::Unlabeled || it->second == AccountLabel::Unlabeled)
            throw InputError("account '" + id + "' is unlabeled");
        const bool pred_bot = it->second == AccountLabel::Spambot;
        const bool is_bot = actual == AccountLabel::Spambot;
        if (pred_bot && is_bot) ++cm.tp;
        else if (!pred_bot && !is_bot) ++cm.tn;
        else if (pred_bot) ++cm.fp;
        else ++cm.fn;
    }
    return cm;
}

namespace {

double ratio(std::int64_t num, std::int64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

MetricsReport compute_metrics(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw ConfigError("empty confusion matrix");
    MetricsReport r;
    r.precision = ratio(cm.tp, cm.tp + cm.fp);
    r.recall = ratio(cm.tp, cm.tp + cm.fn);
    r.specificity = ratio(cm.tn, cm.tn + cm.fp);
    r.accuracy = ratio(cm.tp + cm.tn, cm.total());
    r.f_measure = (r.precision + r.recall) > 0
                      ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
                      : 0.0;
    const double den = static_cast<double>(cm.tp + cm.fn) *
                       static_cast<double>(cm.tp + cm.fp) *
                       static_cast<double>(cm.tn + cm.fp) *
                       static_cast<double>(cm.tn + cm.fn);
    r.mcc = den == 0 ? 0.0
                     : static_cast<double>(cm.tp * cm.tn - cm.fp * cm.fn) / std::sqrt(den);
    return r;
}

RocPoint roc_point(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw ConfigError("empty confusion matrix");
    return {ratio(cm.fp, cm.fp + cm.tn), ratio(cm.tp, cm.tp + cm.fn)};
}

}  // namespace ddna
