#pragma once
//
// Timeline ingestion (line-delimited JSON records), sequence file round-trip,
// curve CSV export, and the detection report document.
//

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ddna/curve_analysis.hpp"
#include "ddna/detection.hpp"
#include "ddna/dna.hpp"
#include "ddna/metrics.hpp"
#include "ddna/synthetic.hpp"

namespace ddna {
struct BenchmarkCell;

struct AccountTimeline {
    std::string account_id;
    AccountLabel label = AccountLabel::Unlabeled;
    std::vector<ActionRecord> actions;  // sorted by timestamp, input order on ties
};

// One JSON record per line:
//   {"account_id": "u1", "label": "spambot",
//    "actions": [{"kind": "tweet", "urls": 1, "hashtags": 0, "mentions": 0,
//                 "media": 0, "ts": 10}, ...]}
// Entity counts collapse to boolean flags. Errors name the 1-based line.
std::vector<AccountTimeline> ingest_timelines(std::istream& in,
                                              std::vector<std::string>* warnings = nullptr);

// Sequence files: {"account_id": ..., "alphabet": ..., "symbols": ...,
// "label": ...} per line; symbols are validated against the alphabet.
void write_sequences(std::ostream& out, const std::vector<DnaSequence>& sequences);
std::vector<DnaSequence> read_sequences(std::istream& in);

// Columns, in this exact order:
//   k,lcs_length,smoothed_length,derivative,log10_abs_derivative,member_count,witness
// derivative/log fields are empty where undefined (k = 2, or LCS' = 0 for the
// log); header always present; LF line endings.
void write_curve_csv(std::ostream& out, const LcsCurve& raw, const LcsCurve& smoothed,
                     const DerivativeSeries& deriv);

void write_permutation_csv(std::ostream& out, const PermutationStats& stats);
void write_imbalance_csv(std::ostream& out, const std::vector<ImbalancePoint>& points);
void write_benchmark_csv(std::ostream& out, const std::vector<BenchmarkCell>& cells);

struct ReportParams {
    int window = kDefaultSmoothWindow;
    double min_prominence = 0;  // value actually applied
    std::uint64_t seed = 0;
};

// Deterministic JSON document: mode, k_star, threshold, per-class account
// lists, parameters, tool version, and (when truth labels are supplied)
// confusion matrix and metrics. Byte-identical for identical inputs.
std::string detect_report(const SplitResult& split,
                          const ReportParams& params,
                          const TrainedClassifier* classifier = nullptr,
                          const ConfusionMatrix* confusion = nullptr,
                          const MetricsReport* metrics = nullptr);

std::string metrics_json(const ConfusionMatrix& cm, const MetricsReport& metrics);

}  // namespace ddna
