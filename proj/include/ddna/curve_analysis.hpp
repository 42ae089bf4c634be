#pragma once
//
// LCS-curve analysis: smoothing, the discrete derivative LCS'[k] =
// LCS[k] - LCS[k-1], its log-magnitude series, and splitting-peak detection.
//

#include <optional>
#include <vector>

#include "ddna/lcs.hpp"

namespace ddna {

inline constexpr int kDefaultSmoothWindow = 5;

// Centered moving average over the lengths, rounded half-up to integers; at
// the boundaries the window shrinks symmetrically to fit. Witnesses and
// member sets are carried through unchanged. Monotonicity is preserved.
LcsCurve smooth(const LcsCurve& curve, int window);

struct DerivativeSeries {
    int min_k = 3;                   // values[i] belongs to k = min_k + i
    std::vector<int> values;         // LCS'[k] <= 0 for nonincreasing curves
    std::vector<std::optional<double>> log_magnitude;  // log10 |LCS'|, empty at zeros

    int max_k() const { return min_k + static_cast<int>(values.size()) - 1; }
    int value_at(int k) const { return values[k - min_k]; }
};

DerivativeSeries derivative(const LcsCurve& curve);

struct SplitCandidate {
    int k = 0;             // derivative index of the peak
    double magnitude = 0;  // |LCS'[k]| of the analyzed series
    int rank = 0;          // 1-based, by magnitude descending
};

// Data-relative peak floor: max(1, 2 * median of |LCS'| over nonzero
// entries); 1 when the series is all zero.
double default_min_prominence(const DerivativeSeries& series);

// Strict local minima of LCS' (boundary points compared to their single
// neighbor) with |LCS'| >= min_prominence, ordered by magnitude descending,
// ties toward smaller k.
std::vector<SplitCandidate> detect_peaks(const DerivativeSeries& series,
                                         double min_prominence);

}  // namespace ddna
