#include "ddna/curve_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace ddna {

LcsCurve smooth(const LcsCurve& curve, int window) {
    if (window < 1 || window % 2 == 0)
        throw ConfigError("smoothing window must be odd and positive");
    const int M = curve.group_size();
    const int half = (window - 1) / 2;

    std::vector<int> out(M - 1);
    for (int k = 2; k <= M; ++k) {
        const int r = std::min({half, k - 2, M - k});
        long long sum = 0;
        for (int j = k - r; j <= k + r; ++j) sum += curve.length(j);
        const long long n = 2 * r + 1;
        out[k - 2] = static_cast<int>((2 * sum + n) / (2 * n));  // round half up
    }
    return curve.with_lengths(out);
}

DerivativeSeries derivative(const LcsCurve& curve) {
    const int M = curve.group_size();
    if (M < 3) throw ConfigError("derivative needs a group of at least three");
    DerivativeSeries series;
    series.values.reserve(M - 2);
    series.log_magnitude.reserve(M - 2);
    for (int k = 3; k <= M; ++k) {
        const int v = curve.length(k) - curve.length(k - 1);
        series.values.push_back(v);
        if (v == 0)
            series.log_magnitude.push_back(std::nullopt);
        else
            series.log_magnitude.push_back(std::log10(std::abs(static_cast<double>(v))));
    }
    return series;
}

double default_min_prominence(const DerivativeSeries& series) {
    std::vector<int> magnitudes;
    for (int v : series.values)
        if (v != 0) magnitudes.push_back(std::abs(v));
    if (magnitudes.empty()) return 1.0;
    std::sort(magnitudes.begin(), magnitudes.end());
    const std::size_t n = magnitudes.size();
    const double median = (n % 2) ? magnitudes[n / 2]
                                  : (magnitudes[n / 2 - 1] + magnitudes[n / 2]) / 2.0;
    return std::max(1.0, 2.0 * median);
}

std::vector<SplitCandidate> detect_peaks(const DerivativeSeries& series,
                                         double min_prominence) {
    if (min_prominence < 0) throw ConfigError("min_prominence must be non-negative");
    std::vector<SplitCandidate> out;
    const auto& v = series.values;
    const int n = static_cast<int>(v.size());
    for (int i = 0; i < n; ++i) {
        if (v[i] >= 0) continue;
        if (i > 0 && v[i] >= v[i - 1]) continue;
        if (i + 1 < n && v[i] >= v[i + 1]) continue;
        const double magnitude = -static_cast<double>(v[i]);
        if (magnitude < min_prominence) continue;
        out.push_back({series.min_k + i, magnitude, 0});
    }
    std::sort(out.begin(), out.end(), [](const SplitCandidate& a, const SplitCandidate& b) {
        if (a.magnitude != b.magnitude) return a.magnitude > b.magnitude;
        return a.k < b.k;
    });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<int>(i) + 1;
    return out;
}

}  // namespace ddna
