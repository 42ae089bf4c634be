#pragma once
//
// k-common substring engine. A CorpusIndex is a generalized suffix structure
// (suffix array + LCP array over the documents concatenated with one unique
// sentinel each); common_substring_curve solves, for every k in [2, M], the
// longest substring shared by at least k of the M sequences, reporting a
// witness string and the accounts containing it. Construction and the curve
// sweep are linear in the total text length.
//

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ddna/dna.hpp"

namespace ddna {

namespace sais {

// Suffix array by induced sorting (SA-IS), linear time and space.
// Values of `text` must lie in [1, sigma); the implicit terminator is
// handled internally. Exposed for direct testing against a naive sort.
std::vector<std::int32_t> suffix_array(const std::vector<std::int32_t>& text,
                                       std::int32_t sigma);

// Kasai LCP: lcp[i] = LCP(text[sa[i-1]..], text[sa[i]..]); lcp[0] = 0.
std::vector<std::int32_t> lcp_array(const std::vector<std::int32_t>& text,
                                    const std::vector<std::int32_t>& sa);

}  // namespace sais

class CorpusIndex {
public:
    // Requires at least two documents, all non-empty, ids pairwise distinct.
    static std::shared_ptr<const CorpusIndex> build(std::vector<std::string> docs,
                                                    std::vector<std::string> ids);

    int doc_count() const { return static_cast<int>(docs_.size()); }
    const std::vector<std::string>& ids() const { return ids_; }
    const std::string& doc(int d) const { return docs_[d]; }
    std::size_t total_length() const { return head_; }

    // Suffix order over the whole text (documents + sentinels). The first
    // total_length() entries are exactly the in-document suffixes: sentinel
    // codes sort above every base code, and a shared prefix of two distinct
    // suffixes can never contain a sentinel (each occurs once).
    const std::vector<std::int32_t>& sa() const { return sa_; }
    const std::vector<std::int32_t>& lcp() const { return lcp_; }
    const std::vector<std::int32_t>& doc_of() const { return doc_of_; }  // -1 at sentinels
    const std::string& chars() const { return chars_; }                  // '\0' at sentinels
    std::size_t head() const { return head_; }  // number of in-document suffixes

    // Characters from text position p to its document's sentinel.
    std::int32_t suffix_cap(std::int32_t p) const { return doc_end_[doc_of_[p]] - p; }

private:
    CorpusIndex() = default;

    std::vector<std::string> docs_;
    std::vector<std::string> ids_;
    std::string chars_;
    std::vector<std::int32_t> doc_of_;
    std::vector<std::int32_t> doc_end_;  // sentinel position per document
    std::vector<std::int32_t> sa_;
    std::vector<std::int32_t> lcp_;
    std::size_t head_ = 0;
};

std::shared_ptr<const CorpusIndex> build_index(const AccountGroup& group);

struct CurvePoint {
    int k = 0;
    int length = 0;       // |witness|
    std::string witness;  // lexicographically smallest among maximal candidates
    int member_count = 0;
    // Suffix-order interval of the witness locus over the index head, or
    // lo > hi when the point carries an eager member list instead.
    std::int32_t span_lo = 0;
    std::int32_t span_hi = -1;
    std::vector<int> eager_members;  // document indices (oracle path)
};

// The LCS curve of a group: one point per k in [2, M]. Lengths are monotonic
// nonincreasing in k. Member sets are materialized on demand from the stored
// suffix-order spans (the curve keeps its index alive); a smoothed copy keeps
// the original witnesses/members and only replaces the lengths.
class LcsCurve {
public:
    LcsCurve(std::shared_ptr<const CorpusIndex> index,
             std::shared_ptr<const std::vector<std::string>> account_ids,
             std::vector<CurvePoint> points);

    int group_size() const { return static_cast<int>(points_.size()) + 1; }  // M
    int length(int k) const { return at(k).length; }
    const std::string& witness(int k) const { return at(k).witness; }
    int member_count(int k) const { return at(k).member_count; }
    std::vector<std::string> members(int k) const;  // sorted account ids

    const std::vector<std::string>& account_ids() const { return *account_ids_; }
    const CurvePoint& at(int k) const;

    // Same witnesses/members/index, new lengths (smoothing support).
    LcsCurve with_lengths(const std::vector<int>& lengths) const;

private:
    std::shared_ptr<const CorpusIndex> index_;  // null for oracle curves
    std::shared_ptr<const std::vector<std::string>> account_ids_;
    std::vector<CurvePoint> points_;  // points_[k - 2]
};

// Exact solution of the k-common substring problem for all k in one linear
// sweep over the suffix order (sliding document-occurrence counting with
// color-set-size corrections).
LcsCurve common_substring_curve(std::shared_ptr<const CorpusIndex> index);

// Longest common substring of two strings; ties break to the
// lexicographically smallest. Empty input gives "".
std::string lcs_pair(const std::string& a, const std::string& b);

inline constexpr std::size_t kBruteForceBound = 200;

// Exhaustive oracle: enumerates every substring of every sequence and counts
// distinct containing documents. Exponential-ish; desk scale only, guarded by
// `max_total_length`.
LcsCurve brute_force_curve(const AccountGroup& group,
                           std::size_t max_total_length = kBruteForceBound);

}  // namespace ddna
