#include "ddna/lcs.hpp"

#include <algorithm>
#include <set>

namespace ddna {

LcsCurve::LcsCurve(std::shared_ptr<const CorpusIndex> index,
                   std::shared_ptr<const std::vector<std::string>> account_ids,
                   std::vector<CurvePoint> points)
    : index_(std::move(index)), account_ids_(std::move(account_ids)),
      points_(std::move(points)) {
    if (points_.empty()) throw ConfigError("a curve needs at least the k = 2 point");
}

const CurvePoint& LcsCurve::at(int k) const {
    if (k < 2 || k > group_size())
        throw ConfigError("curve index k = " + std::to_string(k) + " outside [2, M]");
    return points_[k - 2];
}

std::vector<std::string> LcsCurve::members(int k) const {
    const CurvePoint& pt = at(k);
    std::vector<std::string> out;
    if (pt.span_lo <= pt.span_hi) {
        const auto& sa = index_->sa();
        const auto& doc_of = index_->doc_of();
        std::vector<char> seen(index_->doc_count(), 0);
        for (std::int32_t t = pt.span_lo; t <= pt.span_hi; ++t) {
            const std::int32_t d = doc_of[sa[t]];
            if (!seen[d]) {
                seen[d] = 1;
                out.push_back(index_->ids()[d]);
            }
        }
    } else {
        for (int d : pt.eager_members) out.push_back((*account_ids_)[d]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

LcsCurve LcsCurve::with_lengths(const std::vector<int>& lengths) const {
    if (lengths.size() != points_.size())
        throw ConfigError("length vector does not match the curve domain");
    std::vector<CurvePoint> pts = points_;
    for (std::size_t i = 0; i < pts.size(); ++i) pts[i].length = lengths[i];
    return LcsCurve(index_, account_ids_, std::move(pts));
}

namespace {

// Winning locus for one distinct-document count.
struct Locus {
    int len = 0;
    std::int32_t lo = 0;
    std::int32_t hi = -1;
    int distinct = 0;
};

}  // namespace

// One pass over the suffix order. Every candidate is an interval of the
// (virtual) suffix tree, enumerated with the classic LCP stack; the number of
// distinct documents below each interval comes from Hui's color-set-size
// counting: total leaves minus one correction per consecutive same-document
// pair, charged to the pair's LCA. The deepest stack node covering the
// previous occurrence is that LCA.
LcsCurve common_substring_curve(std::shared_ptr<const CorpusIndex> index) {
    const auto& sa = index->sa();
    const auto& lcp = index->lcp();
    const auto& doc_of = index->doc_of();
    const char* chars = index->chars().data();
    const int m = static_cast<int>(index->head());
    const int M = index->doc_count();

    std::vector<Locus> best(M + 1);

    auto witness_less = [&](std::int32_t lo_a, int len, std::int32_t lo_b) {
        const char* a = chars + sa[lo_a];
        const char* b = chars + sa[lo_b];
        return std::lexicographical_compare(a, a + len, b, b + len);
    };
    auto record = [&](int h, std::int32_t left, std::int32_t right, long long distinct) {
        if (h <= 0) return;
        Locus& b = best[distinct];
        if (h > b.len)
            b = {h, left, right, static_cast<int>(distinct)};
        else if (h == b.len && witness_less(left, h, b.lo)) {
            b.lo = left;
            b.hi = right;
        }
    };

    struct Node {
        int h;
        std::int32_t left;
        long long leaves;
        long long corr;
    };
    std::vector<Node> stack;
    stack.reserve(64);
    std::vector<std::int32_t> last_occ(M, -1);

    for (int i = 0; i <= m; ++i) {
        const int h_in = (i == 0 || i == m) ? 0 : lcp[i];

        std::int32_t lb = i;
        long long carry_leaves = 0, carry_corr = 0;
        while (!stack.empty() && stack.back().h > h_in) {
            Node nd = stack.back();
            stack.pop_back();
            nd.leaves += carry_leaves;
            nd.corr += carry_corr;
            record(nd.h, nd.left, i - 1, nd.leaves - nd.corr);
            carry_leaves = nd.leaves;
            carry_corr = nd.corr;
            lb = nd.left;
        }
        if (i == m) break;
        if (!stack.empty() && stack.back().h == h_in) {
            stack.back().leaves += carry_leaves;
            stack.back().corr += carry_corr;
        } else {
            stack.push_back({h_in, lb, carry_leaves, carry_corr});
        }

        // charge the same-document correction to the LCA: the deepest stack
        // node whose span still covers the previous occurrence
        const std::int32_t d = doc_of[sa[i]];
        if (const std::int32_t j = last_occ[d]; j >= 0) {
            int lo = 0, hi = static_cast<int>(stack.size()) - 1, pos = 0;
            while (lo <= hi) {
                const int mid = (lo + hi) / 2;
                if (stack[mid].left <= j) {
                    pos = mid;
                    lo = mid + 1;
                } else {
                    hi = mid - 1;
                }
            }
            stack[pos].corr += 1;
        }
        last_occ[d] = i;

        const std::int32_t leaf_h = index->suffix_cap(sa[i]);
        if (!stack.empty() && stack.back().h == leaf_h)
            stack.back().leaves += 1;
        else
            stack.push_back({leaf_h, i, 1, 0});
    }

    // LCS[k] = deepest interval with at least k distinct documents: suffix
    // maximum over the per-count winners, longest first, then smallest
    // witness.
    std::vector<CurvePoint> points(std::max(1, M - 1));
    Locus run;
    for (int d = M; d >= 2; --d) {
        const Locus& b = best[d];
        if (b.len > run.len)
            run = b;
        else if (b.len > 0 && b.len == run.len && witness_less(b.lo, b.len, run.lo))
            run = b;
        CurvePoint& pt = points[d - 2];
        pt.k = d;
        if (run.len > 0) {
            pt.length = run.len;
            pt.witness.assign(chars + sa[run.lo], static_cast<std::size_t>(run.len));
            pt.member_count = run.distinct;
            pt.span_lo = run.lo;
            pt.span_hi = run.hi;
        }
    }

    auto ids = std::make_shared<const std::vector<std::string>>(index->ids());
    return LcsCurve(std::move(index), std::move(ids), std::move(points));
}

std::string lcs_pair(const std::string& a, const std::string& b) {
    if (a.empty() || b.empty()) return "";
    auto index = CorpusIndex::build({a, b}, {"a", "b"});
    return common_substring_curve(std::move(index)).witness(2);
}

LcsCurve brute_force_curve(const AccountGroup& group, std::size_t max_total_length) {
    const int M = group.size();
    if (M < 2) throw ConfigError("a curve needs at least two sequences");
    std::size_t total = 0;
    for (const DnaSequence& s : group.sequences) {
        if (s.symbols.empty()) throw ConfigError("empty sequence in group");
        total += s.length();
    }
    if (total > max_total_length)
        throw ConfigError("brute-force oracle limited to total length " +
                          std::to_string(max_total_length));

    // set iteration is lexicographic, so the first candidate seen at a given
    // length is already the smallest
    std::set<std::string> candidates;
    for (const DnaSequence& s : group.sequences)
        for (std::size_t i = 0; i < s.length(); ++i)
            for (std::size_t len = 1; i + len <= s.length(); ++len)
                candidates.insert(s.symbols.substr(i, len));

    struct Winner {
        int length = 0;
        std::string witness;
        std::vector<int> docs;
    };
    std::vector<Winner> win(M + 1);

    for (const std::string& w : candidates) {
        std::vector<int> docs;
        for (int d = 0; d < M; ++d)
            if (group.sequences[d].symbols.find(w) != std::string::npos)
                docs.push_back(d);
        const int count = static_cast<int>(docs.size());
        for (int k = 2; k <= count; ++k)
            if (static_cast<int>(w.size()) > win[k].length)
                win[k] = {static_cast<int>(w.size()), w, docs};
    }

    auto ids = std::make_shared<std::vector<std::string>>();
    for (const DnaSequence& s : group.sequences) ids->push_back(s.account_id);

    std::vector<CurvePoint> points(M - 1);
    for (int k = 2; k <= M; ++k) {
        CurvePoint& pt = points[k - 2];
        pt.k = k;
        pt.length = win[k].length;
        pt.witness = win[k].witness;
        pt.member_count = static_cast<int>(win[k].docs.size());
        pt.eager_members = win[k].docs;
    }
    return LcsCurve(nullptr, std::move(ids), std::move(points));
}

}  // namespace ddna
