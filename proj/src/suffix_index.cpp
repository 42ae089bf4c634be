#include "ddna/lcs.hpp"

#include <algorithm>
#include <array>
#include <cassert>

namespace ddna {
namespace sais {
namespace {

// Core SA-IS recursion. `s` ends with a unique smallest terminator (value 0,
// occurring exactly once); values lie in [0, sigma). Fills `sa` with the
// suffix order of all |s| suffixes.
void sais_rec(const std::vector<std::int32_t>& s, std::vector<std::int32_t>& sa,
              std::int32_t sigma) {
    const int n = static_cast<int>(s.size());
    sa.assign(n, -1);
    if (n == 1) {
        sa[0] = 0;
        return;
    }

    std::vector<bool> stype(n);
    stype[n - 1] = true;
    for (int i = n - 2; i >= 0; --i)
        stype[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && stype[i + 1]);
    auto is_lms = [&](int i) { return i > 0 && stype[i] && !stype[i - 1]; };

    std::vector<std::int32_t> count(sigma, 0);
    for (std::int32_t v : s) ++count[v];
    std::vector<std::int32_t> front(sigma), back(sigma);
    auto reset_back = [&] {
        std::int32_t acc = 0;
        for (std::int32_t c = 0; c < sigma; ++c) {
            acc += count[c];
            back[c] = acc - 1;
        }
    };
    auto reset_front = [&] {
        std::int32_t acc = 0;
        for (std::int32_t c = 0; c < sigma; ++c) {
            front[c] = acc;
            acc += count[c];
        }
    };

    // Seed the LMS suffixes in the given order, then induce L-suffixes
    // left-to-right and S-suffixes right-to-left.
    auto induce = [&](const std::vector<std::int32_t>& lms_ordered) {
        std::fill(sa.begin(), sa.end(), -1);
        reset_back();
        for (int idx = static_cast<int>(lms_ordered.size()) - 1; idx >= 0; --idx) {
            const std::int32_t p = lms_ordered[idx];
            sa[back[s[p]]--] = p;
        }
        reset_front();
        for (int i = 0; i < n; ++i) {
            const std::int32_t p = sa[i];
            if (p > 0 && !stype[p - 1]) sa[front[s[p - 1]]++] = p - 1;
        }
        reset_back();
        for (int i = n - 1; i >= 0; --i) {
            const std::int32_t p = sa[i];
            if (p > 0 && stype[p - 1]) sa[back[s[p - 1]]--] = p - 1;
        }
    };

    std::vector<std::int32_t> lms;  // LMS positions in text order
    for (int i = 1; i < n; ++i)
        if (is_lms(i)) lms.push_back(i);

    induce(lms);

    if (lms.size() <= 1) return;  // already exact

    // Rank the LMS substrings from the induced order.
    std::vector<std::int32_t> sorted_lms;
    sorted_lms.reserve(lms.size());
    for (int i = 0; i < n; ++i)
        if (is_lms(sa[i])) sorted_lms.push_back(sa[i]);

    auto lms_equal = [&](int a, int b) {
        if (a == b) return true;
        // The terminator's LMS substring is unique; it only ever compares
        // unequal on the first character, so the walk stays in bounds.
        do {
            if (s[a] != s[b] || stype[a] != stype[b]) return false;
            ++a;
            ++b;
        } while (!is_lms(a) && !is_lms(b));
        return is_lms(a) && is_lms(b) && s[a] == s[b];
    };

    std::vector<std::int32_t> name_of(n, -1);
    std::int32_t name = 0;
    name_of[sorted_lms[0]] = 0;
    for (std::size_t i = 1; i < sorted_lms.size(); ++i) {
        if (!lms_equal(sorted_lms[i - 1], sorted_lms[i])) ++name;
        name_of[sorted_lms[i]] = name;
    }

    if (name + 1 < static_cast<std::int32_t>(lms.size())) {
        // Names repeat: recurse on the reduced string (one symbol per LMS
        // substring, text order; its last symbol is the unique smallest).
        std::vector<std::int32_t> reduced(lms.size());
        for (std::size_t i = 0; i < lms.size(); ++i) reduced[i] = name_of[lms[i]];
        std::vector<std::int32_t> rsa;
        sais_rec(reduced, rsa, name + 1);
        std::vector<std::int32_t> lms_sorted(lms.size());
        for (std::size_t i = 0; i < rsa.size(); ++i) lms_sorted[i] = lms[rsa[i]];
        induce(lms_sorted);
    } else {
        induce(sorted_lms);
    }
}

}  // namespace

std::vector<std::int32_t> suffix_array(const std::vector<std::int32_t>& text,
                                       std::int32_t sigma) {
    std::vector<std::int32_t> s(text);
    s.push_back(0);  // unique smallest terminator
    std::vector<std::int32_t> sa;
    sais_rec(s, sa, sigma);
    assert(sa[0] == static_cast<std::int32_t>(text.size()));
    return {sa.begin() + 1, sa.end()};
}

std::vector<std::int32_t> lcp_array(const std::vector<std::int32_t>& text,
                                    const std::vector<std::int32_t>& sa) {
    const int n = static_cast<int>(sa.size());
    std::vector<std::int32_t> rank(n), lcp(n, 0);
    for (int i = 0; i < n; ++i) rank[sa[i]] = i;
    int h = 0;
    for (int i = 0; i < n; ++i) {
        if (rank[i] > 0) {
            const int j = sa[rank[i] - 1];
            while (i + h < n && j + h < n && text[i + h] == text[j + h]) ++h;
            lcp[rank[i]] = h;
            if (h > 0) --h;
        } else {
            h = 0;
        }
    }
    return lcp;
}

}  // namespace sais

std::shared_ptr<const CorpusIndex> CorpusIndex::build(std::vector<std::string> docs,
                                                      std::vector<std::string> ids) {
    if (docs.size() < 2) throw ConfigError("an index needs at least two sequences");
    if (docs.size() != ids.size()) throw ConfigError("one id per document required");
    for (std::size_t d = 0; d < docs.size(); ++d)
        if (docs[d].empty())
            throw ConfigError("empty sequence for account '" + ids[d] + "'");
    {
        auto sorted = ids;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InputError("duplicate account ids in group");
    }

    auto index = std::shared_ptr<CorpusIndex>(new CorpusIndex());
    index->docs_ = std::move(docs);
    index->ids_ = std::move(ids);

    // Dense base codes in character order so suffix order matches
    // lexicographic order of the decoded strings.
    std::array<std::int32_t, 256> code;
    code.fill(0);
    for (const std::string& doc : index->docs_)
        for (unsigned char c : doc) code[c] = 1;
    std::int32_t n_codes = 0;
    for (int c = 0; c < 256; ++c)
        if (code[c]) code[c] = ++n_codes;

    const int m = static_cast<int>(index->docs_.size());
    std::size_t total = 0;
    for (const std::string& doc : index->docs_) total += doc.size();

    std::vector<std::int32_t> text;
    text.reserve(total + m);
    index->chars_.reserve(total + m);
    index->doc_of_.reserve(total + m);
    index->doc_end_.resize(m);

    for (int d = 0; d < m; ++d) {
        for (unsigned char c : index->docs_[d]) {
            text.push_back(code[c]);
            index->chars_.push_back(static_cast<char>(c));
            index->doc_of_.push_back(d);
        }
        index->doc_end_[d] = static_cast<std::int32_t>(text.size());
        text.push_back(n_codes + 1 + d);  // sentinels sort above every base
        index->chars_.push_back('\0');
        index->doc_of_.push_back(-1);
    }

    index->sa_ = sais::suffix_array(text, n_codes + 1 + m + 1);
    index->lcp_ = sais::lcp_array(text, index->sa_);
    index->head_ = total;

    assert(index->doc_of_[index->sa_[0]] >= 0);
    assert(total == 0 || index->doc_of_[index->sa_[total - 1]] >= 0);
    return index;
}

std::shared_ptr<const CorpusIndex> build_index(const AccountGroup& group) {
    std::vector<std::string> docs, ids;
    docs.reserve(group.sequences.size());
    ids.reserve(group.sequences.size());
    for (const DnaSequence& s : group.sequences) {
        docs.push_back(s.symbols);
        ids.push_back(s.account_id);
    }
    return CorpusIndex::build(std::move(docs), std::move(ids));
}

}  // namespace ddna
