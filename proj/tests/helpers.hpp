#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ddna/dna.hpp"
#include "ddna/lcs.hpp"
#include "ddna/rng.hpp"

namespace ddna::test {

// Curve with given lengths (k = 2..M) and no member backing; enough for
// smoothing/derivative/peak tests.
inline LcsCurve make_curve(const std::vector<int>& lengths) {
    auto ids = std::make_shared<std::vector<std::string>>();
    for (std::size_t i = 0; i <= lengths.size(); ++i) ids->push_back("a" + std::to_string(i));
    std::vector<CurvePoint> pts(lengths.size());
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        pts[i].k = static_cast<int>(i) + 2;
        pts[i].length = lengths[i];
    }
    return LcsCurve(nullptr, std::move(ids), std::move(pts));
}

inline AccountGroup group_of(const std::vector<std::string>& docs,
                             AlphabetId alpha = AlphabetId::Type3) {
    AccountGroup g;
    g.alphabet_id = alpha;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        DnaSequence s;
        s.account_id = "a" + std::to_string(i);
        s.alphabet_id = alpha;
        s.symbols = docs[i];
        g.sequences.push_back(std::move(s));
    }
    return g;
}

inline std::vector<std::string> random_docs(Rng& rng, int max_docs, int max_len,
                                            int alphabet_size) {
    static const char* kBases = "ACGT";
    const int m = 2 + static_cast<int>(rng.below(max_docs - 1));
    std::vector<std::string> docs(m);
    for (std::string& d : docs) {
        const int len = 1 + static_cast<int>(rng.below(max_len));
        for (int i = 0; i < len; ++i)
            d.push_back(kBases[rng.below(alphabet_size)]);
    }
    return docs;
}

}  // namespace ddna::test
