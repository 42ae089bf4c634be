#pragma once
//
// Time/memory scalability benchmark of the full encode -> index -> curve ->
// split pipeline on generated data. Each (cell, repeat) runs in a forked
// child so peak-RSS readings do not inherit earlier cells' high-water marks.
//

#include <cstdint>
#include <vector>

#include "ddna/dna.hpp"

namespace ddna {

struct BenchmarkCell {
    int accounts = 0;
    int sequence_length = 0;
    AlphabetId alphabet_id = AlphabetId::Type3;
    double mean_seconds = 0;
    double std_seconds = 0;
    double mean_peak_bytes = 0;
    double std_peak_bytes = 0;
};

std::vector<BenchmarkCell> benchmark(const std::vector<int>& account_counts,
                                     const std::vector<int>& sequence_lengths,
                                     const std::vector<AlphabetId>& alphabets,
                                     int repeats,
                                     std::uint64_t seed);

}  // namespace ddna
