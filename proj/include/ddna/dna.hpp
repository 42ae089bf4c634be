#pragma once
//
// Behavioral DNA model: action alphabets, per-account timelines, and the
// encoding of timelines into DNA strings. One character per action; the
// alphabet decides which facet of the action it captures.
//

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ddna/errors.hpp"

namespace ddna {

enum class AlphabetId { Type3, Content3, Content6 };

struct Alphabet {
    AlphabetId id;
    std::string bases;  // pairwise distinct, one character per base

    int size() const { return static_cast<int>(bases.size()); }
    bool contains(char c) const { return bases.find(c) != std::string::npos; }
};

const Alphabet& alphabet(AlphabetId id);
const char* alphabet_name(AlphabetId id);  // "type3" | "content3" | "content6"
std::optional<AlphabetId> parse_alphabet(const std::string& name);

enum class ActionKind { Tweet, Reply, Retweet };

// Raw feeds can flag an action as both reply and retweet; retweet wins.
ActionKind resolve_kind(bool is_reply, bool is_retweet);

struct ActionRecord {
    std::string account_id;
    ActionKind kind = ActionKind::Tweet;
    bool has_url = false;
    bool has_hashtag = false;
    bool has_mention = false;
    bool has_media = false;
    std::int64_t timestamp = 0;  // epoch seconds, >= 0
};

enum class AccountLabel { Spambot, Genuine, Unlabeled };

struct DnaSequence {
    std::string account_id;
    AlphabetId alphabet_id = AlphabetId::Type3;
    std::string symbols;  // every character is a base of the alphabet
    AccountLabel label = AccountLabel::Unlabeled;

    std::size_t length() const { return symbols.size(); }
};

// Sequences of one alphabet with pairwise distinct account ids.
struct AccountGroup {
    AlphabetId alphabet_id = AlphabetId::Type3;
    std::vector<DnaSequence> sequences;

    int size() const { return static_cast<int>(sequences.size()); }
};

// Validates ids/alphabets and drops empty sequences (an LCS over empty
// strings is meaningless); one warning line per dropped account.
AccountGroup make_group(std::vector<DnaSequence> sequences,
                        std::vector<std::string>* warnings = nullptr);

// Timelines longer than this keep only their most recent actions.
inline constexpr std::size_t kTimelineCap = 3200;

// Encodes one account's time-ordered actions (ties already broken by input
// order). `dropped`, when given, receives the number of actions discarded by
// the timeline cap.
DnaSequence encode_sequence(const std::vector<ActionRecord>& actions,
                            AlphabetId alphabet_id,
                            std::size_t* dropped = nullptr);

// Counts of each base actually present; keys are a subset of the alphabet.
std::map<char, std::size_t> base_histogram(const DnaSequence& sequence);

}  // namespace ddna
