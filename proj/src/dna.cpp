#include "ddna/dna.hpp"

#include <algorithm>
#include <unordered_set>

namespace ddna {

const Alphabet& alphabet(AlphabetId id) {
    static const Alphabet kType3{AlphabetId::Type3, "ACT"};
    static const Alphabet kContent3{AlphabetId::Content3, "NEX"};
    static const Alphabet kContent6{AlphabetId::Content6, "NUHMDX"};
    switch (id) {
        case AlphabetId::Type3: return kType3;
        case AlphabetId::Content3: return kContent3;
        case AlphabetId::Content6: return kContent6;
    }
    throw ConfigError("unknown alphabet id");
}

const char* alphabet_name(AlphabetId id) {
    switch (id) {
        case AlphabetId::Type3: return "type3";
        case AlphabetId::Content3: return "content3";
        case AlphabetId::Content6: return "content6";
    }
    return "?";
}

std::optional<AlphabetId> parse_alphabet(const std::string& name) {
    if (name == "type3") return AlphabetId::Type3;
    if (name == "content3") return AlphabetId::Content3;
    if (name == "content6") return AlphabetId::Content6;
    return std::nullopt;
}

ActionKind resolve_kind(bool is_reply, bool is_retweet) {
    if (is_retweet) return ActionKind::Retweet;  // stronger automation signal
    if (is_reply) return ActionKind::Reply;
    return ActionKind::Tweet;
}

namespace {

int entity_flag_count(const ActionRecord& a) {
    return int(a.has_url) + int(a.has_hashtag) + int(a.has_mention) + int(a.has_media);
}

char encode_action(const ActionRecord& a, AlphabetId id) {
    switch (id) {
        case AlphabetId::Type3:
            switch (a.kind) {
                case ActionKind::Tweet: return 'A';
                case ActionKind::Reply: return 'C';
                case ActionKind::Retweet: return 'T';
            }
            break;
        case AlphabetId::Content3: {
            const int flags = entity_flag_count(a);
            return flags == 0 ? 'N' : flags == 1 ? 'E' : 'X';
        }
        case AlphabetId::Content6: {
            const int flags = entity_flag_count(a);
            if (flags == 0) return 'N';
            if (flags >= 2) return 'X';
            if (a.has_url) return 'U';
            if (a.has_hashtag) return 'H';
            if (a.has_mention) return 'M';
            return 'D';
        }
    }
    throw ConfigError("unknown alphabet id");
}

}  // namespace

DnaSequence encode_sequence(const std::vector<ActionRecord>& actions,
                            AlphabetId alphabet_id,
                            std::size_t* dropped) {
    alphabet(alphabet_id);  // rejects unknown ids
    DnaSequence seq;
    seq.alphabet_id = alphabet_id;
    if (dropped) *dropped = 0;
    if (actions.empty()) return seq;

    seq.account_id = actions.front().account_id;
    for (const ActionRecord& a : actions) {
        if (a.account_id != seq.account_id)
            throw InputError("mixed account ids in one timeline: '" + seq.account_id +
                             "' vs '" + a.account_id + "'");
    }

    // keep the most recent actions when over the cap
    std::size_t first = 0;
    if (actions.size() > kTimelineCap) {
        first = actions.size() - kTimelineCap;
        if (dropped) *dropped = first;
    }

    seq.symbols.reserve(actions.size() - first);
    for (std::size_t i = first; i < actions.size(); ++i)
        seq.symbols.push_back(encode_action(actions[i], alphabet_id));
    return seq;
}

std::map<char, std::size_t> base_histogram(const DnaSequence& sequence) {
    std::map<char, std::size_t> hist;
    for (char c : sequence.symbols) ++hist[c];
    return hist;
}

AccountGroup make_group(std::vector<DnaSequence> sequences,
                        std::vector<std::string>* warnings) {
    AccountGroup group;
    if (sequences.empty()) throw ConfigError("cannot form a group from zero sequences");
    group.alphabet_id = sequences.front().alphabet_id;

    std::unordered_set<std::string> seen;
    for (DnaSequence& s : sequences) {
        if (s.alphabet_id != group.alphabet_id)
            throw InputError("mixed alphabets in one group");
        if (!seen.insert(s.account_id).second)
            throw InputError("duplicate account id '" + s.account_id + "'");
        const Alphabet& a = alphabet(s.alphabet_id);
        for (char c : s.symbols)
            if (!a.contains(c))
                throw InputError("account '" + s.account_id + "': symbol '" +
                                 std::string(1, c) + "' is not a base of " +
                                 alphabet_name(s.alphabet_id));
        if (s.symbols.empty()) {
            if (warnings)
                warnings->push_back("account '" + s.account_id +
                                    "' has an empty timeline; excluded from the group");
            continue;
        }
        group.sequences.push_back(std::move(s));
    }
    if (group.sequences.empty())
        throw InputError("all sequences were empty; nothing to group");
    return group;
}

}  // namespace ddna
