// Networks, message identifiers, rate vectors and rate-splitting matrices.
#pragma once

#include "cgras/rational.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace cgras {

// Raised when identifiers from networks of different sizes are mixed.
struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised on lookups of unknown messages.
struct KeyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Set of 1-based node indices stored as a bit mask (bit k-1 holds node k).
class NodeSet {
public:
    static constexpr int kMaxNodes = 16;

    NodeSet() = default;
    NodeSet(std::initializer_list<int> members);
    static NodeSet from_vector(const std::vector<int>& members);
    static NodeSet from_mask(std::uint32_t mask) { NodeSet s; s.mask_ = mask; return s; }

    std::uint32_t mask() const { return mask_; }
    bool empty() const { return mask_ == 0; }
    int size() const;
    int max_member() const;
    bool contains(int node) const;
    std::vector<int> members() const;

    bool subset_of(const NodeSet& other) const { return (mask_ & ~other.mask_) == 0; }
    bool superset_of(const NodeSet& other) const { return other.subset_of(*this); }

    // "1" for singletons and "{1,2}" otherwise.
    std::string to_string() const;

    // Lexicographic order on the sorted member lists.
    friend bool operator<(const NodeSet& a, const NodeSet& b);
    friend bool operator==(const NodeSet& a, const NodeSet& b) { return a.mask_ == b.mask_; }
    friend bool operator!=(const NodeSet& a, const NodeSet& b) { return a.mask_ != b.mask_; }

private:
    std::uint32_t mask_ = 0;
};

// Message (and auxiliary codeword) identifier i -> j.
struct MessageId {
    NodeSet tx;
    NodeSet rx;

    // "1→{1,2}".
    std::string to_string() const;
    // "1->{1,2}", accepted back by parse_message_id.
    std::string to_ascii() const;
    std::string to_latex() const;

    friend bool operator<(const MessageId& a, const MessageId& b);
    friend bool operator==(const MessageId& a, const MessageId& b) { return a.tx == b.tx && a.rx == b.rx; }
    friend bool operator!=(const MessageId& a, const MessageId& b) { return !(a == b); }
};

// Parses "1->{1,2}", "{1,2}->2" or the arrow "→" form.
MessageId parse_message_id(const std::string& text);

struct Network {
    int n_tx = 1;
    int n_rx = 1;
    std::set<MessageId> messages;
    // Decoder index -> split messages the designer marks as demanded there.
    std::map<int, std::set<MessageId>> intended;

    bool id_valid(const MessageId& m) const;
    // Throws DimensionError when m does not fit the node counts.
    void check_id(const MessageId& m) const;
};

using RateVector = std::map<MessageId, Rational>;

// Sparse rate-splitting matrix: (original, split) -> coefficient.
struct SplitMatrix {
    std::map<std::pair<MessageId, MessageId>, Rational> gamma;

    std::set<MessageId> originals() const;
    std::set<MessageId> splits() const;
    // Splits receiving mass from the given original.
    std::vector<MessageId> splits_of(const MessageId& original) const;

    static SplitMatrix identity(const std::set<MessageId>& messages);
};

struct SplitReport {
    bool ok = true;
    std::vector<std::string> violations;
};

bool split_legal(const MessageId& original, const MessageId& split);
bool split_legal(const Network& net, const MessageId& original, const MessageId& split);

SplitReport validate_split_matrix(const Network& net, const SplitMatrix& g);

RateVector apply_split(const SplitMatrix& g, const RateVector& r);

}  // namespace cgras
