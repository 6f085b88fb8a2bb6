#include "cgras/network.hpp"

#include <cctype>
#include <algorithm>
#include <bit>
#include <sstream>

namespace cgras {

NodeSet::NodeSet(std::initializer_list<int> members) {
    for (int m : members) {
        if (m < 1 || m > kMaxNodes) throw DimensionError("node index out of range: " + std::to_string(m));
        mask_ |= 1u << (m - 1);
    }
}

NodeSet NodeSet::from_vector(const std::vector<int>& members) {
    NodeSet s;
    for (int m : members) {
        if (m < 1 || m > kMaxNodes) throw DimensionError("node index out of range: " + std::to_string(m));
        s.mask_ |= 1u << (m - 1);
    }
    return s;
}

int NodeSet::size() const { return std::popcount(mask_); }

int NodeSet::max_member() const { return mask_ == 0 ? 0 : 32 - std::countl_zero(mask_); }

bool NodeSet::contains(int node) const {
    return node >= 1 && node <= kMaxNodes && (mask_ >> (node - 1)) & 1u;
}

std::vector<int> NodeSet::members() const {
    std::vector<int> out;
    for (int k = 1; k <= kMaxNodes; ++k)
        if (contains(k)) out.push_back(k);
    return out;
}

std::string NodeSet::to_string() const {
    auto m = members();
    if (m.size() == 1) return std::to_string(m[0]);
    std::string s = "{";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(m[i]);
    }
    return s + "}";
}

bool operator<(const NodeSet& a, const NodeSet& b) {
    // The sorted member lists agree below the lowest differing node k. The set
    // holding k is smaller unless the other set has nothing above k, in which
    // case the other set is a proper prefix.
    const std::uint32_t diff = a.mask_ ^ b.mask_;
    if (diff == 0) return false;
    const std::uint32_t low = diff & (~diff + 1u);
    const std::uint32_t above = ~((low << 1) - 1u);
    const bool a_has = (a.mask_ & low) != 0;
    const std::uint32_t other = a_has ? b.mask_ : a.mask_;
    const bool holder_smaller = (other & above) != 0;
    return a_has == holder_smaller;
}

std::string MessageId::to_string() const { return tx.to_string() + "→" + rx.to_string(); }

std::string MessageId::to_ascii() const { return tx.to_string() + "->" + rx.to_string(); }

std::string MessageId::to_latex() const {
    auto wrap = [](const NodeSet& s) {
        auto m = s.members();
        if (m.size() == 1) return std::to_string(m[0]);
        std::string out = "\\{";
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(m[i]);
        }
        return out + "\\}";
    };
    return wrap(tx) + " \\to " + wrap(rx);
}

bool operator<(const MessageId& a, const MessageId& b) {
    if (a.tx != b.tx) return a.tx < b.tx;
    return a.rx < b.rx;
}

namespace {

NodeSet parse_node_set(const std::string& raw, const std::string& whole) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (!s.empty() && s.front() == '{') {
        if (s.back() != '}') throw std::invalid_argument("unbalanced brace in message id: " + whole);
        s = s.substr(1, s.size() - 2);
    }
    if (s.empty()) throw std::invalid_argument("empty node set in message id: " + whole);
    std::vector<int> nodes;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || !std::all_of(item.begin(), item.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw std::invalid_argument("bad node index in message id: " + whole);
        nodes.push_back(std::stoi(item));
    }
    return NodeSet::from_vector(nodes);
}

}  // namespace

MessageId parse_message_id(const std::string& text) {
    std::size_t pos = text.find("->");
    std::size_t len = 2;
    if (pos == std::string::npos) {
        pos = text.find("→");
        len = std::string("→").size();
    }
    if (pos == std::string::npos) throw std::invalid_argument("message id lacks an arrow: " + text);
    MessageId m{parse_node_set(text.substr(0, pos), text), parse_node_set(text.substr(pos + len), text)};
    return m;
}

bool Network::id_valid(const MessageId& m) const {
    return !m.tx.empty() && !m.rx.empty() && m.tx.max_member() <= n_tx && m.rx.max_member() <= n_rx;
}

void Network::check_id(const MessageId& m) const {
    if (!id_valid(m))
        throw DimensionError("message " + m.to_string() + " does not fit a network with " + std::to_string(n_tx) +
                             " transmitters and " + std::to_string(n_rx) + " receivers");
}

std::set<MessageId> SplitMatrix::originals() const {
    std::set<MessageId> out;
    for (const auto& [key, _] : gamma) out.insert(key.first);
    return out;
}

std::set<MessageId> SplitMatrix::splits() const {
    std::set<MessageId> out;
    for (const auto& [key, _] : gamma) out.insert(key.second);
    return out;
}

std::vector<MessageId> SplitMatrix::splits_of(const MessageId& original) const {
    std::vector<MessageId> out;
    for (const auto& [key, _] : gamma)
        if (key.first == original) out.push_back(key.second);
    return out;
}

SplitMatrix SplitMatrix::identity(const std::set<MessageId>& messages) {
    SplitMatrix g;
    for (const auto& m : messages) g.gamma[{m, m}] = 1;
    return g;
}

bool split_legal(const MessageId& original, const MessageId& split) {
    return split.rx.superset_of(original.rx) && split.tx.subset_of(original.tx);
}

bool split_legal(const Network& net, const MessageId& original, const MessageId& split) {
    net.check_id(original);
    net.check_id(split);
    return split_legal(original, split);
}

SplitReport validate_split_matrix(const Network& net, const SplitMatrix& g) {
    SplitReport rep;
    std::map<MessageId, Rational> row_sum;
    for (const auto& [key, coeff] : g.gamma) {
        const auto& [orig, split] = key;
        if (!net.id_valid(orig) || !net.id_valid(split)) {
            rep.violations.push_back("pair (" + orig.to_string() + ", " + split.to_string() + ") outside network dimensions");
            continue;
        }
        if (!net.messages.empty() && !net.messages.count(orig))
            rep.violations.push_back("original " + orig.to_string() + " is not a network message");
        if (!split_legal(orig, split))
            rep.violations.push_back("illegal split " + orig.to_string() + " into " + split.to_string());
        if (coeff < 0 || coeff > 1)
            rep.violations.push_back("coefficient for (" + orig.to_string() + ", " + split.to_string() + ") outside [0,1]");
        row_sum[orig] += coeff;
    }
    for (const auto& [orig, sum] : row_sum)
        if (sum != 1) rep.violations.push_back("row sum ≠ 1 for " + orig.to_string() + " (" + to_string(sum) + ")");
    for (const auto& m : net.messages)
        if (!row_sum.count(m)) rep.violations.push_back("message " + m.to_string() + " has no split row");
    rep.ok = rep.violations.empty();
    return rep;
}

RateVector apply_split(const SplitMatrix& g, const RateVector& r) {
    auto origs = g.originals();
    for (const auto& [m, _] : r)
        if (!origs.count(m)) throw KeyError("rate given for unknown message " + m.to_string());
    RateVector out;
    for (const auto& s : g.splits()) out[s] = 0;
    for (const auto& [key, coeff] : g.gamma) {
        auto it = r.find(key.first);
        if (it != r.end()) out[key.second] += coeff * it->second;
    }
    return out;
}

}  // namespace cgras
