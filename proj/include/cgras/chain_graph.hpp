// Chain-graph representation of a random-coding scheme: vertices are auxiliary
// codewords, S edges are superposition steps and B edges are binning steps.
#pragma once

#include "cgras/network.hpp"

#include <functional>
#include <tuple>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cgras {

struct IllegalEdge : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ClosureImpossible : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Edge = std::pair<MessageId, MessageId>;

struct Cgras {
    Network net;
    std::set<MessageId> vertices;
    // (child, parent): child is superposed on parent.
    std::set<Edge> s_edges;
    // (binned, against): binned is binned against the codeword "against".
    std::set<Edge> b_edges;

    bool has_vertex(const MessageId& m) const { return vertices.count(m) > 0; }
    bool has_b(const MessageId& binned, const MessageId& against) const { return b_edges.count({binned, against}) > 0; }
    bool joint(const MessageId& a, const MessageId& b) const { return has_b(a, b) && has_b(b, a); }

    // Transitive closure of S in either direction.
    std::set<MessageId> s_ancestors(const MessageId& v) const;
    std::set<MessageId> s_descendants(const MessageId& v) const;
    bool s_related(const MessageId& a, const MessageId& b) const;

    // A binning edge whose endpoints are already ordered by superposition does
    // not constrain the orientation: the superposition order wins.
    bool b_absorbed(const Edge& e) const { return s_related(e.first, e.second); }

    // Adjacent through any S edge (transitive) or any B edge.
    bool adjacent(const MessageId& a, const MessageId& b) const;

    // Directed constraints: superposition parent -> child and, for one-way
    // binning, against -> binned. Joint pairs are left undirected.
    std::set<Edge> directed_constraints() const;  // stored as (from, to)

    // Vertices in the joint-binning component of v (via non-absorbed joint pairs).
    std::set<MessageId> joint_partners(const MessageId& v) const;
};

bool superposition_legal(const MessageId& child, const MessageId& parent);
bool binning_legal(const MessageId& binned, const MessageId& against);

// Adds vertices on demand. Throws IllegalEdge naming the violated inclusion.
Cgras add_s_edge(Cgras g, const MessageId& child, const MessageId& parent);
Cgras add_b_edge(Cgras g, const MessageId& binned, const MessageId& against);

struct AssumptionReport {
    bool joint_binning_transitive = true;  // assumption 1
    bool no_directed_cycle = true;         // assumption 2
    bool same_parents = true;              // assumption 3
    std::vector<std::string> failures;
    // Vertex sets responsible for each failure, aligned with `failures`.
    std::vector<std::vector<MessageId>> offenders;

    bool ok() const { return joint_binning_transitive && no_directed_cycle && same_parents; }
};

AssumptionReport check_assumptions(const Cgras& g);

// Adds binning edges until all assumptions hold. Throws ClosureImpossible when
// a required edge would be illegal.
Cgras close_assumptions(const Cgras& g);

// Tie-break key used when several vertices are ready during the topological
// sweep. Smaller keys come first.
using VertexPriority = std::function<bool(const MessageId&, const MessageId&)>;

// Default priority: more receivers first, then larger receiver set, then
// smaller transmitter set.
bool default_priority(const MessageId& a, const MessageId& b);

struct OrientedCgras {
    Cgras base;
    std::set<Edge> b_minus;         // (binned, against) pairs kept as directed edges
    std::vector<MessageId> order;   // topological order of S ∪ B⁻

    std::vector<MessageId> b_minus_parents(const MessageId& v) const;
    std::vector<MessageId> s_ancestors(const MessageId& v) const;
    // S ancestors ∪ B⁻ parents.
    std::vector<MessageId> parents(const MessageId& v) const;
    std::size_t position(const MessageId& v) const;
};

OrientedCgras equivalent_adg(const Cgras& g, const VertexPriority& priority = default_priority);

// Every distinct acyclic orientation reachable from some topological order of
// the directed constraints (distinct by B⁻).
std::vector<OrientedCgras> all_adg_orientations(const Cgras& g, std::size_t limit = 5040);

// Builds an orientation from an explicit total order of the vertices.
OrientedCgras orient_by_order(const Cgras& g, const std::vector<MessageId>& order);

struct Factor {
    MessageId vertex;
    std::vector<MessageId> parents;
};
using Factorization = std::vector<Factor>;

Factorization factorization(const OrientedCgras& g);
std::string render_factorization(const Factorization& f, bool latex = false);

Cgras decoder_subgraph(const Cgras& g, int z);

// d-separation of x and y given cond in the directed graph S ∪ B⁻.
bool d_separated(const OrientedCgras& g, const std::set<MessageId>& x, const std::set<MessageId>& y,
                 const std::set<MessageId>& cond);

// Skeleton plus immoralities, used to compare Markov equivalence of orientations.
struct MarkovSignature {
    std::set<std::pair<MessageId, MessageId>> skeleton;
    std::set<std::tuple<MessageId, MessageId, MessageId>> immoralities;
    friend bool operator==(const MarkovSignature& a, const MarkovSignature& b) {
        return a.skeleton == b.skeleton && a.immoralities == b.immoralities;
    }
};
MarkovSignature markov_signature(const OrientedCgras& g);

}  // namespace cgras
