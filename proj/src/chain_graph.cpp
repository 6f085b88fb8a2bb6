#include "cgras/chain_graph.hpp"

#include <functional>
#include <algorithm>
#include <map>
#include <queue>
#include <tuple>

namespace cgras {

namespace {

std::set<MessageId> reach(const std::set<Edge>& edges, const MessageId& start, bool forward) {
    // forward: follow (a, b) from a to b.
    std::set<MessageId> seen;
    std::vector<MessageId> stack{start};
    while (!stack.empty()) {
        MessageId cur = stack.back();
        stack.pop_back();
        for (const auto& [a, b] : edges) {
            const MessageId& from = forward ? a : b;
            const MessageId& to = forward ? b : a;
            if (from == cur && !seen.count(to)) {
                seen.insert(to);
                stack.push_back(to);
            }
        }
    }
    seen.erase(start);
    return seen;
}

// Finds one directed cycle in the graph given by (from, to) edges.
std::vector<MessageId> find_cycle(const std::set<MessageId>& vertices, const std::set<Edge>& edges) {
    std::map<MessageId, int> color;
    std::map<MessageId, MessageId> pred;
    std::vector<MessageId> cycle;
    std::function<bool(const MessageId&)> dfs = [&](const MessageId& u) {
        color[u] = 1;
        for (const auto& [a, b] : edges) {
            if (a != u) continue;
            if (color[b] == 1) {
                cycle.push_back(b);
                for (MessageId w = u; w != b; w = pred[w]) cycle.push_back(w);
                std::reverse(cycle.begin(), cycle.end());
                return true;
            }
            if (color[b] == 0) {
                pred[b] = u;
                if (dfs(b)) return true;
            }
        }
        color[u] = 2;
        return false;
    };
    for (const auto& v : vertices)
        if (color[v] == 0 && dfs(v)) return cycle;
    return {};
}

std::string list_ids(const std::vector<MessageId>& ids) {
    std::string s;
    for (const auto& m : ids) s += (s.empty() ? "" : ", ") + m.to_string();
    return s;
}

}  // namespace

std::set<MessageId> Cgras::s_ancestors(const MessageId& v) const { return reach(s_edges, v, true); }

std::set<MessageId> Cgras::s_descendants(const MessageId& v) const { return reach(s_edges, v, false); }

bool Cgras::s_related(const MessageId& a, const MessageId& b) const {
    return s_ancestors(a).count(b) || s_ancestors(b).count(a);
}

bool Cgras::adjacent(const MessageId& a, const MessageId& b) const {
    return has_b(a, b) || has_b(b, a) || s_related(a, b);
}

std::set<Edge> Cgras::directed_constraints() const {
    std::set<Edge> out;
    for (const auto& [child, parent] : s_edges) out.insert({parent, child});
    for (const auto& e : b_edges) {
        const auto& [binned, against] = e;
        if (has_b(against, binned) || b_absorbed(e)) continue;
        out.insert({against, binned});
    }
    return out;
}

std::set<MessageId> Cgras::joint_partners(const MessageId& v) const {
    std::set<MessageId> comp{v};
    std::vector<MessageId> stack{v};
    while (!stack.empty()) {
        MessageId cur = stack.back();
        stack.pop_back();
        for (const auto& [a, b] : b_edges) {
            if (a != cur || !has_b(b, a) || b_absorbed({a, b})) continue;
            if (comp.insert(b).second) stack.push_back(b);
        }
    }
    comp.erase(v);
    return comp;
}

bool superposition_legal(const MessageId& child, const MessageId& parent) {
    return parent.tx.superset_of(child.tx) && parent.rx.superset_of(child.rx) && child != parent;
}

bool binning_legal(const MessageId& binned, const MessageId& against) {
    return binned.tx.subset_of(against.tx) && binned != against;
}

Cgras add_s_edge(Cgras g, const MessageId& child, const MessageId& parent) {
    g.net.check_id(child);
    g.net.check_id(parent);
    if (child == parent) throw IllegalEdge("illegal superposition: " + child.to_string() + " on itself");
    if (!parent.rx.superset_of(child.rx))
        throw IllegalEdge("illegal superposition " + child.to_string() + " on " + parent.to_string() +
                          ": receiver set " + parent.rx.to_string() + " does not contain " + child.rx.to_string());
    if (!parent.tx.superset_of(child.tx))
        throw IllegalEdge("illegal superposition " + child.to_string() + " on " + parent.to_string() +
                          ": transmitter set " + parent.tx.to_string() + " does not contain " + child.tx.to_string());
    g.vertices.insert(child);
    g.vertices.insert(parent);
    g.s_edges.insert({child, parent});
    return g;
}

Cgras add_b_edge(Cgras g, const MessageId& binned, const MessageId& against) {
    g.net.check_id(binned);
    g.net.check_id(against);
    if (binned == against) throw IllegalEdge("illegal binning: " + binned.to_string() + " against itself");
    if (!binned.tx.subset_of(against.tx))
        throw IllegalEdge("illegal binning " + binned.to_string() + " against " + against.to_string() + ": " +
                          binned.tx.to_string() + " ⊄ " + against.tx.to_string());
    g.vertices.insert(binned);
    g.vertices.insert(against);
    g.b_edges.insert({binned, against});
    return g;
}

namespace {

struct Gap {
    MessageId binned, against;  // binning edge that would repair the gap
    std::vector<MessageId> witnesses;
};

std::vector<Gap> assumption1_gaps(const Cgras& g) {
    std::vector<Gap> gaps;
    for (const auto& b : g.vertices) {
        auto partners = g.joint_partners(b);
        std::vector<MessageId> direct;
        for (const auto& p : partners)
            if (g.joint(b, p)) direct.push_back(p);
        for (std::size_t i = 0; i < direct.size(); ++i)
            for (std::size_t j = i + 1; j < direct.size(); ++j)
                if (!g.adjacent(direct[i], direct[j]))
                    gaps.push_back({direct[i], direct[j], {direct[i], b, direct[j]}});
    }
    return gaps;
}

std::vector<Gap> assumption3_gaps(const Cgras& g) {
    std::vector<Gap> gaps;
    auto dc = g.directed_constraints();
    for (const auto& b : g.vertices) {
        std::set<MessageId> parents = g.s_ancestors(b);
        for (const auto& [from, to] : dc)
            if (to == b) parents.insert(from);
        for (const auto& c : g.vertices) {
            if (c == b || !g.joint(b, c) || g.b_absorbed({b, c})) continue;
            for (const auto& p : parents)
                if (p != c && !g.adjacent(p, c)) gaps.push_back({c, p, {p, b, c}});
        }
    }
    return gaps;
}

}  // namespace

AssumptionReport check_assumptions(const Cgras& g) {
    AssumptionReport rep;
    for (const auto& gap : assumption1_gaps(g)) {
        rep.joint_binning_transitive = false;
        rep.failures.push_back("assumption 1: " + gap.witnesses[0].to_string() + " ⋈ " + gap.witnesses[1].to_string() +
                               " ⋈ " + gap.witnesses[2].to_string() + " but the outer pair is not adjacent");
        rep.offenders.push_back(gap.witnesses);
    }
    auto cycle = find_cycle(g.vertices, g.directed_constraints());
    if (!cycle.empty()) {
        rep.no_directed_cycle = false;
        rep.failures.push_back("assumption 2: directed cycle through " + list_ids(cycle));
        rep.offenders.push_back(cycle);
    }
    for (const auto& gap : assumption3_gaps(g)) {
        rep.same_parents = false;
        rep.failures.push_back("assumption 3: " + gap.witnesses[0].to_string() + " is a parent of " +
                               gap.witnesses[1].to_string() + " but not adjacent to its joint partner " +
                               gap.witnesses[2].to_string());
        rep.offenders.push_back(gap.witnesses);
    }
    return rep;
}

Cgras close_assumptions(const Cgras& input) {
    Cgras g = input;
    for (int round = 0; round < 10000; ++round) {
        auto gaps1 = assumption1_gaps(g);
        if (!gaps1.empty()) {
            const auto& gap = gaps1.front();
            if (!binning_legal(gap.binned, gap.against) || !binning_legal(gap.against, gap.binned))
                throw ClosureImpossible("joint binning of " + gap.binned.to_string() + " and " + gap.against.to_string() +
                                        " would be illegal");
            g.b_edges.insert({gap.binned, gap.against});
            g.b_edges.insert({gap.against, gap.binned});
            continue;
        }
        auto dc = g.directed_constraints();
        auto cycle = find_cycle(g.vertices, dc);
        if (!cycle.empty()) {
            bool changed = false;
            for (std::size_t i = 0; i < cycle.size(); ++i) {
                const MessageId& from = cycle[i];
                const MessageId& to = cycle[(i + 1) % cycle.size()];
                // Only one-way binning edges (to ≺ from) can be made reciprocal.
                if (!g.has_b(to, from) || g.s_related(to, from)) continue;
                if (!binning_legal(from, to))
                    throw ClosureImpossible("making " + to.to_string() + " ≺ " + from.to_string() +
                                            " reciprocal needs an illegal binning edge");
                g.b_edges.insert({from, to});
                changed = true;
            }
            if (!changed) throw ClosureImpossible("directed cycle " + list_ids(cycle) + " contains no binning edge");
            continue;
        }
        auto gaps3 = assumption3_gaps(g);
        if (!gaps3.empty()) {
            const auto& gap = gaps3.front();
            if (!binning_legal(gap.binned, gap.against))
                throw ClosureImpossible("equalising parents needs " + gap.binned.to_string() + " ≺ " +
                                        gap.against.to_string() + ", which is illegal");
            g.b_edges.insert({gap.binned, gap.against});
            continue;
        }
        return g;
    }
    throw ClosureImpossible("assumption closure did not converge");
}

bool default_priority(const MessageId& a, const MessageId& b) {
    if (a.rx.size() != b.rx.size()) return a.rx.size() > b.rx.size();
    if (a.rx != b.rx) return b.rx < a.rx;
    if (a.tx != b.tx) return a.tx < b.tx;
    return false;
}

OrientedCgras orient_by_order(const Cgras& g, const std::vector<MessageId>& order) {
    OrientedCgras o;
    o.base = g;
    o.order = order;
    std::map<MessageId, std::size_t> pos;
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    for (const auto& e : g.b_edges) {
        const auto& [binned, against] = e;
        if (g.b_absorbed(e)) continue;
        if (pos.at(against) < pos.at(binned)) o.b_minus.insert(e);
    }
    return o;
}

OrientedCgras equivalent_adg(const Cgras& g, const VertexPriority& priority) {
    auto rep = check_assumptions(g);
    if (!rep.ok()) throw PreconditionError("assumptions violated: " + rep.failures.front());
    auto dc = g.directed_constraints();
    std::map<MessageId, int> indeg;
    for (const auto& v : g.vertices) indeg[v] = 0;
    for (const auto& [from, to] : dc) indeg[to]++;
    std::vector<MessageId> ready, order;
    for (const auto& [v, d] : indeg)
        if (d == 0) ready.push_back(v);
    while (!ready.empty()) {
        auto best = std::min_element(ready.begin(), ready.end(), priority);
        MessageId v = *best;
        ready.erase(best);
        order.push_back(v);
        for (const auto& [from, to] : dc)
            if (from == v && --indeg[to] == 0) ready.push_back(to);
    }
    return orient_by_order(g, order);
}

std::vector<OrientedCgras> all_adg_orientations(const Cgras& g, std::size_t limit) {
    auto dc = g.directed_constraints();
    std::vector<MessageId> verts(g.vertices.begin(), g.vertices.end());
    std::map<MessageId, int> indeg;
    for (const auto& v : verts) indeg[v] = 0;
    for (const auto& [from, to] : dc) indeg[to]++;
    std::vector<OrientedCgras> out;
    std::set<std::set<Edge>> seen;
    std::vector<MessageId> order;
    std::set<MessageId> used;
    std::size_t visited = 0;
    std::function<void()> rec = [&]() {
        if (visited >= limit) return;
        if (order.size() == verts.size()) {
            ++visited;
            auto o = orient_by_order(g, order);
            if (seen.insert(o.b_minus).second) out.push_back(o);
            return;
        }
        for (const auto& v : verts) {
            if (used.count(v) || indeg[v] != 0) continue;
            used.insert(v);
            order.push_back(v);
            for (const auto& [from, to] : dc)
                if (from == v) indeg[to]--;
            rec();
            for (const auto& [from, to] : dc)
                if (from == v) indeg[to]++;
            order.pop_back();
            used.erase(v);
        }
    };
    rec();
    return out;
}

std::vector<MessageId> OrientedCgras::b_minus_parents(const MessageId& v) const {
    std::vector<MessageId> out;
    for (const auto& [binned, against] : b_minus)
        if (binned == v) out.push_back(against);
    return out;
}

std::vector<MessageId> OrientedCgras::s_ancestors(const MessageId& v) const {
    auto s = base.s_ancestors(v);
    return {s.begin(), s.end()};
}

std::vector<MessageId> OrientedCgras::parents(const MessageId& v) const {
    auto s = base.s_ancestors(v);
    for (const auto& p : b_minus_parents(v)) s.insert(p);
    return {s.begin(), s.end()};
}

std::size_t OrientedCgras::position(const MessageId& v) const {
    auto it = std::find(order.begin(), order.end(), v);
    if (it == order.end()) throw KeyError("vertex not in orientation: " + v.to_string());
    return static_cast<std::size_t>(it - order.begin());
}

Factorization factorization(const OrientedCgras& g) {
    Factorization f;
    for (const auto& v : g.order) {
        auto parents = g.parents(v);
        std::sort(parents.begin(), parents.end(),
                  [&](const MessageId& a, const MessageId& b) { return g.position(a) > g.position(b); });
        f.push_back({v, parents});
    }
    return f;
}

std::string render_factorization(const Factorization& f, bool latex) {
    std::string s;
    for (const auto& factor : f) {
        if (latex) {
            s += "P_{U_{" + factor.vertex.to_latex() + "}";
            if (!factor.parents.empty()) {
                s += " | ";
                for (std::size_t i = 0; i < factor.parents.size(); ++i)
                    s += (i ? ", " : "") + std::string("U_{") + factor.parents[i].to_latex() + "}";
                s += ", Q";
            } else {
                s += " | Q";
            }
            s += "}\n";
        } else {
            s += "P(U_{" + factor.vertex.to_string() + "}";
            s += " | ";
            for (const auto& p : factor.parents) s += "U_{" + p.to_string() + "}, ";
            s += "Q)\n";
        }
    }
    return s;
}

Cgras decoder_subgraph(const Cgras& g, int z) {
    if (z < 1 || z > g.net.n_rx) throw std::out_of_range("decoder index out of range: " + std::to_string(z));
    Cgras out;
    out.net = g.net;
    for (const auto& v : g.vertices)
        if (v.rx.contains(z)) out.vertices.insert(v);
    for (const auto& e : g.s_edges)
        if (out.vertices.count(e.first) && out.vertices.count(e.second)) out.s_edges.insert(e);
    for (const auto& e : g.b_edges)
        if (out.vertices.count(e.first) && out.vertices.count(e.second)) out.b_edges.insert(e);
    return out;
}

bool d_separated(const OrientedCgras& g, const std::set<MessageId>& x, const std::set<MessageId>& y,
                 const std::set<MessageId>& cond) {
    // Moralised ancestral graph criterion.
    std::set<MessageId> anc;
    std::vector<MessageId> stack;
    for (const auto* s : {&x, &y, &cond})
        for (const auto& v : *s) stack.push_back(v);
    while (!stack.empty()) {
        MessageId v = stack.back();
        stack.pop_back();
        if (!anc.insert(v).second) continue;
        for (const auto& p : g.parents(v)) stack.push_back(p);
    }
    std::map<MessageId, std::set<MessageId>> adj;
    for (const auto& v : anc) {
        auto ps = g.parents(v);
        for (const auto& p : ps) {
            adj[v].insert(p);
            adj[p].insert(v);
        }
        for (std::size_t i = 0; i < ps.size(); ++i)
            for (std::size_t j = i + 1; j < ps.size(); ++j) {
                adj[ps[i]].insert(ps[j]);
                adj[ps[j]].insert(ps[i]);
            }
    }
    std::set<MessageId> seen;
    std::vector<MessageId> frontier;
    for (const auto& v : x)
        if (!cond.count(v)) frontier.push_back(v);
    while (!frontier.empty()) {
        MessageId v = frontier.back();
        frontier.pop_back();
        if (!seen.insert(v).second) continue;
        if (y.count(v)) return false;
        for (const auto& w : adj[v])
            if (!cond.count(w) && !seen.count(w)) frontier.push_back(w);
    }
    return true;
}

MarkovSignature markov_signature(const OrientedCgras& g) {
    MarkovSignature sig;
    auto adjacent = [&](const MessageId& a, const MessageId& b) {
        auto pa = g.parents(a);
        auto pb = g.parents(b);
        return std::find(pa.begin(), pa.end(), b) != pa.end() || std::find(pb.begin(), pb.end(), a) != pb.end();
    };
    for (const auto& v : g.order) {
        auto ps = g.parents(v);
        for (const auto& p : ps) sig.skeleton.insert(std::minmax(p, v));
        for (std::size_t i = 0; i < ps.size(); ++i)
            for (std::size_t j = i + 1; j < ps.size(); ++j)
                if (!adjacent(ps[i], ps[j])) {
                    auto [a, b] = std::minmax(ps[i], ps[j]);
                    sig.immoralities.insert({a, v, b});
                }
    }
    return sig;
}

}  // namespace cgras
