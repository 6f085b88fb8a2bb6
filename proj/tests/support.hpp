// Shared helpers for the unit and acceptance tests.
#pragma once

#include "cgras/render.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace cgras::testing {

inline Region region_of(const std::vector<std::string>& rows, const std::vector<std::string>& vars) {
    std::vector<Inequality> qs;
    for (const auto& r : rows) qs.push_back(parse_inequality(r));
    Region reg = make_region(qs);
    reg.variables.clear();
    for (const auto& v : vars) reg.variables.push_back(parse_rate_var(v));
    return reg;
}

inline Region fixture_region(const std::string& name, const AssembleOptions* override_opt = nullptr) {
    Scheme s = load_fixture(name);
    return assemble_region(equivalent_adg(s.graph), s.split, override_opt ? *override_opt : s.options);
}

inline MessageId mid(const std::string& s) { return parse_message_id(s); }

// Random legal chain graph on a small network, built edge by edge.
inline Cgras random_legal_graph(std::mt19937& rng, int max_vertices = 6) {
    Cgras g;
    g.net.n_tx = 2;
    g.net.n_rx = 2;
    std::vector<MessageId> all;
    for (unsigned tx = 1; tx < 4; ++tx)
        for (unsigned rx = 1; rx < 4; ++rx) all.push_back(MessageId{NodeSet::from_mask(tx), NodeSet::from_mask(rx)});
    std::shuffle(all.begin(), all.end(), rng);
    int nv = std::uniform_int_distribution<int>(2, max_vertices)(rng);
    std::vector<MessageId> verts(all.begin(), all.begin() + nv);
    for (const auto& v : verts) {
        g.net.messages.insert(v);
        g.vertices.insert(v);
    }
    std::uniform_int_distribution<int> pick(0, nv - 1);
    std::uniform_int_distribution<int> kind(0, 2);
    int n_edges = std::uniform_int_distribution<int>(0, nv + 2)(rng);
    for (int e = 0; e < n_edges; ++e) {
        const MessageId& a = verts[static_cast<std::size_t>(pick(rng))];
        const MessageId& b = verts[static_cast<std::size_t>(pick(rng))];
        if (a == b) continue;
        int k = kind(rng);
        try {
            if (k == 0 && superposition_legal(a, b) && !g.s_related(a, b)) g = add_s_edge(g, a, b);
            else if (k == 1 && binning_legal(a, b) && !g.s_related(a, b)) g = add_b_edge(g, a, b);
            else if (k == 2 && binning_legal(a, b) && binning_legal(b, a) && !g.s_related(a, b))
                g = add_b_edge(add_b_edge(g, a, b), b, a);
        } catch (const IllegalEdge&) {
        }
    }
    return g;
}

}  // namespace cgras::testing
