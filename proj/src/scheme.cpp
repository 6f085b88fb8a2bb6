#include "cgras/scheme.hpp"

#include <json.hpp>

#include <algorithm>

namespace cgras {

using nlohmann::json;

bool operator==(const Scheme& a, const Scheme& b) {
    return a.name == b.name && a.description == b.description && a.graph.net.n_tx == b.graph.net.n_tx &&
           a.graph.net.n_rx == b.graph.net.n_rx && a.graph.net.messages == b.graph.net.messages &&
           a.graph.net.intended == b.graph.net.intended && a.graph.vertices == b.graph.vertices &&
           a.graph.s_edges == b.graph.s_edges && a.graph.b_edges == b.graph.b_edges && a.split.gamma == b.split.gamma &&
           a.options.enc == b.options.enc && a.options.dec == b.options.dec && a.options.split == b.options.split &&
           a.options.prune == b.options.prune;
}

namespace {

int line_of(const std::string& text, std::size_t byte) {
    int line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

MessageId message_at(const json& j, const std::string& path, const Network& net) {
    if (!j.is_string()) throw SchemeError(path, "expected a message string such as \"1->{1,2}\"");
    MessageId m;
    try {
        m = parse_message_id(j.get<std::string>());
        net.check_id(m);
    } catch (const std::exception& e) {
        throw SchemeError(path, e.what());
    }
    return m;
}

const json& field(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) throw SchemeError(path, "missing field \"" + key + "\"");
    return j.at(key);
}

int int_field(const json& j, const std::string& key, const std::string& path) {
    const json& v = field(j, key, path);
    if (!v.is_number_integer()) throw SchemeError(path + "." + key, "expected an integer");
    return v.get<int>();
}

}  // namespace

Scheme parse_scheme(const std::string& text, bool auto_close) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemeError("line " + std::to_string(line_of(text, e.byte)), "JSON syntax error");
    }
    if (!j.is_object()) throw SchemeError("$", "scheme must be a JSON object");
    Scheme s;
    s.name = j.value("name", std::string());
    s.description = j.value("description", std::string());
    Network& net = s.graph.net;
    const json& nw = field(j, "network", "$");
    net.n_tx = int_field(nw, "n_tx", "$.network");
    net.n_rx = int_field(nw, "n_rx", "$.network");
    if (net.n_tx < 1 || net.n_rx < 1 || net.n_tx > NodeSet::kMaxNodes || net.n_rx > NodeSet::kMaxNodes)
        throw SchemeError("$.network", "node counts must lie in 1.." + std::to_string(NodeSet::kMaxNodes));
    const json& msgs = field(j, "messages", "$");
    if (!msgs.is_array()) throw SchemeError("$.messages", "expected an array");
    for (std::size_t i = 0; i < msgs.size(); ++i)
        net.messages.insert(message_at(msgs[i], "$.messages[" + std::to_string(i) + "]", net));

    Cgras& g = s.graph;
    if (j.contains("vertices")) {
        const json& vs = j.at("vertices");
        if (!vs.is_array()) throw SchemeError("$.vertices", "expected an array");
        for (std::size_t i = 0; i < vs.size(); ++i)
            g.vertices.insert(message_at(vs[i], "$.vertices[" + std::to_string(i) + "]", net));
    }
    if (j.contains("split")) {
        const json& sp = j.at("split");
        if (!sp.is_array()) throw SchemeError("$.split", "expected an array of [original, split, num, den]");
        for (std::size_t i = 0; i < sp.size(); ++i) {
            std::string path = "$.split[" + std::to_string(i) + "]";
            const json& t = sp[i];
            if (!t.is_array() || t.size() != 4 || !t[2].is_number_integer() || !t[3].is_number_integer())
                throw SchemeError(path, "expected [original, split, numerator, denominator]");
            MessageId o = message_at(t[0], path + "[0]", net);
            MessageId d = message_at(t[1], path + "[1]", net);
            long den = t[3].get<long>();
            if (den == 0) throw SchemeError(path + "[3]", "zero denominator");
            s.split.gamma[{o, d}] = make_rational(t[2].get<long>(), den);
            g.vertices.insert(d);
        }
    } else {
        s.split = SplitMatrix::identity(net.messages);
        for (const auto& m : net.messages) g.vertices.insert(m);
    }
    if (j.contains("edges")) {
        const json& es = j.at("edges");
        if (!es.is_array()) throw SchemeError("$.edges", "expected an array");
        for (std::size_t i = 0; i < es.size(); ++i) {
            std::string path = "$.edges[" + std::to_string(i) + "]";
            const json& e = es[i];
            std::string type = field(e, "type", path).is_string() ? e.at("type").get<std::string>() : "";
            try {
                if (type == "superposition") {
                    g = add_s_edge(g, message_at(field(e, "top", path), path + ".top", net),
                                   message_at(field(e, "base", path), path + ".base", net));
                } else if (type == "binning") {
                    g = add_b_edge(g, message_at(field(e, "binned", path), path + ".binned", net),
                                   message_at(field(e, "against", path), path + ".against", net));
                } else if (type == "joint") {
                    const json& pr = field(e, "pair", path);
                    if (!pr.is_array() || pr.size() != 2) throw SchemeError(path + ".pair", "expected two messages");
                    MessageId a = message_at(pr[0], path + ".pair[0]", net);
                    MessageId b = message_at(pr[1], path + ".pair[1]", net);
                    g = add_b_edge(add_b_edge(g, a, b), b, a);
                } else {
                    throw SchemeError(path + ".type", "expected \"superposition\", \"binning\" or \"joint\"");
                }
            } catch (const IllegalEdge& ex) {
                throw ValidationError(path + ": " + ex.what());
            }
        }
    }
    if (j.contains("intended")) {
        const json& in = j.at("intended");
        if (!in.is_object()) throw SchemeError("$.intended", "expected an object keyed by decoder index");
        for (const auto& [key, list] : in.items()) {
            std::string path = "$.intended." + key;
            int z = 0;
            try {
                z = std::stoi(key);
            } catch (const std::exception&) {
                throw SchemeError(path, "decoder keys must be integers");
            }
            if (z < 1 || z > net.n_rx) throw SchemeError(path, "decoder index out of range");
            if (!list.is_array()) throw SchemeError(path, "expected an array");
            auto& set = net.intended[z];
            for (std::size_t i = 0; i < list.size(); ++i)
                set.insert(message_at(list[i], path + "[" + std::to_string(i) + "]", net));
        }
    }
    if (j.contains("options")) {
        const json& o = j.at("options");
        auto pick = [&](const std::string& key, const std::vector<std::string>& allowed, const std::string& dflt) {
            if (!o.contains(key)) return dflt;
            if (!o.at(key).is_string()) throw SchemeError("$.options." + key, "expected a string");
            std::string v = o.at(key).get<std::string>();
            if (std::find(allowed.begin(), allowed.end(), v) == allowed.end())
                throw SchemeError("$.options." + key, "unknown value \"" + v + "\"");
            return v;
        };
        s.options.enc = pick("encoder", {"cl", "mcl"}, "cl") == "cl" ? EncoderMode::CL : EncoderMode::MCL;
        s.options.dec = pick("decoder", {"sd", "jd"}, "jd") == "sd" ? DecoderMode::SD : DecoderMode::JD;
        s.options.split = pick("split_mode", {"fixed", "free"}, "fixed") == "free" ? SplitMode::Free : SplitMode::Fixed;
        if (o.contains("prune")) {
            if (!o.at("prune").is_boolean()) throw SchemeError("$.options.prune", "expected a boolean");
            s.options.prune = o.at("prune").get<bool>();
        }
    }
    for (const auto& m : net.messages)
        if (!s.split.originals().count(m)) g.vertices.insert(m);
    for (const auto& v : g.vertices) net.check_id(v);

    SplitReport rep = validate_split_matrix(net, s.split);
    if (!rep.ok) {
        std::string msg = "invalid split matrix:";
        for (const auto& v : rep.violations) msg += " " + v + ";";
        throw ValidationError(msg);
    }
    AssumptionReport ar = check_assumptions(g);
    if (!ar.ok()) {
        if (!auto_close) {
            std::string msg = "assumption check failed:";
            for (const auto& f : ar.failures) msg += " " + f + ";";
            throw ValidationError(msg);
        }
        try {
            g = close_assumptions(g);
        } catch (const ClosureImpossible& ex) {
            throw ValidationError(ex.what());
        }
    }
    return s;
}

std::string serialize_scheme(const Scheme& s) {
    const Network& net = s.graph.net;
    json j;
    j["name"] = s.name;
    if (!s.description.empty()) j["description"] = s.description;
    j["network"] = {{"n_tx", net.n_tx}, {"n_rx", net.n_rx}};
    j["messages"] = json::array();
    for (const auto& m : net.messages) j["messages"].push_back(m.to_ascii());
    j["vertices"] = json::array();
    for (const auto& v : s.graph.vertices) j["vertices"].push_back(v.to_ascii());
    j["split"] = json::array();
    for (const auto& [k, c] : s.split.gamma)
        j["split"].push_back({k.first.to_ascii(), k.second.to_ascii(), std::stol(numerator_string(c)),
                              std::stol(denominator_string(c))});
    j["edges"] = json::array();
    for (const auto& [child, parent] : s.graph.s_edges)
        j["edges"].push_back({{"type", "superposition"}, {"top", child.to_ascii()}, {"base", parent.to_ascii()}});
    for (const auto& [b, a] : s.graph.b_edges) {
        if (s.graph.joint(b, a)) {
            if (a < b) continue;
            j["edges"].push_back({{"type", "joint"}, {"pair", {b.to_ascii(), a.to_ascii()}}});
        } else {
            j["edges"].push_back({{"type", "binning"}, {"binned", b.to_ascii()}, {"against", a.to_ascii()}});
        }
    }
    j["intended"] = json::object();
    for (const auto& [z, set] : net.intended) {
        json arr = json::array();
        for (const auto& m : set) arr.push_back(m.to_ascii());
        j["intended"][std::to_string(z)] = arr;
    }
    j["options"] = {{"encoder", s.options.enc == EncoderMode::CL ? "cl" : "mcl"},
                    {"decoder", s.options.dec == DecoderMode::SD ? "sd" : "jd"},
                    {"split_mode", s.options.split == SplitMode::Free ? "free" : "fixed"},
                    {"prune", s.options.prune}};
    return j.dump(2) + "\n";
}

Scheme load_fixture(const std::string& name) { return parse_scheme(fixture_text(name)); }

}  // namespace cgras
