#include "cgras/scheme.hpp"

#include <map>

namespace cgras {

namespace {

const char* kMac = R"("network": {"n_tx": 2, "n_rx": 1},
  "messages": ["1->1", "2->1", "{1,2}->1"],)";

const char* kBc = R"("network": {"n_tx": 1, "n_rx": 2},
  "messages": ["1->1", "1->2", "1->{1,2}"],)";

const char* kIfc = R"("network": {"n_tx": 2, "n_rx": 2},
  "messages": ["1->1", "2->2"],
  "split": [["1->1", "1->1", 1, 2], ["1->1", "1->{1,2}", 1, 2],
            ["2->2", "2->2", 1, 2], ["2->2", "2->{1,2}", 1, 2]],
  "intended": {"1": ["1->1", "1->{1,2}"], "2": ["2->2", "2->{1,2}"]},
  "options": {"encoder": "cl", "decoder": "jd", "split_mode": "free", "prune": true},)";

const char* kCifc = R"("network": {"n_tx": 2, "n_rx": 2},
  "messages": ["1->1", "{1,2}->2"],
  "split": [["1->1", "1->1", 1, 2], ["1->1", "1->{1,2}", 1, 2],
            ["{1,2}->2", "1->2", 1, 4], ["{1,2}->2", "2->2", 1, 4],
            ["{1,2}->2", "{1,2}->2", 1, 4], ["{1,2}->2", "{1,2}->{1,2}", 1, 4]],)";

const char* kCifcSuperposition = R"(
    {"type": "superposition", "top": "{1,2}->2", "base": "{1,2}->{1,2}"},
    {"type": "superposition", "top": "2->2", "base": "{1,2}->2"},
    {"type": "superposition", "top": "1->2", "base": "{1,2}->2"},
    {"type": "superposition", "top": "1->1", "base": "1->{1,2}"},
    {"type": "superposition", "top": "1->{1,2}", "base": "{1,2}->{1,2}"},
    {"type": "superposition", "top": "1->2", "base": "1->{1,2}"})";

std::string make(const std::string& name, const std::string& desc, const std::string& head, const std::string& edges) {
    return "{\n  \"name\": \"" + name + "\",\n  \"description\": \"" + desc + "\",\n  " + head + "\n  \"edges\": [" + edges +
           "\n  ]\n}\n";
}

const std::map<std::string, std::string>& table() {
    static const std::map<std::string, std::string> t = [] {
        std::map<std::string, std::string> m;
        m["mac_spc"] = make("mac_spc", "MAC with common message, private codewords superposed on the common one", kMac, R"(
    {"type": "superposition", "top": "1->1", "base": "{1,2}->1"},
    {"type": "superposition", "top": "2->1", "base": "{1,2}->1"})");
        m["mac_bin"] = make("mac_bin", "MAC with common message, private codewords binned against the common one", kMac, R"(
    {"type": "binning", "binned": "1->1", "against": "{1,2}->1"},
    {"type": "binning", "binned": "2->1", "against": "{1,2}->1"})");
        m["mac_mixed"] = make("mac_mixed", "MAC with common message, one private codeword superposed and one binned", kMac, R"(
    {"type": "superposition", "top": "1->1", "base": "{1,2}->1"},
    {"type": "binning", "binned": "2->1", "against": "{1,2}->1"})");
        m["bc_marton"] = make("bc_marton", "Broadcast channel, Marton coding with a common cloud center", kBc, R"(
    {"type": "superposition", "top": "1->1", "base": "1->{1,2}"},
    {"type": "superposition", "top": "1->2", "base": "1->{1,2}"},
    {"type": "joint", "pair": ["1->1", "1->2"]})");
        m["bc_bin"] = make("bc_bin", "Broadcast channel, all three codewords jointly binned", kBc, R"(
    {"type": "joint", "pair": ["1->1", "1->2"]},
    {"type": "joint", "pair": ["1->1", "1->{1,2}"]},
    {"type": "joint", "pair": ["1->2", "1->{1,2}"]})");
        m["bc_mixed"] = make("bc_mixed", "Broadcast channel, one private codeword superposed, the other jointly binned", kBc, R"(
    {"type": "superposition", "top": "1->2", "base": "1->{1,2}"},
    {"type": "joint", "pair": ["1->1", "1->{1,2}"]},
    {"type": "joint", "pair": ["1->1", "1->2"]})");
        m["ifc_hk"] = make("ifc_hk", "Interference channel, private codewords superposed on public ones", kIfc, R"(
    {"type": "superposition", "top": "1->1", "base": "1->{1,2}"},
    {"type": "superposition", "top": "2->2", "base": "2->{1,2}"})");
        m["ifc_bin"] = make("ifc_bin", "Interference channel, private and public codewords jointly binned", kIfc, R"(
    {"type": "joint", "pair": ["1->1", "1->{1,2}"]},
    {"type": "joint", "pair": ["2->2", "2->{1,2}"]})");
        m["ifc_mixed"] = make("ifc_mixed", "Interference channel, superposition at user 1 and joint binning at user 2", kIfc, R"(
    {"type": "superposition", "top": "1->1", "base": "1->{1,2}"},
    {"type": "joint", "pair": ["2->2", "2->{1,2}"]})");
        m["cifc_spc"] = make("cifc_spc", "Cognitive interference channel, superposition only", kCifc, kCifcSuperposition);
        m["cifc_bin"] = make("cifc_bin", "Cognitive interference channel, binning only", kCifc, R"(
    {"type": "joint", "pair": ["1->{1,2}", "1->1"]},
    {"type": "joint", "pair": ["1->{1,2}", "1->2"]},
    {"type": "joint", "pair": ["1->1", "1->2"]},
    {"type": "joint", "pair": ["{1,2}->{1,2}", "{1,2}->2"]})");
        m["cifc_full"] = make("cifc_full", "Cognitive interference channel, superposition and binning combined", kCifc,
                              std::string(kCifcSuperposition) + R"(,
    {"type": "binning", "binned": "1->{1,2}", "against": "{1,2}->2"},
    {"type": "binning", "binned": "1->1", "against": "{1,2}->2"},
    {"type": "joint", "pair": ["1->1", "1->2"]})");
        return m;
    }();
    return t;
}

}  // namespace

std::vector<std::string> fixture_names() {
    return {"mac_spc",   "mac_bin", "mac_mixed", "bc_marton", "bc_bin",   "bc_mixed",
            "ifc_hk",    "ifc_bin", "ifc_mixed", "cifc_spc",  "cifc_bin", "cifc_full"};
}

std::string fixture_text(const std::string& name) {
    auto it = table().find(name);
    if (it == table().end()) throw KeyError("unknown fixture: " + name);
    return it->second;
}

}  // namespace cgras
