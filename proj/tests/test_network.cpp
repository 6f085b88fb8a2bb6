#include <doctest.h>

#include "support.hpp"

#include <algorithm>

using namespace cgras;
using cgras::testing::mid;

TEST_CASE("node sets are canonical and ordered lexicographically") {
    NodeSet a{2, 1, 2};
    CHECK(a.members() == std::vector<int>{1, 2});
    CHECK(a.to_string() == "{1,2}");
    CHECK(NodeSet{3}.to_string() == "3");
    CHECK_THROWS_AS(NodeSet{0}, DimensionError);
    CHECK_THROWS_AS(NodeSet::from_vector({17}), DimensionError);
    for (std::uint32_t x = 0; x < 128; ++x)
        for (std::uint32_t y = 0; y < 128; ++y) {
            auto sx = NodeSet::from_mask(x), sy = NodeSet::from_mask(y);
            auto mx = sx.members(), my = sy.members();
            REQUIRE((sx < sy) == std::lexicographical_compare(mx.begin(), mx.end(), my.begin(), my.end()));
        }
}

TEST_CASE("message ids round-trip through text") {
    for (const char* t : {"1->1", "1->{1,2}", "{1,2}->2", "{1,2,3}->{2,3}"}) CHECK(mid(t).to_ascii() == t);
    CHECK(parse_message_id("1→{1,2}") == mid("1->{1,2}"));
    CHECK(mid("1->{1,2}").to_string() == "1→{1,2}");
    CHECK_THROWS(parse_message_id("1-{1,2}"));
    CHECK_THROWS(parse_message_id("{1,2->1"));
    CHECK_THROWS(parse_message_id("->1"));
}

TEST_CASE("network dimension checks") {
    Network net;
    net.n_tx = 2;
    net.n_rx = 1;
    CHECK(net.id_valid(mid("{1,2}->1")));
    CHECK_FALSE(net.id_valid(mid("1->2")));
    CHECK_THROWS_AS(net.check_id(mid("3->1")), DimensionError);
}

TEST_CASE("split legality") {
    CHECK(split_legal(mid("1->1"), mid("1->{1,2}")));
    CHECK(split_legal(mid("1->1"), mid("1->1")));
    CHECK_FALSE(split_legal(mid("1->{1,2}"), mid("1->1")));
}

namespace {

Network ifc_network() {
    Network net;
    net.n_tx = 2;
    net.n_rx = 2;
    net.messages = {mid("1->1"), mid("2->2")};
    return net;
}

SplitMatrix ifc_split(const Rational& alpha, const Rational& beta) {
    SplitMatrix g;
    g.gamma[{mid("1->1"), mid("1->1")}] = 1 - alpha;
    g.gamma[{mid("1->1"), mid("1->{1,2}")}] = alpha;
    g.gamma[{mid("2->2"), mid("2->2")}] = 1 - beta;
    g.gamma[{mid("2->2"), mid("2->{1,2}")}] = beta;
    return g;
}

}  // namespace

TEST_CASE("split matrix validation") {
    Network mac;
    mac.n_tx = 2;
    mac.n_rx = 1;
    mac.messages = {mid("1->1"), mid("2->1"), mid("{1,2}->1")};
    CHECK(validate_split_matrix(mac, SplitMatrix::identity(mac.messages)).ok);
    CHECK(validate_split_matrix(ifc_network(), ifc_split(Rational(1, 2), Rational(1, 2))).ok);

    SplitMatrix bad = ifc_split(Rational(1, 2), Rational(1, 2));
    bad.gamma[{mid("1->1"), mid("1->1")}] = Rational(4, 10);
    auto rep = validate_split_matrix(ifc_network(), bad);
    CHECK_FALSE(rep.ok);
    REQUIRE_FALSE(rep.violations.empty());
    CHECK(rep.violations.front().find("row sum") != std::string::npos);
}

TEST_CASE("applying a split matrix") {
    RateVector r{{mid("1->1"), 2}, {mid("2->2"), 2}};
    auto id = apply_split(SplitMatrix::identity({mid("1->1"), mid("2->2")}), r);
    CHECK(id == r);
    auto rp = apply_split(ifc_split(Rational(1, 2), Rational(1, 2)), r);
    CHECK(rp.at(mid("1->1")) == 1);
    CHECK(rp.at(mid("1->{1,2}")) == 1);
    CHECK(rp.at(mid("2->2")) == 1);
    CHECK(rp.at(mid("2->{1,2}")) == 1);

    // MAC with common message: the common rate moves entirely onto user 1's private codeword.
    SplitMatrix g;
    g.gamma[{mid("1->1"), mid("1->1")}] = 1;
    g.gamma[{mid("2->1"), mid("2->1")}] = 1;
    g.gamma[{mid("{1,2}->1"), mid("1->1")}] = 1;
    g.gamma[{mid("{1,2}->1"), mid("{1,2}->1")}] = 0;
    Network mac;
    mac.n_tx = 2;
    mac.n_rx = 1;
    mac.messages = {mid("1->1"), mid("2->1"), mid("{1,2}->1")};
    CHECK(validate_split_matrix(mac, g).ok);
    RateVector r_mac{{mid("1->1"), 0}, {mid("2->1"), 1}, {mid("{1,2}->1"), 1}};
    auto out = apply_split(g, r_mac);
    CHECK(out[mid("1->1")] == 1);
    CHECK(out[mid("2->1")] == 1);
    CHECK(out[mid("{1,2}->1")] == 0);
    CHECK_THROWS_AS(apply_split(g, RateVector{{mid("2->2"), 1}}), KeyError);
}
