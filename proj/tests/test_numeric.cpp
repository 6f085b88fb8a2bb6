#include <doctest.h>

#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

using namespace cgras;
using cgras::testing::fixture_region;
using cgras::testing::mid;

namespace {

const VarRef X1 = VarRef::input(1), X2 = VarRef::input(2), Y = VarRef::output(1);

JointPmf adder_mac() {
    std::vector<double> p(12, 0.0);
    // (x1, x2, y) with y = x1 + x2; the last variable varies fastest.
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) p[static_cast<std::size_t>((a * 2 + b) * 3 + a + b)] = 0.25;
    return JointPmf({X1, X2, Y}, {2, 2, 3}, p);
}

JointPmf adder_mac_with_aux() {
    std::ifstream in(CGRAS_TEST_DATA "/adder_mac_pmf.json");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_pmf_json(ss.str());
}

NumericRegion pentagon() {
    NumericRegion nr;
    auto r1 = parse_rate_var("R(1->1)"), r2 = parse_rate_var("R(2->1)");
    nr.variables = {r1, r2};
    nr.rows.push_back({{{r1, 1}}, 1.0});
    nr.rows.push_back({{{r2, 1}}, 1.0});
    nr.rows.push_back({{{r1, 1}, {r2, 1}}, 1.5});
    return nr;
}

}  // namespace

TEST_CASE("entropies of simple distributions") {
    JointPmf bit({X1}, {2}, {0.5, 0.5});
    CHECK(bit.entropy({X1}) == doctest::Approx(1.0));
    JointPmf det({X1}, {2}, {1.0, 0.0});
    CHECK(det.entropy({X1}) == doctest::Approx(0.0));
    CHECK(bit.entropy({}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(bit.entropy({X2}), KeyError);
    // I(A;A) is H(A).
    CHECK(eval_expr(bit, cond_entropy({X1}, {}) ) == doctest::Approx(1.0));
    CHECK(eval_expr(bit, EntropyExpr::entropy({X1}) + EntropyExpr::entropy({X1}) - EntropyExpr::entropy({X1})) ==
          doctest::Approx(1.0));
}

TEST_CASE("pmf validation") {
    CHECK_THROWS_AS(JointPmf({X1}, {2}, {0.5, 0.6}), PmfError);
    CHECK_THROWS_AS(JointPmf({X1}, {2}, {1.0}), PmfError);
    CHECK_THROWS_AS(JointPmf({X1}, {2}, {-0.5, 1.5}), PmfError);
    CHECK_THROWS_AS(pmf_from_factors({{X1, 2, {X2}, {1, 0, 0, 1}}}), PmfError);
    CHECK_THROWS_AS(parse_pmf_json("{"), PmfError);
    CHECK_THROWS_AS(parse_pmf_json("{\"variables\": 3}"), PmfError);
}

TEST_CASE("binary adder MAC information quantities") {
    JointPmf p = adder_mac();
    CHECK(eval_expr(p, mutual_info({X1}, {Y}, {X2})) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eval_expr(p, mutual_info(make_varset({X1, X2}), {Y})) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(eval_expr(p, mutual_info({X1}, {X2})) == 0.0);
    JointPmf f = adder_mac_with_aux();
    CHECK(f.variables().size() == 6);
    CHECK(eval_expr(f, mutual_info({VarRef::aux(mid("1->1"))}, {Y})) == doctest::Approx(0.5));
}

TEST_CASE("time sharing is conditioned on") {
    // Q selects which of X1, X2 is a uniform bit; the other is constant.
    std::vector<double> p = {0.25, 0, 0.25, 0, 0.25, 0.25, 0, 0};
    JointPmf q({VarRef::time_share(), X1, X2}, {2, 2, 2}, p);
    CHECK(q.entropy({X1}) == doctest::Approx(0.5));
    CHECK(q.entropy(make_varset({X1, X2})) == doctest::Approx(1.0));
}

TEST_CASE("region instantiation") {
    JointPmf f = adder_mac_with_aux();
    Region mac = fixture_region("mac_spc");
    NumericRegion nr = instantiate_region(mac, f);
    CHECK(nr.rows.size() == mac.rows.size());
    NumericRegion reduced = remove_redundant_numeric(nr);
    std::vector<double> rhs;
    for (const auto& r : reduced.rows) rhs.push_back(r.rhs);
    std::sort(rhs.begin(), rhs.end());
    REQUIRE(rhs.size() == 3);
    CHECK(rhs[0] == doctest::Approx(1.0));
    CHECK(rhs[1] == doctest::Approx(1.0));
    CHECK(rhs[2] == doctest::Approx(1.5));

    // Row order does not matter.
    Region rev = mac;
    std::reverse(rev.rows.begin(), rev.rows.end());
    NumericRegion nr2 = instantiate_region(rev, f);
    for (std::size_t i = 0; i < nr.rows.size(); ++i) CHECK(nr.rows[i].rhs == nr2.rows[nr.rows.size() - 1 - i].rhs);

    CHECK(instantiate_region(Region{}, f).rows.empty());

    // A point mass makes every mutual information vanish.
    std::vector<PmfFactor> point = {{VarRef::aux(mid("{1,2}->1")), 1, {}, {1.0}}, {VarRef::aux(mid("1->1")), 2, {}, {1.0, 0.0}},
                                    {VarRef::aux(mid("2->1")), 2, {}, {1.0, 0.0}}, {Y, 2, {}, {0.0, 1.0}}};
    for (const auto& r : instantiate_region(mac, pmf_from_factors(point)).rows) CHECK(r.rhs == 0.0);
    CHECK_THROWS_AS(instantiate_region(mac, adder_mac()), KeyError);
}

TEST_CASE("vertex enumeration") {
    auto v = enumerate_vertices(pentagon());
    std::vector<RatePoint> want = {{0, 0}, {0, 1}, {0.5, 1}, {1, 0}, {1, 0.5}};
    REQUIRE(v.size() == want.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        CHECK(v[i][0] == doctest::Approx(want[i][0]));
        CHECK(v[i][1] == doctest::Approx(want[i][1]));
    }
    NumericRegion line;
    auto r1 = parse_rate_var("R(1->1)");
    line.variables = {r1};
    line.rows.push_back({{{r1, 1}}, 1.0});
    auto lv = enumerate_vertices(line);
    REQUIRE(lv.size() == 2);
    CHECK(lv[0][0] == 0.0);
    CHECK(lv[1][0] == doctest::Approx(1.0));
    NumericRegion bad = line;
    bad.rows[0].rhs = -1.0;
    CHECK(enumerate_vertices(bad).empty());
    NumericRegion open;
    open.variables = {r1, parse_rate_var("R(2->1)")};
    open.rows.push_back({{{r1, 1}}, 1.0});
    CHECK_THROWS_AS(enumerate_vertices(open), UnboundedError);
    NumericRegion wide;
    for (const char* n : {"R(1->1)", "R(2->1)", "R(1->2)", "R(2->2)"}) wide.variables.push_back(parse_rate_var(n));
    CHECK_THROWS_AS(enumerate_vertices(wide), UnsupportedError);
}

TEST_CASE("fixing a variable") {
    NumericRegion nr = pentagon();
    NumericRegion cut = fix_variable(nr, parse_rate_var("R(1->1)"), 0.75);
    CHECK(cut.variables.size() == 1);
    auto v = enumerate_vertices(remove_redundant_numeric(cut));
    REQUIRE(v.size() == 2);
    CHECK(v[1][0] == doctest::Approx(0.75));
}
