// Numeric evaluation of entropy expressions and regions on finite-alphabet
// joint distributions (bits).
#pragma once

#include "cgras/polyhedra.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cgras {

struct PmfError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnboundedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr double kTolerance = 1e-9;

// Dense joint table; the last variable varies fastest.
class JointPmf {
public:
    JointPmf() = default;
    JointPmf(std::vector<VarRef> vars, std::vector<int> card, std::vector<double> prob);

    const std::vector<VarRef>& variables() const { return vars_; }
    const std::vector<int>& cardinalities() const { return card_; }
    const std::vector<double>& table() const { return prob_; }
    bool has(const VarRef& v) const;

    // H(block | Q) in bits; Q is conditioned on when the table contains it.
    double entropy(const VarSet& block) const;

private:
    double raw_entropy(const std::vector<std::size_t>& idx) const;

    std::vector<VarRef> vars_;
    std::vector<int> card_;
    std::vector<double> prob_;
};

// P(var | parents) as a table indexed row-major over (parents..., var).
struct PmfFactor {
    VarRef var;
    int card = 1;
    std::vector<VarRef> parents;
    std::vector<double> table;
};

// Multiplies the factors in the order given; every parent must be declared by
// an earlier factor.
JointPmf pmf_from_factors(const std::vector<PmfFactor>& factors);

// Reads {"variables":[{"name","card"}], "table":[...]} or {"factors":[{"var","card","parents","table"}]}.
JointPmf parse_pmf_json(const std::string& text);

double eval_expr(const JointPmf& pmf, const EntropyExpr& e);

struct NumericRow {
    std::map<RateVar, Rational> coeffs;
    double rhs = 0;
};

struct NumericRegion {
    std::vector<RateVar> variables;
    std::vector<NumericRow> rows;  // Σ coeff·var ≤ rhs, variables are non-negative
};

NumericRegion instantiate_region(const Region& r, const JointPmf& pmf);

// Sets a variable to a fixed value and drops it from the system.
NumericRegion fix_variable(const NumericRegion& nr, const RateVar& v, double value);

// Exact redundancy removal on the rational image of the double right-hand sides.
NumericRegion remove_redundant_numeric(const NumericRegion& nr);

using RatePoint = std::vector<double>;

// All vertices of {rows, R ≥ 0}, sorted lexicographically in variable order.
std::vector<RatePoint> enumerate_vertices(const NumericRegion& nr);

}  // namespace cgras
