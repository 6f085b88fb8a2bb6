// Exact symbolic algebra of joint entropies and conditional mutual informations.
// Every atom H(A) is implicitly conditioned on the time-sharing variable Q.
#pragma once

#include "cgras/network.hpp"
#include "cgras/rational.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cgras {

struct IllFormedInfo : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VarRef {
    enum class Kind { Aux, Input, Output, TimeShare };
    Kind kind = Kind::Aux;
    MessageId id{};   // used by Aux
    int index = 0;    // used by Input (X_k) and Output (Y_z)

    static VarRef aux(const MessageId& m) { return VarRef{Kind::Aux, m, 0}; }
    static VarRef input(int k) { return VarRef{Kind::Input, {}, k}; }
    static VarRef output(int z) { return VarRef{Kind::Output, {}, z}; }
    static VarRef time_share() { return VarRef{Kind::TimeShare, {}, 0}; }

    // "U_{1→{1,2}}", "Y_1", "X_2", "Q".
    std::string to_string() const;
    // "U(1;1,2)", "Y1", "X2", "Q"; accepted by parse_var_ref.
    std::string to_ascii() const;
    std::string to_latex() const;

    friend bool operator<(const VarRef& a, const VarRef& b);
    friend bool operator==(const VarRef& a, const VarRef& b);
    friend bool operator!=(const VarRef& a, const VarRef& b) { return !(a == b); }
};

VarRef parse_var_ref(const std::string& text);

// Sorted, duplicate-free block of variables.
using VarSet = std::vector<VarRef>;

VarSet make_varset(std::vector<VarRef> vars);
VarSet set_union(const VarSet& a, const VarSet& b);
VarSet set_minus(const VarSet& a, const VarSet& b);
VarSet set_intersection(const VarSet& a, const VarSet& b);
VarSet aux_set(const std::vector<MessageId>& ids);

// Rational combination of entropy atoms plus a rational constant. The constant
// is zero for every expression built from information quantities; it is used
// by purely numeric linear systems.
class EntropyExpr {
public:
    EntropyExpr() = default;
    static EntropyExpr constant(const Rational& c);
    static EntropyExpr entropy(const VarSet& block);

    const std::map<VarSet, Rational>& terms() const { return terms_; }
    const Rational& constant_term() const { return constant_; }
    bool is_zero() const { return terms_.empty() && constant_ == 0; }
    bool is_constant() const { return terms_.empty(); }

    EntropyExpr& operator+=(const EntropyExpr& o);
    EntropyExpr& operator-=(const EntropyExpr& o);
    EntropyExpr& operator*=(const Rational& c);
    friend EntropyExpr operator+(EntropyExpr a, const EntropyExpr& b) { return a += b; }
    friend EntropyExpr operator-(EntropyExpr a, const EntropyExpr& b) { return a -= b; }
    friend EntropyExpr operator*(const Rational& c, EntropyExpr a) { return a *= c; }
    friend EntropyExpr operator-(EntropyExpr a) { return a *= Rational(-1); }

    void add_term(const VarSet& block, const Rational& coeff);

    friend bool operator==(const EntropyExpr& a, const EntropyExpr& b) {
        return a.constant_ == b.constant_ && a.terms_ == b.terms_;
    }
    friend bool operator<(const EntropyExpr& a, const EntropyExpr& b);

    // Every variable referenced by some atom.
    VarSet variables() const;

private:
    std::map<VarSet, Rational> terms_;
    Rational constant_ = 0;
};

// H(a | c) = H(a ∪ c) − H(c).
EntropyExpr cond_entropy(const VarSet& a, const VarSet& c);

// I(a; b | c) = H(a∪c) + H(b∪c) − H(a∪b∪c) − H(c). Members of a or b that also
// lie in c are dropped first; a ∩ b ≠ ∅ raises IllFormedInfo.
EntropyExpr mutual_info(const VarSet& a, const VarSet& b, const VarSet& c = {});

// Terms are kept canonical on every update, so this is the identity on values;
// it exists to mirror the algebraic contract and to renormalise externally
// constructed term maps.
EntropyExpr canonicalize(const EntropyExpr& e);

bool expr_equal(const EntropyExpr& a, const EntropyExpr& b);

enum class RenderStyle { Text, Latex, Json };

// Renders a single conditional mutual information as I(·;·|·,Q) when the
// expression matches that pattern (or a positive multiple), otherwise as an
// explicit sum of entropies. Json gives the atom list form.
std::string render(const EntropyExpr& e, RenderStyle style = RenderStyle::Text);

// Tries to write e as a sum of conditional mutual informations with positive
// integer coefficients, as produced by the bound generator. Returns false when
// no such decomposition is found by the greedy matcher.
struct MiTerm {
    VarSet a, b, c;
    Rational coeff;
};
bool match_mutual_info(const EntropyExpr& e, MiTerm& out);

}  // namespace cgras

namespace cgras {

// Parses sums such as "I(Y1; U(1;1), U(1;1,2) | U(2;1,2)) - 1/2 H(Y1 | X1) + 3".
// Variables use the ASCII forms accepted by parse_var_ref.
EntropyExpr parse_info_expr(const std::string& text);

// Splits on separator characters at parenthesis/brace depth zero.
std::vector<std::string> split_top_level(const std::string& text, char sep);

}  // namespace cgras
