// Error-event enumeration and the encoding (binning) and decoding (codebook)
// rate inequalities attached to each admissible error set.
#pragma once

#include "cgras/chain_graph.hpp"
#include "cgras/info.hpp"

#include <map>
#include <string>
#include <vector>

namespace cgras {

struct RateVar {
    enum class Kind { Binning, Codebook, Split, Message, Piece };
    Kind kind = Kind::Message;
    MessageId id{};
    MessageId origin{};  // original message of a Piece variable

    static RateVar binning(const MessageId& m) { return {Kind::Binning, m, {}}; }
    static RateVar codebook(const MessageId& m) { return {Kind::Codebook, m, {}}; }
    static RateVar split(const MessageId& m) { return {Kind::Split, m, {}}; }
    static RateVar message(const MessageId& m) { return {Kind::Message, m, {}}; }
    static RateVar piece(const MessageId& original, const MessageId& split) { return {Kind::Piece, split, original}; }

    std::string to_string() const;
    std::string to_latex() const;
    // "Rbar(1->1)", "L(1->1)", "Rp(1->1)", "R(1->1)", "P(1->1=>1->{1,2})".
    std::string to_ascii() const;

    friend bool operator<(const RateVar& a, const RateVar& b);
    friend bool operator==(const RateVar& a, const RateVar& b);
};

RateVar parse_rate_var(const std::string& text);

enum class Sense { LessEq, GreaterEq };

enum class BoundKind { CoveringLemma, MutualCovering, Sequential, Joint, Other };
std::string bound_kind_tag(BoundKind k);

struct Provenance {
    BoundKind kind = BoundKind::Other;
    std::vector<MessageId> subset;  // the error set S
    int decoder = 0;                // 0 for encoding bounds
    std::vector<MessageId> roots;   // roots for CL / SD bounds
    int multiplicity = 1;           // number of equivalent root choices
    std::string row_label;          // "E1", "D3", ...
};

struct Inequality {
    std::map<RateVar, Rational> lhs;
    Sense sense = Sense::LessEq;
    EntropyExpr rhs;
    // Non-negative information terms whose sum is rhs (display and certificates).
    std::vector<MiTerm> terms;
    Provenance prov;
    bool degenerate = false;  // empty lhs or zero rhs
};

std::string render_inequality(const Inequality& q, RenderStyle style = RenderStyle::Text);

// Parses "R(1->1) + 2 R(2->2) <= I(Y1; U(1;1) | U(1;1,2))" (or ">="). The
// right-hand side uses parse_info_expr; mutual-information terms are kept.
Inequality parse_inequality(const std::string& text);

struct ErrorFamily {
    std::vector<MessageId> base;
    std::vector<std::vector<MessageId>> admissible;
};

// Codewords carrying a bin index.
std::vector<MessageId> binning_base(const OrientedCgras& g);
// Codewords decoded at receiver z.
std::vector<MessageId> decoding_base(const OrientedCgras& g, int z);

// Non-empty subsets of the binning base closed under superposition descendants.
ErrorFamily enumerate_encoding_sets(const OrientedCgras& g);

// Non-empty subsets of the decoding base closed under superposition descendants
// and under binning dependents (if q is in S, every codeword binned against q is in S).
ErrorFamily enumerate_decoding_sets(const OrientedCgras& g, int z);

std::vector<MessageId> encoding_roots(const OrientedCgras& g, const std::vector<MessageId>& s);
// Greatest set of members with no superposition ancestor in S whose in-S
// binning targets are all reciprocal partners that are themselves roots.
std::vector<MessageId> decoding_roots(const OrientedCgras& g, const std::vector<MessageId>& s);

std::vector<Inequality> binning_bounds_cl(const OrientedCgras& g);
std::vector<Inequality> binning_bounds_mcl(const OrientedCgras& g);

// Divergence between the encoding distribution and the independent codebook
// distribution, for all codewords (the global term) or for the codewords that
// agree between two bin-index choices (the per-set term).
EntropyExpr codebook_divergence(const OrientedCgras& g, std::vector<MiTerm>* terms = nullptr);
EntropyExpr agreeing_divergence(const OrientedCgras& g, const std::vector<MessageId>& failed,
                                std::vector<MiTerm>* terms = nullptr);

std::vector<Inequality> decoding_bounds_sd(const OrientedCgras& g, int z);
std::vector<Inequality> decoding_bounds_jd(const OrientedCgras& g, int z);

std::vector<Inequality> prune_non_error_bounds(const std::vector<Inequality>& bounds, const Network& net, int z);

}  // namespace cgras
