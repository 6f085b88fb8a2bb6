#include "cgras/bounds.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace cgras {

std::string RateVar::to_string() const {
    switch (kind) {
        case Kind::Binning: return "R̄_{" + id.to_string() + "}";
        case Kind::Codebook: return "L_{" + id.to_string() + "}";
        case Kind::Split: return "R′_{" + id.to_string() + "}";
        case Kind::Message: return "R_{" + id.to_string() + "}";
        case Kind::Piece: return "R_{" + origin.to_string() + "⇒" + id.to_string() + "}";
    }
    return "?";
}

std::string RateVar::to_latex() const {
    switch (kind) {
        case Kind::Binning: return "\\overline{R}_{" + id.to_latex() + "}";
        case Kind::Codebook: return "L_{" + id.to_latex() + "}";
        case Kind::Split: return "R'_{" + id.to_latex() + "}";
        case Kind::Message: return "R_{" + id.to_latex() + "}";
        case Kind::Piece: return "R_{" + origin.to_latex() + "}^{[" + id.to_latex() + "]}";
    }
    return "?";
}

std::string RateVar::to_ascii() const {
    switch (kind) {
        case Kind::Binning: return "Rbar(" + id.to_ascii() + ")";
        case Kind::Codebook: return "L(" + id.to_ascii() + ")";
        case Kind::Split: return "Rp(" + id.to_ascii() + ")";
        case Kind::Message: return "R(" + id.to_ascii() + ")";
        case Kind::Piece: return "P(" + origin.to_ascii() + "=>" + id.to_ascii() + ")";
    }
    return "?";
}

bool operator<(const RateVar& a, const RateVar& b) {
    if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    if (a.id != b.id) return a.id < b.id;
    return a.origin < b.origin;
}

bool operator==(const RateVar& a, const RateVar& b) {
    return a.kind == b.kind && a.id == b.id && (a.kind != RateVar::Kind::Piece || a.origin == b.origin);
}

RateVar parse_rate_var(const std::string& text) {
    auto open = text.find('(');
    if (open == std::string::npos || text.back() != ')') throw std::invalid_argument("bad rate variable: " + text);
    std::string head = text.substr(0, open);
    std::string body = text.substr(open + 1, text.size() - open - 2);
    if (head == "Rbar") return RateVar::binning(parse_message_id(body));
    if (head == "L") return RateVar::codebook(parse_message_id(body));
    if (head == "Rp") return RateVar::split(parse_message_id(body));
    if (head == "R") return RateVar::message(parse_message_id(body));
    if (head == "P") {
        auto arrow = body.find("=>");
        if (arrow == std::string::npos) throw std::invalid_argument("bad piece variable: " + text);
        return RateVar::piece(parse_message_id(body.substr(0, arrow)), parse_message_id(body.substr(arrow + 2)));
    }
    throw std::invalid_argument("bad rate variable: " + text);
}

std::string bound_kind_tag(BoundKind k) {
    switch (k) {
        case BoundKind::CoveringLemma: return "CL";
        case BoundKind::MutualCovering: return "MCL";
        case BoundKind::Sequential: return "SD";
        case BoundKind::Joint: return "JD";
        case BoundKind::Other: return "-";
    }
    return "-";
}

namespace {

std::string render_terms(const std::vector<MiTerm>& terms, RenderStyle style) {
    std::string s;
    for (const auto& t : terms) {
        EntropyExpr e = mutual_info(t.a, t.b, t.c);
        if (e.is_zero()) continue;
        Rational mag = abs(t.coeff);
        if (s.empty()) s += t.coeff < 0 ? "-" : "";
        else s += t.coeff < 0 ? " - " : " + ";
        if (mag != 1) s += to_string(mag) + " ";
        s += render(e, style);
    }
    return s.empty() ? "0" : s;
}

}  // namespace

std::string render_inequality(const Inequality& q, RenderStyle style) {
    std::string s;
    bool first = true;
    for (const auto& [v, c] : q.lhs) {
        if (c == 0) continue;
        std::string name = style == RenderStyle::Latex ? v.to_latex() : v.to_string();
        Rational mag = abs(c);
        if (first) s += c < 0 ? "-" : "";
        else s += c < 0 ? " - " : " + ";
        if (mag != 1) s += to_string(mag) + " ";
        s += name;
        first = false;
    }
    if (first) s = "0";
    std::string rel = q.sense == Sense::LessEq ? (style == RenderStyle::Latex ? " \\leq " : " ≤ ")
                                               : (style == RenderStyle::Latex ? " \\geq " : " ≥ ");
    std::string rhs;
    if (!q.terms.empty()) {
        EntropyExpr sum;
        for (const auto& t : q.terms) sum += t.coeff * mutual_info(t.a, t.b, t.c);
        rhs = expr_equal(sum, q.rhs) ? render_terms(q.terms, style) : render(q.rhs, style);
    } else {
        rhs = render(q.rhs, style);
    }
    return s + rel + rhs;
}

std::vector<MessageId> binning_base(const OrientedCgras& g) {
    std::set<MessageId> binned;
    for (const auto& [b, _] : g.base.b_edges) binned.insert(b);
    std::vector<MessageId> out;
    for (const auto& v : g.order)
        if (binned.count(v)) out.push_back(v);
    return out;
}

std::vector<MessageId> decoding_base(const OrientedCgras& g, int z) {
    if (z < 1 || z > g.base.net.n_rx) throw std::out_of_range("decoder index out of range: " + std::to_string(z));
    std::vector<MessageId> out;
    for (const auto& v : g.order)
        if (v.rx.contains(z)) out.push_back(v);
    return out;
}

namespace {

std::vector<MessageId> subset_from_mask(const std::vector<MessageId>& base, std::uint64_t mask) {
    std::vector<MessageId> s;
    for (std::size_t i = 0; i < base.size(); ++i)
        if (mask >> i & 1u) s.push_back(base[i]);
    return s;
}

bool contains(const std::vector<MessageId>& s, const MessageId& v) { return std::find(s.begin(), s.end(), v) != s.end(); }

void sort_family(ErrorFamily& fam) {
    auto key = [&](const std::vector<MessageId>& s) {
        std::vector<std::size_t> pos;
        for (const auto& v : s) pos.push_back(std::find(fam.base.begin(), fam.base.end(), v) - fam.base.begin());
        return pos;
    };
    std::stable_sort(fam.admissible.begin(), fam.admissible.end(), [&](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return key(a) < key(b);
    });
}

std::vector<MessageId> complement(const std::vector<MessageId>& base, const std::vector<MessageId>& s) {
    std::vector<MessageId> out;
    for (const auto& v : base)
        if (!contains(s, v)) out.push_back(v);
    return out;
}

Inequality make_row(BoundKind kind, Sense sense, const std::vector<RateVar>& vars, std::vector<MiTerm> terms,
                    const std::vector<MessageId>& subset, int decoder, const std::vector<MessageId>& roots) {
    Inequality q;
    q.sense = sense;
    for (const auto& v : vars) q.lhs[v] += 1;
    std::vector<MiTerm> kept;
    for (auto& t : terms) {
        EntropyExpr e = mutual_info(t.a, t.b, t.c);
        if (e.is_zero()) continue;
        q.rhs += t.coeff * e;
        kept.push_back(std::move(t));
    }
    q.terms = std::move(kept);
    q.prov.kind = kind;
    q.prov.subset = subset;
    q.prov.decoder = decoder;
    q.prov.roots = roots;
    q.degenerate = q.lhs.empty() || q.rhs.is_zero();
    return q;
}

MiTerm mi(VarSet a, VarSet b, VarSet c) {
    VarSet cc = make_varset(c);
    return MiTerm{set_minus(make_varset(a), cc), set_minus(make_varset(b), cc), cc, 1};
}

}  // namespace

ErrorFamily enumerate_encoding_sets(const OrientedCgras& g) {
    ErrorFamily fam;
    fam.base = binning_base(g);
    const auto& base = fam.base;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << base.size()); ++mask) {
        auto s = subset_from_mask(base, mask);
        bool closed = true;
        for (const auto& v : s)
            for (const auto& d : g.base.s_descendants(v))
                if (contains(base, d) && !contains(s, d)) closed = false;
        if (closed) fam.admissible.push_back(s);
    }
    sort_family(fam);
    return fam;
}

ErrorFamily enumerate_decoding_sets(const OrientedCgras& g, int z) {
    ErrorFamily fam;
    fam.base = decoding_base(g, z);
    const auto& base = fam.base;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << base.size()); ++mask) {
        auto s = subset_from_mask(base, mask);
        bool closed = true;
        for (const auto& v : s) {
            for (const auto& d : g.base.s_descendants(v))
                if (contains(base, d) && !contains(s, d)) closed = false;
            for (const auto& p : base)
                if (g.base.has_b(p, v) && !contains(s, p)) closed = false;
        }
        if (closed) fam.admissible.push_back(s);
    }
    sort_family(fam);
    return fam;
}

std::vector<MessageId> encoding_roots(const OrientedCgras& g, const std::vector<MessageId>& s) {
    std::vector<MessageId> roots;
    for (const auto& v : s) {
        bool root = true;
        for (const auto& a : g.base.s_ancestors(v))
            if (contains(s, a)) root = false;
        if (root) roots.push_back(v);
    }
    return roots;
}

std::vector<MessageId> decoding_roots(const OrientedCgras& g, const std::vector<MessageId>& s) {
    std::vector<MessageId> roots = encoding_roots(g, s);
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = roots.begin(); it != roots.end(); ++it) {
            bool keep = true;
            for (const auto& q : s) {
                if (q == *it || !g.base.has_b(*it, q)) continue;
                if (!g.base.has_b(q, *it) || !contains(roots, q)) keep = false;
            }
            if (!keep) {
                roots.erase(it);
                changed = true;
                break;
            }
        }
    }
    return roots;
}

std::vector<Inequality> binning_bounds_cl(const OrientedCgras& g) {
    std::vector<Inequality> out;
    auto fam = enumerate_encoding_sets(g);
    int row = 0;
    for (const auto& s : fam.admissible) {
        auto sbar = complement(fam.base, s);
        auto roots = encoding_roots(g, s);
        std::vector<RateVar> vars;
        std::vector<MiTerm> terms;
        for (const auto& r : roots) {
            vars.push_back(RateVar::binning(r));
            auto cond = g.s_ancestors(r);
            for (const auto& q : sbar)
                if (g.base.has_b(q, r)) cond.push_back(q);
            VarSet c = aux_set(cond);
            VarSet a = set_minus(aux_set(g.b_minus_parents(r)), c);
            if (!a.empty()) terms.push_back(mi({VarRef::aux(r)}, a, c));
        }
        auto q = make_row(BoundKind::CoveringLemma, Sense::GreaterEq, vars, terms, s, 0, roots);
        q.prov.row_label = "E" + std::to_string(++row);
        out.push_back(std::move(q));
    }
    return out;
}

EntropyExpr agreeing_divergence(const OrientedCgras& g, const std::vector<MessageId>& failed,
                                std::vector<MiTerm>* terms_out) {
    std::set<MessageId> differing(failed.begin(), failed.end());
    for (const auto& f : failed)
        for (const auto& d : g.base.s_descendants(f)) differing.insert(d);
    std::vector<MessageId> agree;
    for (const auto& v : g.order)
        if (!differing.count(v)) agree.push_back(v);
    EntropyExpr total;
    std::vector<MiTerm> terms;
    for (std::size_t i = 0; i < agree.size(); ++i) {
        const MessageId& v = agree[i];
        auto anc_vec = g.s_ancestors(v);
        std::set<MessageId> anc(anc_vec.begin(), anc_vec.end());
        std::vector<MessageId> pred;
        for (std::size_t j = 0; j < i; ++j)
            if (!anc.count(agree[j])) pred.push_back(agree[j]);
        // Drop predecessors that are conditionally independent of v under the
        // encoding distribution (d-separation in the oriented graph).
        std::set<MessageId> keep(pred.begin(), pred.end());
        std::set<MessageId> dropped;
        for (auto it = pred.rbegin(); it != pred.rend(); ++it) {
            std::set<MessageId> trial = dropped;
            trial.insert(*it);
            std::set<MessageId> cond = anc;
            for (const auto& k : keep)
                if (k != *it) cond.insert(k);
            if (d_separated(g, {v}, trial, cond)) {
                dropped = trial;
                keep.erase(*it);
            }
        }
        if (keep.empty()) continue;
        MiTerm t = mi({VarRef::aux(v)}, aux_set({keep.begin(), keep.end()}), aux_set({anc.begin(), anc.end()}));
        total += mutual_info(t.a, t.b, t.c);
        terms.push_back(std::move(t));
    }
    if (terms_out) *terms_out = std::move(terms);
    return total;
}

EntropyExpr codebook_divergence(const OrientedCgras& g, std::vector<MiTerm>* terms) {
    return agreeing_divergence(g, {}, terms);
}

std::vector<Inequality> binning_bounds_mcl(const OrientedCgras& g) {
    std::vector<Inequality> out;
    auto fam = enumerate_encoding_sets(g);
    if (fam.base.empty()) return out;
    auto sets = fam.admissible;
    sets.push_back({});
    int row = 0;
    for (const auto& s : sets) {
        auto sbar = complement(fam.base, s);
        if (sbar.empty()) continue;
        std::vector<RateVar> vars;
        for (const auto& v : sbar) vars.push_back(RateVar::binning(v));
        std::vector<MiTerm> terms;
        agreeing_divergence(g, s, &terms);
        auto q = make_row(BoundKind::MutualCovering, Sense::GreaterEq, vars, terms, s, 0, {});
        q.prov.row_label = "E" + std::to_string(++row);
        out.push_back(std::move(q));
    }
    return out;
}

namespace {

std::vector<MiTerm> binning_bonus(const OrientedCgras& g, const std::vector<MessageId>& members,
                                  const std::vector<MessageId>& decoded) {
    std::vector<MiTerm> terms;
    for (const auto& r : members) {
        std::vector<MessageId> par;
        for (const auto& p : g.b_minus_parents(r))
            if (contains(decoded, p)) par.push_back(p);
        if (par.empty()) continue;
        terms.push_back(mi({VarRef::aux(r)}, aux_set(par), aux_set(g.s_ancestors(r))));
    }
    return terms;
}

int root_multiplicity(const OrientedCgras& g, const std::vector<MessageId>& roots) {
    int mult = 1;
    std::set<MessageId> seen;
    for (const auto& r : roots) {
        if (seen.count(r)) continue;
        int group = 1;
        for (const auto& q : roots)
            if (q != r && g.base.joint(r, q) && !seen.count(q)) {
                ++group;
                seen.insert(q);
            }
        seen.insert(r);
        mult *= group;
    }
    return mult;
}

}  // namespace

std::vector<Inequality> decoding_bounds_sd(const OrientedCgras& g, int z) {
    std::vector<Inequality> out;
    auto fam = enumerate_decoding_sets(g, z);
    int row = 0;
    for (const auto& s : fam.admissible) {
        auto sbar = complement(fam.base, s);
        auto roots = decoding_roots(g, s);
        std::vector<RateVar> vars;
        for (const auto& r : roots) vars.push_back(RateVar::codebook(r));
        std::vector<MiTerm> terms;
        if (!roots.empty()) terms.push_back(mi({VarRef::output(z)}, aux_set(roots), aux_set(sbar)));
        for (auto& t : binning_bonus(g, roots, fam.base)) terms.push_back(std::move(t));
        auto q = make_row(BoundKind::Sequential, Sense::LessEq, vars, terms, s, z, roots);
        q.prov.multiplicity = root_multiplicity(g, roots);
        q.prov.row_label = "D" + std::to_string(++row);
        out.push_back(std::move(q));
    }
    return out;
}

std::vector<Inequality> decoding_bounds_jd(const OrientedCgras& g, int z) {
    std::vector<Inequality> out;
    auto fam = enumerate_decoding_sets(g, z);
    int row = 0;
    for (const auto& s : fam.admissible) {
        auto sbar = complement(fam.base, s);
        std::vector<RateVar> vars;
        for (const auto& v : s) vars.push_back(RateVar::codebook(v));
        std::vector<MiTerm> terms;
        terms.push_back(mi({VarRef::output(z)}, aux_set(s), aux_set(sbar)));
        for (auto& t : binning_bonus(g, s, fam.base)) terms.push_back(std::move(t));
        auto q = make_row(BoundKind::Joint, Sense::LessEq, vars, terms, s, z, {});
        q.prov.row_label = "D" + std::to_string(++row);
        out.push_back(std::move(q));
    }
    return out;
}

std::vector<Inequality> prune_non_error_bounds(const std::vector<Inequality>& bounds, const Network& net, int z) {
    auto it = net.intended.find(z);
    if (it == net.intended.end()) return bounds;
    const auto& wanted = it->second;
    std::vector<Inequality> out;
    for (const auto& q : bounds) {
        bool any_intended = false;
        for (const auto& v : q.prov.subset)
            if (wanted.count(v)) any_intended = true;
        if (any_intended || q.prov.subset.empty()) out.push_back(q);
    }
    return out;
}

}  // namespace cgras

namespace cgras {

Inequality parse_inequality(const std::string& text) {
    Inequality q;
    std::string rel = "<=";
    auto pos = text.find("<=");
    if (pos == std::string::npos) {
        pos = text.find(">=");
        rel = ">=";
    }
    if (pos == std::string::npos) throw std::invalid_argument("inequality needs <= or >=: " + text);
    q.sense = rel == "<=" ? Sense::LessEq : Sense::GreaterEq;
    std::string lhs = text.substr(0, pos);
    std::string rhs = text.substr(pos + 2);
    std::string cur;
    int depth = 0, sign = 1;
    auto flush = [&]() {
        std::string s;
        for (char c : cur)
            if (c != ' ') s += c;
        cur.clear();
        if (s.empty() || s == "0") return;
        std::size_t k = 0;
        while (k < s.size() && (std::isdigit(static_cast<unsigned char>(s[k])) || s[k] == '/')) ++k;
        Rational c = sign;
        if (k > 0) {
            c *= parse_rational(s.substr(0, k));
            s = s.substr(k);
            if (!s.empty() && s[0] == '*') s = s.substr(1);
        }
        q.lhs[parse_rate_var(s)] += c;
        sign = 1;
    };
    for (char c : lhs) {
        if (c == '(' || c == '{') ++depth;
        if (c == ')' || c == '}') --depth;
        if ((c == '+' || c == '-') && depth == 0) {
            flush();
            if (c == '-') sign = -sign;
            continue;
        }
        cur += c;
    }
    flush();
    q.rhs = parse_info_expr(rhs);
    // Keep the individual information terms for display and certificates.
    std::string t;
    depth = 0;
    sign = 1;
    auto take = [&]() {
        std::string s = t;
        t.clear();
        auto b = s.find_first_not_of(' ');
        if (b == std::string::npos) return;
        s = s.substr(b);
        Rational c = sign;
        sign = 1;
        std::size_t k = 0;
        while (k < s.size() && (std::isdigit(static_cast<unsigned char>(s[k])) || s[k] == '/')) ++k;
        if (k > 0 && k < s.size()) {
            c *= parse_rational(s.substr(0, k));
            s = s.substr(k);
            auto b2 = s.find_first_not_of(" *");
            s = s.substr(b2);
        }
        EntropyExpr e = parse_info_expr(s);
        MiTerm m;
        if (s.rfind("I(", 0) == 0 && match_mutual_info(e, m)) {
            m.coeff = c;
            q.terms.push_back(m);
        }
    };
    for (char c : rhs) {
        if (c == '(' || c == '{') ++depth;
        if (c == ')' || c == '}') --depth;
        if ((c == '+' || c == '-') && depth == 0) {
            take();
            if (c == '-') sign = -sign;
            continue;
        }
        t += c;
    }
    take();
    EntropyExpr sum;
    for (const auto& m : q.terms) sum += m.coeff * mutual_info(m.a, m.b, m.c);
    if (!expr_equal(sum, q.rhs)) q.terms.clear();
    return q;
}

}  // namespace cgras
