#include "cgras/polyhedra.hpp"

#include "cgras/lp.hpp"

#include <algorithm>
#include <map>

namespace cgras {

bool LinearSystem::declares(const RateVar& v) const {
    return std::find(variables.begin(), variables.end(), v) != variables.end();
}

namespace {

void scale_terms(std::vector<MiTerm>& terms, const Rational& c) {
    for (auto& t : terms) t.coeff *= c;
}

std::vector<MiTerm> merge_terms(const std::vector<MiTerm>& a, const std::vector<MiTerm>& b) {
    std::vector<MiTerm> out = a;
    for (const auto& t : b) {
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const MiTerm& u) { return u.a == t.a && u.b == t.b && u.c == t.c; });
        if (it == out.end()) out.push_back(t);
        else it->coeff += t.coeff;
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const MiTerm& t) { return t.coeff == 0; }), out.end());
    return out;
}

void drop_zero_coeffs(Inequality& q) {
    for (auto it = q.lhs.begin(); it != q.lhs.end();) {
        if (it->second == 0) it = q.lhs.erase(it);
        else ++it;
    }
}

// Scales a ≤ row so the first non-zero quantity has magnitude one. Two rows
// that are positive multiples of each other get identical keys.
std::string row_key(const Inequality& q) {
    Rational s = 0;
    if (!q.lhs.empty()) s = abs(q.lhs.begin()->second);
    else if (!q.rhs.terms().empty()) s = abs(q.rhs.terms().begin()->second);
    else if (q.rhs.constant_term() != 0) s = abs(q.rhs.constant_term());
    if (s == 0) s = 1;
    std::string key;
    for (const auto& [v, c] : q.lhs) key += v.to_ascii() + "*" + to_string(c / s) + ";";
    key += "|";
    for (const auto& [blk, c] : q.rhs.terms()) {
        for (const auto& x : blk) key += x.to_ascii() + ",";
        key += "*" + to_string(c / s) + ";";
    }
    key += "#" + to_string(q.rhs.constant_term() / s);
    return key;
}

// Same lhs and entropy part up to positive scaling; the constant is left out.
std::pair<std::string, Rational> shape_key(const Inequality& q) {
    std::string k = row_key(q);
    k.erase(k.rfind('#'));
    Rational s = 0;
    if (!q.lhs.empty()) s = abs(q.lhs.begin()->second);
    else if (!q.rhs.terms().empty()) s = abs(q.rhs.terms().begin()->second);
    if (s == 0) return {k + "#" + to_string(q.rhs.constant_term()), q.rhs.constant_term()};
    return {k, q.rhs.constant_term() / s};
}

bool is_trivially_true(const Inequality& q);

// Drops trivially true rows and, among rows differing only in their constant,
// keeps the tightest one.
void drop_dominated_copies(std::vector<Inequality>& rows) {
    std::map<std::string, std::size_t> seen;
    std::vector<Inequality> out;
    for (auto& q : rows) {
        if (is_trivially_true(q)) continue;
        auto [k, c] = shape_key(q);
        auto it = seen.find(k);
        if (it == seen.end()) {
            seen.emplace(k, out.size());
            out.push_back(std::move(q));
        } else if (c < shape_key(out[it->second]).second) {
            out[it->second] = std::move(q);
        }
    }
    rows = std::move(out);
}

bool is_trivially_true(const Inequality& q) {
    return q.lhs.empty() && q.rhs.is_constant() && q.rhs.constant_term() >= 0;
}

}  // namespace

Inequality to_leq(const Inequality& q) {
    Inequality r = q;
    if (q.sense == Sense::GreaterEq) {
        for (auto& [_, c] : r.lhs) c = -c;
        r.rhs = -r.rhs;
        scale_terms(r.terms, Rational(-1));
        r.sense = Sense::LessEq;
    }
    drop_zero_coeffs(r);
    return r;
}

void add_row(LinearSystem& sys, const Inequality& q) { sys.rows.push_back(to_leq(q)); }

LinearSystem fme_eliminate(const LinearSystem& sys, const RateVar& var) {
    if (!sys.declares(var)) throw KeyError("variable not declared in system: " + var.to_ascii());
    LinearSystem out;
    out.basis = sys.basis;
    for (const auto& v : sys.variables)
        if (!(v == var)) out.variables.push_back(v);
    std::vector<const Inequality*> pos, neg;
    for (const auto& raw : sys.rows) {
        Inequality q = to_leq(raw);
        auto it = q.lhs.find(var);
        if (it == q.lhs.end()) out.rows.push_back(q);
        else if (it->second > 0) pos.push_back(&raw);
        else neg.push_back(&raw);
    }
    for (const auto* pr : pos) {
        Inequality p = to_leq(*pr);
        for (const auto* nr : neg) {
            Inequality n = to_leq(*nr);
            Rational a = p.lhs.at(var);
            Rational b = -n.lhs.at(var);
            Inequality r;
            r.sense = Sense::LessEq;
            for (const auto& [v, c] : p.lhs) r.lhs[v] += c / a;
            for (const auto& [v, c] : n.lhs) r.lhs[v] += c / b;
            r.lhs.erase(var);
            drop_zero_coeffs(r);
            r.rhs = Rational(1 / a) * p.rhs + Rational(1 / b) * n.rhs;
            auto tp = p.terms;
            auto tn = n.terms;
            scale_terms(tp, Rational(1 / a));
            scale_terms(tn, Rational(1 / b));
            r.terms = merge_terms(tp, tn);
            r.prov.kind = BoundKind::Other;
            r.prov.row_label = p.prov.row_label + "+" + n.prov.row_label;
            out.rows.push_back(std::move(r));
        }
    }
    drop_dominated_copies(out.rows);
    return out;
}

namespace {

std::vector<EntropyExpr> basis_expressions(const std::vector<MiTerm>& basis) {
    std::vector<EntropyExpr> out;
    for (const auto& t : basis) {
        EntropyExpr e = mutual_info(t.a, t.b, t.c);
        if (!e.is_zero()) out.push_back(e);
    }
    return out;
}

bool row_implied_by(const std::vector<Inequality>& rows, const Inequality& raw_target, const std::vector<RateVar>& nonneg,
                    const std::vector<EntropyExpr>& basis_exprs) {
    Inequality target = to_leq(raw_target);
    if (is_trivially_true(target)) return true;
    std::vector<Inequality> src;
    for (const auto& r : rows) src.push_back(to_leq(r));
    // Index the coordinates: rate variables, entropy atoms.
    std::map<RateVar, std::size_t> var_idx;
    std::map<VarSet, std::size_t> atom_idx;
    auto note_row = [&](const Inequality& q) {
        for (const auto& [v, _] : q.lhs) var_idx.emplace(v, var_idx.size());
        for (const auto& [blk, _] : q.rhs.terms()) atom_idx.emplace(blk, atom_idx.size());
    };
    for (const auto& r : src) note_row(r);
    note_row(target);
    for (const auto& v : nonneg) var_idx.emplace(v, var_idx.size());
    for (const auto& e : basis_exprs)
        for (const auto& [blk, _] : e.terms()) atom_idx.emplace(blk, atom_idx.size());
    // Columns: λ per source row, τ per non-negative variable, μ per basis term.
    const std::size_t n_lambda = src.size();
    const std::size_t n_tau = nonneg.size();
    LpProblem lp;
    lp.n_vars = n_lambda + n_tau + basis_exprs.size();
    std::vector<std::vector<Rational>> var_rows(var_idx.size(), std::vector<Rational>(lp.n_vars, Rational(0)));
    std::vector<std::vector<Rational>> atom_rows(atom_idx.size(), std::vector<Rational>(lp.n_vars, Rational(0)));
    std::vector<Rational> const_row(lp.n_vars, Rational(0));
    for (std::size_t i = 0; i < src.size(); ++i) {
        for (const auto& [v, c] : src[i].lhs) var_rows[var_idx.at(v)][i] = c;
        for (const auto& [blk, c] : src[i].rhs.terms()) atom_rows[atom_idx.at(blk)][i] = c;
        const_row[i] = src[i].rhs.constant_term();
    }
    for (std::size_t k = 0; k < nonneg.size(); ++k) var_rows[var_idx.at(nonneg[k])][n_lambda + k] = -1;
    for (std::size_t k = 0; k < basis_exprs.size(); ++k)
        for (const auto& [blk, c] : basis_exprs[k].terms()) atom_rows[atom_idx.at(blk)][n_lambda + n_tau + k] = c;
    for (const auto& [v, i] : var_idx) {
        auto it = target.lhs.find(v);
        lp.add_row(var_rows[i], RowSense::Equal, it == target.lhs.end() ? Rational(0) : it->second);
    }
    for (const auto& [blk, i] : atom_idx) {
        auto it = target.rhs.terms().find(blk);
        lp.add_row(atom_rows[i], RowSense::Equal, it == target.rhs.terms().end() ? Rational(0) : it->second);
    }
    lp.add_row(const_row, RowSense::LessEq, target.rhs.constant_term());
    return solve_lp(lp).status == LpStatus::Optimal;
}

}  // namespace

bool row_implied(const std::vector<Inequality>& rows, const Inequality& target, const std::vector<RateVar>& nonneg,
                 const std::vector<MiTerm>& basis) {
    return row_implied_by(rows, target, nonneg, basis_expressions(basis));
}

std::vector<EntropyExpr> elemental_inequalities(const VarSet& vars) {
    std::vector<EntropyExpr> out;
    const std::size_t n = vars.size();
    for (std::size_t i = 0; i < n; ++i) {
        VarSet rest;
        for (std::size_t k = 0; k < n; ++k)
            if (k != i) rest.push_back(vars[k]);
        out.push_back(cond_entropy({vars[i]}, rest));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            std::vector<VarRef> others;
            for (std::size_t k = 0; k < n; ++k)
                if (k != i && k != j) others.push_back(vars[k]);
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << others.size()); ++mask) {
                VarSet c;
                for (std::size_t k = 0; k < others.size(); ++k)
                    if (mask >> k & 1) c.push_back(others[k]);
                out.push_back(mutual_info({vars[i]}, {vars[j]}, make_varset(c)));
            }
        }
    return out;
}

LinearSystem remove_redundant(const LinearSystem& sys) {
    LinearSystem out;
    out.variables = sys.variables;
    out.basis = sys.basis;
    for (const auto& raw : sys.rows) out.rows.push_back(to_leq(raw));
    drop_dominated_copies(out.rows);
    for (std::size_t i = out.rows.size(); i-- > 0;) {
        std::vector<Inequality> others;
        for (std::size_t j = 0; j < out.rows.size(); ++j)
            if (j != i) others.push_back(out.rows[j]);
        if (row_implied(others, out.rows[i], out.variables, out.basis)) out.rows.erase(out.rows.begin() + i);
    }
    return out;
}

namespace {

std::vector<MiTerm> merged_basis(const std::vector<MiTerm>& a, const std::vector<MiTerm>& b) {
    std::vector<MiTerm> out = a;
    for (const auto& t : b)
        if (std::none_of(out.begin(), out.end(), [&](const MiTerm& u) { return u.a == t.a && u.b == t.b && u.c == t.c; }))
            out.push_back(t);
    return out;
}

}  // namespace

bool region_implies(const Region& a, const Region& b) {
    std::set<RateVar> va(a.variables.begin(), a.variables.end());
    std::set<RateVar> vb(b.variables.begin(), b.variables.end());
    if (va != vb) throw DimensionError("regions are over different rate variables");
    auto exprs = basis_expressions(merged_basis(a.basis, b.basis));
    VarSet vars;
    for (const auto* r : {&a, &b})
        for (const auto& q : r->rows) vars = set_union(vars, q.rhs.variables());
    if (vars.size() <= kShannonMaxVariables) {
        auto extra = elemental_inequalities(vars);
        exprs.insert(exprs.end(), extra.begin(), extra.end());
    }
    for (const auto& q : b.rows)
        if (!row_implied_by(a.rows, q, a.variables, exprs)) return false;
    return true;
}

Region make_region(const std::vector<Inequality>& rows) {
    Region r;
    std::set<RateVar> vars;
    for (const auto& q : rows) {
        add_row(r, q);
        for (const auto& [v, _] : q.lhs) vars.insert(v);
        for (const auto& t : q.terms) r.basis = merged_basis(r.basis, {MiTerm{t.a, t.b, t.c, 1}});
    }
    r.variables.assign(vars.begin(), vars.end());
    return r;
}

std::vector<Inequality> scheme_bounds(const OrientedCgras& g, const AssembleOptions& opt) {
    std::vector<Inequality> out =
        opt.enc == EncoderMode::CL ? binning_bounds_cl(g) : binning_bounds_mcl(g);
    for (int z = 1; z <= g.base.net.n_rx; ++z) {
        if (decoding_base(g, z).empty()) continue;
        auto dec = opt.dec == DecoderMode::SD ? decoding_bounds_sd(g, z) : decoding_bounds_jd(g, z);
        if (opt.prune) dec = prune_non_error_bounds(dec, g.base.net, z);
        for (auto& q : dec) {
            q.prov.row_label = "z" + std::to_string(z) + q.prov.row_label;
            out.push_back(std::move(q));
        }
    }
    return out;
}

namespace {

std::vector<MiTerm> collect_basis(const std::vector<Inequality>& bounds) {
    std::vector<MiTerm> out;
    for (const auto& q : bounds)
        for (const auto& t : q.terms) out = merged_basis(out, {MiTerm{t.a, t.b, t.c, 1}});
    return out;
}

Inequality nonneg_row(const RateVar& v) {
    Inequality q;
    q.lhs[v] = -1;
    q.sense = Sense::LessEq;
    q.prov.row_label = "nn";
    return q;
}

std::size_t rows_touching(const LinearSystem& sys, const RateVar& v) {
    std::size_t n = 0;
    for (const auto& q : sys.rows)
        if (q.lhs.count(v)) ++n;
    return n;
}

// Eliminates the given variables one at a time, cheapest first, keeping the
// system irredundant between steps.
LinearSystem eliminate_all(LinearSystem sys, std::vector<RateVar> vars) {
    while (!vars.empty()) {
        auto best = std::min_element(vars.begin(), vars.end(), [&](const RateVar& a, const RateVar& b) {
            return rows_touching(sys, a) < rows_touching(sys, b);
        });
        RateVar v = *best;
        vars.erase(best);
        sys.rows.push_back(nonneg_row(v));
        sys = remove_redundant(fme_eliminate(sys, v));
    }
    return sys;
}

// Replaces var by Σ coeff·other in every row.
void substitute(LinearSystem& sys, const RateVar& var, const std::map<RateVar, Rational>& repl) {
    for (auto& q : sys.rows) {
        auto it = q.lhs.find(var);
        if (it == q.lhs.end()) continue;
        Rational c = it->second;
        q.lhs.erase(it);
        for (const auto& [v, k] : repl) q.lhs[v] += c * k;
        drop_zero_coeffs(q);
    }
    sys.variables.erase(std::remove(sys.variables.begin(), sys.variables.end(), var), sys.variables.end());
    for (const auto& [v, _] : repl)
        if (!sys.declares(v)) sys.variables.push_back(v);
}

}  // namespace

LinearSystem pre_fme_system(const OrientedCgras& g, const AssembleOptions& opt) {
    auto bounds = scheme_bounds(g, opt);
    auto binned = binning_base(g);
    LinearSystem sys;
    sys.basis = collect_basis(bounds);
    for (const auto& v : binned) sys.variables.push_back(RateVar::binning(v));
    for (const auto& v : g.order) sys.variables.push_back(RateVar::split(v));
    for (const auto& raw : bounds) {
        if (raw.lhs.empty()) continue;
        Inequality q = raw;
        q.lhs.clear();
        for (const auto& [var, c] : raw.lhs) {
            if (var.kind == RateVar::Kind::Codebook) {
                q.lhs[RateVar::split(var.id)] += c;
                if (std::find(binned.begin(), binned.end(), var.id) != binned.end()) q.lhs[RateVar::binning(var.id)] += c;
            } else {
                q.lhs[var] += c;
            }
        }
        add_row(sys, q);
    }
    for (const auto& v : sys.variables) sys.rows.push_back(nonneg_row(v));
    return sys;
}

Region assemble_region(const OrientedCgras& g, const SplitMatrix& split, const AssembleOptions& opt) {
    const Network& net = g.base.net;
    LinearSystem sys = remove_redundant(pre_fme_system(g, opt));
    std::vector<RateVar> rbar;
    for (const auto& v : binning_base(g)) rbar.push_back(RateVar::binning(v));
    sys = eliminate_all(std::move(sys), rbar);

    // Split mass entering each codeword, from every original message.
    std::map<MessageId, std::vector<MessageId>> sources;  // split -> originals
    std::set<MessageId> covered = split.originals();
    for (const auto& [key, c] : split.gamma)
        if (c != 0 || opt.split == SplitMode::Free) sources[key.second].push_back(key.first);
    for (const auto& m : net.messages)
        if (!covered.count(m)) sources[m].push_back(m);
    for (const auto& [s, _] : sources)
        if (!g.base.has_vertex(s)) throw PreconditionError("split target has no codeword: " + s.to_string());

    std::vector<RateVar> pieces;
    for (const auto& v : g.order) {
        std::map<RateVar, Rational> repl;
        auto it = sources.find(v);
        if (it != sources.end()) {
            for (const auto& m : it->second) {
                if (opt.split == SplitMode::Fixed) {
                    auto gi = split.gamma.find({m, v});
                    Rational c = gi == split.gamma.end() ? Rational(1) : gi->second;
                    repl[RateVar::message(m)] += c;
                } else {
                    repl[RateVar::piece(m, v)] += 1;
                }
            }
        }
        substitute(sys, RateVar::split(v), repl);
    }
    if (opt.split == SplitMode::Free) {
        // Σ_s piece(m, s) = R_m: the last piece is expressed through the others.
        std::map<MessageId, std::vector<MessageId>> targets;
        for (const auto& [s, origs] : sources)
            for (const auto& m : origs) targets[m].push_back(s);
        for (const auto& [m, ss] : targets) {
            const MessageId last = ss.back();
            std::map<RateVar, Rational> repl{{RateVar::message(m), Rational(1)}};
            Inequality cap;
            cap.lhs[RateVar::message(m)] = -1;
            cap.prov.row_label = "split";
            for (const auto& s : ss) {
                if (s == last) continue;
                repl[RateVar::piece(m, s)] = -1;
                cap.lhs[RateVar::piece(m, s)] = 1;
                pieces.push_back(RateVar::piece(m, s));
            }
            substitute(sys, RateVar::piece(m, last), repl);
            if (cap.lhs.size() > 1) sys.rows.push_back(cap);
        }
        sys = eliminate_all(std::move(sys), pieces);
    }

    Region region;
    region.basis = sys.basis;
    for (const auto& m : net.messages) region.variables.push_back(RateVar::message(m));
    region.rows = sys.rows;
    for (const auto& m : net.messages) region.rows.push_back(nonneg_row(RateVar::message(m)));
    region = remove_redundant(region);
    std::stable_sort(region.rows.begin(), region.rows.end(), [](const Inequality& a, const Inequality& b) {
        if (a.lhs.size() != b.lhs.size()) return a.lhs.size() > b.lhs.size();
        std::vector<RateVar> ka, kb;
        for (const auto& [v, _] : a.lhs) ka.push_back(v);
        for (const auto& [v, _] : b.lhs) kb.push_back(v);
        return ka < kb;
    });
    for (std::size_t i = 0; i < region.rows.size(); ++i) region.rows[i].prov.row_label = "R" + std::to_string(i + 1);
    return region;
}

}  // namespace cgras
