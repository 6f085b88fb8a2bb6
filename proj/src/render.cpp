#include "cgras/render.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>

namespace cgras {

using nlohmann::json;

namespace {

std::string set_text(const std::vector<MessageId>& s, bool latex = false) {
    std::string out = latex ? "\\{" : "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + (latex ? s[i].to_latex() : s[i].to_string());
    return out + (latex ? "\\}" : "}");
}

json set_json(const std::vector<MessageId>& s) {
    json a = json::array();
    for (const auto& m : s) a.push_back(m.to_ascii());
    return a;
}

json rational_json(const Rational& q) { return json::array({std::stol(numerator_string(q)), std::stol(denominator_string(q))}); }

json inequality_json(const Inequality& q) {
    json j;
    j["label"] = q.prov.row_label;
    j["kind"] = bound_kind_tag(q.prov.kind);
    if (q.prov.kind != BoundKind::Other) {
        j["subset"] = set_json(q.prov.subset);
        if (q.prov.decoder) j["decoder"] = q.prov.decoder;
        if (!q.prov.roots.empty()) j["roots"] = set_json(q.prov.roots);
        if (q.prov.kind == BoundKind::Sequential) j["multiplicity"] = q.prov.multiplicity;
    }
    j["coeffs"] = json::object();
    for (const auto& [v, c] : q.lhs) j["coeffs"][v.to_ascii()] = rational_json(c);
    j["sense"] = q.sense == Sense::LessEq ? "<=" : ">=";
    j["rhs"] = json::parse(render(q.rhs, RenderStyle::Json));
    j["text"] = render_inequality(q, RenderStyle::Text);
    return j;
}

std::string kind_name(BoundKind k) {
    switch (k) {
        case BoundKind::CoveringLemma: return "covering lemma";
        case BoundKind::MutualCovering: return "mutual covering";
        case BoundKind::Sequential: return "sequential decoding";
        case BoundKind::Joint: return "joint decoding";
        case BoundKind::Other: return "combined";
    }
    return "";
}

}  // namespace

std::string render_assumptions(const AssumptionReport& r, RenderStyle style) {
    if (style == RenderStyle::Json) {
        json j;
        j["joint_binning_transitive"] = r.joint_binning_transitive;
        j["no_directed_cycle"] = r.no_directed_cycle;
        j["same_parents"] = r.same_parents;
        j["ok"] = r.ok();
        j["failures"] = json::array();
        for (std::size_t i = 0; i < r.failures.size(); ++i)
            j["failures"].push_back({{"message", r.failures[i]}, {"vertices", set_json(r.offenders[i])}});
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    auto line = [&](const char* what, bool ok) { os << "  " << what << ": " << (ok ? "ok" : "FAIL") << "\n"; };
    os << "assumption check\n";
    line("joint binning transitive", r.joint_binning_transitive);
    line("no directed cycle", r.no_directed_cycle);
    line("shared parents across joint binning", r.same_parents);
    for (const auto& f : r.failures) os << "  - " << f << "\n";
    return os.str();
}

std::string render_adg(const OrientedCgras& g, RenderStyle style) {
    Factorization f = factorization(g);
    if (style == RenderStyle::Json) {
        json j;
        j["order"] = set_json(g.order);
        j["b_minus"] = json::array();
        for (const auto& [b, a] : g.b_minus) j["b_minus"].push_back({{"binned", b.to_ascii()}, {"against", a.to_ascii()}});
        j["factors"] = json::array();
        for (const auto& fac : f) j["factors"].push_back({{"vertex", fac.vertex.to_ascii()}, {"parents", set_json(fac.parents)}});
        return j.dump(2) + "\n";
    }
    bool latex = style == RenderStyle::Latex;
    std::ostringstream os;
    os << "order: " << set_text(g.order, latex) << "\n";
    os << "directed binning edges:";
    if (g.b_minus.empty()) os << " none";
    for (const auto& [b, a] : g.b_minus)
        os << "\n  " << (latex ? b.to_latex() : b.to_string()) << (latex ? " \\prec " : " ≺ ")
           << (latex ? a.to_latex() : a.to_string());
    os << "\nfactorization:\n" << render_factorization(f, latex);
    return os.str();
}

std::string render_tables(const OrientedCgras& g, RenderStyle style) {
    auto enc = enumerate_encoding_sets(g);
    if (style == RenderStyle::Json) {
        json j;
        j["encoding"] = {{"base", set_json(enc.base)}, {"count", enc.admissible.size()}, {"sets", json::array()}};
        for (const auto& s : enc.admissible)
            j["encoding"]["sets"].push_back({{"subset", set_json(s)}, {"roots", set_json(encoding_roots(g, s))}});
        j["decoding"] = json::array();
        for (int z = 1; z <= g.base.net.n_rx; ++z) {
            auto dec = enumerate_decoding_sets(g, z);
            json d = {{"decoder", z}, {"base", set_json(dec.base)}, {"count", dec.admissible.size()}, {"sets", json::array()}};
            for (const auto& s : dec.admissible)
                d["sets"].push_back({{"subset", set_json(s)}, {"roots", set_json(decoding_roots(g, s))}});
            j["decoding"].push_back(d);
        }
        return j.dump(2) + "\n";
    }
    bool latex = style == RenderStyle::Latex;
    std::ostringstream os;
    if (latex) {
        os << "\\begin{tabular}{lll}\n\\hline\nevent & error set & roots \\\\\n\\hline\n";
        int i = 0;
        for (const auto& s : enc.admissible)
            os << "E" << ++i << " & $" << set_text(s, true) << "$ & $" << set_text(encoding_roots(g, s), true) << "$ \\\\\n";
        for (int z = 1; z <= g.base.net.n_rx; ++z) {
            int k = 0;
            for (const auto& s : enumerate_decoding_sets(g, z).admissible)
                os << "D" << z << "." << ++k << " & $" << set_text(s, true) << "$ & $" << set_text(decoding_roots(g, s), true)
                   << "$ \\\\\n";
        }
        os << "\\hline\n\\end{tabular}\n";
        return os.str();
    }
    os << "encoding error events: " << enc.admissible.size() << " sets over " << set_text(enc.base) << "\n";
    int i = 0;
    for (const auto& s : enc.admissible)
        os << "  E" << ++i << "  S = " << set_text(s) << "  roots = " << set_text(encoding_roots(g, s)) << "\n";
    for (int z = 1; z <= g.base.net.n_rx; ++z) {
        auto dec = enumerate_decoding_sets(g, z);
        os << "decoder " << z << " error events: " << dec.admissible.size() << " sets over " << set_text(dec.base) << "\n";
        int k = 0;
        for (const auto& s : dec.admissible)
            os << "  D" << ++k << "  S = " << set_text(s) << "  roots = " << set_text(decoding_roots(g, s)) << "\n";
    }
    return os.str();
}

std::string render_bounds(const std::vector<Inequality>& rows, RenderStyle style) {
    if (style == RenderStyle::Json) {
        json a = json::array();
        for (const auto& q : rows) a.push_back(inequality_json(q));
        return a.dump(2) + "\n";
    }
    std::ostringstream os;
    if (style == RenderStyle::Latex) {
        os << "\\begin{align*}\n";
        for (std::size_t i = 0; i < rows.size(); ++i)
            os << "  " << render_inequality(rows[i], RenderStyle::Latex) << (i + 1 < rows.size() ? " \\\\\n" : "\n");
        os << "\\end{align*}\n";
        return os.str();
    }
    for (const auto& q : rows) {
        os << q.prov.row_label << "  [" << kind_name(q.prov.kind);
        if (q.prov.kind != BoundKind::Other) os << ", S = " << set_text(q.prov.subset);
        if (q.prov.kind == BoundKind::Sequential && q.prov.multiplicity > 1) os << ", x" << q.prov.multiplicity;
        os << "]\n    " << render_inequality(q, RenderStyle::Text) << "\n";
    }
    return os.str();
}

std::string render_region(const Region& r, RenderStyle style) {
    if (style == RenderStyle::Json) {
        json j;
        j["variables"] = json::array();
        for (const auto& v : r.variables) j["variables"].push_back(v.to_ascii());
        j["rows"] = json::array();
        for (const auto& q : r.rows) j["rows"].push_back(inequality_json(q));
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    if (style == RenderStyle::Latex) {
        os << "\\begin{align*}\n";
        for (std::size_t i = 0; i < r.rows.size(); ++i)
            os << "  " << render_inequality(r.rows[i], RenderStyle::Latex) << (i + 1 < r.rows.size() ? " \\\\\n" : "\n");
        os << "\\end{align*}\n";
        return os.str();
    }
    if (r.rows.empty()) os << "(no constraints beyond non-negativity)\n";
    for (const auto& q : r.rows) os << "  " << render_inequality(q, RenderStyle::Text) << "\n";
    return os.str();
}

std::string render_numeric(const NumericRegion& nr, const std::vector<RatePoint>* vertices, RenderStyle style) {
    auto num = [](double x) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6f", x);
        return std::string(buf);
    };
    if (style == RenderStyle::Json) {
        json j;
        j["variables"] = json::array();
        for (const auto& v : nr.variables) j["variables"].push_back(v.to_ascii());
        j["rows"] = json::array();
        for (const auto& row : nr.rows) {
            json c = json::object();
            for (const auto& [v, k] : row.coeffs) c[v.to_ascii()] = rational_json(k);
            j["rows"].push_back({{"coeffs", c}, {"sense", "<="}, {"rhs", row.rhs}});
        }
        if (vertices) j["vertices"] = *vertices;
        return j.dump(2) + "\n";
    }
    bool latex = style == RenderStyle::Latex;
    std::ostringstream os;
    for (const auto& row : nr.rows) {
        Inequality q;
        q.lhs = row.coeffs;
        std::string s = render_inequality(q, style);
        s = s.substr(0, s.rfind(latex ? " \\leq " : " ≤ "));
        os << "  " << s << (latex ? " \\leq " : " ≤ ") << num(row.rhs) << "\n";
    }
    if (vertices) {
        os << "vertices (";
        for (std::size_t i = 0; i < nr.variables.size(); ++i) os << (i ? ", " : "") << nr.variables[i].to_string();
        os << "):\n";
        for (const auto& p : *vertices) {
            os << "  (";
            for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << num(p[i]);
            os << ")\n";
        }
    }
    return os.str();
}

}  // namespace cgras
