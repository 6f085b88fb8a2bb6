#include "cgras/numeric.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

namespace cgras {

JointPmf::JointPmf(std::vector<VarRef> vars, std::vector<int> card, std::vector<double> prob)
    : vars_(std::move(vars)), card_(std::move(card)), prob_(std::move(prob)) {
    if (vars_.size() != card_.size()) throw PmfError("variable and cardinality lists differ in length");
    std::size_t total = 1;
    for (int c : card_) {
        if (c < 1) throw PmfError("alphabet sizes must be positive");
        total *= static_cast<std::size_t>(c);
    }
    if (prob_.size() != total) throw PmfError("probability table has the wrong size");
    double sum = 0;
    for (double p : prob_) {
        if (p < 0 || !std::isfinite(p)) throw PmfError("probabilities must be finite and non-negative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw PmfError("probabilities do not sum to one");
}

bool JointPmf::has(const VarRef& v) const { return std::find(vars_.begin(), vars_.end(), v) != vars_.end(); }

double JointPmf::raw_entropy(const std::vector<std::size_t>& idx) const {
    if (idx.empty()) return 0.0;
    std::map<std::vector<int>, double> marg;
    std::vector<int> digits(vars_.size(), 0);
    std::vector<int> key(idx.size());
    for (std::size_t flat = 0; flat < prob_.size(); ++flat) {
        std::size_t rem = flat;
        for (std::size_t k = vars_.size(); k-- > 0;) {
            digits[k] = static_cast<int>(rem % static_cast<std::size_t>(card_[k]));
            rem /= static_cast<std::size_t>(card_[k]);
        }
        for (std::size_t j = 0; j < idx.size(); ++j) key[j] = digits[idx[j]];
        marg[key] += prob_[flat];
    }
    double h = 0;
    for (const auto& [_, p] : marg)
        if (p > 0) h -= p * std::log2(p);
    return h;
}

double JointPmf::entropy(const VarSet& block) const {
    std::vector<std::size_t> idx;
    for (const auto& v : block) {
        auto it = std::find(vars_.begin(), vars_.end(), v);
        if (it == vars_.end()) throw KeyError("variable missing from pmf: " + v.to_ascii());
        idx.push_back(static_cast<std::size_t>(it - vars_.begin()));
    }
    auto q = std::find(vars_.begin(), vars_.end(), VarRef::time_share());
    if (q == vars_.end()) return raw_entropy(idx);
    std::size_t qi = static_cast<std::size_t>(q - vars_.begin());
    if (std::find(idx.begin(), idx.end(), qi) == idx.end()) idx.push_back(qi);
    return raw_entropy(idx) - raw_entropy({qi});
}

JointPmf pmf_from_factors(const std::vector<PmfFactor>& factors) {
    std::vector<VarRef> vars;
    std::vector<int> card;
    std::vector<double> prob{1.0};
    for (const auto& f : factors) {
        if (std::find(vars.begin(), vars.end(), f.var) != vars.end())
            throw PmfError("variable declared twice: " + f.var.to_ascii());
        std::vector<std::size_t> pidx;
        std::size_t rows = 1;
        for (const auto& p : f.parents) {
            auto it = std::find(vars.begin(), vars.end(), p);
            if (it == vars.end()) throw PmfError("parent not yet declared: " + p.to_ascii());
            pidx.push_back(static_cast<std::size_t>(it - vars.begin()));
            rows *= static_cast<std::size_t>(card[pidx.back()]);
        }
        if (f.table.size() != rows * static_cast<std::size_t>(f.card))
            throw PmfError("factor table has the wrong size for " + f.var.to_ascii());
        for (std::size_t r = 0; r < rows; ++r) {
            double s = 0;
            for (int k = 0; k < f.card; ++k) s += f.table[r * static_cast<std::size_t>(f.card) + static_cast<std::size_t>(k)];
            if (std::abs(s - 1.0) > 1e-12) throw PmfError("conditional table row does not sum to one for " + f.var.to_ascii());
        }
        std::vector<double> next(prob.size() * static_cast<std::size_t>(f.card), 0.0);
        std::vector<int> digits(vars.size(), 0);
        for (std::size_t flat = 0; flat < prob.size(); ++flat) {
            std::size_t rem = flat;
            for (std::size_t k = vars.size(); k-- > 0;) {
                digits[k] = static_cast<int>(rem % static_cast<std::size_t>(card[k]));
                rem /= static_cast<std::size_t>(card[k]);
            }
            std::size_t row = 0;
            for (std::size_t j = 0; j < pidx.size(); ++j)
                row = row * static_cast<std::size_t>(card[pidx[j]]) + static_cast<std::size_t>(digits[pidx[j]]);
            for (int k = 0; k < f.card; ++k)
                next[flat * static_cast<std::size_t>(f.card) + static_cast<std::size_t>(k)] =
                    prob[flat] * f.table[row * static_cast<std::size_t>(f.card) + static_cast<std::size_t>(k)];
        }
        prob = std::move(next);
        vars.push_back(f.var);
        card.push_back(f.card);
    }
    return JointPmf(vars, card, prob);
}

JointPmf parse_pmf_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw PmfError(std::string("pmf JSON syntax error: ") + e.what());
    }
    try {
        if (j.contains("factors")) {
            std::vector<PmfFactor> fs;
            for (const auto& f : j.at("factors")) {
                PmfFactor pf;
                pf.var = parse_var_ref(f.at("var").get<std::string>());
                pf.card = f.at("card").get<int>();
                for (const auto& p : f.value("parents", nlohmann::json::array())) pf.parents.push_back(parse_var_ref(p.get<std::string>()));
                pf.table = f.at("table").get<std::vector<double>>();
                fs.push_back(std::move(pf));
            }
            return pmf_from_factors(fs);
        }
        std::vector<VarRef> vars;
        std::vector<int> card;
        for (const auto& v : j.at("variables")) {
            vars.push_back(parse_var_ref(v.at("name").get<std::string>()));
            card.push_back(v.at("card").get<int>());
        }
        return JointPmf(vars, card, j.at("table").get<std::vector<double>>());
    } catch (const nlohmann::json::exception& e) {
        throw PmfError(std::string("pmf JSON field error: ") + e.what());
    }
}

double eval_expr(const JointPmf& pmf, const EntropyExpr& e) {
    double v = to_double(e.constant_term());
    for (const auto& [blk, c] : e.terms()) v += to_double(c) * pmf.entropy(blk);
    if (std::abs(v) < kTolerance) v = 0.0;
    return v;
}

NumericRegion instantiate_region(const Region& r, const JointPmf& pmf) {
    NumericRegion nr;
    nr.variables = r.variables;
    for (const auto& raw : r.rows) {
        Inequality q = to_leq(raw);
        nr.rows.push_back(NumericRow{q.lhs, eval_expr(pmf, q.rhs)});
    }
    return nr;
}

NumericRegion fix_variable(const NumericRegion& nr, const RateVar& v, double value) {
    NumericRegion out;
    for (const auto& x : nr.variables)
        if (!(x == v)) out.variables.push_back(x);
    for (auto row : nr.rows) {
        auto it = row.coeffs.find(v);
        if (it != row.coeffs.end()) {
            row.rhs -= to_double(it->second) * value;
            row.coeffs.erase(it);
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

NumericRegion remove_redundant_numeric(const NumericRegion& nr) {
    LinearSystem sys;
    sys.variables = nr.variables;
    for (const auto& row : nr.rows) {
        Inequality q;
        q.lhs = row.coeffs;
        q.rhs = EntropyExpr::constant(Rational(row.rhs));
        sys.rows.push_back(q);
    }
    sys = remove_redundant(sys);
    NumericRegion out;
    out.variables = nr.variables;
    for (const auto& q : sys.rows) out.rows.push_back(NumericRow{q.lhs, to_double(q.rhs.constant_term())});
    return out;
}

namespace {

struct DenseRow {
    std::vector<double> a;
    double b;
};

// Solves the square system by Gaussian elimination with partial pivoting.
bool solve_square(std::vector<std::vector<double>> m, std::vector<double> rhs, std::vector<double>& x) {
    const std::size_t n = rhs.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
        if (std::abs(m[piv][c]) < 1e-12) return false;
        std::swap(m[piv], m[c]);
        std::swap(rhs[piv], rhs[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            double f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
            rhs[r] -= f * rhs[c];
        }
    }
    x.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
    return true;
}

std::vector<RatePoint> vertices_of(const std::vector<DenseRow>& rows, std::size_t d) {
    std::vector<RatePoint> out;
    if (d == 0) {
        for (const auto& r : rows)
            if (r.b < -kTolerance) return out;
        out.push_back({});
        return out;
    }
    std::vector<std::size_t> pick(d);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        if (depth == d) {
            std::vector<std::vector<double>> m;
            std::vector<double> rhs;
            for (auto i : pick) {
                m.push_back(rows[i].a);
                rhs.push_back(rows[i].b);
            }
            std::vector<double> x;
            if (!solve_square(m, rhs, x)) return;
            for (const auto& r : rows) {
                double s = 0;
                for (std::size_t k = 0; k < d; ++k) s += r.a[k] * x[k];
                if (s > r.b + kTolerance) return;
            }
            for (auto& v : x)
                if (std::abs(v) < kTolerance) v = 0.0;
            for (const auto& p : out) {
                bool same = true;
                for (std::size_t k = 0; k < d; ++k)
                    if (std::abs(p[k] - x[k]) > kTolerance) same = false;
                if (same) return;
            }
            out.push_back(x);
            return;
        }
        for (std::size_t i = start; i < rows.size(); ++i) {
            pick[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<RatePoint> enumerate_vertices(const NumericRegion& nr) {
    const std::size_t d = nr.variables.size();
    if (d > 3) throw UnsupportedError("vertex enumeration supports at most 3 rate dimensions");
    std::vector<DenseRow> rows, cone;
    for (const auto& r : nr.rows) {
        DenseRow dr{std::vector<double>(d, 0.0), r.rhs};
        for (const auto& [v, c] : r.coeffs) {
            auto it = std::find(nr.variables.begin(), nr.variables.end(), v);
            if (it == nr.variables.end()) throw KeyError("row uses an undeclared variable: " + v.to_ascii());
            dr.a[static_cast<std::size_t>(it - nr.variables.begin())] = to_double(c);
        }
        rows.push_back(dr);
        cone.push_back(DenseRow{dr.a, 0.0});
    }
    for (std::size_t k = 0; k < d; ++k) {
        DenseRow nn{std::vector<double>(d, 0.0), 0.0};
        nn.a[k] = -1.0;
        rows.push_back(nn);
        cone.push_back(nn);
    }
    auto verts = vertices_of(rows, d);
    if (verts.empty()) return verts;
    // The feasible set is bounded iff no non-negative direction d with Σd = 1 satisfies A d ≤ 0.
    cone.push_back(DenseRow{std::vector<double>(d, 1.0), 1.0});
    cone.push_back(DenseRow{std::vector<double>(d, -1.0), -1.0});
    if (d > 0 && !vertices_of(cone, d).empty()) throw UnboundedError("region is unbounded");
    return verts;
}

}  // namespace cgras
