#include "cgras/lp.hpp"

#include <stdexcept>

namespace cgras {

void LpProblem::add_row(std::vector<Rational> row, RowSense s, Rational rhs) {
    if (row.size() != n_vars) throw std::invalid_argument("LP row width does not match variable count");
    a.push_back(std::move(row));
    sense.push_back(s);
    b.push_back(std::move(rhs));
}

namespace {

// Dense tableau: rows 0..m-1 are constraints, column `cols` is the right-hand
// side. `z` holds the reduced costs of the objective being optimised.
struct Tableau {
    std::vector<std::vector<Rational>> t;
    std::vector<std::size_t> basis;
    std::vector<Rational> z;
    std::size_t cols = 0;

    static void eliminate(std::vector<Rational>& row, const std::vector<Rational>& piv_row,
                          const std::vector<std::size_t>& nz, std::size_t c, Rational& tmp) {
        if (row[c] == 0) return;
        Rational f = row[c];
        for (std::size_t j : nz) {
            mpq_mul(tmp.get_mpq_t(), f.get_mpq_t(), piv_row[j].get_mpq_t());
            mpq_sub(row[j].get_mpq_t(), row[j].get_mpq_t(), tmp.get_mpq_t());
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        auto& pr = t[r];
        Rational piv = pr[c];
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j <= cols; ++j)
            if (pr[j] != 0) {
                pr[j] /= piv;
                nz.push_back(j);
            }
        Rational tmp;
        for (std::size_t i = 0; i < t.size(); ++i)
            if (i != r) eliminate(t[i], pr, nz, c, tmp);
        if (!z.empty()) eliminate(z, pr, nz, c, tmp);
        basis[r] = c;
    }

    // Minimizes the objective cost over the allowed columns with Bland's rule.
    // Returns false if unbounded.
    bool optimize(const std::vector<Rational>& cost, const std::vector<bool>& allowed) {
        z.assign(cols + 1, Rational(0));
        for (std::size_t j = 0; j < cols; ++j) z[j] = cost[j];
        for (std::size_t i = 0; i < t.size(); ++i) {
            const Rational& cb = cost[basis[i]];
            if (cb == 0) continue;
            for (std::size_t j = 0; j <= cols; ++j)
                if (t[i][j] != 0) z[j] -= cb * t[i][j];
        }
        for (;;) {
            std::size_t enter = cols;
            for (std::size_t j = 0; j < cols; ++j)
                if (allowed[j] && z[j] < 0) {
                    enter = j;
                    break;
                }
            if (enter == cols) {
                z.clear();
                return true;
            }
            std::size_t leave = t.size();
            Rational best;
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (t[i][enter] <= 0) continue;
                Rational ratio = t[i][cols] / t[i][enter];
                if (leave == t.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    best = ratio;
                    leave = i;
                }
            }
            if (leave == t.size()) {
                z.clear();
                return false;
            }
            pivot(leave, enter);
        }
    }
};

}  // namespace

LpResult solve_lp(const LpProblem& p) {
    const std::size_t m = p.a.size();
    const std::size_t n = p.n_vars;
    std::size_t n_slack = 0;
    for (auto s : p.sense)
        if (s != RowSense::Equal) ++n_slack;
    const std::size_t art0 = n + n_slack;
    // A row whose slack enters with coefficient +1 after sign normalisation
    // starts with the slack in the basis and needs no artificial column.
    std::vector<std::size_t> slack_col(m, 0);
    std::vector<bool> needs_art(m, true);
    std::size_t n_art = 0;
    {
        std::size_t slack = n;
        for (std::size_t i = 0; i < m; ++i) {
            if (p.sense[i] == RowSense::Equal) continue;
            slack_col[i] = slack++;
            bool flip = p.b[i] < 0;
            bool plus = (p.sense[i] == RowSense::LessEq) != flip;
            if (plus) needs_art[i] = false;
        }
        for (std::size_t i = 0; i < m; ++i)
            if (needs_art[i]) ++n_art;
    }
    Tableau tab;
    tab.cols = art0 + n_art;
    tab.t.assign(m, std::vector<Rational>(tab.cols + 1, Rational(0)));
    tab.basis.assign(m, 0);
    std::size_t art = art0;
    for (std::size_t i = 0; i < m; ++i) {
        auto& row = tab.t[i];
        for (std::size_t j = 0; j < n; ++j) row[j] = p.a[i][j];
        if (p.sense[i] == RowSense::LessEq) row[slack_col[i]] = 1;
        else if (p.sense[i] == RowSense::GreaterEq) row[slack_col[i]] = -1;
        row[tab.cols] = p.b[i];
        if (row[tab.cols] < 0)
            for (auto& v : row) v = -v;
        if (needs_art[i]) {
            row[art] = 1;
            tab.basis[i] = art++;
        } else {
            tab.basis[i] = slack_col[i];
        }
    }
    std::vector<Rational> phase1(tab.cols, Rational(0));
    for (std::size_t j = art0; j < tab.cols; ++j) phase1[j] = 1;
    std::vector<bool> all(tab.cols, true);
    if (n_art > 0) tab.optimize(phase1, all);
    Rational infeas = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (tab.basis[i] >= art0) infeas += tab.t[i][tab.cols];
    LpResult res;
    if (infeas != 0) return res;
    // Drive remaining artificial variables out of the basis or drop redundant rows.
    for (std::size_t i = 0; i < tab.t.size();) {
        if (tab.basis[i] < art0) {
            ++i;
            continue;
        }
        std::size_t c = art0;
        for (std::size_t j = 0; j < art0; ++j)
            if (tab.t[i][j] != 0) {
                c = j;
                break;
            }
        if (c == art0) {
            tab.t.erase(tab.t.begin() + i);
            tab.basis.erase(tab.basis.begin() + i);
        } else {
            tab.pivot(i, c);
            ++i;
        }
    }
    std::vector<bool> structural(tab.cols, false);
    for (std::size_t j = 0; j < art0; ++j) structural[j] = true;
    std::vector<Rational> cost(tab.cols, Rational(0));
    for (std::size_t j = 0; j < n && j < p.c.size(); ++j) cost[j] = p.c[j];
    if (!p.c.empty() && !tab.optimize(cost, structural)) {
        res.status = LpStatus::Unbounded;
        return res;
    }
    res.status = LpStatus::Optimal;
    res.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < tab.t.size(); ++i)
        if (tab.basis[i] < n) res.x[tab.basis[i]] = tab.t[i][tab.cols];
    for (std::size_t j = 0; j < n; ++j) res.value += cost[j] * res.x[j];
    return res;
}

}  // namespace cgras
