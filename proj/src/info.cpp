#include "cgras/info.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cgras {

std::string VarRef::to_string() const {
    switch (kind) {
        case Kind::Aux: return "U_{" + id.to_string() + "}";
        case Kind::Input: return "X_" + std::to_string(index);
        case Kind::Output: return "Y_" + std::to_string(index);
        case Kind::TimeShare: return "Q";
    }
    return "?";
}

std::string VarRef::to_ascii() const {
    switch (kind) {
        case Kind::Aux: {
            auto join = [](const NodeSet& s) {
                std::string out;
                for (int m : s.members()) out += (out.empty() ? "" : ",") + std::to_string(m);
                return out;
            };
            return "U(" + join(id.tx) + ";" + join(id.rx) + ")";
        }
        case Kind::Input: return "X" + std::to_string(index);
        case Kind::Output: return "Y" + std::to_string(index);
        case Kind::TimeShare: return "Q";
    }
    return "?";
}

std::string VarRef::to_latex() const {
    switch (kind) {
        case Kind::Aux: return "U_{" + id.to_latex() + "}";
        case Kind::Input: return "X_{" + std::to_string(index) + "}";
        case Kind::Output: return "Y_{" + std::to_string(index) + "}";
        case Kind::TimeShare: return "Q";
    }
    return "?";
}

bool operator<(const VarRef& a, const VarRef& b) {
    if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    if (a.kind == VarRef::Kind::Aux) return a.id < b.id;
    return a.index < b.index;
}

bool operator==(const VarRef& a, const VarRef& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == VarRef::Kind::Aux) return a.id == b.id;
    return a.index == b.index;
}

VarRef parse_var_ref(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s == "Q") return VarRef::time_share();
    auto numeric_tail = [&](std::size_t from) {
        std::string t = s.substr(from);
        if (!t.empty() && t[0] == '_') t = t.substr(1);
        if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw std::invalid_argument("bad variable name: " + raw);
        return std::stoi(t);
    };
    if (!s.empty() && s[0] == 'Y') return VarRef::output(numeric_tail(1));
    if (!s.empty() && s[0] == 'X') return VarRef::input(numeric_tail(1));
    if (s.size() > 3 && s[0] == 'U' && s[1] == '(' && s.back() == ')') {
        std::string body = s.substr(2, s.size() - 3);
        auto semi = body.find(';');
        if (semi == std::string::npos) throw std::invalid_argument("bad auxiliary name: " + raw);
        return VarRef::aux(parse_message_id("{" + body.substr(0, semi) + "}->{" + body.substr(semi + 1) + "}"));
    }
    if (s.size() > 1 && s[0] == 'U') {
        std::string body = s.substr(1);
        if (body.front() == '_') body = body.substr(1);
        if (body.size() > 1 && body.front() == '{' && body.back() == '}' && body.find("->") != std::string::npos &&
            body.find("->") > 1 && body[1] != '{')
            body = body.substr(1, body.size() - 2);
        return VarRef::aux(parse_message_id(body));
    }
    throw std::invalid_argument("bad variable name: " + raw);
}

VarSet make_varset(std::vector<VarRef> vars) {
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

VarSet set_union(const VarSet& a, const VarSet& b) {
    VarSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VarSet set_minus(const VarSet& a, const VarSet& b) {
    VarSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VarSet set_intersection(const VarSet& a, const VarSet& b) {
    VarSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VarSet aux_set(const std::vector<MessageId>& ids) {
    std::vector<VarRef> v;
    for (const auto& m : ids) v.push_back(VarRef::aux(m));
    return make_varset(std::move(v));
}

EntropyExpr EntropyExpr::constant(const Rational& c) {
    EntropyExpr e;
    e.constant_ = c;
    return e;
}

EntropyExpr EntropyExpr::entropy(const VarSet& block) {
    EntropyExpr e;
    e.add_term(block, 1);
    return e;
}

void EntropyExpr::add_term(const VarSet& raw_block, const Rational& coeff) {
    if (coeff == 0) return;
    // Q is implicit in every atom, so it never appears explicitly.
    VarSet block;
    for (const auto& v : raw_block)
        if (v.kind != VarRef::Kind::TimeShare) block.push_back(v);
    block = make_varset(std::move(block));
    if (block.empty()) return;  // H(∅ | Q) = 0
    auto it = terms_.find(block);
    if (it == terms_.end()) {
        terms_.emplace(block, coeff);
        return;
    }
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
}

EntropyExpr& EntropyExpr::operator+=(const EntropyExpr& o) {
    for (const auto& [block, c] : o.terms_) add_term(block, c);
    constant_ += o.constant_;
    return *this;
}

EntropyExpr& EntropyExpr::operator-=(const EntropyExpr& o) {
    for (const auto& [block, c] : o.terms_) add_term(block, -c);
    constant_ -= o.constant_;
    return *this;
}

EntropyExpr& EntropyExpr::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        constant_ = 0;
        return *this;
    }
    for (auto& [_, v] : terms_) v *= c;
    constant_ *= c;
    return *this;
}

bool operator<(const EntropyExpr& a, const EntropyExpr& b) {
    if (a.constant_ != b.constant_) return a.constant_ < b.constant_;
    return std::lexicographical_compare(a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
                                        [](const auto& x, const auto& y) {
                                            if (x.first != y.first) return x.first < y.first;
                                            return x.second < y.second;
                                        });
}

VarSet EntropyExpr::variables() const {
    VarSet out;
    for (const auto& [block, _] : terms_) out = set_union(out, block);
    return out;
}

EntropyExpr cond_entropy(const VarSet& a, const VarSet& c) {
    EntropyExpr e = EntropyExpr::entropy(set_union(make_varset(a), make_varset(c)));
    e -= EntropyExpr::entropy(make_varset(c));
    return e;
}

EntropyExpr mutual_info(const VarSet& a_raw, const VarSet& b_raw, const VarSet& c_raw) {
    VarSet c = make_varset(c_raw);
    VarSet a = set_minus(make_varset(a_raw), c);
    VarSet b = set_minus(make_varset(b_raw), c);
    if (!set_intersection(a, b).empty()) throw IllFormedInfo("mutual information with overlapping arguments");
    EntropyExpr e;
    if (a.empty() || b.empty()) return e;
    e.add_term(set_union(a, c), 1);
    e.add_term(set_union(b, c), 1);
    e.add_term(set_union(set_union(a, b), c), -1);
    e.add_term(c, -1);
    return e;
}

EntropyExpr canonicalize(const EntropyExpr& e) {
    EntropyExpr out = EntropyExpr::constant(e.constant_term());
    for (const auto& [block, c] : e.terms()) out.add_term(block, c);
    return out;
}

bool expr_equal(const EntropyExpr& a, const EntropyExpr& b) { return canonicalize(a) == canonicalize(b); }

bool match_mutual_info(const EntropyExpr& e, MiTerm& out) {
    if (e.constant_term() != 0) return false;
    const auto& t = e.terms();
    std::vector<std::pair<VarSet, Rational>> pos, neg;
    for (const auto& [block, c] : t) (c > 0 ? pos : neg).emplace_back(block, c);
    if (pos.size() != 2) return false;
    Rational k = pos[0].second;
    if (pos[1].second != k) return false;
    VarSet c = set_intersection(pos[0].first, pos[1].first);
    VarSet all = set_union(pos[0].first, pos[1].first);
    if (c.empty()) {
        if (neg.size() != 1 || neg[0].first != all || neg[0].second != -k) return false;
    } else {
        if (neg.size() != 2) return false;
        bool found_all = false, found_c = false;
        for (const auto& [block, v] : neg) {
            if (v != -k) return false;
            if (block == all) found_all = true;
            else if (block == c) found_c = true;
        }
        if (!found_all || !found_c) return false;
    }
    out.a = set_minus(pos[0].first, c);
    out.b = set_minus(pos[1].first, c);
    out.c = c;
    out.coeff = k;
    return !out.a.empty() && !out.b.empty();
}

namespace {

std::string join_vars(const VarSet& s, RenderStyle style) {
    std::string out;
    for (const auto& v : s) {
        if (!out.empty()) out += ", ";
        out += style == RenderStyle::Latex ? v.to_latex() : v.to_string();
    }
    return out;
}

std::string coeff_prefix(const Rational& c, bool first) {
    std::string s;
    Rational mag = abs(c);
    if (c < 0) s = first ? "-" : " - ";
    else if (!first) s = " + ";
    if (mag != 1) s += to_string(mag) + " ";
    return s;
}

std::string render_json(const EntropyExpr& e) {
    std::ostringstream os;
    os << "{\"atoms\":[";
    bool first = true;
    for (const auto& [block, c] : e.terms()) {
        if (!first) os << ",";
        first = false;
        os << "{\"block\":[";
        for (std::size_t i = 0; i < block.size(); ++i) os << (i ? "," : "") << "\"" << block[i].to_ascii() << "\"";
        os << "],\"coeff\":[" << numerator_string(c) << "," << denominator_string(c) << "]}";
    }
    os << "]";
    if (e.constant_term() != 0)
        os << ",\"constant\":[" << numerator_string(e.constant_term()) << "," << denominator_string(e.constant_term()) << "]";
    os << "}";
    return os.str();
}

}  // namespace

std::string render(const EntropyExpr& e, RenderStyle style) {
    if (style == RenderStyle::Json) return render_json(e);
    if (e.is_zero()) return "0";
    const std::string q = style == RenderStyle::Latex ? "Q" : "Q";
    MiTerm mi;
    if (e.constant_term() == 0 && match_mutual_info(e, mi)) {
        std::string s = mi.coeff == 1 ? "" : to_string(mi.coeff) + " ";
        s += "I(" + join_vars(mi.a, style) + "; " + join_vars(mi.b, style) + " | ";
        if (!mi.c.empty()) s += join_vars(mi.c, style) + ", ";
        return s + q + ")";
    }
    std::string s;
    bool first = true;
    for (const auto& [block, c] : e.terms()) {
        s += coeff_prefix(c, first) + "H(" + join_vars(block, style) + " | " + q + ")";
        first = false;
    }
    if (e.constant_term() != 0) {
        const Rational& k = e.constant_term();
        s += first ? to_string(k) : (k < 0 ? " - " + to_string(Rational(-k)) : " + " + to_string(k));
    }
    return s;
}

}  // namespace cgras

namespace cgras {

std::vector<std::string> split_top_level(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '(' || c == '{') ++depth;
        if (c == ')' || c == '}') --depth;
        if (c == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\n");
    return s.substr(b, e - b + 1);
}

VarSet parse_var_list(const std::string& text) {
    VarSet out;
    if (trim(text).empty()) return out;
    for (const auto& part : split_top_level(text, ',')) out.push_back(parse_var_ref(trim(part)));
    return make_varset(out);
}

EntropyExpr parse_atom(const std::string& raw) {
    std::string s = trim(raw);
    if (s.size() > 3 && (s[0] == 'I' || s[0] == 'H') && s[1] == '(' && s.back() == ')') {
        std::string body = s.substr(2, s.size() - 3);
        auto bar = split_top_level(body, '|');
        if (bar.size() > 2) throw std::invalid_argument("more than one '|' in " + raw);
        VarSet cond = bar.size() == 2 ? parse_var_list(bar[1]) : VarSet{};
        if (s[0] == 'H') return cond_entropy(parse_var_list(bar[0]), cond);
        auto semi = split_top_level(bar[0], ';');
        if (semi.size() != 2) throw std::invalid_argument("mutual information needs exactly one ';' in " + raw);
        return mutual_info(parse_var_list(semi[0]), parse_var_list(semi[1]), cond);
    }
    return EntropyExpr::constant(parse_rational(s));
}

}  // namespace

EntropyExpr parse_info_expr(const std::string& text) {
    EntropyExpr out;
    std::string cur;
    int depth = 0;
    std::vector<std::pair<int, std::string>> terms;
    int sign = 1;
    for (char c : text) {
        if (c == '(' || c == '{') ++depth;
        if (c == ')' || c == '}') --depth;
        if ((c == '+' || c == '-') && depth == 0) {
            if (!trim(cur).empty()) {
                terms.push_back({sign, cur});
                cur.clear();
                sign = 1;
            }
            if (c == '-') sign = -sign;
            continue;
        }
        cur += c;
    }
    if (!trim(cur).empty()) terms.push_back({sign, cur});
    for (const auto& [sg, t] : terms) {
        std::string s = trim(t);
        Rational coeff = sg;
        // Optional leading rational coefficient, separated by space or '*'.
        std::size_t k = 0;
        while (k < s.size() && (std::isdigit(static_cast<unsigned char>(s[k])) || s[k] == '/' || s[k] == '.')) ++k;
        if (k > 0 && k < s.size()) {
            coeff *= parse_rational(s.substr(0, k));
            s = trim(s.substr(k));
            if (!s.empty() && s[0] == '*') s = trim(s.substr(1));
        }
        out += coeff * parse_atom(s);
    }
    return out;
}

}  // namespace cgras
