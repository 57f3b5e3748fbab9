#include "qdual/render.hpp"

#include <sstream>

#include <json.hpp>

namespace qdual {

namespace {

// One scalar summand |c| w^e without a leading sign.
void scalar_term(std::ostringstream& os, Int c, Int e, const std::string& unit) {
    Int a = c < 0 ? -c : c;
    if (e == 0) {
        os << a;
    } else {
        if (a != 1) os << a << "*";
        os << unit;
        if (e != 1) os << "^" << e;
    }
}

std::string vars_text(const ExpVec& p, const std::string& var) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        if (!first) os << "*";
        first = false;
        os << var << (i + 1);
        if (p[i] != 1) os << "^" << p[i];
    }
    return os.str();
}

} // namespace

std::string render_scalar_text(const OmegaScalar& c, const std::string& unit) {
    if (c.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    // Highest power first.
    for (auto it = c.terms().rbegin(); it != c.terms().rend(); ++it) {
        auto [e, k] = *it;
        if (first) {
            if (k < 0) os << "-";
            first = false;
        } else {
            os << (k < 0 ? " - " : " + ");
        }
        scalar_term(os, k, e, unit);
    }
    return os.str();
}

std::string render_term_text(const QLaurent& f, const ExpVec& p) {
    const std::string unit = f.q_form() ? "q" : "w";
    const std::string var = f.q_form() ? "X" : "Z";
    OmegaScalar c = f.coefficient(p);
    std::string v = vars_text(p, var);
    std::string s = render_scalar_text(c, unit);
    if (v.empty()) return s;
    if (s == "1") return v;
    if (s == "-1") return "-" + v;
    if (c.terms().size() > 1) return "(" + s + ") * " + v;
    return s + " * " + v;
}

std::string render_text(const QLaurent& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, c] : f.terms()) {
        std::string t = render_term_text(f, p);
        if (first) {
            os << t;
            first = false;
        } else if (!t.empty() && t[0] == '-') {
            os << " - " << t.substr(1);
        } else {
            os << " + " << t;
        }
    }
    return os.str();
}

std::string render_latex(const QLaurent& f) {
    if (f.is_zero()) return "0";
    const std::string unit = f.q_form() ? "q" : "\\omega";
    const std::string var = f.q_form() ? "X" : "Z";
    std::ostringstream os;
    bool first_term = true;
    for (const auto& [p, c] : f.terms()) {
        std::ostringstream coef;
        bool multi = c.terms().size() > 1;
        bool first = true;
        for (auto it = c.terms().rbegin(); it != c.terms().rend(); ++it) {
            auto [e, k] = *it;
            if (first) {
                if (k < 0) coef << "-";
                first = false;
            } else {
                coef << (k < 0 ? " - " : " + ");
            }
            Int a = k < 0 ? -k : k;
            if (e == 0) {
                coef << a;
            } else {
                if (a != 1) coef << a;
                coef << unit;
                if (e != 1) coef << "^{" << e << "}";
            }
        }
        std::ostringstream vars;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] == 0) continue;
            vars << var << "_{" << (i + 1) << "}";
            if (p[i] != 1) vars << "^{" << p[i] << "}";
        }
        std::string cs = coef.str(), vs = vars.str();
        std::string term;
        if (vs.empty())
            term = cs;
        else if (cs == "1")
            term = vs;
        else if (cs == "-1")
            term = "-" + vs;
        else if (multi)
            term = "\\left(" + cs + "\\right) " + vs;
        else
            term = cs + " " + vs;
        if (first_term) {
            os << term;
            first_term = false;
        } else if (!term.empty() && term[0] == '-') {
            os << " - " << term.substr(1);
        } else {
            os << " + " << term;
        }
    }
    return os.str();
}

std::string render_json(const QLaurent& f) {
    nlohmann::json j;
    j["vars"] = f.q_form() ? "X" : "Z";
    j["scalar"] = f.q_form() ? "q" : "w";
    j["n"] = f.vars();
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [p, c] : f.terms()) {
        nlohmann::json t;
        t["exp"] = p;
        nlohmann::json coef = nlohmann::json::array();
        for (const auto& [e, k] : c.terms()) coef.push_back({e, k});
        t["coef"] = coef;
        terms.push_back(t);
    }
    j["terms"] = terms;
    return j.dump();
}

} // namespace qdual
