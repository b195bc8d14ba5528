#include "drflow/render.hpp"

#include <sstream>

namespace drflow {

namespace {

std::string jet_name(char letter, const JetFactor& j) {
    std::string s;
    s += letter;
    s += std::to_string(j.var + 1);
    if (j.order == 1) {
        s += "_x";
    } else if (j.order >= 2) {
        s += '[';
        s += std::to_string(j.order);
        s += ']';
    }
    if (j.mult > 1) {
        s += '^';
        s += std::to_string(j.mult);
    }
    return s;
}

void append_power(std::vector<std::string>& f, const char* name, int e) {
    if (e == 0) return;
    std::string s = name;
    if (e != 1) {
        s += '^';
        s += std::to_string(e);
    }
    f.push_back(std::move(s));
}

/* One displayed summand: |rat| * params * eps^k * jets, sign handled by the caller. */
std::string piece_text(char letter, const Monomial& m, const ParamExp& pe, const Rational& mag) {
    std::vector<std::string> factors;
    append_power(factors, "xi", pe.xi);
    append_power(factors, "G1", pe.g1);
    append_power(factors, "G2", pe.g2);
    append_power(factors, "eps", m.eps_exp);
    for (const auto& j : m.jets) factors.push_back(jet_name(letter, j));
    if (mag != 1 || factors.empty()) factors.insert(factors.begin(), mag.get_str());
    std::string s = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) {
        s += '*';
        s += factors[i];
    }
    return s;
}

} // namespace

std::string render_text(const DiffPoly& p, char letter) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : p.terms()) {
        for (const auto& [pe, c] : t.coeff.terms()) {
            bool neg = c < 0;
            Rational mag = neg ? Rational(-c) : c;
            if (first) {
                if (neg) out += '-';
                first = false;
            } else {
                out += neg ? " - " : " + ";
            }
            out += piece_text(letter, t.mono, pe, mag);
        }
    }
    return out;
}

nlohmann::json render_json(const DiffPoly& p) {
    nlohmann::json root;
    root["n_vars"] = p.n_vars();
    const auto& ctx = p.context();
    if (ctx.eps_max < TruncationContext::unbounded_value) root["eps_max"] = ctx.eps_max;
    if (ctx.deg_max < TruncationContext::unbounded_value) root["deg_max"] = ctx.deg_max;
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : p.terms()) {
        nlohmann::json jt;
        jt["eps"] = t.mono.eps_exp;
        nlohmann::json jets = nlohmann::json::array();
        for (const auto& j : t.mono.jets)
            jets.push_back(nlohmann::json::array({j.var + 1, j.order, j.mult}));
        jt["jets"] = jets;
        nlohmann::json coeff = nlohmann::json::array();
        for (const auto& [pe, c] : t.coeff.terms()) {
            nlohmann::json jc;
            jc["xi"] = pe.xi;
            jc["G1"] = pe.g1;
            jc["G2"] = pe.g2;
            jc["num"] = c.get_num().get_str();
            jc["den"] = c.get_den().get_str();
            coeff.push_back(jc);
        }
        jt["coeff"] = coeff;
        terms.push_back(jt);
    }
    root["terms"] = terms;
    return root;
}

std::string DiffPoly::str(char letter) const { return render_text(*this, letter); }

} // namespace drflow
