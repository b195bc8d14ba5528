#include "drflow/param.hpp"

#include <algorithm>

#include "drflow/errors.hpp"

namespace drflow {

ParamScalar ParamScalar::param(Param p, int exp) {
    ParamExp e;
    switch (p) {
        case Param::xi: e.xi = exp; break;
        case Param::g1: e.g1 = exp; break;
        case Param::g2: e.g2 = exp; break;
    }
    return monomial(e, Rational(1));
}

ParamScalar ParamScalar::monomial(const ParamExp& e, const Rational& c) {
    ParamScalar s;
    if (c != 0) s.terms_.emplace_back(e, c);
    return s;
}

Rational ParamScalar::rational_value() const {
    if (terms_.empty()) return Rational(0);
    if (terms_.size() == 1 && terms_[0].first.is_unit()) return terms_[0].second;
    throw Error("ParamScalar is not a plain rational");
}

ParamScalar ParamScalar::from_unsorted(std::vector<std::pair<ParamExp, Rational>> v) {
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    ParamScalar s;
    for (auto& t : v) {
        if (!s.terms_.empty() && s.terms_.back().first == t.first)
            s.terms_.back().second += t.second;
        else
            s.terms_.push_back(std::move(t));
        if (!s.terms_.empty() && s.terms_.back().second == 0) s.terms_.pop_back();
    }
    return s;
}

ParamScalar ParamScalar::operator+(const ParamScalar& o) const {
    /* linear merge of two sorted term lists */
    ParamScalar s;
    s.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        if (terms_[i].first < o.terms_[j].first) {
            s.terms_.push_back(terms_[i++]);
        } else if (o.terms_[j].first < terms_[i].first) {
            s.terms_.push_back(o.terms_[j++]);
        } else {
            Rational c = terms_[i].second + o.terms_[j].second;
            if (c != 0) s.terms_.emplace_back(terms_[i].first, c);
            ++i;
            ++j;
        }
    }
    while (i < terms_.size()) s.terms_.push_back(terms_[i++]);
    while (j < o.terms_.size()) s.terms_.push_back(o.terms_[j++]);
    return s;
}

ParamScalar ParamScalar::operator-() const {
    ParamScalar s = *this;
    for (auto& t : s.terms_) t.second = -t.second;
    return s;
}

ParamScalar ParamScalar::operator-(const ParamScalar& o) const { return *this + (-o); }

ParamScalar ParamScalar::operator*(const ParamScalar& o) const {
    std::vector<std::pair<ParamExp, Rational>> v;
    v.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
        for (const auto& b : o.terms_)
            v.emplace_back(a.first + b.first, a.second * b.second);
    return from_unsorted(std::move(v));
}

ParamScalar ParamScalar::scaled(const Rational& c) const {
    if (c == 0) return ParamScalar();
    ParamScalar s = *this;
    for (auto& t : s.terms_) t.second *= c;
    return s;
}

ParamScalar ParamScalar::divided(const Rational& c) const {
    if (c == 0) throw Error("division of ParamScalar by zero");
    ParamScalar s = *this;
    for (auto& t : s.terms_) t.second /= c;
    return s;
}

ParamScalar ParamScalar::pow(unsigned e) const {
    ParamScalar r = one();
    for (unsigned k = 0; k < e; ++k) r = r * *this;
    return r;
}

ParamScalar ParamScalar::specialized(Param p, const Rational& value) const {
    std::vector<std::pair<ParamExp, Rational>> v;
    for (const auto& t : terms_) {
        int e = t.first.exponent(p);
        ParamExp pe = t.first;
        switch (p) {
            case Param::xi: pe.xi = 0; break;
            case Param::g1: pe.g1 = 0; break;
            case Param::g2: pe.g2 = 0; break;
        }
        Rational c = t.second * rat_pow(value, unsigned(e));
        if (e >= 0)
            v.emplace_back(pe, c);
        else
            throw Error("negative parameter exponent in specialization");
    }
    return from_unsorted(std::move(v));
}

ParamScalar ParamScalar::divided_by_param(Param p) const {
    ParamScalar s = *this;
    for (auto& t : s.terms_) {
        int e = t.first.exponent(p);
        if (e < 1) throw Error("ParamScalar term not divisible by parameter");
        switch (p) {
            case Param::xi: t.first.xi -= 1; break;
            case Param::g1: t.first.g1 -= 1; break;
            case Param::g2: t.first.g2 -= 1; break;
        }
    }
    /* exponent shift preserves the sorted order */
    return s;
}

int ParamScalar::min_exponent(Param p) const {
    if (terms_.empty()) return 0;
    int m = terms_[0].first.exponent(p);
    for (const auto& t : terms_) m = std::min(m, t.first.exponent(p));
    return m;
}

std::string ParamScalar::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += rational_str(c);
        auto piece = [&](const char* name, int exp) {
            if (exp == 0) return;
            out += "*";
            out += name;
            if (exp != 1) out += "^" + std::to_string(exp);
        };
        piece("xi", e.xi);
        piece("G1", e.g1);
        piece("G2", e.g2);
    }
    return out;
}

} // namespace drflow
