#ifndef DRFLOW_PARAM_HPP
#define DRFLOW_PARAM_HPP

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "drflow/rational.hpp"

namespace drflow {

/* Formal parameters of the family: xi and the two rescaling constants. */
enum class Param { xi = 0, g1 = 1, g2 = 2 };

/* Exponent vector of a monomial xi^a * G1^b * G2^c. */
struct ParamExp {
    int xi = 0;
    int g1 = 0;
    int g2 = 0;

    friend auto operator<=>(const ParamExp&, const ParamExp&) = default;

    bool is_unit() const { return xi == 0 && g1 == 0 && g2 == 0; }

    ParamExp operator+(const ParamExp& o) const {
        return ParamExp{xi + o.xi, g1 + o.g1, g2 + o.g2};
    }

    int exponent(Param p) const {
        switch (p) {
            case Param::xi: return xi;
            case Param::g1: return g1;
            default: return g2;
        }
    }
};

/* Element of Q[xi, G1, G2]: a sparse sum of rational multiples of parameter
 * monomials, kept sorted by exponent vector with no zero coefficients. */
class ParamScalar {
public:
    ParamScalar() = default;
    /* implicit: rationals embed as scalars */
    ParamScalar(const Rational& r) {
        if (r != 0) terms_.emplace_back(ParamExp{}, r);
    }
    ParamScalar(long n) : ParamScalar(Rational(n)) {}

    static ParamScalar zero() { return ParamScalar(); }
    static ParamScalar one() { return ParamScalar(Rational(1)); }
    static ParamScalar param(Param p, int exp = 1);
    static ParamScalar monomial(const ParamExp& e, const Rational& c);

    const std::vector<std::pair<ParamExp, Rational>>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    /* True when the value lies in Q (zero or a single parameter-free term). */
    bool is_rational() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_unit());
    }
    Rational rational_value() const;

    ParamScalar operator+(const ParamScalar& o) const;
    ParamScalar operator-(const ParamScalar& o) const;
    ParamScalar operator*(const ParamScalar& o) const;
    ParamScalar operator-() const;
    ParamScalar& operator+=(const ParamScalar& o) { return *this = *this + o; }
    ParamScalar& operator-=(const ParamScalar& o) { return *this = *this - o; }
    ParamScalar& operator*=(const ParamScalar& o) { return *this = *this * o; }

    ParamScalar scaled(const Rational& c) const;
    ParamScalar divided(const Rational& c) const;
    ParamScalar pow(unsigned e) const;

    /* Substitute a rational value for one parameter. */
    ParamScalar specialized(Param p, const Rational& value) const;

    /* Exact division by one parameter; throws unless every term contains it. */
    ParamScalar divided_by_param(Param p) const;

    /* Largest power of p dividing every term (0 for the zero scalar). */
    int min_exponent(Param p) const;

    bool operator==(const ParamScalar& o) const { return terms_ == o.terms_; }
    bool operator!=(const ParamScalar& o) const { return !(*this == o); }

    std::string str() const;

private:
    /* sorted by ParamExp, coefficients nonzero */
    std::vector<std::pair<ParamExp, Rational>> terms_;

    static ParamScalar from_unsorted(std::vector<std::pair<ParamExp, Rational>> v);
};

inline ParamScalar operator*(const Rational& c, const ParamScalar& s) { return s.scaled(c); }

} // namespace drflow

#endif
