#pragma once

#include <complex>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "twistalg/cyclotomic.hpp"
#include "twistalg/rational.hpp"

namespace twistalg {

namespace detail {
inline int& default_cyclotomic_order_slot() {
    static int order = 12;
    return order;
}
}  // namespace detail

// Session-wide default order N of the coefficient field Q(zeta_N).
inline int default_cyclotomic_order() { return detail::default_cyclotomic_order_slot(); }

inline void set_default_cyclotomic_order(int order) {
    if (order < 1) throw std::invalid_argument("set_default_cyclotomic_order: order must be >= 1");
    detail::default_cyclotomic_order_slot() = order;
}

// An element of the scalar ring Q(zeta_N)[q^r : r in Q], i.e. a finitely
// supported sum  sum_r c_r * q^r  with rational exponents and cyclotomic
// coefficients, where q = e^(i*theta) is the formal deformation parameter.
// The representation is canonical: zero coefficients are never stored, so
// structural equality is ring equality and theta-independence is a support
// condition.
class Scalar {
public:
    explicit Scalar(int order = default_cyclotomic_order()) : order_(order) {
        if (order < 1) throw std::invalid_argument("Scalar: cyclotomic order must be >= 1");
    }

    static Scalar zero(int order = default_cyclotomic_order()) { return Scalar(order); }

    static Scalar one(int order = default_cyclotomic_order()) {
        return from_rational(Rational(1), order);
    }

    static Scalar from_rational(const Rational& r, int order = default_cyclotomic_order()) {
        Scalar s(order);
        s.add_term(Rational(0), Cyclotomic::from_rational(r, order));
        return s;
    }

    static Scalar from_cyclotomic(const Cyclotomic& c) {
        Scalar s(c.order());
        s.add_term(Rational(0), c);
        return s;
    }

    // q^r
    static Scalar q_power(const Rational& r, int order = default_cyclotomic_order()) {
        Scalar s(order);
        s.add_term(r, Cyclotomic::one(order));
        return s;
    }

    int order() const { return order_; }
    const std::map<Rational, Cyclotomic>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first == 0 &&
               terms_.begin()->second == Cyclotomic::one(order_);
    }

    // True when the value does not depend on theta: support contained in {0}.
    bool theta_independent() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
    }

    // Coefficient of q^r (zero cyclotomic if absent).
    Cyclotomic coefficient(const Rational& r) const {
        auto it = terms_.find(r);
        return it == terms_.end() ? Cyclotomic::zero(order_) : it->second;
    }

    Cyclotomic constant_coefficient() const { return coefficient(Rational(0)); }

    Scalar operator-() const {
        Scalar r(order_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        check_same(a, b, "+");
        Scalar r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }

    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        check_same(a, b, "*");
        Scalar r(a.order_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        }
        return r;
    }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    Scalar scaled(const Rational& r) const {
        if (r == 0) return Scalar(order_);
        Scalar out(order_);
        const Cyclotomic f = Cyclotomic::from_rational(r, order_);
        for (const auto& [e, c] : terms_) out.terms_.emplace(e, c * f);
        return out;
    }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.order_ == b.order_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // Ring involution induced by complex conjugation for real theta:
    // q^r -> q^(-r) and cyclotomic coefficients conjugate.
    Scalar conjugate() const {
        Scalar r(order_);
        for (const auto& [e, c] : terms_) r.add_term(-e, c.conjugate());
        return r;
    }

    // Advisory numeric evaluation at a concrete theta (q = e^(i*theta)).
    std::complex<double> evaluate(double theta) const {
        std::complex<double> acc(0.0, 0.0);
        for (const auto& [e, c] : terms_) {
            acc += c.evaluate() * std::polar(1.0, theta * e.get_d());
        }
        return acc;
    }

    // Deterministic rendering: terms sorted by exponent, basis powers
    // ascending, atoms "c", "c*e^{2*pi*i*k/N}", with "*q^{r}" appended for
    // nonzero exponents.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first_atom = true;
        for (const auto& [e, c] : terms_) {
            const auto& coords = c.coefficients();
            for (std::size_t k = 0; k < coords.size(); ++k) {
                if (coords[k] == 0) continue;
                if (!first_atom) os << " + ";
                first_atom = false;
                if (coords[k] < 0) {
                    os << "(" << coords[k].get_str() << ")";
                } else {
                    os << coords[k].get_str();
                }
                if (k != 0) os << "*e^{2*pi*i*" << k << "/" << order_ << "}";
                if (e != 0) os << "*q^{" << e.get_str() << "}";
            }
        }
        if (first_atom) return "0";
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) {
        return os << s.to_string();
    }

private:
    static void check_same(const Scalar& a, const Scalar& b, const char* op) {
        if (a.order_ != b.order_) {
            throw std::invalid_argument(std::string("Scalar operator") + op +
                                        ": mixed cyclotomic orders " + std::to_string(a.order_) +
                                        " and " + std::to_string(b.order_));
        }
    }

    void add_term(const Rational& e, const Cyclotomic& c) {
        if (c.is_zero()) return;
        // GMP's two-argument mpq constructor does not canonicalize; normalize
        // here so map ordering and mpq arithmetic stay consistent.
        Rational ec = e;
        ec.canonicalize();
        auto [it, inserted] = terms_.emplace(std::move(ec), c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    int order_;
    std::map<Rational, Cyclotomic> terms_;
};

}  // namespace twistalg
