#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <vector>

#include "twistalg/rational.hpp"

namespace twistalg {

namespace detail {

// Little-endian rational polynomials, used only to derive cyclotomic
// polynomials at context construction time.
using Poly = std::vector<Rational>;

inline void poly_trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    poly_trim(r);
    return r;
}

// Exact polynomial division; throws if the division leaves a remainder.
inline Poly poly_divexact(Poly num, Poly den) {
    poly_trim(num);
    poly_trim(den);
    if (den.empty()) throw std::invalid_argument("poly_divexact: zero divisor");
    if (num.empty()) return {};
    if (num.size() < den.size()) throw std::invalid_argument("poly_divexact: inexact division");
    Poly quot(num.size() - den.size() + 1, Rational(0));
    for (std::size_t k = quot.size(); k-- > 0;) {
        Rational c = num[k + den.size() - 1] / den.back();
        quot[k] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < den.size(); ++j) num[k + j] -= c * den[j];
    }
    poly_trim(num);
    if (!num.empty()) throw std::invalid_argument("poly_divexact: inexact division");
    return quot;
}

// Phi_n via Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d.
inline Poly cyclotomic_polynomial(int n) {
    if (n < 1) throw std::invalid_argument("cyclotomic_polynomial: order must be >= 1");
    Poly num(static_cast<std::size_t>(n) + 1, Rational(0));
    num.front() = -1;
    num.back() = 1;
    Poly den{Rational(1)};
    for (int d = 1; d < n; ++d) {
        if (n % d == 0) den = poly_mul(den, cyclotomic_polynomial(d));
    }
    return poly_divexact(num, den);
}

}  // namespace detail

// Cached arithmetic tables for Q(zeta_N): the minimal polynomial Phi_N and
// the reduced representations of zeta_N^k in the power basis
// {1, zeta, ..., zeta^(phi(N)-1)}.
class CyclotomicContext {
public:
    static const CyclotomicContext& get(int order) {
        static std::mutex mutex;
        static std::map<int, std::unique_ptr<CyclotomicContext>> cache;
        std::lock_guard<std::mutex> lock(mutex);
        auto& slot = cache[order];
        if (!slot) slot.reset(new CyclotomicContext(order));
        return *slot;
    }

    int order() const { return order_; }
    int degree() const { return degree_; }  // phi(order)

    // Reduced coordinates of zeta_order^k.  Accepts any integer exponent;
    // exponents outside the precomputed table are reduced modulo the order.
    const std::vector<Rational>& power(long long k) const {
        if (k < 0 || k >= static_cast<long long>(powers_.size())) {
            k = ((k % order_) + order_) % order_;
        }
        return powers_[static_cast<std::size_t>(k)];
    }

    CyclotomicContext(const CyclotomicContext&) = delete;
    CyclotomicContext& operator=(const CyclotomicContext&) = delete;

private:
    explicit CyclotomicContext(int order) : order_(order) {
        if (order < 1) throw std::invalid_argument("CyclotomicContext: order must be >= 1");
        phi_ = detail::cyclotomic_polynomial(order);
        degree_ = static_cast<int>(phi_.size()) - 1;
        const int max_power = std::max(order_ - 1, 2 * degree_ - 2);
        std::vector<Rational> cur(static_cast<std::size_t>(degree_), Rational(0));
        cur[0] = 1;
        powers_.push_back(cur);
        for (int k = 1; k <= max_power; ++k) {
            std::vector<Rational> nxt(static_cast<std::size_t>(degree_), Rational(0));
            for (int i = 0; i + 1 < degree_; ++i) nxt[static_cast<std::size_t>(i) + 1] = cur[static_cast<std::size_t>(i)];
            const Rational lead = cur[static_cast<std::size_t>(degree_) - 1];
            if (lead != 0) {
                for (int i = 0; i < degree_; ++i) nxt[static_cast<std::size_t>(i)] -= lead * phi_[static_cast<std::size_t>(i)];
            }
            powers_.push_back(nxt);
            cur = std::move(nxt);
        }
    }

    int order_;
    int degree_;
    detail::Poly phi_;
    std::vector<std::vector<Rational>> powers_;
};

// An element of Q(zeta_N), stored as exact coordinates in the power basis.
// Binary operations require matching orders and fail loudly otherwise; use
// embedded() to move into a larger field explicitly.
class Cyclotomic {
public:
    Cyclotomic() : order_(1), c_(1, Rational(0)) {}

    static Cyclotomic zero(int order) {
        Cyclotomic z;
        z.order_ = order;
        z.c_.assign(static_cast<std::size_t>(CyclotomicContext::get(order).degree()), Rational(0));
        return z;
    }

    static Cyclotomic from_rational(const Rational& r, int order) {
        Cyclotomic z = zero(order);
        z.c_[0] = r;
        z.c_[0].canonicalize();
        return z;
    }

    static Cyclotomic one(int order) { return from_rational(Rational(1), order); }

    // zeta_order^k for any integer k.
    static Cyclotomic root_of_unity(int order, long long k) {
        Cyclotomic z = zero(order);
        z.c_ = CyclotomicContext::get(order).power(k);
        return z;
    }

    int order() const { return order_; }
    const std::vector<Rational>& coefficients() const { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return x == 0; });
    }

    // The power-basis coordinates are canonical, so membership in Q is a
    // coordinate condition.
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i) {
            if (c_[i] != 0) return false;
        }
        return true;
    }

    Rational rational_value() const {
        if (!is_rational()) {
            throw std::domain_error("Cyclotomic::rational_value: element is not rational");
        }
        return c_[0];
    }

    Cyclotomic operator-() const {
        Cyclotomic r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        check_same(a, b, "+");
        Cyclotomic r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
        return r;
    }

    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
        check_same(a, b, "-");
        Cyclotomic r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
        return r;
    }

    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        check_same(a, b, "*");
        const auto& ctx = CyclotomicContext::get(a.order_);
        const std::size_t d = a.c_.size();
        std::vector<Rational> prod(2 * d - 1, Rational(0));
        for (std::size_t i = 0; i < d; ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < d; ++j) {
                if (b.c_[j] == 0) continue;
                prod[i + j] += a.c_[i] * b.c_[j];
            }
        }
        Cyclotomic r = zero(a.order_);
        for (std::size_t k = 0; k < prod.size(); ++k) {
            if (prod[k] == 0) continue;
            if (k < d) {
                r.c_[k] += prod[k];
            } else {
                const auto& pw = ctx.power(static_cast<long long>(k));
                for (std::size_t i = 0; i < d; ++i) r.c_[i] += prod[k] * pw[i];
            }
        }
        return r;
    }

    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        return a.order_ == b.order_ && a.c_ == b.c_;
    }
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    // Complex conjugation: zeta^i -> zeta^(order - i).
    Cyclotomic conjugate() const {
        const auto& ctx = CyclotomicContext::get(order_);
        Cyclotomic r = zero(order_);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            const auto& pw = ctx.power((order_ - static_cast<long long>(i)) % order_);
            for (std::size_t j = 0; j < c_.size(); ++j) r.c_[j] += c_[i] * pw[j];
        }
        return r;
    }

    // Image under Q(zeta_order) -> Q(zeta_new_order), zeta -> zeta^(new/old).
    Cyclotomic embedded(int new_order) const {
        if (new_order % order_ != 0) {
            throw std::invalid_argument("Cyclotomic::embedded: " + std::to_string(order_) +
                                        " does not divide " + std::to_string(new_order));
        }
        const long long step = new_order / order_;
        Cyclotomic r = zero(new_order);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            Cyclotomic term = root_of_unity(new_order, static_cast<long long>(i) * step);
            for (auto& x : term.c_) x *= c_[i];
            r += term;
        }
        return r;
    }

    // Advisory numeric value; not used by any exact check.
    std::complex<double> evaluate() const {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            const double arg = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(order_);
            acc += c_[i].get_d() * std::polar(1.0, arg);
        }
        return acc;
    }

    std::string to_string() const {
        std::ostringstream os;
        os << "[";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) os << ", ";
            os << c_[i].get_str();
        }
        os << "] (order " << order_ << ")";
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Cyclotomic& c) {
        return os << c.to_string();
    }

private:
    static void check_same(const Cyclotomic& a, const Cyclotomic& b, const char* op) {
        if (a.order_ != b.order_) {
            throw std::invalid_argument(std::string("Cyclotomic operator") + op +
                                        ": mixed orders " + std::to_string(a.order_) + " and " +
                                        std::to_string(b.order_) + "; embed explicitly first");
        }
    }

    int order_;
    std::vector<Rational> c_;
};

inline Cyclotomic root_of_unity(int order, long long k) {
    return Cyclotomic::root_of_unity(order, k);
}

// zeta_p^k embedded in Q(zeta_session_order).  Fails loudly when p does not
// divide the session order; enlarging the order is the documented remedy.
inline Cyclotomic embedded_root(int session_order, int p, long long k) {
    if (p < 1) throw std::invalid_argument("embedded_root: root order must be >= 1");
    if (session_order % p != 0) {
        throw std::domain_error("embedded_root: zeta_" + std::to_string(p) +
                                " does not live in Q(zeta_" + std::to_string(session_order) +
                                "); increase the cyclotomic order");
    }
    return root_of_unity(session_order, k * (session_order / p));
}

}  // namespace twistalg
