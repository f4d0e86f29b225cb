#include "xpq/cyclo.hpp"

#include <mpfr.h>

#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>

#include "xpq/numeric.hpp"

namespace xpq {

namespace {

// quotient/remainder of dense rational polynomials (low-order first)
void poly_divmod(const std::vector<Rational>& num, const std::vector<Rational>& den,
                 std::vector<Rational>& quot, std::vector<Rational>& rem) {
    rem = num;
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
    std::vector<Rational> d = den;
    while (!d.empty() && d.back() == 0) d.pop_back();
    if (d.empty()) throw DomainError("poly_divmod: division by zero polynomial");
    quot.assign(rem.size() >= d.size() ? rem.size() - d.size() + 1 : 0, Rational(0));
    while (rem.size() >= d.size() && !rem.empty()) {
        const Rational c = rem.back() / d.back();
        const size_t shift = rem.size() - d.size();
        quot[shift] = c;
        for (size_t i = 0; i < d.size(); ++i) rem[shift + i] -= c * d[i];
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
    }
}

std::vector<Rational> poly_rem(const std::vector<Rational>& num,
                               const std::vector<Rational>& den) {
    std::vector<Rational> q, r;
    poly_divmod(num, den, q, r);
    return r;
}

// extended gcd: returns (g, u) with u*a + v*b = g, g the monic gcd; only the
// cofactor of a is tracked since we use it for inverses mod b.
void poly_xgcd(std::vector<Rational> a, std::vector<Rational> b,
               std::vector<Rational>& g, std::vector<Rational>& u) {
    std::vector<Rational> u0{Rational(1)}, u1;
    while (!b.empty()) {
        std::vector<Rational> q, r;
        poly_divmod(a, b, q, r);
        // u_next = u0 - q*u1
        std::vector<Rational> qu(q.size() + (u1.empty() ? 1 : u1.size()), Rational(0));
        if (!u1.empty()) {
            qu.assign(q.size() + u1.size() - 1, Rational(0));
            for (size_t i = 0; i < q.size(); ++i)
                for (size_t j = 0; j < u1.size(); ++j) qu[i + j] += q[i] * u1[j];
        } else {
            qu.clear();
        }
        std::vector<Rational> un(std::max(u0.size(), qu.size()), Rational(0));
        for (size_t i = 0; i < u0.size(); ++i) un[i] += u0[i];
        for (size_t i = 0; i < qu.size(); ++i) un[i] -= qu[i];
        while (!un.empty() && un.back() == 0) un.pop_back();
        u0 = u1;
        u1 = un;
        a = b;
        b = r;
    }
    g = a;
    u = u0;
}

} // namespace

const std::vector<Rational>& Cyclo::cyclotomic_poly(long n) {
    static std::map<long, std::vector<Rational>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    // ensure all proper divisors are present (ascending order guarantees it)
    for (long d : divisors_sorted(n)) {
        if (cache.count(d)) continue;
        std::vector<Rational> num(d + 1, Rational(0));
        num[0] = -1;
        num[d] = 1; // x^d - 1
        for (long e : divisors_sorted(d)) {
            if (e == d) continue;
            std::vector<Rational> q, r;
            poly_divmod(num, cache.at(e), q, r);
            num = q;
        }
        cache[d] = num;
    }
    return cache.at(n);
}

Cyclo::Cyclo(const Rational& r) {
    order_ = 1;
    if (r != 0) terms_[0] = r;
}

Cyclo Cyclo::root_of_unity(long order, long expo) {
    if (order < 1) throw DomainError("root order must be >= 1");
    Cyclo c;
    c.order_ = order;
    c.terms_[mod_floor(expo, order)] = Rational(1);
    c.shrink_order();
    return c;
}

Cyclo Cyclo::i() { return root_of_unity(4, 1); }

Cyclo Cyclo::gaussian(const Rational& re, const Rational& im) {
    Cyclo c(re);
    if (im != 0) {
        Cyclo ii = i();
        ii.terms_[1] = im;
        c += ii;
    }
    return c;
}

void Cyclo::insert_term(long expo, const Rational& coeff) {
    if (coeff == 0) return;
    auto [it, fresh] = terms_.emplace(expo, coeff);
    if (!fresh) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

void Cyclo::shrink_order() {
    if (terms_.empty()) {
        order_ = 1;
        return;
    }
    long g = order_;
    for (const auto& [e, c] : terms_) g = std::gcd(g, e);
    if (g > 1) {
        std::map<long, Rational> reduced;
        for (const auto& [e, c] : terms_) reduced[e / g] = c;
        terms_ = std::move(reduced);
        order_ /= g;
    }
}

Cyclo Cyclo::lifted_to(long new_order) const {
    if (new_order == order_) return *this;
    const long f = new_order / order_;
    Cyclo out;
    out.order_ = new_order;
    for (const auto& [e, c] : terms_) out.terms_[e * f] = c;
    return out;
}

Cyclo Cyclo::operator+(const Cyclo& o) const {
    const long L = lcm_long(order_, o.order_);
    Cyclo a = lifted_to(L), b = o.lifted_to(L);
    for (const auto& [e, c] : b.terms_) a.insert_term(e, c);
    a.shrink_order();
    return a;
}

Cyclo Cyclo::operator-() const {
    Cyclo out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

Cyclo Cyclo::operator-(const Cyclo& o) const { return *this + (-o); }

Cyclo Cyclo::operator*(const Cyclo& o) const {
    const long L = lcm_long(order_, o.order_);
    Cyclo a = lifted_to(L), b = o.lifted_to(L);
    Cyclo out;
    out.order_ = L;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) out.insert_term((ea + eb) % L, ca * cb);
    out.shrink_order();
    return out;
}

Cyclo Cyclo::conj() const {
    Cyclo out;
    out.order_ = order_;
    for (const auto& [e, c] : terms_) out.terms_[e == 0 ? 0 : order_ - e] = c;
    return out;
}

bool Cyclo::is_zero() const {
    if (terms_.empty()) return true;
    if (terms_.size() == 1) return false; // a single nonzero monomial never vanishes
    if (terms_.size() == 2 && order_ % 2 == 0) {
        // q1*x^a + q2*x^(a+L/2) = (q1 - q2)*x^a
        auto it = terms_.begin();
        auto jt = std::next(it);
        if (jt->first - it->first == order_ / 2) return it->second == jt->second;
    }
    const auto can = canonical();
    for (const auto& c : can)
        if (c != 0) return false;
    return true;
}

std::vector<Rational> Cyclo::canonical() const {
    const auto& phi = cyclotomic_poly(order_);
    const size_t deg = phi.size() - 1;
    std::vector<Rational> dense(order_, Rational(0));
    for (const auto& [e, c] : terms_) dense[e] = c;
    auto rem = poly_rem(dense, phi);
    rem.resize(deg, Rational(0));
    return rem;
}

bool Cyclo::is_rational() const {
    auto can = canonical();
    for (size_t i = 1; i < can.size(); ++i)
        if (can[i] != 0) return false;
    return true;
}

Rational Cyclo::rational_value() const {
    auto can = canonical();
    for (size_t i = 1; i < can.size(); ++i)
        if (can[i] != 0) throw DomainError("rational_value: value is irrational");
    return can.empty() ? Rational(0) : can[0];
}

Cyclo Cyclo::inverse() const {
    if (is_zero()) throw DomainError("inverse of zero cyclotomic value");
    auto a = canonical();
    while (!a.empty() && a.back() == 0) a.pop_back();
    std::vector<Rational> g, u;
    poly_xgcd(a, cyclotomic_poly(order_), g, u);
    // Phi is irreducible over Q, so the gcd is a nonzero constant.
    if (g.size() != 1) throw DomainError("inverse: unexpected nontrivial gcd");
    Cyclo out;
    out.order_ = order_;
    for (size_t k = 0; k < u.size(); ++k) out.insert_term(static_cast<long>(k), u[k] / g[0]);
    out.shrink_order();
    return out;
}

std::complex<double> Cyclo::to_complex() const {
    std::complex<double> z(0.0, 0.0);
    for (const auto& [e, c] : terms_) {
        const double theta = 2.0 * M_PI * static_cast<double>(e) / static_cast<double>(order_);
        z += c.get_d() * std::complex<double>(std::cos(theta), std::sin(theta));
    }
    return z;
}

int Cyclo::sign_real() const {
    if (!is_real()) throw DomainError("sign_real on a non-real value");
    if (is_zero()) return 0;
    double max_abs = 0.0;
    for (const auto& [e, c] : terms_) max_abs = std::max(max_abs, std::fabs(c.get_d()));
    const double nterms = static_cast<double>(terms_.size());
    for (mpfr_prec_t prec = 128; prec <= (1 << 20); prec *= 2) {
        mpfr_t acc, theta, tmp, pi;
        mpfr_inits2(prec, acc, theta, tmp, pi, static_cast<mpfr_ptr>(nullptr));
        mpfr_set_zero(acc, 1);
        mpfr_const_pi(pi, MPFR_RNDN);
        for (const auto& [e, c] : terms_) {
            mpfr_mul_si(theta, pi, 2 * e, MPFR_RNDN);
            mpfr_div_si(theta, theta, order_, MPFR_RNDN);
            mpfr_cos(tmp, theta, MPFR_RNDN);
            mpfr_mul_q(tmp, tmp, c.get_mpq_t(), MPFR_RNDN);
            mpfr_add(acc, acc, tmp, MPFR_RNDN);
        }
        const double val = mpfr_get_d(acc, MPFR_RNDN);
        mpfr_clears(acc, theta, tmp, pi, static_cast<mpfr_ptr>(nullptr));
        // crude but safe error bound: a few ulp per term, generous slack
        const double err = (nterms * 64.0 + 64.0) * (max_abs + 1.0) * std::ldexp(1.0, -static_cast<int>(prec));
        if (std::fabs(val) > err) return val > 0 ? 1 : -1;
    }
    throw DomainError("sign_real: could not certify sign at maximum precision");
}

std::string Cyclo::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        os << rational_to_string(c);
        if (e != 0) os << "*w" << order_ << "^" << e;
        first = false;
    }
    return os.str();
}

} // namespace xpq
