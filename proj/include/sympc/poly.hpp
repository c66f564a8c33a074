#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sympc/field.hpp"

namespace sympc {

/// Dense univariate polynomial, coefficients lowest degree first.
/// Canonical form has no trailing zeros; the zero polynomial is empty.
class Poly {
public:
    explicit Poly(FieldPtr F) : F_(std::move(F)) {}
    Poly(FieldPtr F, std::vector<felem> coeffs) : F_(std::move(F)), c_(std::move(coeffs)) {
        normalize();
    }

    static Poly zero(FieldPtr F) { return Poly(std::move(F)); }
    static Poly constant(FieldPtr F, felem a) { return Poly(std::move(F), {a}); }
    static Poly x(FieldPtr F) { return Poly(std::move(F), {0, 1}); }
    static Poly from_ints(const FieldPtr& F, const std::vector<std::int64_t>& raw) {
        std::vector<felem> c;
        c.reserve(raw.size());
        for (auto v : raw) c.push_back(F->from_int(v));
        return Poly(F, std::move(c));
    }

    const FieldPtr& field() const { return F_; }
    int deg() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    felem at(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)] : 0;
    }
    felem lead() const { return c_.empty() ? 0 : c_.back(); }
    const std::vector<felem>& coeffs() const { return c_; }

    bool operator==(const Poly& o) const { return c_ == o.c_ && F_->same(*o.F_); }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    std::string text() const {
        if (c_.empty()) return "0";
        std::string out;
        const char sep = F_->is_prime_field() ? ',' : ';';
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) out += sep;
            out += F_->to_string(c_[i]);
        }
        return out;
    }

private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    FieldPtr F_;
    std::vector<felem> c_;
};

inline Poly parse_poly(const FieldPtr& F, const std::string& text) {
    std::vector<felem> c;
    const char sep = F->is_prime_field() ? ',' : ';';
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t next = text.find(sep, pos);
        std::string tok = text.substr(pos, next == std::string::npos ? next : next - pos);
        if (F->is_prime_field()) {
            require(!tok.empty(), "BadParameters", "empty coefficient in polynomial text");
            c.push_back(F->from_int(std::stoll(tok)));
        } else {
            std::vector<std::int64_t> digits;
            std::size_t q = 0;
            while (q <= tok.size()) {
                std::size_t r = tok.find(',', q);
                std::string d = tok.substr(q, r == std::string::npos ? r : r - q);
                require(!d.empty(), "BadParameters", "empty coefficient in polynomial text");
                digits.push_back(std::stoll(d));
                if (r == std::string::npos) break;
                q = r + 1;
            }
            c.push_back(F->from_coeffs(digits));
        }
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return Poly(F, std::move(c));
}

/// Order on coefficient sequences: by degree, then lexicographic from the
/// constant term up. Used for canonical pair representatives and sorting.
inline int coeff_compare(const Poly& a, const Poly& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg() ? -1 : 1;
    for (int i = 0; i <= a.deg(); ++i) {
        if (a.at(i) != b.at(i)) return a.at(i) < b.at(i) ? -1 : 1;
    }
    return 0;
}

inline Poly add(const Poly& a, const Poly& b) {
    require_same_field(*a.field(), *b.field());
    const auto& F = a.field();
    std::vector<felem> c(static_cast<std::size_t>(std::max(a.deg(), b.deg()) + 1), 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = F->add(a.at(static_cast<int>(i)), b.at(static_cast<int>(i)));
    return Poly(F, std::move(c));
}

inline Poly neg(const Poly& a) {
    const auto& F = a.field();
    std::vector<felem> c(a.coeffs());
    for (auto& v : c) v = F->neg(v);
    return Poly(F, std::move(c));
}

inline Poly sub(const Poly& a, const Poly& b) { return add(a, neg(b)); }

inline Poly mul(const Poly& a, const Poly& b) {
    require_same_field(*a.field(), *b.field());
    const auto& F = a.field();
    if (a.is_zero() || b.is_zero()) return Poly::zero(F);
    std::vector<felem> c(static_cast<std::size_t>(a.deg() + b.deg() + 1), 0);
    for (int i = 0; i <= a.deg(); ++i) {
        if (a.at(i) == 0) continue;
        for (int j = 0; j <= b.deg(); ++j)
            c[static_cast<std::size_t>(i + j)] =
                F->add(c[static_cast<std::size_t>(i + j)], F->mul(a.at(i), b.at(j)));
    }
    return Poly(F, std::move(c));
}

inline Poly scale(const Poly& a, felem s) {
    const auto& F = a.field();
    std::vector<felem> c(a.coeffs());
    for (auto& v : c) v = F->mul(v, s);
    return Poly(F, std::move(c));
}

inline Poly monic(const Poly& a) {
    require(!a.is_zero(), "DivisionByZero", "monic normalization of zero");
    return scale(a, a.field()->inv(a.lead()));
}

inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    require_same_field(*a.field(), *b.field());
    require(!b.is_zero(), "DivisionByZero", "polynomial division by zero");
    const auto& F = a.field();
    std::vector<felem> rem(a.coeffs());
    int db = b.deg();
    if (a.deg() < db) return {Poly::zero(F), a};
    std::vector<felem> quo(static_cast<std::size_t>(a.deg() - db + 1), 0);
    felem binv = F->inv(b.lead());
    for (int i = a.deg(); i >= db; --i) {
        felem c = rem[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        c = F->mul(c, binv);
        quo[static_cast<std::size_t>(i - db)] = c;
        for (int j = 0; j <= db; ++j) {
            auto& t = rem[static_cast<std::size_t>(i - db + j)];
            t = F->sub(t, F->mul(c, b.at(j)));
        }
    }
    return {Poly(F, std::move(quo)), Poly(F, std::move(rem))};
}

inline Poly pmod(const Poly& a, const Poly& b) { return divmod(a, b).second; }
inline Poly pdiv(const Poly& a, const Poly& b) { return divmod(a, b).first; }

inline Poly gcd(Poly a, Poly b) {
    require(!(a.is_zero() && b.is_zero()), "DivisionByZero", "gcd(0, 0) is undefined");
    while (!b.is_zero()) {
        Poly r = pmod(a, b);
        a = b;
        b = r;
    }
    return monic(a);
}

inline Poly lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly::zero(a.field());
    return monic(pdiv(mul(a, b), gcd(a, b)));
}

inline Poly derivative(const Poly& a) {
    const auto& F = a.field();
    if (a.deg() < 1) return Poly::zero(F);
    std::vector<felem> c(static_cast<std::size_t>(a.deg()), 0);
    for (int i = 1; i <= a.deg(); ++i)
        c[static_cast<std::size_t>(i - 1)] = F->mul(a.at(i), F->from_int(i));
    return Poly(F, std::move(c));
}

inline felem eval(const Poly& f, felem a) {
    const auto& F = f.field();
    felem r = 0;
    for (int i = f.deg(); i >= 0; --i) r = F->add(F->mul(r, a), f.at(i));
    return r;
}

inline Poly poly_pow(const Poly& base, int e) {
    require(e >= 0, "BadParameters", "negative polynomial power");
    Poly r = Poly::constant(base.field(), 1);
    Poly b = base;
    while (e > 0) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

inline Poly pow_mod(const Poly& base, std::int64_t e, const Poly& m) {
    require(e >= 0, "BadParameters", "negative exponent");
    Poly r = pmod(Poly::constant(base.field(), 1), m);
    Poly b = pmod(base, m);
    while (e > 0) {
        if (e & 1) r = pmod(mul(r, b), m);
        b = pmod(mul(b, b), m);
        e >>= 1;
    }
    return r;
}

struct Reciprocal {
    Poly monic;  // monic scalar multiple of X^{deg f} f(1/X)
    felem unit;  // scalar with raw reciprocal = unit * monic
};

/// The reciprocal transform f(X) -> X^{deg f} f(1/X), normalized monic.
inline Reciprocal reciprocal(const Poly& f) {
    require(!f.is_zero() && f.at(0) != 0, "ZeroOrXDivides",
            "reciprocal needs f nonzero with nonzero constant term");
    std::vector<felem> rev(f.coeffs());
    std::reverse(rev.begin(), rev.end());
    Poly raw(f.field(), std::move(rev));
    felem unit = raw.lead();
    return {monic(raw), unit};
}

inline bool is_self_reciprocal(const Poly& f) { return reciprocal(f).monic == f; }

namespace detail {

inline Poly pth_root(const Poly& f) {
    const auto& F = f.field();
    const std::int64_t p = F->characteristic();
    std::int64_t e = 1; // p^{h-1}, the exponent extracting p-th roots of coefficients
    for (int i = 1; i < F->degree(); ++i) e *= p;
    std::vector<felem> c;
    for (int i = 0; i <= f.deg(); ++i) {
        if (i % p != 0) {
            require(f.at(i) == 0, "Internal", "pth_root on a polynomial with nonzero derivative");
            continue;
        }
        c.push_back(F->pow(f.at(i), e));
    }
    return Poly(F, std::move(c));
}

// r^{(q^d - 1)/2} mod g without forming q^d: the exponent factors as
// (1 + q + ... + q^{d-1}) * (q-1)/2.
inline Poly half_order_power(const Poly& r, int d, const Poly& g) {
    const std::int64_t q = g.field()->size();
    Poly acc = pmod(r, g);
    Poly t = acc;
    for (int i = 1; i < d; ++i) {
        t = pow_mod(t, q, g);
        acc = pmod(mul(acc, t), g);
    }
    return pow_mod(acc, (q - 1) / 2, g);
}

inline void equal_degree_split(const Poly& g, int d, std::mt19937_64& rng,
                               std::vector<Poly>& out) {
    if (g.deg() == d) {
        out.push_back(g);
        return;
    }
    const auto& F = g.field();
    const Poly one = Poly::constant(F, 1);
    for (;;) {
        std::vector<felem> rc(static_cast<std::size_t>(g.deg()), 0);
        for (auto& v : rc) v = F->sample(rng);
        Poly r(F, std::move(rc));
        if (r.is_zero()) continue;
        Poly s = half_order_power(r, d, g);
        Poly h = gcd(add(s, Poly::constant(F, F->neg_one())), g);
        if (h.deg() > 0 && h.deg() < g.deg()) {
            equal_degree_split(h, d, rng, out);
            equal_degree_split(pdiv(g, h), d, rng, out);
            return;
        }
    }
}

// distinct-degree then equal-degree splitting of a squarefree monic input
inline std::vector<Poly> factor_squarefree(Poly v, std::mt19937_64& rng) {
    const auto& F = v.field();
    const std::int64_t q = F->size();
    std::vector<Poly> out;
    Poly w = pmod(Poly::x(F), v);
    int d = 0;
    while (v.deg() > 0 && 2 * (d + 1) <= v.deg()) {
        ++d;
        w = pow_mod(w, q, v); // X^{q^d} mod v
        Poly g = gcd(sub(w, Poly::x(F)), v);
        if (g.deg() > 0) {
            equal_degree_split(g, d, rng, out);
            v = pdiv(v, g);
            w = pmod(w, v);
        }
    }
    if (v.deg() > 0) out.push_back(v);
    return out;
}

inline void distinct_irreducible_divisors(const Poly& f, std::mt19937_64& rng,
                                          std::vector<Poly>& out) {
    if (f.deg() < 1) return;
    Poly fp = derivative(f);
    if (fp.is_zero()) {
        distinct_irreducible_divisors(pth_root(f), rng, out);
        return;
    }
    Poly g = gcd(f, fp);
    for (const Poly& p : factor_squarefree(pdiv(f, g), rng))
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    if (g.deg() >= 1)
        distinct_irreducible_divisors(monic(g), rng, out);
}

} // namespace detail

/// Irreducible factorization, Cantor-Zassenhaus style with a fixed local
/// seed. Post: unit * product of returned powers reproduces f exactly.
inline std::vector<std::pair<Poly, int>> factor(const Poly& f) {
    require(!f.is_zero(), "ZeroInput", "factor(0)");
    const auto& F = f.field();
    std::mt19937_64 rng(0x5ee0f2a843c1d9b7ULL);
    std::vector<Poly> distinct;
    detail::distinct_irreducible_divisors(monic(f), rng, distinct);
    std::sort(distinct.begin(), distinct.end(),
              [](const Poly& a, const Poly& b) { return coeff_compare(a, b) < 0; });
    std::vector<std::pair<Poly, int>> out;
    Poly rest = monic(f);
    for (const Poly& p : distinct) {
        int mult = 0;
        for (;;) {
            auto [q, r] = divmod(rest, p);
            if (!r.is_zero()) break;
            rest = q;
            ++mult;
        }
        require(mult > 0, "Internal", "factor lost a divisor");
        out.emplace_back(p, mult);
    }
    require(rest.deg() == 0, "Internal", "factorization incomplete");
    Poly check = Poly::constant(F, f.lead());
    for (const auto& [p, m] : out) check = mul(check, poly_pow(p, m));
    require(check == f, "Internal", "factorization does not multiply back");
    return out;
}

inline bool is_irreducible(const Poly& f) {
    if (f.deg() < 1) return false;
    if (f.deg() == 1) return true;
    const auto& F = f.field();
    const std::int64_t q = F->size();
    const int d = f.deg();
    const Poly x = Poly::x(F);
    // X^{q^i} mod f for i = 1..d; irreducible iff the d-th returns X and no
    // proper prime-index step fixes a nontrivial gcd.
    std::vector<Poly> frob(static_cast<std::size_t>(d + 1), Poly::zero(F));
    frob[1] = pow_mod(x, q, f);
    for (int i = 2; i <= d; ++i) frob[static_cast<std::size_t>(i)] =
        pow_mod(frob[static_cast<std::size_t>(i - 1)], q, f);
    if (!(frob[static_cast<std::size_t>(d)] == pmod(x, f))) return false;
    for (int r = 2; r <= d; ++r) {
        if (d % r != 0) continue;
        bool prime = true;
        for (int t = 2; t * t <= r; ++t)
            if (r % t == 0) { prime = false; break; }
        if (!prime) continue;
        Poly g = gcd(sub(frob[static_cast<std::size_t>(d / r)], x), f);
        if (g.deg() != 0) return false;
    }
    return true;
}

enum class FactorKind { SplitPair, SelfBar, LinMinus, LinPlus };

/// Three-way split of a monic irreducible p != X by its reciprocal:
/// a split pair p != monic-reciprocal(p), a self-reciprocal factor of even
/// degree >= 2, or one of the fixed linear factors X -+ 1.
inline FactorKind classify_irreducible(const Poly& p) {
    const auto& F = p.field();
    require(!(p.deg() == 1 && p.at(0) == 0), "IsX", "X is excluded from classification");
    require(is_irreducible(p) && p.lead() == F->one(), "NotIrreducible",
            "classify_irreducible needs a monic irreducible input");
    if (p.deg() == 1) {
        if (p.at(0) == F->neg_one()) return FactorKind::LinMinus; // X - 1
        if (p.at(0) == F->one()) return FactorKind::LinPlus;      // X + 1
        return FactorKind::SplitPair;
    }
    if (is_self_reciprocal(p)) {
        require(p.deg() % 2 == 0, "Internal", "self-reciprocal irreducible of odd degree");
        return FactorKind::SelfBar;
    }
    return FactorKind::SplitPair;
}

/// Canonical representative of the pair {p, monic-reciprocal(p)}:
/// the lexicographically smaller coefficient sequence.
inline Poly split_pair_representative(const Poly& p) {
    Poly partner = reciprocal(p).monic;
    return coeff_compare(p, partner) <= 0 ? p : partner;
}

/// Checked extension-field factory: verifies irreducibility of the modulus
/// on top of the structural checks done by Field::extension.
inline FieldPtr ext_field(std::int64_t p, const std::vector<std::int64_t>& modulus_coeffs) {
    FieldPtr Fp = Field::prime(p);
    Poly q = Poly::from_ints(Fp, modulus_coeffs);
    require(is_irreducible(q), "NotIrreducible", "extension modulus must be irreducible");
    return Field::extension(p, modulus_coeffs);
}

} // namespace sympc
