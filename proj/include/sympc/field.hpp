#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sympc/errors.hpp"

namespace sympc {

/// Canonical packed representation of a finite-field element.
/// Prime field: the least nonnegative residue. Extension of degree h:
/// the coefficient vector (c_0, ..., c_{h-1}) in the basis 1, xi, ..., xi^{h-1},
/// packed as Sum c_nu * p^nu. Equality of packed values is element equality.
using felem = std::int64_t;

enum class SquareClass { Square, NonSquare };

inline std::int64_t mulmod_i64(std::int64_t a, std::int64_t b, std::int64_t p) {
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % p);
}

inline std::int64_t powmod_i64(std::int64_t a, std::int64_t e, std::int64_t p) {
    std::int64_t r = 1 % p;
    while (e > 0) {
        if (e & 1) r = mulmod_i64(r, a, p);
        a = mulmod_i64(a, a, p);
        e >>= 1;
    }
    return r;
}

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    auto mul = [&](std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
    };
    auto pw = [&](std::uint64_t a, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e) { if (e & 1) r = mul(r, a); a = mul(a, a); e >>= 1; }
        return r;
    };
    // Deterministic witness set for 64-bit integers.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = pw(a % n, d);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mul(x, x);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// F_p or F_{p^h} = F_p[xi]/(q(xi)) for an odd prime p. An extension modulus
/// must be monic, irreducible and self-reciprocal (q equals its monic
/// reciprocal), which forces even degree; construct through ext_field() in
/// poly.hpp to get the irreducibility check.
class Field : public std::enable_shared_from_this<Field> {
public:
    static FieldPtr prime(std::int64_t p) {
        return FieldPtr(new Field(p, {}));
    }

    /// modulus_coeffs: q_0, ..., q_h low to high with q_h = 1 and h >= 2.
    /// Irreducibility is a precondition, not rechecked here.
    static FieldPtr extension(std::int64_t p, const std::vector<std::int64_t>& modulus_coeffs) {
        require(modulus_coeffs.size() >= 3, "BadParameters", "extension degree must be at least 2");
        return FieldPtr(new Field(p, modulus_coeffs));
    }

    std::int64_t characteristic() const { return p_; }
    int degree() const { return h_; }
    std::int64_t size() const { return size_; }
    bool is_prime_field() const { return h_ == 1; }
    const std::vector<std::int64_t>& modulus() const { return mod_; }
    /// Modulus in polynomial text form, low to high ("1,0,1" = X^2+1).
    std::string modulus_text() const {
        std::string out;
        for (std::size_t i = 0; i < mod_.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(mod_[i]);
        }
        return out;
    }

    bool same(const Field& o) const { return p_ == o.p_ && mod_ == o.mod_; }

    felem zero() const { return 0; }
    felem one() const { return 1; }
    felem neg_one() const { return p_ - 1; } // constant -1 packs to digit p-1

    felem from_int(std::int64_t v) const {
        std::int64_t r = v % p_;
        if (r < 0) r += p_;
        return r;
    }

    felem add(felem a, felem b) const {
        if (h_ == 1) {
            std::int64_t r = a + b;
            if (r >= p_) r -= p_;
            return r;
        }
        Digits x, y;
        unpack(a, x);
        unpack(b, y);
        for (int i = 0; i < h_; ++i) {
            x[i] += y[i];
            if (x[i] >= p_) x[i] -= p_;
        }
        return pack(x);
    }

    felem neg(felem a) const {
        if (h_ == 1) return a == 0 ? 0 : p_ - a;
        Digits x;
        unpack(a, x);
        for (int i = 0; i < h_; ++i)
            if (x[i] != 0) x[i] = p_ - x[i];
        return pack(x);
    }

    felem sub(felem a, felem b) const { return add(a, neg(b)); }

    felem mul(felem a, felem b) const {
        if (h_ == 1) return mulmod_i64(a, b, p_);
        Digits x, y;
        unpack(a, x);
        unpack(b, y);
        std::array<std::int64_t, 128> t{};
        for (int i = 0; i < h_; ++i) {
            if (x[i] == 0) continue;
            for (int j = 0; j < h_; ++j)
                t[i + j] = (t[i + j] + mulmod_i64(x[i], y[j], p_)) % p_;
        }
        reduce_by_modulus(t, 2 * h_ - 2);
        Digits r;
        for (int i = 0; i < h_; ++i) r[i] = t[i];
        return pack(r);
    }

    felem inv(felem a) const {
        require(a != 0, "DivisionByZero", "inverse of zero");
        if (h_ == 1) return powmod_i64(a, p_ - 2, p_);
        // extended Euclid on coefficient vectors mod the modulus
        std::vector<std::int64_t> r0 = mod_, r1 = coeffs(a);
        std::vector<std::int64_t> s0 = {0}, s1 = {1};
        while (!is_zero_vec(r1)) {
            auto [qv, rv] = divmod_vec(r0, r1);
            r0 = r1;
            r1 = rv;
            auto t = sub_vec(s0, mul_vec(qv, s1));
            s0 = s1;
            s1 = t;
        }
        require(deg_vec(r0) == 0, "DivisionByZero", "element not invertible (reducible modulus?)");
        std::int64_t lead = powmod_i64(r0[0], p_ - 2, p_);
        std::vector<std::int64_t> res = s0;
        for (auto& c : res) c = mulmod_i64(c, lead, p_);
        res.resize(h_, 0);
        return from_coeffs(res);
    }

    felem div(felem a, felem b) const { return mul(a, inv(b)); }

    felem pow(felem a, std::int64_t e) const {
        require(e >= 0, "BadParameters", "negative exponent");
        felem r = one(), base = a;
        while (e > 0) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    /// The order-2 automorphism xi -> xi^{-1} when h >= 2; identity on a
    /// prime field. Fixes exactly the subfield of size p^{h/2}.
    felem involution(felem a) const {
        if (h_ == 1) return a;
        Digits x;
        unpack(a, x);
        felem r = 0;
        for (int i = h_ - 1; i >= 0; --i)
            r = add(mul(r, xi_inv_), x[i]);
        return r;
    }

    /// Euler criterion: a^((|F|-1)/2) is 1 for squares, -1 otherwise.
    SquareClass square_class(felem a) const {
        require(a != 0, "ZeroInput", "square class of zero is undefined");
        felem e = pow(a, (size_ - 1) / 2);
        if (e == one()) return SquareClass::Square;
        require(e == neg_one(), "Internal", "Euler criterion returned a non-sign value");
        return SquareClass::NonSquare;
    }

    std::vector<std::int64_t> coeffs(felem a) const {
        std::vector<std::int64_t> out(h_);
        for (int i = 0; i < h_; ++i) {
            out[i] = a % p_;
            a /= p_;
        }
        return out;
    }

    felem from_coeffs(const std::vector<std::int64_t>& c) const {
        require(static_cast<int>(c.size()) <= h_, "BadParameters", "coefficient vector longer than degree");
        felem r = 0;
        for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
            std::int64_t d = c[i] % p_;
            if (d < 0) d += p_;
            r = r * p_ + d;
        }
        return r;
    }

    felem sample(std::mt19937_64& rng) const {
        return static_cast<felem>(rng() % static_cast<std::uint64_t>(size_));
    }

    std::string to_string(felem a) const {
        if (h_ == 1) return std::to_string(a);
        std::ostringstream os;
        auto c = coeffs(a);
        for (int i = 0; i < h_; ++i) {
            if (i) os << ',';
            os << c[i];
        }
        return os.str();
    }

private:
    using Digits = std::array<std::int64_t, 64>;

    Field(std::int64_t p, std::vector<std::int64_t> mod) : p_(p), mod_(std::move(mod)) {
        require(p_ >= 3 && p_ % 2 == 1, "BadParameters", "characteristic must be an odd prime");
        require(is_prime_u64(static_cast<std::uint64_t>(p_)), "BadParameters",
                "characteristic must be an odd prime");
        if (mod_.empty()) {
            h_ = 1;
            size_ = p_;
            xi_inv_ = 0;
            return;
        }
        h_ = static_cast<int>(mod_.size()) - 1;
        for (auto& c : mod_) {
            c %= p_;
            if (c < 0) c += p_;
        }
        require(mod_.back() == 1, "BadParameters", "extension modulus must be monic");
        require(mod_[0] != 0, "BadParameters", "extension modulus must not be divisible by X");
        // self-reciprocal check on coefficients: q_{h-nu} = q_nu * q_0 with q_0^2 = 1
        require(mulmod_i64(mod_[0], mod_[0], p_) == 1, "NotSelfBar",
                "modulus constant term must be a sign");
        for (int nu = 0; nu <= h_; ++nu)
            require(mod_[static_cast<std::size_t>(h_ - nu)] ==
                        mulmod_i64(mod_[static_cast<std::size_t>(nu)], mod_[0], p_),
                    "NotSelfBar", "extension modulus must equal its monic reciprocal");
        require(h_ % 2 == 0, "NotSelfBar", "self-reciprocal irreducible modulus has even degree");
        require(h_ < 63, "BadParameters", "extension degree too large");
        size_ = 1;
        for (int i = 0; i < h_; ++i) {
            require(size_ <= (std::int64_t{1} << 62) / p_, "BadParameters",
                    "field size exceeds the 63-bit packing range");
            size_ *= p_;
        }
        xi_inv_ = compute_xi_inverse();
    }

    void unpack(felem a, Digits& out) const {
        for (int i = 0; i < h_; ++i) {
            out[i] = a % p_;
            a /= p_;
        }
    }

    felem pack(const Digits& d) const {
        felem r = 0;
        for (int i = h_ - 1; i >= 0; --i) r = r * p_ + d[i];
        return r;
    }

    void reduce_by_modulus(std::array<std::int64_t, 128>& t, int top) const {
        for (int i = top; i >= h_; --i) {
            std::int64_t c = t[i];
            if (c == 0) continue;
            t[i] = 0;
            for (int j = 0; j < h_; ++j) {
                t[i - h_ + j] -= mulmod_i64(c, mod_[static_cast<std::size_t>(j)], p_);
                t[i - h_ + j] %= p_;
                if (t[i - h_ + j] < 0) t[i - h_ + j] += p_;
            }
        }
    }

    // vector polynomial helpers over F_p, used only by inv()
    static int deg_vec(const std::vector<std::int64_t>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
            if (v[static_cast<std::size_t>(i)] != 0) return i;
        return -1;
    }
    static bool is_zero_vec(const std::vector<std::int64_t>& v) { return deg_vec(v) < 0; }
    std::vector<std::int64_t> sub_vec(std::vector<std::int64_t> a,
                                      const std::vector<std::int64_t>& b) const {
        if (a.size() < b.size()) a.resize(b.size(), 0);
        for (std::size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] - b[i]) % p_ + p_) % p_;
        return a;
    }
    std::vector<std::int64_t> mul_vec(const std::vector<std::int64_t>& a,
                                      const std::vector<std::int64_t>& b) const {
        if (is_zero_vec(a) || is_zero_vec(b)) return {0};
        std::vector<std::int64_t> r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                r[i + j] = (r[i + j] + mulmod_i64(a[i], b[j], p_)) % p_;
        return r;
    }
    std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>
    divmod_vec(std::vector<std::int64_t> a, const std::vector<std::int64_t>& b) const {
        int db = deg_vec(b);
        std::int64_t binv = powmod_i64(b[static_cast<std::size_t>(db)], p_ - 2, p_);
        std::vector<std::int64_t> q(a.size(), 0);
        for (int i = deg_vec(a); i >= db; i = deg_vec(a)) {
            std::int64_t c = mulmod_i64(a[static_cast<std::size_t>(i)], binv, p_);
            q[static_cast<std::size_t>(i - db)] = c;
            for (int j = 0; j <= db; ++j) {
                auto& t = a[static_cast<std::size_t>(i - db + j)];
                t = ((t - mulmod_i64(c, b[static_cast<std::size_t>(j)], p_)) % p_ + p_) % p_;
            }
        }
        if (q.empty()) q = {0};
        if (a.empty()) a = {0};
        return {q, a};
    }

    felem compute_xi_inverse() const {
        // xi * (-q_0^{-1} * (q_1 + q_2 xi + ... + xi^{h-1})) = 1 mod q
        std::vector<std::int64_t> c(h_);
        std::int64_t s = powmod_i64(mod_[0], p_ - 2, p_);
        s = p_ - s; // -q_0^{-1}
        if (s == p_) s = 0;
        for (int i = 0; i < h_; ++i)
            c[static_cast<std::size_t>(i)] = mulmod_i64(mod_[static_cast<std::size_t>(i + 1)], s, p_);
        return from_coeffs(c);
    }

    std::int64_t p_;
    std::vector<std::int64_t> mod_;
    int h_ = 1;
    std::int64_t size_ = 0;
    felem xi_inv_ = 0;
};

inline void require_same_field(const Field& a, const Field& b) {
    require(a.same(b), "FieldMismatch", "operands live in different fields");
}

} // namespace sympc
