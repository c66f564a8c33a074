#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sympc/classify.hpp"

namespace sympc {

using bigint = boost::multiprecision::cpp_int;

enum class ClassicalKind { GL, SP, U, O_odd, O_even_plus, O_even_minus };

namespace detail {

inline bigint ipow(const bigint& base, long long e) {
    bigint r = 1, b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline bool is_prime_power(std::int64_t v) {
    if (v < 2) return false;
    std::int64_t p = 0;
    for (std::int64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) {
            p = d;
            break;
        }
    if (p == 0) return true; // v itself prime
    while (v % p == 0) v /= p;
    return v == 1;
}

} // namespace detail

/// Orders of the finite classical groups entering centralizer factorizations.
/// For U the field argument is the size of the quadratic extension the group
/// is defined over (so U(1, 9) is the norm-one circle in F_9, order 4).
inline bigint classical_order(ClassicalKind kind, int dim, std::int64_t fieldsize) {
    require(dim >= 0, "BadParameters", "negative dimension");
    require(detail::is_prime_power(fieldsize), "BadParameters", "field size not a prime power");
    if (dim == 0) return 1;
    const bigint Q = fieldsize;
    switch (kind) {
    case ClassicalKind::GL: {
        bigint r = 1, qa = detail::ipow(Q, dim);
        for (int i = 0; i < dim; ++i) r *= qa - detail::ipow(Q, i);
        return r;
    }
    case ClassicalKind::SP: {
        require(dim % 2 == 0, "BadParameters", "symplectic groups need even dimension");
        int t = dim / 2;
        bigint r = detail::ipow(Q, static_cast<long long>(t) * t);
        for (int i = 1; i <= t; ++i) r *= detail::ipow(Q, 2 * i) - 1;
        return r;
    }
    case ClassicalKind::U: {
        std::int64_t root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(fieldsize)));
        while (root * root > fieldsize) --root;
        while ((root + 1) * (root + 1) <= fieldsize) ++root;
        require(root * root == fieldsize, "BadParameters",
                "unitary groups live over a quadratic extension");
        const bigint q0 = root;
        bigint r = detail::ipow(q0, static_cast<long long>(dim) * (dim - 1) / 2);
        for (int i = 1; i <= dim; ++i) r *= detail::ipow(q0, i) - (i % 2 == 0 ? 1 : -1);
        return r;
    }
    case ClassicalKind::O_odd: {
        require(dim % 2 == 1, "BadParameters", "odd orthogonal type needs odd dimension");
        int t = (dim - 1) / 2;
        bigint r = 2 * detail::ipow(Q, static_cast<long long>(t) * t);
        for (int i = 1; i <= t; ++i) r *= detail::ipow(Q, 2 * i) - 1;
        return r;
    }
    case ClassicalKind::O_even_plus:
    case ClassicalKind::O_even_minus: {
        require(dim % 2 == 0, "BadParameters", "even orthogonal type needs even dimension");
        int t = dim / 2;
        bigint eps = kind == ClassicalKind::O_even_plus ? 1 : -1;
        bigint r = 2 * detail::ipow(Q, static_cast<long long>(t) * (t - 1));
        r *= detail::ipow(Q, t) - eps;
        for (int i = 1; i < t; ++i) r *= detail::ipow(Q, 2 * i) - 1;
        return r;
    }
    }
    fail("Internal", "unreachable classical kind");
}

struct CentralizerFactor {
    std::string symbol;
    bigint value;
};

struct CentralizerReport {
    std::vector<CentralizerFactor> factors;
    bigint total = 1;
};

/// Exact centralizer order from the descriptor: reductive factors per level
/// (GL for split pairs, U for self-reciprocal blocks, Sp at odd and O at even
/// eigenvalue levels) times the q-power contributed by the additive quotients
/// of the congruence filtration.
inline CentralizerReport centralizer_order(const ClassDescriptor& desc) {
    desc.validate();
    const std::int64_t q = desc.field->size();
    CentralizerReport rep;
    auto push = [&](std::string sym, bigint v) {
        rep.total *= v;
        rep.factors.push_back({std::move(sym), std::move(v)});
    };
    auto push_qpow = [&](long long e) {
        if (e > 0) push("q^" + std::to_string(e), detail::ipow(q, e));
    };

    for (const auto& e : desc.split) {
        const int g = e.pair.deg(), k = e.k;
        std::vector<long long> A(static_cast<std::size_t>(k + 2), 0);
        for (int i = k; i >= 1; --i)
            A[static_cast<std::size_t>(i)] =
                A[static_cast<std::size_t>(i + 1)] + e.a[static_cast<std::size_t>(i - 1)];
        std::int64_t Qg = 1;
        for (int t = 0; t < g; ++t) Qg *= q;
        for (int i = 1; i <= k; ++i) {
            int ai = e.a[static_cast<std::size_t>(i - 1)];
            if (ai > 0)
                push("GL(" + std::to_string(ai) + "," + std::to_string(Qg) + ")",
                     classical_order(ClassicalKind::GL, ai, Qg));
        }
        long long exp = 0;
        for (int i = 1; i <= k - 1; ++i)
            exp += static_cast<long long>(e.a[static_cast<std::size_t>(i - 1)]) *
                       A[static_cast<std::size_t>(i + 1)] +
                   A[static_cast<std::size_t>(i)] * A[static_cast<std::size_t>(i + 1)];
        push_qpow(static_cast<long long>(g) * exp);
    }

    for (const auto& e : desc.selfbar) {
        const int h = e.q.deg(), m = e.m;
        std::vector<long long> B(static_cast<std::size_t>(m + 2), 0);
        for (int i = m; i >= 1; --i)
            B[static_cast<std::size_t>(i)] =
                B[static_cast<std::size_t>(i + 1)] + e.b[static_cast<std::size_t>(i - 1)];
        std::int64_t Qh = 1;
        for (int t = 0; t < h; ++t) Qh *= q;
        for (int i = 1; i <= m; ++i) {
            int bi = e.b[static_cast<std::size_t>(i - 1)];
            if (bi > 0)
                push("U(" + std::to_string(bi) + "," + std::to_string(Qh) + ")",
                     classical_order(ClassicalKind::U, bi, Qh));
        }
        long long exp = 0;
        for (int i = 1; i <= m - 1; ++i)
            exp += static_cast<long long>(h) * e.b[static_cast<std::size_t>(i - 1)] *
                       B[static_cast<std::size_t>(i + 1)] +
                   (h / 2) * B[static_cast<std::size_t>(i + 1)] * B[static_cast<std::size_t>(i + 1)];
        push_qpow(exp);
    }

    for (const auto& e : desc.linear) {
        const int m = e.m;
        std::vector<long long> B(static_cast<std::size_t>(m + 2), 0);
        for (int i = m; i >= 1; --i)
            B[static_cast<std::size_t>(i)] =
                B[static_cast<std::size_t>(i + 1)] + e.b[static_cast<std::size_t>(i - 1)];
        for (int i = 1; i <= m; ++i) {
            int bi = e.b[static_cast<std::size_t>(i - 1)];
            if (bi == 0) continue;
            if (i % 2 == 1) {
                push("Sp(" + std::to_string(bi) + "," + std::to_string(q) + ")",
                     classical_order(ClassicalKind::SP, bi, q));
            } else if (bi % 2 == 1) {
                push("O(" + std::to_string(bi) + "," + std::to_string(q) + ")",
                     classical_order(ClassicalKind::O_odd, bi, q));
            } else {
                // type plus iff the stored determinant class matches (-1)^{b/2}
                felem ref = (bi / 2) % 2 == 0 ? desc.field->one() : desc.field->neg_one();
                bool plus = e.disc.at(i) == desc.field->square_class(ref);
                push(std::string("O^") + (plus ? "+" : "-") + "(" + std::to_string(bi) + "," +
                         std::to_string(q) + ")",
                     classical_order(plus ? ClassicalKind::O_even_plus
                                          : ClassicalKind::O_even_minus,
                                     bi, q));
            }
        }
        long long exp = 0;
        for (int i = 1; i <= m - 1; ++i) {
            long long Bn = B[static_cast<std::size_t>(i + 1)];
            long long sign = i % 2 == 1 ? 1 : -1;
            exp += static_cast<long long>(e.b[static_cast<std::size_t>(i - 1)]) * Bn +
                   Bn * (Bn + sign) / 2;
        }
        push_qpow(exp);
    }

    bigint sp = classical_order(ClassicalKind::SP, desc.n, q);
    require(sp % rep.total == 0, "Internal", "centralizer order does not divide the group order");
    return rep;
}

} // namespace sympc
