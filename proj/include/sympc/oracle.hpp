#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "sympc/symform.hpp"

namespace sympc {

/// Exhaustive table of a small symplectic group, deduplicated by a canonical
/// byte encoding of matrix entries. Ground truth for the classifier; depends
/// only on the form layer.
struct GroupTable {
    FieldPtr field;
    int n = 0;
    Matrix form;
    std::vector<Matrix> elements;
    std::unordered_map<std::string, std::size_t> index;

    std::size_t order() const { return elements.size(); }

    std::size_t index_of(const Matrix& u) const;
};

namespace detail {

inline std::string encode_matrix(const Matrix& u) {
    std::string s;
    s.reserve(static_cast<std::size_t>(u.rows()) * static_cast<std::size_t>(u.cols()));
    for (int i = 0; i < u.rows(); ++i)
        for (int j = 0; j < u.cols(); ++j)
            s.push_back(static_cast<char>(static_cast<unsigned char>(u.at(i, j))));
    return s;
}

/// |Sp_n(F_q)| saturated at cap: returns -1 once the product exceeds it.
inline std::int64_t sp_order_capped(int n, std::int64_t q, std::int64_t cap) {
    const int t = n / 2;
    __int128 ord = 1;
    for (int i = 0; i < t * t; ++i) {
        ord *= q;
        if (ord > cap) return -1;
    }
    for (int i = 1; i <= t; ++i) {
        __int128 f = 1;
        for (int j = 0; j < 2 * i; ++j) f *= q;
        ord *= f - 1;
        if (ord > cap) return -1;
    }
    return static_cast<std::int64_t>(ord);
}

} // namespace detail

inline std::size_t GroupTable::index_of(const Matrix& u) const {
    auto it = index.find(detail::encode_matrix(u));
    require(it != index.end(), "NotInGroup", "matrix is not a table element");
    return it->second;
}

/// All symplectic transvections with projectively normalized direction.
inline std::vector<Matrix> transvection_generators(const FieldPtr& K, const Matrix& j) {
    const int n = j.rows();
    const std::int64_t q = K->size();
    std::vector<Matrix> gens;
    std::vector<felem> a(static_cast<std::size_t>(n), 0);
    auto rec = [&](auto&& self, int pos, bool leading) -> void {
        if (pos == n) {
            if (leading) return;
            for (std::int64_t l = 1; l < q; ++l) gens.push_back(transvection(j, a, K->from_int(l)));
            return;
        }
        if (leading) {
            // still searching for the first nonzero coordinate: 0 or 1
            a[static_cast<std::size_t>(pos)] = 0;
            self(self, pos + 1, true);
            a[static_cast<std::size_t>(pos)] = K->one();
            self(self, pos + 1, false);
            a[static_cast<std::size_t>(pos)] = 0;
        } else {
            for (std::int64_t c = 0; c < q; ++c) {
                a[static_cast<std::size_t>(pos)] = K->from_int(c);
                self(self, pos + 1, false);
            }
            a[static_cast<std::size_t>(pos)] = 0;
        }
    };
    rec(rec, 0, true);
    return gens;
}

inline GroupTable enumerate_group(int n, const FieldPtr& K, std::int64_t cap = 10'000'000) {
    require(n >= 2 && n % 2 == 0, "BadParameters", "dimension must be even");
    require(K->size() < 256, "BadParameters", "field too large for byte encoding");
    std::int64_t expected = detail::sp_order_capped(n, K->size(), cap);
    require(expected > 0, "CapExceeded", "group order exceeds the enumeration cap");

    GroupTable t;
    t.field = K;
    t.n = n;
    t.form = standard_form(K, n);
    auto gens = transvection_generators(K, t.form);

    Matrix id = Matrix::identity(K, n);
    t.elements.push_back(id);
    t.index.emplace(detail::encode_matrix(id), 0);
    for (std::size_t head = 0; head < t.elements.size(); ++head) {
        Matrix cur = t.elements[head]; // copy: the vector may reallocate
        for (const auto& g : gens) {
            Matrix w = mat_mul(cur, g);
            std::string key = detail::encode_matrix(w);
            if (t.index.emplace(key, t.elements.size()).second) t.elements.push_back(w);
        }
    }
    require(static_cast<std::int64_t>(t.elements.size()) == expected, "Internal",
            "closure order does not match the group order formula");
    return t;
}

/// Conjugacy orbits by generator-conjugation closure. Orbits are listed by
/// smallest member index; each orbit's indices are sorted.
inline std::vector<std::vector<std::size_t>> brute_conjugacy(const GroupTable& t) {
    auto gens = transvection_generators(t.field, t.form);
    std::vector<Matrix> geninv;
    geninv.reserve(gens.size());
    for (const auto& g : gens) geninv.push_back(inverse(g));

    std::vector<std::int8_t> seen(t.order(), 0);
    std::vector<std::vector<std::size_t>> orbits;
    for (std::size_t s = 0; s < t.order(); ++s) {
        if (seen[s]) continue;
        std::vector<std::size_t> orbit{s};
        seen[s] = 1;
        for (std::size_t head = 0; head < orbit.size(); ++head) {
            const Matrix x = t.elements[orbit[head]];
            for (std::size_t gi = 0; gi < gens.size(); ++gi) {
                Matrix w = mat_mul(gens[gi], mat_mul(x, geninv[gi]));
                std::size_t wi = t.index_of(w);
                if (!seen[wi]) {
                    seen[wi] = 1;
                    orbit.push_back(wi);
                }
            }
        }
        std::sort(orbit.begin(), orbit.end());
        orbits.push_back(std::move(orbit));
    }
    std::size_t total = 0;
    for (const auto& o : orbits) total += o.size();
    require(total == t.order(), "Internal", "orbits do not partition the group");
    return orbits;
}

/// |{w in G : wu = uw}| by direct count.
inline std::int64_t brute_centralizer(const GroupTable& t, const Matrix& u) {
    t.index_of(u); // membership check
    std::int64_t count = 0;
    for (const auto& w : t.elements)
        if (mat_mul(w, u) == mat_mul(u, w)) ++count;
    return count;
}

} // namespace sympc
