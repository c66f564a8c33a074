#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sympc/ringmod.hpp"

namespace sympc {

enum class BlockKind { SplitPair, SelfBar, LinMinus, LinPlus };

/// One u-invariant, non-isotropic primary summand. basis columns span the
/// block in ambient coordinates; u and gram are expressed in block
/// coordinates; poly is the canonical governing irreducible (for SplitPair
/// the lex-smaller member of the reciprocal pair).
struct PrimaryBlock {
    BlockKind kind;
    Matrix basis;
    Matrix u;
    Matrix gram;
    Poly poly;
    int exponent;
};

struct SplitEntry {
    Poly pair;          // canonical representative; partner = monic reciprocal
    int k = 0;          // exponent
    std::vector<int> a; // a_1..a_k
};

struct SelfBarEntry {
    Poly q;
    int m = 0;
    std::vector<int> b; // b_1..b_m
};

struct LinearEntry {
    bool plus_one = true; // true: q = X-1, false: q = X+1
    int m = 0;
    std::vector<int> b;
    std::map<int, SquareClass> disc; // even levels with b_j > 0
};

struct ClassDescriptor {
    int n = 0;
    FieldPtr field;
    std::vector<SplitEntry> split;
    std::vector<SelfBarEntry> selfbar;
    std::vector<LinearEntry> linear;

    void validate() const;
    nlohmann::json to_json() const;
    std::string label() const { return to_json().dump(); }
};

inline void ClassDescriptor::validate() const {
    require(n >= 2 && n % 2 == 0, "BadParameters", "descriptor dimension must be even");
    int total = 0;
    std::string prev;
    for (const auto& e : split) {
        require(e.k >= 1 && static_cast<int>(e.a.size()) == e.k && e.a.back() > 0,
                "BadParameters", "split multiplicities malformed");
        require(e.pair == split_pair_representative(e.pair), "BadParameters",
                "split entry must store the canonical pair representative");
        std::string txt = e.pair.text();
        require(prev.empty() || prev < txt, "BadParameters", "split entries out of order");
        prev = txt;
        int w = 0;
        for (int j = 1; j <= e.k; ++j) {
            require(e.a[static_cast<std::size_t>(j - 1)] >= 0, "BadParameters",
                    "negative multiplicity");
            w += j * e.a[static_cast<std::size_t>(j - 1)];
        }
        total += 2 * e.pair.deg() * w;
    }
    prev.clear();
    for (const auto& e : selfbar) {
        int h = e.q.deg();
        require(h >= 2 && h % 2 == 0, "BadParameters", "self-reciprocal degree must be even");
        require(is_self_reciprocal(e.q), "BadParameters", "entry polynomial is not self-reciprocal");
        require(e.m >= 1 && static_cast<int>(e.b.size()) == e.m && e.b.back() > 0,
                "BadParameters", "self-bar multiplicities malformed");
        std::string txt = e.q.text();
        require(prev.empty() || prev < txt, "BadParameters", "self-bar entries out of order");
        prev = txt;
        int w = 0;
        for (int j = 1; j <= e.m; ++j) {
            require(e.b[static_cast<std::size_t>(j - 1)] >= 0, "BadParameters",
                    "negative multiplicity");
            w += j * e.b[static_cast<std::size_t>(j - 1)];
        }
        total += h * w;
    }
    require(linear.size() <= 2, "BadParameters", "too many linear entries");
    if (linear.size() == 2)
        require(linear[0].plus_one && !linear[1].plus_one, "BadParameters",
                "linear entries out of order");
    for (const auto& e : linear) {
        require(e.m >= 1 && static_cast<int>(e.b.size()) == e.m && e.b.back() > 0,
                "BadParameters", "linear multiplicities malformed");
        std::set<int> expect;
        int w = 0;
        for (int j = 1; j <= e.m; ++j) {
            int bj = e.b[static_cast<std::size_t>(j - 1)];
            require(bj >= 0, "BadParameters", "negative multiplicity");
            require(j % 2 == 0 || bj % 2 == 0, "BadParameters",
                    "odd-level linear multiplicity must be even");
            if (j % 2 == 0 && bj > 0) expect.insert(j);
            w += j * bj;
        }
        std::set<int> have;
        for (const auto& [lvl, cls] : e.disc) have.insert(lvl);
        require(have == expect, "BadParameters",
                "square-class labels must cover exactly the even levels with b_j > 0");
        total += w;
    }
    require(total == n, "BadParameters", "dimension equation violated");
}

inline nlohmann::json ClassDescriptor::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["p"] = field->characteristic();
    if (!field->is_prime_field()) j["ext"] = field->modulus_text();
    j["split"] = nlohmann::json::array();
    for (const auto& e : split) j["split"].push_back({{"pair", e.pair.text()}, {"a", e.a}});
    j["selfbar"] = nlohmann::json::array();
    for (const auto& e : selfbar) j["selfbar"].push_back({{"q", e.q.text()}, {"b", e.b}});
    j["linear"] = nlohmann::json::array();
    for (const auto& e : linear) {
        nlohmann::json d = nlohmann::json::object();
        for (const auto& [lvl, cls] : e.disc)
            d[std::to_string(lvl)] = cls == SquareClass::Square ? "sq" : "ns";
        j["linear"].push_back(
            {{"sign", e.plus_one ? "+" : "-"}, {"b", e.b}, {"disc", std::move(d)}});
    }
    return j;
}

/// Verification knobs threaded through invariant computation. triples > 0
/// turns on the structural checks of every constructed block;
/// randomize_bases perturbs the adapted filtration bases (the resulting
/// label must not change).
struct ClassifyStats {
    std::uint64_t blocks = 0;
    std::uint64_t triples = 0;
};

struct ClassifyOptions {
    int herm_check_triples = 0;
    std::uint64_t check_seed = 0x517ec0deull;
    ClassifyStats* stats = nullptr;
    std::mt19937_64* randomize_bases = nullptr;
};

namespace detail {

inline Matrix restrict_action(const Matrix& basis, const Matrix& big) {
    auto sol = solve(basis, mat_mul(big, basis));
    require(sol.has_value(), "Internal", "subspace is not invariant");
    return *sol;
}

inline Matrix restrict_gram(const Matrix& basis, const Matrix& j) {
    return mat_mul(basis.transpose(), mat_mul(j, basis));
}

} // namespace detail

inline std::vector<PrimaryBlock> primary_decompose(const SymplecticElement& el) {
    const int n = el.u.rows();
    require(is_symplectic(el.u, el.form), "NotSymplectic", "primary decomposition");

    auto factors = factor(minimal_polynomial(el.u));
    std::vector<PrimaryBlock> blocks;
    for (const auto& [p, k] : factors) {
        FactorKind kind = classify_irreducible(p);
        Poly blockPoly = p;
        BlockKind bk;
        switch (kind) {
        case FactorKind::SplitPair: {
            Poly canon = split_pair_representative(p);
            if (!(canon == p)) continue; // partner handles the pair
            Poly partner = reciprocal(p).monic;
            int partner_k = -1;
            for (const auto& [p2, k2] : factors)
                if (p2 == partner) partner_k = k2;
            require(partner_k == k, "Internal",
                    "reciprocal partner missing or with mismatched exponent");
            blockPoly = mul(canon, partner);
            bk = BlockKind::SplitPair;
            break;
        }
        case FactorKind::SelfBar:
            bk = BlockKind::SelfBar;
            break;
        case FactorKind::LinMinus:
            bk = BlockKind::LinMinus;
            break;
        case FactorKind::LinPlus:
            bk = BlockKind::LinPlus;
            break;
        }
        Matrix basis = kernel_basis(evaluate_at(poly_pow(blockPoly, k), el.u));
        Matrix ub = detail::restrict_action(basis, el.u);
        Matrix gb = detail::restrict_gram(basis, el.form);
        require(rank(gb) == gb.rows(), "Internal", "primary block is isotropic");
        blocks.push_back({bk, basis, ub, gb,
                          kind == FactorKind::SplitPair ? split_pair_representative(p) : p, k});
    }

    int total = 0;
    for (const auto& b : blocks) total += b.basis.cols();
    require(total == n, "Internal", "primary blocks do not fill the space");
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (std::size_t j = i + 1; j < blocks.size(); ++j) {
            Matrix cross =
                mat_mul(blocks[i].basis.transpose(), mat_mul(el.form, blocks[j].basis));
            for (int r = 0; r < cross.rows(); ++r)
                for (int c = 0; c < cross.cols(); ++c)
                    require(cross.at(r, c) == 0, "Internal", "primary blocks are not orthogonal");
        }

    auto key = [](const PrimaryBlock& b) {
        int grp = b.kind == BlockKind::SplitPair ? 0
                  : b.kind == BlockKind::SelfBar ? 1
                  : b.kind == BlockKind::LinMinus ? 2
                                                  : 3;
        return std::pair<int, std::string>(grp, b.poly.text());
    };
    std::sort(blocks.begin(), blocks.end(),
              [&](const PrimaryBlock& x, const PrimaryBlock& y) { return key(x) < key(y); });
    return blocks;
}

/// Split-pair analysis: the class is carried by the restriction to
/// E^1 = ker p^k inside the block, which must be exactly half the block.
inline SplitEntry case1_invariants(const PrimaryBlock& block) {
    require(block.kind == BlockKind::SplitPair, "BadParameters", "split analysis");
    Matrix e1 = kernel_basis(evaluate_at(poly_pow(block.poly, block.exponent), block.u));
    require(2 * e1.cols() == block.u.rows(), "UnequalHalves",
            "half-dimension failure in a split block");
    Matrix u1 = detail::restrict_action(e1, block.u);
    return {block.poly, block.exponent, gl_multiplicities(u1, block.poly, block.exponent)};
}

namespace detail {

inline PrimaryModule block_module(const PrimaryBlock& block, const ClassifyOptions& opt) {
    const auto& K = block.u.field();
    LocalRing R = ring_make(K, block.poly, block.exponent);
    PrimaryModule M = module_filtration(block.u, block.gram, R, opt.randomize_bases);
    if (opt.herm_check_triples > 0) {
        ModuleCheckStats mstats;
        check_module_structure(M, opt.herm_check_triples, opt.check_seed, &mstats);
        if (opt.stats) {
            opt.stats->blocks += mstats.blocks;
            opt.stats->triples += mstats.triples;
        }
    }
    return M;
}

} // namespace detail

/// Self-bar analysis: multiplicities from the module filtration; for the
/// eigenvalue blocks also the determinant square class of every even-level
/// induced Gram.
inline SelfBarEntry case2_selfbar(const PrimaryBlock& block, const ClassifyOptions& opt = {}) {
    require(block.kind == BlockKind::SelfBar, "BadParameters", "self-bar analysis");
    PrimaryModule M = detail::block_module(block, opt);
    return {block.poly, block.exponent, M.b};
}

inline LinearEntry case2_linear(const PrimaryBlock& block, const ClassifyOptions& opt = {}) {
    require(block.kind == BlockKind::LinMinus || block.kind == BlockKind::LinPlus,
            "BadParameters", "eigenvalue analysis");
    PrimaryModule M = detail::block_module(block, opt);
    LinearEntry e;
    e.plus_one = block.kind == BlockKind::LinMinus;
    e.m = block.exponent;
    e.b = M.b;
    for (int j = 2; j <= e.m; j += 2)
        if (e.b[static_cast<std::size_t>(j - 1)] > 0)
            e.disc[j] = gram_det_square_class(induced_form(M, M.l, j), block.u.field());
    return e;
}

inline ClassDescriptor invariant(const SymplecticElement& el, const ClassifyOptions& opt = {}) {
    ClassDescriptor d;
    d.n = el.u.rows();
    d.field = el.u.field();
    for (const auto& block : primary_decompose(el)) {
        switch (block.kind) {
        case BlockKind::SplitPair:
            d.split.push_back(case1_invariants(block));
            break;
        case BlockKind::SelfBar:
            d.selfbar.push_back(case2_selfbar(block, opt));
            break;
        case BlockKind::LinMinus:
        case BlockKind::LinPlus:
            d.linear.push_back(case2_linear(block, opt));
            break;
        }
    }
    d.validate();
    return d;
}

/// Conjugacy test: both elements are rewritten in symplectic coordinates for
/// their own forms, then compared by canonical label.
inline bool conjugate_in_sp(const SymplecticElement& a, const SymplecticElement& b,
                            const ClassifyOptions& opt = {}) {
    require(a.u.field()->same(*b.u.field()), "FormMismatch", "elements over different fields");
    require(a.u.rows() == b.u.rows(), "FormMismatch", "elements of different dimension");
    auto standardize = [&](const SymplecticElement& e) {
        Matrix t = symplectic_basis(e.form);
        Matrix ti = inverse(t);
        return make_symplectic(mat_mul(ti, mat_mul(e.u, t)),
                               standard_form(e.u.field(), e.u.rows()));
    };
    SymplecticElement sa = standardize(a), sb = standardize(b);
    return invariant(sa, opt).label() == invariant(sb, opt).label();
}

namespace detail {

/// All vectors c_1..c_m with sum j*c_j = w and c_m >= 1; parity forces even
/// entries at odd levels.
inline std::vector<std::vector<int>> weight_vectors(int w, bool parity) {
    std::vector<std::vector<int>> out;
    for (int m = 1; m <= w; ++m) {
        std::vector<int> cur(static_cast<std::size_t>(m), 0);
        auto rec = [&](auto&& self, int level, int rem) -> void {
            if (level == 0) {
                if (rem == 0) out.push_back(cur);
                return;
            }
            int step = (parity && level % 2 == 1) ? 2 : 1;
            int lo = level == m ? step : 0;
            for (int c = lo; c * level <= rem; c += step) {
                cur[static_cast<std::size_t>(level - 1)] = c;
                self(self, level - 1, rem - c * level);
            }
            cur[static_cast<std::size_t>(level - 1)] = 0;
        };
        rec(rec, m, w);
    }
    return out;
}

} // namespace detail

/// All class descriptors for Sp_n over the given prime field: every choice of
/// governing irreducibles, multiplicity vectors meeting the dimension
/// equation and parity rules, and square-class labels at the even eigenvalue
/// levels.
inline std::vector<ClassDescriptor> enumerate_classes(int n, const FieldPtr& K, int bound = 8) {
    require(K->is_prime_field(), "BadParameters", "enumeration requires a prime field");
    require(n >= 2 && n % 2 == 0, "BadParameters", "dimension must be even and positive");
    require(n <= bound, "BoundExceeded", "dimension exceeds the enumeration bound");
    const std::int64_t q = K->size();

    struct Cand {
        int group; // 0 split, 1 selfbar, 2 X-1, 3 X+1
        Poly poly;
    };
    std::vector<Cand> cands;

    // split candidates: canonical representatives of reciprocal pairs, 2g <= n
    for (int g = 1; 2 * g <= n; ++g) {
        std::vector<felem> coeffs(static_cast<std::size_t>(g + 1), 0);
        coeffs.back() = K->one();
        auto rec = [&](auto&& self, int pos) -> void {
            if (pos == g) {
                if (coeffs[0] == 0) return;
                Poly p(K, std::vector<felem>(coeffs));
                if (!is_irreducible(p)) return;
                if (classify_irreducible(p) != FactorKind::SplitPair) return;
                if (!(split_pair_representative(p) == p)) return;
                cands.push_back({0, p});
                return;
            }
            for (std::int64_t c = 0; c < q; ++c) {
                coeffs[static_cast<std::size_t>(pos)] = K->from_int(c);
                self(self, pos + 1);
            }
        };
        rec(rec, 0);
    }
    // self-reciprocal candidates by coefficient symmetry: c_nu = c_{h-nu}/c_0,
    // c_0 = ±1, and c_0 = -1 forces the middle coefficient to vanish
    for (int h = 2; h <= n; h += 2) {
        std::vector<felem> coeffs(static_cast<std::size_t>(h + 1), 0);
        coeffs.back() = K->one();
        for (int c0sign = 0; c0sign < 2; ++c0sign) {
            felem c0 = c0sign == 0 ? K->one() : K->neg_one();
            coeffs[0] = c0;
            int freeTop = c0sign == 0 ? h / 2 : h / 2 - 1;
            auto rec = [&](auto&& self, int pos) -> void {
                if (pos > freeTop) {
                    if (c0sign == 1) coeffs[static_cast<std::size_t>(h / 2)] = 0;
                    for (int nu = h / 2 + 1; nu < h; ++nu)
                        coeffs[static_cast<std::size_t>(nu)] =
                            K->mul(coeffs[static_cast<std::size_t>(h - nu)], c0);
                    Poly p(K, std::vector<felem>(coeffs));
                    if (is_irreducible(p)) cands.push_back({1, p});
                    return;
                }
                for (std::int64_t c = 0; c < q; ++c) {
                    coeffs[static_cast<std::size_t>(pos)] = K->from_int(c);
                    self(self, pos + 1);
                }
            };
            rec(rec, 1);
        }
    }
    // text order matches the ordering rule used for descriptor entries
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.group != b.group) return a.group < b.group;
        return a.poly.text() < b.poly.text();
    });
    cands.push_back({2, sub(Poly::x(K), Poly::constant(K, 1))});
    cands.push_back({3, add(Poly::x(K), Poly::constant(K, 1))});

    std::vector<ClassDescriptor> out;
    ClassDescriptor cur;
    cur.n = n;
    cur.field = K;

    auto emit_linear_disc = [&](auto&& self, LinearEntry& e, int level, auto&& done) -> void {
        while (level <= e.m && (level % 2 == 1 || e.b[static_cast<std::size_t>(level - 1)] == 0))
            ++level;
        if (level > e.m) {
            done();
            return;
        }
        for (SquareClass cls : {SquareClass::Square, SquareClass::NonSquare}) {
            e.disc[level] = cls;
            self(self, e, level + 2, done);
        }
        e.disc.erase(level);
    };

    auto dfs = [&](auto&& self, std::size_t idx, int rem) -> void {
        if (idx == cands.size()) {
            if (rem == 0) {
                cur.validate();
                out.push_back(cur);
            }
            return;
        }
        self(self, idx + 1, rem); // candidate unused
        const Cand& cd = cands[idx];
        if (cd.group == 0) {
            int g = cd.poly.deg();
            for (int w = 1; 2 * g * w <= rem; ++w)
                for (auto& vec : detail::weight_vectors(w, false)) {
                    cur.split.push_back({cd.poly, static_cast<int>(vec.size()), vec});
                    self(self, idx + 1, rem - 2 * g * w);
                    cur.split.pop_back();
                }
        } else if (cd.group == 1) {
            int h = cd.poly.deg();
            for (int w = 1; h * w <= rem; ++w)
                for (auto& vec : detail::weight_vectors(w, false)) {
                    cur.selfbar.push_back({cd.poly, static_cast<int>(vec.size()), vec});
                    self(self, idx + 1, rem - h * w);
                    cur.selfbar.pop_back();
                }
        } else {
            for (int w = 2; w <= rem; w += 2)
                for (auto& vec : detail::weight_vectors(w, true)) {
                    LinearEntry e;
                    e.plus_one = cd.group == 2;
                    e.m = static_cast<int>(vec.size());
                    e.b = vec;
                    cur.linear.push_back(e);
                    emit_linear_disc(emit_linear_disc, cur.linear.back(), 2,
                                     [&] { self(self, idx + 1, rem - w); });
                    cur.linear.pop_back();
                }
        }
    };
    dfs(dfs, 0, n);

    std::sort(out.begin(), out.end(), [](const ClassDescriptor& a, const ClassDescriptor& b) {
        return a.label() < b.label();
    });
    std::set<std::string> seen;
    for (const auto& d : out)
        require(seen.insert(d.label()).second, "Internal", "duplicate descriptor emitted");
    return out;
}

} // namespace sympc
