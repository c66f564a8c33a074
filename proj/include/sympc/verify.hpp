#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sympc/centralizer.hpp"
#include "sympc/oracle.hpp"

namespace sympc {

/// Everything the cross-validation checks need for one small group: the
/// exhaustive table, brute conjugacy orbits, the classifier label of every
/// element (computed with structural checks enabled), and per-orbit
/// descriptors from the orbit representatives.
struct GroupVerification {
    GroupTable table;
    std::vector<std::vector<std::size_t>> orbits;
    std::vector<std::string> labels;
    std::vector<ClassDescriptor> orbit_desc;
    ClassifyStats stats;
};

inline GroupVerification analyze_group(int n, const FieldPtr& K, int herm_triples = 100,
                                       std::uint64_t seed = 0x5ca1ab1eull,
                                       std::int64_t cap = 10'000'000) {
    GroupVerification v{enumerate_group(n, K, cap), {}, {}, {}, {}};
    v.orbits = brute_conjugacy(v.table);
    ClassifyOptions opt;
    opt.herm_check_triples = herm_triples;
    opt.check_seed = seed;
    opt.stats = &v.stats;
    v.labels.reserve(v.table.order());
    for (const auto& u : v.table.elements)
        v.labels.push_back(invariant(make_symplectic(u, v.table.form), opt).label());
    v.orbit_desc.reserve(v.orbits.size());
    for (const auto& orbit : v.orbits)
        v.orbit_desc.push_back(
            invariant(make_symplectic(v.table.elements[orbit[0]], v.table.form)));
    return v;
}

/// Exact partition equality: the label fibers coincide with the brute orbits.
inline bool check_partition(const GroupVerification& v, std::string* detail = nullptr) {
    std::map<std::string, std::vector<std::size_t>> fibers;
    for (std::size_t i = 0; i < v.labels.size(); ++i) fibers[v.labels[i]].push_back(i);
    std::set<std::vector<std::size_t>> lhs;
    for (auto& [lbl, idx] : fibers) lhs.insert(idx); // already sorted ascending
    std::set<std::vector<std::size_t>> rhs(v.orbits.begin(), v.orbits.end());
    bool ok = lhs == rhs;
    if (detail)
        *detail = std::to_string(fibers.size()) + " label classes vs " +
                  std::to_string(v.orbits.size()) + " orbits";
    return ok;
}

/// Both inclusions between enumerated descriptors and realized labels.
inline bool check_enumeration(const GroupVerification& v, std::string* detail = nullptr) {
    std::set<std::string> realized(v.labels.begin(), v.labels.end());
    std::set<std::string> predicted;
    for (const auto& d : enumerate_classes(v.table.n, v.table.field))
        predicted.insert(d.label());
    bool ok = realized == predicted;
    if (detail)
        *detail = std::to_string(predicted.size()) + " enumerated vs " +
                  std::to_string(realized.size()) + " realized";
    return ok;
}

/// Formula centralizer order against the brute count for every orbit
/// representative, the orbit-stabilizer identity, and the class equation.
inline bool check_centralizers(const GroupVerification& v, std::string* detail = nullptr) {
    const bigint order = v.table.order();
    bigint class_sum = 0;
    for (std::size_t oi = 0; oi < v.orbits.size(); ++oi) {
        const auto& orbit = v.orbits[oi];
        const Matrix& rep = v.table.elements[orbit[0]];
        bigint formula = centralizer_order(v.orbit_desc[oi]).total;
        bigint brute = brute_centralizer(v.table, rep);
        if (formula != brute) {
            if (detail)
                *detail = "orbit " + std::to_string(oi) + ": formula " + formula.str() +
                          " vs brute " + brute.str();
            return false;
        }
        if (brute * static_cast<std::int64_t>(orbit.size()) != order) {
            if (detail) *detail = "orbit-stabilizer failure at orbit " + std::to_string(oi);
            return false;
        }
        class_sum += order / formula;
    }
    bool ok = class_sum == order;
    if (detail && ok) *detail = std::to_string(v.orbits.size()) + " representatives, class equation exact";
    if (detail && !ok) *detail = "class equation sum " + class_sum.str() + " vs " + order.str();
    return ok;
}

/// Conjugation invariance on random pairs; structural checks stay on so every
/// constructed block is exercised.
inline bool check_invariance(int n, const FieldPtr& K, int trials, int herm_triples,
                             std::uint64_t seed, ClassifyStats* stats = nullptr,
                             std::string* detail = nullptr) {
    ClassifyOptions opt;
    opt.herm_check_triples = herm_triples;
    opt.stats = stats;
    for (int t = 0; t < trials; ++t) {
        opt.check_seed = seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(t);
        SymplecticElement u = random_symplectic(n, K, seed + 2 * static_cast<std::uint64_t>(t));
        SymplecticElement w = random_symplectic(n, K, seed + 2 * static_cast<std::uint64_t>(t) + 1);
        Matrix conj = mat_mul(w.u, mat_mul(u.u, inverse(w.u)));
        std::string a = invariant(u, opt).label();
        std::string b = invariant(make_symplectic(conj, u.form), opt).label();
        if (a != b) {
            if (detail) *detail = "trial " + std::to_string(t) + " label mismatch";
            return false;
        }
    }
    if (detail) *detail = std::to_string(trials) + " trials";
    return true;
}

struct VerifyCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// The full cross-validation suite for one (n, q), as surfaced by the CLI.
inline std::vector<VerifyCheck> verify_group(int n, const FieldPtr& K,
                                             int invariance_trials = 200,
                                             std::uint64_t seed = 0xbead5eedull,
                                             std::int64_t cap = 10'000'000) {
    std::vector<VerifyCheck> out;
    auto guarded = [&](const std::string& name, auto&& fn) {
        VerifyCheck c{name, false, ""};
        try {
            c.pass = fn(&c.detail);
        } catch (const Error& e) {
            c.pass = false;
            c.detail = e.what();
        }
        out.push_back(std::move(c));
    };

    GroupVerification v;
    bool analyzed = false;
    guarded("partition", [&](std::string* d) {
        v = analyze_group(n, K, 100, seed, cap);
        analyzed = true;
        return check_partition(v, d);
    });
    guarded("enumeration", [&](std::string* d) {
        require(analyzed, "Internal", "group analysis unavailable");
        return check_enumeration(v, d);
    });
    guarded("centralizer", [&](std::string* d) {
        require(analyzed, "Internal", "group analysis unavailable");
        return check_centralizers(v, d);
    });
    guarded("invariance", [&](std::string* d) {
        return check_invariance(n, K, invariance_trials, 100, seed, nullptr, d);
    });
    guarded("structure", [&](std::string* d) {
        require(analyzed, "Internal", "group analysis unavailable");
        *d = std::to_string(v.stats.blocks) + " blocks, " + std::to_string(v.stats.triples) +
             " Hermitian triples";
        return v.stats.blocks > 0 && v.stats.triples > 0;
    });
    return out;
}

} // namespace sympc
