#pragma once

// Ground truth by exhaustive enumeration of compositions.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matcher.hpp"
#include "pattern.hpp"
#include "series.hpp"

namespace popcomp {

/// Calls visit(parts) for every composition of n with parts in A (and exactly
/// m parts when given), in lexicographic order. Parts are chosen depth-first
/// in increasing order; nothing is stored beyond the current prefix.
template <class Visitor>
void for_each_composition(PartSet const& parts, int n, std::optional<int> m, Visitor&& visit) {
    if (n < 0) return;
    std::vector<int> prefix;
    auto rec = [&](auto&& self, int remaining) -> void {
        if (remaining == 0) {
            if (!m || static_cast<int>(prefix.size()) == *m) visit(std::as_const(prefix));
            return;
        }
        if (m && static_cast<int>(prefix.size()) >= *m) return;
        for (int a : parts.parts()) {
            if (a > remaining) break;
            prefix.push_back(a);
            self(self, remaining - a);
            prefix.pop_back();
        }
    };
    rec(rec, n);
}

inline std::vector<Composition> enumerate_compositions(PartSet const& parts, int n, std::optional<int> m = {}) {
    std::vector<Composition> out;
    for_each_composition(parts, n, m, [&](std::vector<int> const& c) { out.emplace_back(c); });
    return out;
}

/// Counts indexed by (n, m), defined for every 0 <= m <= n <= max_n.
struct CountTable {
    std::string pattern;
    PartSet parts{1};
    int max_n = 0;
    std::map<std::pair<int, int>, BigInt> entries;

    BigInt at(int n, int m) const {
        auto it = entries.find({n, m});
        return it == entries.end() ? BigInt(0) : it->second;
    }
    BigInt total(int n) const {
        BigInt s = 0;
        for (int m = 0; m <= n; ++m) s += at(n, m);
        return s;
    }
};

/// Tabulates f(composition) summed over all compositions with n <= max_n.
template <class Predicate>
CountTable tabulate(PartSet const& parts, int max_n, std::string label, Predicate&& pred) {
    CountTable t{std::move(label), parts, max_n, {}};
    for (int n = 0; n <= max_n; ++n) {
        for (int m = 0; m <= n; ++m) t.entries[{n, m}] = 0;
        for_each_composition(parts, n, std::nullopt, [&](std::vector<int> const& c) {
            if (pred(Composition(c))) t.entries[{n, static_cast<int>(c.size())}] += 1;
        });
    }
    return t;
}

inline BigInt count_avoiders(PartSet const& parts, int n, std::optional<int> m, PopPattern const& p) {
    Matcher matcher(p);
    BigInt count = 0;
    for_each_composition(parts, n, m, [&](std::vector<int> const& c) {
        if (matcher.avoids(Composition(c))) count += 1;
    });
    return count;
}

inline BigInt count_quasi_avoiders(PartSet const& parts, int n, std::optional<int> m, PopPattern const& p) {
    Matcher matcher(p);
    BigInt count = 0;
    for_each_composition(parts, n, m, [&](std::vector<int> const& c) {
        if (matcher.quasi_avoids(Composition(c))) count += 1;
    });
    return count;
}

inline BigInt count_compositions(PartSet const& parts, int n, std::optional<int> m = {}) {
    BigInt count = 0;
    for_each_composition(parts, n, m, [&](std::vector<int> const&) { count += 1; });
    return count;
}

/// Histogram of nlap over the compositions of n (with m parts when given).
inline std::map<std::size_t, BigInt> nlap_distribution(PartSet const& parts, int n, std::optional<int> m,
                                                        PopPattern const& p) {
    Matcher matcher(p);
    std::map<std::size_t, BigInt> hist;
    for_each_composition(parts, n, m, [&](std::vector<int> const& c) { hist[matcher.nlap(Composition(c))] += 1; });
    return hist;
}

inline CountTable avoider_table(PopPattern const& p, PartSet const& parts, int max_n) {
    Matcher matcher(p);
    return tabulate(parts, max_n, format_pattern(p), [&](Composition const& c) { return matcher.avoids(c); });
}

inline CountTable quasi_avoider_table(PopPattern const& p, PartSet const& parts, int max_n) {
    Matcher matcher(p);
    return tabulate(parts, max_n, format_pattern(p), [&](Composition const& c) { return matcher.quasi_avoids(c); });
}

/// Oracle for a t-graded series: entry (n, m, s) = #compositions with nlap = s.
inline std::map<Exponent, BigInt> nlap_table(PopPattern const& p, PartSet const& parts, int max_n) {
    Matcher matcher(p);
    std::map<Exponent, BigInt> out;
    for (int n = 0; n <= max_n; ++n)
        for_each_composition(parts, n, std::nullopt, [&](std::vector<int> const& c) {
            out[{n, static_cast<int>(c.size()), static_cast<int>(matcher.nlap(Composition(c)))}] += 1;
        });
    return out;
}

struct Mismatch {
    int n = 0;
    int m = 0;
    BigInt a;
    BigInt b;
};

struct EquivalenceReport {
    CountTable a;
    CountTable b;
    std::optional<Mismatch> mismatch;

    bool equivalent() const { return !mismatch.has_value(); }
};

inline std::optional<Mismatch> first_mismatch(CountTable const& a, CountTable const& b) {
    int max_n = std::min(a.max_n, b.max_n);
    for (int n = 0; n <= max_n; ++n)
        for (int m = 0; m <= n; ++m)
            if (a.at(n, m) != b.at(n, m)) return Mismatch{n, m, a.at(n, m), b.at(n, m)};
    return std::nullopt;
}

inline EquivalenceReport check_equivalence(PopPattern const& p1, PopPattern const& p2, PartSet const& parts,
                                           int max_n) {
    EquivalenceReport r{avoider_table(p1, parts, max_n), avoider_table(p2, parts, max_n), std::nullopt};
    r.mismatch = first_mismatch(r.a, r.b);
    return r;
}

/// First (n, m) where a series disagrees with a count table, both restricted
/// to t^0 and n <= table.max_n.
inline std::optional<Mismatch> compare_with_series(CountTable const& table, TruncSeries const& s) {
    for (int n = 0; n <= table.max_n; ++n)
        for (int m = 0; m <= n; ++m) {
            BigInt sc = s.trunc().covers(n, m, 0) ? s.coeff(n, m, 0) : BigInt(0);
            if (sc != table.at(n, m)) return Mismatch{n, m, table.at(n, m), sc};
        }
    return std::nullopt;
}

/// Every non-empty subset of {1..k}, as part sets.
inline std::vector<PartSet> part_subsets(int k) {
    std::vector<PartSet> out;
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        std::vector<int> parts;
        for (int a = 1; a <= k; ++a)
            if (mask & (1u << (a - 1))) parts.push_back(a);
        out.emplace_back(std::move(parts));
    }
    return out;
}

}  // namespace popcomp
