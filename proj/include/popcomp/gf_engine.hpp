#pragma once

// Generating functions for POP-avoiding compositions:
//   C(x,y) = sum |C_{n;m}(p)| x^n y^m
// computed by a window automaton for consecutive patterns and by the
// recursions and closed forms that build on it.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "matcher.hpp"
#include "pattern.hpp"
#include "series.hpp"

namespace popcomp {

struct GfRequest {
    PopPattern pattern;
    PartSet parts;
    Truncation trunc;

    /// The series says nothing interesting when no single part fits.
    bool degenerate() const { return trunc.nx < parts.max(); }
};

namespace detail {

inline void require_single_block(PopPattern const& p, char const* what) {
    if (!p.single_block())
        throw error(std::string(what) + " needs a consecutive (single-block) pattern, got " +
                    format_pattern(p));
}

inline TruncSeries one_minus(TruncSeries const& s) { return TruncSeries::one(s.trunc()) - s; }

// (y sum x^a - 1) C + 1: compositions that avoid p or quasi-avoid it.
inline TruncSeries quasi_from_avoiders(TruncSeries const& c, std::span<int const> parts) {
    Truncation t = c.trunc();
    auto s = elementary(std::vector<int>(parts.begin(), parts.end()), Elementary::sum_xa, t);
    return TruncSeries::one(t) + c * (s - TruncSeries::one(t));
}

inline TruncSeries consecutive_avoiders(PopPattern const& p, std::span<int const> parts, Truncation trunc) {
    require_single_block(p, "consecutive avoidance");
    Matcher matcher(p);
    std::size_t const len = p.size();
    std::size_t const keep = len - 1;

    // state: the last min(m, len-1) parts; value: counts indexed by size n.
    using Layer = std::map<std::vector<int>, std::vector<BigInt>>;
    Layer layer;
    layer[{}] = std::vector<BigInt>(static_cast<std::size_t>(trunc.nx + 1));
    layer[{}][0] = 1;

    TruncSeries out(trunc);
    std::vector<int> window;
    for (int m = 0;; ++m) {
        for (auto const& [state, counts] : layer)
            for (int n = 0; n <= trunc.nx; ++n)
                if (counts[static_cast<std::size_t>(n)] != 0)
                    out.add_term({n, m, 0}, counts[static_cast<std::size_t>(n)]);
        if (m == trunc.ny) break;

        Layer next;
        for (auto const& [state, counts] : layer) {
            for (int a : parts) {
                window = state;
                window.push_back(a);
                if (window.size() == len && matcher.window_matches(window)) continue;
                std::vector<int> key(window.size() > keep ? window.end() - static_cast<std::ptrdiff_t>(keep)
                                                          : window.begin(),
                                     window.end());
                auto [it, fresh] = next.try_emplace(std::move(key));
                if (fresh) it->second.resize(static_cast<std::size_t>(trunc.nx + 1));
                for (int n = 0; n + a <= trunc.nx; ++n)
                    if (counts[static_cast<std::size_t>(n)] != 0)
                        it->second[static_cast<std::size_t>(n + a)] += counts[static_cast<std::size_t>(n)];
            }
        }
        std::erase_if(next, [](auto const& kv) {
            for (auto const& v : kv.second)
                if (v != 0) return false;
            return true;
        });
        if (next.empty()) break;
        layer = std::move(next);
    }
    return out;
}

inline void require_single_class(PopPattern const& p, char const* what) {
    require_single_block(p, what);
    if (p.classes_used().size() != 1)
        throw error(std::string(what) + " blocks must use a single class, got " + format_pattern(p));
}

inline TruncSeries shuffle(PopPattern const& tau, PopPattern const& nu, Separator sep, std::vector<int> parts,
                           Truncation trunc) {
    if (parts.empty()) return TruncSeries::one(trunc);
    int a = sep == Separator::top ? parts.back() : parts.front();
    if (sep == Separator::top)
        parts.pop_back();
    else
        parts.erase(parts.begin());

    TruncSeries inner = shuffle(tau, nu, sep, parts, trunc);
    TruncSeries ct = consecutive_avoiders(tau, parts, trunc);
    TruncSeries cn = consecutive_avoiders(nu, parts, trunc);
    TruncSeries u = TruncSeries::monomial(trunc, {a, 1, 0});
    TruncSeries num = inner - u * ct * cn;
    TruncSeries den = one_minus(u * ct) * one_minus(u * cn);
    return num * reciprocal(den);
}

}  // namespace detail

/// Consecutive pattern: compositions avoiding p, via a transfer matrix whose
/// states are the last |p|-1 parts.
inline TruncSeries gf_consecutive_avoiders(PopPattern const& p, PartSet const& parts, Truncation trunc) {
    return detail::consecutive_avoiders(p, parts.parts(), trunc);
}

/// D = 1 + C (y sum x^a - 1): compositions whose only occurrence of p is
/// their final |p| parts.
inline TruncSeries gf_quasi_avoiders(PopPattern const& p, PartSet const& parts, Truncation trunc) {
    detail::require_single_block(p, "quasi-avoidance");
    return detail::quasi_from_avoiders(gf_consecutive_avoiders(p, parts, trunc), parts.parts());
}

/// C(tau0-phi) = C(tau0) + C(phi) D(tau0), where tau0 is consecutive and
/// shares no comparability with phi. gf_phi is the avoidance series of phi.
inline TruncSeries gf_concat(PopPattern const& tau0, PopPattern const& phi, PartSet const& parts,
                             Truncation trunc, TruncSeries const& gf_phi) {
    detail::require_single_block(tau0, "concatenation head");
    auto head = tau0.classes_used();
    for (ClassId c : phi.classes_used())
        if (head.count(c))
            throw error("concatenation head shares class " + std::to_string(c) + " with the tail");
    for (auto const& [lo, hi] : phi.poset().relations())
        if (head.count(lo) || head.count(hi)) throw error("tail order relates a class of the head");
    for (auto const& [lo, hi] : tau0.poset().relations())
        if (!head.count(lo) || !head.count(hi)) throw error("head order relates a class of the tail");
    if (!(gf_phi.trunc() == trunc)) throw error("truncation mismatch for the tail series");

    TruncSeries c0 = gf_consecutive_avoiders(tau0, parts, trunc);
    return c0 + gf_phi * detail::quasi_from_avoiders(c0, parts.parts());
}

/// tau - l - nu with l above (top) or below (bottom) every letter of tau and
/// nu. Peels the largest (top) or smallest (bottom) part; the empty part set
/// has series 1.
inline TruncSeries gf_shuffle(PopPattern const& tau, PopPattern const& nu, Separator sep, PartSet const& parts,
                              Truncation trunc) {
    detail::require_single_class(tau, "shuffle");
    detail::require_single_class(nu, "shuffle");
    return detail::shuffle(tau, nu, sep, parts.parts(), trunc);
}

/// 1'-2-1'': 1/prod(1-x^a y)^2 - sum_a x^a y / prod_{b >= a}(1-x^b y)^2.
inline TruncSeries gf_pop_121(PartSet const& parts, Truncation trunc) {
    auto const& a = parts.parts();
    auto factor = [&](int v) {
        auto f = TruncSeries::one(trunc) - TruncSeries::monomial(trunc, {v, 1, 0});
        return f * f;
    };
    TruncSeries all = TruncSeries::one(trunc);
    for (int v : a) all *= factor(v);
    TruncSeries result = reciprocal(all);
    for (std::size_t i = 0; i < a.size(); ++i) {
        TruncSeries den = TruncSeries::one(trunc);
        for (std::size_t j = i; j < a.size(); ++j) den *= factor(a[j]);
        result -= TruncSeries::monomial(trunc, {a[i], 1, 0}) * reciprocal(den);
    }
    return result;
}

/// 2'-1-2'': as gf_pop_121 with the inner products over b <= a.
inline TruncSeries gf_pop_212(PartSet const& parts, Truncation trunc) {
    auto const& a = parts.parts();
    auto factor = [&](int v) {
        auto f = TruncSeries::one(trunc) - TruncSeries::monomial(trunc, {v, 1, 0});
        return f * f;
    };
    TruncSeries all = TruncSeries::one(trunc);
    for (int v : a) all *= factor(v);
    TruncSeries result = reciprocal(all);
    for (std::size_t i = 0; i < a.size(); ++i) {
        TruncSeries den = TruncSeries::one(trunc);
        for (std::size_t j = 0; j <= i; ++j) den *= factor(a[j]);
        result -= TruncSeries::monomial(trunc, {a[i], 1, 0}) * reciprocal(den);
    }
    return result;
}

/// tau_1 - ... - tau_s with mutually incomparable consecutive blocks:
///   sum_j C_j prod_{i<j} [(y sum x^a - 1) C_i + 1].
inline TruncSeries gf_multi(std::vector<PopPattern> const& blocks, PartSet const& parts, Truncation trunc) {
    if (blocks.empty()) throw error("multi-pattern needs at least one block");
    TruncSeries total = TruncSeries::zero(trunc);
    TruncSeries prefix = TruncSeries::one(trunc);
    for (auto const& b : blocks) {
        TruncSeries c = gf_consecutive_avoiders(b, parts, trunc);
        total += c * prefix;
        prefix *= detail::quasi_from_avoiders(c, parts.parts());
    }
    return total;
}

/// Multi-pattern of s blocks, each a rise or a fall:
///   (1 - (1 + (y sum x^a - 1)/prod(1 - x^a y))^s) / (1 - y sum x^a).
inline TruncSeries gf_rise_fall_chain(unsigned s, PartSet const& parts, Truncation trunc) {
    if (s == 0) throw error("rise/fall chain needs at least one block");
    auto one = TruncSeries::one(trunc);
    auto sum = elementary(parts, Elementary::sum_xa, trunc);
    auto prod = elementary(parts, Elementary::one_minus_xay_product, trunc);
    auto inner = one + (sum - one) * reciprocal(prod);
    return (one - pow(inner, s)) * reciprocal(one - sum);
}

/// sum over compositions of t^{nlap} x^n y^m = C / (1 - t [(y sum x^a - 1) C + 1]).
inline TruncSeries gf_nlap_distribution(PopPattern const& p, PartSet const& parts, Truncation trunc) {
    detail::require_single_block(p, "nlap distribution");
    if (trunc.nt < 1) throw error("nlap distribution needs a t truncation of at least 1");
    TruncSeries c = gf_consecutive_avoiders(p, parts, trunc);
    TruncSeries d = detail::quasi_from_avoiders(c, parts.parts());
    TruncSeries t = TruncSeries::monomial(trunc, {0, 0, 1});
    return c * reciprocal(TruncSeries::one(trunc) - t * d);
}

/// Which formula gf_avoiders uses for a pattern.
enum class GfRoute { consecutive, concat, shuffle_top, shuffle_bottom };

inline char const* route_name(GfRoute r) {
    switch (r) {
        case GfRoute::consecutive: return "consecutive";
        case GfRoute::concat: return "concat";
        case GfRoute::shuffle_top: return "shuffle-top";
        case GfRoute::shuffle_bottom: return "shuffle-bottom";
    }
    return "?";
}

/// The formula that handles p, if any:
///   one block                                  -> window automaton
///   first block unrelated to the rest          -> concatenation
///   tau - l - nu, l one letter above/below both -> shuffle recursion
inline std::optional<GfRoute> gf_route(PopPattern const& p) {
    auto const& blocks = p.blocks();
    if (blocks.size() == 1) return GfRoute::consecutive;

    auto head = p.subpattern(0, 1).classes_used();
    auto tail = p.subpattern(1, blocks.size()).classes_used();
    bool related = false;
    for (ClassId h : head)
        for (ClassId c : tail)
            if (p.poset().comparable(h, c)) related = true;
    if (!related) return GfRoute::concat;

    if (blocks.size() == 3 && blocks[1].size() == 1) {
        ClassId s = blocks[1].front().class_id;
        auto left = p.subpattern(0, 1).classes_used();
        auto right = p.subpattern(2, 3).classes_used();
        if (left.size() == 1 && right.size() == 1) {
            ClassId l = *left.begin(), r = *right.begin();
            if (l != r && s != l && s != r && !p.poset().comparable(l, r)) {
                if (p.poset().below(l, s) && p.poset().below(r, s)) return GfRoute::shuffle_top;
                if (p.poset().below(s, l) && p.poset().below(s, r)) return GfRoute::shuffle_bottom;
            }
        }
    }
    return std::nullopt;
}

/// Avoidance series of any pattern that gf_route accepts.
inline TruncSeries gf_avoiders(PopPattern const& p, PartSet const& parts, Truncation trunc) {
    auto route = gf_route(p);
    if (!route) throw error("no generating-function route for pattern " + format_pattern(p));
    switch (*route) {
        case GfRoute::consecutive:
            return gf_consecutive_avoiders(p, parts, trunc);
        case GfRoute::concat: {
            auto head = p.subpattern(0, 1);
            auto tail = p.subpattern(1, p.blocks().size());
            return gf_concat(head, tail, parts, trunc, gf_avoiders(tail, parts, trunc));
        }
        case GfRoute::shuffle_top:
        case GfRoute::shuffle_bottom:
            return gf_shuffle(p.subpattern(0, 1), p.subpattern(2, 3),
                              *route == GfRoute::shuffle_top ? Separator::top : Separator::bottom, parts, trunc);
    }
    throw error("unreachable");
}

inline TruncSeries gf_avoiders(GfRequest const& req) { return gf_avoiders(req.pattern, req.parts, req.trunc); }

}  // namespace popcomp
