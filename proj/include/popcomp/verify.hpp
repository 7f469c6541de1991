#pragma once

// Formula-versus-enumeration grid: every generating-function operation is
// evaluated and compared coefficientwise with exhaustive counts.

#include <chrono>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gf_engine.hpp"
#include "oracle.hpp"

namespace popcomp {

struct VerifyCheck {
    std::string operation;  // gf_engine operation exercised
    std::string subject;    // pattern or block list
    bool passed = true;
    std::string detail;     // mismatch coordinates when failed
};

struct VerifyOptions {
    int max_n = 12;
    std::vector<PartSet> part_sets = part_subsets(3);

    static VerifyOptions fast() { return {8, {PartSet{1, 2}, PartSet{1, 3}, PartSet{1, 2, 3}}}; }
};

namespace detail {

inline std::string mismatch_text(PartSet const& parts, Mismatch const& mm, char const* lhs, char const* rhs) {
    std::ostringstream os;
    os << "A=" << parts.str() << " n=" << mm.n << " m=" << mm.m << " " << lhs << "=" << mm.a << " " << rhs
       << "=" << mm.b;
    return os.str();
}

// Runs body(parts) over every part set; body returns an empty string on success.
inline VerifyCheck run_check(std::string op, std::string subject, VerifyOptions const& opt,
                             std::function<std::string(PartSet const&)> const& body) {
    VerifyCheck check{std::move(op), std::move(subject), true, {}};
    for (auto const& parts : opt.part_sets) {
        std::string d;
        try {
            d = body(parts);
        } catch (std::exception const& e) {
            d = "A=" + parts.str() + " threw: " + e.what();
        }
        if (!d.empty()) {
            check.passed = false;
            check.detail = d;
            break;
        }
    }
    return check;
}

inline std::string against_oracle(CountTable const& table, TruncSeries const& s, PartSet const& parts) {
    auto mm = compare_with_series(table, s);
    return mm ? mismatch_text(parts, *mm, "oracle", "series") : std::string{};
}

inline std::string against_series(TruncSeries const& a, TruncSeries const& b, PartSet const& parts) {
    for (auto const& [e, c] : (a - b).terms()) {
        std::ostringstream os;
        os << "A=" << parts.str() << " coefficient (" << e.i << "," << e.j << "," << e.l
           << ") lhs=" << a.coeff(e.i, e.j, e.l) << " rhs=" << b.coeff(e.i, e.j, e.l);
        return os.str();
    }
    return {};
}

}  // namespace detail

inline std::vector<VerifyCheck> run_verify(VerifyOptions const& opt) {
    using detail::against_oracle;
    using detail::against_series;
    using detail::run_check;
    std::vector<VerifyCheck> checks;
    int const N = opt.max_n;
    Truncation const tr = Truncation::xy(N);
    auto incomparable = [](char const* s) { return parse_pattern(s, ParseMode::classes_incomparable); };

    for (char const* text : {"1", "12", "21", "11", "123", "132", "212", "1123"}) {
        auto p = consecutive(text);
        checks.push_back(run_check("gf_consecutive_avoiders", text, opt, [&](PartSet const& A) {
            return against_oracle(avoider_table(p, A, N), gf_consecutive_avoiders(p, A, tr), A);
        }));
    }

    for (char const* text : {"12", "21", "11", "1123"}) {
        auto p = consecutive(text);
        checks.push_back(run_check("gf_quasi_avoiders", text, opt, [&](PartSet const& A) {
            return against_oracle(quasi_avoider_table(p, A, N), gf_quasi_avoiders(p, A, tr), A);
        }));
    }

    {
        auto head = consecutive("1");
        auto tail = parse_pattern("1'2'");
        auto whole = incomparable("1-1'2'");
        checks.push_back(run_check("gf_concat", "1-1'2'", opt, [&](PartSet const& A) {
            auto c = gf_concat(head, tail, A, tr, gf_consecutive_avoiders(tail, A, tr));
            auto closed = TruncSeries::one(tr) + elementary(A, Elementary::sum_xa, tr) *
                                                     reciprocal(elementary(A, Elementary::one_minus_xay_product, tr));
            auto d = against_series(c, closed, A);
            return d.empty() ? against_oracle(avoider_table(whole, A, N), c, A) : d;
        }));
        for (char const* text : {"12-2'1'", "12-2'1'-1''1''", "1-1'2'-2''1''"}) {
            auto p = incomparable(text);
            checks.push_back(run_check("gf_concat", text, opt, [&](PartSet const& A) {
                return against_oracle(avoider_table(p, A, N), gf_avoiders(p, A, tr), A);
            }));
        }
    }

    struct ShufflePair {
        char const* tau;
        char const* nu;
    };
    for (auto sep : {Separator::top, Separator::bottom}) {
        for (auto [t, v] : {ShufflePair{"1", "1"}, ShufflePair{"12", "21"}, ShufflePair{"12", "12"},
                            ShufflePair{"21", "11"}}) {
            auto tau = consecutive(t);
            auto nu = consecutive(v);
            auto p = make_shuffle_pattern({tau, nu}, sep);
            checks.push_back(run_check("gf_shuffle", format_pattern(p), opt, [&](PartSet const& A) {
                return against_oracle(avoider_table(p, A, N), gf_shuffle(tau, nu, sep, A, tr), A);
            }));
        }
    }

    {
        auto p121 = parse_pattern("1'-2-1''");
        checks.push_back(run_check("gf_pop_121", "1'-2-1''", opt, [&](PartSet const& A) {
            auto closed = gf_pop_121(A, tr);
            auto d = against_series(closed, gf_shuffle(consecutive("1"), consecutive("1"), Separator::top, A, tr), A);
            return d.empty() ? against_oracle(avoider_table(p121, A, N), closed, A) : d;
        }));
        auto p212 = parse_pattern("2'-1-2''");
        checks.push_back(run_check("gf_pop_212", "2'-1-2''", opt, [&](PartSet const& A) {
            auto closed = gf_pop_212(A, tr);
            auto d =
                against_series(closed, gf_shuffle(consecutive("1"), consecutive("1"), Separator::bottom, A, tr), A);
            return d.empty() ? against_oracle(avoider_table(p212, A, N), closed, A) : d;
        }));
    }

    std::vector<std::vector<char const*>> block_lists = {
        {"12", "12"}, {"12", "21"}, {"21", "12"}, {"11", "12"}, {"1", "12"}, {"12", "21", "11"}};
    for (auto const& list : block_lists) {
        std::vector<PopPattern> blocks;
        std::string name;
        for (auto b : list) {
            blocks.push_back(consecutive(b));
            name += (name.empty() ? "" : ",") + std::string(b);
        }
        auto p = make_multi_pattern(blocks);
        checks.push_back(run_check("gf_multi", name, opt, [&](PartSet const& A) {
            return against_oracle(avoider_table(p, A, N), gf_multi(blocks, A, tr), A);
        }));
    }

    for (unsigned s = 1; s <= 3; ++s) {
        checks.push_back(run_check("gf_rise_fall_chain", "s=" + std::to_string(s), opt, [&](PartSet const& A) {
            auto closed = gf_rise_fall_chain(s, A, tr);
            for (unsigned mask = 0; mask < (1u << s); ++mask) {
                std::vector<PopPattern> blocks;
                for (unsigned i = 0; i < s; ++i) blocks.push_back(consecutive(mask & (1u << i) ? "21" : "12"));
                auto d = against_series(closed, gf_multi(blocks, A, tr), A);
                if (!d.empty()) return d;
                if (mask == 0 || mask + 1 == (1u << s)) {
                    d = against_oracle(avoider_table(make_multi_pattern(blocks), A, N), closed, A);
                    if (!d.empty()) return d;
                }
            }
            return std::string{};
        }));
    }

    for (char const* text : {"12", "21", "11", "123"}) {
        auto p = consecutive(text);
        int nt = N / static_cast<int>(p.size());
        Truncation trt(N, N, nt);
        checks.push_back(run_check("gf_nlap_distribution", text, opt, [&](PartSet const& A) {
            auto s = gf_nlap_distribution(p, A, trt);
            auto oracle = nlap_table(p, A, N);
            TruncSeries expected(trt);
            for (auto const& [e, c] : oracle) expected.add_term(e, c);
            return against_series(expected, s, A);
        }));
    }

    return checks;
}

/// Prints one line per check and a summary; returns the number of failures.
inline int report_verify(std::vector<VerifyCheck> const& checks, std::ostream& os) {
    int failures = 0;
    for (auto const& c : checks) {
        os << (c.passed ? "PASS " : "FAIL ") << c.operation << " " << c.subject;
        if (!c.passed) {
            os << "  [" << c.detail << "]";
            ++failures;
        }
        os << '\n';
    }
    os << checks.size() - static_cast<std::size_t>(failures) << "/" << checks.size() << " checks passed\n";
    return failures;
}

}  // namespace popcomp
