#pragma once

// Command-line front end. Every subcommand is a pure function of argv; the
// document goes to `out`, diagnostics to `err`.
//
// Exit codes: 0 success, 1 verification mismatch, 2 usage or parse error.

#include <algorithm>
#include <chrono>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gf_engine.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "verify.hpp"

namespace popcomp::cli {

enum class Format { plain, json, csv };

class usage_error : public error {
public:
    usage_error(std::string const& flag, std::string const& what) : error(flag + ": " + what) {}
};

inline PartSet parse_parts(std::string const& text, std::string const& flag = "--parts") {
    std::vector<int> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            int v = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            parts.push_back(v);
        } catch (std::exception const&) {
            throw usage_error(flag, "'" + item + "' is not an integer");
        }
    }
    std::sort(parts.begin(), parts.end());
    if (std::adjacent_find(parts.begin(), parts.end()) != parts.end()) throw usage_error(flag, "repeated part");
    try {
        return PartSet(std::move(parts));
    } catch (error const& e) {
        throw usage_error(flag, e.what());
    }
}

inline PopPattern parse_flag_pattern(std::string const& text, bool incomparable, std::string const& flag) {
    try {
        return parse_pattern(text, incomparable ? ParseMode::classes_incomparable : ParseMode::primes);
    } catch (error const& e) {
        throw usage_error(flag, e.what());
    }
}

inline PopPattern parse_flag_block(std::string const& text, std::string const& flag) {
    try {
        return consecutive(text);
    } catch (error const& e) {
        throw usage_error(flag, e.what());
    }
}

inline nlohmann::json parts_json(PartSet const& p) { return p.parts(); }

inline void write_series_document(std::ostream& out, Format fmt, nlohmann::json header, TruncSeries const& s) {
    switch (fmt) {
        case Format::json:
            header["trunc"] = {{"x", s.trunc().nx}, {"y", s.trunc().ny}, {"t", s.trunc().nt}};
            header["terms"] = series_to_json(s);
            out << header.dump(2) << '\n';
            break;
        case Format::csv:
            write_series_csv(out, s);
            break;
        case Format::plain:
            for (auto const& [k, v] : header.items()) out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
            out << "truncation: x<=" << s.trunc().nx << " y<=" << s.trunc().ny << " t<=" << s.trunc().nt << '\n';
            write_series_plain(out, s);
            break;
    }
}

inline int run(int argc, char const* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Counts compositions avoiding partially ordered patterns", "popcomp"};
    app.require_subcommand(1);
    std::string format_text = "plain";
    app.add_option("--format", format_text, "Output format")
        ->check(CLI::IsMember({"plain", "json", "csv"}));

    std::string parts_text, pattern_text;
    bool incomparable = false;
    int n = 0, max_n = 0, tx = 0;
    std::optional<int> m, ty;
    int tt = 1;
    std::string mode = "both";

    auto add_parts = [&](CLI::App* sub) { sub->add_option("--parts", parts_text, "Allowed parts, e.g. 1,2,3")->required(); };
    auto add_trunc = [&](CLI::App* sub) {
        sub->add_option("--trunc-x", tx, "Maximum x degree (size)")->required()->check(CLI::NonNegativeNumber);
        sub->add_option("--trunc-y", ty, "Maximum y degree (parts); defaults to --trunc-x")
            ->check(CLI::NonNegativeNumber);
    };
    auto add_mode_flag = [&](CLI::App* sub) {
        sub->add_flag("--incomparable", incomparable, "Parse with all classes mutually incomparable");
    };

    auto* enumerate = app.add_subcommand("enumerate", "List compositions of n with parts in A");
    add_parts(enumerate);
    enumerate->add_option("--n", n, "Size")->required()->check(CLI::NonNegativeNumber);
    enumerate->add_option("--m", m, "Number of parts")->check(CLI::NonNegativeNumber);

    auto* count = app.add_subcommand("count", "Avoider counts per (n, m)");
    count->add_option("--pattern", pattern_text, "Pattern")->required();
    add_parts(count);
    count->add_option("--max-n", max_n, "Largest size")->required()->check(CLI::NonNegativeNumber);
    count->add_option("--mode", mode, "oracle, gf or both")->check(CLI::IsMember({"oracle", "gf", "both"}));
    add_mode_flag(count);

    auto* gf = app.add_subcommand("gf", "Avoidance generating function");
    gf->add_option("--pattern", pattern_text, "Pattern")->required();
    add_parts(gf);
    add_trunc(gf);
    add_mode_flag(gf);

    std::string tau_text, nu_text, separator = "top";
    auto* shuffle = app.add_subcommand("shuffle-gf", "Generating function of tau-l-nu or tau-1-nu");
    shuffle->add_option("--tau", tau_text, "Left block")->required();
    shuffle->add_option("--nu", nu_text, "Right block")->required();
    shuffle->add_option("--separator", separator, "top or bottom")->check(CLI::IsMember({"top", "bottom"}));
    add_parts(shuffle);
    add_trunc(shuffle);

    std::string blocks_text;
    auto* multi = app.add_subcommand("multi-gf", "Generating function of a multi-pattern");
    multi->add_option("--blocks", blocks_text, "Comma-separated consecutive blocks")->required();
    add_parts(multi);
    add_trunc(multi);

    bool y_one = false;
    auto* nlap_cmd = app.add_subcommand("nlap", "Distribution of the maximum number of non-overlapping occurrences");
    nlap_cmd->add_option("--pattern", pattern_text, "Consecutive pattern")->required();
    add_parts(nlap_cmd);
    add_trunc(nlap_cmd);
    nlap_cmd->add_option("--trunc-t", tt, "Maximum t degree")->check(CLI::PositiveNumber);
    nlap_cmd->add_flag("--y-one", y_one, "Sum over the number of parts");
    add_mode_flag(nlap_cmd);

    std::string a_text, b_text;
    auto* equiv = app.add_subcommand("equiv", "Compare avoider counts of two patterns");
    equiv->add_option("--a", a_text, "First pattern")->required();
    equiv->add_option("--b", b_text, "Second pattern")->required();
    add_parts(equiv);
    equiv->add_option("--max-n", max_n, "Largest size")->required()->check(CLI::NonNegativeNumber);
    add_mode_flag(equiv);

    bool fast = false;
    auto* verify = app.add_subcommand("verify", "Check every formula against enumeration");
    verify->add_flag("--fast", fast, "Smaller grid");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (CLI::ParseError const& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << '\n';
        return 2;
    }

    Format fmt = format_text == "json" ? Format::json : format_text == "csv" ? Format::csv : Format::plain;

    try {
        auto trunc = [&] { return Truncation(tx, ty.value_or(tx), 0); };

        if (*enumerate) {
            auto A = parse_parts(parts_text);
            auto list = enumerate_compositions(A, n, m);
            if (fmt == Format::json) {
                nlohmann::json doc;
                doc["command"] = "enumerate";
                doc["parts"] = parts_json(A);
                doc["n"] = n;
                doc["m"] = m ? nlohmann::json(*m) : nlohmann::json(nullptr);
                doc["count"] = list.size();
                doc["compositions"] = nlohmann::json::array();
                for (auto const& c : list) doc["compositions"].push_back(c.parts());
                out << doc.dump(2) << '\n';
            } else if (fmt == Format::csv) {
                out << "index,m,composition\n";
                for (std::size_t i = 0; i < list.size(); ++i)
                    out << i << ',' << list[i].size() << ',' << list[i].str() << '\n';
            } else {
                out << "compositions of " << n << (m ? " with " + std::to_string(*m) + " parts" : "")
                    << " over " << A.str() << ": " << list.size() << '\n';
                for (auto const& c : list) out << c.str() << '\n';
            }
            return 0;
        }

        if (*count) {
            auto A = parse_parts(parts_text);
            auto p = parse_flag_pattern(pattern_text, incomparable, "--pattern");
            bool want_oracle = mode != "gf", want_gf = mode != "oracle";
            std::optional<CountTable> table;
            std::optional<TruncSeries> series;
            if (want_oracle) table = avoider_table(p, A, max_n);
            if (want_gf) {
                if (!gf_route(p)) throw usage_error("--pattern", "no generating-function route for " + format_pattern(p));
                series = gf_avoiders(p, A, Truncation::xy(max_n));
            }
            int mismatches = 0;
            struct Row {
                int n;
                std::optional<int> m;
                std::optional<BigInt> oracle, gf;
            };
            std::vector<Row> rows;
            for (int i = 0; i <= max_n; ++i) {
                BigInt to = 0, tg = 0;
                for (int j = 0; j <= i; ++j) {
                    Row r{i, j, {}, {}};
                    if (table) to += *(r.oracle = table->at(i, j));
                    if (series) tg += *(r.gf = series->coeff(i, j));
                    if (r.oracle && r.gf && *r.oracle != *r.gf) ++mismatches;
                    rows.push_back(r);
                }
                Row total{i, std::nullopt, {}, {}};
                if (table) total.oracle = to;
                if (series) total.gf = tg;
                rows.push_back(total);
            }
            auto status = [](Row const& r) {
                return (r.oracle && r.gf) ? (*r.oracle == *r.gf ? "ok" : "MISMATCH") : "-";
            };
            if (fmt == Format::json) {
                nlohmann::json doc;
                doc["command"] = "count";
                doc["pattern"] = format_pattern(p);
                doc["parts"] = parts_json(A);
                doc["mode"] = mode;
                doc["max_n"] = max_n;
                doc["mismatches"] = mismatches;
                doc["rows"] = nlohmann::json::array();
                for (auto const& r : rows) {
                    nlohmann::json row;
                    row["n"] = r.n;
                    row["m"] = r.m ? nlohmann::json(*r.m) : nlohmann::json("all");
                    if (r.oracle) row["oracle"] = decimal(*r.oracle);
                    if (r.gf) row["gf"] = decimal(*r.gf);
                    doc["rows"].push_back(row);
                }
                out << doc.dump(2) << '\n';
            } else {
                char sep = fmt == Format::csv ? ',' : ' ';
                if (fmt == Format::plain)
                    out << "pattern " << format_pattern(p) << " parts " << A.str() << " mode " << mode << '\n';
                out << "n" << sep << "m" << sep << "oracle" << sep << "gf" << sep << "status\n";
                for (auto const& r : rows)
                    out << r.n << sep << (r.m ? std::to_string(*r.m) : "all") << sep
                        << (r.oracle ? decimal(*r.oracle) : "-") << sep << (r.gf ? decimal(*r.gf) : "-") << sep
                        << status(r) << '\n';
            }
            if (mismatches) {
                err << mismatches << " mismatching entries\n";
                return 1;
            }
            return 0;
        }

        if (*gf) {
            auto A = parse_parts(parts_text);
            auto p = parse_flag_pattern(pattern_text, incomparable, "--pattern");
            auto route = gf_route(p);
            if (!route) throw usage_error("--pattern", "no generating-function route for " + format_pattern(p));
            auto s = gf_avoiders(p, A, trunc());
            write_series_document(out, fmt,
                                  {{"command", "gf"}, {"pattern", format_pattern(p)}, {"parts", parts_json(A)},
                                   {"route", route_name(*route)}},
                                  s);
            return 0;
        }

        if (*shuffle) {
            auto A = parse_parts(parts_text);
            auto tau = parse_flag_block(tau_text, "--tau");
            auto nu = parse_flag_block(nu_text, "--nu");
            auto sep = separator == "top" ? Separator::top : Separator::bottom;
            auto s = gf_shuffle(tau, nu, sep, A, trunc());
            write_series_document(out, fmt,
                                  {{"command", "shuffle-gf"},
                                   {"pattern", format_pattern(make_shuffle_pattern({tau, nu}, sep))},
                                   {"parts", parts_json(A)}},
                                  s);
            return 0;
        }

        if (*multi) {
            auto A = parse_parts(parts_text);
            std::vector<PopPattern> blocks;
            std::stringstream ss(blocks_text);
            std::string item;
            while (std::getline(ss, item, ',')) blocks.push_back(parse_flag_block(item, "--blocks"));
            if (blocks.empty()) throw usage_error("--blocks", "no blocks given");
            auto s = gf_multi(blocks, A, trunc());
            write_series_document(out, fmt,
                                  {{"command", "multi-gf"},
                                   {"pattern", format_pattern(make_multi_pattern(blocks))},
                                   {"parts", parts_json(A)}},
                                  s);
            return 0;
        }

        if (*nlap_cmd) {
            auto A = parse_parts(parts_text);
            auto p = parse_flag_pattern(pattern_text, incomparable, "--pattern");
            if (!p.single_block()) throw usage_error("--pattern", "nlap needs a consecutive pattern");
            auto s = gf_nlap_distribution(p, A, Truncation(tx, ty.value_or(tx), tt));
            if (y_one) s = s.at_y_one();
            write_series_document(out, fmt,
                                  {{"command", "nlap"}, {"pattern", format_pattern(p)}, {"parts", parts_json(A)}},
                                  s);
            return 0;
        }

        if (*equiv) {
            auto A = parse_parts(parts_text);
            auto pa = parse_flag_pattern(a_text, incomparable, "--a");
            auto pb = parse_flag_pattern(b_text, incomparable, "--b");
            auto report = check_equivalence(pa, pb, A, max_n);
            if (fmt == Format::json) {
                nlohmann::json doc;
                doc["command"] = "equiv";
                doc["a"] = format_pattern(pa);
                doc["b"] = format_pattern(pb);
                doc["parts"] = parts_json(A);
                doc["max_n"] = max_n;
                doc["equivalent"] = report.equivalent();
                if (report.mismatch)
                    doc["first_mismatch"] = {{"n", report.mismatch->n},
                                             {"m", report.mismatch->m},
                                             {"count_a", decimal(report.mismatch->a)},
                                             {"count_b", decimal(report.mismatch->b)}};
                out << doc.dump(2) << '\n';
            } else if (fmt == Format::csv) {
                out << "n,m,count_a,count_b\n";
                for (int i = 0; i <= max_n; ++i)
                    for (int j = 0; j <= i; ++j)
                        out << i << ',' << j << ',' << report.a.at(i, j) << ',' << report.b.at(i, j) << '\n';
            } else if (report.equivalent()) {
                out << format_pattern(pa) << " and " << format_pattern(pb) << " over " << A.str()
                    << ": equivalent up to n=" << max_n << '\n';
            } else {
                auto const& mm = *report.mismatch;
                out << format_pattern(pa) << " and " << format_pattern(pb) << " over " << A.str()
                    << ": first mismatch at n=" << mm.n << " m=" << mm.m << " (" << mm.a << " vs " << mm.b << ")\n";
            }
            return report.equivalent() ? 0 : 1;
        }

        if (*verify) {
            auto checks = run_verify(fast ? VerifyOptions::fast() : VerifyOptions{});
            int failures = 0;
            for (auto const& c : checks) failures += c.passed ? 0 : 1;
            if (fmt == Format::json) {
                nlohmann::json doc;
                doc["command"] = "verify";
                doc["failures"] = failures;
                doc["checks"] = nlohmann::json::array();
                for (auto const& c : checks)
                    doc["checks"].push_back({{"operation", c.operation},
                                             {"subject", c.subject},
                                             {"passed", c.passed},
                                             {"detail", c.detail}});
                out << doc.dump(2) << '\n';
            } else if (fmt == Format::csv) {
                out << "operation,subject,status,detail\n";
                for (auto const& c : checks)
                    out << c.operation << ",\"" << c.subject << "\"," << (c.passed ? "pass" : "fail") << ",\""
                        << c.detail << "\"\n";
            } else {
                report_verify(checks, out);
            }
            return failures ? 1 : 0;
        }
    } catch (usage_error const& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (error const& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace popcomp::cli
