#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "popcomp/matcher.hpp"
#include "popcomp/oracle.hpp"

using namespace popcomp;

namespace {

Composition C(char const* s) { return composition_from_string(s); }

// Independent occurrence count: try every increasing index tuple and check
// block adjacency and every pairwise letter relation directly.
std::size_t brute_occurrences(Composition const& c, PopPattern const& p) {
    auto letters = p.letters();
    std::size_t const k = letters.size();
    std::vector<bool> joined(k, false);  // letter i and i+1 must be adjacent
    std::size_t pos = 0;
    for (auto const& b : p.blocks()) {
        for (std::size_t i = 0; i + 1 < b.size(); ++i) joined[pos + i] = true;
        pos += b.size();
    }
    std::size_t count = 0;
    std::vector<std::size_t> idx(k);
    auto rec = [&](auto&& self, std::size_t i, std::size_t from) -> void {
        if (i == k) {
            for (std::size_t a = 0; a < k; ++a)
                for (std::size_t b = 0; b < k; ++b) {
                    int u = c[idx[a]], v = c[idx[b]];
                    switch (p.compare(letters[a], letters[b])) {
                        case Relation::less: if (!(u < v)) return; break;
                        case Relation::equal: if (u != v) return; break;
                        case Relation::greater: if (!(u > v)) return; break;
                        case Relation::incomparable: break;
                    }
                }
            ++count;
            return;
        }
        for (std::size_t j = from; j < c.size(); ++j) {
            if (i > 0 && joined[i - 1] && j != idx[i - 1] + 1) continue;
            idx[i] = j;
            self(self, i + 1, j + 1);
        }
    };
    rec(rec, 0, 0);
    return count;
}

std::vector<std::string> occurrence_strings(Composition const& c, PopPattern const& p) {
    std::vector<std::string> out;
    for (auto const& o : occurrences(c, p)) out.push_back(occurrence_values(c, o).str());
    std::sort(out.begin(), out.end());
    return out;
}

// Exhaustive maximum number of pairwise disjoint windows.
std::size_t brute_nlap(Composition const& c, PopPattern const& p) {
    std::vector<std::size_t> starts;
    for (auto const& o : occurrences(c, p)) starts.push_back(o.windows.front().start);
    std::size_t const len = p.size(), w = starts.size();
    std::size_t best = 0;
    for (unsigned long mask = 0; mask < (1ul << w); ++mask) {
        std::vector<std::size_t> chosen;
        for (std::size_t i = 0; i < w; ++i)
            if (mask & (1ul << i)) chosen.push_back(starts[i]);
        bool ok = true;
        for (std::size_t i = 1; i < chosen.size(); ++i)
            if (chosen[i] < chosen[i - 1] + len) ok = false;
        if (ok) best = std::max(best, chosen.size());
    }
    return best;
}

}  // namespace

TEST(Occurrences, DashedDropAfterSmallerLetter) {
    auto c = C("241874");
    auto p = parse_pattern("1-32");
    auto found = occurrence_strings(c, p);
    for (char const* v : {"287", "274", "487"})
        EXPECT_NE(std::find(found.begin(), found.end(), v), found.end()) << v;
    // The part 1 precedes both drops and is smaller than either.
    EXPECT_EQ(found, (std::vector<std::string>{"174", "187", "274", "287", "487"}));
    EXPECT_EQ(brute_occurrences(c, p), 5u);
    for (auto const& o : occurrences(c, p)) EXPECT_NE(o.indices(), (std::vector<std::size_t>{0, 3, 5}));
}

TEST(Occurrences, MultiPatternCountsRepeatedValues) {
    auto c = C("113425");
    auto p = parse_pattern("1-1'2'", ParseMode::classes_incomparable);
    EXPECT_EQ(occurrence_strings(c, p), (std::vector<std::string>{"113", "125", "125", "134", "134", "325", "425"}));
}

TEST(Occurrences, PeakShuffle) {
    auto c = C("31421");
    auto p = parse_pattern("1'-2-1''");
    EXPECT_EQ(occurrence_strings(c, p), (std::vector<std::string>{"121", "141", "142", "341", "342"}));
}

TEST(Occurrences, LexicographicOrder) {
    auto occ = occurrences(C("31421"), parse_pattern("1'-2-1''"));
    EXPECT_TRUE(std::is_sorted(occ.begin(), occ.end()));
}

TEST(Avoids, Examples) {
    EXPECT_TRUE(avoids(C("241874"), parse_pattern("312")));
    EXPECT_TRUE(avoids(Composition{}, parse_pattern("1")));
    EXPECT_TRUE(avoids(Composition{}, parse_pattern("1'-2-1''")));
    EXPECT_FALSE(avoids(C("241874"), parse_pattern("1-32")));
}

TEST(QuasiAvoids, Examples) {
    auto p = parse_pattern("1123");
    EXPECT_TRUE(quasi_avoids(C("4112234"), p));
    EXPECT_FALSE(quasi_avoids(C("5223411"), p));
    EXPECT_FALSE(quasi_avoids(C("1123346"), p));
    EXPECT_FALSE(quasi_avoids(Composition{}, p));
    EXPECT_THROW(quasi_avoids(C("12"), parse_pattern("1-2")), error);
}

TEST(Nlap, Examples) {
    auto drop = parse_pattern("21");
    EXPECT_EQ(nlap(C("333211"), drop), 1u);
    EXPECT_EQ(nlap(C("13321111432111"), drop), 3u);
    EXPECT_EQ(nlap(C("111"), parse_pattern("12")), 0u);
    EXPECT_THROW(nlap(C("12"), parse_pattern("1-2")), error);
}

TEST(MatcherProperties, BacktrackingAgreesWithBruteForce) {
    std::vector<PopPattern> patterns = {
        parse_pattern("1-32"), parse_pattern("1'-2-1''"), parse_pattern("2'-1-2''"),
        parse_pattern("1-1'2'", ParseMode::classes_incomparable), parse_pattern("21-2"), parse_pattern("11-1"),
        parse_pattern("1'2'-3-2''1''"), parse_pattern("1-2-1")};
    std::mt19937 rng(99);
    for (int iter = 0; iter < 400; ++iter) {
        std::vector<int> parts(static_cast<std::size_t>(rng() % 9));
        for (auto& v : parts) v = 1 + static_cast<int>(rng() % 4);
        Composition c(parts);
        for (auto const& p : patterns) {
            auto occ = occurrences(c, p);
            ASSERT_EQ(occ.size(), brute_occurrences(c, p)) << c.str() << " " << format_pattern(p);
            ASSERT_EQ(avoids(c, p), occ.empty());
            ASSERT_EQ(avoids(c, p), avoids(reverse_composition(c), reverse_pattern(p)));
        }
    }
}

TEST(MatcherProperties, NlapMatchesExhaustiveSubsets) {
    PartSet A{1, 2, 3};
    for (char const* text : {"21", "12", "11", "123", "121"}) {
        auto p = parse_pattern(text);
        for (int n = 0; n <= 10; ++n)
            for (auto const& c : enumerate_compositions(A, n)) ASSERT_EQ(nlap(c, p), brute_nlap(c, p)) << c.str();
    }
}

TEST(MatcherProperties, NlapMonotoneUnderAppending) {
    auto p = parse_pattern("21");
    PartSet A{1, 2, 3};
    for (int n = 0; n <= 8; ++n)
        for (auto const& c : enumerate_compositions(A, n))
            for (int a : A.parts()) {
                auto longer = c.parts();
                longer.push_back(a);
                ASSERT_LE(nlap(c, p), nlap(Composition(longer), p));
            }
}

TEST(MatcherProperties, QuasiAvoiderPrefixAvoids) {
    PartSet A{1, 2, 3};
    for (char const* text : {"12", "21", "11", "1123", "121"}) {
        auto p = parse_pattern(text);
        for (int n = 0; n <= 10; ++n)
            for (auto const& c : enumerate_compositions(A, n)) {
                if (!quasi_avoids(c, p)) continue;
                ASSERT_FALSE(avoids(c, p));
                std::vector<int> prefix(c.parts().begin(), c.parts().end() - 1);
                ASSERT_TRUE(avoids(Composition(prefix), p)) << c.str();
            }
    }
}

TEST(MatcherProperties, RiseOccurrencesAreAdjacentRises) {
    auto p = parse_pattern("12");
    std::mt19937 rng(3);
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<int> parts(static_cast<std::size_t>(rng() % 10));
        for (auto& v : parts) v = 1 + static_cast<int>(rng() % 4);
        Composition c(parts);
        std::vector<std::size_t> rises, found;
        for (std::size_t i = 0; i + 1 < c.size(); ++i)
            if (c[i] < c[i + 1]) rises.push_back(i);
        for (auto const& o : occurrences(c, p)) found.push_back(o.windows.front().start);
        ASSERT_EQ(found, rises);
    }
}

TEST(MatcherProperties, LinearizationEquivalence) {
    PartSet A{1, 2, 3};
    for (char const* text : {"2'-1-2''", "1'-2-1''", "1'2'-3-2''1''"}) {
        auto p = parse_pattern(text);
        auto lin = linearize_pop(p);
        for (int n = 0; n <= 10; ++n)
            for (auto const& c : enumerate_compositions(A, n)) {
                bool all = std::all_of(lin.begin(), lin.end(), [&](PopPattern const& q) { return avoids(c, q); });
                ASSERT_EQ(avoids(c, p), all) << text << " " << c.str();
            }
    }
}
