#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "popcomp/oracle.hpp"

using namespace popcomp;

namespace {

std::vector<std::string> strs(std::vector<Composition> const& cs) {
    std::vector<std::string> out;
    for (auto const& c : cs) out.push_back(c.str());
    return out;
}

}  // namespace

TEST(Enumerate, Examples) {
    EXPECT_EQ(strs(enumerate_compositions(PartSet{1, 2}, 3)), (std::vector<std::string>{"111", "12", "21"}));
    EXPECT_EQ(strs(enumerate_compositions(PartSet{1, 2}, 4)),
              (std::vector<std::string>{"1111", "112", "121", "211", "22"}));
    EXPECT_TRUE(enumerate_compositions(PartSet{2}, 3).empty());
    EXPECT_EQ(strs(enumerate_compositions(PartSet{1, 2}, 4, 2)), std::vector<std::string>{"22"});
    EXPECT_EQ(enumerate_compositions(PartSet{1, 2}, 0).size(), 1u);
    EXPECT_TRUE(enumerate_compositions(PartSet{1, 2}, -1).empty());
    EXPECT_TRUE(enumerate_compositions(PartSet{1, 2}, 3, 0).empty());
}

TEST(Enumerate, FibonacciGrowth) {
    BigInt prev = 1, cur = 1;  // T(0), T(1)
    EXPECT_EQ(count_compositions(PartSet{1, 2}, 1), 1);
    for (int n = 2; n <= 15; ++n) {
        BigInt next = prev + cur;
        EXPECT_EQ(count_compositions(PartSet{1, 2}, n), next) << n;
        EXPECT_EQ(enumerate_compositions(PartSet{1, 2}, n).size(), static_cast<std::size_t>(next));
        prev = cur;
        cur = next;
    }
}

TEST(Enumerate, LexicographicAndValid) {
    PartSet A{1, 3, 4};
    for (int n = 0; n <= 12; ++n) {
        auto cs = enumerate_compositions(A, n);
        ASSERT_TRUE(std::is_sorted(cs.begin(), cs.end(), [](Composition const& a, Composition const& b) {
            return std::lexicographical_compare(a.parts().begin(), a.parts().end(), b.parts().begin(), b.parts().end());
        }));
        for (auto const& c : cs) {
            ASSERT_EQ(std::accumulate(c.parts().begin(), c.parts().end(), 0), n);
            for (int v : c.parts()) ASSERT_TRUE(A.contains(v));
        }
        for (int m = 0; m <= n; ++m)
            for (auto const& c : enumerate_compositions(A, n, m)) ASSERT_EQ(c.size(), static_cast<std::size_t>(m));
    }
}

TEST(Count, AvoiderExamples) {
    PartSet A{1, 2};
    EXPECT_EQ(count_avoiders(A, 4, std::nullopt, parse_pattern("1'-2-1''")), 4);
    EXPECT_EQ(count_avoiders(A, 4, std::nullopt, parse_pattern("12")), 3);
    for (auto const& B : part_subsets(3)) EXPECT_EQ(count_avoiders(B, 0, std::nullopt, parse_pattern("1-32")), 1);
    EXPECT_EQ(count_avoiders(A, 4, 3, parse_pattern("12")), 1);  // 211
}

TEST(Count, QuasiExamples) {
    EXPECT_EQ(count_quasi_avoiders(PartSet{1, 2}, 3, 2, parse_pattern("12")), 1);
    for (int n = 1; n <= 8; ++n) EXPECT_EQ(count_quasi_avoiders(PartSet{1}, n, std::nullopt, parse_pattern("12")), 0);
    EXPECT_THROW(count_quasi_avoiders(PartSet{1, 2}, 3, std::nullopt, parse_pattern("1-2")), error);
}

TEST(Count, NlapHistograms) {
    auto rise = parse_pattern("12");
    EXPECT_EQ(nlap_distribution(PartSet{1, 2}, 3, std::nullopt, rise), (std::map<std::size_t, BigInt>{{0, 2}, {1, 1}}));
    EXPECT_EQ(nlap_distribution(PartSet{1}, 5, std::nullopt, rise), (std::map<std::size_t, BigInt>{{0, 1}}));
    auto h6 = nlap_distribution(PartSet{1, 2}, 6, std::nullopt, rise);
    BigInt total = 0;
    for (auto const& [s, c] : h6) total += c;
    EXPECT_EQ(total, 13);
    // rise-free means weakly decreasing: 222, 2211, 21111, 111111
    EXPECT_EQ(h6.at(0), 4);
    EXPECT_THROW(nlap_distribution(PartSet{1, 2}, 3, std::nullopt, parse_pattern("1-2")), error);
}

TEST(Count, NeverExceedsTotal) {
    std::vector<PopPattern> patterns = {parse_pattern("1'-2-1''"), parse_pattern("12"), parse_pattern("21-2"),
                                        parse_pattern("1-1'2'", ParseMode::classes_incomparable)};
    for (auto const& A : part_subsets(3))
        for (auto const& p : patterns) {
            auto avoid = avoider_table(p, A, 10);
            CountTable all = tabulate(A, 10, "all", [](Composition const&) { return true; });
            EXPECT_EQ(avoid.at(0, 0), 1);
            for (int n = 0; n <= 10; ++n) {
                ASSERT_LE(avoid.total(n), all.total(n));
                ASSERT_EQ(all.total(n), count_compositions(A, n));
                for (int m = 0; m <= n; ++m) ASSERT_TRUE(avoid.entries.count({n, m}));
            }
        }
}

TEST(Count, ShardsByFirstPartSumToWhole) {
    // Splitting by first part and summing must reproduce the sequential count.
    auto p = parse_pattern("1'-2-1''");
    PartSet A{1, 2, 3};
    Matcher matcher(p);
    for (int n = 1; n <= 12; ++n) {
        BigInt sharded = 0;
        for (int a : A.parts())
            for (auto const& rest : enumerate_compositions(A, n - a)) {
                std::vector<int> parts{a};
                parts.insert(parts.end(), rest.parts().begin(), rest.parts().end());
                if (matcher.avoids(Composition(parts))) sharded += 1;
            }
        ASSERT_EQ(sharded, count_avoiders(A, n, std::nullopt, p));
    }
}

TEST(Equivalence, ReverseOfDashedRise) {
    auto r = check_equivalence(parse_pattern("21-2"), parse_pattern("2-12"), PartSet{1, 2, 3}, 9);
    EXPECT_TRUE(r.equivalent());
    EXPECT_EQ(r.a.max_n, 9);
}

TEST(Equivalence, IdenticalPatterns) {
    auto p = parse_pattern("1'-2-1''");
    EXPECT_TRUE(check_equivalence(p, p, PartSet{1, 2, 3}, 8).equivalent());
}

TEST(Equivalence, SwappedMultiBlocks) {
    auto a = make_multi_pattern({consecutive("12"), consecutive("21")});
    auto b = make_multi_pattern({consecutive("21"), consecutive("12")});
    EXPECT_TRUE(check_equivalence(a, b, PartSet{1, 2}, 10).equivalent());
}

TEST(Equivalence, ReportsFirstMismatch) {
    auto r = check_equivalence(parse_pattern("12"), parse_pattern("11"), PartSet{1, 2}, 6);
    ASSERT_FALSE(r.equivalent());
    // n=2: 11 avoids 12 but not 11; 2 avoids both.
    EXPECT_EQ(r.mismatch->n, 2);
    EXPECT_EQ(r.mismatch->m, 2);
    EXPECT_EQ(r.mismatch->a, r.a.at(2, 2));
    EXPECT_EQ(r.mismatch->b, r.b.at(2, 2));
    EXPECT_NE(r.mismatch->a, r.mismatch->b);
}

TEST(Equivalence, ReversalOfAssortedPatterns) {
    for (char const* text : {"123", "132", "1-32", "21-2", "1'-2-1''", "2'-1-2''", "112", "12-1", "2-1-3", "11-2"}) {
        auto p = parse_pattern(text);
        EXPECT_TRUE(check_equivalence(p, reverse_pattern(p), PartSet{1, 2, 3}, 9).equivalent()) << text;
    }
}

TEST(CompareWithSeries, DetectsMismatch) {
    auto table = avoider_table(parse_pattern("12"), PartSet{1, 2}, 4);
    TruncSeries s(Truncation::xy(4));
    for (auto const& [nm, v] : table.entries) s.add_term({nm.first, nm.second, 0}, v);
    EXPECT_FALSE(compare_with_series(table, s).has_value());
    s.add_term({3, 2, 0}, 1);
    auto mm = compare_with_series(table, s);
    ASSERT_TRUE(mm.has_value());
    EXPECT_EQ(mm->n, 3);
    EXPECT_EQ(mm->m, 2);
}

TEST(PartSubsets, AllNonEmpty) {
    auto s = part_subsets(3);
    EXPECT_EQ(s.size(), 7u);
    EXPECT_EQ(s.front().str(), "{1}");
    EXPECT_EQ(s.back().str(), "{1,2,3}");
}
