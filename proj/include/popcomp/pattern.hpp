#pragma once

// Partially ordered patterns (POPs) over compositions: the data model, the
// textual pattern language, structural constructors and trivial bijections.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace popcomp {

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class pattern_syntax_error : public error {
public:
    pattern_syntax_error(std::string const& message, std::size_t position)
        : error(message + " at position " + std::to_string(position)),
          position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

using ClassId = int;

struct Letter {
    int value = 1;      // rank inside its comparability class
    ClassId class_id = 0;  // number of primes in the pattern language

    friend auto operator<=>(Letter const&, Letter const&) = default;
};

enum class Relation { less, equal, greater, incomparable };

/// Strict order between comparability classes: (lo, hi) means every letter
/// of class lo is smaller than every letter of class hi. Always stored
/// transitively closed.
class ClassPoset {
public:
    ClassPoset() = default;

    ClassPoset(std::set<ClassId> classes, std::set<std::pair<ClassId, ClassId>> relations)
        : classes_(std::move(classes)), relations_(std::move(relations)) {
        close();
    }

    std::set<ClassId> const& classes() const noexcept { return classes_; }
    std::set<std::pair<ClassId, ClassId>> const& relations() const noexcept { return relations_; }

    bool below(ClassId lo, ClassId hi) const { return relations_.count({lo, hi}) != 0; }

    bool comparable(ClassId a, ClassId b) const {
        return a == b || below(a, b) || below(b, a);
    }

    /// Restriction to a subset of classes.
    ClassPoset restricted(std::set<ClassId> const& keep) const {
        std::set<std::pair<ClassId, ClassId>> rel;
        for (auto const& r : relations_)
            if (keep.count(r.first) && keep.count(r.second)) rel.insert(r);
        std::set<ClassId> cls;
        for (ClassId c : classes_)
            if (keep.count(c)) cls.insert(c);
        return ClassPoset(std::move(cls), std::move(rel));
    }

    friend bool operator==(ClassPoset const&, ClassPoset const&) = default;

private:
    void close() {
        for (auto const& r : relations_) {
            classes_.insert(r.first);
            classes_.insert(r.second);
        }
        // Warshall over the class set.
        for (ClassId k : classes_)
            for (ClassId i : classes_)
                if (relations_.count({i, k}))
                    for (ClassId j : classes_)
                        if (relations_.count({k, j})) relations_.insert({i, j});
        for (auto const& r : relations_)
            if (r.first == r.second)
                throw error("class order is cyclic (class " + std::to_string(r.first) + ")");
    }

    std::set<ClassId> classes_;
    std::set<std::pair<ClassId, ClassId>> relations_;
};

using Block = std::vector<Letter>;

/// A dashed sequence of letters over a partially ordered alphabet. Values are
/// kept normalized: inside each class they form a contiguous range whose
/// start sits one above the highest value of every class declared below it.
class PopPattern {
public:
    PopPattern(std::vector<Block> blocks, ClassPoset poset)
        : blocks_(std::move(blocks)) {
        if (blocks_.empty()) throw error("pattern has no blocks");
        std::set<ClassId> used;
        for (auto const& b : blocks_) {
            if (b.empty()) throw error("pattern has an empty block");
            for (auto const& l : b) {
                if (l.value < 1) throw error("letter value must be positive");
                if (l.class_id < 0) throw error("class id must be non-negative");
                used.insert(l.class_id);
            }
        }
        auto cls = poset.classes();
        cls.insert(used.begin(), used.end());
        poset_ = ClassPoset(std::move(cls), poset.relations()).restricted(used);
        normalize();
    }

    std::vector<Block> const& blocks() const noexcept { return blocks_; }
    ClassPoset const& poset() const noexcept { return poset_; }

    std::size_t size() const {
        std::size_t n = 0;
        for (auto const& b : blocks_) n += b.size();
        return n;
    }

    bool single_block() const noexcept { return blocks_.size() == 1; }

    std::vector<Letter> letters() const {
        std::vector<Letter> out;
        for (auto const& b : blocks_) out.insert(out.end(), b.begin(), b.end());
        return out;
    }

    std::set<ClassId> classes_used() const {
        std::set<ClassId> out;
        for (auto const& b : blocks_)
            for (auto const& l : b) out.insert(l.class_id);
        return out;
    }

    Relation compare(Letter const& u, Letter const& v) const {
        if (u.class_id == v.class_id) {
            if (u.value < v.value) return Relation::less;
            if (u.value > v.value) return Relation::greater;
            return Relation::equal;
        }
        if (poset_.below(u.class_id, v.class_id)) return Relation::less;
        if (poset_.below(v.class_id, u.class_id)) return Relation::greater;
        return Relation::incomparable;
    }

    /// Pattern made of the blocks [first, last), with the poset restricted
    /// to the classes they use.
    PopPattern subpattern(std::size_t first, std::size_t last) const {
        if (first >= last || last > blocks_.size()) throw error("invalid block range");
        return PopPattern({blocks_.begin() + static_cast<std::ptrdiff_t>(first),
                           blocks_.begin() + static_cast<std::ptrdiff_t>(last)},
                          poset_);
    }

    friend bool operator==(PopPattern const&, PopPattern const&) = default;

private:
    void normalize() {
        std::map<ClassId, std::set<int>> values;
        for (auto const& b : blocks_)
            for (auto const& l : b) values[l.class_id].insert(l.value);

        // Bases in topological order of the class poset.
        std::map<ClassId, int> base;
        std::set<ClassId> pending = poset_.classes();
        while (!pending.empty()) {
            bool progressed = false;
            for (auto it = pending.begin(); it != pending.end();) {
                ClassId c = *it;
                bool ready = true;
                int b = 1;
                for (auto const& r : poset_.relations()) {
                    if (r.second != c) continue;
                    auto f = base.find(r.first);
                    if (f == base.end()) {
                        ready = false;
                        break;
                    }
                    b = std::max(b, f->second + static_cast<int>(values[r.first].size()));
                }
                if (ready) {
                    base[c] = b;
                    it = pending.erase(it);
                    progressed = true;
                } else {
                    ++it;
                }
            }
            if (!progressed) throw error("class order is cyclic");
        }

        std::map<ClassId, std::map<int, int>> remap;
        for (auto const& [c, vals] : values) {
            int next = base[c];
            for (int v : vals) remap[c][v] = next++;
        }
        for (auto& b : blocks_)
            for (auto& l : b) l.value = remap[l.class_id][l.value];
    }

    std::vector<Block> blocks_;
    ClassPoset poset_;
};

/// A composition: a finite sequence of positive parts. Empty is allowed.
class Composition {
public:
    Composition() = default;
    explicit Composition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (int p : parts_)
            if (p < 1) throw error("composition parts must be positive");
    }
    Composition(std::initializer_list<int> parts) : Composition(std::vector<int>(parts)) {}

    std::vector<int> const& parts() const noexcept { return parts_; }
    std::size_t size() const noexcept { return parts_.size(); }
    bool empty() const noexcept { return parts_.empty(); }
    int sum() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
    int operator[](std::size_t i) const { return parts_[i]; }

    /// Digits concatenated, e.g. "31421"; parts above 9 are parenthesized.
    std::string str() const {
        std::string s;
        for (int p : parts_) s += p <= 9 ? std::to_string(p) : "(" + std::to_string(p) + ")";
        return s;
    }

    friend auto operator<=>(Composition const&, Composition const&) = default;

private:
    std::vector<int> parts_;
};

/// Parses "31421"-style strings; "(12)" denotes a multi-digit part.
inline Composition composition_from_string(std::string_view text) {
    std::vector<int> parts;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        if (ch == '(') {
            auto close = text.find(')', i);
            if (close == std::string_view::npos || close == i + 1)
                throw pattern_syntax_error("unterminated part", i);
            parts.push_back(std::stoi(std::string(text.substr(i + 1, close - i - 1))));
            i = close;
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            parts.push_back(ch - '0');
        } else {
            throw pattern_syntax_error("unexpected character in composition", i);
        }
    }
    return Composition(std::move(parts));
}

class PartSet {
public:
    explicit PartSet(std::vector<int> parts) : parts_(std::move(parts)) {
        if (parts_.empty()) throw error("part set must not be empty");
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 1) throw error("parts must be positive");
            if (i > 0 && parts_[i] <= parts_[i - 1])
                throw error("parts must be strictly increasing");
        }
    }
    PartSet(std::initializer_list<int> parts) : PartSet(std::vector<int>(parts)) {}

    std::vector<int> const& parts() const noexcept { return parts_; }
    std::size_t size() const noexcept { return parts_.size(); }
    int min() const { return parts_.front(); }
    int max() const { return parts_.back(); }
    bool contains(int a) const { return std::binary_search(parts_.begin(), parts_.end(), a); }

    std::string str() const {
        std::string s = "{";
        for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
        return s + "}";
    }

    friend bool operator==(PartSet const&, PartSet const&) = default;

private:
    std::vector<int> parts_;
};

/// How classes relate when a pattern string is parsed.
enum class ParseMode {
    // Unprimed letters are greater than every primed letter, unless the
    // written values put the unprimed letters strictly below a primed class.
    // Distinct primed classes are incomparable.
    primes,
    // All distinct classes are incomparable.
    classes_incomparable,
};

namespace detail {

struct RawLetter {
    int value;
    int primes;
};

inline std::vector<std::vector<RawLetter>> lex_pattern(std::string_view text) {
    std::vector<std::vector<RawLetter>> blocks(1);
    std::size_t i = 0;
    auto digits = [&](std::size_t from) {
        std::size_t j = from;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        return j;
    };
    while (i < text.size()) {
        char ch = text[i];
        if (ch == '-') {
            if (blocks.back().empty()) throw pattern_syntax_error("empty block", i);
            blocks.emplace_back();
            ++i;
            continue;
        }
        int value = 0;
        std::size_t start = i;
        if (ch == '(') {
            std::size_t end = digits(i + 1);
            if (end == i + 1) throw pattern_syntax_error("expected digits after '('", i + 1);
            if (end >= text.size() || text[end] != ')')
                throw pattern_syntax_error("expected ')'", end);
            value = std::stoi(std::string(text.substr(i + 1, end - i - 1)));
            i = end + 1;
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            value = ch - '0';
            ++i;
        } else {
            throw pattern_syntax_error(std::string("unexpected character '") + ch + "'", i);
        }
        if (value == 0) throw pattern_syntax_error("letter value 0", start);
        int primes = 0;
        while (i < text.size() && text[i] == '\'') {
            ++primes;
            ++i;
        }
        blocks.back().push_back({value, primes});
    }
    if (blocks.back().empty()) throw pattern_syntax_error("empty block", text.size());
    return blocks;
}

}  // namespace detail

inline PopPattern parse_pattern(std::string_view text, ParseMode mode = ParseMode::primes) {
    auto raw = detail::lex_pattern(text);
    std::map<int, std::pair<int, int>> range;  // class -> (min value, max value)
    std::vector<Block> blocks;
    for (auto const& rb : raw) {
        Block b;
        for (auto const& rl : rb) {
            b.push_back({rl.value, rl.primes});
            auto [it, fresh] = range.try_emplace(rl.primes, rl.value, rl.value);
            if (!fresh) {
                it->second.first = std::min(it->second.first, rl.value);
                it->second.second = std::max(it->second.second, rl.value);
            }
        }
        blocks.push_back(std::move(b));
    }

    std::set<ClassId> classes;
    for (auto const& [c, r] : range) classes.insert(c);
    std::set<std::pair<ClassId, ClassId>> relations;
    if (mode == ParseMode::primes && range.count(0)) {
        auto [lo0, hi0] = range.at(0);
        for (auto const& [c, r] : range) {
            if (c == 0) continue;
            if (hi0 < r.first)
                relations.insert({0, c});
            else
                relations.insert({c, 0});
        }
    }
    return PopPattern(std::move(blocks), ClassPoset(std::move(classes), std::move(relations)));
}

inline std::string format_letter(Letter const& l) {
    std::string s = l.value <= 9 ? std::to_string(l.value) : "(" + std::to_string(l.value) + ")";
    s.append(static_cast<std::size_t>(l.class_id), '\'');
    return s;
}

inline std::string format_pattern(PopPattern const& p) {
    std::string s;
    for (std::size_t b = 0; b < p.blocks().size(); ++b) {
        if (b) s += '-';
        for (auto const& l : p.blocks()[b]) s += format_letter(l);
    }
    return s;
}

/// Single-class patterns with equal letter sequences; helper for building
/// patterns from compact strings like "12" or "21".
inline PopPattern consecutive(std::string_view text) {
    auto p = parse_pattern(text, ParseMode::classes_incomparable);
    if (!p.single_block() || p.classes_used().size() != 1)
        throw error("expected a single-block single-class pattern: " + std::string(text));
    return p;
}

enum class Separator { top, bottom };

namespace detail {

inline Block relabel_block(PopPattern const& p, ClassId fresh, char const* what) {
    if (!p.single_block()) throw error(std::string(what) + " blocks must be consecutive patterns");
    if (p.classes_used().size() != 1)
        throw error(std::string(what) + " blocks must use a single class");
    Block b = p.blocks().front();
    for (auto& l : b) l.class_id = fresh;
    return b;
}

}  // namespace detail

/// tau_0 - a - tau_1 - a - ... - tau_s. Each tau_i gets its own class
/// (i + 1 primes); all separators share class 0, above or below the rest.
inline PopPattern make_shuffle_pattern(std::vector<PopPattern> const& parts, Separator sep) {
    if (parts.size() < 2) throw error("shuffle pattern needs at least two blocks");
    std::vector<Block> blocks;
    std::set<ClassId> classes{0};
    std::set<std::pair<ClassId, ClassId>> relations;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        ClassId c = static_cast<ClassId>(i + 1);
        if (i) blocks.push_back({Letter{1, 0}});
        blocks.push_back(detail::relabel_block(parts[i], c, "shuffle"));
        classes.insert(c);
        relations.insert(sep == Separator::top ? std::pair{c, 0} : std::pair{0, c});
    }
    return PopPattern(std::move(blocks), ClassPoset(std::move(classes), std::move(relations)));
}

/// tau_1 - tau_2 - ... - tau_s with block i in class i, classes incomparable.
inline PopPattern make_multi_pattern(std::vector<PopPattern> const& parts) {
    if (parts.empty()) throw error("multi-pattern needs at least one block");
    std::vector<Block> blocks;
    std::set<ClassId> classes;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        ClassId c = static_cast<ClassId>(i);
        blocks.push_back(detail::relabel_block(parts[i], c, "multi-pattern"));
        classes.insert(c);
    }
    return PopPattern(std::move(blocks), ClassPoset(std::move(classes), {}));
}

inline PopPattern reverse_pattern(PopPattern const& p) {
    std::vector<Block> blocks(p.blocks().rbegin(), p.blocks().rend());
    for (auto& b : blocks) std::reverse(b.begin(), b.end());
    return PopPattern(std::move(blocks), p.poset());
}

inline Composition reverse_composition(Composition const& c) {
    std::vector<int> parts(c.parts().rbegin(), c.parts().rend());
    return Composition(std::move(parts));
}

/// True when q is p with classes renamed (order of first appearance decides
/// the renaming).
inline bool isomorphic(PopPattern const& p, PopPattern const& q) {
    if (p.blocks().size() != q.blocks().size()) return false;
    std::map<ClassId, ClassId> fwd, bwd;
    for (std::size_t b = 0; b < p.blocks().size(); ++b) {
        auto const& pb = p.blocks()[b];
        auto const& qb = q.blocks()[b];
        if (pb.size() != qb.size()) return false;
        for (std::size_t i = 0; i < pb.size(); ++i) {
            auto [f, nf] = fwd.try_emplace(pb[i].class_id, qb[i].class_id);
            auto [r, nr] = bwd.try_emplace(qb[i].class_id, pb[i].class_id);
            if (f->second != qb[i].class_id || r->second != pb[i].class_id) return false;
        }
    }
    auto lp = p.letters();
    auto lq = q.letters();
    for (std::size_t i = 0; i < lp.size(); ++i)
        for (std::size_t j = 0; j < lp.size(); ++j)
            if (p.compare(lp[i], lp[j]) != q.compare(lq[i], lq[j])) return false;
    return true;
}

/// Every single-class pattern obtained by refining the partial order of p to
/// a total preorder (ties allowed between incomparable letters). A
/// composition avoids p exactly when it avoids all of them.
inline std::vector<PopPattern> linearize_pop(PopPattern const& p) {
    std::vector<Letter> distinct;
    for (auto const& l : p.letters())
        if (std::find(distinct.begin(), distinct.end(), l) == distinct.end()) distinct.push_back(l);
    std::size_t const k = distinct.size();

    std::set<std::vector<Block>> seen;
    std::vector<PopPattern> out;
    std::vector<int> rank(k, 0);

    // Enumerate rank vectors that use exactly the levels 0..L-1 for some L.
    auto consistent = [&] {
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                Relation r = p.compare(distinct[i], distinct[j]);
                if (r == Relation::less && !(rank[i] < rank[j])) return false;
                if (r == Relation::equal && rank[i] != rank[j]) return false;
            }
        return true;
    };
    auto emit = [&] {
        std::vector<Block> blocks;
        for (auto const& b : p.blocks()) {
            Block nb;
            for (auto const& l : b) {
                auto pos = static_cast<std::size_t>(std::find(distinct.begin(), distinct.end(), l) - distinct.begin());
                nb.push_back({rank[pos] + 1, 0});
            }
            blocks.push_back(std::move(nb));
        }
        if (seen.insert(blocks).second) out.emplace_back(std::move(blocks), ClassPoset({0}, {}));
    };
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == k) {
            std::set<int> levels(rank.begin(), rank.end());
            if (static_cast<int>(levels.size()) == *levels.rbegin() + 1 && consistent()) emit();
            return;
        }
        for (int r = 0; r < static_cast<int>(k); ++r) {
            rank[i] = r;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end(), [](PopPattern const& a, PopPattern const& b) {
        return format_pattern(a) < format_pattern(b);
    });
    return out;
}

}  // namespace popcomp
