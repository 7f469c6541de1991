#pragma once

// Occurrence search for POPs in compositions: containment, quasi-avoidance
// and the maximum number of non-overlapping occurrences.

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pattern.hpp"

namespace popcomp {

struct Window {
    std::size_t start = 0;
    std::size_t length = 0;
    std::size_t end() const noexcept { return start + length; }
    friend auto operator<=>(Window const&, Window const&) = default;
};

/// One window per pattern block, in increasing position order.
struct Occurrence {
    std::vector<Window> windows;
    friend auto operator<=>(Occurrence const&, Occurrence const&) = default;

    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        for (auto const& w : windows)
            for (std::size_t i = w.start; i < w.end(); ++i) out.push_back(i);
        return out;
    }
};

/// A pattern with its pairwise letter relations precomputed. Letters are
/// indexed in reading order across blocks.
class Matcher {
public:
    explicit Matcher(PopPattern const& p) : pattern_(p) {
        auto letters = p.letters();
        n_ = letters.size();
        rel_.resize(n_ * n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) rel_[i * n_ + j] = p.compare(letters[i], letters[j]);
        std::size_t offset = 0;
        for (auto const& b : p.blocks()) {
            block_offset_.push_back(offset);
            block_length_.push_back(b.size());
            offset += b.size();
        }
    }

    PopPattern const& pattern() const noexcept { return pattern_; }
    std::size_t letter_count() const noexcept { return n_; }

    /// For a single-block pattern: does the window equal an occurrence?
    bool window_matches(std::span<int const> window) const {
        if (window.size() != n_) return false;
        for (std::size_t i = 1; i < n_; ++i)
            if (!consistent(window, i)) return false;
        return true;
    }

    template <class Visitor>
    void for_each_occurrence(Composition const& c, Visitor&& visit) const {
        std::vector<int> assigned(n_, 0);
        std::vector<Window> windows;
        bool stop = false;
        search(c, 0, 0, assigned, windows, visit, stop);
    }

    std::vector<Occurrence> occurrences(Composition const& c) const {
        std::vector<Occurrence> out;
        for_each_occurrence(c, [&](std::vector<Window> const& w) {
            out.push_back(Occurrence{w});
            return true;
        });
        return out;
    }

    bool avoids(Composition const& c) const {
        bool found = false;
        for_each_occurrence(c, [&](std::vector<Window> const&) {
            found = true;
            return false;
        });
        return !found;
    }

    bool quasi_avoids(Composition const& c) const {
        require_single_block("quasi-avoidance");
        if (c.size() < n_) return false;
        std::size_t count = 0;
        bool at_end = false;
        for_each_occurrence(c, [&](std::vector<Window> const& w) {
            ++count;
            at_end = w.front().end() == c.size();
            return count < 2;
        });
        return count == 1 && at_end;
    }

    /// Greedy by earliest window end; optimal since all windows share one length.
    std::size_t nlap(Composition const& c) const {
        require_single_block("nlap");
        std::size_t count = 0;
        std::size_t free_from = 0;
        auto const& parts = c.parts();
        for (std::size_t i = 0; i + n_ <= parts.size(); ++i) {
            if (i < free_from) continue;
            if (window_matches(std::span<int const>(parts).subspan(i, n_))) {
                ++count;
                free_from = i + n_;
            }
        }
        return count;
    }

private:
    void require_single_block(char const* what) const {
        if (!pattern_.single_block())
            throw error(std::string(what) + " needs a single-block pattern, got " + format_pattern(pattern_));
    }

    // Checks letter i against letters 0..i-1.
    bool consistent(std::span<int const> assigned, std::size_t i) const {
        for (std::size_t j = 0; j < i; ++j) {
            switch (rel_[j * n_ + i]) {
                case Relation::less:
                    if (!(assigned[j] < assigned[i])) return false;
                    break;
                case Relation::equal:
                    if (assigned[j] != assigned[i]) return false;
                    break;
                case Relation::greater:
                    if (!(assigned[j] > assigned[i])) return false;
                    break;
                case Relation::incomparable:
                    break;
            }
        }
        return true;
    }

    template <class Visitor>
    void search(Composition const& c, std::size_t block, std::size_t from, std::vector<int>& assigned,
                std::vector<Window>& windows, Visitor& visit, bool& stop) const {
        if (block == block_length_.size()) {
            if (!visit(std::as_const(windows))) stop = true;
            return;
        }
        std::size_t len = block_length_[block];
        std::size_t rest = 0;
        for (std::size_t b = block + 1; b < block_length_.size(); ++b) rest += block_length_[b];
        if (c.size() < rest + len) return;
        for (std::size_t start = from; start + len + rest <= c.size() && !stop; ++start) {
            bool ok = true;
            for (std::size_t k = 0; k < len && ok; ++k) {
                std::size_t li = block_offset_[block] + k;
                assigned[li] = c[start + k];
                ok = consistent(assigned, li);
            }
            if (!ok) continue;
            windows.push_back({start, len});
            search(c, block + 1, start + len, assigned, windows, visit, stop);
            windows.pop_back();
        }
    }

    PopPattern pattern_;
    std::size_t n_ = 0;
    std::vector<Relation> rel_;
    std::vector<std::size_t> block_offset_;
    std::vector<std::size_t> block_length_;
};

inline std::vector<Occurrence> occurrences(Composition const& c, PopPattern const& p) {
    return Matcher(p).occurrences(c);
}

inline bool contains(Composition const& c, PopPattern const& p) { return !Matcher(p).avoids(c); }

inline bool avoids(Composition const& c, PopPattern const& p) { return Matcher(p).avoids(c); }

inline bool quasi_avoids(Composition const& c, PopPattern const& p) { return Matcher(p).quasi_avoids(c); }

inline std::size_t nlap(Composition const& c, PopPattern const& p) { return Matcher(p).nlap(c); }

/// Part values picked out by an occurrence, e.g. "287".
inline Composition occurrence_values(Composition const& c, Occurrence const& o) {
    std::vector<int> vals;
    for (auto i : o.indices()) vals.push_back(c[i]);
    return Composition(std::move(vals));
}

}  // namespace popcomp
