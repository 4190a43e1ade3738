#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pmj/linkfns.hpp"

namespace pmj {

/// One matrix symbol of a monomial: a color (link kind) and a copy index >= 1.
struct Letter {
    LinkKind color{LinkKind::Toeplitz};
    int index{1};

    friend bool operator==(const Letter&, const Letter&) = default;
};

/// A product of matrix symbols Z_{c1,t1} Z_{c2,t2} ... Z_{ck,tk}.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<Letter> letters);

    std::size_t size() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }
    const Letter& operator[](std::size_t i) const noexcept { return letters_[i]; }
    const std::vector<Letter>& letters() const noexcept { return letters_; }

    auto begin() const noexcept { return letters_.begin(); }
    auto end() const noexcept { return letters_.end(); }

    bool all_unit_indices() const noexcept;

    /// Compact text ("THTH") when every index is 1, otherwise the spaced
    /// grammar ("W1 T1 W2 T1").
    std::string to_string() const;

    /// Just the color characters, one per letter.
    std::string color_string() const;

    /// Monomial with every index replaced by 1 (the index-dropping map).
    Monomial without_indices() const;

    /// Left rotation by `shift` letters.
    Monomial rotated(std::size_t shift) const;

    Monomial concatenated(const Monomial& tail) const;

    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    std::vector<Letter> letters_;
};

/// Grammar: whitespace-separated or juxtaposed tokens `<kind-char>[index]`,
/// where kind-char is one of W T H R S and a missing index means 1.
/// Throws InputError on an unknown kind, a zero index, or empty input.
Monomial parse_monomial(std::string_view text);

/// A match (i, j), i < j, of a pair-matched word; 0-based positions.
struct MatchPair {
    std::size_t first{0};
    std::size_t second{0};

    friend bool operator==(const MatchPair&, const MatchPair&) = default;
};

/// A colored (and possibly indexed) word: letter ids in first-occurrence
/// order plus the per-position symbols of the monomial it belongs to.
/// Construction canonicalizes letter names and checks that positions
/// sharing a letter share their symbol.
class ColoredWord {
public:
    ColoredWord() = default;
    ColoredWord(std::vector<int> letters, Monomial monomial);

    /// From text such as "abab" and the monomial read positionally.
    static ColoredWord from_text(std::string_view word, const Monomial& monomial);

    std::size_t size() const noexcept { return letters_.size(); }
    const std::vector<int>& letters() const noexcept { return letters_; }
    const Monomial& monomial() const noexcept { return monomial_; }
    LinkKind color(std::size_t position) const noexcept { return monomial_[position].color; }
    int index(std::size_t position) const noexcept { return monomial_[position].index; }

    /// Number of distinct letters.
    int letter_count() const noexcept { return letter_count_; }

    /// Every letter appears exactly twice.
    bool pair_matched() const noexcept;

    /// "abab"
    std::string text() const;

    friend bool operator==(const ColoredWord&, const ColoredWord&) = default;

private:
    std::vector<int> letters_;
    Monomial monomial_;
    int letter_count_{0};
};

/// Pair-matched words for q: perfect matchings of positions pairing equal
/// colors (and equal indices when respect_indices). Without indices the
/// words are over the index-free monomial. Lexicographic by text; empty when
/// q has odd length or any class has odd size.
std::vector<ColoredWord> enumerate_pair_matched_words(const Monomial& q, bool respect_indices);

/// Same word over the index-free monomial.
ColoredWord drop_indices(const ColoredWord& w);

/// Repeatedly deleting adjacent equal letters empties the word.
bool is_catalan(const ColoredWord& w);

/// The k matches (i, j), i < j, sorted by i. Requires a pair-matched word.
std::vector<MatchPair> match_pairs(const ColoredWord& w);

/// w'[i] = w[(i + shift) mod length], renamed to first-occurrence order.
ColoredWord cyclic_rotate(const ColoredWord& w, std::size_t shift);

}  // namespace pmj
