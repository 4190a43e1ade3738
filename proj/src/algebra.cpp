#include "pmj/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <string>

#include "pmj/errors.hpp"

namespace pmj {

Monomial::Monomial(std::vector<Letter> letters) : letters_(std::move(letters)) {
    for (const Letter& l : letters_) {
        if (l.index < 1) throw InputError("monomial index must be >= 1");
    }
}

bool Monomial::all_unit_indices() const noexcept {
    return std::all_of(letters_.begin(), letters_.end(), [](const Letter& l) { return l.index == 1; });
}

std::string Monomial::to_string() const {
    if (all_unit_indices()) return color_string();
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) out += ' ';
        out += kind_char(letters_[i].color);
        out += std::to_string(letters_[i].index);
    }
    return out;
}

std::string Monomial::color_string() const {
    std::string out;
    out.reserve(letters_.size());
    for (const Letter& l : letters_) out += kind_char(l.color);
    return out;
}

Monomial Monomial::without_indices() const {
    std::vector<Letter> out = letters_;
    for (Letter& l : out) l.index = 1;
    return Monomial(std::move(out));
}

Monomial Monomial::rotated(std::size_t shift) const {
    if (letters_.empty()) return *this;
    std::vector<Letter> out = letters_;
    std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(shift % out.size()), out.end());
    return Monomial(std::move(out));
}

Monomial Monomial::concatenated(const Monomial& tail) const {
    std::vector<Letter> out = letters_;
    out.insert(out.end(), tail.letters_.begin(), tail.letters_.end());
    return Monomial(std::move(out));
}

Monomial parse_monomial(std::string_view text) {
    std::vector<Letter> letters;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const char c = text[pos];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++pos;
            continue;
        }
        const auto kind = kind_from_char(c);
        if (!kind) throw InputError(std::string("unknown matrix kind '") + c + "' in monomial");
        ++pos;
        std::size_t digits_end = pos;
        while (digits_end < text.size() && std::isdigit(static_cast<unsigned char>(text[digits_end]))) {
            ++digits_end;
        }
        int index = 1;
        if (digits_end > pos) {
            const std::string digits(text.substr(pos, digits_end - pos));
            if (digits.size() > 9) throw InputError("monomial index too large: " + digits);
            index = std::stoi(digits);
            if (index == 0) throw InputError("monomial index must be >= 1");
        }
        letters.push_back({*kind, index});
        pos = digits_end;
    }
    if (letters.empty()) throw InputError("empty monomial");
    return Monomial(std::move(letters));
}

namespace {

/// Renames letters to 0, 1, 2, ... in order of first occurrence.
std::pair<std::vector<int>, int> canonical_letters(const std::vector<int>& raw) {
    std::map<int, int> rename;
    std::vector<int> out;
    out.reserve(raw.size());
    for (int r : raw) {
        auto [it, inserted] = rename.try_emplace(r, static_cast<int>(rename.size()));
        out.push_back(it->second);
    }
    return {std::move(out), static_cast<int>(rename.size())};
}

}  // namespace

ColoredWord::ColoredWord(std::vector<int> letters, Monomial monomial) : monomial_(std::move(monomial)) {
    if (letters.size() != monomial_.size()) {
        throw InputError("word length " + std::to_string(letters.size()) + " does not match monomial length " +
                         std::to_string(monomial_.size()));
    }
    auto [canon, count] = canonical_letters(letters);
    letters_ = std::move(canon);
    letter_count_ = count;

    std::vector<int> first(static_cast<std::size_t>(count), -1);
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        int& f = first[static_cast<std::size_t>(letters_[i])];
        if (f < 0) {
            f = static_cast<int>(i);
        } else if (!(monomial_[i] == monomial_[static_cast<std::size_t>(f)])) {
            throw InputError("positions " + std::to_string(f) + " and " + std::to_string(i) +
                             " share a letter but not a color/index");
        }
    }
}

ColoredWord ColoredWord::from_text(std::string_view word, const Monomial& monomial) {
    std::vector<int> raw;
    raw.reserve(word.size());
    for (char c : word) {
        if (!std::islower(static_cast<unsigned char>(c))) {
            throw InputError(std::string("word letters must be a-z, got '") + c + "'");
        }
        raw.push_back(c - 'a');
    }
    return ColoredWord(std::move(raw), monomial);
}

bool ColoredWord::pair_matched() const noexcept {
    std::vector<int> counts(static_cast<std::size_t>(letter_count_), 0);
    for (int l : letters_) ++counts[static_cast<std::size_t>(l)];
    return std::all_of(counts.begin(), counts.end(), [](int c) { return c == 2; });
}

std::string ColoredWord::text() const {
    std::string out;
    out.reserve(letters_.size());
    for (int l : letters_) out += static_cast<char>('a' + l);
    return out;
}

namespace {

void enumerate_matchings(const std::vector<Letter>& classes, bool respect_indices, std::vector<int>& partner,
                         const Monomial& over, std::vector<ColoredWord>& out) {
    const auto open = std::find(partner.begin(), partner.end(), -1);
    if (open == partner.end()) {
        // partner[] -> letter ids in first-occurrence order.
        std::vector<int> letters(partner.size(), -1);
        int next = 0;
        for (std::size_t i = 0; i < partner.size(); ++i) {
            if (letters[i] < 0) {
                letters[i] = next;
                letters[static_cast<std::size_t>(partner[i])] = next;
                ++next;
            }
        }
        out.emplace_back(std::move(letters), over);
        return;
    }
    const auto i = static_cast<std::size_t>(open - partner.begin());
    for (std::size_t j = i + 1; j < partner.size(); ++j) {
        if (partner[j] != -1) continue;
        const bool same = respect_indices ? classes[i] == classes[j] : classes[i].color == classes[j].color;
        if (!same) continue;
        partner[i] = static_cast<int>(j);
        partner[j] = static_cast<int>(i);
        enumerate_matchings(classes, respect_indices, partner, over, out);
        partner[i] = -1;
        partner[j] = -1;
    }
}

}  // namespace

std::vector<ColoredWord> enumerate_pair_matched_words(const Monomial& q, bool respect_indices) {
    std::vector<ColoredWord> out;
    if (q.size() % 2 != 0) return out;

    std::map<std::pair<int, int>, int> class_sizes;
    for (const Letter& l : q) {
        ++class_sizes[{static_cast<int>(l.color), respect_indices ? l.index : 1}];
    }
    for (const auto& [cls, size] : class_sizes) {
        if (size % 2 != 0) return out;
    }

    const Monomial over = respect_indices ? q : q.without_indices();
    std::vector<int> partner(q.size(), -1);
    enumerate_matchings(q.letters(), respect_indices, partner, over, out);
    std::sort(out.begin(), out.end(), [](const ColoredWord& a, const ColoredWord& b) { return a.letters() < b.letters(); });
    return out;
}

ColoredWord drop_indices(const ColoredWord& w) { return ColoredWord(w.letters(), w.monomial().without_indices()); }

bool is_catalan(const ColoredWord& w) {
    std::vector<int> stack;
    stack.reserve(w.size());
    for (int l : w.letters()) {
        if (!stack.empty() && stack.back() == l) {
            stack.pop_back();
        } else {
            stack.push_back(l);
        }
    }
    return stack.empty();
}

std::vector<MatchPair> match_pairs(const ColoredWord& w) {
    if (!w.pair_matched()) throw InputError("match_pairs needs a pair-matched word, got " + w.text());
    std::vector<MatchPair> pairs(static_cast<std::size_t>(w.letter_count()));
    std::vector<bool> seen(pairs.size(), false);
    for (std::size_t i = 0; i < w.size(); ++i) {
        const auto l = static_cast<std::size_t>(w.letters()[i]);
        if (!seen[l]) {
            pairs[l].first = i;
            seen[l] = true;
        } else {
            pairs[l].second = i;
        }
    }
    // Letters are numbered by first occurrence, so pairs are already sorted by i.
    return pairs;
}

ColoredWord cyclic_rotate(const ColoredWord& w, std::size_t shift) {
    if (w.size() == 0) return w;
    if (shift >= w.size()) throw InputError("rotation shift must be below the word length");
    std::vector<int> letters = w.letters();
    std::rotate(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(shift), letters.end());
    return ColoredWord(std::move(letters), w.monomial().rotated(shift));
}

}  // namespace pmj
