#pragma once

// Reduced words in a free group of small rank. Letters are encoded as
// 2*i for the i-th generator and 2*i+1 for its inverse, so that the
// lexicographic order of codes is A < A^-1 < B < B^-1 < ...

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eisen/errors.hpp"

namespace eisen {

using Letter = std::uint8_t;

inline constexpr int max_rank = 13;

constexpr Letter generator_letter(int index) noexcept { return static_cast<Letter>(2 * index); }
constexpr Letter inverse(Letter l) noexcept { return static_cast<Letter>(l ^ 1u); }
constexpr int generator_index(Letter l) noexcept { return l >> 1; }
constexpr bool is_inverse_letter(Letter l) noexcept { return (l & 1u) != 0; }

// 'A'..'M' for generators, lowercase for inverses.
inline char letter_char(Letter l) noexcept
{
    const char base = static_cast<char>('A' + generator_index(l));
    return is_inverse_letter(l) ? static_cast<char>(base - 'A' + 'a') : base;
}

inline Letter parse_letter(char ch, int rank)
{
    int index = -1;
    bool inv = false;
    if (ch >= 'A' && ch <= 'Z') {
        index = ch - 'A';
    } else if (ch >= 'a' && ch <= 'z') {
        index = ch - 'a';
        inv = true;
    }
    if (index < 0 || index >= rank) {
        throw domain_error(std::string("letter '") + ch + "' is not a generator of a rank-" +
                           std::to_string(rank) + " group");
    }
    return static_cast<Letter>(generator_letter(index) | (inv ? 1u : 0u));
}

class Word {
public:
    Word() = default;

    // Freely reduces the input.
    explicit Word(std::span<const Letter> letters)
    {
        letters_.reserve(letters.size());
        for (Letter l : letters) push(l);
    }

    Word(std::initializer_list<Letter> letters)
        : Word(std::span<const Letter>(letters.begin(), letters.size()))
    {
    }

    static Word parse(std::string_view text, int rank)
    {
        Word w;
        for (char ch : text) {
            if (ch == '1' && text.size() == 1) break;  // "1" denotes the empty word
            w.push(parse_letter(ch, rank));
        }
        return w;
    }

    std::size_t size() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }
    Letter operator[](std::size_t i) const noexcept { return letters_[i]; }
    std::span<const Letter> letters() const noexcept { return letters_; }

    // Right multiplication by one letter with free reduction.
    void push(Letter l)
    {
        if (!letters_.empty() && letters_.back() == eisen::inverse(l)) {
            letters_.pop_back();
        } else {
            letters_.push_back(l);
        }
    }

    Word inverse() const
    {
        Word w;
        w.letters_.reserve(letters_.size());
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
            w.letters_.push_back(eisen::inverse(*it));
        }
        return w;
    }

    friend Word operator*(const Word& l, const Word& r)
    {
        Word w = l;
        for (Letter x : r.letters_) w.push(x);
        return w;
    }

    bool begins_with(const Word& prefix) const noexcept
    {
        if (prefix.size() > size()) return false;
        for (std::size_t i = 0; i < prefix.size(); ++i) {
            if (letters_[i] != prefix.letters_[i]) return false;
        }
        return true;
    }

    // Cyclically reduced: first and last letters are not mutually inverse.
    bool cyclically_reduced() const noexcept
    {
        return letters_.size() < 2 || letters_.front() != eisen::inverse(letters_.back());
    }

    std::string to_string() const
    {
        if (letters_.empty()) return "1";
        std::string s;
        s.reserve(letters_.size());
        for (Letter l : letters_) s.push_back(letter_char(l));
        return s;
    }

    friend bool operator==(const Word&, const Word&) = default;

    // Length first, then lexicographic on letter codes.
    friend std::strong_ordering operator<=>(const Word& l, const Word& r) noexcept
    {
        if (l.size() != r.size()) return l.size() <=> r.size();
        for (std::size_t i = 0; i < l.size(); ++i) {
            if (l.letters_[i] != r.letters_[i]) return l.letters_[i] <=> r.letters_[i];
        }
        return std::strong_ordering::equal;
    }

private:
    std::vector<Letter> letters_;
};

// Iterates the reduced words of length <= max_length in length-then-lex order.
class ReducedWordIterator {
public:
    ReducedWordIterator(int rank, std::size_t max_length) : rank_(rank), max_length_(max_length)
    {
        if (rank < 1 || rank > max_rank) throw domain_error("rank out of range");
    }

    // Advances to the next word; returns false when exhausted. The first call
    // yields the empty word.
    bool next()
    {
        if (!started_) {
            started_ = true;
            return true;
        }
        const int alphabet = 2 * rank_;
        for (std::size_t pos = current_.size(); pos-- > 0;) {
            for (int l = current_[pos] + 1; l < alphabet; ++l) {
                if (pos > 0 && static_cast<Letter>(l) == inverse(current_[pos - 1])) continue;
                current_[pos] = static_cast<Letter>(l);
                fill_from(pos + 1);
                return true;
            }
        }
        if (current_.size() >= max_length_) return false;
        current_.push_back(0);
        fill_from(0);
        return true;
    }

    std::span<const Letter> letters() const noexcept { return current_; }
    Word word() const { return Word(std::span<const Letter>(current_)); }

private:
    void fill_from(std::size_t pos)
    {
        for (std::size_t i = pos; i < current_.size(); ++i) {
            Letter l = 0;
            if (i > 0 && l == inverse(current_[i - 1])) ++l;
            current_[i] = l;
        }
    }

    int rank_;
    std::size_t max_length_;
    bool started_ = false;
    std::vector<Letter> current_;
};

inline std::vector<Word> reduced_words(int rank, std::size_t max_length)
{
    std::vector<Word> out;
    ReducedWordIterator it(rank, max_length);
    while (it.next()) out.push_back(it.word());
    return out;
}

namespace detail {

// Compares (length, lex) of the reduced product p * w against w, where p is a
// cyclically reduced word given as a span. Returns <0 if p*w is smaller.
inline int compare_left_product(std::span<const Letter> p, std::span<const Letter> w) noexcept
{
    std::size_t cancel = 0;
    while (cancel < p.size() && cancel < w.size() &&
           p[p.size() - 1 - cancel] == inverse(w[cancel])) {
        ++cancel;
    }
    const std::size_t len = p.size() + w.size() - 2 * cancel;
    if (len != w.size()) return len < w.size() ? -1 : 1;
    const std::size_t head = p.size() - cancel;
    for (std::size_t i = 0; i < len; ++i) {
        const Letter a = i < head ? p[i] : w[i - head + cancel];
        if (a != w[i]) return a < w[i] ? -1 : 1;
    }
    return 0;
}

}  // namespace detail

// Coset representatives for <c> \ F, c cyclically reduced and nonempty: the
// element of minimal (length, lex) in each coset. For such c only c^{+-1} w
// can beat w, which makes the test local.
class CosetRule {
public:
    explicit CosetRule(const Word& stabilizer) : forward_(stabilizer), backward_(stabilizer.inverse())
    {
        if (stabilizer.empty()) throw domain_error("stabilizer word must be nontrivial");
        if (!stabilizer.cyclically_reduced()) {
            throw domain_error("stabilizer word " + stabilizer.to_string() +
                               " must be cyclically reduced");
        }
    }

    const Word& stabilizer() const noexcept { return forward_; }

    // True when every word with this prefix lies outside the transversal.
    bool excluded_prefix(std::span<const Letter> w) const noexcept
    {
        return starts_with(w, forward_) || starts_with(w, backward_);
    }

    bool is_representative(std::span<const Letter> w) const noexcept
    {
        if (forward_.size() == 1) return w.empty() || (w[0] != forward_[0] && w[0] != backward_[0]);
        return detail::compare_left_product(forward_.letters(), w) > 0 &&
               detail::compare_left_product(backward_.letters(), w) > 0;
    }

    // Canonical representative of the coset <c> w.
    Word normalize(Word w) const
    {
        for (;;) {
            const Word f = forward_ * w;
            const Word b = backward_ * w;
            if (f < w && !(b < f)) {
                w = f;
            } else if (b < w) {
                w = b;
            } else {
                return w;
            }
        }
    }

private:
    static bool starts_with(std::span<const Letter> w, const Word& p) noexcept
    {
        if (w.size() < p.size()) return false;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (w[i] != p[i]) return false;
        }
        return true;
    }

    Word forward_;
    Word backward_;
};

inline std::vector<Word> coset_reps(int rank, const Word& stabilizer, std::size_t max_length)
{
    const CosetRule rule(stabilizer);
    std::vector<Word> out;
    ReducedWordIterator it(rank, max_length);
    while (it.next()) {
        if (rule.is_representative(it.letters())) out.push_back(it.word());
    }
    return out;
}

inline std::vector<Word> coset_reps(int rank, Letter stabilizer_letter, std::size_t max_length)
{
    return coset_reps(rank, Word{stabilizer_letter}, max_length);
}

}  // namespace eisen
