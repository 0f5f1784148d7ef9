#pragma once

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "psl2rot/matrix.hpp"

namespace psl2rot {

struct IndexOutOfRange : std::runtime_error {
    IndexOutOfRange(int index, std::size_t n_generators)
        : std::runtime_error("generator index " + std::to_string(index) +
                             " out of range for " + std::to_string(n_generators) + " generators") {}
};

struct BallTooLarge : std::runtime_error {
    explicit BallTooLarge(std::uint64_t count)
        : std::runtime_error("word ball would contain " + std::to_string(count) +
                             " words, over the cap"),
          count(count) {}
    std::uint64_t count;
};

/// One syllable of a free-group word: generator index and nonzero exponent.
struct Syllable {
    int generator = 0;
    long long exponent = 1;

    friend bool operator==(const Syllable&, const Syllable&) = default;
};

/// A reduced word over free-group generators. Construction reduces: adjacent
/// syllables on the same generator merge, zero exponents drop. The empty word
/// is the identity.
class Word {
  public:
    Word() = default;

    explicit Word(std::vector<Syllable> raw) : syllables_(reduce(std::move(raw))) {}

    static Word identity() { return Word{}; }

    const std::vector<Syllable>& syllables() const { return syllables_; }
    bool is_identity() const { return syllables_.empty(); }

    /// Sum of absolute exponents (letter count).
    long long length() const {
        long long n = 0;
        for (const Syllable& s : syllables_) n += std::llabs(s.exponent);
        return n;
    }

    Word inverse() const {
        std::vector<Syllable> rev;
        rev.reserve(syllables_.size());
        for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it)
            rev.push_back({it->generator, -it->exponent});
        return Word(std::move(rev));
    }

    /// Concatenation followed by free reduction.
    friend Word operator*(const Word& l, const Word& r) {
        std::vector<Syllable> cat = l.syllables_;
        cat.insert(cat.end(), r.syllables_.begin(), r.syllables_.end());
        return Word(std::move(cat));
    }

    Word pow(long long n) const {
        Word base = n < 0 ? inverse() : *this;
        long long k = n < 0 ? -n : n;
        Word acc;
        for (long long i = 0; i < k; ++i) acc = acc * base;
        return acc;
    }

    friend bool operator==(const Word&, const Word&) = default;

    static std::vector<Syllable> reduce(std::vector<Syllable> raw) {
        std::vector<Syllable> out;
        for (const Syllable& s : raw) {
            if (s.exponent == 0) continue;
            if (!out.empty() && out.back().generator == s.generator) {
                out.back().exponent += s.exponent;
                if (out.back().exponent == 0) out.pop_back();
            } else {
                out.push_back(s);
            }
        }
        return out;
    }

  private:
    std::vector<Syllable> syllables_;
};

inline Word reduce(const std::vector<Syllable>& raw) { return Word(raw); }

/// A homomorphism from the free group on n letters into PSL(2,R), given by
/// the images of the generators. Labels, when present, are unique and give
/// the display names used by the word syntax.
struct Representation {
    std::vector<ProjectiveElement> generators;
    std::vector<std::string> labels;

    explicit Representation(std::vector<ProjectiveElement> gens,
                            std::vector<std::string> labels = {})
        : generators(std::move(gens)), labels(std::move(labels)) {
        if (generators.empty())
            throw std::invalid_argument("a representation needs at least one generator");
        if (!this->labels.empty() && this->labels.size() != generators.size())
            throw std::invalid_argument("label count does not match generator count");
        for (std::size_t i = 0; i < this->labels.size(); ++i)
            for (std::size_t j = i + 1; j < this->labels.size(); ++j)
                if (this->labels[i] == this->labels[j])
                    throw std::invalid_argument("duplicate generator label: " + this->labels[i]);
    }

    std::size_t size() const { return generators.size(); }
};

/// Left-to-right product of generator powers. The empty word evaluates to the
/// identity.
inline ProjectiveElement evaluate(const Representation& rho, const Word& w) {
    ProjectiveElement acc = ProjectiveElement::identity();
    for (const Syllable& s : w.syllables()) {
        if (s.generator < 0 || static_cast<std::size_t>(s.generator) >= rho.size())
            throw IndexOutOfRange(s.generator, rho.size());
        acc = acc * power(rho.generators[s.generator], s.exponent);
    }
    return acc;
}

inline constexpr std::uint64_t default_ball_cap = 1'000'000;

/// Number of reduced words of length at most radius: 1 + sum 2n (2n-1)^(k-1).
inline std::uint64_t ball_count(int n_generators, int radius) {
    std::uint64_t total = 1;
    std::uint64_t layer = 2ull * static_cast<std::uint64_t>(n_generators);
    for (int k = 1; k <= radius; ++k) {
        total += layer;
        if (total > (1ull << 62)) return total; // saturate well past any cap
        layer *= 2ull * n_generators - 1ull;
    }
    return total;
}

/// All reduced words of length <= radius, ordered by length then
/// lexicographically with a < a^-1 < b < b^-1 < ...; starts with the empty
/// word. Throws BallTooLarge past the cap.
inline std::vector<Word> enumerate_ball(int n_generators, int radius,
                                        std::uint64_t cap = default_ball_cap) {
    if (n_generators < 1) throw std::invalid_argument("need at least one generator");
    if (radius < 0) throw std::invalid_argument("radius must be nonnegative");
    std::uint64_t count = ball_count(n_generators, radius);
    if (count > cap) throw BallTooLarge(count);

    std::vector<Word> out;
    out.reserve(count);
    out.push_back(Word::identity());

    // letters ranked 2*index for a generator, 2*index+1 for its inverse
    int n_letters = 2 * n_generators;
    std::vector<int> letters; // current prefix, as letter ranks
    auto letter_sign = [](int rank) { return rank % 2 == 0 ? 1 : -1; };
    auto inverse_rank = [](int rank) { return rank ^ 1; };

    auto emit = [&](const std::vector<int>& ranks) {
        std::vector<Syllable> syl;
        for (int r : ranks) syl.push_back({r / 2, letter_sign(r)});
        out.push_back(Word(std::move(syl)));
    };

    for (int length = 1; length <= radius; ++length) {
        letters.clear();
        auto dfs = [&](auto&& self, int remaining) -> void {
            if (remaining == 0) {
                emit(letters);
                return;
            }
            for (int r = 0; r < n_letters; ++r) {
                if (!letters.empty() && inverse_rank(letters.back()) == r) continue;
                letters.push_back(r);
                self(self, remaining - 1);
                letters.pop_back();
            }
        };
        dfs(dfs, length);
    }
    return out;
}

// --- word text syntax -------------------------------------------------------
//
// token = label ('^' signed-integer)?, whitespace between tokens optional.
// Single-letter tokens a..z address generators in order (a is the first);
// an uppercase letter is the inverse. When the representation carries
// single-letter labels, those letters are resolved through the labels
// instead. Multi-letter labels must be whitespace-separated.

struct WordSyntaxError : std::runtime_error {
    explicit WordSyntaxError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline int resolve_letter(char lower, const std::vector<std::string>& labels,
                          std::size_t n_generators) {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i].size() == 1 && labels[i][0] == lower) return static_cast<int>(i);
    int idx = lower - 'a';
    if (idx < 0 || static_cast<std::size_t>(idx) >= n_generators)
        throw WordSyntaxError(std::string("unknown generator letter '") + lower + "'");
    return idx;
}

inline long long parse_exponent(const std::string& text, std::size_t& pos) {
    if (pos >= text.size() || text[pos] != '^') return 1;
    ++pos;
    std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
        throw WordSyntaxError("expected integer after '^'");
    return std::stoll(text.substr(start, pos - start));
}

} // namespace detail

/// Parses the word syntax against a representation's generators.
inline Word parse_word(const std::string& text, const Representation& rho) {
    std::vector<Syllable> syl;
    std::size_t pos = 0;
    while (pos < text.size()) {
        char ch = text[pos];
        if (std::isspace(static_cast<unsigned char>(ch))) { ++pos; continue; }
        if (!std::isalpha(static_cast<unsigned char>(ch)))
            throw WordSyntaxError(std::string("unexpected character '") + ch + "' in word");
        // longest label match first, for multi-letter labels
        std::size_t best_len = 0;
        int best_index = -1;
        for (std::size_t i = 0; i < rho.labels.size(); ++i) {
            const std::string& lab = rho.labels[i];
            if (lab.size() > 1 && lab.size() > best_len && text.compare(pos, lab.size(), lab) == 0) {
                best_len = lab.size();
                best_index = static_cast<int>(i);
            }
        }
        int index;
        int sign = 1;
        if (best_index >= 0) {
            index = best_index;
            pos += best_len;
        } else {
            char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
            index = detail::resolve_letter(lower, rho.labels, rho.size());
            if (std::isupper(static_cast<unsigned char>(ch))) sign = -1;
            ++pos;
        }
        long long exp = detail::parse_exponent(text, pos);
        syl.push_back({index, sign * exp});
    }
    return Word(std::move(syl));
}

/// Formats a word in the same syntax: exponent 1 as the letter, -1 as the
/// uppercase letter, anything else as letter^k.
inline std::string format_word(const Word& w, const std::vector<std::string>& labels = {}) {
    if (w.is_identity()) return "1";
    std::string out;
    for (const Syllable& s : w.syllables()) {
        char letter = 'a' + static_cast<char>(s.generator);
        if (s.generator < 26 &&
            (labels.empty() ||
             (static_cast<std::size_t>(s.generator) < labels.size() &&
              labels[s.generator].size() == 1))) {
            if (!labels.empty()) letter = labels[s.generator][0];
            if (s.exponent == 1) { out += letter; continue; }
            if (s.exponent == -1) {
                out += static_cast<char>(std::toupper(static_cast<unsigned char>(letter)));
                continue;
            }
            out += letter;
            out += '^';
            out += std::to_string(s.exponent);
        } else {
            std::string lab = static_cast<std::size_t>(s.generator) < labels.size()
                                  ? labels[s.generator]
                                  : "g" + std::to_string(s.generator);
            if (!out.empty()) out += ' ';
            out += lab;
            if (s.exponent != 1) out += "^" + std::to_string(s.exponent);
            out += ' ';
        }
    }
    // trim a trailing separator from the multi-letter path
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

} // namespace psl2rot
