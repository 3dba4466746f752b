#pragma once

// Deterministic low-level text processing shared by every attribute and
// metric: sentence segmentation, tokenization, syllable counting and the
// character/word/letter counts the readability formulas consume.
//
// Everything here is a pure function of its input bytes. Inputs are UTF-8;
// classification is ASCII-based and any byte >= 0x80 is treated as part of
// a (multi-byte) letter, which is the right call for English biomedical
// text with the occasional accented name or Greek symbol.

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "atlas/errors.hpp"

namespace atlas::textproc {

inline bool is_space_byte(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline bool is_ascii_alpha(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

inline bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

inline bool is_ascii_upper(char c) { return c >= 'A' && c <= 'Z'; }

// Any non-ASCII byte belongs to a multi-byte codepoint; count it as letter.
inline bool is_letter_byte(char c) {
    return is_ascii_alpha(c) || static_cast<unsigned char>(c) >= 0x80;
}

inline bool is_punct_byte(char c) {
    unsigned char u = static_cast<unsigned char>(c);
    return u < 0x80 && !is_ascii_alpha(c) && !is_ascii_digit(c) && !is_space_byte(c);
}

inline std::string lowercase(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

// Unicode scalar values = bytes that are not UTF-8 continuation bytes.
inline std::size_t count_codepoints(std::string_view s) {
    std::size_t n = 0;
    for (char c : s)
        if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
    return n;
}

struct Token {
    std::string surface;
    std::string normalized;  // lowercased surface
    bool is_word = false;    // contains at least one alphabetic character
};

inline Token make_token(std::string surface) {
    Token t;
    t.normalized = lowercase(surface);
    t.is_word = std::any_of(surface.begin(), surface.end(), is_letter_byte);
    t.surface = std::move(surface);
    return t;
}

namespace detail {

// Whitespace-delimited chunk -> tokens: leading/trailing punctuation
// characters peel off as single-char tokens, the core keeps internal
// punctuation so hyphenated compounds stay one word.
inline void tokenize_chunk(std::string_view chunk, std::vector<Token>& out) {
    std::size_t b = 0, e = chunk.size();
    while (b < e && is_punct_byte(chunk[b])) {
        out.push_back(make_token(std::string(1, chunk[b])));
        ++b;
    }
    std::size_t core_end = e;
    while (core_end > b && is_punct_byte(chunk[core_end - 1])) --core_end;
    if (core_end > b)
        out.push_back(make_token(std::string(chunk.substr(b, core_end - b))));
    for (std::size_t k = core_end; k < e; ++k)
        out.push_back(make_token(std::string(1, chunk[k])));
}

}  // namespace detail

inline std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        if (is_space_byte(text[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && !is_space_byte(text[j])) ++j;
        detail::tokenize_chunk(text.substr(i, j - i), out);
        i = j;
    }
    return out;
}

struct Sentence {
    std::string text;
    std::vector<Token> tokens;
    std::size_t begin = 0;  // byte offsets into the source text
    std::size_t end = 0;
};

namespace detail {

// Dotted forms that must not terminate a sentence. "et al." is matched by
// its final chunk "al.".
inline const std::unordered_set<std::string>& abbreviations() {
    static const std::unordered_set<std::string> set = {
        "fig.",  "figs.", "eq.",   "eqs.",  "sec.",  "secs.", "ref.",
        "refs.", "tab.",  "tabs.", "no.",   "nos.",  "vol.",  "vols.",
        "al.",   "e.g.",  "i.e.",  "cf.",   "vs.",   "ca.",   "dr.",
        "mr.",   "mrs.",  "ms.",   "prof.", "inc.",  "ltd.",  "co.",
        "jr.",   "sr.",   "st.",   "approx.", "dept.", "univ.", "ed.",
        "eds.",  "pp.",   "resp.",
    };
    return set;
}

inline bool is_abbreviation_at(std::string_view text, std::size_t dot_pos) {
    std::size_t cs = dot_pos;
    while (cs > 0 && !is_space_byte(text[cs - 1])) --cs;
    while (cs < dot_pos && is_punct_byte(text[cs]) && text[cs] != '.') ++cs;
    std::string chunk = lowercase(text.substr(cs, dot_pos - cs + 1));
    if (abbreviations().count(chunk)) return true;
    // single-letter initials: "J. Smith"
    return chunk.size() == 2 && is_ascii_alpha(chunk[0]);
}

}  // namespace detail

// Rule-based segmentation: a boundary is a run of [.!?] followed by
// whitespace and an uppercase letter or digit (or end of text). A single
// '.' whose chunk is on the abbreviation list never breaks.
inline std::vector<Sentence> split_sentences(std::string_view text) {
    std::vector<Sentence> out;
    const std::size_t n = text.size();
    auto skip_ws = [&](std::size_t p) {
        while (p < n && is_space_byte(text[p])) ++p;
        return p;
    };
    auto emit = [&](std::size_t from, std::size_t to) {
        while (to > from && is_space_byte(text[to - 1])) --to;
        if (to <= from) return;
        Sentence s;
        s.begin = from;
        s.end = to;
        s.text = std::string(text.substr(from, to - from));
        s.tokens = tokenize(s.text);
        out.push_back(std::move(s));
    };

    std::size_t start = skip_ws(0);
    std::size_t pos = start;
    while (pos < n) {
        char c = text[pos];
        if (c != '.' && c != '!' && c != '?') {
            ++pos;
            continue;
        }
        std::size_t run_end = pos;
        while (run_end + 1 < n &&
               (text[run_end + 1] == '.' || text[run_end + 1] == '!' ||
                text[run_end + 1] == '?'))
            ++run_end;
        bool boundary = true;
        if (run_end == pos && c == '.' && detail::is_abbreviation_at(text, pos))
            boundary = false;
        if (boundary && run_end + 1 < n) {
            if (!is_space_byte(text[run_end + 1])) {
                boundary = false;
            } else {
                std::size_t next = skip_ws(run_end + 1);
                if (next < n && !is_ascii_upper(text[next]) &&
                    !is_ascii_digit(text[next]))
                    boundary = false;
            }
        }
        if (!boundary) {
            pos = run_end + 1;
            continue;
        }
        emit(start, run_end + 1);
        pos = skip_ws(run_end + 1);
        start = pos;
    }
    if (start < n) emit(start, n);
    return out;
}

// Heuristic syllable count: maximal contiguous vowel groups (a,e,i,o,u,y)
// in the normalized form, minus a trailing silent 'e' unless the word ends
// in consonant+"le" (where the 'e' carries its own syllable), clamped to 1.
inline int count_syllables(const Token& word) {
    if (!word.is_word)
        throw ValidationError("count_syllables: token is not a word: '" +
                              word.surface + "'");
    const std::string& s = word.normalized;
    auto is_vowel = [](char c) {
        return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
    };
    int groups = 0;
    bool in_group = false;
    for (char c : s) {
        bool v = is_vowel(c);
        if (v && !in_group) ++groups;
        in_group = v;
    }
    const std::size_t len = s.size();
    if (len >= 2 && s[len - 1] == 'e') {
        bool consonant_le =
            len >= 3 && s[len - 2] == 'l' && !is_vowel(s[len - 3]);
        if (!consonant_le) --groups;
    }
    return std::max(groups, 1);
}

inline std::size_t word_count(const std::vector<Token>& tokens) {
    std::size_t n = 0;
    for (const Token& t : tokens)
        if (t.is_word) ++n;
    return n;
}

inline std::size_t word_count(std::string_view text) {
    return word_count(tokenize(text));
}

// Alphabetic codepoints across all tokens (Coleman-Liau's letter count).
inline std::size_t letter_count(std::string_view text) {
    std::size_t n = 0;
    for (char c : text) {
        if (is_ascii_alpha(c)) ++n;
        // lead byte of a multi-byte codepoint
        else if ((static_cast<unsigned char>(c) & 0xC0) == 0xC0) ++n;
    }
    return n;
}

inline std::size_t syllable_count(const std::vector<Token>& tokens) {
    std::size_t n = 0;
    for (const Token& t : tokens)
        if (t.is_word) n += static_cast<std::size_t>(count_syllables(t));
    return n;
}

}  // namespace atlas::textproc
