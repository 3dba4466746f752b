#pragma once

// The four control attributes of a summary — length in characters (L),
// Flesch-Kincaid grade level (R), background-sentence percentage (BG) and
// content-word entropy (CWE) — plus the Dale-Chall and Coleman-Liau
// indices used in evaluation.
//
// BG classification and content-word extraction run on pluggable
// backends: a self-contained heuristic by default, or precomputed
// per-sentence annotations keyed by (article_id, summary_type).

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "atlas/corpus.hpp"
#include "atlas/data/background_cues.hpp"
#include "atlas/data/dale_chall.hpp"
#include "atlas/data/stopwords.hpp"
#include "atlas/errors.hpp"
#include "atlas/textproc.hpp"

namespace atlas::attributes {

struct AttributeVector {
    std::size_t length_chars = 0;  // L
    double fkgl = 0.0;             // R
    double bg_pct = 0.0;           // BG, percent in [0,100]
    double cwe = 0.0;              // CWE, nats
};

// ---------------------------------------------------------------------
// Length and readability

inline std::size_t length_chars(std::string_view summary) {
    return textproc::count_codepoints(summary);
}

inline double fkgl(std::string_view text) {
    auto sentences = textproc::split_sentences(text);
    auto tokens = textproc::tokenize(text);
    const std::size_t words = textproc::word_count(tokens);
    if (sentences.empty() || words == 0)
        throw ValidationError("fkgl: text needs at least one sentence and one word");
    const std::size_t syllables = textproc::syllable_count(tokens);
    const double w = static_cast<double>(words);
    const double s = static_cast<double>(sentences.size());
    return 0.39 * (w / s) + 11.8 * (static_cast<double>(syllables) / w) - 15.59;
}

namespace detail {

inline bool is_familiar(const std::string& normalized,
                        const std::unordered_set<std::string>& familiar) {
    if (familiar.count(normalized)) return true;
    auto try_strip = [&](std::string_view suffix) {
        if (normalized.size() > suffix.size() &&
            normalized.compare(normalized.size() - suffix.size(), suffix.size(),
                               suffix) == 0) {
            return familiar.count(
                       normalized.substr(0, normalized.size() - suffix.size())) > 0;
        }
        return false;
    };
    return try_strip("s") || try_strip("es") || try_strip("ed") || try_strip("ing");
}

}  // namespace detail

inline double dcrs(std::string_view text,
                   const std::unordered_set<std::string>& familiar =
                       data::dale_chall_words()) {
    auto sentences = textproc::split_sentences(text);
    auto tokens = textproc::tokenize(text);
    const std::size_t words = textproc::word_count(tokens);
    if (sentences.empty() || words == 0)
        throw ValidationError("dcrs: text needs at least one sentence and one word");
    std::size_t difficult = 0;
    for (const auto& t : tokens)
        if (t.is_word && !detail::is_familiar(t.normalized, familiar)) ++difficult;
    const double pct_difficult =
        100.0 * static_cast<double>(difficult) / static_cast<double>(words);
    const double avg_sentence_len =
        static_cast<double>(words) / static_cast<double>(sentences.size());
    double score = 0.1579 * pct_difficult + 0.0496 * avg_sentence_len;
    if (pct_difficult > 5.0) score += 3.6365;
    return score;
}

inline double cli_index(std::string_view text) {
    auto tokens = textproc::tokenize(text);
    const std::size_t words = textproc::word_count(tokens);
    if (words == 0) throw ValidationError("cli_index: text has no words");
    const std::size_t sentences = textproc::split_sentences(text).size();
    const double w = static_cast<double>(words);
    const double letters_per_100 = 100.0 * static_cast<double>(textproc::letter_count(text)) / w;
    const double sentences_per_100 = 100.0 * static_cast<double>(sentences) / w;
    return 0.0588 * letters_per_100 - 0.296 * sentences_per_100 - 15.8;
}

// ---------------------------------------------------------------------
// Unigram model (entropy backend)

struct UnigramModel {
    std::unordered_map<std::string, std::int64_t> counts;
    std::int64_t total = 0;
    std::int64_t vocab_size = 0;  // distinct observed types + 1 (unknown)
    double smoothing_k = 1.0;

    // add-k smoothed; strictly positive for any token
    double probability(const std::string& normalized) const {
        std::int64_t c = 0;
        auto it = counts.find(normalized);
        if (it != counts.end()) c = it->second;
        return (static_cast<double>(c) + smoothing_k) /
               (static_cast<double>(total) +
                smoothing_k * static_cast<double>(vocab_size));
    }
};

inline UnigramModel train_unigram_from_texts(
    const std::vector<std::string_view>& texts, double smoothing_k = 1.0) {
    if (smoothing_k <= 0.0)
        throw ValidationError("train_unigram: smoothing_k must be positive");
    UnigramModel model;
    model.smoothing_k = smoothing_k;
    for (std::string_view text : texts)
        for (const auto& t : textproc::tokenize(text))
            if (t.is_word) {
                ++model.counts[t.normalized];
                ++model.total;
            }
    if (model.total == 0)
        throw ValidationError("train_unigram: corpus has no word tokens");
    model.vocab_size = static_cast<std::int64_t>(model.counts.size()) + 1;
    return model;
}

// Counts over all body text and both reference summaries of the pool.
inline UnigramModel train_unigram(const std::vector<corpus::Article>& articles,
                                  double smoothing_k = 1.0) {
    if (articles.empty())
        throw ValidationError("train_unigram: empty article list");
    std::vector<std::string_view> texts;
    texts.reserve(articles.size() * 4);
    for (const corpus::Article& a : articles) {
        texts.push_back(a.title);
        for (const corpus::Section& s : a.sections) texts.push_back(s.text);
        texts.push_back(a.abstract);
        texts.push_back(a.lay_summary);
    }
    return train_unigram_from_texts(texts, smoothing_k);
}

inline double token_entropy(const textproc::Token& token,
                            const UnigramModel& model) {
    return -std::log(model.probability(token.normalized));
}

// ---------------------------------------------------------------------
// Context and backends

enum class BgBackend { HEURISTIC, PRECOMPUTED };
enum class ContentWordBackend { HEURISTIC, PRECOMPUTED };

// Identifies a reference summary for precomputed-annotation lookups.
struct SummaryKey {
    std::string article_id;
    corpus::SummaryType type = corpus::SummaryType::ABSTRACT;

    bool operator<(const SummaryKey& o) const {
        return std::tie(article_id, type) < std::tie(o.article_id, o.type);
    }
    std::string describe() const {
        return "(" + article_id + ", " + corpus::to_string(type) + ")";
    }
};

struct AttributeContext {
    UnigramModel unigram;
    std::set<std::string> stopword_list = data::stopwords();

    BgBackend bg_backend = BgBackend::HEURISTIC;
    // (article_id, summary_type) -> per-sentence background labels
    std::map<SummaryKey, std::vector<bool>> bg_labels;

    ContentWordBackend cw_backend = ContentWordBackend::HEURISTIC;
    // (article_id, summary_type, sentence_index) -> token indices
    std::map<std::pair<SummaryKey, std::size_t>, std::vector<std::size_t>> cw_spans;
};

// ---------------------------------------------------------------------
// Background percentage

// Position rule: the first floor(3n/10) sentences count as background.
inline bool bg_position_rule(std::size_t sentence_index, std::size_t n_sentences) {
    return sentence_index < (3 * n_sentences) / 10;
}

inline bool bg_cue_rule(const textproc::Sentence& sentence) {
    std::string lower = textproc::lowercase(sentence.text);
    for (const std::string& cue : data::background_cues())
        if (lower.find(cue) != std::string::npos) return true;
    return false;
}

inline double bg_percentage(std::string_view summary, const AttributeContext& ctx,
                            const std::optional<SummaryKey>& key = std::nullopt) {
    auto sentences = textproc::split_sentences(summary);
    const std::size_t n = sentences.size();
    if (n == 0) throw ValidationError("bg_percentage: summary has no sentences");

    std::size_t background = 0;
    if (ctx.bg_backend == BgBackend::HEURISTIC) {
        for (std::size_t i = 0; i < n; ++i)
            if (bg_position_rule(i, n) || bg_cue_rule(sentences[i])) ++background;
    } else {
        if (!key)
            throw ValidationError("bg_percentage: precomputed backend needs a summary key");
        auto it = ctx.bg_labels.find(*key);
        if (it == ctx.bg_labels.end())
            throw ValidationError("bg_percentage: no precomputed labels for " +
                                  key->describe());
        if (it->second.size() < n)
            throw ValidationError("bg_percentage: precomputed labels for " +
                                  key->describe() + " cover " +
                                  std::to_string(it->second.size()) + " of " +
                                  std::to_string(n) + " sentences");
        for (std::size_t i = 0; i < n; ++i)
            if (it->second[i]) ++background;
    }
    return 100.0 * static_cast<double>(background) / static_cast<double>(n);
}

// ---------------------------------------------------------------------
// Content words and entropy

// Heuristic content-word filter: word tokens, not stopwords, >= 3 chars.
inline std::vector<textproc::Token> content_words(
    const textproc::Sentence& sentence, const AttributeContext& ctx) {
    std::vector<textproc::Token> out;
    for (const auto& t : sentence.tokens) {
        if (!t.is_word) continue;
        if (ctx.stopword_list.count(t.normalized)) continue;
        if (textproc::count_codepoints(t.normalized) < 3) continue;
        out.push_back(t);
    }
    return out;
}

namespace detail {

inline std::vector<textproc::Token> content_words_of_summary(
    std::string_view summary, const AttributeContext& ctx,
    const std::optional<SummaryKey>& key) {
    auto sentences = textproc::split_sentences(summary);
    std::vector<textproc::Token> words;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        if (ctx.cw_backend == ContentWordBackend::HEURISTIC) {
            for (auto& t : content_words(sentences[i], ctx))
                words.push_back(std::move(t));
        } else {
            if (!key)
                throw ValidationError("cwe: precomputed backend needs a summary key");
            auto it = ctx.cw_spans.find({*key, i});
            if (it == ctx.cw_spans.end())
                throw ValidationError("cwe: no precomputed content words for " +
                                      key->describe() + " sentence " +
                                      std::to_string(i));
            for (std::size_t idx : it->second) {
                if (idx >= sentences[i].tokens.size())
                    throw ValidationError("cwe: token index " + std::to_string(idx) +
                                          " out of range for " + key->describe() +
                                          " sentence " + std::to_string(i));
                words.push_back(sentences[i].tokens[idx]);
            }
        }
    }
    return words;
}

}  // namespace detail

inline double cwe(std::string_view summary, const AttributeContext& ctx,
                  const std::optional<SummaryKey>& key = std::nullopt) {
    auto words = detail::content_words_of_summary(summary, ctx, key);
    if (words.empty())
        throw DegenerateDataError("cwe: summary has no content words");
    double sum = 0.0;
    for (const auto& t : words) sum += token_entropy(t, ctx.unigram);
    return sum / static_cast<double>(words.size());
}

// ---------------------------------------------------------------------
// Composition

inline AttributeVector attribute_vector(
    std::string_view summary, const AttributeContext& ctx,
    const std::optional<SummaryKey>& key = std::nullopt) {
    AttributeVector v;
    v.length_chars = length_chars(summary);
    v.fkgl = fkgl(summary);
    v.bg_pct = bg_percentage(summary, ctx, key);
    v.cwe = cwe(summary, ctx, key);
    return v;
}

// Batch-run variant: a summary with no content words gets cwe = 0 instead
// of failing the whole corpus. `cwe_degenerate` reports when that happened.
inline AttributeVector attribute_vector_lenient(
    std::string_view summary, const AttributeContext& ctx,
    const std::optional<SummaryKey>& key = std::nullopt,
    bool* cwe_degenerate = nullptr) {
    AttributeVector v;
    v.length_chars = length_chars(summary);
    v.fkgl = fkgl(summary);
    v.bg_pct = bg_percentage(summary, ctx, key);
    if (cwe_degenerate) *cwe_degenerate = false;
    try {
        v.cwe = cwe(summary, ctx, key);
    } catch (const DegenerateDataError&) {
        v.cwe = 0.0;
        if (cwe_degenerate) *cwe_degenerate = true;
    }
    return v;
}

}  // namespace atlas::attributes
