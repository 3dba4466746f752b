#pragma once

// Extractive baselines: lead heuristics, the greedy ROUGE oracle, and the
// unsupervised graph rankers (TextRank, LexRank, HipoRank). Everything is
// deterministic; score ties always break toward the lower sentence index
// and selections are emitted in document order.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "atlas/corpus.hpp"
#include "atlas/errors.hpp"
#include "atlas/evaluation.hpp"
#include "atlas/textproc.hpp"

namespace atlas::summarizers {

struct ExtractiveSummary {
    std::vector<std::size_t> sentence_indices;  // strictly increasing
    std::string text;                           // selected sentences joined
};

struct SentenceGraph {
    std::size_t n = 0;
    std::vector<double> weights;  // row-major n*n, diagonal zero
    bool directed = false;

    double& at(std::size_t i, std::size_t j) { return weights[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return weights[i * n + j]; }
};

struct PowerIterationResult {
    std::vector<double> scores;  // sums to 1
    double residual = 0.0;       // final L1 change
    int iterations = 0;
};

namespace detail {

inline ExtractiveSummary from_indices(
    const std::vector<textproc::Sentence>& sentences,
    std::vector<std::size_t> indices) {
    std::sort(indices.begin(), indices.end());
    ExtractiveSummary out;
    out.sentence_indices = std::move(indices);
    for (std::size_t idx : out.sentence_indices) {
        if (!out.text.empty()) out.text += ' ';
        out.text += sentences[idx].text;
    }
    return out;
}

// top-k by score, ties toward the lower index
inline std::vector<std::size_t> top_k(const std::vector<double>& scores,
                                      std::size_t k) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] > scores[b];
    });
    order.resize(std::min(k, order.size()));
    return order;
}

inline std::vector<std::string> sentence_words(const textproc::Sentence& s) {
    std::vector<std::string> words;
    for (const auto& t : s.tokens)
        if (t.is_word) words.push_back(t.normalized);
    return words;
}

}  // namespace detail

// ---------------------------------------------------------------------
// Lead heuristics

inline ExtractiveSummary lead3(const std::vector<textproc::Sentence>& sentences) {
    std::vector<std::size_t> indices;
    for (std::size_t i = 0; i < std::min<std::size_t>(3, sentences.size()); ++i)
        indices.push_back(i);
    return detail::from_indices(sentences, std::move(indices));
}

// smallest prefix reaching target_words (whole document if never reached)
inline ExtractiveSummary leadk(const std::vector<textproc::Sentence>& sentences,
                               std::size_t target_words) {
    if (target_words == 0)
        throw ValidationError("leadk: target_words must be positive");
    std::vector<std::size_t> indices;
    std::size_t words = 0;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        indices.push_back(i);
        words += textproc::word_count(sentences[i].tokens);
        if (words >= target_words) break;
    }
    return detail::from_indices(sentences, std::move(indices));
}

// ---------------------------------------------------------------------
// Greedy oracle

// Greedy selection maximizing mean of ROUGE-1 and ROUGE-2 F1 against the
// reference; stops when no sentence strictly improves the objective or
// max_sentences is reached (0 = unbounded).
inline ExtractiveSummary oracle(const std::vector<textproc::Sentence>& sentences,
                                std::string_view reference,
                                std::size_t max_sentences = 0) {
    if (reference.empty())
        throw ValidationError("oracle: reference must be non-empty");
    const evaluation::RougeOptions opts;
    auto ref_tokens = evaluation::rouge_tokens(reference, opts);
    std::vector<std::vector<std::string>> sent_tokens;
    sent_tokens.reserve(sentences.size());
    for (const auto& s : sentences)
        sent_tokens.push_back(evaluation::rouge_tokens(s.text, opts));

    auto objective = [&](const std::vector<std::size_t>& picked) {
        std::vector<std::string> cand;
        for (std::size_t idx : picked)
            cand.insert(cand.end(), sent_tokens[idx].begin(), sent_tokens[idx].end());
        double r1 = evaluation::rouge_n_tokens(cand, ref_tokens, 1).f1;
        double r2 = evaluation::rouge_n_tokens(cand, ref_tokens, 2).f1;
        return (r1 + r2) / 2.0;
    };

    std::vector<std::size_t> picked;
    std::vector<bool> used(sentences.size(), false);
    double best_score = 0.0;
    while (max_sentences == 0 || picked.size() < max_sentences) {
        double round_best = best_score;
        std::size_t round_idx = sentences.size();
        for (std::size_t i = 0; i < sentences.size(); ++i) {
            if (used[i]) continue;
            auto trial = picked;
            trial.insert(std::upper_bound(trial.begin(), trial.end(), i), i);
            double score = objective(trial);
            if (score > round_best) {
                round_best = score;
                round_idx = i;
            }
        }
        if (round_idx == sentences.size()) break;  // no strict improvement
        used[round_idx] = true;
        picked.insert(std::upper_bound(picked.begin(), picked.end(), round_idx),
                      round_idx);
        best_score = round_best;
    }
    return detail::from_indices(sentences, std::move(picked));
}

// ---------------------------------------------------------------------
// Power iteration (damped PageRank on a row-normalized graph)

inline PowerIterationResult power_iteration(const SentenceGraph& graph,
                                            double damping = 0.85,
                                            double eps = 1e-6,
                                            int max_iterations = 1000) {
    const std::size_t n = graph.n;
    PowerIterationResult result;
    if (n == 0) return result;

    std::vector<double> row_sum(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) row_sum[i] += graph.at(i, j);

    std::vector<double> p(n, 1.0 / static_cast<double>(n)), next(n, 0.0);
    const double teleport = (1.0 - damping) / static_cast<double>(n);
    for (int iter = 1; iter <= max_iterations; ++iter) {
        double dangling = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (row_sum[i] == 0.0) dangling += p[i];
        std::fill(next.begin(), next.end(),
                  teleport + damping * dangling / static_cast<double>(n));
        for (std::size_t i = 0; i < n; ++i) {
            if (row_sum[i] == 0.0) continue;
            const double scale = damping * p[i] / row_sum[i];
            for (std::size_t j = 0; j < n; ++j) {
                double w = graph.at(i, j);
                if (w != 0.0) next[j] += scale * w;
            }
        }
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) change += std::abs(next[i] - p[i]);
        p.swap(next);
        result.iterations = iter;
        result.residual = change;
        if (change < eps) break;
    }
    result.scores = std::move(p);
    return result;
}

// ---------------------------------------------------------------------
// TextRank

// weight(i,j) = |shared distinct words| / (log(1+len_i) + log(1+len_j))
inline SentenceGraph textrank_graph(
    const std::vector<textproc::Sentence>& sentences) {
    const std::size_t n = sentences.size();
    SentenceGraph g;
    g.n = n;
    g.directed = false;
    g.weights.assign(n * n, 0.0);

    std::vector<std::vector<std::string>> words(n);
    std::vector<std::map<std::string, int>> sets(n);
    for (std::size_t i = 0; i < n; ++i) {
        words[i] = detail::sentence_words(sentences[i]);
        for (const auto& w : words[i]) sets[i][w] = 1;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            std::size_t shared = 0;
            for (const auto& [w, _] : sets[i])
                if (sets[j].count(w)) ++shared;
            if (shared == 0) continue;
            double denom = std::log(1.0 + static_cast<double>(words[i].size())) +
                           std::log(1.0 + static_cast<double>(words[j].size()));
            double w = static_cast<double>(shared) / denom;
            g.at(i, j) = w;
            g.at(j, i) = w;
        }
    }
    return g;
}

inline ExtractiveSummary textrank(const std::vector<textproc::Sentence>& sentences,
                                  std::size_t summary_sentences,
                                  double damping = 0.85, double eps = 1e-6) {
    if (sentences.empty()) return {};
    auto result = power_iteration(textrank_graph(sentences), damping, eps);
    auto picked = detail::top_k(result.scores, summary_sentences);
    return detail::from_indices(sentences, std::move(picked));
}

// ---------------------------------------------------------------------
// LexRank

// TF-IDF sentence vectors with smoothed IDF over the document's sentences.
inline std::vector<std::map<std::string, double>> tfidf_vectors(
    const std::vector<std::vector<std::string>>& sentence_words) {
    const std::size_t n = sentence_words.size();
    std::map<std::string, std::size_t> df;
    std::vector<std::map<std::string, double>> tf(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& w : sentence_words[i]) tf[i][w] += 1.0;
        for (const auto& [w, _] : tf[i]) ++df[w];
    }
    for (std::size_t i = 0; i < n; ++i)
        for (auto& [w, v] : tf[i]) {
            double idf = std::log((1.0 + static_cast<double>(n)) /
                                  (1.0 + static_cast<double>(df[w]))) +
                         1.0;
            v *= idf;
        }
    return tf;
}

inline double cosine(const std::map<std::string, double>& a,
                     const std::map<std::string, double>& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (const auto& [w, v] : a) na += v * v;
    for (const auto& [w, v] : b) nb += v * v;
    if (na == 0.0 || nb == 0.0) return 0.0;
    auto it = a.begin();
    auto jt = b.begin();
    while (it != a.end() && jt != b.end()) {
        if (it->first < jt->first) ++it;
        else if (jt->first < it->first) ++jt;
        else {
            dot += it->second * jt->second;
            ++it;
            ++jt;
        }
    }
    return dot / std::sqrt(na * nb);
}

inline SentenceGraph lexrank_graph(const std::vector<textproc::Sentence>& sentences,
                                   double threshold = 0.1) {
    const std::size_t n = sentences.size();
    std::vector<std::vector<std::string>> words(n);
    for (std::size_t i = 0; i < n; ++i)
        words[i] = detail::sentence_words(sentences[i]);
    auto vectors = tfidf_vectors(words);

    SentenceGraph g;
    g.n = n;
    g.directed = false;
    g.weights.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double sim = cosine(vectors[i], vectors[j]);
            if (sim < threshold) continue;  // sparsify below threshold
            g.at(i, j) = sim;
            g.at(j, i) = sim;
        }
    return g;
}

inline ExtractiveSummary lexrank(const std::vector<textproc::Sentence>& sentences,
                                 std::size_t summary_sentences,
                                 double threshold = 0.1, double damping = 0.85,
                                 double eps = 1e-6) {
    if (sentences.empty()) return {};
    auto result = power_iteration(lexrank_graph(sentences, threshold), damping, eps);
    auto picked = detail::top_k(result.scores, summary_sentences);
    return detail::from_indices(sentences, std::move(picked));
}

// ---------------------------------------------------------------------
// HipoRank

// position score favors sentences near their section's boundaries
inline double boundary_position_score(std::size_t index, std::size_t n_sentences,
                                      double boundary_bias) {
    if (n_sentences <= 1) return 1.0 + boundary_bias;
    double dist = static_cast<double>(
        std::min(index, n_sentences - 1 - index));
    double half = std::ceil(static_cast<double>(n_sentences) / 2.0);
    return 1.0 + boundary_bias * (1.0 - dist / half);
}

// Directed hierarchical centrality: within-section sentence-sentence
// edges plus cross-section sentence-to-section edges, both scaled by the
// receiving sentence's boundary position score, mixed with
// lambda_section. Selection is top-k by centrality in document order.
inline ExtractiveSummary hiporank(const corpus::Article& article,
                                  std::size_t summary_sentences,
                                  double lambda_section = 1.0,
                                  double boundary_bias = 1.0) {
    if (article.sections.empty())
        throw ValidationError("hiporank: article has no sections");

    // abstract rides along as the leading section (baseline input rule)
    std::vector<std::string_view> section_texts;
    if (!article.abstract.empty()) section_texts.push_back(article.abstract);
    for (const auto& s : article.sections) section_texts.push_back(s.text);

    std::vector<textproc::Sentence> all;
    std::vector<std::size_t> section_of;
    std::vector<std::vector<std::size_t>> members;
    for (std::size_t sec = 0; sec < section_texts.size(); ++sec) {
        auto sentences = textproc::split_sentences(section_texts[sec]);
        members.emplace_back();
        for (auto& s : sentences) {
            members.back().push_back(all.size());
            section_of.push_back(sec);
            all.push_back(std::move(s));
        }
    }
    if (all.empty()) return {};

    std::vector<std::vector<std::string>> words(all.size());
    for (std::size_t i = 0; i < all.size(); ++i)
        words[i] = detail::sentence_words(all[i]);
    auto vectors = tfidf_vectors(words);

    // section representation: mean of member sentence vectors
    std::vector<std::map<std::string, double>> section_vec(members.size());
    for (std::size_t sec = 0; sec < members.size(); ++sec) {
        for (std::size_t idx : members[sec])
            for (const auto& [w, v] : vectors[idx]) section_vec[sec][w] += v;
        if (!members[sec].empty())
            for (auto& [w, v] : section_vec[sec])
                v /= static_cast<double>(members[sec].size());
    }

    std::vector<double> centrality(all.size(), 0.0);
    for (std::size_t sec = 0; sec < members.size(); ++sec) {
        const auto& idxs = members[sec];
        for (std::size_t a = 0; a < idxs.size(); ++a) {
            const std::size_t i = idxs[a];
            double pos = boundary_position_score(a, idxs.size(), boundary_bias);
            double within = 0.0;
            for (std::size_t b = 0; b < idxs.size(); ++b) {
                if (a == b) continue;
                within += cosine(vectors[i], vectors[idxs[b]]);
            }
            double cross = 0.0;
            for (std::size_t other = 0; other < members.size(); ++other) {
                if (other == sec || members[other].empty()) continue;
                cross += cosine(vectors[i], section_vec[other]);
            }
            centrality[i] = pos * (within + lambda_section * cross);
        }
    }

    auto picked = detail::top_k(centrality, summary_sentences);
    return detail::from_indices(all, std::move(picked));
}

// ---------------------------------------------------------------------
// Document sentences for the flat (non-hierarchical) baselines: abstract
// plus section bodies, in order. Titles are headings, not sentences.

inline std::vector<textproc::Sentence> document_sentences(
    const corpus::Article& article) {
    std::string text = article.abstract;
    for (const auto& s : article.sections) {
        if (!text.empty()) text += "\n\n";
        text += s.text;
    }
    return textproc::split_sentences(text);
}

}  // namespace atlas::summarizers
