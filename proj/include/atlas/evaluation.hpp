#pragma once

// ROUGE-1/2/L F1 scoring and report assembly: per (system, summary type)
// rows of mean ROUGE, FKGL, DCRS and CLI over the scored documents.

#include <algorithm>
#include <cstdio>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "atlas/attributes.hpp"
#include "atlas/corpus.hpp"
#include "atlas/errors.hpp"
#include "atlas/porter.hpp"
#include "atlas/textproc.hpp"

namespace atlas::evaluation {

struct RougeScore {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct RougeOptions {
    bool stemming = true;  // Porter-stem normalized tokens
};

// Normalized word tokens feeding every ROUGE variant.
inline std::vector<std::string> rouge_tokens(std::string_view text,
                                             const RougeOptions& opts = {}) {
    std::vector<std::string> out;
    for (const auto& t : textproc::tokenize(text)) {
        if (!t.is_word) continue;
        out.push_back(opts.stemming ? porter::stem(t.normalized) : t.normalized);
    }
    return out;
}

namespace detail {

inline RougeScore from_counts(double overlap, double candidate_total,
                              double reference_total) {
    RougeScore s;
    if (candidate_total > 0) s.precision = overlap / candidate_total;
    if (reference_total > 0) s.recall = overlap / reference_total;
    if (s.precision + s.recall > 0)
        s.f1 = 2 * s.precision * s.recall / (s.precision + s.recall);
    return s;
}

inline std::unordered_map<std::string, int> ngram_counts(
    const std::vector<std::string>& tokens, int n) {
    std::unordered_map<std::string, int> counts;
    if (static_cast<int>(tokens.size()) < n) return counts;
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i) {
        std::string gram = tokens[i];
        for (int k = 1; k < n; ++k) {
            gram += '\x1f';
            gram += tokens[i + static_cast<std::size_t>(k)];
        }
        ++counts[gram];
    }
    return counts;
}

inline std::size_t lcs_length(const std::vector<std::string>& a,
                              const std::vector<std::string>& b) {
    const std::size_t m = a.size(), n = b.size();
    if (m == 0 || n == 0) return 0;
    std::vector<std::size_t> prev(n + 1, 0), cur(n + 1, 0);
    for (std::size_t i = 1; i <= m; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
            if (a[i - 1] == b[j - 1])
                cur[j] = prev[j - 1] + 1;
            else
                cur[j] = std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    return prev[n];
}

}  // namespace detail

// Multiset n-gram overlap; empty n-gram sets give all-zero scores.
inline RougeScore rouge_n_tokens(const std::vector<std::string>& candidate,
                                 const std::vector<std::string>& reference,
                                 int n) {
    if (n < 1 || n > 2)
        throw ValidationError("rouge_n: n must be 1 or 2");
    auto cand = detail::ngram_counts(candidate, n);
    auto ref = detail::ngram_counts(reference, n);
    double overlap = 0, cand_total = 0, ref_total = 0;
    for (const auto& [gram, c] : cand) cand_total += c;
    for (const auto& [gram, c] : ref) {
        ref_total += c;
        auto it = cand.find(gram);
        if (it != cand.end()) overlap += std::min(c, it->second);
    }
    return detail::from_counts(overlap, cand_total, ref_total);
}

inline RougeScore rouge_n(std::string_view candidate, std::string_view reference,
                          int n, const RougeOptions& opts = {}) {
    return rouge_n_tokens(rouge_tokens(candidate, opts),
                          rouge_tokens(reference, opts), n);
}

inline RougeScore rouge_l_tokens(const std::vector<std::string>& candidate,
                                 const std::vector<std::string>& reference) {
    double lcs = static_cast<double>(detail::lcs_length(candidate, reference));
    return detail::from_counts(lcs, static_cast<double>(candidate.size()),
                               static_cast<double>(reference.size()));
}

inline RougeScore rouge_l(std::string_view candidate, std::string_view reference,
                          const RougeOptions& opts = {}) {
    return rouge_l_tokens(rouge_tokens(candidate, opts),
                          rouge_tokens(reference, opts));
}

// ---------------------------------------------------------------------
// Report assembly

struct SystemOutput {
    std::string system;
    std::string article_id;
    corpus::SummaryType summary_type = corpus::SummaryType::ABSTRACT;
    std::string text;
};

struct EvalRow {
    std::string system;
    corpus::SummaryType summary_type = corpus::SummaryType::ABSTRACT;
    std::size_t n = 0;
    RougeScore r1, r2, rl;  // arithmetic means over documents
    double fkgl = 0.0, dcrs = 0.0, cli = 0.0;
};

struct EvalReport {
    std::vector<EvalRow> rows;  // ordered by (system, summary_type)
};

inline EvalReport evaluate_systems(const std::vector<SystemOutput>& outputs,
                                   const std::vector<corpus::Article>& references,
                                   const RougeOptions& opts = {}) {
    std::unordered_map<std::string, const corpus::Article*> by_id;
    for (const auto& a : references) by_id.emplace(a.id, &a);

    struct Acc {
        std::size_t n = 0;
        RougeScore r1, r2, rl;
        double fkgl = 0, dcrs = 0, cli = 0;
    };
    std::map<std::pair<std::string, corpus::SummaryType>, Acc> groups;

    for (const auto& out : outputs) {
        auto it = by_id.find(out.article_id);
        if (it == by_id.end())
            throw ValidationError("evaluate: unknown article id '" +
                                  out.article_id + "'");
        auto ref = corpus::reference_for(*it->second, out.summary_type);
        if (!ref)
            throw ValidationError("evaluate: no " +
                                  corpus::to_string(out.summary_type) +
                                  " reference for article '" + out.article_id + "'");

        auto cand_tokens = rouge_tokens(out.text, opts);
        auto ref_tokens = rouge_tokens(*ref, opts);
        Acc& acc = groups[{out.system, out.summary_type}];
        ++acc.n;
        auto add = [](RougeScore& sum, const RougeScore& s) {
            sum.precision += s.precision;
            sum.recall += s.recall;
            sum.f1 += s.f1;
        };
        add(acc.r1, rouge_n_tokens(cand_tokens, ref_tokens, 1));
        add(acc.r2, rouge_n_tokens(cand_tokens, ref_tokens, 2));
        add(acc.rl, rouge_l_tokens(cand_tokens, ref_tokens));
        // degenerate candidates (no words/sentences) score 0 readability
        try {
            acc.fkgl += attributes::fkgl(out.text);
        } catch (const ValidationError&) {}
        try {
            acc.dcrs += attributes::dcrs(out.text);
        } catch (const ValidationError&) {}
        try {
            acc.cli += attributes::cli_index(out.text);
        } catch (const ValidationError&) {}
    }

    EvalReport report;
    for (const auto& [key, acc] : groups) {
        EvalRow row;
        row.system = key.first;
        row.summary_type = key.second;
        row.n = acc.n;
        const double n = static_cast<double>(acc.n);
        auto mean = [n](const RougeScore& sum) {
            return RougeScore{sum.precision / n, sum.recall / n, sum.f1 / n};
        };
        row.r1 = mean(acc.r1);
        row.r2 = mean(acc.r2);
        row.rl = mean(acc.rl);
        row.fkgl = acc.fkgl / n;
        row.dcrs = acc.dcrs / n;
        row.cli = acc.cli / n;
        report.rows.push_back(std::move(row));
    }
    return report;
}

namespace detail {

inline std::string fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace detail

// ROUGE columns are reported x100; column order is fixed.
inline std::string report_to_tsv(const EvalReport& report) {
    std::string out = "system\tsummary_type\tn\tR-1\tR-2\tR-L\tFKGL\tDCRS\tCLI\n";
    for (const auto& row : report.rows) {
        out += row.system;
        out += '\t';
        out += corpus::to_string(row.summary_type);
        out += '\t';
        out += std::to_string(row.n);
        out += '\t';
        out += detail::fixed2(row.r1.f1 * 100);
        out += '\t';
        out += detail::fixed2(row.r2.f1 * 100);
        out += '\t';
        out += detail::fixed2(row.rl.f1 * 100);
        out += '\t';
        out += detail::fixed2(row.fkgl);
        out += '\t';
        out += detail::fixed2(row.dcrs);
        out += '\t';
        out += detail::fixed2(row.cli);
        out += '\n';
    }
    return out;
}

inline nlohmann::ordered_json report_to_json(const EvalReport& report) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        nlohmann::ordered_json j;
        j["system"] = row.system;
        j["summary_type"] = corpus::to_string(row.summary_type);
        j["n"] = row.n;
        j["r1"] = {{"precision", row.r1.precision},
                   {"recall", row.r1.recall},
                   {"f1", row.r1.f1}};
        j["r2"] = {{"precision", row.r2.precision},
                   {"recall", row.r2.recall},
                   {"f1", row.r2.f1}};
        j["rl"] = {{"precision", row.rl.precision},
                   {"recall", row.rl.recall},
                   {"f1", row.rl.f1}};
        j["fkgl"] = row.fkgl;
        j["dcrs"] = row.dcrs;
        j["cli"] = row.cli;
        rows.push_back(std::move(j));
    }
    return nlohmann::ordered_json{{"rows", rows}};
}

}  // namespace atlas::evaluation
