#pragma once

// Corpus ingestion for PLOS/eLife-style lay-summarization data: JSONL
// loading with per-line validation, deterministic dataset merging, and
// the input-text construction shared by training-pair emission.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "atlas/errors.hpp"
#include "atlas/jsonl.hpp"

namespace atlas::corpus {

enum class Venue { PLOS, ELIFE };

enum class Split { TRAIN, VAL, TEST };

// Class order is fixed (abstract < plos_lay < elife_lay); tie-breaks and
// report ordering depend on it.
enum class SummaryType { ABSTRACT, PLOS_LAY, ELIFE_LAY };

inline constexpr std::array<SummaryType, 3> kSummaryTypes = {
    SummaryType::ABSTRACT, SummaryType::PLOS_LAY, SummaryType::ELIFE_LAY};

inline std::string to_string(Venue v) {
    return v == Venue::PLOS ? "PLOS" : "eLife";
}

inline std::string to_string(Split s) {
    switch (s) {
        case Split::TRAIN: return "train";
        case Split::VAL: return "val";
        default: return "test";
    }
}

inline std::string to_string(SummaryType t) {
    switch (t) {
        case SummaryType::ABSTRACT: return "abstract";
        case SummaryType::PLOS_LAY: return "plos_lay";
        default: return "elife_lay";
    }
}

inline Venue venue_from_string(std::string_view s) {
    if (s == "PLOS" || s == "plos") return Venue::PLOS;
    if (s == "eLife" || s == "elife" || s == "ELIFE") return Venue::ELIFE;
    throw ValidationError("unknown venue: '" + std::string(s) + "'");
}

inline Split split_from_string(std::string_view s) {
    if (s == "train") return Split::TRAIN;
    if (s == "val") return Split::VAL;
    if (s == "test") return Split::TEST;
    throw ValidationError("unknown split: '" + std::string(s) + "'");
}

inline SummaryType summary_type_from_string(std::string_view s) {
    if (s == "abstract") return SummaryType::ABSTRACT;
    if (s == "plos_lay") return SummaryType::PLOS_LAY;
    if (s == "elife_lay") return SummaryType::ELIFE_LAY;
    throw ValidationError("unknown summary_type: '" + std::string(s) + "'");
}

struct Section {
    std::string heading;
    std::string text;
};

struct Article {
    std::string id;
    std::string title;
    std::vector<Section> sections;
    std::string abstract;
    std::string lay_summary;
    Venue venue = Venue::PLOS;
    Split split = Split::TRAIN;
};

// The lay summary's type is decided by the article's venue.
inline SummaryType lay_type(Venue v) {
    return v == Venue::PLOS ? SummaryType::PLOS_LAY : SummaryType::ELIFE_LAY;
}

// Resolves (article, summary type) to the reference text; empty when the
// type does not exist for this article's venue.
inline std::optional<std::string_view> reference_for(const Article& a,
                                                     SummaryType t) {
    switch (t) {
        case SummaryType::ABSTRACT:
            return std::string_view(a.abstract);
        case SummaryType::PLOS_LAY:
            if (a.venue == Venue::PLOS) return std::string_view(a.lay_summary);
            return std::nullopt;
        default:
            if (a.venue == Venue::ELIFE) return std::string_view(a.lay_summary);
            return std::nullopt;
    }
}

// Model-input text: title, abstract, then section bodies, blank-line
// separated (baselines and training pairs see the abstract in the input).
inline std::string body_text(const Article& a) {
    std::string out = a.title;
    auto append = [&out](std::string_view part) {
        if (part.empty()) return;
        if (!out.empty()) out += "\n\n";
        out += part;
    };
    append(a.abstract);
    for (const Section& s : a.sections) append(s.text);
    return out;
}

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& j,
                                           const char* field,
                                           const std::string& where) {
    auto it = j.find(field);
    if (it == j.end())
        throw ValidationError(where + ": missing field '" + field + "'");
    return *it;
}

inline std::string require_string(const nlohmann::json& j, const char* field,
                                  const std::string& where) {
    const nlohmann::json& v = require_field(j, field, where);
    if (!v.is_string())
        throw ValidationError(where + ": field '" + field + "' must be a string");
    return v.get<std::string>();
}

}  // namespace detail

inline Article article_from_json(const nlohmann::json& j,
                                 const std::string& where) {
    Article a;
    a.id = detail::require_string(j, "id", where);
    a.title = detail::require_string(j, "title", where);
    a.abstract = detail::require_string(j, "abstract", where);
    a.lay_summary = detail::require_string(j, "lay_summary", where);
    a.venue = venue_from_string(detail::require_string(j, "venue", where));
    a.split = split_from_string(detail::require_string(j, "split", where));

    const nlohmann::json& sections = detail::require_field(j, "sections", where);
    if (!sections.is_array())
        throw ValidationError(where + ": field 'sections' must be an array");
    for (const auto& s : sections) {
        Section sec;
        sec.heading = detail::require_string(s, "heading", where + " (section)");
        sec.text = detail::require_string(s, "text", where + " (section)");
        a.sections.push_back(std::move(sec));
    }

    if (a.id.empty()) throw ValidationError(where + ": field id is empty");
    if (a.abstract.empty())
        throw ValidationError(where + ": field abstract is empty");
    if (a.lay_summary.empty())
        throw ValidationError(where + ": field lay_summary is empty");
    if (a.sections.empty())
        throw ValidationError(where + ": field sections is empty");
    return a;
}

inline nlohmann::ordered_json article_to_json(const Article& a) {
    nlohmann::ordered_json j;
    j["id"] = a.id;
    j["title"] = a.title;
    nlohmann::ordered_json sections = nlohmann::ordered_json::array();
    for (const Section& s : a.sections)
        sections.push_back({{"heading", s.heading}, {"text", s.text}});
    j["sections"] = std::move(sections);
    j["abstract"] = a.abstract;
    j["lay_summary"] = a.lay_summary;
    j["venue"] = to_string(a.venue);
    j["split"] = to_string(a.split);
    return j;
}

inline std::vector<Article> load_corpus(const std::string& path) {
    std::vector<Article> articles;
    std::unordered_set<std::string> seen_ids;
    jsonl::for_each_line(path, [&](std::size_t line_no, const nlohmann::json& j) {
        std::string where = path + ":" + std::to_string(line_no);
        Article a = article_from_json(j, where);
        if (!seen_ids.insert(a.id).second)
            throw ValidationError(where + ": duplicate article id '" + a.id + "'");
        articles.push_back(std::move(a));
    });
    return articles;
}

inline void write_corpus(const std::string& path,
                         const std::vector<Article>& articles) {
    std::vector<nlohmann::ordered_json> records;
    records.reserve(articles.size());
    for (const Article& a : articles) records.push_back(article_to_json(a));
    jsonl::write_file(path, records);
}

// Deterministic concatenation: PLOS articles first, then eLife, original
// order within each. Split labels are retained so callers can select the
// combined TRAIN+VAL pool or the per-venue TEST sets.
inline std::vector<Article> merge_datasets(const std::vector<Article>& plos,
                                           const std::vector<Article>& elife) {
    std::vector<Article> merged;
    merged.reserve(plos.size() + elife.size());
    for (const Article& a : plos) merged.push_back(a);
    for (const Article& a : elife) merged.push_back(a);
    return merged;
}

inline std::vector<Article> train_pool(const std::vector<Article>& articles) {
    std::vector<Article> out;
    for (const Article& a : articles)
        if (a.split != Split::TEST) out.push_back(a);
    return out;
}

inline std::vector<Article> test_pool(const std::vector<Article>& articles) {
    std::vector<Article> out;
    for (const Article& a : articles)
        if (a.split == Split::TEST) out.push_back(a);
    return out;
}

}  // namespace atlas::corpus
