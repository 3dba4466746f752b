#pragma once

// Training-pair emission: every article yields two prepared pairs (the
// technical abstract and the venue-typed lay summary), each prefixed with
// control tokens computed from the true attribute values of its target.

#include <string>
#include <vector>

#include <json.hpp>

#include "atlas/attributes.hpp"
#include "atlas/controls.hpp"
#include "atlas/corpus.hpp"
#include "atlas/errors.hpp"
#include "atlas/parallel.hpp"

namespace atlas::corpus {

struct PreparedPair {
    std::string article_id;
    controls::ControlTokenSeq control_prefix;
    std::string source;  // control prefix ++ article body text
    std::string target;
    SummaryType summary_type = SummaryType::ABSTRACT;
};

namespace detail {

inline PreparedPair make_pair(const Article& article, SummaryType type,
                              std::string_view target,
                              const controls::BinningScheme& scheme,
                              const attributes::AttributeContext& attr_ctx) {
    attributes::SummaryKey key{article.id, type};
    attributes::AttributeVector v;
    try {
        v = attributes::attribute_vector_lenient(target, attr_ctx, key);
    } catch (const std::exception& e) {
        throw ValidationError("article '" + article.id + "' (" +
                              to_string(type) + "): " + e.what());
    }
    PreparedPair pair;
    pair.article_id = article.id;
    pair.control_prefix = controls::control_tokens(v, scheme);
    pair.source = pair.control_prefix.rendered + body_text(article);
    pair.target = std::string(target);
    pair.summary_type = type;
    return pair;
}

}  // namespace detail

inline std::vector<PreparedPair> emit_training_pairs(
    const std::vector<Article>& articles, const controls::BinningScheme& scheme,
    const attributes::AttributeContext& attr_ctx, std::size_t jobs = 1) {
    std::vector<PreparedPair> pairs(articles.size() * 2);
    parallel::for_each_index(articles.size(), jobs, [&](std::size_t i) {
        const Article& a = articles[i];
        pairs[2 * i] = detail::make_pair(a, SummaryType::ABSTRACT, a.abstract,
                                         scheme, attr_ctx);
        pairs[2 * i + 1] = detail::make_pair(a, lay_type(a.venue), a.lay_summary,
                                             scheme, attr_ctx);
    });
    return pairs;
}

inline nlohmann::ordered_json prepared_pair_to_json(const PreparedPair& p) {
    nlohmann::ordered_json j;
    j["article_id"] = p.article_id;
    j["summary_type"] = to_string(p.summary_type);
    j["source"] = p.source;
    j["target"] = p.target;
    return j;
}

}  // namespace atlas::corpus
