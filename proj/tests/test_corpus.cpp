#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "atlas/corpus.hpp"
#include "atlas/prepare.hpp"

using namespace atlas;
using namespace atlas::corpus;

namespace {

Article sample_article(const std::string& id, Venue venue, Split split) {
    Article a;
    a.id = id;
    a.title = "A study of receptor signaling";
    a.sections = {
        {"Introduction", "Receptors are known to bind ligands. We study them."},
        {"Results", "The receptor bound the ligand. Signal strength doubled."}};
    a.abstract = "We measured receptor binding. Signal strength doubled under load.";
    a.lay_summary =
        "Cells use receptors to sense the world. Previous studies showed they "
        "bind partners. We found the signal gets stronger.";
    a.venue = venue;
    a.split = split;
    return a;
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& p) : path(p) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("corpus round trip") {
    std::vector<Article> articles = {
        sample_article("P1", Venue::PLOS, Split::TRAIN),
        sample_article("E1", Venue::ELIFE, Split::TEST)};
    TempFile f("test_corpus_tmp.jsonl");
    write_corpus(f.path, articles);
    auto loaded = load_corpus(f.path);
    REQUIRE(loaded.size() == 2);
    CHECK(loaded[0].id == "P1");
    CHECK(loaded[0].title == articles[0].title);
    CHECK(loaded[0].sections.size() == 2);
    CHECK(loaded[0].sections[1].text == articles[0].sections[1].text);
    CHECK(loaded[1].venue == Venue::ELIFE);
    CHECK(loaded[1].split == Split::TEST);

    // write -> load -> write gives identical bytes
    TempFile g("test_corpus_tmp2.jsonl");
    write_corpus(g.path, loaded);
    std::ifstream a(f.path), b(g.path);
    std::string sa((std::istreambuf_iterator<char>(a)), {});
    std::string sb((std::istreambuf_iterator<char>(b)), {});
    CHECK(sa == sb);
}

TEST_CASE("load_corpus reports line and field on bad input") {
    TempFile f("test_corpus_bad.jsonl");
    {
        std::ofstream out(f.path);
        out << article_to_json(sample_article("P1", Venue::PLOS, Split::TRAIN)).dump()
            << "\n";
        out << "{ not json }\n";
    }
    CHECK_THROWS_WITH(load_corpus(f.path),
                      Catch::Matchers::ContainsSubstring(":2"));

    {
        std::ofstream out(f.path);
        auto j = article_to_json(sample_article("P1", Venue::PLOS, Split::TRAIN));
        out << j.dump() << "\n";
        out << j.dump() << "\n";
        auto empty_lay = sample_article("P3", Venue::PLOS, Split::TRAIN);
        empty_lay.lay_summary.clear();
        out.close();
    }
    CHECK_THROWS_WITH(load_corpus(f.path),
                      Catch::Matchers::ContainsSubstring("duplicate article id 'P1'"));

    {
        std::ofstream out(f.path);
        out << article_to_json(sample_article("P1", Venue::PLOS, Split::TRAIN)).dump()
            << "\n";
        out << article_to_json(sample_article("P2", Venue::PLOS, Split::TRAIN)).dump()
            << "\n";
        auto bad = article_to_json(sample_article("P3", Venue::PLOS, Split::TRAIN));
        bad["lay_summary"] = "";
        out << bad.dump() << "\n";
    }
    CHECK_THROWS_WITH(
        load_corpus(f.path),
        Catch::Matchers::ContainsSubstring(":3") &&
            Catch::Matchers::ContainsSubstring("lay_summary"));
}

TEST_CASE("merge_datasets ordering and cardinality") {
    CHECK(merge_datasets({}, {}).empty());

    std::vector<Article> plos = {sample_article("P1", Venue::PLOS, Split::TRAIN),
                                 sample_article("P2", Venue::PLOS, Split::TRAIN)};
    std::vector<Article> elife = {sample_article("E1", Venue::ELIFE, Split::TRAIN)};
    auto merged = merge_datasets(plos, elife);
    REQUIRE(merged.size() == 3);
    CHECK(merged[0].id == "P1");
    CHECK(merged[1].id == "P2");
    CHECK(merged[2].id == "E1");

    auto both_test = merge_datasets(
        {sample_article("P9", Venue::PLOS, Split::TEST)},
        {sample_article("E9", Venue::ELIFE, Split::TEST)});
    REQUIRE(both_test.size() == 2);
    CHECK(both_test[0].venue == Venue::PLOS);
    CHECK(both_test[1].venue == Venue::ELIFE);
    CHECK(test_pool(both_test).size() == 2);
    CHECK(train_pool(both_test).empty());
}

TEST_CASE("reference resolution follows venue") {
    Article plos = sample_article("P1", Venue::PLOS, Split::TRAIN);
    CHECK(reference_for(plos, SummaryType::ABSTRACT).has_value());
    CHECK(reference_for(plos, SummaryType::PLOS_LAY).has_value());
    CHECK_FALSE(reference_for(plos, SummaryType::ELIFE_LAY).has_value());
    CHECK(lay_type(Venue::ELIFE) == SummaryType::ELIFE_LAY);
}

TEST_CASE("emit_training_pairs yields two typed pairs per article") {
    std::vector<Article> articles = {
        sample_article("P1", Venue::PLOS, Split::TRAIN),
        sample_article("E1", Venue::ELIFE, Split::TRAIN),
        sample_article("P2", Venue::PLOS, Split::VAL)};

    attributes::AttributeContext ctx;
    ctx.unigram = attributes::train_unigram(articles);

    std::vector<attributes::AttributeVector> train_vectors;
    for (const auto& a : articles) {
        train_vectors.push_back(attributes::attribute_vector_lenient(
            a.abstract, ctx, attributes::SummaryKey{a.id, SummaryType::ABSTRACT}));
        train_vectors.push_back(attributes::attribute_vector_lenient(
            a.lay_summary, ctx, attributes::SummaryKey{a.id, lay_type(a.venue)}));
    }
    // natural samples are too uniform for distinct extrema on every
    // attribute; spread them artificially
    train_vectors.push_back({10, -1.0, 0.0, 0.1});
    train_vectors.push_back({4000, 22.0, 100.0, 11.0});
    auto scheme = controls::fit_bins(train_vectors);

    auto pairs = emit_training_pairs(articles, scheme, ctx);
    REQUIRE(pairs.size() == 2 * articles.size());

    for (std::size_t i = 0; i < articles.size(); ++i) {
        const auto& abs_pair = pairs[2 * i];
        const auto& lay_pair = pairs[2 * i + 1];
        CHECK(abs_pair.summary_type == SummaryType::ABSTRACT);
        CHECK(lay_pair.summary_type == lay_type(articles[i].venue));
        CHECK(abs_pair.target == articles[i].abstract);
        CHECK(lay_pair.target == articles[i].lay_summary);
        CHECK(abs_pair.article_id == articles[i].id);
    }

    // source begins with exactly the rendered 4-token prefix and the
    // prefix re-derives from the target's attribute vector
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& p = pairs[i];
        auto parsed = controls::parse_prefix(p.source);
        REQUIRE(parsed.has_value());
        CHECK(*parsed == p.control_prefix.bins);

        const Article& a = articles[i / 2];
        attributes::SummaryKey key{a.id, p.summary_type};
        auto v = attributes::attribute_vector_lenient(p.target, ctx, key);
        CHECK(controls::control_tokens(v, scheme).bins == p.control_prefix.bins);
        CHECK(p.source.substr(p.control_prefix.rendered.size()) == body_text(a));
    }

    // parallel emission preserves order and bytes
    auto pairs4 = emit_training_pairs(articles, scheme, ctx, 4);
    REQUIRE(pairs4.size() == pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        CHECK(pairs4[i].source == pairs[i].source);
        CHECK(pairs4[i].target == pairs[i].target);
    }
}

TEST_CASE("training minimum maps to all-zero bins") {
    // one article whose lay summary sits exactly at every train minimum
    Article lo = sample_article("LO", Venue::PLOS, Split::TRAIN);
    // repeated words get higher counts, hence lower entropy than the
    // singleton jargon of the HI article
    lo.lay_summary = "The cat sat on the mat. The cat sat on the mat too.";
    Article hi = sample_article("HI", Venue::PLOS, Split::TRAIN);
    hi.lay_summary =
        "Mitochondrial bioenergetics demonstrates extraordinarily complicated "
        "phosphorylation cascades. Previous studies characterised intricate "
        "ultrastructural organisation. Researchers have hypothesised "
        "elaborate mechanistic interdependencies with specialised vocabulary.";

    attributes::AttributeContext ctx;
    ctx.unigram = attributes::train_unigram({lo, hi});

    auto v_lo = attributes::attribute_vector_lenient(lo.lay_summary, ctx);
    auto v_hi = attributes::attribute_vector_lenient(hi.lay_summary, ctx);
    auto scheme = controls::fit_bins({v_lo, v_hi});
    auto tokens = controls::control_tokens(v_lo, scheme);
    bool lo_is_min_everywhere = true;
    for (controls::Attribute a : controls::kAttributes)
        if (controls::attribute_value(v_lo, a) > controls::attribute_value(v_hi, a))
            lo_is_min_everywhere = false;
    if (lo_is_min_everywhere) {
        CHECK(tokens.rendered == "<len_0> <rdb_0> <bg_0> <cwe_0> ");
    }
}
