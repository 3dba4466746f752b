#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>
#include <vector>

#include "atlas/evaluation.hpp"
#include "atlas/porter.hpp"

using namespace atlas;
using namespace atlas::evaluation;
using Catch::Matchers::WithinAbs;

TEST_CASE("porter stemmer vocabulary") {
    auto s = [](const std::string& w) { return porter::stem(w); };
    CHECK(s("caresses") == "caress");
    CHECK(s("ponies") == "poni");
    CHECK(s("cats") == "cat");
    CHECK(s("feed") == "feed");
    CHECK(s("agreed") == "agre");
    CHECK(s("plastered") == "plaster");
    CHECK(s("motoring") == "motor");
    CHECK(s("sing") == "sing");
    CHECK(s("hopping") == "hop");
    CHECK(s("filing") == "file");
    CHECK(s("happy") == "happi");
    CHECK(s("sky") == "sky");
    CHECK(s("relational") == "relat");
    CHECK(s("conditional") == "condit");
    CHECK(s("adjustable") == "adjust");
    CHECK(s("adoption") == "adopt");
    CHECK(s("hopeful") == "hope");
    CHECK(s("goodness") == "good");
    CHECK(s("electrical") == "electr");
    CHECK(s("formalize") == "formal");
    CHECK(s("proteins") == "protein");
    // short or non-alpha tokens are untouched
    CHECK(s("is") == "is");
    CHECK(s("x2") == "x2");
    CHECK(s("ing") == "ing");
    CHECK(s("ions") == "ion");
}

TEST_CASE("rouge-1 hand fixture") {
    auto score = rouge_n("the cat sat", "the cat", 1);
    CHECK_THAT(score.precision, WithinAbs(2.0 / 3.0, 1e-9));
    CHECK_THAT(score.recall, WithinAbs(1.0, 1e-9));
    CHECK_THAT(score.f1, WithinAbs(0.8, 1e-9));

    auto perfect = rouge_n("The cat sat.", "the cat sat", 1);
    CHECK_THAT(perfect.f1, WithinAbs(1.0, 1e-9));

    CHECK_THAT(rouge_n("aaa bbb", "ccc ddd", 1).f1, WithinAbs(0.0, 1e-9));
    CHECK_THAT(rouge_n("", "anything", 1).f1, WithinAbs(0.0, 1e-9));
    CHECK_THROWS_AS(rouge_n("a", "a", 3), ValidationError);
}

TEST_CASE("rouge-2 hand fixture") {
    // cand bigrams {a b, b c}, ref bigrams {a b, b d}: overlap 1
    auto score = rouge_n("aa bb cc", "aa bb dd", 2);
    CHECK_THAT(score.precision, WithinAbs(0.5, 1e-9));
    CHECK_THAT(score.recall, WithinAbs(0.5, 1e-9));
    CHECK_THAT(score.f1, WithinAbs(0.5, 1e-9));
    // multiset semantics: repeated bigrams are matched with min counts
    auto rep = rouge_n("aa bb aa bb", "aa bb", 2);
    CHECK_THAT(rep.precision, WithinAbs(1.0 / 3.0, 1e-9));
    CHECK_THAT(rep.recall, WithinAbs(1.0, 1e-9));
}

TEST_CASE("rouge-l hand fixture") {
    auto score = rouge_l("aa bb cc dd", "aa cc");
    CHECK_THAT(score.precision, WithinAbs(0.5, 1e-9));
    CHECK_THAT(score.recall, WithinAbs(1.0, 1e-9));
    CHECK_THAT(score.f1, WithinAbs(2.0 / 3.0, 1e-9));
    CHECK_THAT(rouge_l("same text here", "same text here").f1, WithinAbs(1.0, 1e-9));
    CHECK_THAT(rouge_l("", "whatever").f1, WithinAbs(0.0, 1e-9));
}

TEST_CASE("stemming unifies inflected forms") {
    auto stemmed = rouge_n("the receptors bind", "the receptor binds", 1);
    CHECK_THAT(stemmed.f1, WithinAbs(1.0, 1e-9));
    RougeOptions raw{.stemming = false};
    auto unstemmed = rouge_n("the receptors bind", "the receptor binds", 1, raw);
    CHECK(unstemmed.f1 < 1.0);
}

namespace {

// independent oracle: enumerate all subsequences of `a` (|a| <= 8) and
// keep the longest one that is also a subsequence of `b`
std::size_t brute_force_lcs(const std::vector<std::string>& a,
                            const std::vector<std::string>& b) {
    std::size_t best = 0;
    for (std::size_t mask = 0; mask < (1u << a.size()); ++mask) {
        std::vector<std::string> sub;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (mask & (1u << i)) sub.push_back(a[i]);
        std::size_t j = 0;
        for (const auto& t : b) {
            if (j < sub.size() && t == sub[j]) ++j;
        }
        if (j == sub.size()) best = std::max(best, sub.size());
    }
    return best;
}

std::vector<std::string> random_tokens(std::mt19937& rng, std::size_t max_len) {
    static const std::vector<std::string> vocab = {"aa", "bb", "cc", "dd"};
    std::vector<std::string> out;
    std::size_t len = rng() % (max_len + 1);
    for (std::size_t i = 0; i < len; ++i) out.push_back(vocab[rng() % vocab.size()]);
    return out;
}

}  // namespace

TEST_CASE("lcs equals brute-force subsequence enumeration") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        auto a = random_tokens(rng, 8);
        auto b = random_tokens(rng, 8);
        auto dp = rouge_l_tokens(a, b);
        double expected = static_cast<double>(brute_force_lcs(a, b));
        double lcs_from_dp = a.empty() ? 0.0 : dp.precision * static_cast<double>(a.size());
        CHECK_THAT(lcs_from_dp, WithinAbs(expected, 1e-9));
    }
}

TEST_CASE("rouge score ranges and symmetry properties") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        auto a = random_tokens(rng, 8);
        auto b = random_tokens(rng, 8);
        for (const RougeScore& s :
             {rouge_n_tokens(a, b, 1), rouge_n_tokens(a, b, 2), rouge_l_tokens(a, b)}) {
            CHECK(s.precision >= 0.0);
            CHECK(s.precision <= 1.0);
            CHECK(s.recall >= 0.0);
            CHECK(s.recall <= 1.0);
            CHECK(s.f1 >= 0.0);
            CHECK(s.f1 <= std::max(s.precision, s.recall) + 1e-12);
        }
        if (!a.empty()) {
            CHECK_THAT(rouge_n_tokens(a, a, 1).f1, WithinAbs(1.0, 1e-12));
            CHECK_THAT(rouge_l_tokens(a, a).f1, WithinAbs(1.0, 1e-12));
        }
    }
}

TEST_CASE("recall grows when candidate gains a reference token") {
    std::vector<std::string> ref = {"aa", "bb", "cc"};
    std::vector<std::string> cand = {"aa"};
    double r_before = rouge_n_tokens(cand, ref, 1).recall;
    cand.push_back("bb");
    double r_after = rouge_n_tokens(cand, ref, 1).recall;
    CHECK(r_after >= r_before);
}

namespace {

corpus::Article eval_article(const std::string& id, corpus::Venue venue) {
    corpus::Article a;
    a.id = id;
    a.title = "Title " + id;
    a.sections = {{"Body", "The receptor binds the ligand. Cells grow."}};
    a.abstract = "We measured receptor binding affinity in living cells.";
    a.lay_summary = "Cells sense their world with receptors. We watched it happen.";
    a.venue = venue;
    a.split = corpus::Split::TEST;
    return a;
}

}  // namespace

TEST_CASE("evaluate_systems self-evaluation gives perfect rouge") {
    std::vector<corpus::Article> refs = {eval_article("A", corpus::Venue::PLOS),
                                         eval_article("B", corpus::Venue::ELIFE)};
    std::vector<SystemOutput> outputs;
    for (const auto& a : refs) {
        outputs.push_back({"self", a.id, corpus::SummaryType::ABSTRACT, a.abstract});
        outputs.push_back(
            {"self", a.id, corpus::lay_type(a.venue), a.lay_summary});
    }
    auto report = evaluate_systems(outputs, refs);
    REQUIRE(report.rows.size() == 3);  // abstract, plos_lay, elife_lay
    for (const auto& row : report.rows) {
        CHECK_THAT(row.r1.f1, WithinAbs(1.0, 1e-12));
        CHECK_THAT(row.r2.f1, WithinAbs(1.0, 1e-12));
        CHECK_THAT(row.rl.f1, WithinAbs(1.0, 1e-12));
    }
    // abstract row aggregates both articles
    CHECK(report.rows[0].summary_type == corpus::SummaryType::ABSTRACT);
    CHECK(report.rows[0].n == 2);
}

TEST_CASE("evaluate_systems errors name the unresolved key") {
    std::vector<corpus::Article> refs = {eval_article("A", corpus::Venue::PLOS)};
    std::vector<SystemOutput> unknown_article = {
        {"sys", "MISSING", corpus::SummaryType::ABSTRACT, "text"}};
    CHECK_THROWS_WITH(evaluate_systems(unknown_article, refs),
                      Catch::Matchers::ContainsSubstring("MISSING"));
    // PLOS article has no elife_lay reference
    std::vector<SystemOutput> wrong_type = {
        {"sys", "A", corpus::SummaryType::ELIFE_LAY, "text"}};
    CHECK_THROWS_WITH(evaluate_systems(wrong_type, refs),
                      Catch::Matchers::ContainsSubstring("elife_lay"));
}

TEST_CASE("report means are hand-computable") {
    std::vector<corpus::Article> refs = {eval_article("A", corpus::Venue::PLOS),
                                         eval_article("B", corpus::Venue::PLOS)};
    std::vector<SystemOutput> outputs = {
        {"sys", "A", corpus::SummaryType::ABSTRACT, refs[0].abstract},
        {"sys", "B", corpus::SummaryType::ABSTRACT, "unrelated words entirely"},
    };
    auto report = evaluate_systems(outputs, refs);
    REQUIRE(report.rows.size() == 1);
    const auto& row = report.rows[0];
    CHECK(row.n == 2);
    double d1 = rouge_n(refs[0].abstract, refs[0].abstract, 1).f1;
    double d2 = rouge_n("unrelated words entirely", refs[1].abstract, 1).f1;
    CHECK_THAT(row.r1.f1, WithinAbs((d1 + d2) / 2, 1e-12));

    // single doc, single system -> one row with n = 1
    auto single = evaluate_systems(
        {{"s", "A", corpus::SummaryType::ABSTRACT, "Receptor binding."}}, refs);
    REQUIRE(single.rows.size() == 1);
    CHECK(single.rows[0].n == 1);
}

TEST_CASE("tsv report has the pinned column order") {
    std::vector<corpus::Article> refs = {eval_article("A", corpus::Venue::PLOS)};
    auto report = evaluate_systems(
        {{"s", "A", corpus::SummaryType::ABSTRACT, refs[0].abstract}}, refs);
    std::string tsv = report_to_tsv(report);
    CHECK(tsv.rfind("system\tsummary_type\tn\tR-1\tR-2\tR-L\tFKGL\tDCRS\tCLI\n", 0) == 0);
    CHECK(tsv.find("100.00") != std::string::npos);  // rouge reported x100
}
