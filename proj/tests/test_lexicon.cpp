#include <doctest.h>

#include <cmath>
#include <sstream>

#include "actionability/lexicon.hpp"
#include "actionability/rng.hpp"

using namespace actionability;

namespace {

Message msg(const std::string& id, const std::string& text, Label label,
            const std::string& source = "tw", const std::string& company = "acme") {
    Message m;
    m.id = id;
    m.text = text;
    m.company = company;
    m.language = "en";
    m.source = source == "tw" ? Source::tw : Source::fb;
    m.label = label;
    return m;
}

}  // namespace

TEST_CASE("term stats count documents, not occurrences") {
    std::vector<Message> messages;
    for (int i = 0; i < 3; ++i) {
        messages.push_back(msg("a" + std::to_string(i), "password password reset",
                               Label::actionable));
    }
    for (int i = 0; i < 9; ++i) {
        messages.push_back(msg("b" + std::to_string(i), "nothing here", Label::actionable));
    }
    LabeledCorpus corpus = LabeledCorpus::from_messages(std::move(messages));
    TermStats stats = build_term_stats(corpus, DomainKey{"acme", "en", "tw"},
                                       Label::actionable);
    CHECK(stats.doc_count == 12);
    CHECK(stats.term_doc_counts.at("password") == 3);
    CHECK(stats.ndf("password") == doctest::Approx(0.25));
    CHECK(stats.ndf("absent") == 0.0);
}

TEST_CASE("p95 is the nearest-rank percentile of doc counts") {
    // Nine terms in one doc each plus one term in nine docs:
    // counts {1,...,1,9}, rank ceil(0.95*10) = 10 -> 9.
    std::vector<Message> messages;
    for (int i = 0; i < 9; ++i) {
        messages.push_back(msg("m" + std::to_string(i),
                               "common w" + std::to_string(i), Label::actionable));
    }
    LabeledCorpus corpus = LabeledCorpus::from_messages(std::move(messages));
    TermStats stats = build_term_stats(corpus, DomainKey{"acme", "en", "tw"},
                                       Label::actionable);
    CHECK(stats.term_doc_counts.size() == 10);
    CHECK(stats.term_doc_counts.at("common") == 9);
    CHECK(stats.p95_count == 9);
}

TEST_CASE("stats for a generalized domain merge its children") {
    std::vector<Message> messages = {
        msg("t1", "alpha beta", Label::actionable, "tw"),
        msg("t2", "alpha", Label::actionable, "tw"),
        msg("f1", "alpha gamma", Label::actionable, "fb"),
    };
    LabeledCorpus corpus = LabeledCorpus::from_messages(std::move(messages));
    TermStats tw = build_term_stats(corpus, DomainKey{"acme", "en", "tw"},
                                    Label::actionable);
    TermStats fb = build_term_stats(corpus, DomainKey{"acme", "en", "fb"},
                                    Label::actionable);
    TermStats merged = build_term_stats(corpus, DomainKey{"acme", "en", std::nullopt},
                                        Label::actionable);
    CHECK(merged.doc_count == tw.doc_count + fb.doc_count);
    for (const auto& [term, count] : merged.term_doc_counts) {
        std::size_t tw_count = tw.term_doc_counts.count(term) ? tw.term_doc_counts.at(term) : 0;
        std::size_t fb_count = fb.term_doc_counts.count(term) ? fb.term_doc_counts.at(term) : 0;
        CHECK(count == tw_count + fb_count);
    }
}

TEST_CASE("sigiled tokens are indexed bare as well") {
    std::vector<Message> messages = {msg("1", "@yahoocare #help now", Label::actionable)};
    LabeledCorpus corpus = LabeledCorpus::from_messages(std::move(messages));
    TermStats stats = build_term_stats(corpus, DomainKey{"acme", "en", "tw"},
                                       Label::actionable);
    CHECK(stats.term_doc_counts.count("@yahoocare") == 1);
    CHECK(stats.term_doc_counts.count("yahoocare") == 1);
    CHECK(stats.term_doc_counts.count("#help") == 1);
    CHECK(stats.term_doc_counts.count("help") == 1);
}

TEST_CASE("term stats require at least one matching document") {
    std::vector<Message> messages = {msg("1", "hello", Label::actionable)};
    LabeledCorpus corpus = LabeledCorpus::from_messages(std::move(messages));
    CHECK_THROWS_AS(build_term_stats(corpus, DomainKey{"acme", "en", "tw"},
                                     Label::non_actionable),
                    std::runtime_error);
}

TEST_CASE("adf is anchored at the 95th percentile") {
    TermStats stats;
    stats.doc_count = 100;
    stats.term_doc_counts = {{"atp95", 9}, {"rare", 1}, {"top", 99}};
    stats.p95_count = 9;
    auto adf = compute_adf(stats);
    CHECK(adf.at("atp95") == doctest::Approx(1.0).epsilon(1e-12));
    // ln(1+99)/ln(1+9) = ln(100)/ln(10) = 2 exactly.
    CHECK(adf.at("top") == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(adf.at("rare") == doctest::Approx(std::log(2.0) / std::log(10.0)));
}

TEST_CASE("adf of an unseen term is zero by the missing-key contract") {
    TermStats stats;
    stats.doc_count = 10;
    stats.term_doc_counts = {{"seen", 2}};
    stats.p95_count = 2;
    auto adf = compute_adf(stats);
    CHECK(adf.count("unseen") == 0);  // lookups default to 0 downstream
}

TEST_CASE("adf monotonicity in the document count") {
    Rng rng(55);
    for (int trial = 0; trial < 50; ++trial) {
        TermStats stats;
        stats.doc_count = 1000;
        std::size_t n1 = 1 + rng.below(400);
        std::size_t n2 = n1 + 1 + rng.below(100);
        stats.term_doc_counts = {{"low", n1}, {"high", n2}, {"pad", 3}};
        stats.p95_count = 1 + rng.below(50);
        auto adf = compute_adf(stats);
        CHECK(adf.at("high") > adf.at("low"));
    }
}

TEST_CASE("degenerate stats raise errors") {
    TermStats empty;
    empty.doc_count = 5;
    CHECK_THROWS_AS(compute_adf(empty), std::runtime_error);
    TermStats zerop;
    zerop.doc_count = 5;
    zerop.term_doc_counts = {{"x", 1}};
    zerop.p95_count = 0;
    CHECK_THROWS_AS(compute_adf(zerop), std::runtime_error);
}

TEST_CASE("keyword scores keep each term in at most one lexicon") {
    std::map<std::string, double> adf_a{{"k", 0.8}};
    std::map<std::string, double> adf_n{{"k", 0.5}};
    auto [lex_a, lex_n] = compute_keyword_scores(adf_a, adf_n);
    CHECK(lex_a.scores.at("k") == doctest::Approx(0.3));
    CHECK(lex_n.scores.count("k") == 0);
}

TEST_CASE("ambivalent keywords are dropped from both lexicons") {
    std::map<std::string, double> adf_a{{"k", 0.7}};
    std::map<std::string, double> adf_n{{"k", 0.7}};
    auto [lex_a, lex_n] = compute_keyword_scores(adf_a, adf_n);
    CHECK(lex_a.scores.empty());
    CHECK(lex_n.scores.empty());
}

TEST_CASE("the symmetric branch favors the non-actionable lexicon") {
    std::map<std::string, double> adf_a{{"k", 0.2}};
    std::map<std::string, double> adf_n{{"k", 0.9}};
    auto [lex_a, lex_n] = compute_keyword_scores(adf_a, adf_n);
    CHECK(lex_n.scores.at("k") == doctest::Approx(0.7));
    CHECK(lex_a.scores.count("k") == 0);
}

TEST_CASE("disjointness holds over random adf maps") {
    Rng rng(321);
    for (int trial = 0; trial < 50; ++trial) {
        std::map<std::string, double> adf_a, adf_n;
        for (int t = 0; t < 40; ++t) {
            std::string term = "t" + std::to_string(rng.below(25));
            if (rng.below(2)) adf_a[term] = rng.real() * 2.0;
            if (rng.below(2)) adf_n[term] = rng.real() * 2.0;
        }
        auto [lex_a, lex_n] = compute_keyword_scores(adf_a, adf_n);
        for (const auto& [term, score] : lex_a.scores) {
            CHECK(score > 0.0);
            CHECK(lex_n.scores.count(term) == 0);
        }
        for (const auto& [term, score] : lex_n.scores) {
            CHECK(score > 0.0);
        }
    }
}

TEST_CASE("build_lexicons applies the document-frequency floor") {
    std::vector<Message> messages;
    // "password" appears in 3 actionable docs, "hapax" in 1.
    messages.push_back(msg("a0", "password reset hapax", Label::actionable));
    messages.push_back(msg("a1", "password reset", Label::actionable));
    messages.push_back(msg("a2", "password locked", Label::actionable));
    messages.push_back(msg("n0", "great game today", Label::non_actionable));
    messages.push_back(msg("n1", "great show tonight", Label::non_actionable));
    messages.push_back(msg("n2", "fine weather", Label::non_actionable));
    LabeledCorpus corpus = LabeledCorpus::from_messages(std::move(messages));
    auto [lex_a, lex_n] = build_lexicons(corpus, DomainKey{"acme", "en", "tw"}, 2);
    CHECK(lex_a.scores.count("password") == 1);
    CHECK(lex_a.scores.count("hapax") == 0);
    CHECK(lex_n.scores.count("great") == 1);
    CHECK(lex_a.doc_count == 3);
}

TEST_CASE("sentiment rows sum across parts of speech") {
    std::istringstream in(
        "# SentiWordNet sample\n"
        "a\t00001\t0.5\t0\tgood#1\tfine quality\n"
        "n\t00002\t0.25\t0\tgood#2\ta benefit\n"
        "a\t00003\t0\t0.625\tbad#1\tpoor quality\n");
    SentimentLoadReport report;
    SentimentLexicon lexicon = load_sentiment_lexicon_stream(in, &report);
    CHECK(lexicon.positive_score("good") == doctest::Approx(0.75));
    CHECK(lexicon.negative_score("bad") == doctest::Approx(0.625));
    CHECK(lexicon.positive_score("absent") == 0.0);
    CHECK(report.rows == 3);
    CHECK(report.skipped == 0);
}

TEST_CASE("malformed sentiment rows are skipped and counted") {
    std::istringstream in(
        "a\t1\t0.5\t0\tgood#1\tgloss\n"
        "broken row without tabs\n"
        "a\t2\tnotanumber\t0\tbad#1\tgloss\n");
    SentimentLoadReport report;
    SentimentLexicon lexicon = load_sentiment_lexicon_stream(in, &report);
    CHECK(report.skipped == 2);
    CHECK(lexicon.positive_score("good") == doctest::Approx(0.5));
}

TEST_CASE("an unusable sentiment file is an error") {
    std::istringstream in("# only comments\n");
    CHECK_THROWS_AS(load_sentiment_lexicon_stream(in, nullptr), std::runtime_error);
}

TEST_CASE("top keywords rank by score then lexicographically") {
    std::map<std::string, double> scores{{"a", 0.9}, {"b", 0.1}};
    auto top = top_keywords(scores, 1);
    REQUIRE(top.size() == 1);
    CHECK(top[0].term == "a");
    CHECK(top[0].rank == 1);

    std::map<std::string, double> tied{{"mail", 0.5}, {"help", 0.5}};
    auto both = top_keywords(tied, 2);
    CHECK(both[0].term == "help");
    CHECK(both[1].term == "mail");

    auto all = top_keywords(scores, 100);
    CHECK(all.size() == 2);
}

TEST_CASE("scatter rows cover the union vocabulary") {
    std::map<std::string, double> adf_a{{"only_a", 0.4}, {"both", 0.6}};
    std::map<std::string, double> adf_n{{"both", 0.6}};
    auto rows = export_scatter(adf_a, adf_n);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].term == "both");
    CHECK(rows[0].adf_actionable == doctest::Approx(0.6));
    CHECK(rows[0].adf_non_actionable == doctest::Approx(0.6));  // ambivalent: diagonal
    CHECK(rows[1].term == "only_a");
    CHECK(rows[1].adf_non_actionable == 0.0);

    CHECK(export_scatter({}, {}).empty());
}

TEST_CASE("lexicons round-trip through their persisted form") {
    Lexicon lexicon;
    lexicon.domain = DomainKey{"acme", "en", "tw"};
    lexicon.label = Label::actionable;
    lexicon.doc_count = 123;
    lexicon.p95_count = 9;
    lexicon.scores = {{"password", 0.31234567890123456}, {"reset", 0.125}};
    std::ostringstream out;
    save_lexicon(lexicon, out, 7);
    std::istringstream in(out.str());
    Lexicon loaded = load_lexicon(in);
    CHECK(loaded.domain == lexicon.domain);
    CHECK(loaded.label == lexicon.label);
    CHECK(loaded.doc_count == 123);
    CHECK(loaded.p95_count == 9);
    REQUIRE(loaded.scores.size() == 2);
    CHECK(loaded.scores.at("password") == lexicon.scores.at("password"));
}
