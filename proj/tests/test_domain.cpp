#include <doctest.h>

#include <set>

#include "actionability/domain.hpp"

using namespace actionability;

TEST_CASE("domain key specificity and full specification") {
    DomainKey full{"nokia", "es", "tw"};
    CHECK(full.fully_specified());
    CHECK(full.specificity() == 3);

    DomainKey partial{"nokia", std::nullopt, "tw"};
    CHECK_FALSE(partial.fully_specified());
    CHECK(partial.specificity() == 2);

    DomainKey empty;
    CHECK(empty.specificity() == 0);
    CHECK(empty.category() == "{}");
}

TEST_CASE("generalized keys match the full domains they span") {
    DomainKey full{"nokia", "es", "tw"};
    CHECK(DomainKey{"nokia", "es", std::nullopt}.matches(full));
    CHECK(DomainKey{}.matches(full));
    CHECK(DomainKey{std::nullopt, "es", std::nullopt}.matches(full));
    CHECK_FALSE(DomainKey{"acme", "es", std::nullopt}.matches(full));
    CHECK_FALSE(DomainKey{"nokia", "es", "fb"}.matches(full));
}

TEST_CASE("subset relation tracks attribute containment with equal values") {
    DomainKey full{"nokia", "es", "tw"};
    CHECK(DomainKey{"nokia", std::nullopt, std::nullopt}.subset_of(full));
    CHECK(full.subset_of(full));
    CHECK(DomainKey{}.subset_of(full));
    CHECK_FALSE(DomainKey{"acme", std::nullopt, std::nullopt}.subset_of(full));
}

TEST_CASE("machine form round-trips through parse") {
    for (DomainKey key : {DomainKey{"acme", "en", "tw"}, DomainKey{"acme", "en", std::nullopt},
                          DomainKey{}, DomainKey{std::nullopt, "es", std::nullopt}}) {
        auto parsed = DomainKey::parse(key.machine());
        REQUIRE(parsed.has_value());
        CHECK(*parsed == key);
    }
    CHECK_FALSE(DomainKey::parse("just-one-field").has_value());
    CHECK_FALSE(DomainKey::parse("a,b,c,d").has_value());
}

TEST_CASE("url-safe encoding is filename friendly and distinct per key") {
    DomainKey a{"acme corp", "en", "tw"};
    DomainKey b{"acme", "en", "tw"};
    std::string ea = a.url_safe();
    CHECK(ea.find(' ') == std::string::npos);
    CHECK(ea != b.url_safe());
    CHECK(DomainKey{}.url_safe() == "-__-__-");
}

TEST_CASE("keys are ordered and hashable") {
    std::set<DomainKey> keys;
    keys.insert(DomainKey{"a", "en", "tw"});
    keys.insert(DomainKey{"a", "en", "tw"});
    keys.insert(DomainKey{"b", "en", "tw"});
    CHECK(keys.size() == 2);
    DomainKeyHash hash;
    CHECK(hash(DomainKey{"a", "en", "tw"}) != hash(DomainKey{"b", "en", "tw"}));
    // Absent and empty-string attributes are distinct keys.
    CHECK(hash(DomainKey{std::nullopt, "en", "tw"}) != hash(DomainKey{"", "en", "tw"}));
}

TEST_CASE("label and source parsing") {
    CHECK(parse_label("actionable") == Label::actionable);
    CHECK(parse_label("non_actionable") == Label::non_actionable);
    CHECK_FALSE(parse_label("maybe").has_value());
    CHECK(parse_source("tw") == Source::tw);
    CHECK(parse_source("fb") == Source::fb);
    CHECK_FALSE(parse_source("ig").has_value());
}
