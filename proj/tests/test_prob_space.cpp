#include <catch2/catch_amalgamated.hpp>

#include "randop/prob_space.hpp"

using namespace randop;

namespace {

FiniteProbSpace three_atoms() {
    return make_space({{"a", rat(1, 2)}, {"b", rat(3, 10)}, {"c", rat(1, 5)}});
}

} // namespace

TEST_CASE("space construction accepts valid atom lists") {
    auto sure = make_space({{"a", Rational(1)}});
    REQUIRE(sure.size() == 1);
    REQUIRE(sure.atom(0).mass == 1);

    auto s = three_atoms();
    REQUIRE(s.size() == 3);
    REQUIRE(s.atom(1).id == "b");
    REQUIRE(s.index_of("c") == 2);
}

TEST_CASE("space construction rejections") {
    REQUIRE_THROWS_AS(make_space({}), Error);
    try {
        make_space({{"a", rat(1, 2)}, {"b", rat(1, 2)}, {"a", Rational(0)}});
        FAIL("expected rejection");
    } catch (const Error& e) {
        // duplicate id and nonpositive mass are both present; the constructor
        // reports whichever it hits first
        REQUIRE((e.code() == Errc::DuplicateAtom || e.code() == Errc::NonpositiveMass));
    }
    try {
        make_space({{"a", rat(1, 2)}, {"b", rat(2, 5)}});
        FAIL("expected rejection");
    } catch (const Error& e) {
        REQUIRE(e.code() == Errc::MassSumNotOne);
        REQUIRE_THAT(std::string(e.what()), Catch::Matchers::ContainsSubstring("1/10"));
    }
}

TEST_CASE("prob of events") {
    auto s = three_atoms();
    REQUIRE(prob(s, Event::empty(s)) == 0);
    REQUIRE(prob(s, Event::full(s)) == 1);
    REQUIRE(prob(s, Event::of_atoms(s, {"a", "b"})) == rat(4, 5));

    auto other = three_atoms(); // same masses, different identity
    REQUIRE_THROWS_AS(prob(s, Event::empty(other)), Error);
}

TEST_CASE("intersection follows the A,B notation") {
    auto s = three_atoms();
    auto A = Event::of_atoms(s, {"a", "b"});
    auto B = Event::of_atoms(s, {"b", "c"});
    REQUIRE(intersect(A, Event::full(s)) == A);
    REQUIRE(intersect(A, Event::empty(s)).is_empty());
    auto AB = intersect(A, B);
    REQUIRE(AB.atom_ids() == std::vector<std::string>{"b"});
    REQUIRE(prob(s, AB) == rat(3, 10));
}

TEST_CASE("joint lower bound") {
    REQUIRE(joint_lower_bound(Rational(1), rat(3, 7)) == rat(3, 7));
    REQUIRE(joint_lower_bound(rat(3, 10), rat(2, 5)) == 0);
    REQUIRE(joint_lower_bound(rat(9, 10), rat(4, 5)) == rat(7, 10));
    REQUIRE_THROWS_AS(joint_lower_bound(rat(-1, 10), rat(1, 2)), Error);
    REQUIRE_THROWS_AS(joint_lower_bound(rat(1, 2), rat(11, 10)), Error);
}

TEST_CASE("joint lower bound never beats the true intersection probability") {
    // enumerate event pairs on a 10-atom uniform space
    std::vector<FiniteProbSpace::Atom> atoms;
    for (int i = 0; i < 10; ++i) atoms.push_back({"w" + std::to_string(i), rat(1, 10)});
    auto s = make_space(atoms);

    std::vector<Rational> mask_prob(1u << 10);
    for (unsigned m = 0; m < (1u << 10); ++m) {
        Rational p(0);
        for (int i = 0; i < 10; ++i)
            if (m & (1u << i)) p += rat(1, 10);
        mask_prob[m] = p;
    }
    bool equality_seen = false;
    for (unsigned a = 0; a < (1u << 10); ++a) {
        for (unsigned b = a; b < (1u << 10); b += 7) { // stride keeps it quick
            Rational bound = joint_lower_bound(mask_prob[a], mask_prob[b]);
            REQUIRE(mask_prob[a & b] >= bound);
            if ((a | b) == (1u << 10) - 1 && mask_prob[a & b] == bound) equality_seen = true;
        }
    }
    REQUIRE(equality_seen); // equality occurs when A union B covers everything
}

TEST_CASE("conditioning renormalizes exactly") {
    auto s = three_atoms();
    auto full = condition(s, Event::full(s));
    REQUIRE(full.size() == 3);
    REQUIRE(full.atom(0).mass == rat(1, 2));

    auto cond = condition(s, Event::of_atoms(s, {"a", "b"}));
    REQUIRE(cond.size() == 2);
    REQUIRE(cond.atom(0).mass == rat(5, 8));
    REQUIRE(cond.atom(1).mass == rat(3, 8));

    try {
        condition(s, Event::empty(s));
        FAIL("expected rejection");
    } catch (const Error& e) {
        REQUIRE(e.code() == Errc::NullConditioningEvent);
    }
}

TEST_CASE("conditional probability of subsets divides exactly") {
    auto s = three_atoms();
    auto given = Event::of_atoms(s, {"a", "c"});
    auto cond = condition(s, given);
    // P'(A) = P(A)/P(given) for A inside the conditioning event
    REQUIRE(prob(cond, Event::of_atoms(cond, {"c"})) == rat(1, 5) / rat(7, 10));
}

TEST_CASE("complement duality and sure-event absorption") {
    auto s = three_atoms();
    for (auto ids : {std::vector<std::string>{}, {"a"}, {"b", "c"}, {"a", "b", "c"}}) {
        auto A = Event::of_atoms(s, ids);
        REQUIRE(prob(s, A) + prob(s, A.complement()) == 1);
        REQUIRE(prob(s, intersect(A, Event::full(s))) == prob(s, A));
    }
}
