#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "randop/random_vector.hpp"

using namespace randop;

namespace {

const auto c00 = SpaceDescriptor::c00();

RandomVector rv(const FiniteProbSpace& s, std::vector<SeqVector> vals) {
    return RandomVector(s, c00, std::move(vals));
}

} // namespace

TEST_CASE("bracketed norm events") {
    auto s = make_space({{"a", rat(3, 10)}, {"b", rat(7, 10)}});
    // ||y(a)|| = 1/2, ||y(b)|| = 1/10
    auto y = rv(s, {scale(rat(1, 2), basis(1, c00)), scale(rat(1, 10), basis(2, c00))});

    REQUIRE(event_norm_ge(y, rat(1, 5)).atom_ids() == std::vector<std::string>{"a"});
    REQUIRE(event_norm_ge(y, rat(1, 20)).atom_ids() == std::vector<std::string>{"a", "b"});
    REQUIRE(event_norm_ge(y, rat(3, 5)).is_empty());
    REQUIRE_THROWS_AS(event_norm_ge(y, rat(-1, 2)), Error);

    // duality: P[<tau] + P[>=tau] = 1 for several thresholds
    for (auto tau : {rat(1, 20), rat(1, 10), rat(1, 5), rat(1, 2), Rational(1)})
        REQUIRE(prob(s, event_norm_lt(y, tau)) + prob(s, event_norm_ge(y, tau)) == 1);
}

TEST_CASE("norm event comparison variants") {
    auto s = make_space({{"a", rat(3, 10)}, {"b", rat(7, 10)}});
    auto y = rv(s, {scale(rat(1, 2), basis(1, c00)), scale(rat(1, 10), basis(2, c00))});
    // at the exact boundary the four variants split as expected
    REQUIRE(event_norm_ge(y, rat(1, 2)).atom_ids() == std::vector<std::string>{"a"});
    REQUIRE(event_norm_gt(y, rat(1, 2)).is_empty());
    REQUIRE(event_norm_le(y, rat(1, 2)).count() == 2);
    REQUIRE(event_norm_lt(y, rat(1, 2)).atom_ids() == std::vector<std::string>{"b"});
    // gt/le and ge/lt are complementary
    for (auto tau : {Rational(0), rat(1, 10), rat(1, 2), Rational(3)}) {
        REQUIRE(event_norm_gt(y, tau) == event_norm_le(y, tau).complement());
        REQUIRE(event_norm_ge(y, tau) == event_norm_lt(y, tau).complement());
    }
}

TEST_CASE("probability of being zero") {
    auto s = make_space({{"a", rat(1, 2)}, {"b", rat(3, 10)}, {"c", rat(1, 5)}});
    REQUIRE(prob_equal_zero(RandomVector::zero(s, c00)) == 1);
    auto y = rv(s, {SeqVector::zero(c00), SeqVector::zero(c00), basis(1, c00)});
    REQUIRE(prob_equal_zero(y) == rat(4, 5));
    auto z = rv(s, {basis(1, c00), basis(2, c00), basis(3, c00)});
    REQUIRE(prob_equal_zero(z) == 0);
}

TEST_CASE("ky fan distance worked values") {
    auto s = make_space({{"a", rat(3, 10)}, {"b", rat(7, 10)}});
    auto y = rv(s, {scale(rat(1, 2), basis(1, c00)), scale(rat(1, 10), basis(1, c00))});
    auto z = RandomVector::zero(s, c00);

    REQUIRE(ky_fan_distance(y, y) == 0);
    // tail prob is 1 below 1/10, then 3/10 on [1/10,1/2); first tau with
    // tail <= tau is 3/10
    REQUIRE(ky_fan_distance(y, z) == rat(3, 10));

    auto w = rv(s, {scale(rat(1, 5), basis(2, c00)), scale(rat(-1, 5), basis(4, c00))});
    REQUIRE(ky_fan_distance(w, z) == rat(1, 5));
}

TEST_CASE("ky fan distance is the definitional minimum") {
    // brute force: the returned tau satisfies the tail inequality, and a
    // dense sweep of smaller thresholds never does
    std::mt19937_64 rng(411);
    auto pick = [&](long n) { return static_cast<long>(rng() % static_cast<unsigned long>(n)); };
    std::vector<Rational> masses_pool = {rat(1, 10), rat(3, 10), rat(1, 5), rat(2, 5)};
    std::vector<Rational> norms_pool = {Rational(0), rat(1, 10), rat(1, 4),  rat(1, 2),
                                        Rational(1), Rational(2), rat(7, 10), rat(3, 20)};
    for (int trial = 0; trial < 60; ++trial) {
        long n = 2 + pick(4);
        std::vector<FiniteProbSpace::Atom> atoms;
        long total = 0;
        std::vector<long> w;
        for (long i = 0; i < n; ++i) {
            w.push_back(1 + pick(7));
            total += w.back();
        }
        for (long i = 0; i < n; ++i)
            atoms.push_back({"u" + std::to_string(i), Rational(w[i], total)});
        auto s = make_space(atoms);
        std::vector<SeqVector> vals;
        for (long i = 0; i < n; ++i)
            vals.push_back(
                scale(norms_pool[static_cast<std::size_t>(pick(8))], basis(i + 1, c00)));
        RandomVector y(s, c00, vals);
        auto z = RandomVector::zero(s, c00);

        Rational d = ky_fan_distance(y, z);
        auto tail = [&](const Rational& tau) {
            Rational p(0);
            for (std::size_t i = 0; i < s.size(); ++i)
                if (y.at(i).norm() > tau) p += s.atom(i).mass;
            return p;
        };
        REQUIRE(tail(d) <= d);
        for (int j = 1; j <= 40; ++j) {
            Rational tau = d * rat(j, 41);
            if (tau < d) REQUIRE(tail(tau) > tau);
        }
    }
}

TEST_CASE("ky fan is a metric on sampled triples") {
    auto s = make_space({{"a", rat(1, 4)}, {"b", rat(1, 4)}, {"c", rat(1, 2)}});
    std::vector<RandomVector> pool;
    pool.push_back(RandomVector::zero(s, c00));
    pool.push_back(rv(s, {basis(1, c00), basis(2, c00), basis(3, c00)}));
    pool.push_back(rv(s, {scale(rat(1, 3), basis(1, c00)), SeqVector::zero(c00),
                          scale(Rational(2), basis(5, c00))}));
    pool.push_back(rv(s, {scale(rat(1, 3), basis(1, c00)), basis(2, c00),
                          scale(Rational(2), basis(5, c00))}));

    for (const auto& x : pool) {
        for (const auto& y : pool) {
            REQUIRE(ky_fan_distance(x, y) == ky_fan_distance(y, x));
            // zero distance exactly when equal almost surely (all masses positive)
            REQUIRE((ky_fan_distance(x, y) == 0) == (prob_equal_zero(rv_subtract(x, y)) == 1));
            for (const auto& z : pool)
                REQUIRE(ky_fan_distance(x, z) <=
                        ky_fan_distance(x, y) + ky_fan_distance(y, z));
        }
    }
}
