#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace randop;
using namespace fixtures;

TEST_CASE("coefficient families evaluate and summarize exactly") {
    auto c = CoeffFamily::constant(rat(3, 2));
    REQUIRE(c.at(10) == rat(3, 2));
    REQUIRE(c.sup_abs_from() == ExtRational(rat(3, 2)));
    REQUIRE(!c.sum_abs_from().is_finite());

    auto aff = CoeffFamily::affine(Rational(1), Rational(0));
    REQUIRE(aff.at(7) == 7);
    REQUIRE(!aff.sup_abs_from().is_finite());
    REQUIRE(aff.first_index_abs_gt(Rational(5)) == 6);

    auto harm = CoeffFamily::harmonic(Rational(2), Rational(-1));
    REQUIRE(harm.at(3) == rat(5, 3));
    // sup of 2 - 1/n is 2, approached from below and never attained
    REQUIRE(harm.sup_abs_from() == ExtRational(Rational(2)));
    REQUIRE(!harm.first_index_abs_gt(Rational(2)).has_value());
    REQUIRE(harm.first_index_abs_gt(rat(19, 10)) == 11);

    auto up = CoeffFamily::harmonic(Rational(2), Rational(1)); // 2 + 1/n from above
    REQUIRE(up.first_index_abs_gt(Rational(2)) == 1);
    REQUIRE(up.approaches_abs_limit_from_above());

    std::map<long, Rational> ov;
    for (long n = 1; n <= 10; ++n) ov[n] = Rational(1);
    auto tab = CoeffFamily::table(ov, CoeffFamily::constant(Rational(0)));
    REQUIRE(tab.at(10) == 1);
    REQUIRE(tab.at(11) == 0);
    REQUIRE(tab.sum_abs_from() == ExtRational(Rational(10)));
    REQUIRE(tab.eventually_zero_from() == 11);
}

TEST_CASE("negative and shifted families find adversarial indices") {
    auto neg = CoeffFamily::affine(Rational(-2), Rational(5)); // 3, 1, -1, -3, -5, ...
    REQUIRE(neg.first_index_abs_gt(Rational(2)) == 1);
    REQUIRE(neg.first_index_abs_gt(Rational(3)) == 5);
    REQUIRE(neg.first_index_abs_gt(Rational(100)) == 53);

    auto shifted = CoeffFamily::table({{1, Rational(0)}, {2, Rational(0)}},
                                      CoeffFamily::affine(Rational(1), Rational(0)));
    REQUIRE(shifted.first_index_abs_gt(rat(5, 2)) == 3);
}

TEST_CASE("operator norms per representation") {
    REQUIRE(LinearMapRep::zero(kC00, kC00).op_norm() == ExtRational(Rational(0)));

    auto harm = LinearMapRep::diagonal(CoeffFamily::harmonic(Rational(2), Rational(-1)));
    REQUIRE(harm.op_norm() == ExtRational(Rational(2)));

    auto unbounded = LinearMapRep::diagonal(CoeffFamily::affine(Rational(1), Rational(0)));
    REQUIRE(!unbounded.op_norm().is_finite());

    std::map<long, Rational> ov;
    for (long n = 1; n <= 10; ++n) ov[n] = Rational(1);
    auto r1 = LinearMapRep::rank_one(CoeffFamily::table(ov, CoeffFamily::constant(Rational(0))),
                                     basis(1, kC00));
    REQUIRE(r1.op_norm() == ExtRational(Rational(10)));

    auto m = LinearMapRep::matrix({{Rational(1), rat(-1, 2)}, {Rational(0), Rational(3)}});
    REQUIRE(m.op_norm() == ExtRational(Rational(3)));

    REQUIRE_THROWS_AS(LinearMapRep::rank_one(CoeffFamily::constant(Rational(1)),
                                             SeqVector::zero(kC00)),
                      Error);
}

TEST_CASE("norm consistency and violating vectors") {
    std::vector<LinearMapRep> reps = {
        LinearMapRep::diagonal(CoeffFamily::harmonic(Rational(2), Rational(-1))),
        LinearMapRep::diagonal(CoeffFamily::constant(rat(7, 3))),
        LinearMapRep::rank_one(CoeffFamily::table({{1, Rational(2)}, {4, Rational(-3)}},
                                                  CoeffFamily::constant(Rational(0))),
                               scale(rat(1, 2), basis(2, kC00))),
        LinearMapRep::matrix({{Rational(2), Rational(-1)}, {rat(1, 2), rat(1, 2)}}),
    };
    std::vector<SeqVector> probes;
    for (long i = 1; i <= 6; ++i) probes.push_back(basis(i, SpaceDescriptor::c00()));

    for (const auto& rep : reps) {
        auto v = rep.op_norm();
        REQUIRE(v.is_finite());
        // apply never beats the reported norm
        for (const auto& x : probes) {
            if (!(x.space() == rep.domain())) continue;
            REQUIRE(norm(rep.apply(x)) <= v.value() * norm(x));
        }
        // and every slack below the norm is beaten by a constructed witness
        for (auto delta : {rat(1, 10), rat(1, 100)}) {
            if (v.value() <= delta) continue;
            auto x = rep.violating_vector(v.value() - delta);
            REQUIRE(x.has_value());
            REQUIRE(norm(rep.apply(*x)) > (v.value() - delta) * norm(*x));
        }
        // nothing violates the norm itself
        REQUIRE(!rep.violating_vector(v.value()).has_value());
    }
}

TEST_CASE("unbounded representations beat every bound") {
    std::vector<LinearMapRep> reps = {
        LinearMapRep::diagonal(CoeffFamily::affine(Rational(1), Rational(0))),
        LinearMapRep::diagonal(CoeffFamily::affine(rat(-1, 2), Rational(10))),
        LinearMapRep::rank_one(CoeffFamily::constant(Rational(1)), basis(1, kC00)),
        LinearMapRep::rank_one(CoeffFamily::affine(Rational(1), Rational(0)), basis(3, kC00)),
    };
    for (const auto& rep : reps) {
        REQUIRE(!rep.op_norm().is_finite());
        for (auto M : {Rational(0), Rational(1), Rational(10), Rational(250)}) {
            auto x = rep.violating_vector(M);
            REQUIRE(x.has_value());
            REQUIRE(norm(*x) == 1);
            REQUIRE(norm(rep.apply(*x)) > M);
        }
    }
}

TEST_CASE("apply on the mixed diagonal scenario") {
    auto T = mixed_diagonal();
    auto y = T.apply(basis(3, kC00));
    REQUIRE(y.at(0) == basis(3, kC00));
    REQUIRE(y.at(1) == scale(rat(5, 3), basis(3, kC00)));
    REQUIRE(y.at(2) == scale(Rational(3), basis(3, kC00)));

    REQUIRE(prob_equal_zero(T.apply(SeqVector::zero(kC00))) == 1);
}

TEST_CASE("rank-one atom maps e_k/k to its output exactly") {
    auto T = rank_one_witness();
    for (long k : {1L, 2L, 5L, 17L}) {
        auto x = scale(Rational(1) / Rational(k), basis(k, kC00));
        REQUIRE(T.apply(x).at(2) == basis(1, kC00));
    }
}

TEST_CASE("bounded event by norm threshold") {
    auto T = mixed_diagonal();
    REQUIRE(bounded_event(T, Rational(1)).atom_ids() == std::vector<std::string>{"a"});
    REQUIRE(bounded_event(T, Rational(2)).atom_ids() == std::vector<std::string>{"a", "b"});
    REQUIRE(bounded_event(T, Rational(1000)).atom_ids() == std::vector<std::string>{"a", "b"});
    REQUIRE_THROWS_AS(bounded_event(T, Rational(-1)), Error);
}

TEST_CASE("linearity probability") {
    auto T = mixed_diagonal();
    auto x = basis(1, kC00), y = basis(2, kC00);
    REQUIRE(linearity_probability(T, x, y, Rational(1), Rational(1)) == 1);
    REQUIRE(linearity_probability(T, SeqVector::zero(kC00), y, Rational(1), Rational(0)) == 1);

    auto C = rank_one_witness_corrupted();
    REQUIRE(linearity_probability(C, basis(1, kC00), basis(2, kC00), Rational(1), Rational(1)) ==
            rat(4, 5));
    // the additive fault cancels when the coefficients sum to one
    REQUIRE(linearity_probability(C, basis(1, kC00), basis(2, kC00), rat(1, 2), rat(1, 2)) == 1);
}

TEST_CASE("homogeneity rewrite holds surely for uncorrupted operators") {
    auto T = mixed_diagonal();
    for (auto delta : {rat(1, 4), Rational(2)}) {
        for (long i : {1L, 3L, 9L}) {
            auto x = basis(i, kC00);
            auto lhs = T.apply(scale(delta, scale(Rational(1) / delta, x)));
            auto rhs = T.apply(scale(Rational(1) / delta, x));
            for (std::size_t a = 0; a < T.space().size(); ++a)
                REQUIRE(norm(lhs.at(a)) == rational_abs(delta) * norm(rhs.at(a)));
        }
    }
}
