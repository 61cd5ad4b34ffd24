#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "randop/graph.hpp"

using namespace randop;
using namespace fixtures;

namespace {

std::vector<SequenceSpec> standard_specs() {
    return {SequenceSpec::scaled_basis(1), SequenceSpec::scaled_basis(2),
            SequenceSpec::scaled_fixed(basis(1, kC00)), SequenceSpec::window_sum(4)};
}

} // namespace

TEST_CASE("separating probes on the rank-one witness") {
    auto T = rank_one_witness();
    auto probes = probe_separating(T, {SequenceSpec::scaled_basis(1)});
    REQUIRE(probes.size() == 1);
    REQUIRE(probes[0].status == SeparatingProbe::Status::Detected);
    REQUIRE(probes[0].limit->at(0).is_zero());
    REQUIRE(probes[0].limit->at(1).is_zero());
    REQUIRE(probes[0].limit->at(2) == basis(1, kC00));
    REQUIRE(probes[0].p_zero == rat(4, 5));
}

TEST_CASE("bounded families separate only at zero") {
    auto T = bounded_family();
    for (const auto& p : probe_separating(T, standard_specs())) {
        REQUIRE(p.status == SeparatingProbe::Status::Detected);
        REQUIRE(p.p_zero == 1);
        REQUIRE(prob_equal_zero(*p.limit) == 1);
    }
}

TEST_CASE("unbounded diagonal atom blocks detection along basis directions") {
    auto T = unbounded_atom();
    auto probes = probe_separating(T, {SequenceSpec::scaled_basis(1)});
    REQUIRE(probes[0].status == SeparatingProbe::Status::Diverges);

    // scaled fixed vectors still detect the zero limit
    auto fixed = probe_separating(T, {SequenceSpec::scaled_fixed(basis(1, kC00))});
    REQUIRE(fixed[0].status == SeparatingProbe::Status::Detected);
    REQUIRE(fixed[0].p_zero == 1);

    REQUIRE_THROWS_AS(probe_separating(T, {SequenceSpec::scaled_basis(0)}), Error);
}

TEST_CASE("detected limits scale with the probe sequence") {
    auto T = rank_one_witness();
    auto v = add(basis(2, kC00), scale(rat(1, 3), basis(5, kC00)));
    for (auto c : {rat(3, 2), Rational(-2)}) {
        auto base = probe_separating(T, {SequenceSpec::scaled_fixed(v)});
        auto scaled = probe_separating(T, {SequenceSpec::scaled_fixed(scale(c, v))});
        REQUIRE(base[0].status == SeparatingProbe::Status::Detected);
        REQUIRE(scaled[0].status == SeparatingProbe::Status::Detected);
        for (std::size_t i = 0; i < T.space().size(); ++i)
            REQUIRE(scaled[0].limit->at(i) == scale(c, base[0].limit->at(i)));
    }
    // same closure along basis sequences, seen through term-level linearity
    auto spec = SequenceSpec::scaled_basis(1);
    for (long k : {1L, 2L, 9L}) {
        auto x = spec.term(k, kC00);
        auto lhs = T.apply(scale(rat(3, 2), x));
        auto rhs = T.apply(x);
        for (std::size_t i = 0; i < T.space().size(); ++i)
            REQUIRE(lhs.at(i) == scale(rat(3, 2), rhs.at(i)));
    }
}

TEST_CASE("closed graph reports bound the level from above") {
    auto s3 = closed_graph_report(rank_one_witness(), standard_specs());
    REQUIRE(s3.any_detected);
    REQUIRE(s3.alpha_upper == rat(4, 5));

    auto s1 = closed_graph_report(bounded_family(), standard_specs());
    REQUIRE(s1.alpha_upper == 1);

    auto s4 = closed_graph_report(unbounded_atom(), standard_specs());
    REQUIRE(s4.alpha_upper == 1); // nothing below one was found
}

TEST_CASE("closed graph check: forward direction and statuses") {
    auto s3 = closed_graph_check(rank_one_witness(), standard_specs());
    REQUIRE(s3.status == ClosedGraphCheck::Status::Consistent);
    REQUIRE(s3.graph.alpha_upper == rat(4, 5));
    REQUIRE(s3.profile.alpha_lower == rat(4, 5));

    auto s1 = closed_graph_check(bounded_family(), standard_specs());
    REQUIRE(s1.status == ClosedGraphCheck::Status::Consistent);
    REQUIRE(s1.graph.alpha_upper == 1);

    auto s4 = closed_graph_check(unbounded_atom(), standard_specs());
    REQUIRE(s4.status == ClosedGraphCheck::Status::ConverseGap);
    REQUIRE(s4.profile.alpha() == rat(7, 10));
    REQUIRE(s4.graph.alpha_upper == 1);
    REQUIRE_THAT(s4.note, Catch::Matchers::ContainsSubstring("not complete"));

    // zero operator detects only the zero limit: consistent at level one
    auto z = closed_graph_check(zero_operator(), standard_specs());
    REQUIRE(z.status == ClosedGraphCheck::Status::Consistent);
}

TEST_CASE("forward direction holds on every fixture and probe") {
    for (const auto& T : {mixed_diagonal(), bounded_family(), unbounded_atom(),
                          rank_one_witness(), zero_operator(), all_unbounded()}) {
        auto check = closed_graph_check(T, standard_specs());
        for (const auto& p : check.graph.probes)
            if (p.status == SeparatingProbe::Status::Detected)
                REQUIRE(p.p_zero >= check.profile.alpha_lower);
    }
}

TEST_CASE("sequential bridge: a nonzero separating element refutes high levels") {
    auto T = rank_one_witness();
    auto probes = probe_separating(T, {SequenceSpec::scaled_basis(1)});
    REQUIRE(probes[0].status == SeparatingProbe::Status::Detected);
    REQUIRE(probes[0].p_zero == rat(4, 5));

    // tau* = smallest nonzero value norm of the limit
    Rational tau_star(0);
    for (std::size_t i = 0; i < T.space().size(); ++i) {
        Rational n = probes[0].limit->at(i).norm();
        if (n > 0 && (tau_star == 0 || n < tau_star)) tau_star = n;
    }
    REQUIRE(tau_star == 1);

    auto seq = check_sequential(T, SequenceSpec::scaled_basis(1), rat(9, 10), {tau_star / 2});
    REQUIRE(seq.verdict == SequentialCheck::Row::Verdict::Refuted);
    REQUIRE(seq.rows[0].liminf_upper <= probes[0].p_zero);

    // while levels at or below p_zero are not refuted by this sequence
    auto seq_ok = check_sequential(T, SequenceSpec::scaled_basis(1), rat(4, 5), {tau_star / 2});
    REQUIRE(seq_ok.verdict == SequentialCheck::Row::Verdict::Holds);
}
