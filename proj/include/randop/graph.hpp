#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "randop/conditional.hpp"

namespace randop {

/// A probe into the separating subspace: one certified null sequence and
/// the classification of T along it. A limit is Detected only when every
/// atom's trace is exactly eventually constant or certified norm-to-zero;
/// anything else stays Diverges or Undecided.
struct SeparatingProbe {
    enum class Status { Detected, Diverges, Undecided };

    SequenceSpec spec;
    Status status = Status::Undecided;
    std::optional<RandomVector> limit;
    Rational p_zero{1}; // P[limit = 0] when detected
    std::string detail; // which atom blocked detection, when one did

    explicit SeparatingProbe(SequenceSpec s) : spec(std::move(s)) {}
};

inline std::vector<SeparatingProbe> probe_separating(const RandomOperator& T,
                                                     const std::vector<SequenceSpec>& specs) {
    std::vector<SeparatingProbe> out;
    for (const auto& spec : specs) {
        if (!spec.certified_null())
            fail(Errc::UncertifiedSequence,
                 "separating probes need certified null sequences: " + spec.str());
        SeparatingProbe probe(spec);
        SeqTrace trace = SeqTrace::applied(T, spec);
        std::vector<SeqVector> values;
        bool diverges = false, undecided = false;
        std::string blocker;
        for (std::size_t i = 0; i < T.space().size(); ++i) {
            auto cls = trace.atom(i).vector_class();
            switch (cls.kind) {
                case VectorLimitClass::Kind::EventuallyConstant:
                    values.push_back(cls.limit);
                    break;
                case VectorLimitClass::Kind::NormToZero:
                    values.push_back(SeqVector::zero(T.codomain()));
                    break;
                case VectorLimitClass::Kind::Diverges:
                    diverges = true;
                    blocker = T.space().atom(i).id;
                    break;
                case VectorLimitClass::Kind::Undecided:
                    undecided = true;
                    blocker = T.space().atom(i).id;
                    break;
            }
            if (diverges) break;
        }
        if (diverges) {
            probe.status = SeparatingProbe::Status::Diverges;
            probe.detail = "atom " + blocker + " has no probability limit";
        } else if (undecided) {
            probe.status = SeparatingProbe::Status::Undecided;
            probe.detail = "atom " + blocker + " resists exact classification";
        } else {
            probe.status = SeparatingProbe::Status::Detected;
            RandomVector y(T.space(), T.codomain(), std::move(values));
            // detection must come with an actual convergence certificate
            auto report = converges_in_probability(trace, y, {Rational(1)});
            require(report.verdict == ConvergenceReport::Verdict::Converges,
                    Errc::InvariantViolation, "detected limit must be certified");
            probe.p_zero = prob_equal_zero(y);
            probe.limit = std::move(y);
        }
        out.push_back(std::move(probe));
    }
    return out;
}

/// Separating elements only bound the closed-graph level from above; the
/// report never claims the bound is attained.
struct GraphReport {
    std::vector<SeparatingProbe> probes;
    Rational alpha_upper{1}; // min P[y = 0] over detected separating elements
    bool any_detected = false;
};

inline GraphReport closed_graph_report(const RandomOperator& T,
                                       const std::vector<SequenceSpec>& specs) {
    GraphReport report;
    report.probes = probe_separating(T, specs);
    for (const auto& p : report.probes) {
        if (p.status != SeparatingProbe::Status::Detected) continue;
        report.any_detected = true;
        if (p.p_zero < report.alpha_upper) report.alpha_upper = p.p_zero;
    }
    return report;
}

/// Both directions of the closed-graph correspondence.
///
/// Forward (proven): every detected separating element y must satisfy
/// P[y = 0] >= the certified lower continuity level; a violation would
/// falsify the proven direction and aborts loudly.
///
/// Converse: probes only ever bound the closed-graph level from above, so
/// the comparison is reported as a status. ConverseGap marks the honest
/// situation on incomplete domains where the bound stays strictly above
/// the continuity level.
struct ClosedGraphCheck {
    enum class Status { Consistent, ConverseGap, Inconclusive };

    GraphReport graph;
    ContinuityProfile profile;
    Status status = Status::Inconclusive;
    std::string note;
};

inline ClosedGraphCheck closed_graph_check(const RandomOperator& T,
                                           const std::vector<SequenceSpec>& specs) {
    ClosedGraphCheck out{closed_graph_report(T, specs), continuity_profile(T),
                         ClosedGraphCheck::Status::Inconclusive, {}};
    for (const auto& p : out.graph.probes) {
        if (p.status != SeparatingProbe::Status::Detected) continue;
        if (p.p_zero < out.profile.alpha_lower)
            fail(Errc::InvariantViolation,
                 "forward closed-graph direction violated: separating element with "
                 "P[y=0] = " + format_rational(p.p_zero) + " below the continuity level " +
                     format_rational(out.profile.alpha_lower));
    }
    if (!out.graph.any_detected) {
        out.status = ClosedGraphCheck::Status::Inconclusive;
        out.note = "no probe produced a separating element";
        return out;
    }
    if (out.graph.alpha_upper <= out.profile.alpha_upper) {
        out.status = ClosedGraphCheck::Status::Consistent;
    } else {
        out.status = ClosedGraphCheck::Status::ConverseGap;
        out.note = "closed-graph bound exceeds the continuity level; the domain is not "
                   "complete, so the classical completeness hypothesis is absent";
    }
    return out;
}

} // namespace randop
