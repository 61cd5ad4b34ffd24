#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "randop/trace_analysis.hpp"

namespace randop {

/// Deterministic probe vectors sampling the unit sphere: basis spikes,
/// +-1 combinations with small supports, and flat windows. All probes have
/// unit sup norm; user vectors are rescaled exactly. No randomness anywhere,
/// so every refutation is reproducible.
struct ProbeConfig {
    long basis_max = 64;
    long comb_width = 4;
    long window_len = 8;
};

class ProbeSet {
public:
    static ProbeSet standard(const ProbeConfig& cfg, const SpaceDescriptor& domain,
                             const std::vector<SeqVector>& user = {}) {
        ProbeSet p;
        long top = cfg.basis_max;
        if (!domain.is_c00()) top = std::min<long>(top, domain.dimension);
        if (top < 1) top = 1;
        for (long n = 1; n <= top; ++n) p.vectors_.push_back(basis(n, domain));
        auto add_combo = [&](long start, long width, bool alternate) {
            if (start + width - 1 > top && !domain.is_c00()) return;
            std::vector<std::pair<long, Rational>> entries;
            for (long t = 0; t < width; ++t)
                entries.emplace_back(start + t,
                                     alternate && (t % 2) ? Rational(-1) : Rational(1));
            p.vectors_.push_back(SeqVector::from_entries(domain, std::move(entries)));
        };
        for (long w = 2; w <= cfg.comb_width; ++w)
            for (long start : {long(1), top / 2, top - w}) {
                if (start < 1) continue;
                add_combo(start, w, false);
                add_combo(start, w, true);
            }
        for (long len = 2; len <= cfg.window_len; len += 2)
            for (long start : {long(1), top / 2})
                if (start >= 1) add_combo(start, len, false);
        for (const auto& v : user) {
            if (v.is_zero()) fail(Errc::ZeroVector, "user probes must be nonzero");
            p.vectors_.push_back(scale(Rational(1) / v.norm(), v));
        }
        return p;
    }

    const std::vector<SeqVector>& vectors() const { return vectors_; }

private:
    std::vector<SeqVector> vectors_;
};

/// P[ ||T(x)|| <= M ||x|| ], exact. The zero vector is excluded here; the
/// definition handles it separately and callers treat it as probability one.
inline Rational prob_bound_at(const RandomOperator& T, const SeqVector& x, const Rational& M) {
    if (x.is_zero()) fail(Errc::ZeroVector, "x = 0 is excluded from bound probabilities");
    if (M < 0) fail(Errc::NegativeBound, "bound must be nonnegative");
    Rational rhs = M * x.norm();
    RandomVector tx = T.apply(x);
    Rational p(0);
    for (std::size_t i = 0; i < T.space().size(); ++i)
        if (tx.at(i).norm() <= rhs) p += T.space().atom(i).mass;
    return p;
}

/// A probe beating the bound M at a certified set of atoms simultaneously.
/// Diagonal violators use private spike coordinates (independent under the
/// sup norm); at most one non-diagonal violator joins through its sign
/// pattern; corrupted atoms are beaten by shrinking the probe until the
/// additive fault dominates.
struct ViolationProbe {
    SeqVector x;
    Event violated;
};

inline std::optional<ViolationProbe> violating_probe(const RandomOperator& T,
                                                     const Rational& M) {
    if (M < 0) fail(Errc::NegativeBound, "bound must be nonnegative");
    const auto& space = T.space();
    std::vector<bool> violated(space.size(), false);

    std::optional<std::size_t> pattern_atom;
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (T.atom_corrupted(i)) continue; // beaten by scaling below
        const auto& rep = T.map_at(i);
        if (rep.is_diagonal_like()) continue;
        if (rep.op_norm() <= M) continue;
        if (!pattern_atom || space.atom(i).mass > space.atom(*pattern_atom).mass)
            pattern_atom = i;
    }

    SeqVector x = SeqVector::zero(T.domain());
    if (pattern_atom) {
        auto pat = T.map_at(*pattern_atom).violating_vector(M);
        require(pat.has_value(), Errc::InvariantViolation, "norm above M must be beatable");
        x = *pat;
        violated[*pattern_atom] = true;
    }

    // rank-one weights of the pattern atom, for sign alignment of new spikes
    const LinearMapRep* pattern_rep =
        pattern_atom && T.map_at(*pattern_atom).kind() == LinearMapRep::Kind::RankOne
            ? &T.map_at(*pattern_atom)
            : nullptr;

    for (std::size_t i = 0; i < space.size(); ++i) {
        if (T.atom_corrupted(i)) continue;
        const auto& rep = T.map_at(i);
        if (rep.kind() != LinearMapRep::Kind::Diagonal) continue;
        auto idx = rep.violating_index(M);
        if (!idx) continue;
        if (x.at(*idx) == 0) {
            Rational sign(1);
            if (pattern_rep && pattern_rep->coeff().at(*idx) < 0) sign = Rational(-1);
            x = add(x, scale(sign, basis(*idx, T.domain())));
        }
        violated[i] = true; // existing +-1 entry at idx violates just as well
    }

    bool any_corrupted = false;
    for (std::size_t i = 0; i < space.size(); ++i)
        if (T.atom_corrupted(i)) any_corrupted = true;

    if (any_corrupted) {
        if (x.is_zero()) x = basis(1, T.domain());
        Rational max_rep(0);
        for (std::size_t i = 0; i < space.size(); ++i)
            if (T.atom_corrupted(i)) {
                Rational n = T.map_at(i).apply(x).norm() / x.norm();
                if (n > max_rep) max_rep = n;
                violated[i] = true;
            }
        Rational off = T.corruption()->offset.norm();
        Rational s = off / (M + max_rep + 1) / x.norm();
        x = scale(s, x);
    }

    bool any = std::any_of(violated.begin(), violated.end(), [](bool b) { return b; });
    if (!any) return std::nullopt;
    return ViolationProbe{std::move(x), Event(space, std::move(violated))};
}

/// The boundedness profile f(M) = inf_x P[||T(x)|| <= M ||x||] and the
/// continuity level alpha = lim_{M->inf} f(M).
///
/// For diagonal-only uncorrupted operators the inf is attained by combining
/// per-atom violators on disjoint coordinates, so the profile is Exact and
/// equals the bounded-event probability. Anything else gets a sound bracket;
/// the bracket often closes (a single non-diagonal violator combines too).
struct ContinuityProfile {
    enum class Method { Exact, Bracket };

    struct Step {
        Rational from_m; // f lower bound equals `value` on [from_m, next)
        Rational value;
    };
    struct GridRow {
        Rational m;
        Rational lower;
        Rational upper;
    };

    Method method = Method::Bracket;
    std::vector<Step> steps;  // certified lower step function, terminal = alpha_lower
    Rational alpha_lower{0};
    Rational alpha_upper{1};
    std::vector<GridRow> grid; // filled by boundedness_profile

    const Rational& alpha() const {
        require(method == Method::Exact, Errc::InvariantViolation,
                "exact level on a bracketed profile");
        return alpha_lower;
    }

    /// Smallest M with certified f(M) > eps, from the step function.
    std::optional<Rational> uniform_bound_above(const Rational& eps) const {
        for (const auto& s : steps)
            if (s.value > eps) return s.from_m;
        return std::nullopt;
    }
};

/// P{ omega : ||T_omega|| <= M, omega unaffected by corruption }: the
/// certified lower bound for f(M).
inline Rational certified_bound_level(const RandomOperator& T, const Rational& M) {
    Rational p(0);
    for (std::size_t i = 0; i < T.space().size(); ++i)
        if (!T.atom_corrupted(i) && T.map_at(i).op_norm() <= M)
            p += T.space().atom(i).mass;
    return p;
}

inline ContinuityProfile continuity_profile(const RandomOperator& T) {
    ContinuityProfile out;
    const auto& space = T.space();

    bool exact = T.all_diagonal_like() && T.uncorrupted_event() == Event::full(space);
    out.method = exact ? ContinuityProfile::Method::Exact : ContinuityProfile::Method::Bracket;

    std::set<Rational> norms; // distinct finite norms of uncorrupted atoms
    Rational max_finite(0);
    for (std::size_t i = 0; i < space.size(); ++i) {
        auto n = T.map_at(i).op_norm();
        if (n.is_finite() && n.value() > max_finite) max_finite = n.value();
        if (!T.atom_corrupted(i) && n.is_finite()) norms.insert(n.value());
    }
    norms.insert(Rational(0));
    for (const auto& m : norms)
        out.steps.push_back({m, certified_bound_level(T, m)});
    out.alpha_lower = out.steps.back().value;

    // the limit's upper bound comes from the violators still beatable beyond
    // every finite norm
    auto vp = violating_probe(T, max_finite + 1);
    out.alpha_upper = vp ? Rational(1) - prob(space, vp->violated) : Rational(1);
    require(out.alpha_lower <= out.alpha_upper, Errc::InvariantViolation,
            "profile bracket must be ordered");
    if (exact)
        require(out.alpha_lower == out.alpha_upper, Errc::InvariantViolation,
                "diagonal-only profiles must close exactly");
    return out;
}

inline ContinuityProfile boundedness_profile(const RandomOperator& T, const ProbeSet& probes,
                                             const std::vector<Rational>& m_grid) {
    if (m_grid.empty()) fail(Errc::EmptyGrid, "M grid must be non-empty");
    for (std::size_t i = 0; i < m_grid.size(); ++i) {
        if (m_grid[i] < 0) fail(Errc::NegativeBound, "M grid entries must be nonnegative");
        if (i && m_grid[i] <= m_grid[i - 1])
            fail(Errc::OutOfRange, "M grid must be strictly increasing");
    }
    ContinuityProfile out = continuity_profile(T);
    for (const auto& m : m_grid) {
        Rational lower = certified_bound_level(T, m);
        Rational upper(1);
        for (const auto& x : probes.vectors()) {
            if (!(x.space() == T.domain())) fail(Errc::SpaceMismatch, "probe outside domain");
            Rational p = prob_bound_at(T, x, m);
            if (p < upper) upper = p;
        }
        if (auto vp = violating_probe(T, m)) {
            Rational p = prob_bound_at(T, vp->x, m);
            if (p < upper) upper = p;
        }
        require(lower <= upper, Errc::InvariantViolation, "f(M) bracket must be ordered");
        if (out.method == ContinuityProfile::Method::Exact)
            require(upper == lower, Errc::InvariantViolation,
                    "exact profiles must be attained by the combined violator");
        out.grid.push_back({m, lower, upper});
    }
    return out;
}

/// Brute-force reading of the continuity level on finite grids. Test oracle
/// only: quantifiers are evaluated literally over the probe set.
inline Rational continuity_level_oracle(const RandomOperator& T,
                                        const std::vector<Rational>& eps_grid,
                                        const std::vector<Rational>& m_grid,
                                        const ProbeSet& probes) {
    if (eps_grid.empty() || m_grid.empty()) fail(Errc::EmptyGrid, "grids must be non-empty");
    std::vector<Rational> g;
    for (const auto& m : m_grid) {
        Rational worst(1);
        for (const auto& x : probes.vectors()) {
            Rational p = prob_bound_at(T, x, m);
            if (p < worst) worst = p;
        }
        g.push_back(worst);
    }
    std::vector<Rational> eps_sorted(eps_grid);
    std::sort(eps_sorted.begin(), eps_sorted.end());
    for (std::size_t i = 0; i < eps_sorted.size(); ++i) {
        bool pass = false;
        for (const auto& gm : g)
            if (gm > eps_sorted[i]) pass = true;
        if (!pass) return i == 0 ? Rational(0) : eps_sorted[i];
    }
    return Rational(1);
}

/// The seven equivalent continuity statements, in the order of their proof
/// cycle. The first four are phrased through differences T(x)-T(y), where
/// additive corruption cancels; the last three see T(x) raw.
enum class Clause {
    Lipschitz,            // (i)   P[||Tx-Ty|| <= M||x-y||] > eps for all x,y
    UniformlyContinuous,  // (ii)  delta works for every pair at distance < delta
    Continuous,           // (iii) continuous at every point
    ContinuousAtPoint,    // (iv)  continuous at a chosen point
    ContinuousAtOrigin,   // (v)   P[||Tx|| < tau] > eps whenever ||x|| < delta
    Bounded,              // (vi)  P[||Tx|| <= M] > eps on the unit ball
    UniformBound,         // (vii) P[||Tx|| <= M||x||] > eps for all x
};

inline std::string_view clause_name(Clause c) {
    switch (c) {
        case Clause::Lipschitz: return "lipschitz";
        case Clause::UniformlyContinuous: return "uniformly_continuous";
        case Clause::Continuous: return "continuous";
        case Clause::ContinuousAtPoint: return "continuous_at_point";
        case Clause::ContinuousAtOrigin: return "continuous_at_origin";
        case Clause::Bounded: return "bounded";
        case Clause::UniformBound: return "uniform_bound";
    }
    return "?";
}

inline bool clause_uses_differences(Clause c) {
    return c == Clause::Lipschitz || c == Clause::UniformlyContinuous ||
           c == Clause::Continuous || c == Clause::ContinuousAtPoint;
}

inline bool clause_wants_bound(Clause c) {
    return c == Clause::Lipschitz || c == Clause::Bounded || c == Clause::UniformBound;
}

/// The quantifier data a clause check consumes and produces: tolerance tau,
/// level eps in (0, alpha), and the missing witness (delta or M).
struct WitnessBundle {
    Rational tau{1};
    Rational eps{0};
    std::optional<Rational> delta;
    std::optional<Rational> bound;
    Rational alpha{1};

    void validate() const {
        if (tau <= 0) fail(Errc::InconsistentBundle, "tau must be positive");
        if (eps <= 0 || eps >= 1) fail(Errc::InconsistentBundle, "eps must lie in (0,1)");
        if (alpha <= 0 || alpha > 1) fail(Errc::InconsistentBundle, "alpha must lie in (0,1]");
        if (eps >= alpha) fail(Errc::InconsistentBundle, "eps must be below alpha");
        if (delta && *delta <= 0) fail(Errc::InconsistentBundle, "delta must be positive");
        if (bound && *bound < 0) fail(Errc::InconsistentBundle, "bound must be nonnegative");
    }
};

struct ClauseCheck {
    enum class Verdict { Holds, Fails, Undecided };

    Clause clause = Clause::UniformBound;
    Verdict verdict = Verdict::Undecided;
    WitnessBundle witness; // completed bundle when Holds

    // refutation certificates: per candidate bound, a probe whose bound
    // probability stays at or below eps
    struct Demo {
        Rational m;
        SeqVector probe;
        Rational prob;
    };
    std::vector<Demo> demos;
    std::optional<SeqVector> refuting_x, refuting_y; // pair for clauses i/ii
    std::string note;
};

namespace detail {

// Evaluates the clause's own event at a scaled probe: P[||T(z)|| < tau] for
// origin-style clauses, P[||T(z) - T(0)|| < tau] for difference clauses.
inline Rational eval_delta_event(const RandomOperator& T, bool differences,
                                 const SeqVector& z, const Rational& tau) {
    RandomVector tz = T.apply(z);
    RandomVector t0 = T.apply(SeqVector::zero(T.domain()));
    Rational p(0);
    for (std::size_t i = 0; i < T.space().size(); ++i) {
        SeqVector v = differences ? subtract(tz.at(i), t0.at(i)) : tz.at(i);
        if (v.norm() < tau) p += T.space().atom(i).mass;
    }
    return p;
}

// Scales a bound-violating probe into the open delta-ball so the violated
// atoms keep ||T(z)|| >= tau; soundness is by re-evaluation at the caller.
inline std::optional<SeqVector> scale_into_ball(const RandomOperator& T,
                                                const SeqVector& x, const Rational& tau,
                                                const Rational& delta) {
    Rational xnorm = x.norm();
    Rational s_min(0);
    RandomVector tx = T.without_corruption().apply(x);
    for (std::size_t i = 0; i < T.space().size(); ++i) {
        Rational n = tx.at(i).norm();
        if (n > (tau / delta) * xnorm) {
            Rational need = tau / n;
            if (need > s_min) s_min = need;
        }
    }
    Rational s_max = delta / xnorm;
    if (s_min >= s_max) return std::nullopt;
    return scale((s_min + s_max) / 2, x);
}

} // namespace detail

/// Checks one clause at the bundle's level. With the witness field present
/// the check verifies it; otherwise it searches for one or refutes. All
/// verdicts are certified: Holds by the certified profile lower bound, Fails
/// by exactly evaluated probes, anything in the bracket gap is Undecided.
inline ClauseCheck check_clause(const RandomOperator& T, Clause clause,
                                const WitnessBundle& bundle, const ProbeSet& probes,
                                const std::optional<SeqVector>& x0 = std::nullopt) {
    bundle.validate();
    ClauseCheck out;
    out.clause = clause;
    out.witness = bundle;

    const bool differences = clause_uses_differences(clause);
    RandomOperator Te = differences ? T.without_corruption() : T;
    ContinuityProfile profile = continuity_profile(Te);

    if (clause == Clause::ContinuousAtPoint && x0) {
        // the shift identity behind the point reduction, checked exactly
        RandomVector tx0 = T.apply(*x0);
        for (long n : {1L, 2L}) {
            SeqVector z = scale(rat(1, 7), basis(n, T.domain()));
            RandomVector lhs = T.apply(add(z, *x0));
            RandomVector rhs = T.without_corruption().apply(z);
            for (std::size_t i = 0; i < T.space().size(); ++i)
                require(subtract(lhs.at(i), tx0.at(i)) == rhs.at(i), Errc::InvariantViolation,
                        "shift identity must hold exactly");
        }
        out.note = "checked at the supplied point via the shift identity";
    }

    const bool wants_bound = clause_wants_bound(clause);
    const std::optional<Rational>& given =
        wants_bound ? bundle.bound : bundle.delta;

    auto effective_m = [&](const Rational& witness_value) {
        return wants_bound ? witness_value : Rational(bundle.tau / witness_value);
    };

    if (given) {
        Rational m_eff = effective_m(*given);
        if (certified_bound_level(Te, m_eff) > bundle.eps) {
            out.verdict = ClauseCheck::Verdict::Holds;
            return out;
        }
        // try to refute a bad witness with an exact counterexample
        std::vector<SeqVector> candidates = probes.vectors();
        if (auto vp = violating_probe(Te, m_eff)) candidates.push_back(vp->x);
        for (const auto& x : candidates) {
            if (wants_bound) {
                Rational p = prob_bound_at(Te, x, m_eff);
                if (p <= bundle.eps) {
                    out.verdict = ClauseCheck::Verdict::Fails;
                    out.demos.push_back({m_eff, x, p});
                    out.refuting_x = x;
                    out.refuting_y = SeqVector::zero(T.domain());
                    return out;
                }
            } else if (auto z = detail::scale_into_ball(Te, x, bundle.tau, *given)) {
                Rational p = detail::eval_delta_event(Te, differences, *z, bundle.tau);
                if (p <= bundle.eps) {
                    out.verdict = ClauseCheck::Verdict::Fails;
                    out.demos.push_back({m_eff, *z, p});
                    out.refuting_x = *z;
                    out.refuting_y = SeqVector::zero(T.domain());
                    return out;
                }
            }
        }
        out.verdict = ClauseCheck::Verdict::Undecided;
        out.note = "witness not certified and no probe refutes it";
        return out;
    }

    if (auto m_star = profile.uniform_bound_above(bundle.eps)) {
        out.verdict = ClauseCheck::Verdict::Holds;
        if (wants_bound) {
            out.witness.bound = *m_star;
        } else {
            out.witness.delta = *m_star == 0 ? Rational(1) : Rational(bundle.tau / *m_star);
        }
        return out;
    }

    if (profile.alpha_upper <= bundle.eps) {
        out.verdict = ClauseCheck::Verdict::Fails;
        std::vector<Rational> demo_ms;
        for (const auto& s : profile.steps) demo_ms.push_back(s.from_m);
        demo_ms.push_back(profile.steps.back().from_m + 1);
        for (const auto& m : demo_ms) {
            auto vp = violating_probe(Te, m);
            require(vp.has_value(), Errc::InvariantViolation,
                    "refuted clause must have violators at every level");
            Rational p = prob_bound_at(Te, vp->x, m);
            require(p <= bundle.eps, Errc::InvariantViolation,
                    "refutation demo must stay at or below eps");
            out.demos.push_back({m, vp->x, p});
        }
        out.refuting_x = out.demos.back().probe;
        out.refuting_y = SeqVector::zero(T.domain());
        return out;
    }

    out.verdict = ClauseCheck::Verdict::Undecided;
    out.note = "eps falls inside the profile bracket";
    return out;
}

/// The constructive witness rewrites along the proof cycle
/// i -> ii -> iii -> iv -> v -> vi -> vii -> i. Only these edges exist.
inline WitnessBundle transform_witness(Clause from, Clause to, const WitnessBundle& bundle) {
    bundle.validate();
    WitnessBundle out = bundle;
    auto need_bound = [&]() -> const Rational& {
        if (!bundle.bound) fail(Errc::MissingWitness, "edge needs the bound M");
        return *bundle.bound;
    };
    auto need_delta = [&]() -> const Rational& {
        if (!bundle.delta) fail(Errc::MissingWitness, "edge needs the radius delta");
        return *bundle.delta;
    };
    if (from == Clause::Lipschitz && to == Clause::UniformlyContinuous) {
        const Rational& m = need_bound();
        out.delta = m == 0 ? Rational(1) : Rational(bundle.tau / m);
        return out;
    }
    if ((from == Clause::UniformlyContinuous && to == Clause::Continuous) ||
        (from == Clause::Continuous && to == Clause::ContinuousAtPoint) ||
        (from == Clause::ContinuousAtPoint && to == Clause::ContinuousAtOrigin)) {
        need_delta();
        return out; // the same radius passes through these steps
    }
    if (from == Clause::ContinuousAtOrigin && to == Clause::Bounded) {
        const Rational& d = need_delta();
        out.bound = bundle.tau / d; // fixing C = tau, M = C/delta
        return out;
    }
    if ((from == Clause::Bounded && to == Clause::UniformBound) ||
        (from == Clause::UniformBound && to == Clause::Lipschitz)) {
        need_bound();
        return out; // homogeneity / the difference identity reuse M
    }
    fail(Errc::UnsupportedEdge, "only the proof-cycle edges are implemented");
}

/// Sequential continuity along one certified null sequence. Affirmative
/// verdicts carry a caveat: one sequence cannot establish continuity, so the
/// check is meant as a refutation tool (the contrapositive is sound).
struct SequentialCheck {
    struct Row {
        Rational tau;
        Rational liminf_lower{0}; // certified bounds on lim P[||T(x_k)|| < tau]
        Rational liminf_upper{1};
        long stable_from = 0;
        enum class Verdict { Holds, Refuted, Undecided } verdict = Verdict::Undecided;
    };
    std::vector<Row> rows;
    Row::Verdict verdict = Row::Verdict::Undecided;
    bool affirmative_caveat = false;
};

inline SequentialCheck check_sequential(const RandomOperator& T, const SequenceSpec& spec,
                                        const Rational& alpha,
                                        const std::vector<Rational>& tau_grid) {
    if (!spec.certified_null())
        fail(Errc::SequenceNotNull, "sequence must be certified null: " + spec.str());
    if (tau_grid.empty()) fail(Errc::EmptyGrid, "tau grid must be non-empty");
    if (alpha <= 0 || alpha > 1) fail(Errc::OutOfRange, "alpha must lie in (0,1]");

    SeqTrace trace = SeqTrace::applied(T, spec);
    SequentialCheck out;
    const auto& space = T.space();
    SeqVector zero = SeqVector::zero(T.codomain());

    bool any_refuted = false, any_undecided = false;
    for (const auto& tau : tau_grid) {
        SequentialCheck::Row row;
        row.tau = tau;
        Rational inside(0), unknown(0);
        long stable = 1;
        for (std::size_t i = 0; i < space.size(); ++i) {
            auto rel = trace.atom(i).norm_rel(zero, tau);
            if (rel.kind == AtomTrace::NormRel::Kind::Lt) {
                inside += space.atom(i).mass;
                stable = std::max(stable, rel.from);
            } else if (rel.kind == AtomTrace::NormRel::Kind::Undecided) {
                unknown += space.atom(i).mass;
            } else {
                stable = std::max(stable, rel.from);
            }
        }
        row.liminf_lower = inside;
        row.liminf_upper = inside + unknown;
        row.stable_from = stable;
        if (row.liminf_lower >= alpha)
            row.verdict = SequentialCheck::Row::Verdict::Holds;
        else if (row.liminf_upper < alpha)
            row.verdict = SequentialCheck::Row::Verdict::Refuted;
        any_refuted |= row.verdict == SequentialCheck::Row::Verdict::Refuted;
        any_undecided |= row.verdict == SequentialCheck::Row::Verdict::Undecided;
        out.rows.push_back(std::move(row));
    }
    out.verdict = any_refuted     ? SequentialCheck::Row::Verdict::Refuted
                  : any_undecided ? SequentialCheck::Row::Verdict::Undecided
                                  : SequentialCheck::Row::Verdict::Holds;
    out.affirmative_caveat = out.verdict == SequentialCheck::Row::Verdict::Holds;
    return out;
}

} // namespace randop
