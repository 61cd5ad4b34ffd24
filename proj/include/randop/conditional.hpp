#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "randop/continuity.hpp"

namespace randop {

/// T restricted to a positive-probability event, analyzed under the
/// conditional probability. The restriction is itself a random operator
/// over the conditioned space, so every analysis applies to it unchanged.
class ConditionalOperator {
public:
    ConditionalOperator(RandomOperator base, Event given)
        : base_(std::move(base)), given_(std::move(given)),
          conditioned_(condition(base_.space(), given_)) {}

    const RandomOperator& base() const { return base_; }
    const Event& given() const { return given_; }
    const FiniteProbSpace& conditioned_space() const { return conditioned_; }

    RandomOperator as_operator() const {
        std::vector<LinearMapRep> maps;
        std::vector<std::string> corrupted_ids;
        for (std::size_t i = 0; i < base_.space().size(); ++i) {
            if (!given_.contains(i)) continue;
            maps.push_back(base_.map_at(i));
            if (base_.corruption() && base_.corruption()->event.contains(i))
                corrupted_ids.push_back(base_.space().atom(i).id);
        }
        std::optional<Corruption> corr;
        if (base_.corruption() && !corrupted_ids.empty())
            corr = Corruption{Event::of_atoms(conditioned_, corrupted_ids),
                              base_.corruption()->offset};
        return RandomOperator(conditioned_, std::move(maps), std::move(corr));
    }

private:
    RandomOperator base_;
    Event given_;
    FiniteProbSpace conditioned_;
};

inline ConditionalOperator restrict_operator(const RandomOperator& T, const Event& given) {
    if (!given.space().same_as(T.space()))
        fail(Errc::ForeignEvent, "conditioning event belongs to a different space");
    if (prob(T.space(), given) == 0)
        fail(Errc::NullConditioningEvent, "conditioning event has probability zero");
    return ConditionalOperator(T, given);
}

/// On a finite atomic space, stochastic continuity (level one) holds exactly
/// when every atom's map is bounded and unaffected by corruption; the
/// uniform witness is the largest norm.
struct StochasticContinuity {
    bool continuous = false;
    Rational witness_bound{0};  // max operator norm when continuous
    std::string offending_atom; // an unbounded or faulted atom otherwise
};

inline StochasticContinuity is_stochastically_continuous(const ConditionalOperator& cond) {
    StochasticContinuity out;
    RandomOperator op = cond.as_operator();
    Rational best(0);
    for (std::size_t i = 0; i < op.space().size(); ++i) {
        auto n = op.map_at(i).op_norm();
        if (!n.is_finite() || op.atom_corrupted(i)) {
            out.continuous = false;
            out.offending_atom = op.space().atom(i).id;
            return out;
        }
        if (n.value() > best) best = n.value();
    }
    out.continuous = true;
    out.witness_bound = best;
    return out;
}

/// The largest-probability event whose conditional operator is
/// stochastically continuous: exactly the bounded, uncorrupted atoms.
/// Its probability realizes the continuity level on exact profiles and
/// stays inside the bracket otherwise. An empty event (probability zero)
/// realizes the "probably not continuous" convention.
struct BestConditional {
    Event event;
    Rational probability;
};

inline BestConditional best_conditional(const RandomOperator& T) {
    std::vector<bool> members(T.space().size(), false);
    for (std::size_t i = 0; i < members.size(); ++i)
        members[i] = T.map_at(i).op_norm().is_finite() && !T.atom_corrupted(i);
    Event ev(T.space(), std::move(members));
    Rational p = prob(T.space(), ev);
    return {std::move(ev), std::move(p)};
}

/// The constructive chain of bound events for a fixed probe: per level,
/// the event [||T(x)|| <= M_n ||x||], its running union, and the verified
/// inequalities P(union_n) > eps_n. Fails loudly when some level has no
/// valid bound in the assignment.
struct BoundEventChain {
    struct Link {
        Rational eps;
        Rational bound;
        Event event;
        Rational event_prob;
        Event running_union;
        Rational union_prob;
    };
    SeqVector probe;
    std::vector<Link> links;
    Event limit_union;
    Rational limit_prob;

    BoundEventChain(SeqVector x, const FiniteProbSpace& space)
        : probe(std::move(x)), limit_union(Event::empty(space)), limit_prob(0) {}
};

inline BoundEventChain bound_event_chain(const RandomOperator& T, const SeqVector& x,
                                         const std::vector<Rational>& eps_seq,
                                         const std::vector<Rational>& m_seq) {
    if (x.is_zero()) fail(Errc::ZeroVector, "the chain is built for a nonzero probe");
    if (eps_seq.empty() || eps_seq.size() != m_seq.size())
        fail(Errc::EmptyGrid, "need one bound per level");
    for (std::size_t i = 0; i < eps_seq.size(); ++i) {
        if (eps_seq[i] <= 0 || eps_seq[i] >= 1)
            fail(Errc::OutOfRange, "levels must lie in (0,1)");
        if (i && eps_seq[i] <= eps_seq[i - 1])
            fail(Errc::OutOfRange, "levels must be strictly increasing");
    }

    BoundEventChain chain(x, T.space());
    Rational xnorm = x.norm();
    RandomVector tx = T.apply(x);
    Event running = Event::empty(T.space());
    for (std::size_t n = 0; n < eps_seq.size(); ++n) {
        std::vector<bool> members(T.space().size(), false);
        for (std::size_t i = 0; i < members.size(); ++i)
            members[i] = tx.at(i).norm() <= m_seq[n] * xnorm;
        Event ev(T.space(), std::move(members));
        Rational p = prob(T.space(), ev);
        if (p <= eps_seq[n])
            fail(Errc::HypothesisFails,
                 "P[||T(x)|| <= " + format_rational(m_seq[n]) + "||x||] = " +
                     format_rational(p) + " does not exceed eps = " +
                     format_rational(eps_seq[n]));
        running = event_union(running, ev);
        Rational up = prob(T.space(), running);
        require(up > eps_seq[n], Errc::InvariantViolation, "running union must keep the bound");
        chain.links.push_back({eps_seq[n], m_seq[n], ev, p, running, up});
    }
    chain.limit_union = running;
    chain.limit_prob = prob(T.space(), running);
    return chain;
}

} // namespace randop
