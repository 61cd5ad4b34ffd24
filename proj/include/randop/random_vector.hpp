#pragma once

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "randop/prob_space.hpp"
#include "randop/spaces.hpp"

namespace randop {

/// A Y-valued random variable over a finite space: one codomain vector per
/// atom, total by construction.
class RandomVector {
public:
    RandomVector(FiniteProbSpace space, SpaceDescriptor codomain, std::vector<SeqVector> values)
        : space_(std::move(space)), codomain_(std::move(codomain)), values_(std::move(values)) {
        require(values_.size() == space_.size(), Errc::InvariantViolation,
                "random vector must assign a value to every atom");
        for (const auto& v : values_)
            if (!(v.space() == codomain_))
                fail(Errc::SpaceMismatch, "random vector value outside declared codomain");
    }

    static RandomVector zero(const FiniteProbSpace& space, const SpaceDescriptor& codomain) {
        return RandomVector(space, codomain,
                            std::vector<SeqVector>(space.size(), SeqVector::zero(codomain)));
    }

    const FiniteProbSpace& space() const { return space_; }
    const SpaceDescriptor& codomain() const { return codomain_; }
    const SeqVector& at(std::size_t atom_index) const { return values_.at(atom_index); }

    friend bool operator==(const RandomVector& a, const RandomVector& b) {
        return a.space_.same_as(b.space_) && a.codomain_ == b.codomain_ && a.values_ == b.values_;
    }

private:
    FiniteProbSpace space_;
    SpaceDescriptor codomain_;
    std::vector<SeqVector> values_;
};

enum class NormCompare { Ge, Gt, Le, Lt };

/// The bracketed event [ ||y|| ~ tau ], one variant per comparison.
inline Event event_norm(const RandomVector& y, NormCompare cmp, const Rational& tau) {
    if (tau < 0) fail(Errc::NegativeThreshold, "threshold must be nonnegative");
    std::vector<bool> members(y.space().size(), false);
    for (std::size_t i = 0; i < members.size(); ++i) {
        Rational n = y.at(i).norm();
        switch (cmp) {
            case NormCompare::Ge: members[i] = n >= tau; break;
            case NormCompare::Gt: members[i] = n > tau; break;
            case NormCompare::Le: members[i] = n <= tau; break;
            case NormCompare::Lt: members[i] = n < tau; break;
        }
    }
    return Event(y.space(), std::move(members));
}

inline Event event_norm_ge(const RandomVector& y, const Rational& tau) {
    return event_norm(y, NormCompare::Ge, tau);
}
inline Event event_norm_gt(const RandomVector& y, const Rational& tau) {
    return event_norm(y, NormCompare::Gt, tau);
}
inline Event event_norm_le(const RandomVector& y, const Rational& tau) {
    return event_norm(y, NormCompare::Le, tau);
}
inline Event event_norm_lt(const RandomVector& y, const Rational& tau) {
    return event_norm(y, NormCompare::Lt, tau);
}

/// P[y = 0], exact.
inline Rational prob_equal_zero(const RandomVector& y) {
    Rational p(0);
    for (std::size_t i = 0; i < y.space().size(); ++i)
        if (y.at(i).is_zero()) p += y.space().atom(i).mass;
    return p;
}

inline RandomVector rv_subtract(const RandomVector& y, const RandomVector& z) {
    if (!y.space().same_as(z.space()) || !(y.codomain() == z.codomain()))
        fail(Errc::SpaceMismatch, "random vectors over different spaces");
    std::vector<SeqVector> values;
    values.reserve(y.space().size());
    for (std::size_t i = 0; i < y.space().size(); ++i)
        values.push_back(subtract(y.at(i), z.at(i)));
    return RandomVector(y.space(), y.codomain(), std::move(values));
}

/// Ky Fan distance: the least tau >= 0 with P[||y-z|| > tau] <= tau.
///
/// The tail probability is a right-continuous nonincreasing step function,
/// so the minimizer is attained and must lie among the per-atom distance
/// norms, the tail probability levels, and 0; a finite scan decides it.
inline Rational ky_fan_distance(const RandomVector& y, const RandomVector& z) {
    RandomVector diff = rv_subtract(y, z);
    const auto& space = diff.space();

    std::set<Rational> candidates;
    candidates.insert(Rational(0));
    for (std::size_t i = 0; i < space.size(); ++i) candidates.insert(diff.at(i).norm());

    auto tail = [&](const Rational& tau) {
        Rational p(0);
        for (std::size_t i = 0; i < space.size(); ++i)
            if (diff.at(i).norm() > tau) p += space.atom(i).mass;
        return p;
    };
    for (const Rational& v : std::vector<Rational>(candidates.begin(), candidates.end()))
        candidates.insert(tail(v));

    for (const Rational& tau : candidates)
        if (tail(tau) <= tau) return tau; // set is ordered, first hit is minimal
    return Rational(1);                   // unreachable: tau = 1 always qualifies
}

} // namespace randop
