#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "randop/linear_map.hpp"
#include "randop/prob_space.hpp"
#include "randop/random_vector.hpp"

namespace randop {

/// Additive fault on a fixed event: atoms inside the event see apply+offset.
/// This is the only non-linearity mechanism; it realizes "linear with
/// probability < 1" while keeping every analysis well-defined on the
/// unaffected atoms.
struct Corruption {
    Event event;
    SeqVector offset;
};

/// A linear random operator T: X -> R(Y) represented as one linear map per
/// atom, all sharing domain and codomain. Immutable; all queries are pure.
class RandomOperator {
public:
    RandomOperator(FiniteProbSpace space, std::vector<LinearMapRep> maps,
                   std::optional<Corruption> corruption = std::nullopt)
        : space_(std::move(space)), maps_(std::move(maps)), corruption_(std::move(corruption)) {
        require(!maps_.empty() && maps_.size() == space_.size(), Errc::InvariantViolation,
                "operator must assign a map to every atom");
        for (const auto& m : maps_)
            if (!(m.domain() == maps_.front().domain()) ||
                !(m.codomain() == maps_.front().codomain()))
                fail(Errc::SpaceMismatch, "all per-atom maps must share domain and codomain");
        if (corruption_) {
            if (!corruption_->event.space().same_as(space_))
                fail(Errc::ForeignEvent, "corruption event belongs to a different space");
            if (!(corruption_->offset.space() == codomain()))
                fail(Errc::SpaceMismatch, "corruption offset must live in the codomain");
        }
    }

    const FiniteProbSpace& space() const { return space_; }
    const SpaceDescriptor& domain() const { return maps_.front().domain(); }
    const SpaceDescriptor& codomain() const { return maps_.front().codomain(); }
    const LinearMapRep& map_at(std::size_t atom_index) const { return maps_.at(atom_index); }
    const std::optional<Corruption>& corruption() const { return corruption_; }

    /// True when the atom's evaluations are shifted by a nonzero offset.
    bool atom_corrupted(std::size_t atom_index) const {
        return corruption_ && !corruption_->offset.is_zero() &&
               corruption_->event.contains(atom_index);
    }

    /// Atoms whose evaluation is exactly linear (everything outside an
    /// effective corruption).
    Event uncorrupted_event() const {
        std::vector<bool> m(space_.size(), true);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (atom_corrupted(i)) m[i] = false;
        return Event(space_, std::move(m));
    }

    SeqVector offset_at(std::size_t atom_index) const {
        if (corruption_ && corruption_->event.contains(atom_index)) return corruption_->offset;
        return SeqVector::zero(codomain());
    }

    RandomVector apply(const SeqVector& x) const {
        if (!(x.space() == domain()))
            fail(Errc::SpaceMismatch, "vector not in the operator's domain");
        std::vector<SeqVector> values;
        values.reserve(space_.size());
        for (std::size_t i = 0; i < space_.size(); ++i) {
            SeqVector v = maps_[i].apply(x);
            if (corruption_ && corruption_->event.contains(i))
                v = add(v, corruption_->offset);
            values.push_back(std::move(v));
        }
        return RandomVector(space_, codomain(), std::move(values));
    }

    bool all_diagonal_like() const {
        for (const auto& m : maps_)
            if (!m.is_diagonal_like()) return false;
        return true;
    }

    RandomOperator without_corruption() const {
        return RandomOperator(space_, maps_, std::nullopt);
    }

private:
    FiniteProbSpace space_;
    std::vector<LinearMapRep> maps_;
    std::optional<Corruption> corruption_;
};

/// { omega : ||T_omega|| <= M }; +inf norms never qualify.
inline Event bounded_event(const RandomOperator& T, const Rational& M) {
    if (M < 0) fail(Errc::NegativeBound, "bound must be nonnegative");
    std::vector<bool> members(T.space().size(), false);
    for (std::size_t i = 0; i < members.size(); ++i)
        members[i] = T.map_at(i).op_norm() <= M;
    return Event(T.space(), std::move(members));
}

/// P[ T(ax+by) = aT(x)+bT(y) ], by exact per-atom vector equality.
inline Rational linearity_probability(const RandomOperator& T, const SeqVector& x,
                                      const SeqVector& y, const Rational& alpha,
                                      const Rational& beta) {
    SeqVector combo = add(scale(alpha, x), scale(beta, y));
    RandomVector lhs = T.apply(combo);
    RandomVector tx = T.apply(x);
    RandomVector ty = T.apply(y);
    Rational p(0);
    for (std::size_t i = 0; i < T.space().size(); ++i) {
        SeqVector rhs = add(scale(alpha, tx.at(i)), scale(beta, ty.at(i)));
        if (lhs.at(i) == rhs) p += T.space().atom(i).mass;
    }
    return p;
}

} // namespace randop
