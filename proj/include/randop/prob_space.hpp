#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "randop/errors.hpp"
#include "randop/rational.hpp"

namespace randop {

/// Exact finite atomic probability space. Atoms keep construction order;
/// every mass is a strictly positive rational and the masses sum to one.
/// Immutable after construction, so values can be shared freely.
class FiniteProbSpace {
public:
    struct Atom {
        std::string id;
        Rational mass;
    };

    static FiniteProbSpace make(std::vector<Atom> atoms) {
        if (atoms.empty()) fail(Errc::EmptySpace, "a probability space needs at least one atom");
        auto data = std::make_shared<Data>();
        Rational total(0);
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            const Atom& a = atoms[i];
            if (a.id.empty()) fail(Errc::DuplicateAtom, "empty atom id");
            if (data->index.count(a.id))
                fail(Errc::DuplicateAtom, "duplicate atom id '" + a.id + "'");
            if (a.mass <= 0)
                fail(Errc::NonpositiveMass,
                     "atom '" + a.id + "' has nonpositive mass " + format_rational(a.mass));
            data->index.emplace(a.id, i);
            total += a.mass;
        }
        if (total != 1)
            fail(Errc::MassSumNotOne, "masses sum to " + format_rational(total) +
                                          ", deficit " + format_rational(Rational(1) - total));
        data->atoms = std::move(atoms);
        return FiniteProbSpace(std::move(data));
    }

    std::size_t size() const { return data_->atoms.size(); }
    const Atom& atom(std::size_t i) const { return data_->atoms.at(i); }
    const std::vector<Atom>& atoms() const { return data_->atoms; }

    std::size_t index_of(const std::string& id) const {
        auto it = data_->index.find(id);
        if (it == data_->index.end())
            fail(Errc::ForeignEvent, "unknown atom id '" + id + "'");
        return it->second;
    }
    bool has_atom(const std::string& id) const { return data_->index.count(id) != 0; }

    /// Identity: two spaces are the same object iff they share storage.
    bool same_as(const FiniteProbSpace& other) const { return data_ == other.data_; }

private:
    struct Data {
        std::vector<Atom> atoms;
        std::map<std::string, std::size_t> index;
    };
    explicit FiniteProbSpace(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
    std::shared_ptr<const Data> data_;

    friend class Event;
};

/// A measurable subset of a space's atoms, stored as membership flags in
/// atom order so set operations yield canonically ordered results.
class Event {
public:
    Event(FiniteProbSpace space, std::vector<bool> members)
        : space_(std::move(space)), members_(std::move(members)) {
        require(members_.size() == space_.size(), Errc::InvariantViolation,
                "event membership size mismatch");
    }

    static Event empty(const FiniteProbSpace& space) {
        return Event(space, std::vector<bool>(space.size(), false));
    }
    static Event full(const FiniteProbSpace& space) {
        return Event(space, std::vector<bool>(space.size(), true));
    }
    static Event of_atoms(const FiniteProbSpace& space, const std::vector<std::string>& ids) {
        std::vector<bool> m(space.size(), false);
        for (const auto& id : ids) m[space.index_of(id)] = true;
        return Event(space, std::move(m));
    }

    const FiniteProbSpace& space() const { return space_; }
    bool contains(std::size_t atom_index) const { return members_.at(atom_index); }
    bool is_empty() const {
        return std::none_of(members_.begin(), members_.end(), [](bool b) { return b; });
    }
    std::size_t count() const {
        return static_cast<std::size_t>(std::count(members_.begin(), members_.end(), true));
    }

    std::vector<std::string> atom_ids() const {
        std::vector<std::string> ids;
        for (std::size_t i = 0; i < members_.size(); ++i)
            if (members_[i]) ids.push_back(space_.atom(i).id);
        return ids;
    }

    Event complement() const {
        std::vector<bool> m(members_);
        m.flip();
        return Event(space_, std::move(m));
    }

    friend bool operator==(const Event& a, const Event& b) {
        return a.space_.same_as(b.space_) && a.members_ == b.members_;
    }

    /// True when this event's members are a subset of other's.
    bool subset_of(const Event& other) const {
        check_same_space(*this, other);
        for (std::size_t i = 0; i < members_.size(); ++i)
            if (members_[i] && !other.members_[i]) return false;
        return true;
    }

    static void check_same_space(const Event& a, const Event& b) {
        if (!a.space_.same_as(b.space_))
            fail(Errc::ForeignEvent, "events belong to different spaces");
    }

private:
    FiniteProbSpace space_;
    std::vector<bool> members_;

    friend Event intersect(const Event&, const Event&);
    friend Event event_union(const Event&, const Event&);
};

inline FiniteProbSpace make_space(std::vector<FiniteProbSpace::Atom> atoms) {
    return FiniteProbSpace::make(std::move(atoms));
}

inline Rational prob(const FiniteProbSpace& space, const Event& event) {
    if (!event.space().same_as(space))
        fail(Errc::ForeignEvent, "event does not belong to this space");
    Rational p(0);
    for (std::size_t i = 0; i < space.size(); ++i)
        if (event.contains(i)) p += space.atom(i).mass;
    return p;
}

inline Rational prob(const Event& event) { return prob(event.space(), event); }

/// The intersection A,B of two events over the same space.
inline Event intersect(const Event& a, const Event& b) {
    Event::check_same_space(a, b);
    std::vector<bool> m(a.members_.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = a.members_[i] && b.members_[i];
    return Event(a.space(), std::move(m));
}

inline Event event_union(const Event& a, const Event& b) {
    Event::check_same_space(a, b);
    std::vector<bool> m(a.members_.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = a.members_[i] || b.members_[i];
    return Event(a.space(), std::move(m));
}

/// max(0, pA + pB - 1): a bound that any intersection of events with these
/// probabilities must meet, used by the closed-graph argument.
inline Rational joint_lower_bound(const Rational& p_a, const Rational& p_b) {
    if (p_a < 0 || p_a > 1 || p_b < 0 || p_b > 1)
        fail(Errc::OutOfRange, "probabilities must lie in [0,1]");
    Rational s = p_a + p_b - 1;
    return s > 0 ? s : Rational(0);
}

/// Conditioning on a positive-probability event: atoms restricted to the
/// event, masses renormalized exactly. The result is a new space.
inline FiniteProbSpace condition(const FiniteProbSpace& space, const Event& given) {
    if (!given.space().same_as(space))
        fail(Errc::ForeignEvent, "conditioning event does not belong to this space");
    Rational p = prob(space, given);
    if (p == 0)
        fail(Errc::NullConditioningEvent, "conditioning event has probability zero");
    std::vector<FiniteProbSpace::Atom> atoms;
    for (std::size_t i = 0; i < space.size(); ++i)
        if (given.contains(i))
            atoms.push_back({space.atom(i).id, space.atom(i).mass / p});
    return FiniteProbSpace::make(std::move(atoms));
}

} // namespace randop
