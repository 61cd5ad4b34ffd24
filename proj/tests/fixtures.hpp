#pragma once

// Shared scenario fixtures for the unit and acceptance suites.

#include "randop/random_operator.hpp"

namespace fixtures {

using namespace randop;

inline const SpaceDescriptor kC00 = SpaceDescriptor::c00();

inline LinearMapRep identity_map() {
    return LinearMapRep::diagonal(CoeffFamily::constant(Rational(1)));
}

// Two bounded multiples of the identity: stochastically continuous.
inline RandomOperator bounded_family() {
    auto s = make_space({{"a", rat(3, 5)}, {"b", rat(2, 5)}});
    return RandomOperator(
        s, {identity_map(), LinearMapRep::diagonal(CoeffFamily::constant(Rational(2)))});
}

// Diagonal atoms with norms 1, 2 and +inf; continuity level 4/5.
inline RandomOperator mixed_diagonal() {
    auto s = make_space({{"a", rat(1, 2)}, {"b", rat(3, 10)}, {"c", rat(1, 5)}});
    return RandomOperator(
        s, {identity_map(),
            LinearMapRep::diagonal(CoeffFamily::harmonic(Rational(2), Rational(-1))),
            LinearMapRep::diagonal(CoeffFamily::affine(Rational(1), Rational(0)))});
}

// Two identities plus an unbounded rank-one functional; along e_k/k the
// rank-one atom lands exactly on e_1 forever.
inline RandomOperator rank_one_witness() {
    auto s = make_space({{"a", rat(1, 2)}, {"b", rat(3, 10)}, {"c", rat(1, 5)}});
    return RandomOperator(
        s, {identity_map(), identity_map(),
            LinearMapRep::rank_one(CoeffFamily::affine(Rational(1), Rational(0)),
                                   basis(1, kC00))});
}

inline RandomOperator rank_one_witness_corrupted() {
    auto base = rank_one_witness();
    Corruption c{Event::of_atoms(base.space(), {"c"}), basis(2, kC00)};
    return RandomOperator(base.space(),
                          {base.map_at(0), base.map_at(1), base.map_at(2)}, c);
}

// Identity with mass 7/10 next to an unbounded diagonal atom.
inline RandomOperator unbounded_atom() {
    auto s = make_space({{"a", rat(7, 10)}, {"b", rat(3, 10)}});
    return RandomOperator(
        s, {identity_map(),
            LinearMapRep::diagonal(CoeffFamily::affine(Rational(1), Rational(0)))});
}

inline RandomOperator zero_operator() {
    auto s = make_space({{"a", rat(1, 2)}, {"b", rat(1, 2)}});
    return RandomOperator(s, {LinearMapRep::zero(kC00, kC00), LinearMapRep::zero(kC00, kC00)});
}

inline RandomOperator all_unbounded() {
    auto s = make_space({{"a", Rational(1)}});
    return RandomOperator(
        s, {LinearMapRep::diagonal(CoeffFamily::affine(Rational(1), Rational(0)))});
}

} // namespace fixtures
