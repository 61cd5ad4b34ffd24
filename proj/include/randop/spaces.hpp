#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "randop/errors.hpp"
#include "randop/rational.hpp"

namespace randop {

/// The normed spaces the laboratory works over: finite-dimensional
/// coordinate spaces and c00 (finitely supported sequences), both under the
/// sup norm. c00 is the incomplete domain where constructible discontinuous
/// linear maps live.
struct SpaceDescriptor {
    enum class Kind { FiniteDim, C00 };

    Kind kind = Kind::C00;
    long dimension = 0; // meaningful for FiniteDim only

    static SpaceDescriptor c00() { return SpaceDescriptor{Kind::C00, 0}; }
    static SpaceDescriptor finite_dim(long d) {
        if (d < 1) fail(Errc::IndexOutOfRange, "dimension must be >= 1");
        return SpaceDescriptor{Kind::FiniteDim, d};
    }

    bool is_c00() const { return kind == Kind::C00; }
    bool index_valid(long n) const {
        if (n < 1) return false;
        return kind == Kind::C00 || n <= dimension;
    }

    friend bool operator==(const SpaceDescriptor& a, const SpaceDescriptor& b) {
        return a.kind == b.kind && (a.kind == Kind::C00 || a.dimension == b.dimension);
    }

    std::string str() const {
        return kind == Kind::C00 ? "c00" : "R^" + std::to_string(dimension);
    }
};

/// Finitely supported vector with exact rational coordinates, kept in
/// canonical sparse form: no stored entry is zero. Indices are 1-based.
class SeqVector {
public:
    SeqVector() : space_(SpaceDescriptor::c00()) {}
    explicit SeqVector(SpaceDescriptor space) : space_(std::move(space)) {}

    static SeqVector zero(SpaceDescriptor space) { return SeqVector(std::move(space)); }

    static SeqVector from_entries(SpaceDescriptor space,
                                  std::vector<std::pair<long, Rational>> entries) {
        SeqVector v(std::move(space));
        for (auto& [idx, value] : entries) v.set(idx, value);
        return v;
    }

    const SpaceDescriptor& space() const { return space_; }
    const std::map<long, Rational>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }
    long max_index() const { return entries_.empty() ? 0 : entries_.rbegin()->first; }

    Rational at(long index) const {
        auto it = entries_.find(index);
        return it == entries_.end() ? Rational(0) : it->second;
    }

    Rational norm() const {
        Rational best(0);
        for (const auto& [idx, value] : entries_) {
            Rational a = rational_abs(value);
            if (a > best) best = a;
        }
        return best;
    }

    friend bool operator==(const SeqVector& a, const SeqVector& b) {
        return a.space_ == b.space_ && a.entries_ == b.entries_;
    }
    friend bool operator!=(const SeqVector& a, const SeqVector& b) { return !(a == b); }

private:
    void set(long index, const Rational& value) {
        if (!space_.index_valid(index))
            fail(Errc::IndexOutOfRange,
                 "index " + std::to_string(index) + " invalid for " + space_.str());
        if (value == 0)
            entries_.erase(index);
        else
            entries_[index] = value;
    }

    SpaceDescriptor space_;
    std::map<long, Rational> entries_;

    friend SeqVector add(const SeqVector&, const SeqVector&);
    friend SeqVector scale(const Rational&, const SeqVector&);
};

inline SeqVector add(const SeqVector& v, const SeqVector& w) {
    if (!(v.space() == w.space()))
        fail(Errc::SpaceMismatch, "adding vectors from different spaces");
    SeqVector out = v;
    for (const auto& [idx, value] : w.entries()) out.set(idx, out.at(idx) + value);
    return out;
}

inline SeqVector scale(const Rational& c, const SeqVector& v) {
    SeqVector out(v.space());
    if (c == 0) return out;
    for (const auto& [idx, value] : v.entries()) out.set(idx, c * value);
    return out;
}

inline SeqVector subtract(const SeqVector& v, const SeqVector& w) {
    return add(v, scale(Rational(-1), w));
}

inline Rational norm(const SeqVector& v) { return v.norm(); }

/// Unit coordinate vector e_n.
inline SeqVector basis(long n, const SpaceDescriptor& space) {
    if (!space.index_valid(n))
        fail(Errc::IndexOutOfRange,
             "basis index " + std::to_string(n) + " invalid for " + space.str());
    return SeqVector::from_entries(space, {{n, Rational(1)}});
}

} // namespace randop
