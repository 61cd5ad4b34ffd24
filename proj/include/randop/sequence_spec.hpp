#pragma once

#include <string>
#include <utility>
#include <vector>

#include "randop/spaces.hpp"

namespace randop {

/// Symbolic test sequences in the operator's domain. All kinds except a
/// UserPrefix with Unknown tail are certified null (norm(x_k) -> 0).
///
///   ScaledBasis(p):  x_k = e_k / k^p            (c00 only; p >= 0 integer,
///                                                null iff p >= 1)
///   ScaledFixed(v):  x_k = v / k
///   WindowSum(L):    x_k = (1/k) * sum_{n=k}^{k+L-1} e_n   (c00 only)
///   UserPrefix:      explicit vectors, then a zero tail (Null) or Unknown
///
/// The power is an integer, not a general rational: fractional powers would
/// give irrational coordinates, which the exact-arithmetic vector type
/// cannot represent.
class SequenceSpec {
public:
    enum class Kind { ScaledBasis, ScaledFixed, WindowSum, UserPrefix };
    enum class Tail { Null, Unknown };

    static SequenceSpec scaled_basis(int power) {
        if (power < 0) fail(Errc::IndexOutOfRange, "scaled basis power must be >= 0");
        SequenceSpec s;
        s.kind_ = Kind::ScaledBasis;
        s.power_ = power;
        return s;
    }
    static SequenceSpec scaled_fixed(SeqVector v) {
        if (v.is_zero()) fail(Errc::ZeroVector, "scaled fixed sequence needs a nonzero vector");
        SequenceSpec s;
        s.kind_ = Kind::ScaledFixed;
        s.fixed_ = std::move(v);
        return s;
    }
    static SequenceSpec window_sum(long width) {
        if (width < 1) fail(Errc::IndexOutOfRange, "window width must be >= 1");
        SequenceSpec s;
        s.kind_ = Kind::WindowSum;
        s.width_ = width;
        return s;
    }
    static SequenceSpec user_prefix(std::vector<SeqVector> terms, Tail tail) {
        if (terms.empty()) fail(Errc::EmptyGrid, "user prefix needs at least one term");
        SequenceSpec s;
        s.kind_ = Kind::UserPrefix;
        s.prefix_ = std::move(terms);
        s.tail_ = tail;
        return s;
    }

    Kind kind() const { return kind_; }
    int power() const { return power_; }
    long width() const { return width_; }
    const SeqVector& fixed() const { return fixed_; }
    const std::vector<SeqVector>& prefix() const { return prefix_; }
    Tail tail() const { return tail_; }

    /// norm(x_k) -> 0, certified symbolically.
    bool certified_null() const {
        switch (kind_) {
            case Kind::ScaledBasis: return power_ >= 1;
            case Kind::ScaledFixed: return true;
            case Kind::WindowSum: return true;
            case Kind::UserPrefix: return tail_ == Tail::Null;
        }
        return false;
    }

    bool compatible_with(const SpaceDescriptor& domain) const {
        switch (kind_) {
            case Kind::ScaledBasis:
            case Kind::WindowSum: return domain.is_c00();
            case Kind::ScaledFixed: return fixed_.space() == domain;
            case Kind::UserPrefix:
                for (const auto& v : prefix_)
                    if (!(v.space() == domain)) return false;
                return true;
        }
        return false;
    }

    /// Exact k-th term (k >= 1).
    SeqVector term(long k, const SpaceDescriptor& domain) const {
        require(k >= 1, Errc::IndexOutOfRange, "sequence index must be >= 1");
        switch (kind_) {
            case Kind::ScaledBasis: {
                Rational kp(1);
                for (int i = 0; i < power_; ++i) kp *= k;
                return SeqVector::from_entries(domain, {{k, Rational(1) / kp}});
            }
            case Kind::ScaledFixed: return scale(Rational(1) / Rational(k), fixed_);
            case Kind::WindowSum: {
                std::vector<std::pair<long, Rational>> entries;
                for (long n = k; n < k + width_; ++n)
                    entries.emplace_back(n, Rational(1) / Rational(k));
                return SeqVector::from_entries(domain, std::move(entries));
            }
            case Kind::UserPrefix:
                if (k <= static_cast<long>(prefix_.size()))
                    return prefix_[static_cast<std::size_t>(k - 1)];
                if (tail_ == Tail::Null) return SeqVector::zero(domain);
                fail(Errc::UncertifiedSequence,
                     "term beyond an Unknown-tail prefix is not defined");
        }
        return SeqVector::zero(domain);
    }

    std::string str() const {
        switch (kind_) {
            case Kind::ScaledBasis: return "scaled_basis(p=" + std::to_string(power_) + ")";
            case Kind::ScaledFixed: return "scaled_fixed";
            case Kind::WindowSum: return "window_sum(L=" + std::to_string(width_) + ")";
            case Kind::UserPrefix:
                return "user_prefix(len=" + std::to_string(prefix_.size()) +
                       (tail_ == Tail::Null ? ",null_tail)" : ",unknown_tail)");
        }
        return "?";
    }

private:
    SequenceSpec() = default;

    Kind kind_ = Kind::ScaledBasis;
    int power_ = 1;
    long width_ = 1;
    SeqVector fixed_;
    std::vector<SeqVector> prefix_;
    Tail tail_ = Tail::Null;
};

} // namespace randop
