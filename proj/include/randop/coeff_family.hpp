#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "randop/errors.hpp"
#include "randop/rational.hpp"

namespace randop {

/// Closed-form coefficient sequences n >= 1 -> rational. Operator norms,
/// series sums and adversarial indices are all computed symbolically from
/// the family, never by sampling, so downstream comparisons stay exact.
///
/// Grammar: Constant(c) | Affine(a,b): n -> a*n+b | Harmonic(a,b): n -> a+b/n
///          | Table(overrides, tail).
class CoeffFamily {
public:
    enum class Kind { Constant, Affine, Harmonic, Table };

    static CoeffFamily constant(Rational c) {
        CoeffFamily f;
        f.kind_ = Kind::Constant;
        f.a_ = std::move(c);
        return f;
    }
    // a*n + b; a == 0 collapses to Constant(b).
    static CoeffFamily affine(Rational a, Rational b) {
        if (a == 0) return constant(std::move(b));
        CoeffFamily f;
        f.kind_ = Kind::Affine;
        f.a_ = std::move(a);
        f.b_ = std::move(b);
        return f;
    }
    // a + b/n; b == 0 collapses to Constant(a).
    static CoeffFamily harmonic(Rational a, Rational b) {
        if (b == 0) return constant(std::move(a));
        CoeffFamily f;
        f.kind_ = Kind::Harmonic;
        f.a_ = std::move(a);
        f.b_ = std::move(b);
        return f;
    }
    // Finite overrides on top of a tail family. A table tail is flattened;
    // overrides equal to the tail value are still kept (harmless).
    static CoeffFamily table(std::map<long, Rational> overrides, CoeffFamily tail) {
        for (const auto& [n, v] : overrides) {
            (void)v;
            if (n < 1) fail(Errc::IndexOutOfRange, "table override index must be >= 1");
        }
        if (tail.kind_ == Kind::Table) {
            for (auto& [n, v] : tail.overrides_) overrides.try_emplace(n, v);
            tail = *tail.tail_;
        }
        if (overrides.empty()) return tail;
        CoeffFamily f;
        f.kind_ = Kind::Table;
        f.overrides_ = std::move(overrides);
        f.tail_ = std::make_shared<CoeffFamily>(std::move(tail));
        return f;
    }

    Kind kind() const { return kind_; }
    const Rational& param_a() const { return a_; }
    const Rational& param_b() const { return b_; }
    const std::map<long, Rational>& overrides() const { return overrides_; }
    const CoeffFamily& tail() const { return *tail_; }

    Rational at(long n) const {
        require(n >= 1, Errc::IndexOutOfRange, "coefficient index must be >= 1");
        switch (kind_) {
            case Kind::Constant: return a_;
            case Kind::Affine: return a_ * n + b_;
            case Kind::Harmonic: return a_ + b_ / n;
            case Kind::Table: {
                auto it = overrides_.find(n);
                return it != overrides_.end() ? it->second : tail_->at(n);
            }
        }
        return Rational(0);
    }

    // Index from which the closed form applies unperturbed (1 + the largest
    // override index for tables).
    long stable_from() const {
        if (kind_ != Kind::Table) return 1;
        return std::max<long>(overrides_.rbegin()->first + 1, tail_->stable_from());
    }

    /// sup_{n >= from} |coeff(n)|.
    ExtRational sup_abs_from(long from = 1) const {
        switch (kind_) {
            case Kind::Constant: return ExtRational(rational_abs(a_));
            case Kind::Affine: return ExtRational::infinity();
            case Kind::Harmonic: {
                // values move monotonically from a + b/from toward a
                Rational head = rational_abs(a_ + b_ / from);
                Rational limit = rational_abs(a_);
                return ExtRational(head > limit ? head : limit);
            }
            case Kind::Table: {
                long stable = stable_from();
                ExtRational best = tail_->sup_abs_from(std::max(from, stable));
                for (long n = from; n < stable; ++n) {
                    ExtRational v(rational_abs(at(n)));
                    if (v > best) best = v;
                }
                return best;
            }
        }
        return ExtRational(Rational(0));
    }

    /// sum_{n >= from} |coeff(n)|; finite only for eventually-zero families.
    ExtRational sum_abs_from(long from = 1) const {
        if (auto z = eventually_zero_from()) {
            Rational total(0);
            for (long n = from; n < *z; ++n) total += rational_abs(at(n));
            return ExtRational(total);
        }
        return ExtRational::infinity();
    }

    /// lim_n |coeff(n)| (always exists for this grammar, possibly +inf).
    ExtRational abs_limit() const {
        switch (kind_) {
            case Kind::Constant: return ExtRational(rational_abs(a_));
            case Kind::Affine: return ExtRational::infinity();
            case Kind::Harmonic: return ExtRational(rational_abs(a_));
            case Kind::Table: return tail_->abs_limit();
        }
        return ExtRational(Rational(0));
    }

    /// lim_n coeff(n) when finite (Affine diverges -> nullopt).
    std::optional<Rational> signed_limit() const {
        switch (kind_) {
            case Kind::Constant: return a_;
            case Kind::Affine: return std::nullopt;
            case Kind::Harmonic: return a_;
            case Kind::Table: return tail_->signed_limit();
        }
        return Rational(0);
    }

    /// |coeff(n) - signed_limit| <= C/n for n >= stable_from(); the envelope
    /// constant C (finite-limit families only).
    Rational limit_envelope() const {
        switch (kind_) {
            case Kind::Constant: return Rational(0);
            case Kind::Harmonic: return rational_abs(b_);
            case Kind::Table: return tail_->limit_envelope();
            case Kind::Affine: break;
        }
        fail(Errc::InvariantViolation, "no finite limit envelope for affine family");
    }

    /// Smallest index k with coeff(n) == 0 for all n >= k, if any.
    std::optional<long> eventually_zero_from() const {
        switch (kind_) {
            case Kind::Constant: return a_ == 0 ? std::optional<long>(1) : std::nullopt;
            case Kind::Affine:
            case Kind::Harmonic: return std::nullopt;
            case Kind::Table: {
                auto tail_zero = tail_->eventually_zero_from();
                if (!tail_zero) return std::nullopt;
                long k = std::max(*tail_zero, long(1));
                for (const auto& [n, v] : overrides_)
                    if (v != 0 && n >= k) k = n + 1;
                return k;
            }
        }
        return std::nullopt;
    }

    /// Smallest index k with coeff(n) == value for all n >= k, if any.
    std::optional<long> eventually_equal_from(const Rational& value) const {
        switch (kind_) {
            case Kind::Constant: return a_ == value ? std::optional<long>(1) : std::nullopt;
            case Kind::Affine:
            case Kind::Harmonic: return std::nullopt;
            case Kind::Table: {
                auto tail_eq = tail_->eventually_equal_from(value);
                if (!tail_eq) return std::nullopt;
                long k = std::max(*tail_eq, long(1));
                for (const auto& [n, v] : overrides_)
                    if (v != value && n >= k) k = n + 1;
                return k;
            }
        }
        return std::nullopt;
    }

    /// Smallest index k with coeff(n) == s * n^pow for all n >= k, if any.
    std::optional<long> eventually_matches_from(const Rational& s, int pow) const {
        switch (kind_) {
            case Kind::Constant:
                if (pow == 0) return a_ == s ? std::optional<long>(1) : std::nullopt;
                return (a_ == 0 && s == 0) ? std::optional<long>(1) : std::nullopt;
            case Kind::Affine:
                if (pow == 1 && b_ == 0 && a_ == s) return 1;
                return std::nullopt;
            case Kind::Harmonic: return std::nullopt;
            case Kind::Table: {
                auto tail_match = tail_->eventually_matches_from(s, pow);
                if (!tail_match) return std::nullopt;
                long k = std::max(*tail_match, long(1));
                for (const auto& [n, v] : overrides_) {
                    Rational np(1);
                    for (int i = 0; i < pow; ++i) np *= n;
                    if (v != s * np && n >= k) k = n + 1;
                }
                return k;
            }
        }
        return std::nullopt;
    }

    /// Smallest n >= from with |coeff(n)| > bound; the adversarial index.
    std::optional<long> first_index_abs_gt(const Rational& bound, long from = 1) const {
        if (from < 1) from = 1;
        switch (kind_) {
            case Kind::Constant:
                return rational_abs(a_) > bound ? std::optional<long>(from) : std::nullopt;
            case Kind::Affine: {
                if (rational_abs(at(from)) > bound) return from;
                // beyond `from` the magnitude dips toward the vertex and then
                // grows without bound on the sign(a) side
                Rational threshold = a_ > 0 ? Rational((bound - b_) / a_) : Rational((-bound - b_) / a_);
                long n = static_cast<long>(rational_floor(threshold)) + 1;
                if (n < from) n = from;
                while (rational_abs(at(n)) <= bound) ++n; // at most one step of slack
                return n;
            }
            case Kind::Harmonic: {
                if (rational_abs(at(from)) > bound) return from;
                // monotone toward a: a later index qualifies iff |a| > bound
                if (rational_abs(a_) <= bound) return std::nullopt;
                Rational threshold = a_ > bound ? Rational(b_ / (bound - a_)) : Rational(b_ / (-bound - a_));
                long n = static_cast<long>(rational_floor(threshold)) + 1;
                if (n <= from) n = from + 1;
                while (rational_abs(at(n)) <= bound) ++n;
                return n;
            }
            case Kind::Table: {
                long stable = stable_from();
                for (long n = from; n < stable; ++n)
                    if (rational_abs(at(n)) > bound) return n;
                return tail_->first_index_abs_gt(bound, std::max(from, stable));
            }
        }
        return std::nullopt;
    }

    /// Index from which |coeff(n)| is monotone (affine magnitudes are
    /// V-shaped around the vertex, harmonic ones once the sign stabilizes).
    long monotone_abs_from() const {
        switch (kind_) {
            case Kind::Constant: return 1;
            case Kind::Affine: {
                long k = static_cast<long>(rational_floor(-b_ / a_)) + 1;
                return std::max(k, long(1));
            }
            case Kind::Harmonic: {
                if (a_ == 0) return 1; // |b|/n decreasing everywhere
                long k = static_cast<long>(rational_floor(rational_abs(b_ / a_))) + 1;
                return std::max(k, long(1));
            }
            case Kind::Table:
                return std::max(stable_from(), tail_->monotone_abs_from());
        }
        return 1;
    }

    /// Smallest index k such that |coeff(n)| > bound for every n >= k, if
    /// the tail exceeds the bound at all.
    std::optional<long> abs_gt_forever_from(const Rational& bound) const {
        ExtRational lim = abs_limit();
        if (lim <= bound && !(lim == ExtRational(bound) && approaches_abs_limit_from_above()))
            return std::nullopt;
        long mono = monotone_abs_from();
        // beyond mono the magnitude is monotone, so one qualifying index
        // qualifies forever
        if (rational_abs(at(mono)) > bound) return mono;
        return first_index_abs_gt(bound, mono);
    }

    // Whether |coeff(n)| > |limit| for all large n (e.g. 2 + 1/n vs 2).
    bool approaches_abs_limit_from_above() const {
        switch (kind_) {
            case Kind::Constant: return false;
            case Kind::Affine: return false; // limit infinite, not applicable
            case Kind::Harmonic: {
                // beyond sign stabilization |a + b/n| - |a| has the sign of a*b
                if (a_ == 0) return true; // |b|/n > 0
                return a_ * b_ > 0;
            }
            case Kind::Table: return tail_->approaches_abs_limit_from_above();
        }
        return false;
    }

    std::string str() const {
        switch (kind_) {
            case Kind::Constant: return "const(" + format_rational(a_) + ")";
            case Kind::Affine:
                return "affine(" + format_rational(a_) + "," + format_rational(b_) + ")";
            case Kind::Harmonic:
                return "harmonic(" + format_rational(a_) + "," + format_rational(b_) + ")";
            case Kind::Table: {
                std::string s = "table({";
                bool first = true;
                for (const auto& [n, v] : overrides_) {
                    if (!first) s += ",";
                    s += std::to_string(n) + ":" + format_rational(v);
                    first = false;
                }
                return s + "}," + tail_->str() + ")";
            }
        }
        return "?";
    }

private:
    CoeffFamily() = default;

    Kind kind_ = Kind::Constant;
    Rational a_, b_;
    std::map<long, Rational> overrides_;
    std::shared_ptr<const CoeffFamily> tail_; // Table only
};

} // namespace randop
