#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "randop/random_operator.hpp"
#include "randop/sequence_spec.hpp"

namespace randop {

/// The family driving the asymptotics: tables defer to their tail.
inline const CoeffFamily& asymptotic_core(const CoeffFamily& f) {
    return f.kind() == CoeffFamily::Kind::Table ? f.tail() : f;
}

/// Exactly evaluable scalar sequences with certified asymptotics. Three
/// shapes cover every trace an operator produces along the symbolic
/// sequence specs:
///
///   FamilyPow:     value(k) = f(k) / k^p
///   WindowSum:     value(k) = (sum_{n=k}^{k+L-1} f(n)) / k
///   WindowMaxAbs:  value(k) = (max_{n in [k,k+L)} |f(n)|) / k
///
/// Each knows its exact limit, an |value(k)-limit| <= C/k envelope, whether
/// it is eventually constant, and on which side of its |limit| it settles.
/// That is enough to decide |value(k)| vs any level with an exact first
/// index and no sampling.
class ScalarSeq {
public:
    enum class Kind { FamilyPow, WindowSum, WindowMaxAbs };

    static ScalarSeq family_pow(CoeffFamily f, int pow) {
        require(pow >= 0, Errc::IndexOutOfRange, "power must be >= 0");
        ScalarSeq s(Kind::FamilyPow, std::move(f), 1);
        s.pow_ = pow;
        return s;
    }
    static ScalarSeq window_sum(CoeffFamily f, long width) {
        require(width >= 1, Errc::IndexOutOfRange, "width must be >= 1");
        return ScalarSeq(Kind::WindowSum, std::move(f), width);
    }
    static ScalarSeq window_max_abs(CoeffFamily f, long width) {
        require(width >= 1, Errc::IndexOutOfRange, "width must be >= 1");
        return ScalarSeq(Kind::WindowMaxAbs, std::move(f), width);
    }

    Rational eval(long k) const {
        require(k >= 1, Errc::IndexOutOfRange, "sequence index must be >= 1");
        switch (kind_) {
            case Kind::FamilyPow: {
                Rational kp(1);
                for (int i = 0; i < pow_; ++i) kp *= k;
                return family_.at(k) / kp;
            }
            case Kind::WindowSum: {
                Rational s(0);
                for (long n = k; n < k + width_; ++n) s += family_.at(n);
                return s / Rational(k);
            }
            case Kind::WindowMaxAbs: {
                Rational best(0);
                for (long n = k; n < k + width_; ++n) {
                    Rational a = rational_abs(family_.at(n));
                    if (a > best) best = a;
                }
                return best / Rational(k);
            }
        }
        return Rational(0);
    }

    /// The signed limit, or nullopt when |value| -> +inf (FamilyPow with
    /// p = 0 over an affine core is the only divergent shape).
    std::optional<Rational> limit() const {
        const CoeffFamily& core = asymptotic_core(family_);
        bool core_affine = core.kind() == CoeffFamily::Kind::Affine;
        switch (kind_) {
            case Kind::FamilyPow:
                if (pow_ == 0) {
                    if (core_affine) return std::nullopt;
                    return core.param_a(); // constant c or harmonic a
                }
                if (pow_ == 1 && core_affine) return core.param_a();
                return Rational(0);
            case Kind::WindowSum:
                if (core_affine) return core.param_a() * width_;
                return Rational(0);
            case Kind::WindowMaxAbs:
                if (core_affine) return rational_abs(core.param_a());
                return Rational(0);
        }
        return Rational(0);
    }

    /// |value(k) - limit| <= envelope_c()/k for k >= envelope_from()
    /// (finite-limit shapes only).
    Rational envelope_c() const {
        const CoeffFamily& core = asymptotic_core(family_);
        Rational a = core.param_a(), b = core.param_b();
        Rational absa = rational_abs(a), absb = rational_abs(b);
        switch (kind_) {
            case Kind::FamilyPow:
                switch (core.kind()) {
                    case CoeffFamily::Kind::Constant: return pow_ == 0 ? Rational(0) : absa;
                    case CoeffFamily::Kind::Harmonic: return pow_ == 0 ? absb : absa + absb;
                    case CoeffFamily::Kind::Affine:
                        require(pow_ >= 1, Errc::InvariantViolation, "divergent scalar");
                        return pow_ == 1 ? absb : absa + absb;
                    case CoeffFamily::Kind::Table: break;
                }
                break;
            case Kind::WindowSum:
                switch (core.kind()) {
                    case CoeffFamily::Kind::Constant: return absa * width_;
                    case CoeffFamily::Kind::Harmonic: return (absa + absb) * width_;
                    case CoeffFamily::Kind::Affine:
                        // exact: value(k) = a*L + (a*L*(L-1)/2 + b*L)/k
                        return rational_abs(a * width_ * (width_ - 1) / 2 + b * width_);
                    case CoeffFamily::Kind::Table: break;
                }
                break;
            case Kind::WindowMaxAbs:
                switch (core.kind()) {
                    case CoeffFamily::Kind::Constant: return absa;
                    case CoeffFamily::Kind::Harmonic: return absa + absb;
                    case CoeffFamily::Kind::Affine:
                        // beyond the sign-stable index the window max sits at
                        // the right edge: value(k) = |a| + e'/k
                        return rational_abs(affine_window_shift());
                    case CoeffFamily::Kind::Table: break;
                }
                break;
        }
        fail(Errc::InvariantViolation, "envelope on unsupported shape");
    }

    long envelope_from() const {
        const CoeffFamily& core = asymptotic_core(family_);
        long from = family_.stable_from();
        if (kind_ == Kind::WindowMaxAbs && core.kind() == CoeffFamily::Kind::Affine)
            from = std::max(from, affine_sign_stable(core));
        return from;
    }

    /// (k0, s) with value(k) == s exactly for all k >= k0 (earliest k0).
    std::optional<std::pair<long, Rational>> eventually_constant() const {
        const CoeffFamily& core = asymptotic_core(family_);
        std::optional<long> from;
        Rational s(0);
        switch (kind_) {
            case Kind::FamilyPow: {
                if (pow_ == 0 && core.kind() == CoeffFamily::Kind::Constant)
                    s = core.param_a();
                else if (pow_ == 1 && core.kind() == CoeffFamily::Kind::Affine)
                    s = core.param_a();
                else
                    s = Rational(0);
                from = family_.eventually_matches_from(s, pow_);
                break;
            }
            case Kind::WindowSum: {
                if (core.kind() == CoeffFamily::Kind::Affine) {
                    Rational e =
                        core.param_a() * width_ * (width_ - 1) / 2 + core.param_b() * width_;
                    if (e == 0) {
                        s = core.param_a() * width_;
                        from = family_.stable_from();
                    }
                } else if (auto z = family_.eventually_zero_from()) {
                    s = Rational(0);
                    from = *z;
                }
                break;
            }
            case Kind::WindowMaxAbs: {
                if (core.kind() == CoeffFamily::Kind::Affine) {
                    if (affine_window_shift() == 0) {
                        s = rational_abs(core.param_a());
                        from = std::max(family_.stable_from(), affine_sign_stable(core));
                    }
                } else if (auto z = family_.eventually_zero_from()) {
                    s = Rational(0);
                    from = *z;
                }
                break;
            }
        }
        if (!from) return std::nullopt;
        long k = std::max(*from, long(1));
        while (k > 1 && eval(k - 1) == s) --k;
        return std::make_pair(k, s);
    }

    /// Decides |value(k)| vs lvl with the exact first index from which the
    /// relation holds forever. Total for these shapes.
    struct Eventually {
        bool is_lt; // true: |value(k)| < lvl for all k >= from; false: >= lvl
        long from;
    };
    Eventually abs_vs(const Rational& lvl) const {
        auto diff_abs = [this](long k) { return rational_abs(eval(k)); };
        if (auto ec = eventually_constant()) {
            bool lt = rational_abs(ec->second) < lvl;
            return refine(lt, ec->first, lvl, diff_abs);
        }
        auto lim = limit();
        if (!lim) {
            // |value| -> +inf
            auto idx = family_.abs_gt_forever_from(lvl);
            require(idx.has_value(), Errc::InvariantViolation, "divergent scalar must exceed");
            return refine(false, *idx, lvl, diff_abs);
        }
        Rational labs = rational_abs(*lim);
        if (labs != lvl) {
            bool lt = labs < lvl;
            Rational gap = lt ? lvl - labs : labs - lvl;
            Rational c = envelope_c();
            long k = envelope_from();
            if (c > 0) {
                long kk = static_cast<long>(rational_floor(c / gap)) + 1;
                if (kk > k) k = kk;
            }
            return refine(lt, k, lvl, diff_abs);
        }
        auto [above, from] = settles_above_abs_limit();
        return refine(!above, from, lvl, diff_abs);
    }

private:
    ScalarSeq(Kind kind, CoeffFamily f, long width)
        : kind_(kind), family_(std::move(f)), width_(width) {}

    // e' in value(k) = |a| + e'/k for the affine window max
    Rational affine_window_shift() const {
        const CoeffFamily& core = asymptotic_core(family_);
        Rational a = core.param_a(), b = core.param_b();
        Rational signed_b = a > 0 ? b : -b;
        return rational_abs(a) * (width_ - 1) + signed_b;
    }

    static long affine_sign_stable(const CoeffFamily& core) {
        // smallest k with sign(a*n+b) == sign(a) for all n >= k
        Rational threshold = -core.param_b() / core.param_a();
        long k = static_cast<long>(rational_floor(threshold)) + 1;
        return std::max(k, long(1));
    }

    // For finite nonzero-limit shapes that are not eventually constant:
    // whether |value(k)| settles strictly above |limit|, plus the index.
    // For limit-zero shapes the answer is "above" beyond the last zero.
    std::pair<bool, long> settles_above_abs_limit() const {
        const CoeffFamily& core = asymptotic_core(family_);
        Rational a = core.param_a(), b = core.param_b();
        long stable = family_.stable_from();
        auto lim = limit();
        require(lim.has_value(), Errc::InvariantViolation, "side of a divergent scalar");
        if (*lim == 0) {
            // value -> 0 but not eventually zero: nonzero beyond the core's
            // last sign change / zero crossing
            long from = stable;
            switch (core.kind()) {
                case CoeffFamily::Kind::Affine:
                    from = std::max(from, affine_sign_stable(core));
                    break;
                case CoeffFamily::Kind::Harmonic:
                    if (a != 0) {
                        long k = static_cast<long>(rational_floor(rational_abs(b / a))) + 1;
                        from = std::max(from, k);
                    }
                    break;
                default: break;
            }
            if (kind_ == Kind::WindowSum && core.kind() == CoeffFamily::Kind::Harmonic && a != 0) {
                // window numerator a*L + b*H(k), |b*H(k)| <= |b|L/k
                long k = static_cast<long>(rational_floor(rational_abs(b / a))) + 2;
                from = std::max(from, k);
            }
            return {true, from};
        }
        // finite nonzero limit: value(k) = limit + shift/k beyond the sign
        // region; the side is the sign of limit*shift
        Rational shift;
        switch (kind_) {
            case Kind::FamilyPow:
                // p==0 harmonic or p==1 affine; both give value = L + b/k
                shift = b;
                break;
            case Kind::WindowSum:
                shift = a * width_ * (width_ - 1) / 2 + b * width_;
                break;
            case Kind::WindowMaxAbs:
                shift = affine_window_shift();
                break;
        }
        require(shift != 0, Errc::InvariantViolation, "constant shape escaped detection");
        Rational ratio = rational_abs(shift / *lim);
        long from = std::max(family_.stable_from(),
                             static_cast<long>(rational_floor(ratio)) + 1);
        if (kind_ == Kind::WindowMaxAbs)
            from = std::max(from, affine_sign_stable(core));
        bool above = (*lim) * shift > 0;
        if (kind_ == Kind::WindowMaxAbs) above = shift > 0; // value = |a| + e'/k
        return {above, from};
    }

    // Exact first index of the final run: scan down from a certified index.
    static Eventually refine(bool is_lt, long certified, const Rational& lvl,
                             const std::function<Rational(long)>& abs_at) {
        constexpr long kScanCap = 20000;
        long k = std::max(certified, long(1));
        if (k <= kScanCap) {
            auto holds = [&](long i) { return is_lt ? abs_at(i) < lvl : abs_at(i) >= lvl; };
            while (k > 1 && holds(k - 1)) --k;
        }
        return {is_lt, k};
    }

    Kind kind_;
    CoeffFamily family_;
    long width_ = 1;
    int pow_ = 0;
};

/// How one atom's trace T_omega(x_k) behaves as k grows. The classification
/// is deliberately conservative: a value sequence is either exactly constant
/// from some index, certified norm-to-zero, certified divergent, or reported
/// Undecided; nothing is extrapolated numerically.
struct VectorLimitClass {
    enum class Kind { EventuallyConstant, NormToZero, Diverges, Undecided };
    Kind kind = Kind::Undecided;
    long const_from = 0; // EventuallyConstant only
    SeqVector limit;     // EventuallyConstant: exact value; NormToZero: zero
};

/// The symbolic trace k -> rep(spec.term(k)) + offset at a single atom.
/// Every supported (map, spec) pair reduces to one of three exact shapes:
/// a moving spike, a fixed vector with a scalar factor, or a shrinking
/// coefficient window; user prefixes are carried explicitly.
class AtomTrace {
public:
    enum class Form { Spike, FixedVec, WindowVec, PrefixOnly };

    struct NormRel {
        enum class Kind { Lt, Ge, Undecided };
        Kind kind = Kind::Undecided;
        long from = 0; // exact first index of the final run (Lt / Ge)
    };

    static AtomTrace make(const LinearMapRep& rep, const SequenceSpec& spec,
                          SeqVector offset) {
        AtomTrace t(rep.codomain(), std::move(offset));
        using SK = SequenceSpec::Kind;
        using MK = LinearMapRep::Kind;
        if (spec.kind() == SK::UserPrefix) {
            t.form_ = Form::PrefixOnly;
            t.tail_zero_ = spec.tail() == SequenceSpec::Tail::Null;
            for (const auto& x : spec.prefix())
                t.prefix_values_.push_back(add(rep.apply(x), t.offset_));
            return t;
        }
        if (!spec.compatible_with(rep.domain()))
            fail(Errc::SpaceMismatch, "sequence spec incompatible with operator domain");
        switch (spec.kind()) {
            case SK::ScaledBasis:
                switch (rep.kind()) {
                    case MK::Zero: t.set_fixed(ScalarSeq::family_pow(
                                       CoeffFamily::constant(Rational(0)), 0),
                                   SeqVector::zero(rep.codomain()));
                        break;
                    case MK::Diagonal:
                        t.form_ = Form::Spike;
                        t.scalar_.emplace(ScalarSeq::family_pow(rep.coeff(), spec.power()));
                        break;
                    case MK::RankOne:
                        t.set_fixed(ScalarSeq::family_pow(rep.coeff(), spec.power()),
                                    rep.output());
                        break;
                    case MK::Matrix:
                        fail(Errc::SpaceMismatch, "scaled basis sequences need a c00 domain");
                }
                break;
            case SK::ScaledFixed:
                t.set_fixed(ScalarSeq::family_pow(CoeffFamily::constant(Rational(1)), 1),
                            rep.apply(spec.fixed()));
                break;
            case SK::WindowSum:
                switch (rep.kind()) {
                    case MK::Zero: t.set_fixed(ScalarSeq::family_pow(
                                       CoeffFamily::constant(Rational(0)), 0),
                                   SeqVector::zero(rep.codomain()));
                        break;
                    case MK::Diagonal:
                        t.form_ = Form::WindowVec;
                        t.window_family_.emplace(rep.coeff());
                        t.window_width_ = spec.width();
                        t.scalar_.emplace(
                            ScalarSeq::window_max_abs(rep.coeff(), spec.width()));
                        break;
                    case MK::RankOne:
                        t.set_fixed(ScalarSeq::window_sum(rep.coeff(), spec.width()),
                                    rep.output());
                        break;
                    case MK::Matrix:
                        fail(Errc::SpaceMismatch, "window sequences need a c00 domain");
                }
                break;
            case SK::UserPrefix: break; // handled above
        }
        return t;
    }

    Form form() const { return form_; }

    SeqVector value_at(long k) const {
        require(k >= 1, Errc::IndexOutOfRange, "trace index must be >= 1");
        switch (form_) {
            case Form::Spike:
                return add(SeqVector::from_entries(codomain_, {{k, scalar_->eval(k)}}),
                           offset_);
            case Form::FixedVec: return add(scale(scalar_->eval(k), fixed_u_), offset_);
            case Form::WindowVec: {
                std::vector<std::pair<long, Rational>> entries;
                for (long n = k; n < k + window_width_; ++n)
                    entries.emplace_back(n, window_family_->at(n) / Rational(k));
                return add(SeqVector::from_entries(codomain_, std::move(entries)), offset_);
            }
            case Form::PrefixOnly:
                if (k <= static_cast<long>(prefix_values_.size()))
                    return prefix_values_[static_cast<std::size_t>(k - 1)];
                if (tail_zero_) return offset_;
                fail(Errc::UncertifiedSequence, "term beyond an Unknown-tail prefix");
        }
        return offset_;
    }

    VectorLimitClass vector_class() const {
        VectorLimitClass out;
        out.limit = SeqVector::zero(codomain_);
        switch (form_) {
            case Form::PrefixOnly: {
                if (!tail_zero_) return out; // Undecided
                out.kind = VectorLimitClass::Kind::EventuallyConstant;
                out.limit = offset_;
                long k = static_cast<long>(prefix_values_.size()) + 1;
                while (k > 1 && value_at(k - 1) == offset_) --k;
                out.const_from = k;
                return out;
            }
            case Form::FixedVec: {
                if (fixed_u_.is_zero()) {
                    out.kind = VectorLimitClass::Kind::EventuallyConstant;
                    out.limit = offset_;
                    out.const_from = 1;
                    return out;
                }
                if (auto ec = scalar_->eventually_constant()) {
                    out.kind = VectorLimitClass::Kind::EventuallyConstant;
                    out.limit = add(scale(ec->second, fixed_u_), offset_);
                    out.const_from = ec->first;
                    return out;
                }
                auto lim = scalar_->limit();
                if (!lim) {
                    out.kind = VectorLimitClass::Kind::Diverges;
                    return out;
                }
                if (*lim == 0 && offset_.is_zero()) {
                    out.kind = VectorLimitClass::Kind::NormToZero;
                    return out;
                }
                return out; // approaches a constant it never reaches: Undecided
            }
            case Form::Spike:
            case Form::WindowVec: {
                if (auto ec = scalar_->eventually_constant()) {
                    if (ec->second == 0) {
                        out.kind = VectorLimitClass::Kind::EventuallyConstant;
                        out.limit = offset_;
                        out.const_from = ec->first;
                        return out;
                    }
                    out.kind = VectorLimitClass::Kind::Diverges; // moving support
                    return out;
                }
                auto lim = scalar_->limit();
                if (!lim || rational_abs(*lim) > 0) {
                    out.kind = VectorLimitClass::Kind::Diverges;
                    return out;
                }
                if (offset_.is_zero()) {
                    out.kind = VectorLimitClass::Kind::NormToZero;
                    return out;
                }
                return out; // norm-to-offset without exactness: Undecided
            }
        }
        return out;
    }

    /// Does the trace converge (in norm, hence in probability on a finite
    /// space) to exactly `target` at this atom? Tri-state.
    NormRel::Kind converges_to(const SeqVector& target) const {
        SeqVector tp = subtract(target, offset_); // compare rep part to t'
        auto yes = NormRel::Kind::Lt, no = NormRel::Kind::Ge; // reuse as yes/no
        switch (form_) {
            case Form::PrefixOnly:
                if (!tail_zero_) return NormRel::Kind::Undecided;
                return tp.is_zero() ? yes : no;
            case Form::FixedVec: {
                if (fixed_u_.is_zero()) return tp.is_zero() ? yes : no;
                auto lim = scalar_->limit();
                if (!lim) return no;
                return scale(*lim, fixed_u_) == tp ? yes : no;
            }
            case Form::Spike:
            case Form::WindowVec: {
                auto ec = scalar_->eventually_constant();
                bool norm_to_zero = ec ? ec->second == 0
                                       : (scalar_->limit() && *scalar_->limit() == 0);
                if (!norm_to_zero) return no;
                return tp.is_zero() ? yes : no;
            }
        }
        return NormRel::Kind::Undecided;
    }

    /// ||value(k) - target|| vs tau, with the exact first index of the final
    /// run. The only Undecided cases: unknown prefix tails, and fixed-vector
    /// traces whose limiting distance equals tau exactly.
    NormRel norm_rel(const SeqVector& target, const Rational& tau) const {
        require(tau > 0, Errc::NegativeThreshold, "threshold must be positive");
        SeqVector tp = subtract(target, offset_);
        Rational tp_norm = tp.norm();
        switch (form_) {
            case Form::PrefixOnly: {
                if (!tail_zero_) return {NormRel::Kind::Undecided, 0};
                bool lt = tp_norm < tau;
                return refined(lt, static_cast<long>(prefix_values_.size()) + 1, target, tau);
            }
            case Form::FixedVec: {
                if (fixed_u_.is_zero()) return refined(tp_norm < tau, 1, target, tau);
                if (auto ec = scalar_->eventually_constant()) {
                    Rational d = subtract(scale(ec->second, fixed_u_), tp).norm();
                    return refined(d < tau, ec->first, target, tau);
                }
                auto lim = scalar_->limit();
                Rational unorm = fixed_u_.norm();
                if (!lim) {
                    auto ev = scalar_->abs_vs((tau + tp_norm) / unorm);
                    require(!ev.is_lt, Errc::InvariantViolation, "divergent factor must exceed");
                    return refined(false, ev.from, target, tau);
                }
                Rational dist = subtract(scale(*lim, fixed_u_), tp).norm();
                if (dist == tau) return {NormRel::Kind::Undecided, 0};
                bool lt = dist < tau;
                Rational gap = lt ? tau - dist : dist - tau;
                Rational c = scalar_->envelope_c() * unorm;
                long from = scalar_->envelope_from();
                if (c > 0) {
                    long kk = static_cast<long>(rational_floor(c / gap)) + 1;
                    if (kk > from) from = kk;
                }
                return refined(lt, from, target, tau);
            }
            case Form::Spike:
            case Form::WindowVec: {
                // beyond the target's support the distance is exactly
                // max(scalar norm, ||t'||)
                long clear = tp.max_index() + 1;
                if (tp_norm >= tau) return refined(false, clear, target, tau);
                auto ev = scalar_->abs_vs(tau);
                return refined(ev.is_lt, std::max(ev.from, clear), target, tau);
            }
        }
        return {NormRel::Kind::Undecided, 0};
    }

private:
    AtomTrace(SpaceDescriptor codomain, SeqVector offset)
        : codomain_(std::move(codomain)), offset_(std::move(offset)) {}

    void set_fixed(ScalarSeq s, SeqVector u) {
        form_ = Form::FixedVec;
        scalar_.emplace(std::move(s));
        fixed_u_ = std::move(u);
    }

    NormRel refined(bool is_lt, long certified, const SeqVector& target,
                    const Rational& tau) const {
        constexpr long kScanCap = 20000;
        long k = std::max(certified, long(1));
        if (k <= kScanCap) {
            auto holds = [&](long i) {
                Rational d = subtract(value_at(i), target).norm();
                return is_lt ? d < tau : d >= tau;
            };
            while (k > 1 && holds(k - 1)) --k;
        }
        return {is_lt ? NormRel::Kind::Lt : NormRel::Kind::Ge, k};
    }

    Form form_ = Form::PrefixOnly;
    SpaceDescriptor codomain_;
    SeqVector offset_;
    std::optional<ScalarSeq> scalar_;         // Spike coeff / FixedVec factor / Window norm
    SeqVector fixed_u_;                       // FixedVec
    std::optional<CoeffFamily> window_family_; // WindowVec
    long window_width_ = 0;
    std::vector<SeqVector> prefix_values_;    // PrefixOnly (offset folded in)
    bool tail_zero_ = true;
};

/// A sequence of random vectors: either symbolic (an operator applied along
/// a sequence spec) or an explicit prefix with a declared tail.
class SeqTrace {
public:
    static SeqTrace applied(const RandomOperator& T, SequenceSpec spec) {
        SeqTrace t(T.space(), T.codomain());
        for (std::size_t i = 0; i < T.space().size(); ++i)
            t.atoms_.push_back(AtomTrace::make(T.map_at(i), spec, T.offset_at(i)));
        return t;
    }

    /// Explicit terms; constant_from_last means y_n = last term for n >= K.
    static SeqTrace explicit_prefix(std::vector<RandomVector> terms, bool constant_from_last) {
        require(!terms.empty(), Errc::EmptyGrid, "explicit trace needs at least one term");
        for (const auto& t : terms)
            if (!t.space().same_as(terms.front().space()) ||
                !(t.codomain() == terms.front().codomain()))
                fail(Errc::SpaceMismatch, "explicit trace terms over different spaces");
        SeqTrace t(terms.front().space(), terms.front().codomain());
        t.explicit_terms_ = std::move(terms);
        t.constant_from_last_ = constant_from_last;
        return t;
    }

    static SeqTrace constant(RandomVector y) { return explicit_prefix({std::move(y)}, true); }

    const FiniteProbSpace& space() const { return space_; }
    const SpaceDescriptor& codomain() const { return codomain_; }
    bool is_symbolic() const { return !atoms_.empty(); }
    const AtomTrace& atom(std::size_t i) const { return atoms_.at(i); }
    const std::vector<RandomVector>& explicit_terms() const { return explicit_terms_; }
    bool constant_from_last() const { return constant_from_last_; }

    RandomVector term(long k) const {
        require(k >= 1, Errc::IndexOutOfRange, "trace index must be >= 1");
        if (is_symbolic()) {
            std::vector<SeqVector> values;
            for (const auto& a : atoms_) values.push_back(a.value_at(k));
            return RandomVector(space_, codomain_, std::move(values));
        }
        auto n = static_cast<std::size_t>(k);
        if (n <= explicit_terms_.size()) return explicit_terms_[n - 1];
        if (constant_from_last_) return explicit_terms_.back();
        fail(Errc::UncertifiedSequence, "term beyond an Unknown-tail prefix");
    }

private:
    SeqTrace(FiniteProbSpace space, SpaceDescriptor codomain)
        : space_(std::move(space)), codomain_(std::move(codomain)) {}

    FiniteProbSpace space_;
    SpaceDescriptor codomain_;
    std::vector<AtomTrace> atoms_;
    std::vector<RandomVector> explicit_terms_;
    bool constant_from_last_ = false;
};

/// Convergence in probability on a finite atomic space: P[||y_k - y|| >= tau]
/// takes finitely many values, so it tends to zero iff the event is
/// eventually empty. Verdicts are three-valued and never guessed.
struct ConvergenceReport {
    enum class Verdict { Converges, Diverges, Undecided };
    struct Row {
        Rational tau;
        enum class Status { EmptyFrom, NeverEmpty, Undecided } status;
        long index = 0;          // EmptyFrom: first index with an empty event
        std::string witness_atom; // NeverEmpty: an atom staying in the event
    };
    Verdict verdict = Verdict::Undecided;
    std::vector<Row> rows;
};

inline ConvergenceReport converges_in_probability(const SeqTrace& trace, const RandomVector& y,
                                                  const std::vector<Rational>& tau_grid) {
    if (tau_grid.empty()) fail(Errc::EmptyGrid, "tau grid must be non-empty");
    for (const auto& t : tau_grid)
        if (t <= 0) fail(Errc::NegativeThreshold, "tau grid entries must be positive");
    if (!trace.space().same_as(y.space()) || !(trace.codomain() == y.codomain()))
        fail(Errc::SpaceMismatch, "trace and limit candidate over different spaces");

    ConvergenceReport report;
    const auto& space = trace.space();

    if (trace.is_symbolic()) {
        bool all_yes = true, any_no = false;
        for (std::size_t i = 0; i < space.size(); ++i) {
            auto c = trace.atom(i).converges_to(y.at(i));
            if (c != AtomTrace::NormRel::Kind::Lt) all_yes = false;
            if (c == AtomTrace::NormRel::Kind::Ge) any_no = true;
        }
        report.verdict = any_no ? ConvergenceReport::Verdict::Diverges
                         : all_yes ? ConvergenceReport::Verdict::Converges
                                   : ConvergenceReport::Verdict::Undecided;
        for (const auto& tau : tau_grid) {
            ConvergenceReport::Row row{tau, ConvergenceReport::Row::Status::Undecided, 0, {}};
            long worst = 1;
            bool undecided = false;
            for (std::size_t i = 0; i < space.size(); ++i) {
                auto rel = trace.atom(i).norm_rel(y.at(i), tau);
                if (rel.kind == AtomTrace::NormRel::Kind::Ge) {
                    row.status = ConvergenceReport::Row::Status::NeverEmpty;
                    row.witness_atom = space.atom(i).id;
                    break;
                }
                if (rel.kind == AtomTrace::NormRel::Kind::Undecided)
                    undecided = true;
                else
                    worst = std::max(worst, rel.from);
            }
            if (row.status != ConvergenceReport::Row::Status::NeverEmpty && !undecided) {
                row.status = ConvergenceReport::Row::Status::EmptyFrom;
                row.index = worst;
            }
            report.rows.push_back(std::move(row));
        }
        return report;
    }

    // explicit trace
    const auto& terms = trace.explicit_terms();
    long len = static_cast<long>(terms.size());
    if (!trace.constant_from_last()) {
        report.verdict = ConvergenceReport::Verdict::Undecided;
        for (const auto& tau : tau_grid)
            report.rows.push_back({tau, ConvergenceReport::Row::Status::Undecided, 0, {}});
        return report;
    }
    bool limit_matches = terms.back() == y;
    report.verdict = limit_matches ? ConvergenceReport::Verdict::Converges
                                   : ConvergenceReport::Verdict::Diverges;
    for (const auto& tau : tau_grid) {
        ConvergenceReport::Row row{tau, ConvergenceReport::Row::Status::Undecided, 0, {}};
        // stable state from index len onward
        std::optional<std::string> stuck;
        for (std::size_t i = 0; i < space.size(); ++i)
            if (subtract(terms.back().at(i), y.at(i)).norm() >= tau) {
                stuck = space.atom(i).id;
                break;
            }
        if (stuck) {
            row.status = ConvergenceReport::Row::Status::NeverEmpty;
            row.witness_atom = *stuck;
        } else {
            long first = len;
            while (first > 1) {
                bool empty = true;
                const RandomVector& t = terms[static_cast<std::size_t>(first - 2)];
                for (std::size_t i = 0; i < space.size() && empty; ++i)
                    if (subtract(t.at(i), y.at(i)).norm() >= tau) empty = false;
                if (!empty) break;
                --first;
            }
            row.status = ConvergenceReport::Row::Status::EmptyFrom;
            row.index = first;
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace randop
