#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "randop/coeff_family.hpp"
#include "randop/spaces.hpp"

namespace randop {

/// One realization of a random operator at a single atom. Four shapes:
///
///   Zero                        x -> 0
///   Diagonal(d)    on c00:      x -> (d(n) * x_n)_n
///   RankOne(w, u)  on c00:      x -> (sum_n w(n) * x_n) * u,  u != 0
///   Matrix(rows)   on R^m->R^r: dense rational matrix
///
/// Every shape reports its sup-norm-induced operator norm exactly (+inf is
/// first class) and can construct a unit-norm vector beating any bound below
/// that norm.
class LinearMapRep {
public:
    enum class Kind { Zero, Diagonal, RankOne, Matrix };

    static constexpr long kMaxWitnessSupport = 200000;

    static LinearMapRep zero(SpaceDescriptor domain, SpaceDescriptor codomain) {
        LinearMapRep m;
        m.kind_ = Kind::Zero;
        m.domain_ = std::move(domain);
        m.codomain_ = std::move(codomain);
        return m;
    }

    static LinearMapRep diagonal(CoeffFamily coeff) {
        LinearMapRep m;
        m.kind_ = Kind::Diagonal;
        m.domain_ = m.codomain_ = SpaceDescriptor::c00();
        m.coeff_ = std::move(coeff);
        return m;
    }

    static LinearMapRep rank_one(CoeffFamily weights, SeqVector output) {
        if (output.is_zero())
            fail(Errc::ZeroVector, "rank-one output must be nonzero; use the zero map");
        if (!output.space().is_c00())
            fail(Errc::SpaceMismatch, "rank-one output must live in c00");
        LinearMapRep m;
        m.kind_ = Kind::RankOne;
        m.domain_ = m.codomain_ = SpaceDescriptor::c00();
        m.coeff_ = std::move(weights);
        m.output_ = std::move(output);
        return m;
    }

    static LinearMapRep matrix(std::vector<std::vector<Rational>> rows) {
        if (rows.empty() || rows.front().empty())
            fail(Errc::IndexOutOfRange, "matrix must have at least one row and column");
        const std::size_t cols = rows.front().size();
        for (const auto& r : rows)
            if (r.size() != cols)
                fail(Errc::IndexOutOfRange, "matrix rows must have equal length");
        LinearMapRep m;
        m.kind_ = Kind::Matrix;
        m.domain_ = SpaceDescriptor::finite_dim(static_cast<long>(cols));
        m.codomain_ = SpaceDescriptor::finite_dim(static_cast<long>(rows.size()));
        m.rows_ = std::move(rows);
        return m;
    }

    Kind kind() const { return kind_; }
    const SpaceDescriptor& domain() const { return domain_; }
    const SpaceDescriptor& codomain() const { return codomain_; }
    const CoeffFamily& coeff() const { return coeff_; }
    const SeqVector& output() const { return output_; }

    bool is_diagonal_like() const { return kind_ == Kind::Zero || kind_ == Kind::Diagonal; }

    SeqVector apply(const SeqVector& x) const {
        if (!(x.space() == domain_))
            fail(Errc::SpaceMismatch, "vector not in the map's domain");
        switch (kind_) {
            case Kind::Zero: return SeqVector::zero(codomain_);
            case Kind::Diagonal: {
                std::vector<std::pair<long, Rational>> entries;
                for (const auto& [n, v] : x.entries()) entries.emplace_back(n, coeff_.at(n) * v);
                return SeqVector::from_entries(codomain_, std::move(entries));
            }
            case Kind::RankOne: {
                Rational s(0);
                for (const auto& [n, v] : x.entries()) s += coeff_.at(n) * v;
                return scale(s, output_);
            }
            case Kind::Matrix: {
                std::vector<std::pair<long, Rational>> entries;
                for (std::size_t r = 0; r < rows_.size(); ++r) {
                    Rational s(0);
                    for (const auto& [n, v] : x.entries())
                        s += rows_[r][static_cast<std::size_t>(n - 1)] * v;
                    entries.emplace_back(static_cast<long>(r + 1), s);
                }
                return SeqVector::from_entries(codomain_, std::move(entries));
            }
        }
        return SeqVector::zero(codomain_);
    }

    /// Exact operator norm induced by the sup norm on both sides.
    ExtRational op_norm() const {
        switch (kind_) {
            case Kind::Zero: return ExtRational(Rational(0));
            case Kind::Diagonal: return coeff_.sup_abs_from(1);
            case Kind::RankOne: {
                ExtRational s = coeff_.sum_abs_from(1);
                if (!s.is_finite()) return s;
                return ExtRational(s.value() * output_.norm());
            }
            case Kind::Matrix: {
                Rational best(0);
                for (const auto& row : rows_) {
                    Rational s(0);
                    for (const auto& v : row) s += rational_abs(v);
                    if (s > best) best = s;
                }
                return ExtRational(best);
            }
        }
        return ExtRational(Rational(0));
    }

    /// A unit-norm x with ||map(x)|| > bound, when one exists. Exists for
    /// every bound < op_norm (so for every bound when the norm is +inf).
    std::optional<SeqVector> violating_vector(const Rational& bound) const {
        if (bound < 0) fail(Errc::NegativeBound, "bound must be nonnegative");
        switch (kind_) {
            case Kind::Zero: return std::nullopt;
            case Kind::Diagonal: {
                auto n = coeff_.first_index_abs_gt(bound);
                if (!n) return std::nullopt;
                return basis(*n, domain_);
            }
            case Kind::RankOne: {
                // sign-aligned partial sums of the weights grow to the full
                // weight sum, so some prefix beats bound/||u||
                Rational target = bound / output_.norm();
                Rational partial(0);
                std::vector<std::pair<long, Rational>> entries;
                ExtRational total = coeff_.sum_abs_from(1);
                if (total <= target) return std::nullopt;
                for (long n = 1; n <= kMaxWitnessSupport; ++n) {
                    Rational w = coeff_.at(n);
                    if (w == 0) continue;
                    partial += rational_abs(w);
                    entries.emplace_back(n, w > 0 ? Rational(1) : Rational(-1));
                    if (partial > target)
                        return SeqVector::from_entries(domain_, std::move(entries));
                }
                // slowly diverging weight series (e.g. b/n): the witness
                // exists but its support is astronomically large
                fail(Errc::InvariantViolation,
                     "violating vector support exceeds " +
                         std::to_string(kMaxWitnessSupport) + " coordinates");
            }
            case Kind::Matrix: {
                for (const auto& row : rows_) {
                    Rational s(0);
                    for (const auto& v : row) s += rational_abs(v);
                    if (s > bound) {
                        std::vector<std::pair<long, Rational>> entries;
                        for (std::size_t c = 0; c < row.size(); ++c)
                            if (row[c] != 0)
                                entries.emplace_back(static_cast<long>(c + 1),
                                                     row[c] > 0 ? Rational(1) : Rational(-1));
                        return SeqVector::from_entries(domain_, std::move(entries));
                    }
                }
                return std::nullopt;
            }
        }
        return std::nullopt;
    }

    /// For diagonal maps: the coordinate whose coefficient beats the bound.
    std::optional<long> violating_index(const Rational& bound) const {
        if (kind_ != Kind::Diagonal) return std::nullopt;
        return coeff_.first_index_abs_gt(bound);
    }

    std::string str() const {
        switch (kind_) {
            case Kind::Zero: return "zero";
            case Kind::Diagonal: return "diagonal[" + coeff_.str() + "]";
            case Kind::RankOne: return "rank_one[" + coeff_.str() + "]";
            case Kind::Matrix:
                return "matrix[" + std::to_string(rows_.size()) + "x" +
                       std::to_string(rows_.front().size()) + "]";
        }
        return "?";
    }

private:
    LinearMapRep() : coeff_(CoeffFamily::constant(Rational(0))) {}

    Kind kind_ = Kind::Zero;
    SpaceDescriptor domain_, codomain_;
    CoeffFamily coeff_;               // Diagonal coefficients / RankOne weights
    SeqVector output_;                // RankOne only
    std::vector<std::vector<Rational>> rows_; // Matrix only
};

} // namespace randop
