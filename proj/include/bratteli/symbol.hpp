#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bratteli/ematrix.hpp"
#include "bratteli/supernatural.hpp"

namespace bratteli {

/// Recognize a lower-triangular factor T(a,b) = [[a,0],[a-b,b]] with
/// a >= b >= 1; the family is closed under products via
/// T(a,b)T(c,d) = T(ac,bd).
inline std::optional<std::pair<Int, Int>> as_triangular(const EMatrix& m) {
    if (m.rows() != 2 || m.cols() != 2) return std::nullopt;
    const Int& a = m(0, 0);
    const Int& b = m(1, 1);
    if (a < 1 || b < 1 || m(0, 1) != 0) return std::nullopt;
    if (m(1, 0) != a - b) return std::nullopt;
    return std::make_pair(a, b);
}

/// A finite stretch of a Bratteli diagram: the initial column plus a
/// chain-compatible list of factors, later factors acting on the left.
struct FiniteSymbol {
    EMatrix initial_column;
    std::vector<EMatrix> factors;
};

/// Lazily generated factor sequence (initial column + generator rule).
/// Specs are immutable; factor generation is pure. Factors carry the
/// family's native index: the two-parameter multiplier family starts
/// at 2, everything else at 1.
class SymbolSpec {
public:
    enum class Kind {
        Explicit,
        FFamily,
        KOne,
        UHF,
        F1Extended,
        Tensor,
        DirectSum,
        ScalarAmplify,
    };

    static SymbolSpec explicit_list(std::vector<EMatrix> factors, EMatrix initial_column,
                                    bool periodic = false) {
        if (factors.empty()) throw std::invalid_argument("explicit_list: no factors");
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (!admissible(factors[i]))
                throw std::invalid_argument("explicit_list: factor " + std::to_string(i + 1) +
                                            " is not admissible");
            if (i + 1 < factors.size() && factors[i + 1].cols() != factors[i].rows())
                throw std::invalid_argument("explicit_list: factor shapes do not chain");
        }
        if (periodic && factors.front().cols() != factors.back().rows())
            throw std::invalid_argument("explicit_list: periodic list does not chain at wrap");
        check_column(initial_column, factors.front().cols());

        SymbolSpec s(Kind::Explicit);
        s.list_ = std::move(factors);
        s.periodic_ = periodic;
        s.column_ = std::move(initial_column);
        return s;
    }

    /// factor(n) = [[n,0],[n-1,1]]^{tensor N} for n >= 2, over the
    /// all-ones column of length 2^N.
    static SymbolSpec f_family(int tensor_power) {
        if (tensor_power < 1) throw std::invalid_argument("f_family: need N >= 1");
        SymbolSpec s(Kind::FFamily);
        s.power_ = tensor_power;
        return s;
    }

    /// Constant factor [[1,0],[1,1]] over the column (1,1).
    static SymbolSpec k_one() { return SymbolSpec(Kind::KOne); }

    /// Scalar factor sequence realizing a supernatural number: the
    /// i-th stored prime joins the product at step i and stays for as
    /// many steps as its multiplicity.
    static SymbolSpec uhf(SupernaturalNumber n) {
        SymbolSpec s(Kind::UHF);
        s.super_ = std::move(n);
        return s;
    }

    /// Double product over T(n,m), 1 <= m <= n, enumerated row by row
    /// with n outer and m inner ascending.
    static SymbolSpec f1_extended() { return SymbolSpec(Kind::F1Extended); }

    static SymbolSpec tensor(SymbolSpec a, SymbolSpec b) {
        SymbolSpec s(Kind::Tensor);
        s.a_ = std::make_shared<SymbolSpec>(std::move(a));
        s.b_ = std::make_shared<SymbolSpec>(std::move(b));
        return s;
    }

    static SymbolSpec direct_sum(SymbolSpec a, SymbolSpec b) {
        SymbolSpec s(Kind::DirectSum);
        s.a_ = std::make_shared<SymbolSpec>(std::move(a));
        s.b_ = std::make_shared<SymbolSpec>(std::move(b));
        return s;
    }

    static SymbolSpec scalar_amplify(Int m, SymbolSpec inner) {
        if (m < 1) throw std::invalid_argument("scalar_amplify: need M >= 1");
        SymbolSpec s(Kind::ScalarAmplify);
        s.amplify_ = std::move(m);
        s.a_ = std::make_shared<SymbolSpec>(std::move(inner));
        return s;
    }

    Kind kind() const { return kind_; }
    int tensor_power() const { return power_; }
    const Int& amplification() const { return amplify_; }
    const SupernaturalNumber& supernatural() const { return super_; }
    const std::vector<EMatrix>& factor_list() const { return list_; }
    bool periodic() const { return periodic_; }
    const SymbolSpec& left() const { return *a_; }
    const SymbolSpec& right() const { return *b_; }

    /// Replace the canonical initial column (shape-checked).
    SymbolSpec with_initial_column(EMatrix column) const {
        check_column(column, factor(first_index()).cols());
        SymbolSpec s = *this;
        s.column_ = std::move(column);
        return s;
    }

    long first_index() const {
        switch (kind_) {
            case Kind::FFamily: return 2;
            case Kind::ScalarAmplify: return a_->first_index();
            case Kind::Tensor:
            case Kind::DirectSum: {
                long fa = a_->first_index(), fb = b_->first_index();
                return fa == fb ? fa : 1;
            }
            default: return 1;
        }
    }

    /// Number of factors, when finite.
    std::optional<std::size_t> factor_count() const {
        switch (kind_) {
            case Kind::Explicit:
                return periodic_ ? std::nullopt : std::make_optional(list_.size());
            case Kind::ScalarAmplify: return a_->factor_count();
            case Kind::Tensor:
            case Kind::DirectSum: {
                auto ca = a_->factor_count(), cb = b_->factor_count();
                if (!ca && !cb) return std::nullopt;
                if (ca && cb) return std::min(*ca, *cb);
                return ca ? ca : cb;
            }
            default: return std::nullopt;
        }
    }

    EMatrix factor(long n) const {
        if (n < first_index())
            throw std::out_of_range("factor: index below the family's range");
        switch (kind_) {
            case Kind::Explicit: {
                std::size_t idx = static_cast<std::size_t>(n - 1);
                if (periodic_) return list_[idx % list_.size()];
                if (idx >= list_.size())
                    throw std::out_of_range("factor: index past the end of the explicit list");
                return list_[idx];
            }
            case Kind::FFamily: {
                EMatrix base(2, 2);
                base(0, 0) = n;
                base(1, 0) = n - 1;
                base(1, 1) = 1;
                EMatrix out = base;
                for (int k = 1; k < power_; ++k) out = kronecker(out, base);
                return out;
            }
            case Kind::KOne: {
                return EMatrix{{1, 0}, {1, 1}};
            }
            case Kind::UHF: {
                Int value(1);
                long i = 1;
                for (const auto& [p, m] : super_.factors()) {
                    if (i > n) break;
                    if (m.is_infinite() || Int(n - i) < m.value()) value *= p;
                    ++i;
                }
                return EMatrix::scalar(value);
            }
            case Kind::F1Extended: {
                // position k = n-1 decodes to the pair (nn, mm), row nn
                // holding nn entries.
                long k = n - 1;
                long nn = 1;
                while (k >= nn) {
                    k -= nn;
                    ++nn;
                }
                long mm = k + 1;
                EMatrix out(2, 2);
                out(0, 0) = nn;
                out(1, 0) = nn - mm;
                out(1, 1) = mm;
                return out;
            }
            case Kind::Tensor: {
                long off = n - first_index();
                return kronecker(a_->factor(a_->first_index() + off),
                                 b_->factor(b_->first_index() + off));
            }
            case Kind::DirectSum: {
                long off = n - first_index();
                return bratteli::direct_sum(a_->factor(a_->first_index() + off),
                                            b_->factor(b_->first_index() + off));
            }
            case Kind::ScalarAmplify: return a_->factor(n);
        }
        throw std::logic_error("factor: unreachable");
    }

    EMatrix factor_at_position(std::size_t k) const {
        return factor(first_index() + static_cast<long>(k));
    }

    EMatrix initial_column() const {
        if (column_) return *column_;
        switch (kind_) {
            case Kind::FFamily: {
                std::vector<Int> ones(std::size_t(1) << power_, Int(1));
                return EMatrix::column(ones);
            }
            case Kind::KOne:
            case Kind::F1Extended: return EMatrix::column({Int(1), Int(1)});
            case Kind::UHF: return EMatrix::scalar(1);
            case Kind::Tensor: return kronecker(a_->initial_column(), b_->initial_column());
            case Kind::DirectSum: {
                std::vector<Int> stacked;
                for (const EMatrix& c : {a_->initial_column(), b_->initial_column()})
                    for (std::size_t i = 0; i < c.rows(); ++i) stacked.push_back(c(i, 0));
                return EMatrix::column(stacked);
            }
            case Kind::ScalarAmplify: {
                EMatrix c = a_->initial_column();
                for (std::size_t i = 0; i < c.rows(); ++i) c(i, 0) *= amplify_;
                return c;
            }
            case Kind::Explicit: break;  // always stored
        }
        throw std::logic_error("initial_column: unreachable");
    }

private:
    explicit SymbolSpec(Kind k) : kind_(k) {}

    static void check_column(const EMatrix& c, std::size_t expected_rows) {
        if (!c.is_column() || c.rows() != expected_rows)
            throw std::invalid_argument("SymbolSpec: initial column shape mismatch");
        for (std::size_t i = 0; i < c.rows(); ++i)
            if (c(i, 0) < 1)
                throw std::invalid_argument("SymbolSpec: initial column must be positive");
    }

    Kind kind_;
    std::vector<EMatrix> list_;
    bool periodic_ = false;
    int power_ = 1;
    SupernaturalNumber super_;
    Int amplify_ = 1;
    std::shared_ptr<const SymbolSpec> a_, b_;
    std::optional<EMatrix> column_;
};

inline FiniteSymbol prefix(const SymbolSpec& spec, std::size_t k) {
    if (auto count = spec.factor_count(); count && k > *count)
        throw std::out_of_range("prefix: fewer factors than requested");
    FiniteSymbol fs;
    fs.initial_column = spec.initial_column();
    fs.factors.reserve(k);
    for (std::size_t i = 0; i < k; ++i) fs.factors.push_back(spec.factor_at_position(i));
    return fs;
}

struct PartialProduct {
    EMatrix column;  // product of the first k factors applied to the initial column
    ShapeVector shape;
};

inline PartialProduct partial_product(const SymbolSpec& spec, std::size_t k) {
    EMatrix col = spec.initial_column();
    for (std::size_t i = 0; i < k; ++i) col = multiply(spec.factor_at_position(i), col);
    std::vector<Int> entries;
    entries.reserve(col.rows());
    for (std::size_t i = 0; i < col.rows(); ++i) entries.push_back(col(i, 0));
    return PartialProduct{col, ShapeVector(std::move(entries))};
}

inline EMatrix product_of(const std::vector<EMatrix>& factors, std::size_t first,
                          std::size_t last_exclusive) {
    EMatrix acc = factors.at(first);
    for (std::size_t i = first + 1; i < last_exclusive; ++i) acc = multiply(factors[i], acc);
    return acc;
}

/// Regroup consecutive factors into blocks; cuts are the 1-based end
/// positions of the blocks and must exhaust the factor list. The total
/// product is unchanged, so the result stays in the same equivalence
/// class.
inline FiniteSymbol telescope(const FiniteSymbol& fs, const std::vector<std::size_t>& cuts) {
    if (fs.factors.empty()) {
        if (!cuts.empty()) throw std::invalid_argument("telescope: cuts on an empty factor list");
        return fs;
    }
    if (cuts.empty() || cuts.back() != fs.factors.size())
        throw std::invalid_argument("telescope: cuts must end at the last factor");
    std::size_t prev = 0;
    FiniteSymbol out;
    out.initial_column = fs.initial_column;
    for (std::size_t cut : cuts) {
        if (cut <= prev || cut > fs.factors.size())
            throw std::invalid_argument("telescope: cuts must be strictly increasing positions");
        out.factors.push_back(product_of(fs.factors, prev, cut));
        prev = cut;
    }
    return out;
}

/// Direct sum of two symbols: factorwise block sums over the stacked
/// initial columns (the unit column absorbed into the first block).
inline SymbolSpec dsum_with_unit_column(const SymbolSpec& a, const SymbolSpec& b) {
    return SymbolSpec::direct_sum(a, b);
}

struct ProfileOptions {
    unsigned long prime_bound = 50;  // closed-form "every prime" families truncate here
    std::size_t window = 256;        // factors examined by the enumerative fallback
};

/// Exact triangular profile of a finite symbol: the pair of products
/// of the T-parameters, or nothing if some factor is not T-shaped.
inline std::optional<TriangularPair> triangular_profile(const FiniteSymbol& fs) {
    TriangularPair prof;
    for (const EMatrix& f : fs.factors) {
        auto t = as_triangular(f);
        if (!t) return std::nullopt;
        prof.a *= SupernaturalNumber::from_integer(t->first);
        prof.b *= SupernaturalNumber::from_integer(t->second);
    }
    return prof;
}

/// Enumerative profile: scans a window of factors and extrapolates a
/// prime to infinite multiplicity when its count still grows in the
/// second half of the window. Exact for finite lists; a heuristic for
/// everything else.
inline std::optional<TriangularPair> triangular_profile_enumerative(
    const SymbolSpec& spec, const ProfileOptions& opt = {}) {
    auto count = spec.factor_count();
    std::size_t n = count ? std::min(*count, opt.window) : opt.window;
    TriangularPair first_half, second_half;
    for (std::size_t i = 0; i < n; ++i) {
        auto t = as_triangular(spec.factor_at_position(i));
        if (!t) return std::nullopt;
        TriangularPair& acc = (i < n / 2) ? first_half : second_half;
        acc.a *= SupernaturalNumber::from_integer(t->first);
        acc.b *= SupernaturalNumber::from_integer(t->second);
    }
    if (count && *count <= opt.window) {  // exhaustive: exact
        second_half.a *= first_half.a;
        second_half.b *= first_half.b;
        return second_half;
    }
    TriangularPair out;
    auto extrapolate = [](const SupernaturalNumber& lo, const SupernaturalNumber& hi,
                          SupernaturalNumber& dst) {
        SupernaturalNumber total = lo * hi;
        for (const auto& [p, m] : total.factors()) {
            bool recurs = !lo.multiplicity(p).is_zero() && !hi.multiplicity(p).is_zero();
            dst.set(p, recurs ? ExtNat::infinity() : m);
        }
    };
    extrapolate(first_half.a, second_half.a, out.a);
    extrapolate(first_half.b, second_half.b, out.b);
    return out;
}

/// Triangular profile of a symbol spec. Built-in families use closed
/// forms; explicit and combinator specs fall back to the enumerative
/// scan.
inline std::optional<TriangularPair> triangular_profile(const SymbolSpec& spec,
                                                        const ProfileOptions& opt = {}) {
    using Kind = SymbolSpec::Kind;
    switch (spec.kind()) {
        case Kind::FFamily:
            if (spec.tensor_power() != 1) return std::nullopt;
            return TriangularPair{SupernaturalNumber::universal(opt.prime_bound),
                                  SupernaturalNumber::one()};
        case Kind::F1Extended:
            return TriangularPair{SupernaturalNumber::universal(opt.prime_bound),
                                  SupernaturalNumber::universal(opt.prime_bound)};
        case Kind::KOne:
        case Kind::UHF: return std::nullopt;
        case Kind::ScalarAmplify: return triangular_profile(spec.left(), opt);
        case Kind::Explicit:
            if (!spec.periodic()) return triangular_profile(prefix(spec, spec.factor_list().size()));
            [[fallthrough]];
        case Kind::Tensor:
        case Kind::DirectSum: return triangular_profile_enumerative(spec, opt);
    }
    return std::nullopt;
}

}  // namespace bratteli
