#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "bratteli/ematrix.hpp"

namespace bratteli {

/// Dense matrix of exact rationals.
class RationalMatrix {
public:
    RationalMatrix() : rows_(0), cols_(0) {}
    RationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols, Rat(0)) {}

    static RationalMatrix identity(std::size_t n) {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const Rat& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    Rat& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }

    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

    RationalMatrix transpose() const {
        RationalMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Adjoint; real rational entries, so just the transpose.
    RationalMatrix adjoint() const { return transpose(); }

private:
    std::size_t rows_, cols_;
    std::vector<Rat> e_;
};

inline RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("multiply: inner dimensions");
    RationalMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Rat& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (b(k, j) != 0) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline RationalMatrix add(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("add: shape mismatch");
    RationalMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

inline RationalMatrix subtract(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("subtract: shape mismatch");
    RationalMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

inline RationalMatrix scale(const Rat& s, const RationalMatrix& a) {
    RationalMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
    return c;
}

inline RationalMatrix power(const RationalMatrix& a, std::size_t k) {
    RationalMatrix acc = RationalMatrix::identity(a.rows());
    for (std::size_t i = 0; i < k; ++i) acc = multiply(acc, a);
    return acc;
}

inline bool is_zero(const RationalMatrix& a) {
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0) return false;
    return true;
}

/// Exact rank by Gaussian elimination over the rationals.
inline std::size_t rank(RationalMatrix a) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t piv = r;
        while (piv < a.rows() && a(piv, c) == 0) ++piv;
        if (piv == a.rows()) continue;
        if (piv != r)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(r, j));
        for (std::size_t i = r + 1; i < a.rows(); ++i) {
            if (a(i, c) == 0) continue;
            Rat f = a(i, c) / a(r, c);
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
        }
        ++r;
    }
    return r;
}

/// How the shift operator is realized. The difference-operator
/// rewritings are kept only for inspection: the literal one fails the
/// shift group law, the mirrored one coincides with translation.
enum class ShiftConvention {
    Translate,          // (S_h u)(x) = u(x - h)
    DifferenceLiteral,  // 1 - h * D_{1,h}
    DifferenceMirror,   // 1 + h * D_{1,h}
};

struct CheckItem {
    std::string id;
    std::string law;
    bool pass = true;
    std::string counterexample;  // empty when the identity holds
};

struct Report {
    std::vector<CheckItem> items;
    bool all_pass() const {
        for (const auto& it : items)
            if (!it.pass) return false;
        return true;
    }
};

/// Exact model of the generating operators on the space of step
/// functions with r = p*q*s cells, in the orthonormal basis
/// f_j = sqrt(r) * indicator of [j/r, (j+1)/r). Every operator matrix
/// is rational; the sqrt(r) factors cancel in all Gram computations.
class OperatorModel {
public:
    OperatorModel(unsigned p, unsigned q, unsigned s) : p_(p), q_(q), s_(s), r_(p * q * s) {
        if (p < 1 || q < 1) throw std::invalid_argument("OperatorModel: need p,q >= 1");
        if (s < 2) throw std::invalid_argument("OperatorModel: need s >= 2");
    }

    unsigned p() const { return p_; }
    unsigned q() const { return q_; }
    unsigned s() const { return s_; }
    unsigned r() const { return r_; }

    /// Multiplication by the indicator of [i/p', (i+1)/p'); diagonal 0/1.
    RationalMatrix mult_op(long i, unsigned pprime) const {
        require_divides(pprime);
        unsigned cells = r_ / pprime;
        unsigned ii = mod(i, pprime);
        RationalMatrix m(r_, r_);
        for (unsigned j = ii * cells; j < (ii + 1) * cells; ++j) m(j, j) = 1;
        return m;
    }

    /// Cyclic translation by a fine cells: S f_j = f_{j+a mod r}.
    RationalMatrix shift_cells(long a) const {
        unsigned aa = mod(a, r_);
        RationalMatrix m(r_, r_);
        for (unsigned j = 0; j < r_; ++j) m((j + aa) % r_, j) = 1;
        return m;
    }

    RationalMatrix shift_op(const Rat& h, ShiftConvention conv = ShiftConvention::Translate) const {
        long a = cells_of(h);
        switch (conv) {
            case ShiftConvention::Translate: return shift_cells(a);
            case ShiftConvention::DifferenceLiteral:
                // 1 - h * h^{-1}(S_{-h} - 1) = 2 - S_{-h}
                return subtract(scale(2, RationalMatrix::identity(r_)), shift_cells(-a));
            case ShiftConvention::DifferenceMirror:
                // 1 + h * h^{-1}(S_{-h} - 1) = S_{-h}
                return shift_cells(-a);
        }
        throw std::logic_error("shift_op: unreachable");
    }

    /// Integration against the unit interval; every entry is 1/r.
    RationalMatrix integral_op() const {
        RationalMatrix m(r_, r_);
        Rat v(1, static_cast<unsigned long>(r_));
        for (unsigned i = 0; i < r_; ++i)
            for (unsigned j = 0; j < r_; ++j) m(i, j) = v;
        return m;
    }

    /// Forward difference D_h u(x) = h^{-1}(u(x+h) - u(x)) = h^{-1}(S_{-h} - 1).
    RationalMatrix diff_op(const Rat& h) const {
        if (h == 0) throw std::invalid_argument("diff_op: h must be nonzero");
        long a = cells_of(h);
        RationalMatrix d = subtract(shift_cells(-a), RationalMatrix::identity(r_));
        return scale(Rat(1) / h, d);
    }

    struct BasisOps {
        unsigned pprime = 0;
        std::vector<RationalMatrix> a, b;  // row-major over (i,j) in Z_{p'} x Z_{p'}
        const RationalMatrix& A(std::size_t i, std::size_t j) const { return a[i * pprime + j]; }
        const RationalMatrix& B(std::size_t i, std::size_t j) const { return b[i * pprime + j]; }
    };

    /// B_{ij} = p' M_i I M_j and A_{ij} = M_i S_{(i-j)/p'} - B_{ij}.
    /// The A-family is faithful only when r/p' >= 2; at r = p' it
    /// degenerates to zero.
    BasisOps basis_ops(unsigned pprime) const {
        require_divides(pprime);
        BasisOps ops;
        ops.pprime = pprime;
        RationalMatrix integral = integral_op();
        std::vector<RationalMatrix> mult;
        mult.reserve(pprime);
        for (unsigned i = 0; i < pprime; ++i) mult.push_back(mult_op(i, pprime));
        long block = r_ / pprime;
        for (unsigned i = 0; i < pprime; ++i)
            for (unsigned j = 0; j < pprime; ++j) {
                RationalMatrix b =
                    scale(Rat(pprime), multiply(mult[i], multiply(integral, mult[j])));
                RationalMatrix shift = shift_cells((long(i) - long(j)) * block);
                ops.b.push_back(b);
                ops.a.push_back(subtract(multiply(mult[i], shift), b));
            }
        return ops;
    }

    long cells_of(const Rat& h) const {
        Rat scaled = h * Rat(static_cast<unsigned long>(r_));
        if (scaled.get_den() != 1)
            throw std::invalid_argument("shift step is finer than the model resolution");
        if (!scaled.get_num().fits_slong_p())
            throw std::invalid_argument("shift step out of range");
        return scaled.get_num().get_si();
    }

private:
    void require_divides(unsigned pprime) const {
        if (pprime < 1 || r_ % pprime != 0)
            throw std::invalid_argument("block count must divide the model resolution");
    }

    static unsigned mod(long v, unsigned m) {
        long x = v % static_cast<long>(m);
        if (x < 0) x += m;
        return static_cast<unsigned>(x);
    }

    unsigned p_, q_, s_, r_;
};

namespace detail {

inline std::string rat_str(const Rat& v) { return v.get_str(); }

inline void expect_equal(Report& rep, const std::string& id, const std::string& law,
                         const RationalMatrix& lhs, const RationalMatrix& rhs,
                         const std::string& where) {
    for (auto& item : rep.items)
        if (item.id == id) {
            if (!item.pass) return;
            for (std::size_t i = 0; i < lhs.rows(); ++i)
                for (std::size_t j = 0; j < lhs.cols(); ++j)
                    if (lhs(i, j) != rhs(i, j)) {
                        item.pass = false;
                        item.counterexample = where + " entry (" + std::to_string(i) + "," +
                                              std::to_string(j) + "): " + rat_str(lhs(i, j)) +
                                              " vs " + rat_str(rhs(i, j));
                        return;
                    }
            return;
        }
    rep.items.push_back(CheckItem{id, law, true, ""});
    expect_equal(rep, id, law, lhs, rhs, where);
}

}  // namespace detail

/// Exact checks of the elementary operator relations and the
/// matrix-unit laws of the A/B families at block count p'.
inline Report verify_relations(const OperatorModel& m, unsigned pprime) {
    if (m.r() % pprime != 0 || m.r() / pprime < 2)
        throw std::invalid_argument("verify_relations: need p' | r and r/p' >= 2");
    Report rep;
    const unsigned r = m.r();
    const long block = r / pprime;

    std::vector<RationalMatrix> M;
    for (unsigned i = 0; i < pprime; ++i) M.push_back(m.mult_op(i, pprime));
    RationalMatrix integral = m.integral_op();
    RationalMatrix zero(r, r);

    for (unsigned i = 0; i < pprime; ++i) {
        for (unsigned j = 0; j < pprime; ++j) {
            RationalMatrix prod = multiply(M[i], M[j]);
            detail::expect_equal(rep, "mult-orthogonality", "M[i]M[j] == delta(i,j)M[i]", prod,
                                 i == j ? M[i] : zero,
                                 "i=" + std::to_string(i) + " j=" + std::to_string(j));
            RationalMatrix s = m.shift_cells(long(j) * block);
            detail::expect_equal(rep, "shift-multiplier-commutation",
                                 "S[j/p']M[i] == M[i+j]S[j/p']", multiply(s, M[i]),
                                 multiply(m.mult_op(long(i) + long(j), pprime), s),
                                 "i=" + std::to_string(i) + " j=" + std::to_string(j));
        }
        detail::expect_equal(rep, "mult-selfadjoint", "M[i]* == M[i]", M[i].adjoint(), M[i],
                             "i=" + std::to_string(i));
        detail::expect_equal(rep, "integral-compression", "I M[i] I == (1/p') I",
                             multiply(integral, multiply(M[i], integral)),
                             scale(Rat(1, pprime), integral), "i=" + std::to_string(i));
    }

    for (unsigned a = 0; a < r; ++a) {
        RationalMatrix sa = m.shift_cells(a);
        detail::expect_equal(rep, "shift-adjoint", "S[h]* == S[-h]", sa.adjoint(),
                             m.shift_cells(-long(a)), "a=" + std::to_string(a));
        detail::expect_equal(rep, "shift-fixes-integral", "S[h]I == I S[h] == I",
                             multiply(sa, integral), integral, "a=" + std::to_string(a));
        detail::expect_equal(rep, "shift-fixes-integral", "S[h]I == I S[h] == I",
                             multiply(integral, sa), integral, "a=" + std::to_string(a));
        for (unsigned b = 0; b < r; ++b)
            detail::expect_equal(rep, "shift-additivity", "S[a/r]S[b/r] == S[(a+b)/r]",
                                 multiply(sa, m.shift_cells(b)), m.shift_cells(long(a) + long(b)),
                                 "a=" + std::to_string(a) + " b=" + std::to_string(b));
    }

    OperatorModel::BasisOps ops = m.basis_ops(pprime);
    for (unsigned i = 0; i < pprime; ++i)
        for (unsigned j = 0; j < pprime; ++j) {
            detail::expect_equal(rep, "b-adjoint", "B[i][j]* == B[j][i]", ops.B(i, j).adjoint(),
                                 ops.B(j, i), "i=" + std::to_string(i) + " j=" + std::to_string(j));
            detail::expect_equal(rep, "a-adjoint", "A[i][j]* == A[j][i]", ops.A(i, j).adjoint(),
                                 ops.A(j, i), "i=" + std::to_string(i) + " j=" + std::to_string(j));
            for (unsigned n = 0; n < pprime; ++n)
                for (unsigned k = 0; k < pprime; ++k) {
                    std::string where = "i=" + std::to_string(i) + " j=" + std::to_string(j) +
                                        " n=" + std::to_string(n) + " m=" + std::to_string(k);
                    detail::expect_equal(rep, "b-matrix-units",
                                         "B[i][j]B[n][m] == delta(j,n)B[i][m]",
                                         multiply(ops.B(i, j), ops.B(n, k)),
                                         j == n ? ops.B(i, k) : zero, where);
                    detail::expect_equal(rep, "a-matrix-units",
                                         "A[i][j]A[n][m] == delta(j,n)A[i][m]",
                                         multiply(ops.A(i, j), ops.A(n, k)),
                                         j == n ? ops.A(i, k) : zero, where);
                    detail::expect_equal(rep, "ab-orthogonality", "A[i][j]B[n][m] == 0",
                                         multiply(ops.A(i, j), ops.B(n, k)), zero, where);
                }
        }
    return rep;
}

/// Exact reconstruction of the generating operators from the A/B
/// units: integral, identity, multipliers, shifts, and differences all
/// lie in the span.
inline Report verify_membership(const OperatorModel& m, unsigned pprime) {
    if (m.r() % pprime != 0 || m.r() / pprime < 2)
        throw std::invalid_argument("verify_membership: need p' | r and r/p' >= 2");
    Report rep;
    const unsigned r = m.r();
    OperatorModel::BasisOps ops = m.basis_ops(pprime);

    // Summing the block-refinement identity over all coarse indices
    // forces the 1/p' normalization here; the unnormalized sum equals
    // p' I1, not I1.
    RationalMatrix bsum(r, r);
    for (unsigned i = 0; i < pprime; ++i)
        for (unsigned j = 0; j < pprime; ++j) bsum = add(bsum, ops.B(i, j));
    detail::expect_equal(rep, "integral-in-span", "(1/p') sum_ij B[i][j] == I1",
                         scale(Rat(1, pprime), bsum), m.integral_op(), "");

    RationalMatrix built_id(r, r);
    for (unsigned j = 0; j < pprime; ++j)
        built_id = add(built_id, add(ops.A(j, j), ops.B(j, j)));
    detail::expect_equal(rep, "identity-partition", "sum_j M[j] == 1", built_id,
                         RationalMatrix::identity(r), "");

    for (unsigned i = 0; i < pprime; ++i)
        detail::expect_equal(rep, "multiplier-from-units", "M[i] == A[i][i] + B[i][i]",
                             add(ops.A(i, i), ops.B(i, i)), m.mult_op(i, pprime),
                             "i=" + std::to_string(i));

    RationalMatrix built_shift(r, r);
    for (unsigned i = 0; i < pprime; ++i) {
        unsigned prev = (i + pprime - 1) % pprime;
        built_shift = add(built_shift, add(ops.A(i, prev), ops.B(i, prev)));
    }
    long block = r / pprime;
    for (unsigned a = 1; a <= pprime; ++a)
        detail::expect_equal(rep, "shift-from-units",
                             "sum_i(A[i][i-1]+B[i][i-1])^a == S[a/p']", power(built_shift, a),
                             m.shift_cells(long(a) * block), "a=" + std::to_string(a));

    for (unsigned a = 1; a < pprime; ++a) {
        Rat h(a, pprime);
        RationalMatrix lhs = scale(Rat(1) / h, subtract(power(built_shift, pprime - a), built_id));
        detail::expect_equal(rep, "difference-from-shifts",
                             "h^{-1}(S[-h] - 1) == D[h], S and 1 built from units", lhs,
                             m.diff_op(h), "a=" + std::to_string(a));
    }
    return rep;
}

/// Exact check of the refinement identities embedding the block-p'
/// family into the block-p'q' family.
inline Report verify_bemb(const OperatorModel& m, unsigned pprime, unsigned qprime) {
    unsigned fine = pprime * qprime;
    if (m.r() % fine != 0 || m.r() / fine < 2)
        throw std::invalid_argument("verify_bemb: need p'q' | r and r/(p'q') >= 2");
    Report rep;
    OperatorModel::BasisOps coarse = m.basis_ops(pprime);
    OperatorModel::BasisOps refined = m.basis_ops(fine);

    for (unsigned i = 0; i < pprime; ++i)
        for (unsigned j = 0; j < pprime; ++j) {
            std::string where = "i=" + std::to_string(i) + " j=" + std::to_string(j);
            RationalMatrix bsum(m.r(), m.r());
            for (unsigned n = i * qprime; n < (i + 1) * qprime; ++n)
                for (unsigned k = j * qprime; k < (j + 1) * qprime; ++k)
                    bsum = add(bsum, refined.B(n, k));
            bsum = scale(Rat(1, qprime), bsum);
            detail::expect_equal(rep, "integral-block-refinement",
                                 "B'[i][j] == (1/q') sum_nm B[n][m]", coarse.B(i, j), bsum, where);

            RationalMatrix asum(m.r(), m.r());
            for (unsigned n = i * qprime; n < (i + 1) * qprime; ++n) {
                unsigned target = static_cast<unsigned>(
                    (long(n) + (long(j) - long(i)) * long(qprime) + long(fine)) % long(fine));
                asum = add(asum, add(refined.A(n, target), refined.B(n, target)));
            }
            asum = subtract(asum, bsum);
            detail::expect_equal(rep, "shift-block-refinement",
                                 "A'[i][j] == sum_n(A[n][n+(j-i)q'] + B[n][n+(j-i)q']) - B'[i][j]",
                                 coarse.A(i, j), asum, where);
        }
    return rep;
}

/// Embedding matrix of the block-p' family inside the block-p'q'
/// family, read off from ranks of products of central projections of
/// the fine algebra with minimal projections of the coarse one.
/// Requires r = 2 p'q' so that both fine summands are represented with
/// multiplicity one and ranks are multiplicities directly; with the
/// standard call p' = p, q' = q this is exactly the s = 2 restriction.
inline EMatrix extract_e_matrix(const OperatorModel& m, unsigned pprime, unsigned qprime,
                                unsigned proj_a = 0, unsigned proj_b = 0) {
    unsigned fine = pprime * qprime;
    if (m.r() != 2 * fine)
        throw std::invalid_argument(
            "extract_e_matrix: resolution must be exactly twice p'q' (s = 2)");
    if (proj_a >= pprime || proj_b >= pprime)
        throw std::invalid_argument("extract_e_matrix: projection index out of range");

    OperatorModel::BasisOps coarse = m.basis_ops(pprime);
    OperatorModel::BasisOps refined = m.basis_ops(fine);

    RationalMatrix q_b(m.r(), m.r());
    for (unsigned i = 0; i < fine; ++i) q_b = add(q_b, refined.B(i, i));
    RationalMatrix q_a = subtract(RationalMatrix::identity(m.r()), q_b);

    const RationalMatrix& p_a = coarse.A(proj_a, proj_a);
    const RationalMatrix& p_b = coarse.B(proj_b, proj_b);

    EMatrix e(2, 2);
    e(0, 0) = static_cast<long>(rank(multiply(q_a, p_a)));
    e(0, 1) = static_cast<long>(rank(multiply(q_a, p_b)));
    e(1, 0) = static_cast<long>(rank(multiply(q_b, p_a)));
    e(1, 1) = static_cast<long>(rank(multiply(q_b, p_b)));
    return e;
}

}  // namespace bratteli
