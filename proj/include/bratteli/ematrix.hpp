#pragma once

#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bratteli/extnat.hpp"

namespace bratteli {

/// Matrix of partial-embedding multiplicities: non-negative exact
/// integers, row-major. Values are plain data; admissibility (no zero
/// row or column) is a predicate, not a constructor invariant, because
/// non-unital embeddings legitimately carry zero rows.
class EMatrix {
public:
    EMatrix() : rows_(0), cols_(0) {}

    EMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols, Int(0)) {}

    EMatrix(std::initializer_list<std::initializer_list<long>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        e_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw std::invalid_argument("EMatrix: ragged rows");
            for (long v : r) {
                if (v < 0) throw std::invalid_argument("EMatrix: negative entry");
                e_.emplace_back(v);
            }
        }
    }

    static EMatrix from_rows(const std::vector<std::vector<Int>>& rows) {
        EMatrix m;
        m.rows_ = rows.size();
        m.cols_ = rows.empty() ? 0 : rows.front().size();
        m.e_.reserve(m.rows_ * m.cols_);
        for (const auto& r : rows) {
            if (r.size() != m.cols_) throw std::invalid_argument("EMatrix: ragged rows");
            for (const Int& v : r) {
                if (v < 0) throw std::invalid_argument("EMatrix: negative entry");
                m.e_.push_back(v);
            }
        }
        return m;
    }

    static EMatrix identity(std::size_t n) {
        EMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static EMatrix column(const std::vector<Int>& entries) {
        EMatrix m(entries.size(), 1);
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (entries[i] < 0) throw std::invalid_argument("EMatrix: negative entry");
            m(i, 0) = entries[i];
        }
        return m;
    }

    static EMatrix scalar(Int v) {
        EMatrix m(1, 1);
        if (v < 0) throw std::invalid_argument("EMatrix: negative entry");
        m(0, 0) = std::move(v);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 && cols_ == 0; }

    const Int& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    Int& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }

    bool is_column() const { return cols_ == 1; }
    bool is_square() const { return rows_ == cols_; }

    friend bool operator==(const EMatrix& a, const EMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

    std::string str() const {
        std::ostringstream os;
        os << "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            os << (i ? ",[" : "[");
            for (std::size_t j = 0; j < cols_; ++j)
                os << (j ? "," : "") << (*this)(i, j).get_str();
            os << "]";
        }
        os << "]";
        return os.str();
    }

private:
    std::size_t rows_, cols_;
    std::vector<Int> e_;
};

/// Vector of matrix-block sizes; entries are strictly positive.
class ShapeVector {
public:
    ShapeVector() = default;
    explicit ShapeVector(std::vector<Int> entries) : v_(std::move(entries)) {
        for (const Int& x : v_)
            if (x < 1) throw std::invalid_argument("ShapeVector: entries must be >= 1");
    }
    ShapeVector(std::initializer_list<long> entries) {
        for (long x : entries) {
            if (x < 1) throw std::invalid_argument("ShapeVector: entries must be >= 1");
            v_.emplace_back(x);
        }
    }

    std::size_t size() const { return v_.size(); }
    const Int& operator[](std::size_t i) const { return v_[i]; }
    const std::vector<Int>& entries() const { return v_; }

    friend bool operator==(const ShapeVector& a, const ShapeVector& b) { return a.v_ == b.v_; }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < v_.size(); ++i) s += (i ? "," : "") + v_[i].get_str();
        return s + ")";
    }

private:
    std::vector<Int> v_;
};

/// Per-summand representation dimensions, each finite or infinite.
class DimVector {
public:
    DimVector() = default;
    explicit DimVector(std::vector<ExtNat> entries) : v_(std::move(entries)) {}
    DimVector(std::initializer_list<ExtNat> entries) : v_(entries) {}

    std::size_t size() const { return v_.size(); }
    const ExtNat& operator[](std::size_t i) const { return v_[i]; }
    const std::vector<ExtNat>& entries() const { return v_; }

    friend bool operator==(const DimVector& a, const DimVector& b) { return a.v_ == b.v_; }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < v_.size(); ++i) s += (i ? "," : "") + v_[i].str();
        return s + ")";
    }

private:
    std::vector<ExtNat> v_;
};

/// True when every row and every column carries a positive entry.
inline bool admissible(const EMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        bool any = false;
        for (std::size_t j = 0; j < m.cols() && !any; ++j) any = m(i, j) > 0;
        if (!any) return false;
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
        bool any = false;
        for (std::size_t i = 0; i < m.rows() && !any; ++i) any = m(i, j) > 0;
        if (!any) return false;
    }
    return true;
}

inline EMatrix multiply(const EMatrix& a, const EMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("multiply: inner dimensions " + std::to_string(a.cols()) +
                                    " vs " + std::to_string(b.rows()));
    EMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Int& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (b(k, j) != 0) c(i, j) += aik * b(k, j);
        }
    return c;
}

/// Tensor product with index law C[(i,r),(j,s)] = A[i][j] * B[r][s],
/// rows and columns ordered lexicographically in (outer, inner).
inline EMatrix kronecker(const EMatrix& a, const EMatrix& b) {
    EMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) == 0) continue;
            for (std::size_t r = 0; r < b.rows(); ++r)
                for (std::size_t s = 0; s < b.cols(); ++s)
                    if (b(r, s) != 0) c(i * b.rows() + r, j * b.cols() + s) = a(i, j) * b(r, s);
        }
    return c;
}

inline EMatrix direct_sum(const EMatrix& a, const EMatrix& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    EMatrix c(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, a.cols() + j) = b(i, j);
    return c;
}

inline Int max_entry(const EMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) throw std::invalid_argument("max_entry: empty matrix");
    Int best = m(0, 0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) > best) best = m(i, j);
    return best;
}

/// Exact rank via Bareiss fraction-free elimination; no floating point.
inline std::size_t rank_over_rationals(const EMatrix& m) {
    const std::size_t nr = m.rows(), nc = m.cols();
    std::vector<std::vector<Int>> a(nr, std::vector<Int>(nc));
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) a[i][j] = m(i, j);

    std::size_t rank = 0;
    Int prev(1);
    for (std::size_t c = 0; c < nc && rank < nr; ++c) {
        std::size_t piv = rank;
        while (piv < nr && a[piv][c] == 0) ++piv;
        if (piv == nr) continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t i = rank + 1; i < nr; ++i) {
            for (std::size_t j = c + 1; j < nc; ++j) {
                Int num = a[rank][c] * a[i][j] - a[i][c] * a[rank][j];
                mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[rank][c];
        ++rank;
    }
    return rank;
}

/// Shape propagation p' = E * p down a diagram level.
inline ShapeVector apply_to_shape(const EMatrix& e, const ShapeVector& p) {
    if (e.cols() != p.size())
        throw std::invalid_argument("apply_to_shape: shape mismatch");
    std::vector<Int> out(e.rows(), Int(0));
    for (std::size_t i = 0; i < e.rows(); ++i)
        for (std::size_t j = 0; j < e.cols(); ++j) out[i] += e(i, j) * p[j];
    return ShapeVector(std::move(out));
}

/// Dimension propagation q_prev^T = q_next^T * E over the extended
/// naturals (a + inf = inf, inf * 0 = 0).
inline DimVector propagate_dim(const EMatrix& e, const DimVector& q_next) {
    if (q_next.size() != e.rows())
        throw std::invalid_argument("propagate_dim: shape mismatch");
    std::vector<ExtNat> out(e.cols(), ExtNat(0));
    for (std::size_t j = 0; j < e.cols(); ++j)
        for (std::size_t i = 0; i < e.rows(); ++i) out[j] += q_next[i] * ExtNat(e(i, j));
    return DimVector(std::move(out));
}

}  // namespace bratteli
