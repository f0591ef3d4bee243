#pragma once

#include <algorithm>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <sstream>

#include "crn/rational.hpp"

namespace crn {

// Dense exact-rational matrix, row major. Sized for desk-scale networks;
// no sparse storage.
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

    Mat(std::initializer_list<std::initializer_list<long long>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        a_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw std::invalid_argument("ragged initializer");
            for (long long v : r) a_.emplace_back(v);
        }
    }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    RatVec row(std::size_t i) const {
        return RatVec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
    }
    RatVec col(std::size_t j) const {
        RatVec c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }
    void set_row(std::size_t i, const RatVec& r) {
        if (r.size() != cols_) throw std::invalid_argument("set_row: length mismatch");
        std::copy(r.begin(), r.end(), a_.begin() + i * cols_);
    }
    void set_col(std::size_t j, const RatVec& c) {
        if (c.size() != rows_) throw std::invalid_argument("set_col: length mismatch");
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
    }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const {
        return std::all_of(a_.begin(), a_.end(), [](const Rational& q) { return q == 0; });
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matmul: dimension mismatch");
        Mat c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rational& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend RatVec operator*(const Mat& a, const RatVec& x) {
        if (a.cols_ != x.size()) throw std::invalid_argument("matvec: dimension mismatch");
        RatVec y(a.rows_, Rational(0));
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j)
                if (a(i, j) != 0) y[i] += a(i, j) * x[j];
        return y;
    }

    friend Mat operator-(const Mat& a, const Mat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("sub: dimension mismatch");
        Mat c(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] - b.a_[i];
        return c;
    }

    friend Mat operator-(const Mat& a) {
        Mat c(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = -a.a_[i];
        return c;
    }

    std::string str() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < rows_; ++i) {
            os << (i ? "\n" : "") << "[";
            for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
            os << "]";
        }
        return os.str();
    }

private:
    std::size_t rows_, cols_;
    std::vector<Rational> a_;
};

namespace detail {

// Row-scales to an all-integer matrix; row scaling leaves rank and the right
// null space unchanged.
inline std::vector<std::vector<Int>> integerize_rows(const Mat& m) {
    std::vector<std::vector<Int>> z(m.rows(), std::vector<Int>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) l = lcm(l, rat_den(m(i, j)));
        for (std::size_t j = 0; j < m.cols(); ++j)
            z[i][j] = rat_num(m(i, j)) * (l / rat_den(m(i, j)));
    }
    return z;
}

}  // namespace detail

// Exact rank by fraction-free (Bareiss) elimination on a row-integerized copy.
inline std::size_t rank(const Mat& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    auto a = detail::integerize_rows(m);
    const std::size_t nr = m.rows(), nc = m.cols();
    std::size_t r = 0;
    Int prev = 1;
    for (std::size_t c = 0; c < nc && r < nr; ++c) {
        std::size_t p = r;
        while (p < nr && a[p][c] == 0) ++p;
        if (p == nr) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < nr; ++i) {
            for (std::size_t j = c + 1; j < nc; ++j)
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

namespace detail {

// Gauss-Jordan to reduced row echelon form; returns pivot column per pivot row.
inline std::vector<std::size_t> rref_in_place(Mat& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        Rational inv = Rational(1) / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace detail

// Basis of {x : M x = 0}, each vector scaled primitive with positive leading
// entry. Empty result means the kernel is trivial.
inline std::vector<RatVec> kernel_basis(const Mat& m) {
    Mat r = m;
    auto pivots = detail::rref_in_place(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        RatVec v(m.cols(), Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, f);
        basis.push_back(primitive_ray(v));
    }
    return basis;
}

// Pivot columns of M, i.e. indices of a column-space basis.
inline std::vector<std::size_t> pivot_columns(const Mat& m) {
    Mat r = m;
    return detail::rref_in_place(r);
}

// Unique solution of A x = b for A with full column rank; nullopt if
// inconsistent. Throws if A is column-rank deficient.
inline std::optional<RatVec> solve(const Mat& a, const RatVec& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve: rhs length mismatch");
    Mat aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    auto pivots = detail::rref_in_place(aug);
    bool rhs_pivot = !pivots.empty() && pivots.back() == a.cols();
    std::size_t rank_a = pivots.size() - (rhs_pivot ? 1 : 0);
    if (rank_a < a.cols()) throw std::invalid_argument("solve: matrix is column-rank deficient");
    if (rhs_pivot) return std::nullopt;
    RatVec x(a.cols());
    for (std::size_t i = 0; i < a.cols(); ++i) x[i] = aug(i, a.cols());
    return x;
}

// Left inverse (AᵀA)⁻¹Aᵀ of a full-column-rank matrix.
inline Mat left_inverse(const Mat& a) {
    Mat g = a.transpose() * a;  // r x r, invertible iff rank(a) == cols
    Mat aug(g.rows(), g.cols() + a.rows());
    for (std::size_t i = 0; i < g.rows(); ++i) {
        for (std::size_t j = 0; j < g.cols(); ++j) aug(i, j) = g(i, j);
        for (std::size_t j = 0; j < a.rows(); ++j) aug(i, g.cols() + j) = a(j, i);
    }
    auto pivots = detail::rref_in_place(aug);
    if (pivots.size() < g.rows() || pivots[g.rows() - 1] >= g.cols())
        throw std::invalid_argument("left_inverse: matrix is column-rank deficient");
    Mat li(g.rows(), a.rows());
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < a.rows(); ++j) li(i, j) = aug(i, g.cols() + j);
    return li;
}

// Qualitative (sign) classes.
struct SignPattern {
    std::size_t rows = 0, cols = 0;
    std::vector<int> s;  // entries in {-1, 0, +1}

    int operator()(std::size_t i, std::size_t j) const { return s[i * cols + j]; }
};

inline SignPattern sign_pattern(const Mat& m) {
    SignPattern p{m.rows(), m.cols(), {}};
    p.s.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) p.s.push_back(rat_sign(m(i, j)));
    return p;
}

namespace detail {
inline void check_dims(const Mat& x, const SignPattern& p) {
    if (x.rows() != p.rows || x.cols() != p.cols)
        throw std::invalid_argument("sign-class test: dimension mismatch");
}
}  // namespace detail

// X in Q0(P): signs may weaken to zero, pattern-zeros must stay zero.
inline bool in_Q0(const Mat& x, const SignPattern& p) {
    detail::check_dims(x, p);
    for (std::size_t i = 0; i < p.rows; ++i)
        for (std::size_t j = 0; j < p.cols; ++j) {
            int s = p(i, j);
            const Rational& v = x(i, j);
            if (s > 0 && v < 0) return false;
            if (s < 0 && v > 0) return false;
            if (s == 0 && v != 0) return false;
        }
    return true;
}

// X in Q(P): strict sign agreement everywhere.
inline bool in_Q(const Mat& x, const SignPattern& p) {
    detail::check_dims(x, p);
    for (std::size_t i = 0; i < p.rows; ++i)
        for (std::size_t j = 0; j < p.cols; ++j)
            if (rat_sign(x(i, j)) != p(i, j)) return false;
    return true;
}

// X in Q1(P): like Q0 but pattern-zeros are unconstrained.
inline bool in_Q1(const Mat& x, const SignPattern& p) {
    detail::check_dims(x, p);
    for (std::size_t i = 0; i < p.rows; ++i)
        for (std::size_t j = 0; j < p.cols; ++j) {
            int s = p(i, j);
            const Rational& v = x(i, j);
            if (s > 0 && v < 0) return false;
            if (s < 0 && v > 0) return false;
        }
    return true;
}

inline std::ostream& operator<<(std::ostream& os, const Mat& m) { return os << m.str(); }

}  // namespace crn
