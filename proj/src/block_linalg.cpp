#include "burgers2d/block_linalg.hpp"

#include <cmath>
#include <string>

namespace burgers2d {

Vec4 operator+(const Vec4& a, const Vec4& b) {
    Vec4 r;
    for (int i = 0; i < 4; ++i) r[i] = a[i] + b[i];
    return r;
}

Vec4 operator-(const Vec4& a, const Vec4& b) {
    Vec4 r;
    for (int i = 0; i < 4; ++i) r[i] = a[i] - b[i];
    return r;
}

Vec4 operator*(double s, const Vec4& a) {
    Vec4 r;
    for (int i = 0; i < 4; ++i) r[i] = s * a[i];
    return r;
}

double max_abs(const Vec4& a) {
    double m = 0.0;
    for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(a[i]));
    return m;
}

Mat4 Mat4::identity() {
    Mat4 I;
    for (int i = 0; i < 4; ++i) I(i, i) = 1.0;
    return I;
}

Mat4 operator+(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (int i = 0; i < 16; ++i) r.m[i] = a.m[i] + b.m[i];
    return r;
}

Mat4 operator-(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (int i = 0; i < 16; ++i) r.m[i] = a.m[i] - b.m[i];
    return r;
}

Mat4 operator*(double s, const Mat4& a) {
    Mat4 r;
    for (int i = 0; i < 16; ++i) r.m[i] = s * a.m[i];
    return r;
}

Mat4 operator*(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const double aik = a(i, k);
            for (int j = 0; j < 4; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

Vec4 operator*(const Mat4& a, const Vec4& x) {
    Vec4 r;
    for (int i = 0; i < 4; ++i) {
        double s = 0.0;
        for (int j = 0; j < 4; ++j) s += a(i, j) * x[j];
        r[i] = s;
    }
    return r;
}

namespace detail {

Lu4 lu4(const Mat4& m, int block_index) {
    Lu4 f;
    f.lu = m;
    f.perm = {0, 1, 2, 3};
    double scale = 0.0;
    for (double e : m.m) scale = std::max(scale, std::abs(e));
    const double tol = 1e-14 * scale;
    for (int k = 0; k < 4; ++k) {
        int p = k;
        for (int r = k + 1; r < 4; ++r)
            if (std::abs(f.lu(r, k)) > std::abs(f.lu(p, k))) p = r;
        if (p != k) {
            for (int c = 0; c < 4; ++c) std::swap(f.lu(k, c), f.lu(p, c));
            std::swap(f.perm[k], f.perm[p]);
        }
        const double piv = f.lu(k, k);
        if (!(std::abs(piv) > tol) || !std::isfinite(piv))
            throw SingularBlock(block_index,
                                "singular 4x4 pivot block" +
                                    (block_index >= 0 ? " at block row " + std::to_string(block_index) : std::string()));
        for (int r = k + 1; r < 4; ++r) {
            const double l = f.lu(r, k) / piv;
            f.lu(r, k) = l;
            for (int c = k + 1; c < 4; ++c) f.lu(r, c) -= l * f.lu(k, c);
        }
    }
    return f;
}

Vec4 lu4_solve(const Lu4& f, const Vec4& rhs) {
    Vec4 y;
    for (int i = 0; i < 4; ++i) {
        double s = rhs[f.perm[i]];
        for (int j = 0; j < i; ++j) s -= f.lu(i, j) * y[j];
        y[i] = s;
    }
    Vec4 x;
    for (int i = 3; i >= 0; --i) {
        double s = y[i];
        for (int j = i + 1; j < 4; ++j) s -= f.lu(i, j) * x[j];
        x[i] = s / f.lu(i, i);
    }
    return x;
}

}  // namespace detail

Vec4 dense4_solve(const Mat4& m, const Vec4& rhs) {
    return detail::lu4_solve(detail::lu4(m, -1), rhs);
}

void BlockTridiagFactorization::factor(const BlockTridiagSystem& sys) {
    const size_t k = sys.size();
    if (k == 0 || sys.a.size() != k || sys.c.size() != k || sys.r.size() != k)
        throw std::invalid_argument("BlockTridiagFactorization: inconsistent system sizes");
    pivots_.clear();
    pivots_.reserve(k);
    w_.assign(k, Mat4{});
    a_ = sys.a;
    Mat4 pivot = sys.b[0];
    for (size_t i = 0; i < k; ++i) {
        if (i > 0) pivot = sys.b[i] - sys.a[i] * w_[i - 1];
        pivots_.push_back(detail::lu4(pivot, static_cast<int>(i)));
        if (i + 1 < k) {
            // w = pivot^{-1} c, column by column through the LU factors
            const Mat4& c = sys.c[i];
            for (int col = 0; col < 4; ++col) {
                Vec4 e;
                for (int r = 0; r < 4; ++r) e[r] = c(r, col);
                const Vec4 x = detail::lu4_solve(pivots_.back(), e);
                for (int r = 0; r < 4; ++r) w_[i](r, col) = x[r];
            }
        }
    }
}

std::vector<Vec4> BlockTridiagFactorization::solve(const std::vector<Vec4>& r) const {
    const size_t k = pivots_.size();
    if (r.size() != k)
        throw std::invalid_argument("BlockTridiagFactorization::solve: rhs size mismatch");
    std::vector<Vec4> z(k);
    z[0] = detail::lu4_solve(pivots_[0], r[0]);
    for (size_t i = 1; i < k; ++i) z[i] = detail::lu4_solve(pivots_[i], r[i] - a_[i] * z[i - 1]);
    for (size_t i = k - 1; i-- > 0;) z[i] = z[i] - w_[i] * z[i + 1];
    return z;
}

std::vector<Vec4> solve_block_tridiag(const BlockTridiagSystem& sys) {
    BlockTridiagFactorization f;
    f.factor(sys);
    return f.solve(sys.r);
}

}  // namespace burgers2d
