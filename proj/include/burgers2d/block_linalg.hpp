#pragma once

#include <array>
#include <vector>

#include "burgers2d/errors.hpp"

namespace burgers2d {

struct Vec4 {
    std::array<double, 4> v{};

    double& operator[](int i) { return v[i]; }
    double operator[](int i) const { return v[i]; }
};

Vec4 operator+(const Vec4& a, const Vec4& b);
Vec4 operator-(const Vec4& a, const Vec4& b);
Vec4 operator*(double s, const Vec4& a);
double max_abs(const Vec4& a);

/// Dense 4x4 block, row-major.
struct Mat4 {
    std::array<double, 16> m{};

    double& operator()(int r, int c) { return m[4 * r + c]; }
    double operator()(int r, int c) const { return m[4 * r + c]; }

    static Mat4 identity();
    static Mat4 zero() { return Mat4{}; }
};

Mat4 operator+(const Mat4& a, const Mat4& b);
Mat4 operator-(const Mat4& a, const Mat4& b);
Mat4 operator*(double s, const Mat4& a);
Mat4 operator*(const Mat4& a, const Mat4& b);
Vec4 operator*(const Mat4& a, const Vec4& x);

/// Solve m x = rhs by LU with row partial pivoting. Throws SingularBlock when
/// a pivot falls below 1e-14 relative to the largest entry of m.
Vec4 dense4_solve(const Mat4& m, const Vec4& rhs);

/// Block tridiagonal system with 4x4 blocks: a[i] d[i-1] + b[i] d[i] + c[i] d[i+1] = r[i].
/// a[0] and c[K-1] are ignored.
struct BlockTridiagSystem {
    std::vector<Mat4> a, b, c;
    std::vector<Vec4> r;

    size_t size() const { return b.size(); }
    void resize(size_t k) {
        a.assign(k, Mat4{});
        b.assign(k, Mat4{});
        c.assign(k, Mat4{});
        r.assign(k, Vec4{});
    }
};

namespace detail {

struct Lu4 {
    Mat4 lu;
    std::array<int, 4> perm;
};

Lu4 lu4(const Mat4& m, int block_index);
Vec4 lu4_solve(const Lu4& f, const Vec4& rhs);

}  // namespace detail

/// Block Thomas factorization; reusable for repeated right-hand sides.
/// Pivoting is confined to the dense 4x4 factorizations.
class BlockTridiagFactorization {
public:
    void factor(const BlockTridiagSystem& sys);
    std::vector<Vec4> solve(const std::vector<Vec4>& r) const;

private:
    std::vector<detail::Lu4> pivots_;  // factorizations of the Schur pivot blocks
    std::vector<Mat4> w_;              // pivot^{-1} * c
    std::vector<Mat4> a_;              // sub-diagonal, kept for forward elimination
};

std::vector<Vec4> solve_block_tridiag(const BlockTridiagSystem& sys);

}  // namespace burgers2d
