#include "siqm/banded.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace siqm {

BandedMatrix::BandedMatrix(int n, int bandwidth) : n_(n), bw_(bandwidth) {
    if (n <= 0) throw std::invalid_argument("banded matrix size must be positive");
    if (bandwidth < 0 || bandwidth >= n)
        throw std::invalid_argument("bandwidth must lie in [0, n)");
    d_.assign(static_cast<std::size_t>(2 * bw_ + 1) * n_, 0.0);
}

BandedMatrix BandedMatrix::identity(int n, double scale) {
    BandedMatrix m(n, 0);
    for (int i = 0; i < n; ++i) m.set(i, i, scale);
    return m;
}

double BandedMatrix::get(int i, int j) const {
    assert(i >= 0 && i < n_ && j >= 0 && j < n_);
    int k = j - i;
    if (k < -bw_ || k > bw_) return 0.0;
    return *slot(i, k);
}

void BandedMatrix::set(int i, int j, double v) {
    assert(i >= 0 && i < n_ && j >= 0 && j < n_);
    int k = j - i;
    if (k < -bw_ || k > bw_) throw std::out_of_range("entry outside band");
    *slot(i, k) = v;
}

std::span<const double> BandedMatrix::diagonal(int k) const {
    if (k < -bw_ || k > bw_) throw std::out_of_range("no such diagonal");
    return {slot(0, k), static_cast<std::size_t>(n_)};
}

std::span<double> BandedMatrix::diagonal(int k) {
    if (k < -bw_ || k > bw_) throw std::out_of_range("no such diagonal");
    return {slot(0, k), static_cast<std::size_t>(n_)};
}

BandedMatrix BandedMatrix::transpose() const {
    BandedMatrix t(n_, bw_);
    for (int k = -bw_; k <= bw_; ++k) {
        // T(i, i+k) = M(i+k, i), valid where both indices are in range.
        for (int i = std::max(0, -k); i < std::min(n_, n_ - k); ++i)
            *t.slot(i, k) = *slot(i + k, -k);
    }
    return t;
}

bool BandedMatrix::is_symmetric() const {
    for (int k = 1; k <= bw_; ++k)
        for (int i = 0; i < n_ - k; ++i)
            if (*slot(i, k) != *slot(i + k, -k)) return false;
    return true;
}

std::vector<double> BandedMatrix::apply(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != n_)
        throw std::invalid_argument("vector length does not match matrix size");
    std::vector<double> y(n_, 0.0);
    for (int i = 0; i < n_; ++i) {
        double acc = 0.0;
        int klo = std::max(-bw_, -i);
        int khi = std::min(bw_, n_ - 1 - i);
        for (int k = klo; k <= khi; ++k) acc += *slot(i, k) * x[i + k];
        y[i] = acc;
    }
    return y;
}

BandedMatrix& BandedMatrix::add_scaled_identity(double s) {
    for (int i = 0; i < n_; ++i) *slot(i, 0) += s;
    return *this;
}

BandedMatrix& BandedMatrix::operator*=(double s) {
    for (double& v : d_) v *= s;
    return *this;
}

double BandedMatrix::max_abs() const {
    double m = 0.0;
    for (int k = -bw_; k <= bw_; ++k)
        for (int i = std::max(0, -k); i < std::min(n_, n_ - k); ++i)
            m = std::max(m, std::fabs(*slot(i, k)));
    return m;
}

BandedMatrix multiply(const BandedMatrix& a, const BandedMatrix& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("size mismatch in banded multiply");
    const int n = a.n_;
    const int bwc = std::min(a.bw_ + b.bw_, n - 1);
    BandedMatrix c(n, bwc);
    for (int i = 0; i < n; ++i) {
        for (int kc = std::max(-bwc, -i); kc <= std::min(bwc, n - 1 - i); ++kc) {
            const int j = i + kc;
            double acc = 0.0;
            int lo = std::max({-a.bw_, -i, kc - b.bw_});
            int hi = std::min({a.bw_, n - 1 - i, kc + b.bw_});
            for (int ka = lo; ka <= hi; ++ka) {
                const int r = i + ka;
                acc += *a.slot(i, ka) * *b.slot(r, j - r);
            }
            *c.slot(i, kc) = acc;
        }
    }
    return c;
}

BandedMatrix add(const BandedMatrix& a, const BandedMatrix& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("size mismatch in banded add");
    const int n = a.n_;
    const int bw = std::max(a.bw_, b.bw_);
    BandedMatrix c(n, bw);
    for (int k = -bw; k <= bw; ++k)
        for (int i = std::max(0, -k); i < std::min(n, n - k); ++i) {
            double va = (k >= -a.bw_ && k <= a.bw_) ? *a.slot(i, k) : 0.0;
            double vb = (k >= -b.bw_ && k <= b.bw_) ? *b.slot(i, k) : 0.0;
            *c.slot(i, k) = va + vb;
        }
    return c;
}

BandedMatrix subtract(const BandedMatrix& a, const BandedMatrix& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("size mismatch in banded subtract");
    const int n = a.n_;
    const int bw = std::max(a.bw_, b.bw_);
    BandedMatrix c(n, bw);
    for (int k = -bw; k <= bw; ++k)
        for (int i = std::max(0, -k); i < std::min(n, n - k); ++i) {
            double va = (k >= -a.bw_ && k <= a.bw_) ? *a.slot(i, k) : 0.0;
            double vb = (k >= -b.bw_ && k <= b.bw_) ? *b.slot(i, k) : 0.0;
            *c.slot(i, k) = va - vb;
        }
    return c;
}

} // namespace siqm
