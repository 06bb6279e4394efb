#pragma once

#include <span>
#include <vector>

namespace siqm {

/// Real square matrix with entries confined to |i - j| <= bandwidth,
/// stored by diagonals.  Transposition is an exact (bitwise) operation,
/// which the algebraic identity checks rely on.
class BandedMatrix {
public:
    BandedMatrix(int n, int bandwidth);

    static BandedMatrix identity(int n, double scale = 1.0);

    int size() const { return n_; }
    int bandwidth() const { return bw_; }

    /// Entry (i, j); returns 0 outside the band.
    double get(int i, int j) const;
    /// Mutable access; (i, j) must lie inside the band.
    void set(int i, int j, double v);

    BandedMatrix transpose() const;
    bool is_symmetric() const;   // exact comparison

    std::vector<double> apply(std::span<const double> x) const;

    BandedMatrix& add_scaled_identity(double s);
    BandedMatrix& operator*=(double s);

    double max_abs() const;

    /// Diagonal k (k = j - i), as a span of length n; index i addresses entry (i, i+k).
    std::span<const double> diagonal(int k) const;
    std::span<double> diagonal(int k);

    friend BandedMatrix multiply(const BandedMatrix& a, const BandedMatrix& b);
    friend BandedMatrix add(const BandedMatrix& a, const BandedMatrix& b);
    friend BandedMatrix subtract(const BandedMatrix& a, const BandedMatrix& b);

private:
    int n_;
    int bw_;
    std::vector<double> d_;  // (2*bw+1) diagonals, each of length n

    double* slot(int i, int k) { return &d_[static_cast<std::size_t>(k + bw_) * n_ + i]; }
    const double* slot(int i, int k) const {
        return &d_[static_cast<std::size_t>(k + bw_) * n_ + i];
    }
};

BandedMatrix multiply(const BandedMatrix& a, const BandedMatrix& b);
BandedMatrix add(const BandedMatrix& a, const BandedMatrix& b);
BandedMatrix subtract(const BandedMatrix& a, const BandedMatrix& b);

} // namespace siqm
