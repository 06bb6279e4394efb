#include "siqm/wavefunction.hpp"

#include <cmath>
#include <stdexcept>

namespace siqm {

Wavefunction::Wavefunction(std::vector<double> v, const Grid& g) : values(std::move(v)), grid(g) {
    if (static_cast<int>(values.size()) != grid.n_points)
        throw std::invalid_argument("wavefunction length does not match grid");
}

Wavefunction Wavefunction::from_samples(std::vector<double> v, const Grid& g) {
    Wavefunction psi(std::move(v), g);
    psi.normalize();
    psi.apply_sign_convention();
    return psi;
}

double Wavefunction::norm() const {
    double s = 0.0;
    for (double v : values) s += v * v;
    return std::sqrt(s * grid.spacing());
}

void Wavefunction::normalize() {
    double nrm = norm();
    if (nrm == 0.0 || !std::isfinite(nrm))
        throw std::invalid_argument("cannot normalize a zero or non-finite vector");
    for (double& v : values) v /= nrm;
}

void Wavefunction::apply_sign_convention() {
    for (double v : values) {
        if (std::fabs(v) > 1e-8) {
            if (v < 0.0)
                for (double& w : values) w = -w;
            return;
        }
    }
}

double Wavefunction::overlap(const Wavefunction& other) const {
    if (values.size() != other.values.size())
        throw std::invalid_argument("overlap: grid mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) s += values[i] * other.values[i];
    return s * grid.spacing();
}

int Wavefunction::node_count(double rel_floor, int margin) const {
    const double floor = rel_floor * max_abs();
    const int n = static_cast<int>(values.size());
    int count = 0;
    int last_sign = 0;
    for (int i = margin; i < n - margin; ++i) {
        double v = values[i];
        if (std::fabs(v) < floor) continue;
        int sign = v > 0.0 ? 1 : -1;
        if (last_sign != 0 && sign != last_sign) ++count;
        last_sign = sign;
    }
    return count;
}

double Wavefunction::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::fabs(v));
    return m;
}

} // namespace siqm
