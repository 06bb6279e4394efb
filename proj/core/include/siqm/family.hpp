#pragma once

#include <cmath>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "siqm/errors.hpp"

namespace siqm {

/// Ordered tuple of real couplings. Arity is fixed by the owning family.
struct ParamValue {
    std::vector<double> values;

    ParamValue() = default;
    ParamValue(double g) : values{g} {}                      // arity-1 convenience
    ParamValue(std::initializer_list<double> v) : values(v) {}
    explicit ParamValue(std::vector<double> v) : values(std::move(v)) {}

    std::size_t arity() const { return values.size(); }

    /// Single coupling of an arity-1 family.
    double scalar() const {
        if (values.size() != 1) throw ArityMismatch(1, values.size());
        return values[0];
    }

    bool finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

struct DomainInterval {
    double x_min = -std::numeric_limits<double>::infinity();
    double x_max = std::numeric_limits<double>::infinity();
    bool contains(double x) const { return x >= x_min && x <= x_max; }
};

/// A named solvable family: superpotential W(x;g), its spatial derivative,
/// the parameter map f, and the remainder c.  Immutable value object; all
/// callables must be pure.
struct SuperpotentialFamily {
    std::string name;
    int param_arity = 1;

    std::function<double(double, const ParamValue&)> W;
    std::function<double(double, const ParamValue&)> dW_dx;     // analytic, required
    std::function<ParamValue(const ParamValue&)> f;             // g -> next g
    std::function<double(const ParamValue&)> c;                 // remainder

    /// Antiderivative of W in x (optional; enables exact ground-state profiles).
    std::function<double(double, const ParamValue&)> antiderivative_W;

    /// Number of bound states at g; empty optional means unbounded.
    std::function<std::optional<long>(const ParamValue&)> bound_state_count;

    /// Closed-form level energies, kept as a test fixture only.
    std::function<double(long, const ParamValue&)> closed_form_energy;

    /// True when g lies in the set for which the family defines a sector.
    std::function<bool(const ParamValue&)> admissible;

    DomainInterval domain;
    std::string param_map_desc;

    /// Recommended finite box wide enough for the family's bound states.
    DomainInterval default_box;
    int default_points = 2401;

    void check_arity(const ParamValue& g) const {
        if (static_cast<int>(g.arity()) != param_arity)
            throw ArityMismatch(static_cast<std::size_t>(param_arity), g.arity());
    }
};

/// Registry access. Built-ins "poschl_teller" and "harmonic" are always present.
const SuperpotentialFamily& lookup(const std::string& name);
std::vector<std::string> registered_family_names();
void register_family(SuperpotentialFamily family);

SuperpotentialFamily poschl_teller_family();
SuperpotentialFamily harmonic_family();

/// kappa(g) = c(f(g)): the c-number commutator remainder along the orbit.
double kappa(const SuperpotentialFamily& family, const ParamValue& g);

/// Max absolute residual of the pointwise superpotential identity
///   W(x;g)^2 + W'(x;g) = W(x;f(g))^2 - W'(x;f(g)) + c(f(g))
/// over the sample points.  Machine-precision zero for a genuinely
/// shape-invariant family.
double shape_invariance_residual(const SuperpotentialFamily& family, const ParamValue& g,
                                 std::span<const double> sample_points);

} // namespace siqm
