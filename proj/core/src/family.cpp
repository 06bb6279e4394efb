#include "siqm/family.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace siqm {

namespace {

// log(cosh(x)) without overflow for large |x|.
double log_cosh(double x) {
    double a = std::fabs(x);
    return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

double sech(double x) { return 1.0 / std::cosh(x); }

std::map<std::string, SuperpotentialFamily>& registry() {
    static std::map<std::string, SuperpotentialFamily> reg = [] {
        std::map<std::string, SuperpotentialFamily> r;
        auto pt = poschl_teller_family();
        auto ho = harmonic_family();
        r.emplace(pt.name, std::move(pt));
        r.emplace(ho.name, std::move(ho));
        return r;
    }();
    return reg;
}

std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

} // namespace

SuperpotentialFamily poschl_teller_family() {
    SuperpotentialFamily fam;
    fam.name = "poschl_teller";
    fam.param_arity = 1;
    fam.W = [](double x, const ParamValue& g) { return g.scalar() * std::tanh(x); };
    fam.dW_dx = [](double x, const ParamValue& g) {
        double s = sech(x);
        return g.scalar() * s * s;
    };
    fam.f = [](const ParamValue& g) { return ParamValue{g.scalar() - 1.0}; };
    fam.c = [](const ParamValue& g) { return 2.0 * g.scalar() + 1.0; };
    fam.antiderivative_W = [](double x, const ParamValue& g) {
        return g.scalar() * log_cosh(x);
    };
    // Level n is bound while the decay exponent g - n + 1 stays positive.
    fam.bound_state_count = [](const ParamValue& g) -> std::optional<long> {
        long n = static_cast<long>(std::ceil(g.scalar() + 1.0)) - 1;
        return n > 0 ? n : 0;
    };
    fam.closed_form_energy = [](long n, const ParamValue& g) {
        double gv = g.scalar();
        double d = gv - static_cast<double>(n) + 1.0;
        return gv * gv - d * d;
    };
    fam.admissible = [](const ParamValue& g) { return g.finite() && g.scalar() > 0.0; };
    fam.domain = DomainInterval{};
    fam.param_map_desc = "g -> g - 1";
    fam.default_box = DomainInterval{-12.0, 12.0};
    fam.default_points = 2401;
    return fam;
}

SuperpotentialFamily harmonic_family() {
    SuperpotentialFamily fam;
    fam.name = "harmonic";
    fam.param_arity = 1;
    fam.W = [](double x, const ParamValue& g) { return g.scalar() * x; };
    fam.dW_dx = [](double, const ParamValue& g) { return g.scalar(); };
    fam.f = [](const ParamValue& g) { return g; };
    fam.c = [](const ParamValue& g) { return 2.0 * g.scalar(); };
    fam.antiderivative_W = [](double x, const ParamValue& g) {
        return 0.5 * g.scalar() * x * x;
    };
    fam.bound_state_count = [](const ParamValue&) -> std::optional<long> {
        return std::nullopt;
    };
    fam.closed_form_energy = [](long n, const ParamValue& g) {
        return 2.0 * g.scalar() * static_cast<double>(n - 1);
    };
    fam.admissible = [](const ParamValue& g) { return g.finite() && g.scalar() > 0.0; };
    fam.domain = DomainInterval{};
    fam.param_map_desc = "omega -> omega";
    fam.default_box = DomainInterval{-10.0, 10.0};
    fam.default_points = 2001;
    return fam;
}

const SuperpotentialFamily& lookup(const std::string& name) {
    std::lock_guard lock(registry_mutex());
    auto& reg = registry();
    auto it = reg.find(name);
    if (it == reg.end()) throw UnknownFamily(name);
    return it->second;
}

std::vector<std::string> registered_family_names() {
    std::lock_guard lock(registry_mutex());
    std::vector<std::string> names;
    for (const auto& [name, fam] : registry()) names.push_back(name);
    return names;
}

void register_family(SuperpotentialFamily family) {
    std::lock_guard lock(registry_mutex());
    auto name = family.name;
    registry().insert_or_assign(name, std::move(family));
}

double kappa(const SuperpotentialFamily& family, const ParamValue& g) {
    family.check_arity(g);
    return family.c(family.f(g));
}

double shape_invariance_residual(const SuperpotentialFamily& family, const ParamValue& g,
                                 std::span<const double> sample_points) {
    family.check_arity(g);
    const ParamValue g2 = family.f(g);
    const double c2 = family.c(g2);
    double worst = 0.0;
    for (double x : sample_points) {
        double w1 = family.W(x, g);
        double w2 = family.W(x, g2);
        double lhs = w1 * w1 + family.dW_dx(x, g);
        double rhs = w2 * w2 - family.dW_dx(x, g2) + c2;
        worst = std::max(worst, std::fabs(lhs - rhs));
    }
    return worst;
}

} // namespace siqm
