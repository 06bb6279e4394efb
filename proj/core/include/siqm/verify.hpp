#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "siqm/multisector.hpp"

namespace siqm {

inline constexpr const char* kStructural = "structural-exact";
inline constexpr const char* kDiscretizationLimited = "discretization-limited";

struct IdentityResult {
    std::string name;
    std::string classification;   // kStructural or kDiscretizationLimited
    double residual = 0.0;        // structural: relative matrix norm;
                                  // discretization-limited: coarse-grid sup residual
    bool pass = false;
    std::optional<double> residual_fine;  // refined-grid residual
    std::optional<double> ratio_min;      // per-test-vector coarse/fine ratios
    std::optional<double> ratio_max;
    std::string note;
};

struct AlgebraReport {
    std::vector<IdentityResult> identities;

    bool all_pass() const;
    const IdentityResult& find(const std::string& name) const;
};

struct VerifyOptions {
    int n_test_vectors = 10;
    std::uint64_t seed = 42;
    double structural_tol = 1e-12;
    /// Accepted residual-decay window under exact h-halving (O(h^2) => ~4).
    double ratio_lo = 3.2;
    double ratio_hi = 4.8;
};

/// Evaluates the superalgebra and shift-operator identities on the model.
/// Structural identities are matrix algebra over transposes and diagonals and
/// must hold at the structural tolerance; discretization-limited ones are
/// evaluated on seeded smooth test vectors on this grid and on an internally
/// built half-spacing model, and must decay within the ratio window.
AlgebraReport verify_superalgebra(const MultiSectorModel& model, const VerifyOptions& opts = {});

/// JSON rendering of the report (identity name, classification, residuals,
/// ratios, pass flags).
std::string algebra_report_to_json(const AlgebraReport& report, int indent = 2);

} // namespace siqm
