#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fa/trajectory.hpp"

/// L-layer scalar FA flow θ̇_ℓ = d_ℓ(λ − θ_L⋯θ₁)θ_{ℓ−1}⋯θ₁ with d_L = 1,
/// and its reduction to θ̇₁ = d₁(λ − 𝔎θ₁^γ).
namespace fa::deep {

struct DeepParams {
    int L = 2;
    double lambda = 1.0;
    std::vector<double> d;  // d₁ … d_{L−1}
    double theta1_0 = 0.0;

    /// d_ℓ for ℓ = 1 … L, with the implicit d_L = 1.
    double d_at(int layer) const;
    void validate() const;
};

struct DeepLayerConstants {
    std::vector<double> C;  // C₁ … C_L
    double frak_k;          // ∏ C_ℓ / 2^{ℓ−1}
    int gamma;              // 2^L − 1

    /// Coefficient a_ℓ = C_ℓ / 2^{ℓ−1} of the power relation θ_ℓ = a_ℓ θ₁^{2^{ℓ−1}}.
    double power_coefficient(int layer) const;
    /// r = (λ/𝔎)^{1/γ}, the equilibrium of θ₁ (sign-aware for odd γ).
    double fixed_point(double lambda) const;
};

DeepLayerConstants layer_constants(const DeepParams& params);

/// θ_ℓ(0) = a_ℓ θ₁(0)^{2^{ℓ−1}}, the initialization with every K_ℓ = 0.
std::vector<double> initial_state(const DeepParams& params, const DeepLayerConstants& c);

/// RK4 on all L equations. Columns: theta_1 … theta_L, product, abs_error.
Trajectory integrate_deep_full(const DeepParams& params, double t_end, double dt,
                               std::size_t record_every = 1);

/// RK4 on the reduced θ₁ equation; the other layers are rebuilt from the
/// power relations. Same columns as the full run.
Trajectory integrate_deep_reduced(const DeepParams& params, double t_end, double dt,
                                  std::size_t record_every = 1);

/// max over samples and layers of |θ_ℓ − a_ℓθ₁^{2^{ℓ−1}}| / max(1, |θ_ℓ|).
double check_power_relation(const Trajectory& traj, const DeepLayerConstants& c);

/// Column names theta_1 … theta_L, product, abs_error.
std::vector<std::string> deep_columns(int L);

}  // namespace fa::deep
