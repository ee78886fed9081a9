#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

/// Full-matrix FA and GD updates for deep linear networks, the SVD change of
/// variables that decouples them, and the linear-autoencoder experiment.
namespace fa::matrix {

using Mat = Eigen::MatrixXd;

/// ŷ = W_L ⋯ W₁ x; w[0] is W₁.
struct LinearModel {
    std::vector<Mat> w;

    std::size_t depth() const { return w.size(); }
    Mat product() const;
    void validate() const;
};

struct DataModel {
    Mat sigma_xx;  // d×d, symmetric positive definite
    Mat sigma_xy;  // o×d
    std::optional<Mat> samples;

    /// Σ_xx = XXᵀ/n, Σ_xy = YXᵀ/n for column-sample matrices X (d×n), Y (o×n).
    static DataModel from_samples(const Mat& x, const Mat& y);
    void validate() const;
};

struct StructuredFactors {
    Mat r;                // left-orthogonal, RᵀR = I
    Eigen::VectorXd dvec; // positive diagonal of D
    Mat u;
};

/// Feedback matrices: b[k] stands in for W_{k+2}ᵀ in the backward pass.
struct FAMatrices {
    std::vector<Mat> b;
    std::optional<StructuredFactors> structured;
};

/// W_ℓ ← W_ℓ + η(B_ℓ⋯B_{L−1})E(W_{ℓ−1}⋯W₁)ᵀ with E = Σ_xy − W_L⋯W₁Σ_xx,
/// all layers updated from time-t values.
LinearModel fa_matrix_step(const LinearModel& model, const DataModel& data, const FAMatrices& fa,
                           double eta);

/// Same update with the true transposes W_{ℓ+1}ᵀ (gradient descent on ½E‖y − ŷ‖²).
LinearModel gd_matrix_step(const LinearModel& model, const DataModel& data, double eta);

/// Coordinates W₁ = R W̃₁ Vᵀ, W₂ = U W̃₂ Rᵀ from the SVD Σ_xy = U Λ_xy Vᵀ.
struct SvdTransform {
    Mat u, v, r;
    Mat lambda_xx;  // Vᵀ Σ_xx V
    Mat lambda_xy;  // Uᵀ Σ_xy V (rectangular diagonal)
    Eigen::Index rank = 0;
    bool rank_deficient = false;

    LinearModel to_tilde(const LinearModel& m) const;
    LinearModel from_tilde(const LinearModel& m) const;
    DataModel transformed_data() const;
    /// Rᵀ M U, which is D itself for a structured M.
    FAMatrices transform_fa(const FAMatrices& fa) const;
};

/// Whitening x' = Σ_xx^{−1/2} x: Σ'_xx = I, Σ'_xy = Σ_xy Σ_xx^{−1/2}, and the
/// first layer maps as W₁' = W₁ Σ_xx^{1/2}. End-to-end products agree.
struct IsotropicReduction {
    Mat sqrt_xx;
    Mat inv_sqrt_xx;
    DataModel whitened;

    LinearModel forward(const LinearModel& m) const;
    LinearModel backward(const LinearModel& m) const;
};

/// Two-layer change of variables. `r_matrix` must be left-orthogonal (h×k).
SvdTransform svd_change_of_variables(const DataModel& data, const Mat& r_matrix);

IsotropicReduction isotropic_reduction(const DataModel& data);

/// M = R D Uᵀ; rejects nonpositive D entries.
FAMatrices structured_fa_matrix(const Mat& r_matrix, const Eigen::VectorXd& d_diag, const Mat& u_matrix);

/// Random orthogonal n×n matrix (QR of a Gaussian matrix, sign-fixed).
Mat random_orthogonal(Eigen::Index n, std::uint64_t seed);

/// Sum of singular values.
double trace_norm(const Mat& m);

/// tr((I − P)Σ_xx(I − P)ᵀ) for the end-to-end map P of an autoencoder.
double reconstruction_error(const Mat& product, const Mat& sigma_xx);

struct AutoencoderConfig {
    int input_dim = 20;
    int latent_dim = 5;
    int hidden_dim = 20;
    int samples = 1000;
    int depth = 2;
    double eta = 0.01;
    int steps = 5000;
    int repeats = 15;
    int record_every = 10;
    double init_scale = 1e-5;
    double noise_std = 1e-3;
    /// "mean": loss averaged over samples and output coordinates, so the
    /// covariance update is scaled by 2/o. "sum": ½Σ‖e‖²/n, the plain update.
    std::string loss = "mean";
    bool fix_noise = true;
    std::uint64_t seed = 0;

    double loss_scale() const;
    void validate() const;
    nlohmann::json to_json() const;
};

struct SeriesStats {
    std::vector<double> mean;
    std::vector<double> std;
};

struct ExperimentMetrics {
    std::vector<int> steps;
    SeriesStats fa_trace, fa_recon, gd_trace, gd_recon;
    std::vector<std::uint64_t> seeds;
    double initial_recon = 0.0;
    bool gd_diverged = false;
    std::size_t fa_diverged = 0;

    /// Long format: step,metric,mean,std.
    std::string to_csv() const;
};

/// Seeds for each FA repeat derived from the base seed.
std::vector<std::uint64_t> default_seeds(std::uint64_t base, int repeats);

/// FA with a fresh M per repeat (one seed each) against a single GD run.
/// `parallel` runs the repeats with OpenMP; results are identical either way.
ExperimentMetrics autoencoder_experiment(const AutoencoderConfig& config,
                                         const std::vector<std::uint64_t>& seeds, bool parallel = true);

}  // namespace fa::matrix
