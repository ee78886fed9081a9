#include <gtest/gtest.h>

#include <cmath>

#include "fa/matrix_fa.hpp"
#include "fa/scalar_discrete.hpp"

using namespace fa::matrix;

namespace {

DataModel make_data(int d, int o, std::uint64_t seed) {
    const Mat q = random_orthogonal(d, seed);
    Eigen::VectorXd ev(d);
    for (int i = 0; i < d; ++i) ev(i) = 0.5 + i;
    const Mat sxx = q * ev.asDiagonal() * q.transpose();
    const Mat sxy = random_orthogonal(std::max(d, o), seed + 1).topLeftCorner(o, d);
    return {sxx, sxy, std::nullopt};
}

double loss(const Mat& p, const DataModel& data) {
    return -(p * data.sigma_xy.transpose()).trace() + 0.5 * (p * data.sigma_xx * p.transpose()).trace();
}

}  // namespace

TEST(Matrix, RandomOrthogonal) {
    const Mat q = random_orthogonal(5, 1);
    EXPECT_TRUE((q.transpose() * q).isApprox(Mat::Identity(5, 5), 1e-13));
    EXPECT_TRUE(q.isApprox(random_orthogonal(5, 1), 0.0));
}

TEST(Matrix, TraceNormAndReconstruction) {
    Mat m = Mat::Zero(3, 3);
    m.diagonal() << 3.0, -2.0, 1.0;
    EXPECT_NEAR(trace_norm(m), 6.0, 1e-14);
    EXPECT_NEAR(reconstruction_error(Mat::Identity(3, 3), Mat::Identity(3, 3)), 0.0, 1e-15);
    EXPECT_NEAR(reconstruction_error(Mat::Zero(3, 3), Mat::Identity(3, 3)), 3.0, 1e-15);
}

TEST(Matrix, GdStepFollowsTheGradient) {
    const auto data = make_data(4, 3, 21);
    LinearModel m{{0.3 * random_orthogonal(4, 5).topRows(2), 0.3 * random_orthogonal(3, 6).leftCols(2)}};
    const double eta = 1e-6;
    const auto next = gd_matrix_step(m, data, eta);
    for (std::size_t l = 0; l < 2; ++l)
        for (Eigen::Index i = 0; i < m.w[l].rows(); ++i)
            for (Eigen::Index j = 0; j < m.w[l].cols(); ++j) {
                auto plus = m, minus = m;
                const double h = 1e-6;
                plus.w[l](i, j) += h;
                minus.w[l](i, j) -= h;
                const double grad = (loss(plus.product(), data) - loss(minus.product(), data)) / (2.0 * h);
                EXPECT_NEAR((next.w[l](i, j) - m.w[l](i, j)) / eta, -grad, 1e-7);
            }
}

TEST(Matrix, FaStepUsesFeedbackInPlaceOfTranspose) {
    const auto data = make_data(4, 3, 31);
    LinearModel m{{0.2 * random_orthogonal(4, 7).topRows(2), 0.2 * random_orthogonal(3, 8).leftCols(2)}};
    FAMatrices fa;
    fa.b.push_back(m.w[1].transpose());
    const auto a = fa_matrix_step(m, data, fa, 0.1);
    const auto g = gd_matrix_step(m, data, 0.1);
    for (std::size_t l = 0; l < 2; ++l) EXPECT_TRUE(a.w[l].isApprox(g.w[l], 1e-14));
    fa.b[0] = Mat::Zero(3, 2);
    EXPECT_THROW(fa_matrix_step(m, data, fa, 0.1), std::invalid_argument);
}

TEST(Matrix, SvdChangeOfVariablesRoundTrip) {
    const auto data = make_data(3, 3, 41);
    const Mat r = random_orthogonal(3, 42);
    const auto t = svd_change_of_variables(data, r);
    EXPECT_FALSE(t.rank_deficient);
    const LinearModel m{{random_orthogonal(3, 43), random_orthogonal(3, 44)}};
    const auto back = t.from_tilde(t.to_tilde(m));
    for (std::size_t l = 0; l < 2; ++l) EXPECT_TRUE(back.w[l].isApprox(m.w[l], 1e-13));
    EXPECT_THROW(svd_change_of_variables(data, 2.0 * r), std::invalid_argument);
}

TEST(Matrix, StructuredFeedbackTransformsToDiagonal) {
    const Mat u = random_orthogonal(3, 1), v = random_orthogonal(3, 2), r = random_orthogonal(3, 3);
    const Eigen::Vector3d lam(3.0, 2.0, 1.0), dvec(0.5, 1.0, 2.0);
    const DataModel data{Mat::Identity(3, 3), u * lam.asDiagonal() * v.transpose(), std::nullopt};
    const auto t = svd_change_of_variables(data, r);
    const auto fa = structured_fa_matrix(r, dvec, t.u);
    const Mat dt = t.transform_fa(fa).b[0];
    EXPECT_TRUE(dt.isApprox(Mat(dvec.asDiagonal()), 1e-12));
    EXPECT_THROW(structured_fa_matrix(r, Eigen::Vector3d(1.0, 0.0, 1.0), t.u), std::invalid_argument);
}

TEST(Matrix, DecoupledDiagonalsFollowScalarEuler) {
    const Mat u = random_orthogonal(2, 9), v = random_orthogonal(2, 10), r = random_orthogonal(2, 11);
    const Eigen::Vector2d lam(2.0, 0.5), dvec(1.5, 0.7);
    const DataModel data{Mat::Identity(2, 2), u * lam.asDiagonal() * v.transpose(), std::nullopt};
    const auto t = svd_change_of_variables(data, r);
    const auto fa = structured_fa_matrix(r, dvec, t.u);
    const double eta = 0.05;
    LinearModel m{{Mat::Zero(2, 2), Mat::Zero(2, 2)}};
    for (int s = 0; s < 100; ++s) m = fa_matrix_step(m, data, fa, eta);
    const auto tilde = t.to_tilde(m);
    for (int i = 0; i < 2; ++i) {
        const auto run = fa::discrete::euler_run(dvec(i), lam(i), eta, 100);
        EXPECT_NEAR(tilde.w[0](i, i), run.traj.at(100, 0), 1e-12);
        EXPECT_NEAR(tilde.w[1](i, i), run.traj.at(100, 1), 1e-12);
    }
}

TEST(Matrix, IsotropicReductionPreservesLoss) {
    const auto data = make_data(4, 3, 51);
    const auto red = isotropic_reduction(data);
    EXPECT_TRUE((red.sqrt_xx * red.sqrt_xx).isApprox(data.sigma_xx, 1e-12));
    const LinearModel m{{random_orthogonal(4, 52).topRows(2), random_orthogonal(3, 53).leftCols(2)}};
    const auto w = red.forward(m);
    EXPECT_NEAR(loss(m.product(), data), loss(w.product(), red.whitened), 1e-12);
    EXPECT_TRUE(red.backward(w).w[0].isApprox(m.w[0], 1e-12));
}

TEST(Matrix, DataFromSamples) {
    Mat x(2, 3), y(1, 3);
    x << 1, 2, 3, 0, 1, 0;
    y << 1, 1, 1;
    const auto d = DataModel::from_samples(x, y);
    EXPECT_NEAR(d.sigma_xx(0, 0), 14.0 / 3.0, 1e-15);
    EXPECT_NEAR(d.sigma_xy(0, 1), 1.0 / 3.0, 1e-15);
}

namespace {
AutoencoderConfig small() {
    AutoencoderConfig c;
    c.input_dim = 6;
    c.latent_dim = 2;
    c.hidden_dim = 6;
    c.samples = 200;
    c.steps = 400;
    c.repeats = 3;
    c.eta = 0.05;
    return c;
}
}  // namespace

TEST(Autoencoder, SerialAndParallelIdentical) {
    const auto c = small();
    const auto seeds = default_seeds(c.seed, c.repeats);
    const auto a = autoencoder_experiment(c, seeds, true);
    const auto b = autoencoder_experiment(c, seeds, false);
    EXPECT_EQ(a.to_csv(), b.to_csv());
    EXPECT_EQ(a.to_csv().rfind("step,metric,mean,std\n", 0), 0u);
    EXPECT_EQ(a.steps.front(), 0);
    EXPECT_EQ(a.steps.back(), c.steps);
}

TEST(Autoencoder, SingleRepeatHasZeroSpread) {
    auto c = small();
    c.repeats = 1;
    const auto m = autoencoder_experiment(c, default_seeds(c.seed, 1), true);
    for (double s : m.fa_recon.std) EXPECT_EQ(s, 0.0);
}

TEST(Autoencoder, ThreeLayersAndValidation) {
    auto c = small();
    c.depth = 3;
    const auto m = autoencoder_experiment(c, default_seeds(c.seed, c.repeats), true);
    EXPECT_FALSE(m.gd_diverged);
    c.depth = 4;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c.depth = 2;
    c.loss = "median";
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Autoencoder, SeedsChangeResults) {
    const auto c = small();
    const auto a = autoencoder_experiment(c, default_seeds(0, c.repeats), true);
    const auto b = autoencoder_experiment(c, default_seeds(1, c.repeats), true);
    EXPECT_NE(a.to_csv(), b.to_csv());
    EXPECT_EQ(default_seeds(5, 4), default_seeds(5, 4));
}
