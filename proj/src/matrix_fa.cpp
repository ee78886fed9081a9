#include "fa/matrix_fa.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>

#include "fa/sweep.hpp"
#include "fa/trajectory.hpp"

namespace fa::matrix {

namespace {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    std::uint32_t words[2];
    seq.generate(words, words + 2);
    return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

Mat uniform(Eigen::Index rows, Eigen::Index cols, double scale, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Mat m(rows, cols);
    // filled column by column so the draw order is independent of Eigen internals
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = scale * u(rng);
    return m;
}

Mat gaussian(Eigen::Index rows, Eigen::Index cols, double scale, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Mat m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = scale * n(rng);
    return m;
}

// Shared update; `feedback(k)` supplies the matrix standing in for W_kᵀ (k ≥ 1).
template <class Feedback>
LinearModel step_with(const LinearModel& model, const DataModel& data, double eta, Feedback feedback) {
    model.validate();
    const std::size_t L = model.depth();
    if (model.w.front().cols() != data.sigma_xx.rows())
        throw std::invalid_argument("first layer width does not match the input dimension");
    if (model.w.back().rows() != data.sigma_xy.rows())
        throw std::invalid_argument("last layer height does not match the output dimension");

    std::vector<Mat> prefix(L + 1);  // prefix[i] = W_{i−1}⋯W₀
    prefix[0] = Mat::Identity(data.sigma_xx.rows(), data.sigma_xx.rows());
    for (std::size_t i = 0; i < L; ++i) prefix[i + 1] = model.w[i] * prefix[i];
    const Mat err = data.sigma_xy - prefix[L] * data.sigma_xx;

    std::vector<Mat> left(L);  // left[i] = F_{i+1}⋯F_{L−1}
    left[L - 1] = Mat::Identity(data.sigma_xy.rows(), data.sigma_xy.rows());
    for (std::size_t i = L - 1; i-- > 0;) left[i] = feedback(i + 1) * left[i + 1];

    LinearModel out = model;
    for (std::size_t i = 0; i < L; ++i) out.w[i] += eta * (left[i] * err * prefix[i].transpose());
    return out;
}

}  // namespace

Mat LinearModel::product() const {
    validate();
    Mat p = w.front();
    for (std::size_t i = 1; i < w.size(); ++i) p = w[i] * p;
    return p;
}

void LinearModel::validate() const {
    if (w.empty()) throw std::invalid_argument("model needs at least one layer");
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i].cols() != w[i - 1].rows()) throw std::invalid_argument("layer dimensions do not chain");
}

DataModel DataModel::from_samples(const Mat& x, const Mat& y) {
    if (x.cols() != y.cols() || x.cols() == 0) throw std::invalid_argument("sample matrices need equal, nonzero counts");
    const double n = static_cast<double>(x.cols());
    DataModel dm{x * x.transpose() / n, y * x.transpose() / n, x};
    return dm;
}

void DataModel::validate() const {
    if (sigma_xx.rows() != sigma_xx.cols()) throw std::invalid_argument("sigma_xx must be square");
    if (sigma_xy.cols() != sigma_xx.rows()) throw std::invalid_argument("sigma_xy columns must match sigma_xx");
    if (!sigma_xx.isApprox(sigma_xx.transpose(), 1e-12)) throw std::invalid_argument("sigma_xx must be symmetric");
    Eigen::SelfAdjointEigenSolver<Mat> es(sigma_xx, Eigen::EigenvaluesOnly);
    if (!(es.eigenvalues().minCoeff() > 0.0)) throw std::invalid_argument("sigma_xx must be positive definite");
}

LinearModel fa_matrix_step(const LinearModel& model, const DataModel& data, const FAMatrices& fa, double eta) {
    if (fa.b.size() + 1 != model.depth())
        throw std::invalid_argument("need one feedback matrix per layer above the first");
    for (std::size_t k = 0; k < fa.b.size(); ++k)
        if (fa.b[k].rows() != model.w[k].rows() || fa.b[k].cols() != model.w[k + 1].rows())
            throw std::invalid_argument("feedback matrix shape does not match the transposed layer");
    return step_with(model, data, eta, [&](std::size_t k) -> const Mat& { return fa.b[k - 1]; });
}

LinearModel gd_matrix_step(const LinearModel& model, const DataModel& data, double eta) {
    return step_with(model, data, eta, [&](std::size_t k) -> Mat { return model.w[k].transpose(); });
}

LinearModel SvdTransform::to_tilde(const LinearModel& m) const {
    if (m.depth() != 2) throw std::invalid_argument("change of variables is defined for two layers");
    return {{r.transpose() * m.w[0] * v, u.transpose() * m.w[1] * r}};
}

LinearModel SvdTransform::from_tilde(const LinearModel& m) const {
    if (m.depth() != 2) throw std::invalid_argument("change of variables is defined for two layers");
    return {{r * m.w[0] * v.transpose(), u * m.w[1] * r.transpose()}};
}

DataModel SvdTransform::transformed_data() const { return {lambda_xx, lambda_xy, std::nullopt}; }

FAMatrices SvdTransform::transform_fa(const FAMatrices& fa) const {
    if (fa.b.size() != 1) throw std::invalid_argument("change of variables is defined for two layers");
    return {{r.transpose() * fa.b[0] * u}, std::nullopt};
}

SvdTransform svd_change_of_variables(const DataModel& data, const Mat& r_matrix) {
    data.validate();
    const Mat rtr = r_matrix.transpose() * r_matrix;
    if (!rtr.isApprox(Mat::Identity(rtr.rows(), rtr.cols()), 1e-10))
        throw std::invalid_argument("R must have orthonormal columns");
    Eigen::JacobiSVD<Mat> svd(data.sigma_xy, Eigen::ComputeFullU | Eigen::ComputeFullV);
    SvdTransform t;
    t.u = svd.matrixU();
    t.v = svd.matrixV();
    t.r = r_matrix;
    t.lambda_xx = t.v.transpose() * data.sigma_xx * t.v;
    t.lambda_xy = t.u.transpose() * data.sigma_xy * t.v;
    const auto& sv = svd.singularValues();
    const double cutoff = 1e-12 * std::max(1.0, sv.size() ? sv(0) : 0.0);
    t.rank = (sv.array() > cutoff).count();
    t.rank_deficient = t.rank < std::min(data.sigma_xy.rows(), data.sigma_xy.cols());
    return t;
}

LinearModel IsotropicReduction::forward(const LinearModel& m) const {
    LinearModel out = m;
    out.w.front() = m.w.front() * sqrt_xx;
    return out;
}

LinearModel IsotropicReduction::backward(const LinearModel& m) const {
    LinearModel out = m;
    out.w.front() = m.w.front() * inv_sqrt_xx;
    return out;
}

IsotropicReduction isotropic_reduction(const DataModel& data) {
    data.validate();
    Eigen::SelfAdjointEigenSolver<Mat> es(data.sigma_xx);
    IsotropicReduction red;
    red.sqrt_xx = es.operatorSqrt();
    red.inv_sqrt_xx = es.operatorInverseSqrt();
    red.whitened = {Mat::Identity(data.sigma_xx.rows(), data.sigma_xx.cols()),
                    data.sigma_xy * red.inv_sqrt_xx, std::nullopt};
    return red;
}

FAMatrices structured_fa_matrix(const Mat& r_matrix, const Eigen::VectorXd& d_diag, const Mat& u_matrix) {
    if (d_diag.size() != r_matrix.cols() || d_diag.size() > u_matrix.cols())
        throw std::invalid_argument("D size must match the columns of R and fit inside U");
    if (!(d_diag.array() > 0.0).all()) throw std::invalid_argument("D must have positive diagonal entries");
    const Mat u_used = u_matrix.leftCols(d_diag.size());
    FAMatrices fa;
    fa.b.push_back(r_matrix * d_diag.asDiagonal() * u_used.transpose());
    fa.structured = StructuredFactors{r_matrix, d_diag, u_used};
    return fa;
}

Mat random_orthogonal(Eigen::Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const Mat g = gaussian(n, n, 1.0, rng);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ() * Mat::Identity(n, n);
    const Mat rr = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < n; ++i)
        if (rr(i, i) < 0.0) q.col(i) *= -1.0;
    return q;
}

double trace_norm(const Mat& m) {
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues().sum();
}

double reconstruction_error(const Mat& product, const Mat& sigma_xx) {
    const Mat res = Mat::Identity(product.rows(), product.cols()) - product;
    return (res * sigma_xx * res.transpose()).trace();
}

double AutoencoderConfig::loss_scale() const {
    if (loss == "sum") return 1.0;
    if (loss == "mean") return 2.0 / static_cast<double>(input_dim);
    throw std::invalid_argument("loss must be 'mean' or 'sum'");
}

void AutoencoderConfig::validate() const {
    if (input_dim < 1 || latent_dim < 1 || hidden_dim < 1 || samples < 2)
        throw std::invalid_argument("dimensions and sample count must be positive");
    if (depth != 2 && depth != 3) throw std::invalid_argument("depth must be 2 or 3");
    if (!(eta > 0.0) || steps < 1 || repeats < 1 || record_every < 1)
        throw std::invalid_argument("eta, steps, repeats and record_every must be positive");
    if (!(init_scale >= 0.0) || !(noise_std >= 0.0)) throw std::invalid_argument("scales must be nonnegative");
    (void)loss_scale();
}

nlohmann::json AutoencoderConfig::to_json() const {
    return {{"input_dim", input_dim}, {"latent_dim", latent_dim}, {"hidden_dim", hidden_dim},
            {"samples", samples},     {"depth", depth},           {"eta", eta},
            {"steps", steps},         {"repeats", repeats},       {"record_every", record_every},
            {"init_scale", init_scale}, {"noise_std", noise_std}, {"loss", loss},
            {"loss_scale", loss_scale()}, {"fix_noise", fix_noise}, {"seed", seed}};
}

std::string ExperimentMetrics::to_csv() const {
    std::string out = "step,metric,mean,std\n";
    char buf[96];
    auto emit = [&](const char* name, const SeriesStats& s) {
        for (std::size_t k = 0; k < steps.size(); ++k) {
            std::snprintf(buf, sizeof buf, "%d,%s,%.17g,%.17g\n", steps[k], name, s.mean[k], s.std[k]);
            out += buf;
        }
    };
    emit("fa_trace_norm", fa_trace);
    emit("fa_recon_error", fa_recon);
    emit("gd_trace_norm", gd_trace);
    emit("gd_recon_error", gd_recon);
    return out;
}

std::vector<std::uint64_t> default_seeds(std::uint64_t base, int repeats) {
    std::vector<std::uint64_t> seeds;
    for (int i = 0; i < repeats; ++i) seeds.push_back(derive_seed(base, 100 + static_cast<std::uint64_t>(i)));
    return seeds;
}

ExperimentMetrics autoencoder_experiment(const AutoencoderConfig& cfg, const std::vector<std::uint64_t>& seeds,
                                         bool parallel) {
    cfg.validate();
    if (seeds.empty()) throw std::invalid_argument("seed list must not be empty");
    const Eigen::Index d = cfg.input_dim, h = cfg.hidden_dim;

    std::mt19937_64 data_rng(derive_seed(cfg.seed, 0));
    const Mat a = uniform(d, cfg.latent_dim, 1.0, data_rng);
    const Mat z = gaussian(cfg.latent_dim, cfg.samples, 1.0, data_rng);
    const Mat clean = a * z;
    auto make_data = [&](std::mt19937_64& noise_rng) {
        const Mat x = clean + gaussian(d, cfg.samples, cfg.noise_std, noise_rng);
        return DataModel::from_samples(x, x);
    };
    std::mt19937_64 base_noise(derive_seed(cfg.seed, 1));
    const DataModel base_data = make_data(base_noise);

    std::mt19937_64 init_rng(derive_seed(cfg.seed, 2));
    LinearModel init;
    std::vector<Eigen::Index> widths{d};
    for (int l = 0; l + 1 < cfg.depth; ++l) widths.push_back(h);
    widths.push_back(d);
    for (int l = 0; l < cfg.depth; ++l)
        init.w.push_back(uniform(widths[l + 1], widths[l], cfg.init_scale, init_rng));

    const double eta = cfg.eta * cfg.loss_scale();
    const int n_rec = cfg.steps / cfg.record_every + (cfg.steps % cfg.record_every ? 2 : 1);

    struct Series {
        std::vector<double> trace, recon;
        bool diverged = false;
    };
    auto train = [&](const DataModel& data, const FAMatrices* fa) {
        Series s;
        s.trace.reserve(n_rec);
        s.recon.reserve(n_rec);
        LinearModel m = init;
        auto record = [&] {
            const Mat p = m.product();
            s.trace.push_back(trace_norm(p));
            s.recon.push_back(reconstruction_error(p, data.sigma_xx));
        };
        record();
        for (int t = 1; t <= cfg.steps; ++t) {
            m = fa ? fa_matrix_step(m, data, *fa, eta) : gd_matrix_step(m, data, eta);
            bool ok = true;
            for (const auto& w : m.w) ok = ok && w.allFinite() && w.cwiseAbs().maxCoeff() <= kDivergenceThreshold;
            if (!ok) {
                s.diverged = true;
                const double nan = std::numeric_limits<double>::quiet_NaN();
                s.trace.resize(n_rec, nan);
                s.recon.resize(n_rec, nan);
                return s;
            }
            if (t % cfg.record_every == 0 || t == cfg.steps) record();
        }
        return s;
    };

    auto fa_repeat = [&](std::size_t i) {
        std::mt19937_64 rng(seeds[i]);
        FAMatrices fa;
        for (int l = 1; l < cfg.depth; ++l) fa.b.push_back(uniform(widths[l], widths[l + 1], 1.0, rng));
        if (cfg.fix_noise) return train(base_data, &fa);
        std::mt19937_64 noise_rng(derive_seed(seeds[i], 1));
        return train(make_data(noise_rng), &fa);
    };
    const auto runs = sweep::map(seeds.size(), fa_repeat, parallel);
    const Series gd = train(base_data, nullptr);

    ExperimentMetrics out;
    out.seeds = seeds;
    out.initial_recon = gd.recon.front();
    out.gd_diverged = gd.diverged;
    for (int t = 0; t <= cfg.steps; t += cfg.record_every) out.steps.push_back(t);
    if (out.steps.back() != cfg.steps) out.steps.push_back(cfg.steps);

    const std::size_t n = out.steps.size();
    auto stats = [&](auto pick) {
        SeriesStats st{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
        const double r = static_cast<double>(runs.size());
        for (std::size_t k = 0; k < n; ++k) {
            double mean = 0.0;
            for (const auto& run : runs) mean += pick(run)[k];
            mean /= r;
            double var = 0.0;
            for (const auto& run : runs) var += (pick(run)[k] - mean) * (pick(run)[k] - mean);
            st.mean[k] = mean;
            st.std[k] = std::sqrt(var / r);
        }
        return st;
    };
    out.fa_trace = stats([](const Series& s) -> const std::vector<double>& { return s.trace; });
    out.fa_recon = stats([](const Series& s) -> const std::vector<double>& { return s.recon; });
    out.gd_trace = {gd.trace, std::vector<double>(n, 0.0)};
    out.gd_recon = {gd.recon, std::vector<double>(n, 0.0)};
    for (const auto& run : runs) out.fa_diverged += run.diverged ? 1 : 0;
    return out;
}

}  // namespace fa::matrix
