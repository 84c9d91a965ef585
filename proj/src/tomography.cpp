#include "entsim/tomography.hpp"

#include <algorithm>
#include <cmath>

namespace entsim {

namespace {

constexpr double kProbFloor = 1e-12;

Mat4 kron2(const Mat2& a, const Mat2& b) {
    Mat4 out;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
    return out;
}

Mat4 joint_projector(const MeasurementSetting& s) { return kron2(s.proj_a, s.proj_b); }

// Pauli basis sigma_mu x sigma_nu, mu,nu in 0..3 with sigma_0 = I,
// flattened as 4*mu + nu.
const std::array<Mat4, 16>& pauli_basis() {
    static const std::array<Mat4, 16> basis = [] {
        std::array<Mat2, 4> sigma = {Mat2::Identity(), pauli(1), pauli(2), pauli(3)};
        std::array<Mat4, 16> out;
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) out[4 * mu + nu] = kron2(sigma[mu], sigma[nu]);
        return out;
    }();
    return basis;
}

// Rows m_ik = Tr[Pi_i B_k] / 4 so that p = M s with s the real Pauli
// coordinates of rho (s_0 = 1 for unit trace).
Eigen::MatrixXd design_matrix(const std::vector<MeasurementSetting>& settings) {
    Eigen::MatrixXd m(settings.size(), 16);
    for (std::size_t i = 0; i < settings.size(); ++i) {
        const Mat4 proj = joint_projector(settings[i]);
        for (int k = 0; k < 16; ++k) {
            m(i, k) = 0.25 * (proj * pauli_basis()[k]).trace().real();
        }
    }
    return m;
}

}  // namespace

Eigen::Vector2cd analysis_ket(char label) {
    const double s = 1.0 / std::sqrt(2.0);
    switch (label) {
        case 'H': return {1.0, 0.0};
        case 'V': return {0.0, 1.0};
        case 'D': return {s, s};
        case 'A': return {s, -s};
        case 'R': return {s, Complex(0.0, -s)};
        case 'L': return {s, Complex(0.0, s)};
        default: throw ValidationError("analysis_ket: unknown label");
    }
}

MeasurementSetting setting_from_label(const std::string& label) {
    if (label.size() != 2) throw ValidationError("setting label must have two letters");
    MeasurementSetting s;
    s.id = label;
    const Eigen::Vector2cd ka = analysis_ket(label[0]);
    const Eigen::Vector2cd kb = analysis_ket(label[1]);
    s.proj_a = ka * ka.adjoint();
    s.proj_b = kb * kb.adjoint();
    return s;
}

std::vector<MeasurementSetting> standard_settings(SettingsMode mode) {
    const std::string labels = mode == SettingsMode::Sixteen ? "HVDR" : "HVDARL";
    std::vector<MeasurementSetting> out;
    out.reserve(labels.size() * labels.size());
    for (char a : labels)
        for (char b : labels) out.push_back(setting_from_label(std::string{a, b}));
    return out;
}

std::vector<double> expected_probabilities(const DensityMatrix& rho,
                                           const std::vector<MeasurementSetting>& settings) {
    std::vector<double> probs;
    probs.reserve(settings.size());
    for (const auto& s : settings) probs.push_back(born_probability(rho, s));
    return probs;
}

int design_rank(const std::vector<MeasurementSetting>& settings) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design_matrix(settings));
    qr.setThreshold(1e-10);
    return static_cast<int>(qr.rank());
}

Mat4 linear_inversion_probabilities(const std::vector<double>& probabilities,
                                    const std::vector<MeasurementSetting>& settings) {
    if (probabilities.size() != settings.size()) {
        throw ValidationError("linear_inversion: size mismatch");
    }
    const Eigen::MatrixXd m = design_matrix(settings);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
    qr.setThreshold(1e-10);
    if (qr.rank() < 16) throw ValidationError("linear_inversion: rank-deficient design");
    const Eigen::VectorXd p =
        Eigen::Map<const Eigen::VectorXd>(probabilities.data(), probabilities.size());
    const Eigen::VectorXd s = qr.solve(p);
    Mat4 rho = Mat4::Zero();
    for (int k = 0; k < 16; ++k) rho += 0.25 * s(k) * pauli_basis()[k];
    const double tr = rho.trace().real();
    if (std::abs(tr) < 1e-12) throw ValidationError("linear_inversion: zero-trace estimate");
    rho /= tr;
    return 0.5 * (rho + rho.adjoint().eval());
}

namespace {

std::vector<double> processed_counts(const std::vector<CountRecord>& records,
                                     bool subtract_accidentals) {
    std::vector<double> out;
    out.reserve(records.size());
    double total = 0.0;
    for (const auto& r : records) {
        if (r.coincidences < 0.0) throw ValidationError("negative coincidence count");
        if (!(r.duration_s > 0.0)) throw ValidationError("nonpositive record duration");
        const double n =
            subtract_accidentals ? std::max(r.coincidences - r.accidental_estimate, 0.0)
                                 : r.coincidences;
        out.push_back(n);
        total += n;
    }
    if (total <= 0.0) throw ValidationError("all-zero counts");
    return out;
}

// Shared flux (pairs/s) from the rectilinear-basis records, whose Born
// probabilities sum to 1.
double flux_estimate(const std::vector<CountRecord>& records,
                     const std::vector<double>& counts) {
    double n_sum = 0.0, d_sum = 0.0;
    int found = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const std::string& id = records[i].setting_id;
        if (id == "HH" || id == "HV" || id == "VH" || id == "VV") {
            n_sum += counts[i];
            d_sum += records[i].duration_s;
            ++found;
        }
    }
    if (found != 4 || d_sum <= 0.0) {
        throw ValidationError("flux estimate needs the four H/V-basis records");
    }
    return 4.0 * n_sum / d_sum;  // per-setting duration = d_sum / 4
}

}  // namespace

Mat4 linear_inversion(const std::vector<CountRecord>& records,
                      const std::vector<MeasurementSetting>& settings) {
    if (records.size() != settings.size()) {
        throw ValidationError("linear_inversion: record/setting count mismatch");
    }
    const std::vector<double> counts = processed_counts(records, true);
    const double flux = flux_estimate(records, counts);
    std::vector<double> probs(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        probs[i] = counts[i] / (flux * records[i].duration_s);
    }
    return linear_inversion_probabilities(probs, settings);
}

DensityMatrix clamp_to_physical(const Mat4& hermitian) {
    Eigen::SelfAdjointEigenSolver<Mat4> es(0.5 * (hermitian + hermitian.adjoint().eval()));
    Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0);
    if (ev.sum() <= 0.0) throw ValidationError("clamp_to_physical: no positive eigenvalue");
    ev /= ev.sum();
    const Mat4 rho =
        es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    return DensityMatrix(rho);
}

// ---- Poisson likelihood over the Cholesky-style parameterization ----

namespace {

// Lower-triangular off-diagonal slots, in parameter order.
constexpr std::array<std::pair<int, int>, 6> kOffDiag = {
    {{1, 0}, {2, 0}, {2, 1}, {3, 0}, {3, 1}, {3, 2}}};

Mat4 t_from_params(const Eigen::VectorXd& x) {
    Mat4 t = Mat4::Zero();
    for (int i = 0; i < 4; ++i) t(i, i) = x(i);
    for (int k = 0; k < 6; ++k) {
        t(kOffDiag[k].first, kOffDiag[k].second) = Complex(x(4 + 2 * k), x(5 + 2 * k));
    }
    return t;
}

}  // namespace

PoissonLikelihood::PoissonLikelihood(std::vector<double> counts,
                                     std::vector<double> durations,
                                     const std::vector<MeasurementSetting>& settings)
    : counts_(std::move(counts)), durations_(std::move(durations)) {
    if (counts_.size() != settings.size() || durations_.size() != settings.size()) {
        throw ValidationError("PoissonLikelihood: size mismatch");
    }
    projectors_.reserve(settings.size());
    for (const auto& s : settings) projectors_.push_back(joint_projector(s));
    total_counts_ = 0.0;
    for (double n : counts_) total_counts_ += n;
}

double PoissonLikelihood::value(const Eigen::VectorXd& x) const {
    const Mat4 t = t_from_params(x);
    const Mat4 m = t.adjoint() * t;
    const double trm = m.trace().real();
    if (!(trm > 0.0)) return -std::numeric_limits<double>::infinity();
    const double flux = std::exp(x(16));
    double ll = 0.0;
    for (std::size_t i = 0; i < projectors_.size(); ++i) {
        const double p =
            std::max((m * projectors_[i]).trace().real() / trm, kProbFloor);
        const double mu = flux * durations_[i] * p;
        ll += counts_[i] * std::log(mu) - mu;
    }
    return ll;
}

Eigen::VectorXd PoissonLikelihood::gradient(const Eigen::VectorXd& x) const {
    const Mat4 t = t_from_params(x);
    const Mat4 m = t.adjoint() * t;
    const double trm = m.trace().real();
    const double flux = std::exp(x(16));

    // dL = Tr[dM G] / Tr M with G = sum_i w_i (Pi_i - p_i I),
    // w_i = n_i / p_i - flux * d_i
    Mat4 g_mat = Mat4::Zero();
    double dnu = 0.0;
    for (std::size_t i = 0; i < projectors_.size(); ++i) {
        const double p =
            std::max((m * projectors_[i]).trace().real() / trm, kProbFloor);
        const double mu = flux * durations_[i] * p;
        const double w = counts_[i] / p - flux * durations_[i];
        g_mat += w * (projectors_[i] - p * Mat4::Identity());
        dnu += counts_[i] - mu;
    }
    const Mat4 a = g_mat * t.adjoint();  // dL/dT_ab reads off (a)_{b,a}

    Eigen::VectorXd grad(kDim);
    for (int i = 0; i < 4; ++i) grad(i) = 2.0 * a(i, i).real() / trm;
    for (int k = 0; k < 6; ++k) {
        const auto [r, c] = kOffDiag[k];
        grad(4 + 2 * k) = 2.0 * a(c, r).real() / trm;
        grad(5 + 2 * k) = -2.0 * a(c, r).imag() / trm;
    }
    grad(16) = dnu;
    return grad;
}

DensityMatrix PoissonLikelihood::rho_from_params(const Eigen::VectorXd& x) {
    const Mat4 t = t_from_params(x);
    Mat4 m = t.adjoint() * t;
    const double trm = m.trace().real();
    if (!(trm > 0.0)) throw ValidationError("rho_from_params: zero parameter matrix");
    m /= trm;
    return DensityMatrix(0.5 * (m + m.adjoint().eval()));
}

Eigen::VectorXd PoissonLikelihood::params_from_state(const DensityMatrix& rho,
                                                     double log_flux) {
    // regularize so the Cholesky factor exists for rank-deficient states
    Mat4 m = rho.matrix() + 1e-8 * Mat4::Identity();
    m /= m.trace().real();
    // With P the index-reversal permutation and P M P = L L^dag (Cholesky),
    // T = (P L P)^dag is lower triangular and satisfies T^dag T = M. Its
    // diagonal inherits the real positive Cholesky diagonal.
    Mat4 rev = Mat4::Zero();
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) rev(r, c) = m(3 - r, 3 - c);
    const Eigen::LLT<Mat4> llt_rev(rev);
    if (llt_rev.info() != Eigen::Success) {
        throw ValidationError("params_from_state: factorization failed");
    }
    const Mat4 l_rev = llt_rev.matrixL();
    Mat4 t_low = Mat4::Zero();
    for (int r = 0; r < 4; ++r)
        for (int c = r; c < 4; ++c) t_low(c, r) = std::conj(l_rev(3 - r, 3 - c));
    Eigen::VectorXd x(kDim);
    for (int i = 0; i < 4; ++i) x(i) = t_low(i, i).real();
    for (int k = 0; k < 6; ++k) {
        x(4 + 2 * k) = t_low(kOffDiag[k].first, kOffDiag[k].second).real();
        x(5 + 2 * k) = t_low(kOffDiag[k].first, kOffDiag[k].second).imag();
    }
    x(16) = log_flux;
    return x;
}

namespace {

struct BfgsResult {
    Eigen::VectorXd x;
    double value;
    int iterations;
    bool converged;
};

// Maximize f via BFGS with Armijo backtracking.
BfgsResult bfgs_maximize(const PoissonLikelihood& problem, Eigen::VectorXd x,
                         int max_iters, double tol) {
    const int n = PoissonLikelihood::kDim;
    const double grad_scale = std::max(1.0, problem.total_counts());
    Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(n, n);
    double f = problem.value(x);
    Eigen::VectorXd g = problem.gradient(x);
    int iter = 0;
    for (; iter < max_iters; ++iter) {
        if (g.lpNorm<Eigen::Infinity>() <= tol * grad_scale) {
            return {x, f, iter, true};
        }
        Eigen::VectorXd dir = h_inv * g;
        if (dir.dot(g) <= 0.0) {  // lost positive definiteness; reset
            h_inv.setIdentity();
            dir = g;
        }
        double step = 1.0;
        double f_new = -std::numeric_limits<double>::infinity();
        Eigen::VectorXd x_new;
        const double slope = g.dot(dir);
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            x_new = x + step * dir;
            f_new = problem.value(x_new);
            if (std::isfinite(f_new) && f_new >= f + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) return {x, f, iter, false};
        Eigen::VectorXd g_new = problem.gradient(x_new);
        const Eigen::VectorXd s = x_new - x;
        const Eigen::VectorXd y = g - g_new;  // gradient of -f increases
        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
            const Eigen::MatrixXd v = eye - (s * y.transpose()) / sy;
            h_inv = v * h_inv * v.transpose() + (s * s.transpose()) / sy;
        }
        const double improvement = f_new - f;
        x = std::move(x_new);
        g = std::move(g_new);
        f = f_new;
        if (improvement <= tol * std::max(1.0, std::abs(f))) {
            return {x, f, iter + 1, true};
        }
    }
    return {x, f, iter, false};
}

}  // namespace

TomographyResult mle_reconstruct(const std::vector<CountRecord>& records,
                                 const std::vector<MeasurementSetting>& settings,
                                 const MleOptions& options, const DensityMatrix* target) {
    if (records.size() != settings.size()) {
        throw ValidationError("mle_reconstruct: record/setting count mismatch");
    }
    if (design_rank(settings) < 16) {
        throw ValidationError("mle_reconstruct: settings not informationally complete");
    }
    const std::vector<double> counts =
        processed_counts(records, options.subtract_accidentals);
    std::vector<double> durations;
    durations.reserve(records.size());
    for (const auto& r : records) durations.push_back(r.duration_s);
    const PoissonLikelihood problem(counts, durations, settings);

    DensityMatrix init = maximally_mixed();
    if (options.init_from_linear_inversion) {
        try {
            init = clamp_to_physical(linear_inversion(records, settings));
        } catch (const ValidationError&) {
            // fall back to the maximally mixed start
        }
    }
    const auto init_probs = expected_probabilities(init, settings);
    double exp_sum = 0.0, n_sum = 0.0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        exp_sum += std::max(init_probs[i], kProbFloor) * durations[i];
        n_sum += counts[i];
    }
    const double log_flux = std::log(std::max(n_sum / exp_sum, 1e-300));
    const Eigen::VectorXd x0 = PoissonLikelihood::params_from_state(init, log_flux);

    const BfgsResult opt =
        bfgs_maximize(problem, x0, options.max_iters, options.tolerance);

    TomographyResult result{PoissonLikelihood::rho_from_params(opt.x), opt.value,
                            opt.iterations, opt.converged, std::nullopt};
    if (target != nullptr) {
        result.fidelity_vs_target = fidelity(result.rho, *target);
    }
    return result;
}

StateReport derived_quantities(const TomographyResult& result) {
    return report(result.rho);
}

}  // namespace entsim
