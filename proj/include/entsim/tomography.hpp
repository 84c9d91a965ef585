#pragma once

#include <optional>
#include <string>
#include <vector>

#include "entsim/counting.hpp"
#include "entsim/measures.hpp"

namespace entsim {

enum class SettingsMode { Sixteen, ThirtySix };

/// Single-qubit analysis kets by label: H, V, D = (H+V)/sqrt2,
/// A = (H-V)/sqrt2, R = (H-iV)/sqrt2, L = (H+iV)/sqrt2.
Eigen::Vector2cd analysis_ket(char label);

/// Product-projector tomography settings. Sixteen: {H,V,D,R} on each arm
/// (minimal informationally complete); ThirtySix: {H,V,D,A,R,L} on each.
/// Setting ids are the two-letter labels, arm A first.
std::vector<MeasurementSetting> standard_settings(SettingsMode mode);

/// Rebuild a tomography setting from its two-letter label.
MeasurementSetting setting_from_label(const std::string& label);

/// Born probabilities Tr[rho Pi_i] for every setting.
std::vector<double> expected_probabilities(const DensityMatrix& rho,
                                           const std::vector<MeasurementSetting>& settings);

/// Numerical rank of the vectorized projector design; 16 means the
/// settings are informationally complete.
int design_rank(const std::vector<MeasurementSetting>& settings);

/// Least-squares estimate of rho from per-setting probabilities.
/// Hermitian and unit trace by construction, but possibly non-PSD.
Mat4 linear_inversion_probabilities(const std::vector<double>& probabilities,
                                    const std::vector<MeasurementSetting>& settings);

/// As above, from counts: probabilities are accidental-subtracted counts
/// normalized per setting by duration and a shared flux estimate taken
/// from the {H,V}x{H,V} records.
Mat4 linear_inversion(const std::vector<CountRecord>& records,
                      const std::vector<MeasurementSetting>& settings);

/// Zero out negative eigenvalues and renormalize the trace.
DensityMatrix clamp_to_physical(const Mat4& hermitian);

/// Joint Poisson log-likelihood of tomographic count data over the
/// Cholesky-style parameterization rho = T^dag T / Tr(T^dag T), T lower
/// triangular with real diagonal (16 real parameters), plus log-flux as
/// parameter 17. Exposed for gradient verification.
class PoissonLikelihood {
  public:
    PoissonLikelihood(std::vector<double> counts, std::vector<double> durations,
                      const std::vector<MeasurementSetting>& settings);

    static constexpr int kDim = 17;

    double value(const Eigen::VectorXd& x) const;
    Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;

    static DensityMatrix rho_from_params(const Eigen::VectorXd& x);
    /// Inverse map: parameters whose rho equals the given (strictly
    /// positive-definite after regularization) state, with log-flux nu.
    static Eigen::VectorXd params_from_state(const DensityMatrix& rho, double log_flux);

    double total_counts() const { return total_counts_; }

  private:
    std::vector<double> counts_;
    std::vector<double> durations_;
    std::vector<Mat4> projectors_;
    double total_counts_;
};

struct MleOptions {
    int max_iters = 5000;
    double tolerance = 1e-9;
    bool init_from_linear_inversion = true;
    bool subtract_accidentals = true;
};

struct TomographyResult {
    DensityMatrix rho;
    double log_likelihood;
    int iterations;
    bool converged;
    std::optional<double> fidelity_vs_target;
};

/// Maximum-likelihood reconstruction: BFGS ascent with backtracking line
/// search on the PoissonLikelihood parameterization, warm-started from
/// clamped linear inversion. PSD and unit trace hold by construction.
TomographyResult mle_reconstruct(const std::vector<CountRecord>& records,
                                 const std::vector<MeasurementSetting>& settings,
                                 const MleOptions& options = {},
                                 const DensityMatrix* target = nullptr);

/// Measures of the reconstructed state; the per-point pipeline behind the
/// tangle-vs-entropy experimental plots.
StateReport derived_quantities(const TomographyResult& result);

}  // namespace entsim
