#include "oamsim/tomography.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <random>

#include "oamsim/parallel.hpp"

namespace oamsim {

void QubitBasis::validate() const {
    if (l == 0) throw std::invalid_argument("QubitBasis: l must be nonzero");
}

std::array<ArmSetting, 4> tomography_tetrad() {
    const double s = 1.0 / std::sqrt(2.0);
    return {ArmSetting{1.0, 0.0}, ArmSetting{0.0, 1.0}, ArmSetting{s, s},
            ArmSetting{s, cplx(0.0, s)}};
}

std::array<ProjectorSetting, 16> tomography_settings() {
    auto tetrad = tomography_tetrad();
    std::array<ProjectorSetting, 16> out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i * 4 + j] = {tetrad[i], tetrad[j]};
    return out;
}

double DensityMatrix::trace_real() const {
    double t = 0.0;
    for (int k = 0; k < 4; ++k) t += at(k, k).real();
    return t;
}

double projection_probability(const JointSpectrum& joint, const QubitBasis& basis,
                              const ProjectorSetting& setting) {
    basis.validate();
    const int l = basis.l;
    if (!joint.in_range(l, l) || !joint.in_range(0, 0))
        throw std::invalid_argument("projection_probability: qubit indices outside joint range");

    // coherent amplitude over the {l, 0} x {l, 0} span; everything else only
    // contributes to the normalization
    cplx A(0.0, 0.0);
    const int ls_vals[2] = {l, 0};
    const int li_vals[2] = {l, 0};
    const cplx cs[2] = {setting.signal.a, setting.signal.b};
    const cplx ci[2] = {setting.idler.a, setting.idler.b};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            A += std::conj(cs[i]) * std::conj(ci[j]) * joint.amp(ls_vals[i], li_vals[j]);

    double total = 0.0;
    for (const cplx& c : joint.amps) total += std::norm(c);
    return std::norm(A) / total;
}

std::vector<CountRecord> run_tomography(const JointSpectrum& joint, const QubitBasis& basis,
                                        long long counts_per_setting, bool noise,
                                        std::uint64_t seed) {
    if (counts_per_setting <= 0)
        throw std::invalid_argument("run_tomography: counts_per_setting must be > 0");
    auto settings = tomography_settings();
    std::mt19937_64 rng(seed);
    std::vector<CountRecord> records;
    records.reserve(settings.size());
    for (std::size_t k = 0; k < settings.size(); ++k) {
        CountRecord rec;
        rec.setting = static_cast<int>(k);
        rec.rate = projection_probability(joint, basis, settings[k]);
        rec.scale = counts_per_setting;
        double mean = static_cast<double>(counts_per_setting) * rec.rate;
        if (noise) {
            std::poisson_distribution<long long> poisson(mean);
            rec.counts = (mean > 0) ? poisson(rng) : 0;
        } else {
            rec.counts = static_cast<long long>(std::llround(mean));
        }
        records.push_back(rec);
    }
    return records;
}

DensityMatrix reconstruct(const std::vector<CountRecord>& records) {
    if (records.size() != 16)
        throw std::invalid_argument("reconstruct: expected 16 count records");

    auto settings = tomography_settings();
    Eigen::MatrixXcd design(16, 16);
    Eigen::VectorXcd rates(16);
    for (const CountRecord& rec : records) {
        if (rec.setting < 0 || rec.setting >= 16)
            throw std::invalid_argument("reconstruct: setting index out of range");
        const ProjectorSetting& st = settings[rec.setting];
        Eigen::Vector2cd vs(st.signal.a, st.signal.b);
        Eigen::Vector2cd vi(st.idler.a, st.idler.b);
        Eigen::Matrix2cd ps = vs * vs.adjoint();
        Eigen::Matrix2cd pi = vi * vi.adjoint();
        Eigen::Matrix4cd P = Eigen::kroneckerProduct(ps, pi).eval();
        // Tr(P rho) = sum_{a,b} P(a,b) rho(b,a): row = vec of P transposed
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) design(rec.setting, b * 4 + a) = P(a, b);
        rates(rec.setting) =
            static_cast<double>(rec.counts) / static_cast<double>(rec.scale);
    }

    Eigen::VectorXcd rho_vec = design.colPivHouseholderQr().solve(rates);
    Eigen::Matrix4cd rho;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) rho(r, c) = rho_vec(r * 4 + c);
    rho = 0.5 * (rho + rho.adjoint()).eval();

    // physical cone: clip negative eigenvalues, renormalize trace
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(rho);
    Eigen::Vector4d ev = eig.eigenvalues().cwiseMax(0.0);
    double tr = ev.sum();
    if (!(tr > 0)) throw std::runtime_error("reconstruct: reconstructed state has zero trace");
    rho = eig.eigenvectors() * (ev / tr).asDiagonal() * eig.eigenvectors().adjoint();

    DensityMatrix out;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out.at(r, c) = rho(r, c);
    return out;
}

double fidelity(const DensityMatrix& rho) {
    // |psi> = (|l,0> + |0,l>)/sqrt2 in basis order {|l,l>,|l,0>,|0,l>,|0,0>}
    cplx f = 0.5 * (rho.at(1, 1) + rho.at(1, 2) + rho.at(2, 1) + rho.at(2, 2));
    return f.real();
}

std::vector<FidelityPoint> fidelity_sweep(const PumpSpec& base, const std::vector<double>& shifts,
                                          const CrystalParams& crystal, const QubitBasis& basis,
                                          long long counts_per_setting, bool noise,
                                          std::uint64_t seed, const Grid& grid, int ls_min,
                                          int ls_max, int li_min, int li_max, int threads) {
    basis.validate();
    std::vector<FidelityPoint> points(shifts.size());
    parallel_for(threads, shifts.size(), [&](std::size_t idx) {
        PumpSpec spec = base;
        spec.shift_ratio = shifts[idx];
        ScalarField pump = pump_at_crystal(spec, crystal.w_p, grid);
        JointSpectrum joint = joint_spectrum(pump, ls_min, ls_max, li_min, li_max, crystal, 1);
        // per-point seed offset keeps points independent and order-stable
        auto records = run_tomography(joint, basis, counts_per_setting, noise,
                                      seed + static_cast<std::uint64_t>(idx));
        FidelityPoint pt;
        pt.ratio = shifts[idx];
        pt.rho = reconstruct(records);
        pt.F = fidelity(pt.rho);
        points[idx] = pt;
    });
    return points;
}

} // namespace oamsim
