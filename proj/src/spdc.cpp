#include "oamsim/spdc.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

#include "oamsim/lg.hpp"
#include "oamsim/parallel.hpp"
#include "oamsim/quadrature.hpp"

namespace oamsim {

void CrystalParams::validate() const {
    if (!(length > 0) || !(lambda_p > 0) || !(lambda_s > 0) || !(lambda_i > 0) || !(w_p > 0) ||
        !(w_s > 0) || !(w_i > 0))
        throw std::invalid_argument("CrystalParams: all lengths must be > 0");
    double lhs = 1.0 / lambda_p;
    double rhs = 1.0 / lambda_s + 1.0 / lambda_i;
    if (std::abs(lhs - rhs) > 1e-9 * lhs)
        throw std::invalid_argument(
            "CrystalParams: energy conservation 1/lambda_p = 1/lambda_s + 1/lambda_i violated");
}

std::string to_string(BConvention c) {
    switch (c) {
        case BConvention::SqrtLOverKp: return "sqrt_L_over_kp";
        case BConvention::SqrtLOver2Kp: return "sqrt_L_over_2kp";
        case BConvention::SqrtLLambdaOver2Pi: return "sqrt_L_lambda_over_2pi";
    }
    throw std::logic_error("unknown BConvention");
}

BConvention b_convention_from_string(const std::string& s) {
    if (s == "sqrt_L_over_kp") return BConvention::SqrtLOverKp;
    if (s == "sqrt_L_over_2kp") return BConvention::SqrtLOver2Kp;
    if (s == "sqrt_L_lambda_over_2pi") return BConvention::SqrtLLambdaOver2Pi;
    throw std::invalid_argument("unknown b_convention '" + s +
                                "' (expected sqrt_L_over_kp, sqrt_L_over_2kp or "
                                "sqrt_L_lambda_over_2pi)");
}

double b_parameter(BConvention c, const CrystalParams& crystal) {
    double L = crystal.length;
    double kp = crystal.pump_wavenumber();
    switch (c) {
        case BConvention::SqrtLOverKp: return std::sqrt(L / kp);
        case BConvention::SqrtLOver2Kp: return std::sqrt(L / (2.0 * kp));
        case BConvention::SqrtLLambdaOver2Pi: return std::sqrt(L * crystal.lambda_p / (2.0 * M_PI));
    }
    throw std::logic_error("unknown BConvention");
}

void SchmidtParams::validate() const {
    if (!(alpha > 0) || !(beta > 0))
        throw std::invalid_argument("SchmidtParams: alpha and beta must be > 0");
}

cplx overlap_coefficient(const ScalarField& pump, int l_s, int l_i,
                         const CrystalParams& crystal) {
    crystal.validate();
    ScalarField signal = lg_mode({l_s, 0, crystal.w_s}, pump.grid);
    ScalarField idler = lg_mode({l_i, 0, crystal.w_i}, pump.grid);
    cplx s(0.0, 0.0);
    const std::size_t count = pump.amp.size();
    for (std::size_t k = 0; k < count; ++k)
        s += pump.amp[k] * std::conj(signal.amp[k]) * std::conj(idler.amp[k]);
    double h = pump.grid.spacing();
    return s * (h * h);
}

JointSpectrum JointSpectrum::from_amplitudes(int ls_min, int ls_max, int li_min, int li_max,
                                             std::vector<cplx> amps) {
    if (ls_min > ls_max || li_min > li_max)
        throw std::invalid_argument("JointSpectrum: empty index range");
    JointSpectrum joint;
    joint.ls_min = ls_min;
    joint.ls_max = ls_max;
    joint.li_min = li_min;
    joint.li_max = li_max;
    const std::size_t expect =
        static_cast<std::size_t>(joint.n_ls()) * static_cast<std::size_t>(joint.n_li());
    if (amps.size() != expect)
        throw std::invalid_argument("JointSpectrum: amplitude matrix size mismatch");
    joint.amps = std::move(amps);
    double total = 0.0;
    for (const cplx& c : joint.amps) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw std::invalid_argument("JointSpectrum: non-finite amplitude");
        total += std::norm(c);
    }
    if (!(total > 0)) throw std::invalid_argument("JointSpectrum: zero amplitude matrix");
    joint.probs.resize(joint.amps.size());
    for (std::size_t k = 0; k < joint.amps.size(); ++k)
        joint.probs[k] = std::norm(joint.amps[k]) / total;
    return joint;
}

JointSpectrum joint_spectrum(const ScalarField& pump, int ls_min, int ls_max, int li_min,
                             int li_max, const CrystalParams& crystal, int threads) {
    crystal.validate();
    if (ls_min > ls_max || li_min > li_max)
        throw std::invalid_argument("joint_spectrum: empty index range");
    if (std::max(std::abs(ls_min), std::abs(ls_max)) > kMaxAzimuthalIndex ||
        std::max(std::abs(li_min), std::abs(li_max)) > kMaxAzimuthalIndex)
        throw std::invalid_argument("joint_spectrum: index range beyond supported bound");

    const int n_ls = ls_max - ls_min + 1;
    const int n_li = li_max - li_min + 1;
    const std::size_t npix = pump.amp.size();
    const double h2 = pump.grid.spacing() * pump.grid.spacing();

    // conj of every projection mode once; each C(l_s, l_i) is then one pass
    std::vector<std::vector<cplx>> sig(n_ls), idl(n_li);
    for (int i = 0; i < n_ls; ++i) {
        ScalarField mode = lg_mode({ls_min + i, 0, crystal.w_s}, pump.grid);
        sig[i].resize(npix);
        for (std::size_t k = 0; k < npix; ++k) sig[i][k] = std::conj(mode.amp[k]);
    }
    for (int j = 0; j < n_li; ++j) {
        ScalarField mode = lg_mode({li_min + j, 0, crystal.w_i}, pump.grid);
        idl[j].resize(npix);
        for (std::size_t k = 0; k < npix; ++k) idl[j][k] = std::conj(mode.amp[k]);
    }

    std::vector<cplx> amps(static_cast<std::size_t>(n_ls) * n_li);
    parallel_for(threads, static_cast<std::size_t>(n_ls), [&](std::size_t row) {
        std::vector<cplx> pre(npix);
        for (std::size_t k = 0; k < npix; ++k) pre[k] = pump.amp[k] * sig[row][k];
        for (int j = 0; j < n_li; ++j) {
            cplx s(0.0, 0.0);
            const std::vector<cplx>& id = idl[j];
            for (std::size_t k = 0; k < npix; ++k) s += pre[k] * id[k];
            amps[row * n_li + j] = s * h2;
        }
    });

    return JointSpectrum::from_amplitudes(ls_min, ls_max, li_min, li_max, std::move(amps));
}

OamSpectrum conditional_spectrum(const JointSpectrum& joint, int l_s_fixed) {
    if (l_s_fixed < joint.ls_min || l_s_fixed > joint.ls_max)
        throw std::invalid_argument("conditional_spectrum: l_s outside the joint range");
    OamSpectrum spec;
    spec.l_min = joint.li_min;
    spec.l_max = joint.li_max;
    spec.weights.resize(joint.n_li());
    double total = 0.0;
    for (int j = 0; j < joint.n_li(); ++j) {
        double p = joint.prob(l_s_fixed, joint.li_min + j);
        spec.weights[j] = p;
        total += p;
    }
    if (!(total > 0))
        throw std::runtime_error("conditional_spectrum: no coincidences at l_s = " +
                                 std::to_string(l_s_fixed));
    for (double& p : spec.weights) p /= total;
    spec.captured_fraction = 1.0;
    return spec;
}

namespace {

double schmidt_from_weights(const std::vector<double>& w2) {
    double s1 = 0.0, s2 = 0.0;
    for (double w : w2) {
        s1 += w;
        s2 += w * w;
    }
    if (!(s1 > 0)) throw std::runtime_error("schmidt: zero spectrum");
    return s1 * s1 / s2;
}

} // namespace

double azimuthal_schmidt(const JointSpectrum& joint) {
    Eigen::MatrixXcd m(joint.n_ls(), joint.n_li());
    for (int i = 0; i < joint.n_ls(); ++i)
        for (int j = 0; j < joint.n_li(); ++j)
            m(i, j) = joint.amps[static_cast<std::size_t>(i) * joint.n_li() + j];
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    std::vector<double> w2(sv.size());
    for (Eigen::Index k = 0; k < sv.size(); ++k) w2[k] = sv[k] * sv[k];
    return schmidt_from_weights(w2);
}

BandSchmidt band_schmidt(const JointSpectrum& joint, int l_p) {
    std::vector<double> w2;
    double total = 0.0;
    for (int i = 0; i < joint.n_ls(); ++i)
        for (int j = 0; j < joint.n_li(); ++j) {
            double p = std::norm(joint.amps[static_cast<std::size_t>(i) * joint.n_li() + j]);
            total += p;
            if ((joint.ls_min + i) + (joint.li_min + j) == l_p) w2.push_back(p);
        }
    if (w2.empty())
        throw std::invalid_argument("band_schmidt: band l_p = " + std::to_string(l_p) +
                                    " does not intersect the index ranges");
    BandSchmidt out;
    out.l_p = l_p;
    double band_total = 0.0;
    for (double w : w2) band_total += w;
    if (!(band_total > 0))
        throw std::runtime_error("band_schmidt: empty band l_p = " + std::to_string(l_p));
    out.weight = band_total / total;
    out.K = schmidt_from_weights(w2);
    return out;
}

double analytic_schmidt_gaussian(const CrystalParams& crystal, const SchmidtParams& sp) {
    crystal.validate();
    sp.validate();
    double b = b_parameter(sp.b_convention, crystal);
    double w = crystal.w_p;
    double a = sp.alpha;
    double ratio = (w * w + 4.0 * a * a * b * b) / (4.0 * w * a * b);
    return sp.beta * ratio * ratio;
}

std::vector<SweepRow> schmidt_sweep(const PumpSpec& base, const std::vector<double>& shifts,
                                    const CrystalParams& crystal, int ls_min, int ls_max,
                                    int li_min, int li_max, const Grid& grid, int threads) {
    for (double s : shifts)
        if (s < 0) throw std::invalid_argument("schmidt_sweep: shifts must be >= 0");

    std::vector<SweepRow> rows(shifts.size());
    parallel_for(threads, shifts.size(), [&](std::size_t idx) {
        PumpSpec spec = base;
        spec.shift_ratio = shifts[idx];
        ScalarField pump = pump_at_crystal(spec, crystal.w_p, grid);
        JointSpectrum joint = joint_spectrum(pump, ls_min, ls_max, li_min, li_max, crystal, 1);

        SweepRow row;
        row.ratio = shifts[idx];
        row.K_svd = azimuthal_schmidt(joint);
        for (int lp = ls_min + li_min; lp <= ls_max + li_max; ++lp) {
            BandSchmidt band = band_schmidt(joint, lp);
            if (band.weight >= kBandWeightCut) row.bands.push_back(band);
        }
        for (const BandSchmidt& band : row.bands) {
            row.K_weighted += band.weight * band.K;
            row.K_band_sum += band.K;
        }
        rows[idx] = std::move(row);
    });
    return rows;
}

} // namespace oamsim
