#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "oamsim/config.hpp"
#include "oamsim/lg.hpp"
#include "oamsim/oam_spectrum.hpp"
#include "oamsim/quadrature.hpp"
#include "oamsim/spdc.hpp"
#include "oamsim/tomography.hpp"
#include "oamsim/version.hpp"
#include "oamsim/vortex.hpp"

namespace py = pybind11;
using namespace oamsim;

namespace {

py::array_t<cplx> field_array(const ScalarField& f) {
    int n = f.grid.n;
    py::array_t<cplx> out({n, n});
    auto r = out.mutable_unchecked<2>();
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) r(iy, ix) = f.at(ix, iy);
    return out;
}

ScalarField field_from_array(const Grid& grid, py::array_t<cplx, py::array::c_style> arr) {
    auto r = arr.unchecked<2>();
    if (r.shape(0) != grid.n || r.shape(1) != grid.n)
        throw std::invalid_argument("amplitude array shape must be (n, n)");
    ScalarField f(grid);
    for (int iy = 0; iy < grid.n; ++iy)
        for (int ix = 0; ix < grid.n; ++ix) f.at(ix, iy) = r(iy, ix);
    return f;
}

py::array_t<cplx> joint_amps(const JointSpectrum& j) {
    py::array_t<cplx> out({j.n_ls(), j.n_li()});
    auto r = out.mutable_unchecked<2>();
    for (int i = 0; i < j.n_ls(); ++i)
        for (int k = 0; k < j.n_li(); ++k)
            r(i, k) = j.amps[static_cast<std::size_t>(i) * j.n_li() + k];
    return out;
}

py::array_t<double> joint_probs(const JointSpectrum& j) {
    py::array_t<double> out({j.n_ls(), j.n_li()});
    auto r = out.mutable_unchecked<2>();
    for (int i = 0; i < j.n_ls(); ++i)
        for (int k = 0; k < j.n_li(); ++k)
            r(i, k) = j.probs[static_cast<std::size_t>(i) * j.n_li() + k];
    return out;
}

py::array_t<cplx> rho_array(const DensityMatrix& rho) {
    py::array_t<cplx> out({4, 4});
    auto r = out.mutable_unchecked<2>();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) r(a, b) = rho.at(a, b);
    return out;
}

} // namespace

PYBIND11_MODULE(_oamsim, m) {
    m.doc() = "asymmetric-pump SPDC orbital-angular-momentum simulator";
    m.attr("__version__") = kVersion;

    py::class_<Grid>(m, "Grid")
        .def(py::init<int, double>(), py::arg("n"), py::arg("extent"))
        .def_readonly("n", &Grid::n)
        .def_readonly("extent", &Grid::extent)
        .def_property_readonly("spacing", &Grid::spacing)
        .def("coord", &Grid::coord, py::arg("j"))
        .def("__repr__", [](const Grid& g) {
            return "Grid(n=" + std::to_string(g.n) + ", extent=" + std::to_string(g.extent) + ")";
        });

    py::class_<ScalarField>(m, "ScalarField")
        .def(py::init(&field_from_array), py::arg("grid"), py::arg("amp"))
        .def_readonly("grid", &ScalarField::grid)
        .def_property_readonly("amp", &field_array)
        .def("power", &ScalarField::power)
        .def("normalize", &ScalarField::normalize);

    py::class_<LgParams>(m, "LgParams")
        .def(py::init([](int l, int p, double w) { return LgParams{l, p, w}; }), py::arg("l"),
             py::arg("p"), py::arg("w"))
        .def_readwrite("l", &LgParams::l)
        .def_readwrite("p", &LgParams::p)
        .def_readwrite("w", &LgParams::w);

    m.def("lg_mode", &lg_mode, py::arg("params"), py::arg("grid"));
    m.def(
        "inner_product",
        [](const ScalarField& a, const ScalarField& b) { return inner_product(a, b); },
        py::arg("a"), py::arg("b"));

    py::class_<PumpSpec>(m, "PumpSpec")
        .def(py::init([](int m_, double shift_ratio, double w, double lambda_p) {
                 return PumpSpec{m_, shift_ratio, w, lambda_p};
             }),
             py::arg("m"), py::arg("shift_ratio"), py::arg("w"), py::arg("lambda_p") = 405e-9)
        .def_readwrite("m", &PumpSpec::m)
        .def_readwrite("shift_ratio", &PumpSpec::shift_ratio)
        .def_readwrite("w", &PumpSpec::w)
        .def_readwrite("lambda_p", &PumpSpec::lambda_p);

    m.def("synthesize_shifted_vortex", &synthesize_shifted_vortex, py::arg("spec"),
          py::arg("grid"));
    m.def("far_field", &far_field, py::arg("field"));
    m.def("pump_at_crystal", &pump_at_crystal, py::arg("spec"), py::arg("w_p"), py::arg("grid"));
    m.def("fwhm_radius_factor", &fwhm_radius_factor);

    py::class_<OamSpectrum>(m, "OamSpectrum")
        .def_readonly("l_min", &OamSpectrum::l_min)
        .def_readonly("l_max", &OamSpectrum::l_max)
        .def_readonly("weights", &OamSpectrum::weights)
        .def_readonly("captured_fraction", &OamSpectrum::captured_fraction)
        .def_readonly("range_warning", &OamSpectrum::range_warning)
        .def("weight", &OamSpectrum::weight, py::arg("l"));

    m.def(
        "power_spectrum",
        [](const ScalarField& f, int l_min, int l_max) { return power_spectrum(f, l_min, l_max); },
        py::arg("field"), py::arg("l_min"), py::arg("l_max"));
    m.def("dominant_modes", &dominant_modes, py::arg("spectrum"), py::arg("mass"));
    m.def("spectrum_mean", &spectrum_mean, py::arg("spectrum"));

    py::class_<CrystalParams>(m, "CrystalParams")
        .def(py::init<>())
        .def_readwrite("length", &CrystalParams::length)
        .def_readwrite("lambda_p", &CrystalParams::lambda_p)
        .def_readwrite("lambda_s", &CrystalParams::lambda_s)
        .def_readwrite("lambda_i", &CrystalParams::lambda_i)
        .def_readwrite("w_p", &CrystalParams::w_p)
        .def_readwrite("w_s", &CrystalParams::w_s)
        .def_readwrite("w_i", &CrystalParams::w_i)
        .def("validate", &CrystalParams::validate);

    py::class_<JointSpectrum>(m, "JointSpectrum")
        .def_static(
            "from_amplitudes",
            [](int ls_min, int ls_max, int li_min, int li_max,
               py::array_t<cplx, py::array::c_style> amps) {
                auto r = amps.unchecked<2>();
                std::vector<cplx> flat;
                flat.reserve(static_cast<std::size_t>(r.shape(0)) * r.shape(1));
                for (py::ssize_t i = 0; i < r.shape(0); ++i)
                    for (py::ssize_t j = 0; j < r.shape(1); ++j) flat.push_back(r(i, j));
                return JointSpectrum::from_amplitudes(ls_min, ls_max, li_min, li_max,
                                                      std::move(flat));
            },
            py::arg("ls_min"), py::arg("ls_max"), py::arg("li_min"), py::arg("li_max"),
            py::arg("amps"))
        .def_readonly("ls_min", &JointSpectrum::ls_min)
        .def_readonly("ls_max", &JointSpectrum::ls_max)
        .def_readonly("li_min", &JointSpectrum::li_min)
        .def_readonly("li_max", &JointSpectrum::li_max)
        .def_property_readonly("amps", &joint_amps)
        .def_property_readonly("probs", &joint_probs)
        .def("amp", &JointSpectrum::amp, py::arg("ls"), py::arg("li"))
        .def("prob", &JointSpectrum::prob, py::arg("ls"), py::arg("li"));

    m.def("overlap_coefficient", &overlap_coefficient, py::arg("pump"), py::arg("l_s"),
          py::arg("l_i"), py::arg("crystal"));
    m.def("joint_spectrum", &joint_spectrum, py::arg("pump"), py::arg("ls_min"),
          py::arg("ls_max"), py::arg("li_min"), py::arg("li_max"), py::arg("crystal"),
          py::arg("threads") = 1);
    m.def("conditional_spectrum", &conditional_spectrum, py::arg("joint"), py::arg("l_s_fixed"));
    m.def("azimuthal_schmidt", &azimuthal_schmidt, py::arg("joint"));

    py::class_<BandSchmidt>(m, "BandSchmidt")
        .def_readonly("l_p", &BandSchmidt::l_p)
        .def_readonly("weight", &BandSchmidt::weight)
        .def_readonly("K", &BandSchmidt::K);
    m.def("band_schmidt", &band_schmidt, py::arg("joint"), py::arg("l_p"));

    py::enum_<BConvention>(m, "BConvention")
        .value("SQRT_L_OVER_KP", BConvention::SqrtLOverKp)
        .value("SQRT_L_OVER_2KP", BConvention::SqrtLOver2Kp)
        .value("SQRT_L_LAMBDA_OVER_2PI", BConvention::SqrtLLambdaOver2Pi);

    py::class_<SchmidtParams>(m, "SchmidtParams")
        .def(py::init<>())
        .def_readwrite("alpha", &SchmidtParams::alpha)
        .def_readwrite("beta", &SchmidtParams::beta)
        .def_readwrite("b_convention", &SchmidtParams::b_convention);

    m.def("b_parameter", &b_parameter, py::arg("convention"), py::arg("crystal"));
    m.def("analytic_schmidt_gaussian", &analytic_schmidt_gaussian, py::arg("crystal"),
          py::arg("schmidt"));

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("ratio", &SweepRow::ratio)
        .def_readonly("K_svd", &SweepRow::K_svd)
        .def_readonly("K_weighted", &SweepRow::K_weighted)
        .def_readonly("K_band_sum", &SweepRow::K_band_sum)
        .def_readonly("bands", &SweepRow::bands);
    m.def("schmidt_sweep", &schmidt_sweep, py::arg("base"), py::arg("shifts"), py::arg("crystal"),
          py::arg("ls_min"), py::arg("ls_max"), py::arg("li_min"), py::arg("li_max"),
          py::arg("grid"), py::arg("threads") = 1);

    py::class_<QubitBasis>(m, "QubitBasis")
        .def(py::init([](int l) { return QubitBasis{l}; }), py::arg("l"))
        .def_readwrite("l", &QubitBasis::l);

    py::class_<CountRecord>(m, "CountRecord")
        .def_readonly("setting", &CountRecord::setting)
        .def_readonly("rate", &CountRecord::rate)
        .def_readonly("counts", &CountRecord::counts)
        .def_readonly("scale", &CountRecord::scale);

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def_property_readonly("rho", &rho_array)
        .def("trace_real", &DensityMatrix::trace_real);

    m.def("run_tomography", &run_tomography, py::arg("joint"), py::arg("basis"),
          py::arg("counts_per_setting"), py::arg("noise"), py::arg("seed"));
    m.def("reconstruct", &reconstruct, py::arg("records"));
    m.def("fidelity", &fidelity, py::arg("rho"));

    py::class_<FidelityPoint>(m, "FidelityPoint")
        .def_readonly("ratio", &FidelityPoint::ratio)
        .def_readonly("F", &FidelityPoint::F)
        .def_readonly("rho", &FidelityPoint::rho);
    m.def("fidelity_sweep", &fidelity_sweep, py::arg("base"), py::arg("shifts"),
          py::arg("crystal"), py::arg("basis"), py::arg("counts_per_setting"), py::arg("noise"),
          py::arg("seed"), py::arg("grid"), py::arg("ls_min"), py::arg("ls_max"),
          py::arg("li_min"), py::arg("li_max"), py::arg("threads") = 1);
}
