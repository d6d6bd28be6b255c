#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <bit>

#include "fqb/experiments.hpp"
#include "fqb/floquet.hpp"
#include "fqb/io.hpp"
#include "fqb/observables.hpp"
#include "fqb/oracle.hpp"

namespace py = pybind11;

namespace {

using ComplexArray = py::array_t<fqb::Complex, py::array::c_style | py::array::forcecast>;

fqb::StateVector to_state(const ComplexArray& amps) {
  const auto size = static_cast<std::size_t>(amps.size());
  if (size < 2 || !std::has_single_bit(size)) throw py::value_error("amplitude count must be a power of two >= 2");
  const int n = std::countr_zero(size);
  std::vector<fqb::Complex> v(amps.data(), amps.data() + size);
  return fqb::StateVector(n, std::move(v));
}

// Explicit shape: the bare count constructor can yield a zero stride.
template <class T>
py::array_t<T> vector_of(py::ssize_t len) {
  return py::array_t<T>(std::vector<py::ssize_t>{len});
}

ComplexArray to_array(const fqb::StateVector& psi) {
  ComplexArray out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(psi.dim())});
  std::copy(psi.amplitudes().begin(), psi.amplitudes().end(), out.mutable_data());
  return out;
}

py::dict series_to_dict(const fqb::KickSeries& s) {
  const auto len = static_cast<py::ssize_t>(s.records.size());
  auto n = vector_of<long>(len);
  auto de = vector_of<double>(len);
  auto power = vector_of<double>(len);
  auto nv = n.mutable_unchecked<1>();
  auto dv = de.mutable_unchecked<1>();
  auto pv = power.mutable_unchecked<1>();
  for (py::ssize_t i = 0; i < len; ++i) {
    nv(i) = s.records[i].n;
    dv(i) = s.records[i].delta_e;
    pv(i) = s.records[i].power;
  }
  py::dict d;
  d["n"] = n;
  d["delta_e"] = de;
  d["power"] = power;
  if (!s.records.empty() && s.records.front().entropy) {
    auto ent = vector_of<double>(len);
    auto ev = ent.mutable_unchecked<1>();
    for (py::ssize_t i = 0; i < len; ++i) ev(i) = *s.records[i].entropy;
    d["entropy"] = ent;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact stroboscopic simulator for Floquet-charged spin-1/2 quantum batteries";

  py::enum_<fqb::Boundary>(m, "Boundary")
      .value("PBC", fqb::Boundary::Periodic)
      .value("OBC", fqb::Boundary::Open);
  py::enum_<fqb::Range>(m, "Range")
      .value("LONG_RANGE", fqb::Range::LongRange)
      .value("NEAREST_NEIGHBOR", fqb::Range::NearestNeighbor);
  py::enum_<fqb::FixedInterval>(m, "FixedInterval")
      .value("TAU0", fqb::FixedInterval::Tau0)
      .value("TAU1", fqb::FixedInterval::Tau1);

  py::class_<fqb::ChargerParams>(m, "ChargerParams")
      .def(py::init([](int n_sites, double coupling, double hx, double hz, double omega, double tau0, double tau1,
                       fqb::Boundary boundary, fqb::Range range, bool antipodal_halving) {
             fqb::ChargerParams p{n_sites, coupling, hx, hz, omega, tau0, tau1, boundary, range, antipodal_halving};
             p.validate();
             return p;
           }),
           py::kw_only(), py::arg("n_sites") = 8, py::arg("coupling") = 1.0, py::arg("hx") = 0.0,
           py::arg("hz") = 1.0, py::arg("omega") = 1.0, py::arg("tau0") = 0.0, py::arg("tau1") = 0.0,
           py::arg("boundary") = fqb::Boundary::Periodic, py::arg("range") = fqb::Range::LongRange,
           py::arg("antipodal_halving") = false)
      .def_readwrite("n_sites", &fqb::ChargerParams::n_sites)
      .def_readwrite("coupling", &fqb::ChargerParams::coupling)
      .def_readwrite("hx", &fqb::ChargerParams::hx)
      .def_readwrite("hz", &fqb::ChargerParams::hz)
      .def_readwrite("omega", &fqb::ChargerParams::omega)
      .def_readwrite("tau0", &fqb::ChargerParams::tau0)
      .def_readwrite("tau1", &fqb::ChargerParams::tau1)
      .def_readwrite("boundary", &fqb::ChargerParams::boundary)
      .def_readwrite("range", &fqb::ChargerParams::range)
      .def_readwrite("antipodal_halving", &fqb::ChargerParams::antipodal_halving)
      .def_property_readonly("period", &fqb::ChargerParams::period)
      .def("__repr__", [](const fqb::ChargerParams& p) { return "ChargerParams(" + fqb::canonical_params(p) + ")"; });

  m.def(
      "bond_table",
      [](const fqb::ChargerParams& p) {
        std::vector<std::tuple<int, int, double>> out;
        const fqb::BondTable table = fqb::build_bond_table(p);
        for (const auto& b : table.bonds()) out.emplace_back(b.i, b.j, b.weight);
        return out;
      },
      py::arg("params"), "Bonds (i, j, weight) of the x-x interaction, 0-based sites.");

  m.def(
      "evolve",
      [](const fqb::ChargerParams& p, long n_max, std::optional<std::vector<int>> entropy_sites) {
        fqb::ObservableSelection sel;
        if (entropy_sites) sel.entropy = fqb::BipartitionSpec{*entropy_sites, fqb::LogBase::Natural};
        fqb::KickSeries s;
        {
          py::gil_scoped_release release;
          s = fqb::evolve(p, n_max, sel);
        }
        return series_to_dict(s);
      },
      py::arg("params"), py::arg("n_max") = fqb::kDefaultKicks, py::arg("entropy_sites") = py::none(),
      "Kick series from the ground state: dict of numpy arrays n, delta_e, power[, entropy (nats)].");

  m.def(
      "evolve_state",
      [](const fqb::ChargerParams& p, long n_kicks) {
        if (n_kicks < 0) throw py::value_error("n_kicks must be >= 0");
        const fqb::FloquetOperator op(p);
        fqb::StateVector psi = fqb::ground_state(p.n_sites, p.omega);
        for (long k = 0; k < n_kicks; ++k) op.apply(psi);
        return to_array(psi);
      },
      py::arg("params"), py::arg("n_kicks"), "Amplitudes after n_kicks Floquet periods.");

  m.def(
      "ground_state", [](int n, double omega) { return to_array(fqb::ground_state(n, omega)); }, py::arg("n_sites"),
      py::arg("omega") = 1.0);

  m.def(
      "fwht",
      [](const ComplexArray& amps) {
        fqb::StateVector psi = to_state(amps);
        fqb::fwht_inplace(psi);
        return to_array(psi);
      },
      py::arg("amplitudes"), "Normalized Walsh-Hadamard transform (returns a new array).");

  m.def(
      "stored_energy", [](const ComplexArray& amps, double omega) { return fqb::stored_energy(to_state(amps), omega); },
      py::arg("amplitudes"), py::arg("omega") = 1.0);

  m.def(
      "entanglement_entropy",
      [](const ComplexArray& amps, std::vector<int> sites, bool base_two) {
        return fqb::entanglement_entropy(to_state(amps),
                                         {std::move(sites), base_two ? fqb::LogBase::Two : fqb::LogBase::Natural});
      },
      py::arg("amplitudes"), py::arg("sites"), py::arg("base_two") = false);

  m.def("charging_power", &fqb::charging_power, py::arg("delta_e"), py::arg("n"), py::arg("tau0"), py::arg("tau1"));

  m.def(
      "max_stored_energy",
      [](const fqb::ChargerParams& p, long n_max) {
        const auto peak = fqb::max_stored_energy(fqb::evolve(p, n_max));
        return py::make_tuple(peak.delta_e_max, peak.n_star);
      },
      py::arg("params"), py::arg("n_max") = fqb::kDefaultKicks, "(delta_e_max, n_star) of a fresh evolution.");

  m.def(
      "detect_period",
      [](const fqb::ChargerParams& p, long n_max, double tol) { return fqb::detect_period(fqb::evolve(p, n_max), tol); },
      py::arg("params"), py::arg("n_max") = fqb::kDefaultKicks, py::arg("tol") = fqb::kPeriodTolerance);

  py::class_<fqb::SweepPoint>(m, "SweepPoint")
      .def_readonly("value", &fqb::SweepPoint::value)
      .def_readonly("delta_e_max", &fqb::SweepPoint::delta_e_max)
      .def_readonly("n_star", &fqb::SweepPoint::n_star)
      .def_readonly("p_max", &fqb::SweepPoint::p_max)
      .def_readonly("period", &fqb::SweepPoint::period)
      .def_readonly("n_sites", &fqb::SweepPoint::n_sites);

  const auto options = [](long n_max, unsigned workers) { return fqb::SweepOptions{n_max, workers}; };

  m.def(
      "sweep_tau",
      [options](const fqb::ChargerParams& base, std::vector<double> grid, long n_max, unsigned workers) {
        if (grid.empty()) grid = fqb::default_tau_grid();
        py::gil_scoped_release release;
        return fqb::sweep_tau(base, grid, options(n_max, workers)).points;
      },
      py::arg("base"), py::arg("grid") = std::vector<double>{}, py::arg("n_max") = fqb::kDefaultKicks,
      py::arg("workers") = 1);

  m.def(
      "sweep_asymmetric",
      [options](const fqb::ChargerParams& base, fqb::FixedInterval fixed, double value, std::vector<double> grid,
                long n_max, unsigned workers) {
        if (grid.empty()) grid = fqb::default_tau_grid();
        py::gil_scoped_release release;
        return fqb::sweep_asymmetric(base, fixed, value, grid, options(n_max, workers)).points;
      },
      py::arg("base"), py::arg("fixed"), py::arg("fixed_value"), py::arg("grid") = std::vector<double>{},
      py::arg("n_max") = fqb::kDefaultKicks, py::arg("workers") = 1);

  m.def(
      "sweep_size",
      [options](const fqb::ChargerParams& base, const std::vector<int>& sizes, long n_max, unsigned workers) {
        py::gil_scoped_release release;
        return fqb::sweep_size(base, sizes, options(n_max, workers)).points;
      },
      py::arg("base"), py::arg("sizes"), py::arg("n_max") = fqb::kDefaultKicks, py::arg("workers") = 1);

  m.def(
      "sweep_coupling",
      [options](const fqb::ChargerParams& base, const std::vector<double>& couplings, long n_max, unsigned workers) {
        py::gil_scoped_release release;
        return fqb::sweep_coupling(base, couplings, options(n_max, workers)).points;
      },
      py::arg("base"), py::arg("couplings"), py::arg("n_max") = fqb::kDefaultKicks, py::arg("workers") = 1);

  m.def(
      "landscape_table",
      [](int n_sites, long n_max, unsigned workers) {
        std::vector<fqb::LandscapeRow> rows;
        {
          py::gil_scoped_release release;
          rows = fqb::landscape_table(n_sites, {n_max, workers});
        }
        py::list out;
        for (const auto& r : rows) {
          py::dict d;
          d["range"] = fqb::to_string(r.range);
          d["integrable"] = r.integrable;
          d["boundary"] = fqb::to_string(r.boundary);
          d["tau_index"] = r.tau_index;
          d["tau"] = r.tau;
          d["delta_e_max"] = r.delta_e_max;
          d["n_star"] = r.n_star;
          d["prediction"] = r.prediction.text;
          d["match"] = r.match;
          if (r.alternative) {
            d["alt_prediction"] = r.alternative->text;
            d["alt_match"] = r.alternative_match;
          }
          out.append(d);
        }
        return out;
      },
      py::arg("n_sites"), py::arg("n_max") = fqb::kDefaultKicks, py::arg("workers") = 1);

  m.def(
      "cross_validate",
      [](const fqb::ChargerParams& p, long n_kicks, double tol) {
        const auto r = fqb::oracle::cross_validate(p, n_kicks, tol);
        py::dict d;
        d["max_amp_dev"] = r.max_amp_dev;
        d["max_energy_dev"] = r.max_energy_dev;
        d["pass"] = r.pass;
        return d;
      },
      py::arg("params"), py::arg("n_kicks") = 50, py::arg("tol") = 1e-10,
      "Compare the fast path with dense Taylor-exponential evolution.");

  m.def("parse_angle", [](const std::string& s) { return fqb::parse_angle(s); }, py::arg("text"));
}
