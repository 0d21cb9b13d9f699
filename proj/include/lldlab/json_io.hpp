#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "lldlab/dirichlet.hpp"
#include "lldlab/divisor.hpp"

namespace lldlab {

// Parse failure with a 1-based source position for error reporting.
struct JsonError : std::runtime_error {
    int line = 0;
    int col = 0;
    JsonError(const std::string& what, int line_, int col_)
        : std::runtime_error(what), line(line_), col(col_) {}
};

// nlohmann parse with the byte offset converted to line/column.
nlohmann::json parse_text(const std::string& text);

// Divisor wire format. kind selects the shape:
//   {"kind":"explicit","points":[{"re":..,"im":..,"mult":..}, ...]}
//   {"kind":"vertical_lattice","step":..,"mult":..,"exclude_zero":true}
//   {"kind":"negative_integers","mult":..,"start":..}
//   {"kind":"appendix2"}
// plus optional "tail_model":{"alpha":..,"boundary_converges":..,"constant":..}
// and optional "sigma1". Validation failures throw std::invalid_argument.
Divisor divisor_from_json(const nlohmann::json& j);
nlohmann::json divisor_to_json(const Divisor& div);

// {"lambdas":[..], "coeffs":[{"re":..,"im":..}, ..], "abscissa":..};
// abscissa defaults to 0 when absent.
DirichletSeries series_from_json(const nlohmann::json& j);
nlohmann::json series_to_json(const DirichletSeries& f);

nlohmann::json complex_to_json(std::complex<double> z);
std::complex<double> complex_from_json(const nlohmann::json& j);

// {"cutoff":.., "atoms":[{"freq":..,"mass_re":..,"mass_im":..}, ...]};
// cutoff defaults to the largest frequency when absent.
nlohmann::json atoms_to_json(const AtomicMeasure& mu);
AtomicMeasure atoms_from_json(const nlohmann::json& j);
std::string atoms_to_csv(const AtomicMeasure& mu);

// Deterministic "%.17g" rendering shared by the CSV emitters.
std::string format_double(double x);

}  // namespace lldlab
