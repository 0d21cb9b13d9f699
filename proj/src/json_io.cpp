#include "lldlab/json_io.hpp"

#include <algorithm>
#include <charconv>

namespace lldlab {

namespace {

void byte_to_line_col(const std::string& text, std::size_t byte, int* line,
                      int* col) {
    int ln = 1, cl = 1;
    const std::size_t stop = std::min(byte, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
        if (text[i] == '\n') {
            ++ln;
            cl = 1;
        } else {
            ++cl;
        }
    }
    *line = ln;
    *col = cl;
}

double require_number(const nlohmann::json& j, const char* key,
                      const char* ctx) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw std::invalid_argument(std::string(ctx) + ": missing numeric \"" +
                                    key + "\"");
    return j.at(key).get<double>();
}

long long require_int(const nlohmann::json& j, const char* key,
                      const char* ctx) {
    if (!j.contains(key) || !j.at(key).is_number_integer())
        throw std::invalid_argument(std::string(ctx) + ": missing integer \"" +
                                    key + "\"");
    return j.at(key).get<long long>();
}

}  // namespace

nlohmann::json parse_text(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        int line = 1, col = 1;
        // e.byte is 1-based, pointing one past the offending character
        byte_to_line_col(text, e.byte > 0 ? e.byte - 1 : 0, &line, &col);
        throw JsonError(e.what(), line, col);
    }
}

Divisor divisor_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw std::invalid_argument("divisor: missing \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();

    Divisor div;
    if (kind == "explicit") {
        if (!j.contains("points") || !j.at("points").is_array())
            throw std::invalid_argument("divisor: explicit kind needs \"points\"");
        std::vector<DivisorPoint> pts;
        for (const auto& p : j.at("points")) {
            DivisorPoint dp;
            dp.rho = {require_number(p, "re", "divisor point"),
                      require_number(p, "im", "divisor point")};
            dp.mult = require_int(p, "mult", "divisor point");
            pts.push_back(dp);
        }
        div = Divisor::from_points(std::move(pts));
    } else if (kind == "vertical_lattice") {
        const double step = require_number(j, "step", "divisor");
        const long long mult = require_int(j, "mult", "divisor");
        bool excl = true;
        if (j.contains("exclude_zero")) {
            if (!j.at("exclude_zero").is_boolean())
                throw std::invalid_argument(
                    "divisor: \"exclude_zero\" must be boolean");
            excl = j.at("exclude_zero").get<bool>();
        }
        div = Divisor::vertical_lattice(step, mult, excl);
    } else if (kind == "negative_integers") {
        const long long mult = require_int(j, "mult", "divisor");
        long long start = 1;
        if (j.contains("start")) start = require_int(j, "start", "divisor");
        div = Divisor::negative_integers(mult, start);
    } else if (kind == "appendix2") {
        div = Divisor::sharpness();
    } else {
        throw std::invalid_argument("divisor: unknown kind \"" + kind + "\"");
    }

    if (j.contains("tail_model")) {
        const auto& t = j.at("tail_model");
        TailModel tm;
        tm.alpha = require_number(t, "alpha", "tail_model");
        if (!t.contains("boundary_converges") ||
            !t.at("boundary_converges").is_boolean())
            throw std::invalid_argument(
                "tail_model: missing boolean \"boundary_converges\"");
        tm.boundary_converges = t.at("boundary_converges").get<bool>();
        tm.constant =
            t.contains("constant") ? require_number(t, "constant", "tail_model")
                                   : 1.0;
        if (!(tm.alpha >= 0.0) || !(tm.constant > 0.0))
            throw std::invalid_argument(
                "tail_model: alpha must be >= 0 and constant > 0");
        div.tail = tm;
    }
    if (j.contains("sigma1"))
        div.sigma1_declared = require_number(j, "sigma1", "divisor");
    return div;
}

nlohmann::json divisor_to_json(const Divisor& div) {
    nlohmann::json j;
    switch (div.kind) {
        case DivisorKind::Explicit: {
            j["kind"] = "explicit";
            auto arr = nlohmann::json::array();
            for (const auto& p : div.points)
                arr.push_back({{"re", p.rho.real()},
                               {"im", p.rho.imag()},
                               {"mult", p.mult}});
            j["points"] = std::move(arr);
            break;
        }
        case DivisorKind::VerticalLattice:
            j["kind"] = "vertical_lattice";
            j["step"] = div.step;
            j["mult"] = div.lattice_mult;
            j["exclude_zero"] = true;
            break;
        case DivisorKind::NegativeIntegers:
            j["kind"] = "negative_integers";
            j["mult"] = div.neg_mult;
            j["start"] = div.start;
            break;
        case DivisorKind::Sharpness:
            j["kind"] = "appendix2";
            break;
    }
    if (div.tail) {
        j["tail_model"] = {{"alpha", div.tail->alpha},
                           {"boundary_converges", div.tail->boundary_converges},
                           {"constant", div.tail->constant}};
    }
    if (div.sigma1_declared) j["sigma1"] = *div.sigma1_declared;
    return j;
}

DirichletSeries series_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("lambdas") || !j.at("lambdas").is_array())
        throw std::invalid_argument("series: missing \"lambdas\"");
    if (!j.contains("coeffs") || !j.at("coeffs").is_array())
        throw std::invalid_argument("series: missing \"coeffs\"");
    DirichletSeries f;
    for (const auto& l : j.at("lambdas")) {
        if (!l.is_number())
            throw std::invalid_argument("series: lambdas must be numbers");
        f.lambdas.push_back(l.get<double>());
    }
    for (const auto& c : j.at("coeffs")) f.coeffs.push_back(complex_from_json(c));
    f.abscissa = j.contains("abscissa")
                     ? require_number(j, "abscissa", "series")
                     : 0.0;
    validate(f);
    return f;
}

nlohmann::json series_to_json(const DirichletSeries& f) {
    nlohmann::json j;
    j["lambdas"] = f.lambdas;
    auto arr = nlohmann::json::array();
    for (const auto& c : f.coeffs) arr.push_back(complex_to_json(c));
    j["coeffs"] = std::move(arr);
    j["abscissa"] = f.abscissa;
    return j;
}

nlohmann::json complex_to_json(std::complex<double> z) {
    return {{"re", z.real()}, {"im", z.imag()}};
}

std::complex<double> complex_from_json(const nlohmann::json& j) {
    return {require_number(j, "re", "complex"),
            require_number(j, "im", "complex")};
}

nlohmann::json atoms_to_json(const AtomicMeasure& mu) {
    nlohmann::json j;
    j["cutoff"] = mu.cutoff;
    auto arr = nlohmann::json::array();
    for (const auto& a : mu.atoms)
        arr.push_back({{"freq", a.freq},
                       {"mass_re", a.mass.real()},
                       {"mass_im", a.mass.imag()}});
    j["atoms"] = std::move(arr);
    return j;
}

AtomicMeasure atoms_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("atoms") || !j.at("atoms").is_array())
        throw std::invalid_argument("atoms: missing \"atoms\" array");
    AtomicMeasure mu;
    for (const auto& a : j.at("atoms")) {
        Atom atom;
        atom.freq = require_number(a, "freq", "atom");
        atom.mass = {require_number(a, "mass_re", "atom"),
                     require_number(a, "mass_im", "atom")};
        if (!(atom.freq > 0.0))
            throw std::invalid_argument("atoms: frequencies must be positive");
        mu.atoms.push_back(atom);
    }
    std::sort(mu.atoms.begin(), mu.atoms.end(),
              [](const Atom& x, const Atom& y) { return x.freq < y.freq; });
    mu.cutoff = j.contains("cutoff") ? require_number(j, "cutoff", "atoms")
                : mu.atoms.empty()   ? 0.0
                                     : mu.atoms.back().freq;
    return mu;
}

std::string atoms_to_csv(const AtomicMeasure& mu) {
    std::string out = "freq,mass_re,mass_im\n";
    for (const auto& a : mu.atoms) {
        out += format_double(a.freq);
        out += ',';
        out += format_double(a.mass.real());
        out += ',';
        out += format_double(a.mass.imag());
        out += '\n';
    }
    return out;
}

std::string format_double(double x) {
    if (x == 0.0) return "0";
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

}  // namespace lldlab
