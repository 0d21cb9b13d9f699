#include "lldlab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lldlab/dirichlet.hpp"
#include "lldlab/divisor.hpp"
#include "lldlab/hadamard.hpp"
#include "lldlab/json_io.hpp"
#include "lldlab/newton_cramer.hpp"
#include "lldlab/specfun.hpp"
#include "lldlab/summation.hpp"
#include "lldlab/test_function.hpp"
#include "lldlab/vertline.hpp"

namespace lldlab::cli {

namespace {

struct Flags {
    double tol = 1e-8;
    double T = 50.0;
    std::vector<double> cs;
    int mmax = 6;
    double tmax = 65536.0;
    std::string out_format = "json";
    std::uint64_t seed = 1;
    int k = 10;
    double eps = 0.1;
    std::string input;
    bool tmax_explicit = false;
};

void add_common_flags(CLI::App* sub, Flags* f) {
    sub->add_option("--tol", f->tol, "target tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--T", f->T, "frequency cutoff for atom sets")
        ->check(CLI::PositiveNumber);
    sub->add_option("--c", f->cs, "vertical line abscissa (repeatable)");
    sub->add_option("--mmax", f->mmax, "largest line weight tried")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--tmax", f->tmax, "line scan height cap")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", f->out_format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", f->seed, "sampling seed, echoed in reports");
    sub->add_option("--k", f->k, "sharpness index")->check(CLI::PositiveNumber);
    sub->add_option("--eps", f->eps, "sharpness epsilon")
        ->check(CLI::NonNegativeNumber);
}

std::string read_input_text(const std::string& spec) {
    if (!spec.empty() && spec.front() == '{') return spec;
    std::ostringstream ss;
    if (spec == "-") {
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream file(spec);
    if (!file) throw std::invalid_argument("input: cannot open " + spec);
    ss << file.rdbuf();
    return ss.str();
}

// f'/f proxy summed straight off the divisor: partial sums of
// n_rho / (s - rho) in the (|rho|, arg) enumeration order, prefix length
// 10 |Im s| so the near-resonant terms always sit inside the cut.
LineFunction make_divisor_line(const Divisor& div, long long origin_mult) {
    struct State {
        Divisor div;
        std::vector<DivisorPoint> pts;
        bool exhausted = false;
    };
    auto st = std::make_shared<State>();
    st->div = div;
    LineFunction F;
    F.valid_half_plane = sigma1(div).value;
    F.oscillation_scale =
        div.kind == DivisorKind::VerticalLattice ? div.step : 0.0;
    F.eval = [st, origin_mult](std::complex<double> s) {
        const auto need = static_cast<std::size_t>(
            std::max(4000.0, 10.0 * std::abs(s.imag())));
        if (st->pts.size() < need && !st->exhausted) {
            st->pts = enumerate_points(st->div, need + need / 2);
            if (st->pts.size() < need) st->exhausted = true;
        }
        const std::size_t used = std::min(need, st->pts.size());
        CompensatedSum<std::complex<double>> acc;
        for (std::size_t i = 0; i < used; ++i)
            acc.add(static_cast<double>(st->pts[i].mult) / (s - st->pts[i].rho));
        if (origin_mult != 0) acc.add(static_cast<double>(origin_mult) / s);
        return acc.value();
    };
    return F;
}

TestFunction phi_from_json(const nlohmann::json& j) {
    double center = 2.5, radius = 0.9;
    int order = 8;
    if (j.contains("center")) center = j.at("center").get<double>();
    if (j.contains("radius")) radius = j.at("radius").get<double>();
    if (j.contains("order")) order = static_cast<int>(j.at("order").get<long long>());
    if (!(radius > 0.0))
        throw std::invalid_argument("phi: radius must be positive");
    if (order < 1 || order > 12)
        throw std::invalid_argument("phi: order must lie in [1, 12]");
    return bump(center, radius, order);
}

PNInput pn_input_from_json(const nlohmann::json& j, double T, bool need_rhs) {
    if (!j.is_object() || !j.contains("divisor"))
        throw std::invalid_argument("input: missing \"divisor\"");
    PNInput in;
    in.divisor = divisor_from_json(j.at("divisor"));
    in.d = j.contains("d") ? static_cast<int>(j.at("d").get<long long>())
                           : convergence_exponent(in.divisor);
    if (in.d < 0) throw std::invalid_argument("input: negative \"d\"");
    if (j.contains("origin_mult"))
        in.origin_mult = j.at("origin_mult").get<long long>();
    if (j.contains("poly"))
        for (const auto& p : j.at("poly"))
            in.poly_at_infinity.push_back(complex_from_json(p));
    if (j.contains("tau")) in.tau_override = j.at("tau").get<double>();
    if (j.contains("atoms")) {
        in.rhs_atoms = atoms_from_json(j.at("atoms"));
    } else if (j.contains("series")) {
        in.rhs_atoms = inverse_laplace_atoms(series_from_json(j.at("series")), T);
    } else if (need_rhs) {
        throw std::invalid_argument(
            "input: need \"atoms\" or \"series\" for the right-hand side");
    }
    return in;
}

std::string integrand_csv(const LineFunction& F, double c, int m, double tmax) {
    std::string out = "t,integrand_abs\n";
    for (const auto& [t, v] : line_integrand_samples(F, c, m, 0.25, tmax, 240)) {
        out += format_double(t);
        out += ',';
        out += format_double(v);
        out += '\n';
    }
    return out;
}

std::vector<double> effective_cs(const Flags& f, double sigma1_value) {
    if (!f.cs.empty()) return f.cs;
    const double base = std::max(0.0, sigma1_value);
    return {base + 0.5, base + 2.0};
}

std::string run_analyze(const Flags& f, const nlohmann::json& input) {
    const Divisor div = divisor_from_json(input);
    const int d = convergence_exponent(div);
    const Sigma1Result s1 = sigma1(div);
    const std::vector<double> cs = effective_cs(f, s1.value);
    // full-height scans on a divisor-sum evaluator cost quadratically in the
    // cap; stay at 1024 unless the user asked for more
    const double tmax = f.tmax_explicit ? f.tmax : 1024.0;
    const LineFunction F = make_divisor_line(div, 0);
    const auto vo = vertical_order_estimate(F, cs, f.mmax, tmax, f.tol);
    const FunctionClass cls = classify(d, vo.m0, std::nullopt, false);

    if (f.out_format == "csv")
        return integrand_csv(F, cs.front(), vo.m0.value_or(0), tmax);
    nlohmann::json rep;
    rep["d"] = d;
    rep["m0"] = vo.m0 ? nlohmann::json(*vo.m0) : nlohmann::json(nullptr);
    rep["classification"] = to_string(cls);
    rep["sigma1"] = s1.value;
    rep["sigma1_exact"] = s1.exact;
    rep["cross_line_consistent"] = !vo.lemma_violation;
    rep["c_values"] = cs;
    rep["tmax_used"] = tmax;
    return rep.dump(2) + "\n";
}

std::string run_m0(const Flags& f, const nlohmann::json& input) {
    const Divisor div = divisor_from_json(input);
    const Sigma1Result s1 = sigma1(div);
    const std::vector<double> cs = effective_cs(f, s1.value);
    const double tmax = f.tmax_explicit ? f.tmax : 1024.0;
    const LineFunction F = make_divisor_line(div, 0);
    const auto vo = vertical_order_estimate(F, cs, f.mmax, tmax, f.tol);

    if (f.out_format == "csv")
        return integrand_csv(F, cs.front(), vo.m0.value_or(0), tmax);
    nlohmann::json rep;
    rep["m0"] = vo.m0 ? nlohmann::json(*vo.m0) : nlohmann::json(nullptr);
    rep["cross_line_consistent"] = !vo.lemma_violation;
    auto lines = nlohmann::json::array();
    for (const auto& r : vo.details)
        lines.push_back({{"c", r.c},
                         {"m", r.m},
                         {"convergent", r.convergent},
                         {"value", r.value ? nlohmann::json(*r.value)
                                           : nlohmann::json(nullptr)},
                         {"tail_exponent", r.tail_exponent},
                         {"windows", r.windows_used}});
    rep["lines"] = std::move(lines);
    rep["c_values"] = cs;
    rep["tmax_used"] = tmax;
    return rep.dump(2) + "\n";
}

std::string run_bk(const Flags& f, const nlohmann::json& input) {
    const AtomicMeasure mu = log_atoms(series_from_json(input), f.T);
    if (f.out_format == "csv") return atoms_to_csv(mu);
    return atoms_to_json(mu).dump(2) + "\n";
}

std::string run_atoms(const Flags& f, const nlohmann::json& input) {
    const AtomicMeasure mu =
        inverse_laplace_atoms(series_from_json(input), f.T);
    if (f.out_format == "csv") return atoms_to_csv(mu);
    return atoms_to_json(mu).dump(2) + "\n";
}

std::string run_verify_pn(const Flags& f, const nlohmann::json& input) {
    const PNInput in = pn_input_from_json(input, f.T, true);
    const TestFunction phi = phi_from_json(
        input.contains("phi") ? input.at("phi") : nlohmann::json::object());
    const PNReport rep = verify_poisson_newton(in, phi, {}, f.tol);

    if (f.out_format == "csv") {
        std::string out = "truncation,residual\n";
        for (const auto& [k, r] : rep.residual_history) {
            out += std::to_string(k);
            out += ',';
            out += format_double(r);
            out += '\n';
        }
        return out;
    }
    nlohmann::json j;
    j["lhs"] = complex_to_json(rep.lhs);
    j["rhs"] = complex_to_json(rep.rhs);
    j["residual"] = rep.residual;
    j["truncation"] = rep.truncation;
    j["tau"] = rep.tau;
    j["c_coeffs"] = nlohmann::json::array();
    auto hist = nlohmann::json::array();
    for (const auto& [k, r] : rep.residual_history)
        hist.push_back({{"truncation", k}, {"residual", r}});
    j["residual_history"] = std::move(hist);
    return j.dump(2) + "\n";
}

std::string run_discrepancy(const Flags& f, const nlohmann::json& input) {
    const PNInput in = pn_input_from_json(input, f.T, false);
    const int gW_bound =
        input.contains("gW_bound")
            ? static_cast<int>(input.at("gW_bound").get<long long>())
            : 4;
    const double radius =
        input.contains("radius") ? input.at("radius").get<double>() : 1.0;
    const TruncationSpec trunc;
    const Discrepancy disc =
        extract_discrepancy(in, gW_bound, radius, trunc, f.tol);

    if (f.out_format == "csv") {
        std::string out = "index,c_re,c_im\n";
        for (std::size_t i = 0; i < disc.coeffs.size(); ++i) {
            out += std::to_string(i);
            out += ',';
            out += format_double(disc.coeffs[i].real());
            out += ',';
            out += format_double(disc.coeffs[i].imag());
            out += '\n';
        }
        return out;
    }
    nlohmann::json j;
    j["lhs"] = nullptr;
    j["rhs"] = nullptr;
    j["residual"] = disc.residual;
    j["truncation"] = trunc.max_points;
    j["tau"] = 0.0;
    auto cc = nlohmann::json::array();
    for (const auto& c : disc.coeffs) cc.push_back(complex_to_json(c));
    j["c_coeffs"] = std::move(cc);
    j["gW"] = disc.gW;
    return j.dump(2) + "\n";
}

std::string run_sharpness(const Flags& f) {
    const double c = f.cs.empty() ? 1.0 : f.cs.front();
    if (f.out_format == "csv") {
        std::string out = "k,ratio_log\n";
        for (int kk = 5; kk <= f.k; ++kk) {
            out += std::to_string(kk);
            out += ',';
            out += format_double(sharpness_ratio(kk, c, f.eps).ratio_log);
            out += '\n';
        }
        return out;
    }
    const SharpnessRatio r = sharpness_ratio(f.k, c, f.eps);
    nlohmann::json j;
    j["k"] = f.k;
    j["c"] = c;
    j["eps"] = f.eps;
    j["ratio_log"] = r.ratio_log;
    j["lower_bound_check"] = r.lower_bound_check;
    j["g_log_abs"] = r.g_log_abs;
    j["central_log"] = r.central_log;
    j["c0_est"] = r.c0_est;
    j["c1_est"] = r.c1_est;
    return j.dump(2) + "\n";
}

std::string run_gamma_check(const Flags& f) {
    const double gamma_c = 0.5772156649015328606065121;
    const double psi1_err =
        std::abs(digamma({1.0, 0.0}).psi.real() + gamma_c);
    const double psih_err = std::abs(digamma({0.5, 0.0}).psi.real() + gamma_c +
                                     2.0 * std::log(2.0));
    const double bern_err = std::abs(bernoulli_integral() - 1.0 / 24.0);

    std::mt19937_64 rng(f.seed);
    auto unif = [&rng](double lo, double hi) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    };
    const int samples = 1000;
    int failures = 0;
    double worst_ratio = 0.0;
    const bool csv = f.out_format == "csv";
    std::string rows = "re,im,phi_prime_abs,bound\n";
    for (int i = 0; i < samples; ++i) {
        const double re = unif(0.5, 20.0);
        const double im = unif(1.0, 50.0);
        const BinetResult r = digamma({re, im});
        if (!r.bound_ok) ++failures;
        worst_ratio = std::max(worst_ratio, std::abs(r.phi_prime) * 24.0 * re);
        if (csv) {
            rows += format_double(re);
            rows += ',';
            rows += format_double(im);
            rows += ',';
            rows += format_double(std::abs(r.phi_prime));
            rows += ',';
            rows += format_double(r.bound);
            rows += '\n';
        }
    }
    if (csv) return rows;
    nlohmann::json j;
    j["seed"] = f.seed;
    j["samples"] = samples;
    j["psi1_abs_error"] = psi1_err;
    j["psi_half_abs_error"] = psih_err;
    j["bernoulli_abs_error"] = bern_err;
    j["bound_failures"] = failures;
    j["bound_holds_all"] = failures == 0;
    j["worst_ratio"] = worst_ratio;
    return j.dump(2) + "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"left-located divisor laboratory", "lldlab"};
    app.require_subcommand(1);
    Flags f;

    const std::vector<std::pair<std::string, std::string>> verbs = {
        {"analyze", "divisor report: convergence exponent, vertical order, class"},
        {"bk", "log-coefficient atoms of a Dirichlet series"},
        {"atoms", "atoms of the inverse Laplace transform of f'/f"},
        {"verify-pn", "two-sided check of the summation formula"},
        {"m0", "vertical order from line scans"},
        {"discrepancy", "delta coefficients at the origin from window pairings"},
        {"sharpness", "lower-bound ratio for the tailored divisor"},
        {"gamma-check", "digamma identities and remainder bound"},
    };
    for (const auto& [name, desc] : verbs) {
        CLI::App* sub = app.add_subcommand(name, desc);
        if (name != "sharpness" && name != "gamma-check")
            sub->add_option("input", f.input,
                            "spec path, inline JSON, or - for stdin")
                ->required();
        add_common_flags(sub, &f);
    }

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string verb = sub->get_name();
    f.tmax_explicit = sub->count("--tmax") > 0;

    try {
        nlohmann::json input;
        if (verb != "sharpness" && verb != "gamma-check")
            input = parse_text(read_input_text(f.input));

        std::string rendered;
        if (verb == "analyze")
            rendered = run_analyze(f, input);
        else if (verb == "bk")
            rendered = run_bk(f, input);
        else if (verb == "atoms")
            rendered = run_atoms(f, input);
        else if (verb == "verify-pn")
            rendered = run_verify_pn(f, input);
        else if (verb == "m0")
            rendered = run_m0(f, input);
        else if (verb == "discrepancy")
            rendered = run_discrepancy(f, input);
        else if (verb == "sharpness")
            rendered = run_sharpness(f);
        else
            rendered = run_gamma_check(f);
        out << rendered;
        return 0;
    } catch (const JsonError& e) {
        err << "error: malformed JSON at line " << e.line << ", column "
            << e.col << ": " << e.what() << "\n";
        return 2;
    } catch (const PairingDidNotConverge& e) {
        err << "error: " << e.what() << "; raise the weight cap or loosen --tol\n";
        return 3;
    } catch (const std::logic_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace lldlab::cli
