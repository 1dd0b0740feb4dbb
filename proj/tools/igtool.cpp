// Command-line front end for the inverse Gaussian operator laboratory.
//
// Subcommands:
//   show-config   print the effective configuration as JSON
//   apply         apply an operator to an enveloped function at sample points
//   kernel        tabulate a kernel on a grid (diagonal points skipped)
//   certify       calibrate-and-verify a kernel bound, emit a certificate
//   pv-sweep      epsilon-ladder diagnostics for a principal-value operator
//
// Exit codes: 0 success, 1 tolerance failure / failed certificate, 2 usage or
// configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "invgauss/certify.hpp"
#include "invgauss/expansion.hpp"
#include "invgauss/pv.hpp"
#include "invgauss/singular.hpp"
#include "invgauss/spectral.hpp"

using json = nlohmann::json;
using namespace invgauss;

namespace {

struct ToolConfig {
    int dim = 1;
    int degree = 5;
    std::string order = "1";   // Riesz multi-index, comma separated
    double tol = 1e-6;
    double beta = 1.0;
    double eta = 0.75;
    double gamma = 1.0;
    double t = 0.5;            // heat / Mehler time
    std::string out;
};

// Format doubles reproducibly (shortest round-trip form).
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    return out;
}

MultiIndex parse_order(const std::string& s, int dim) {
    MultiIndex a;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        a.push_back(std::stoi(tok));
    }
    if (static_cast<int>(a.size()) != dim)
        throw CLI::ValidationError("--order must list exactly --dim components");
    mi_validate(a);
    return a;
}

// Atomic write: temp file in place, then rename.
void write_file(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
        f << content;
        if (!f) throw std::runtime_error("write to " + tmp + " failed");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename to " + path + " failed");
}

EnvelopedFunction load_function(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open input function file " + path);
    json j = json::parse(f);
    EnvelopedFunction fn;
    fn.dim = j.at("dim").get<int>();
    for (const auto& t : j.at("terms")) {
        EnvelopedFunction::Term term;
        term.exponents = t.at("exponents").get<std::vector<int>>();
        if (static_cast<int>(term.exponents.size()) != fn.dim)
            throw std::runtime_error("term exponents do not match dim");
        mi_validate(term.exponents);
        term.coeff = cplx(t.value("coeff_re", 0.0), t.value("coeff_im", 0.0));
        fn.terms.push_back(std::move(term));
    }
    return fn;
}

std::vector<std::vector<double>> load_points(const std::string& path, int dim) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open points file " + path);
    std::vector<std::vector<double>> pts;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto p = parse_doubles(line);
        if (static_cast<int>(p.size()) != dim)
            throw std::runtime_error("points file row does not match dim");
        pts.push_back(std::move(p));
    }
    if (pts.empty()) throw std::runtime_error("points file is empty");
    return pts;
}

// Overlay: defaults -> config file -> explicitly passed flags.
void apply_config_file(ToolConfig& cfg, const std::string& path) {
    if (path.empty()) return;
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file " + path);
    json j = json::parse(f);
    if (j.contains("dim")) cfg.dim = j["dim"].get<int>();
    if (j.contains("degree")) cfg.degree = j["degree"].get<int>();
    if (j.contains("order")) cfg.order = j["order"].get<std::string>();
    if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
    if (j.contains("beta")) cfg.beta = j["beta"].get<double>();
    if (j.contains("eta")) cfg.eta = j["eta"].get<double>();
    if (j.contains("gamma")) cfg.gamma = j["gamma"].get<double>();
    if (j.contains("t")) cfg.t = j["t"].get<double>();
    if (j.contains("out")) cfg.out = j["out"].get<std::string>();
}

json config_json(const ToolConfig& c) {
    return json{{"dim", c.dim},     {"degree", c.degree}, {"order", c.order},
                {"tol", c.tol},     {"beta", c.beta},     {"eta", c.eta},
                {"gamma", c.gamma}, {"t", c.t},           {"out", c.out}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"inverse Gaussian operator laboratory"};
    app.require_subcommand(1);

    ToolConfig flags;       // values provided on the command line
    std::string config_path;

    // shared options registered on every subcommand
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON configuration file");
        sub->add_option("--dim", flags.dim, "ambient dimension (1..3)");
        sub->add_option("--degree", flags.degree, "expansion degree cap");
        sub->add_option("--order", flags.order, "operator multi-index, comma separated");
        sub->add_option("--tol", flags.tol, "target tolerance");
        sub->add_option("--beta", flags.beta, "negative-power exponent");
        sub->add_option("--eta", flags.eta, "Gaussian envelope exponent");
        sub->add_option("--gamma", flags.gamma, "imaginary-power parameter");
        sub->add_option("--t", flags.t, "heat semigroup time");
        sub->add_option("--out", flags.out, "output file (default: stdout)");
    };

    auto* sc_show = app.add_subcommand("show-config", "print the effective configuration");
    add_common(sc_show);

    auto* sc_apply = app.add_subcommand("apply", "apply an operator at sample points");
    add_common(sc_apply);
    std::string op, input_path, points_path;
    sc_apply->add_option("--op", op, "heat|neg-power|riesz|riesz-bar|imaginary")->required();
    sc_apply->add_option("--input", input_path, "enveloped function JSON")->required();
    sc_apply->add_option("--points", points_path, "CSV of sample points")->required();

    auto* sc_kernel = app.add_subcommand("kernel", "tabulate a kernel on a grid");
    add_common(sc_kernel);
    std::string kernel_name = "riesz";
    double grid_min = -3.0, grid_max = 3.0;
    int grid_steps = 21;
    sc_kernel->add_option("--kernel", kernel_name, "mehler|mbeta|kbar|riesz|riesz-bar|imaginary");
    sc_kernel->add_option("--grid-min", grid_min, "grid lower bound");
    sc_kernel->add_option("--grid-max", grid_max, "grid upper bound");
    sc_kernel->add_option("--grid-steps", grid_steps, "points per axis");

    auto* sc_certify = app.add_subcommand("certify", "calibrate and verify a kernel bound");
    add_common(sc_certify);
    std::string estimate;
    int cal_points = 225;
    unsigned seed = 20240817;
    sc_certify->add_option("--estimate", estimate, "estimate identifier")->required();
    sc_certify->add_option("--points", cal_points, "calibration sample count");
    sc_certify->add_option("--seed", seed, "calibration seed");

    auto* sc_sweep = app.add_subcommand("pv-sweep", "epsilon-ladder diagnostics");
    add_common(sc_sweep);
    std::string sweep_op = "riesz", sweep_input, sweep_point = "0.5";
    int sweep_depth = 8;
    sc_sweep->add_option("--op", sweep_op, "riesz|riesz-bar|imaginary");
    sc_sweep->add_option("--input", sweep_input, "enveloped function JSON")->required();
    sc_sweep->add_option("--point", sweep_point, "evaluation point, comma separated");
    sc_sweep->add_option("--depth", sweep_depth, "ladder depth");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        // precedence: defaults, then config file, then explicit flags
        ToolConfig cfg;
        apply_config_file(cfg, config_path);
        if (sub->count("--dim")) cfg.dim = flags.dim;
        if (sub->count("--degree")) cfg.degree = flags.degree;
        if (sub->count("--order")) cfg.order = flags.order;
        if (sub->count("--tol")) cfg.tol = flags.tol;
        if (sub->count("--beta")) cfg.beta = flags.beta;
        if (sub->count("--eta")) cfg.eta = flags.eta;
        if (sub->count("--gamma")) cfg.gamma = flags.gamma;
        if (sub->count("--t")) cfg.t = flags.t;
        if (sub->count("--out")) cfg.out = flags.out;
        if (cfg.dim < 1 || cfg.dim > 3) throw CLI::ValidationError("--dim must be 1, 2 or 3");

        if (sub == sc_show) {
            write_file(cfg.out, config_json(cfg).dump(2) + "\n");
            return 0;
        }

        if (sub == sc_apply) {
            EnvelopedFunction f = load_function(input_path);
            if (f.dim != cfg.dim && sub->count("--dim"))
                throw std::runtime_error("--dim conflicts with the input function");
            cfg.dim = f.dim;
            auto pts = load_points(points_path, cfg.dim);
            HermiteExpansion e = analyze(f, std::max(cfg.degree, f.poly_degree()));

            HermiteExpansion spec_e;
            std::function<cplx(const std::vector<double>&)> numeric;
            PVOptions popt;
            popt.tol = cfg.tol;
            popt.kernel.tol = std::min(1e-7, cfg.tol);
            if (op == "heat") {
                spec_e = heat_apply(e, cfg.t);
                numeric = [&](const std::vector<double>& x) -> cplx {
                    auto g = [&](const std::vector<double>& y) -> cplx {
                        KernelQuery q{cfg.dim, cfg.t, x, y};
                        return mehler_kernel(q) * f.eval(y);
                    };
                    double R = detail::vec_norm(x) + 9.0;
                    return shell_integral(g, x, 1e-8, R, popt.angular_density, 0.25 * cfg.tol);
                };
            } else if (op == "neg-power") {
                spec_e = neg_power_apply(e, cfg.beta);
                numeric = [&](const std::vector<double>& x) -> cplx {
                    auto g = [&](const std::vector<double>& y) -> cplx {
                        return neg_power_kernel(cfg.beta, x, y, popt.kernel) * f.eval(y);
                    };
                    double R = detail::vec_norm(x) + 9.0;
                    return shell_integral(g, x, 1e-8, R, popt.angular_density, 0.25 * cfg.tol);
                };
            } else if (op == "riesz") {
                MultiIndex a = parse_order(cfg.order, cfg.dim);
                spec_e = riesz_apply(e, a);
                numeric = [&, a](const std::vector<double>& x) -> cplx {
                    return pv_apply(PVKernelId::riesz(a), f, x, popt).value;
                };
            } else if (op == "riesz-bar") {
                MultiIndex a = parse_order(cfg.order, cfg.dim);
                spec_e = riesz_bar_apply(project_L0(e), a);
                EnvelopedFunction f0 = to_enveloped(project_L0(e));
                numeric = [&, a, f0](const std::vector<double>& x) -> cplx {
                    return pv_apply(PVKernelId::riesz_bar(a), f0, x, popt).value;
                };
            } else if (op == "imaginary") {
                spec_e = imaginary_power_apply(e, cfg.gamma);
                numeric = [&](const std::vector<double>& x) -> cplx {
                    return pv_apply_imaginary(cfg.gamma, f, x, popt).value;
                };
            } else {
                throw CLI::ValidationError("unknown --op '" + op + "'");
            }

            std::ostringstream csv;
            for (int i = 0; i < cfg.dim; ++i) csv << "x" << i + 1 << ",";
            csv << "spectral_re,spectral_im,pv_re,pv_im,abs_diff\n";
            bool ok = true;
            for (const auto& x : pts) {
                cplx s = synthesize(spec_e, x);
                cplx v = numeric(x);
                double diff = std::abs(v - s);
                if (diff > cfg.tol) ok = false;
                for (double c : x) csv << fmt(c) << ",";
                csv << fmt(s.real()) << "," << fmt(s.imag()) << "," << fmt(v.real()) << ","
                    << fmt(v.imag()) << "," << fmt(diff) << "\n";
            }
            write_file(cfg.out, csv.str());
            return ok ? 0 : 1;
        }

        if (sub == sc_kernel) {
            if (!(grid_min < grid_max) || grid_steps < 2)
                throw CLI::ValidationError("invalid grid specification");
            const int n = cfg.dim;
            SingularKernelOptions kopt;
            kopt.tol = std::min(1e-7, cfg.tol);
            MultiIndex a;
            if (kernel_name == "riesz" || kernel_name == "riesz-bar")
                a = parse_order(cfg.order, n);
            auto eval = [&](const std::vector<double>& x, const std::vector<double>& y) -> cplx {
                if (kernel_name == "mehler") return mehler_kernel(KernelQuery{n, cfg.t, x, y});
                if (kernel_name == "mbeta") return neg_power_kernel(cfg.beta, x, y, kopt);
                if (kernel_name == "kbar") return kbar_kernel(cfg.beta, x, y, kopt);
                if (kernel_name == "riesz") return riesz_kernel(a, x, y, kopt);
                if (kernel_name == "riesz-bar") return riesz_bar_kernel(a, x, y, kopt);
                if (kernel_name == "imaginary") return imaginary_kernel(cfg.gamma, x, y, kopt);
                throw CLI::ValidationError("unknown --kernel '" + kernel_name + "'");
            };

            std::ostringstream csv;
            for (int i = 0; i < n; ++i) csv << "x" << i + 1 << ",";
            for (int i = 0; i < n; ++i) csv << "y" << i + 1 << ",";
            csv << "value_re,value_im\n";
            std::vector<std::string> skipped;
            const int m = grid_steps;
            std::vector<int> idx(static_cast<std::size_t>(2 * n), 0);
            std::vector<double> coord(static_cast<std::size_t>(2 * n));
            while (true) {
                for (int i = 0; i < 2 * n; ++i)
                    coord[static_cast<std::size_t>(i)] =
                        grid_min + (grid_max - grid_min) * idx[static_cast<std::size_t>(i)] /
                                       (m - 1);
                std::vector<double> x(coord.begin(), coord.begin() + n);
                std::vector<double> y(coord.begin() + n, coord.end());
                if (x == y) {
                    std::string s;
                    for (int i = 0; i < n; ++i) s += (i ? "," : "") + fmt(x[static_cast<std::size_t>(i)]);
                    skipped.push_back(s);
                } else {
                    cplx v = eval(x, y);
                    for (double c : coord) csv << fmt(c) << ",";
                    csv << fmt(v.real()) << "," << fmt(v.imag()) << "\n";
                }
                // lexicographic odometer, last coordinate fastest
                int i = 2 * n - 1;
                while (i >= 0 && ++idx[static_cast<std::size_t>(i)] == m)
                    idx[static_cast<std::size_t>(i--)] = 0;
                if (i < 0) break;
            }
            write_file(cfg.out, csv.str());
            std::cerr << "skipped " << skipped.size()
                      << " diagonal grid points (kernel undefined at x = y):\n";
            for (const auto& s : skipped) std::cerr << "  x = y = (" << s << ")\n";
            return 0;
        }

        if (sub == sc_certify) {
            CertifyConfig cc;
            cc.n = cfg.dim;
            cc.beta = cfg.beta;
            cc.eta = cfg.eta;
            cc.alpha = parse_order(cfg.order, cfg.dim);
            cc.seed = seed;
            cc.calibration_points = cal_points;
            BoundCertificate cert;
            try {
                cert = certify(estimate, cc);
            } catch (const std::invalid_argument& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 2;
            }
            json pj;
            for (const auto& [k, v] : cert.params) pj[k] = v;
            json j{{"estimate", cert.estimate_id},
                   {"region", cert.region},
                   {"params", pj},
                   {"calibrated_C", cert.calibrated_C},
                   {"worst_ratio", cert.worst_ratio},
                   {"grid",
                    {{"calibration_seed", cert.calibration_seed},
                     {"calibration_count", cert.calibration_count},
                     {"verification_seed", cert.verification_seed},
                     {"verification_count", cert.verification_count}}},
                   {"verdict", cert.pass ? "pass" : "fail"},
                   {"disclaimer", cert.disclaimer}};
            write_file(cfg.out, j.dump(2) + "\n");
            return cert.pass ? 0 : 1;
        }

        if (sub == sc_sweep) {
            EnvelopedFunction f = load_function(sweep_input);
            cfg.dim = f.dim;
            std::vector<double> x = parse_doubles(sweep_point);
            if (static_cast<int>(x.size()) != cfg.dim)
                throw std::runtime_error("--point does not match the input function dimension");
            PVOptions popt;
            popt.tol = cfg.tol;
            popt.max_depth = sweep_depth;
            popt.kernel.tol = std::min(1e-7, cfg.tol);

            std::ostringstream csv;
            csv << "eps,shell_re,shell_im,corrected_re,corrected_im\n";
            cplx final_value;
            if (sweep_op == "imaginary") {
                PVResult r = pv_apply_imaginary(cfg.gamma, f, x, popt);
                for (std::size_t j = 0; j < r.epsilon_sequence.size(); ++j)
                    csv << fmt(r.epsilon_sequence[j]) << "," << fmt(r.shell_values[j].real())
                        << "," << fmt(r.shell_values[j].imag()) << ","
                        << fmt(r.corrected_values[j].real()) << ","
                        << fmt(r.corrected_values[j].imag()) << "\n";
                final_value = r.value;
            } else if (sweep_op == "riesz" || sweep_op == "riesz-bar") {
                MultiIndex a = parse_order(cfg.order, cfg.dim);
                PVKernelId id =
                    (sweep_op == "riesz") ? PVKernelId::riesz(a) : PVKernelId::riesz_bar(a);
                bool all_even = true;
                for (int c : a) all_even = all_even && (c % 2 == 0);
                // odd-parity kernels need the ladder; for even orders in n = 1
                // the integral is absolutely convergent and one row suffices
                bool single_row = all_even && cfg.dim == 1;
                PVResult r = pv_apply(id, f, x, popt, !single_row);
                double c = (sweep_op == "riesz") ? c_alpha(a, cfg.dim) : c_alpha_bar(a, cfg.dim);
                cplx corr = c * f.eval(x);
                for (std::size_t j = 0; j < r.epsilon_sequence.size(); ++j) {
                    cplx s = r.shell_values[j];
                    csv << fmt(r.epsilon_sequence[j]) << "," << fmt(s.real()) << ","
                        << fmt(s.imag()) << "," << fmt((s + corr).real()) << ","
                        << fmt((s + corr).imag()) << "\n";
                }
                final_value = r.value;
            } else {
                throw CLI::ValidationError("unknown --op '" + sweep_op + "'");
            }
            // footer: the extrapolated/absolutely-convergent value (eps = 0)
            csv << "0," << fmt(final_value.real()) << "," << fmt(final_value.imag()) << ","
                << fmt(final_value.real()) << "," << fmt(final_value.imag()) << "\n";
            write_file(cfg.out, csv.str());
            return 0;
        }

        throw std::logic_error("unreachable subcommand");
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
