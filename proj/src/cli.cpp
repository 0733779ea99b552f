#include "discmodes/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "discmodes/errors.hpp"
#include "discmodes/integrate.hpp"
#include "discmodes/io.hpp"
#include "discmodes/normalization.hpp"
#include "discmodes/scan.hpp"

namespace discmodes {

namespace {

std::string fmt_g(double v, int prec = 15) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    return buf;
}

std::string interval_text(const WindowInterval& w) {
    return "(" + fmt_g(w.lower) + ", " + fmt_g(w.upper) + ")";
}

std::string integral_text(const IntegralValue& v, bool with_error) {
    if (!v.finite()) return to_string(v.divergence);
    std::string s = fmt_g(v.value, 12);
    if (with_error) s += " +/- " + fmt_g(v.error, 2);
    if (!v.tolerance_met) s += " (tolerance not met)";
    return s;
}

struct ParamOpts {
    double f56 = 0.0, ft56 = 0.0, ft3 = 0.0, ftp = 0.0, ftm = 0.0, n = 0.0, rho0 = 1.0;
};

CouplingParams to_params(const ParamOpts& p) {
    CouplingParams c;
    c.f56 = p.f56;
    c.ft56 = p.ft56;
    c.ft3 = p.ft3;
    c.ftp = p.ftp;
    c.ftm = p.ftm;
    c.n = p.n;
    c.rho0 = p.rho0;
    return validate_params(c);
}

CLI::Option* take_last(CLI::Option* o) {
    return o->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

void add_param_options(CLI::App* sub, ParamOpts& p, bool with_n = true) {
    take_last(sub->add_option("--f56", p.f56, "F56 strength"));
    take_last(sub->add_option("--ft56", p.ft56, "tilde-F56 strength"));
    take_last(sub->add_option("--ft3", p.ft3, "tilde-F \"3\" mixing strength"));
    take_last(sub->add_option("--ftp", p.ftp, "tilde-F \"plus\" mixing strength"));
    take_last(sub->add_option("--ftm", p.ftm, "tilde-F \"minus\" mixing strength"));
    if (with_n) take_last(sub->add_option("--n", p.n, "mode index"));
    take_last(sub->add_option("--rho0", p.rho0, "disc scale (default 1)"));
}

std::vector<Sign> parse_signs(const std::string& s) {
    if (s == "plus") return {Sign::plus};
    if (s == "minus") return {Sign::minus};
    if (s == "both") return {Sign::plus, Sign::minus};
    throw DomainError("bad --sign value: " + s + " (plus|minus|both)");
}

std::vector<Branch> parse_branches(const std::string& s) {
    if (s == "A") return {Branch::A};
    if (s == "B") return {Branch::B};
    if (s == "both") return {Branch::A, Branch::B};
    throw DomainError("bad --branch value: " + s + " (A|B|both)");
}

std::vector<WindowConvention> parse_conventions(const std::string& s) {
    if (s == "paper_literal") return {WindowConvention::paper_literal};
    if (s == "shifted_index") return {WindowConvention::shifted_index};
    if (s == "both")
        return {WindowConvention::shifted_index, WindowConvention::paper_literal};
    throw DomainError("bad --convention value: " + s +
                      " (paper_literal|shifted_index|both)");
}

AxisSpec parse_axis(const std::string& text) {
    AxisSpec a;
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    try {
        if (parts.size() == 1) {
            a.min = a.max = std::stod(parts[0]);
            a.count = 1;
        } else if (parts.size() == 2 || parts.size() == 3) {
            a.min = std::stod(parts[0]);
            a.max = std::stod(parts[1]);
            a.count = parts.size() == 3 ? std::stoi(parts[2]) : 2;
        } else {
            throw DomainError("axis syntax: value or min:max[:count]");
        }
    } catch (const std::invalid_argument&) {
        throw DomainError("bad axis value: " + text);
    } catch (const std::out_of_range&) {
        throw DomainError("axis value out of range: " + text);
    }
    return a;
}

// Output sink: --out writes a file, otherwise the provided stream.
class Sink {
  public:
    Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw IoError("cannot open for writing: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

  private:
    std::ofstream file_;
    std::ostream& fallback_;
};

// --config JSON: flat object keyed by option names without dashes; the
// derived flags are injected right after the subcommand token so explicit
// flags, parsed later under TakeLast, win.
std::vector<std::string> apply_config(std::vector<std::string> args,
                                      const std::map<std::string, CLI::App*>& subs) {
    std::string path;
    std::size_t sub_pos = args.size();
    CLI::App* sub = nullptr;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (sub == nullptr) {
            auto it = subs.find(a);
            if (it != subs.end()) {
                sub = it->second;
                sub_pos = i;
                continue;
            }
        }
        if (a == "--config" && i + 1 < args.size())
            path = args[i + 1];
        else if (a.rfind("--config=", 0) == 0)
            path = a.substr(9);
    }
    if (path.empty() || sub == nullptr) return args;

    std::ifstream in(path);
    if (!in) throw DomainError("cannot read config file: " + path);
    nlohmann::json cfg;
    try {
        in >> cfg;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError("config parse failed: " + std::string(e.what()));
    }
    if (!cfg.is_object()) throw DomainError("config must be a flat JSON object");

    std::vector<std::string> injected;
    for (const auto& [key, value] : cfg.items()) {
        const std::string flag = "--" + key;
        if (sub->get_option_no_throw(flag) == nullptr) continue;  // not for this subcommand
        if (value.is_boolean()) {
            injected.push_back(flag + (value.get<bool>() ? "=true" : "=false"));
        } else if (value.is_string()) {
            injected.push_back(flag);
            injected.push_back(value.get<std::string>());
        } else if (value.is_number()) {
            injected.push_back(flag);
            injected.push_back(fmt_g(value.get<double>(), 17));
        } else {
            throw DomainError("config key \"" + key + "\": values must be scalars");
        }
    }
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(sub_pos) + 1, injected.begin(),
                injected.end());
    return args;
}

struct WindowsOpts {
    ParamOpts p;
    std::string sign = "both";
    std::string branch = "both";
    std::string convention = "shifted_index";
};

int run_windows(const WindowsOpts& o, std::ostream& out) {
    const CouplingParams c = to_params(o.p);
    std::vector<std::pair<std::string, std::string>> lines;
    for (Branch b : parse_branches(o.branch))
        for (Sign s : parse_signs(o.sign)) {
            if (b == Branch::A) {
                lines.emplace_back("A " + std::string(to_string(s)),
                                   interval_text(window_A(c, s)));
            } else {
                for (WindowConvention conv : parse_conventions(o.convention))
                    lines.emplace_back(
                        "B " + std::string(to_string(s)) + " " + to_string(conv),
                        interval_text(window_B(c, s, conv)));
            }
        }
    bool all_same = true;
    for (const auto& [label, text] : lines)
        if (text != lines.front().second) all_same = false;
    if (all_same && !lines.empty()) {
        out << lines.front().second << "\n";
    } else {
        for (const auto& [label, text] : lines) out << label << ": " << text << "\n";
    }
    return 0;
}

struct VerifyOpts {
    ParamOpts p;
    std::string sign = "both";
    double tol = 1e-8;
    double prop_tol = 1e-6;
    int points = 100;
};

int run_verify(const VerifyOpts& o, std::ostream& out) {
    const CouplingParams c = to_params(o.p);
    const std::vector<double> grid = default_radius_grid(c.rho0, o.points);
    bool all_pass = true;
    for (Sign s : parse_signs(o.sign)) {
        const VerifyReport rep = verify_analytic(c, s, grid, o.tol, o.prop_tol);
        out << "sign=" << to_string(s) << " residual_A=" << fmt_g(rep.max_residual_A, 3)
            << " residual_B=" << fmt_g(rep.max_residual_B, 3)
            << " propagation=" << fmt_g(rep.propagation_error, 3)
            << (rep.degenerate ? " degenerate" : "") << (rep.passed ? " pass" : " FAIL")
            << "\n";
        if (!rep.passed) all_pass = false;
    }
    return all_pass ? 0 : 1;
}

struct NormOpts {
    ParamOpts p;
    std::string sign = "plus";
    std::string branch = "both";
    double tol = 1e-9;
};

void print_norm_report(const NormReport& r, std::ostream& out) {
    out << to_string(r.branch) << " sign=" << to_string(r.mode_sign) << " n=" << fmt_g(r.n);
    if (r.branch == Branch::A) {
        out << " window=" << interval_text(r.window)
            << " inside=" << (r.window_verdict ? "yes" : "no");
    } else {
        out << " window[shifted_index]=" << interval_text(r.window)
            << " inside=" << (r.window_shifted_index ? "yes" : "no")
            << " inside[paper_literal]=" << (r.window_paper_literal ? "yes" : "no");
    }
    out << " closed_form=" << integral_text(r.closed_form, false)
        << " quadrature=" << integral_text(r.quadrature, true);
    if (r.branch == Branch::B) out << " convention_matched=" << to_string(r.convention_used);
    out << " agree=" << (r.agree ? "yes" : "no") << "\n";
}

int run_norm(const NormOpts& o, std::ostream& out) {
    const CouplingParams c = to_params(o.p);
    QuadratureOptions qopt;
    if (!(o.tol > 0.0)) throw DomainError("--tol must be positive");
    qopt.rel_tol = o.tol;
    bool all_agree = true;
    for (Sign s : parse_signs(o.sign)) {
        const auto [rep_a, rep_b] = classify_mode(c, s, qopt);
        for (Branch b : parse_branches(o.branch)) {
            const NormReport& rep = b == Branch::A ? rep_a : rep_b;
            print_norm_report(rep, out);
            if (!rep.agree) all_agree = false;
        }
    }
    return all_agree ? 0 : 1;
}

struct ProfileOpts {
    ParamOpts p;
    std::string sign = "plus";
    std::string branch = "A";
    std::string quantity = "I";
    bool secular = false;
    bool unit_norm = false;
    double amplitude = 1.0;
    double rmin = 1e-3;
    double rmax = 20.0;
    int points = 200;
    std::string format = "plot_columns";
    std::string out_path;
};

int run_profile(const ProfileOpts& o, std::ostream& fallback) {
    const CouplingParams c = to_params(o.p);
    const std::vector<Sign> signs = parse_signs(o.sign);
    const std::vector<Branch> branches = parse_branches(o.branch);
    if (signs.size() != 1 || branches.size() != 1)
        throw DomainError("profile: pick one --sign and one --branch");
    if (!(o.rmin > 0.0) || !(o.rmax > o.rmin))
        throw DomainError("profile: need 0 < rmin < rmax");
    if (o.points < 2) throw DomainError("profile: need at least two points");

    ProfileSpec spec = make_profile(branches[0], c, signs[0], Complex(o.amplitude), o.secular);
    if (o.secular && !spec.secular)
        throw DomainError("profile: --secular needs a degenerate point (D = 0, coupling != 0)");
    if (o.unit_norm) spec = with_unit_norm(spec);

    RadialSeries series;
    const double lo = std::log(o.rmin * c.rho0), hi = std::log(o.rmax * c.rho0);
    for (int i = 0; i < o.points; ++i) {
        const double rho = std::exp(lo + (hi - lo) * static_cast<double>(i) / (o.points - 1));
        double value = 0.0;
        if (o.quantity == "integrand") {
            value = norm_integrand(spec, rho);
        } else if (o.quantity == "I" || o.quantity == "II") {
            const auto [vI, vII] = massless_profile(spec, rho);
            value = (o.quantity == "I" ? vI : vII).real();
        } else {
            throw DomainError("profile: --quantity must be I, II, or integrand");
        }
        series.emplace_back(rho, value);
    }
    Sink sink(o.out_path, fallback);
    write_series(series, parse_format(o.format), sink.stream());
    return 0;
}

struct ScanOpts {
    std::string f56 = "0", ft56 = "0", ft3 = "0", ftp = "0", ftm = "0";
    long n_min = -5, n_max = 5;
    double rho0 = 1.0;
    std::string sign = "both";
    std::string convention = "shifted_index";
    bool verify = false;
    bool quad_check = false;
    bool parallel = false;
    double tol = 1e-9;
    std::string format = "csv";
    std::string out_path;
};

int run_scan(const ScanOpts& o, std::ostream& fallback) {
    GridSpec g;
    g.f56 = parse_axis(o.f56);
    g.ft56 = parse_axis(o.ft56);
    g.ft3 = parse_axis(o.ft3);
    g.ftp = parse_axis(o.ftp);
    g.ftm = parse_axis(o.ftm);
    g.n_min = o.n_min;
    g.n_max = o.n_max;
    g.rho0 = o.rho0;
    g.sign_set = parse_signs(o.sign);
    g.conventions = parse_conventions(o.convention);
    g.verify = o.verify;
    g.quad_check = o.quad_check;
    if (!(o.tol > 0.0)) throw DomainError("--tol must be positive");
    g.quadrature.rel_tol = o.tol;

    const std::vector<ScanRecord> records =
        scan(g, o.parallel ? ExecutionPolicy::parallel : ExecutionPolicy::serial);
    Sink sink(o.out_path, fallback);
    write_records(records, parse_format(o.format), sink.stream());
    return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"massless disc-mode profiles: closed forms, verification, windows, scans"};
    app.require_subcommand(1);
    std::string config_path;  // consumed by apply_config; registered for help/validation

    WindowsOpts wo;
    CLI::App* windows = app.add_subcommand("windows", "print normalizability windows");
    add_param_options(windows, wo.p, false);
    take_last(windows->add_option("--sign", wo.sign, "plus|minus|both (default both)"));
    take_last(windows->add_option("--branch", wo.branch, "A|B|both (default both)"));
    take_last(windows->add_option("--convention", wo.convention,
                                  "B-window reading (default shifted_index)"));
    take_last(windows->add_option("--config", config_path, "JSON config file"));

    VerifyOpts vo;
    CLI::App* verify = app.add_subcommand("verify", "check closed forms against the equations");
    add_param_options(verify, vo.p);
    take_last(verify->add_option("--sign", vo.sign, "plus|minus|both (default both)"));
    take_last(verify->add_option("--tol", vo.tol, "residual tolerance (default 1e-8)"));
    take_last(verify->add_option("--prop-tol", vo.prop_tol,
                                 "propagation tolerance (default 1e-6)"));
    take_last(verify->add_option("--points", vo.points, "radius grid size (default 100)"));
    take_last(verify->add_option("--config", config_path, "JSON config file"));

    NormOpts no;
    CLI::App* norm = app.add_subcommand("norm", "three-way normalizability verdicts");
    add_param_options(norm, no.p);
    take_last(norm->add_option("--sign", no.sign, "plus|minus|both (default plus)"));
    take_last(norm->add_option("--branch", no.branch, "A|B|both (default both)"));
    take_last(norm->add_option("--tol", no.tol, "quadrature tolerance (default 1e-9)"));
    take_last(norm->add_option("--config", config_path, "JSON config file"));

    ProfileOpts po;
    CLI::App* profile = app.add_subcommand("profile", "emit a radial profile series");
    add_param_options(profile, po.p);
    take_last(profile->add_option("--sign", po.sign, "plus|minus (default plus)"));
    take_last(profile->add_option("--branch", po.branch, "A|B (default A)"));
    take_last(profile->add_option("--quantity", po.quantity, "I|II|integrand (default I)"));
    profile->add_flag("--secular", po.secular, "degenerate log-partner profile");
    profile->add_flag("--unit-norm", po.unit_norm, "rescale amplitude to unit norm");
    take_last(profile->add_option("--amplitude", po.amplitude, "overall amplitude (default 1)"));
    take_last(profile->add_option("--rmin", po.rmin, "start radius in rho0 units (default 1e-3)"));
    take_last(profile->add_option("--rmax", po.rmax, "end radius in rho0 units (default 20)"));
    take_last(profile->add_option("--points", po.points, "sample count (default 200)"));
    take_last(profile->add_option("--format", po.format, "plot_columns|csv|json"));
    take_last(profile->add_option("--out", po.out_path, "output file (default stdout)"));
    take_last(profile->add_option("--config", config_path, "JSON config file"));

    ScanOpts so;
    CLI::App* scan_cmd = app.add_subcommand("scan", "sweep couplings, list window modes");
    take_last(scan_cmd->add_option("--f56", so.f56, "axis: value or min:max:count"));
    take_last(scan_cmd->add_option("--ft56", so.ft56, "axis: value or min:max:count"));
    take_last(scan_cmd->add_option("--ft3", so.ft3, "axis: value or min:max:count"));
    take_last(scan_cmd->add_option("--ftp", so.ftp, "axis: value or min:max:count"));
    take_last(scan_cmd->add_option("--ftm", so.ftm, "axis: value or min:max:count"));
    take_last(scan_cmd->add_option("--n-min", so.n_min, "mode range start (default -5)"));
    take_last(scan_cmd->add_option("--n-max", so.n_max, "mode range end (default 5)"));
    take_last(scan_cmd->add_option("--rho0", so.rho0, "disc scale (default 1)"));
    take_last(scan_cmd->add_option("--sign", so.sign, "plus|minus|both (default both)"));
    take_last(scan_cmd->add_option("--convention", so.convention,
                                   "B-window reading (default shifted_index)"));
    scan_cmd->add_flag("--verify", so.verify, "residual check per point");
    scan_cmd->add_flag("--quad-check", so.quad_check, "quadrature reconciliation per point");
    scan_cmd->add_flag("--parallel", so.parallel, "OpenMP point loop");
    take_last(scan_cmd->add_option("--tol", so.tol, "quadrature tolerance (default 1e-9)"));
    take_last(scan_cmd->add_option("--format", so.format, "csv|json (default csv)"));
    take_last(scan_cmd->add_option("--out", so.out_path, "output file (default stdout)"));
    take_last(scan_cmd->add_option("--config", config_path, "JSON config file"));

    const std::map<std::string, CLI::App*> subs = {{"windows", windows},
                                                   {"verify", verify},
                                                   {"norm", norm},
                                                   {"profile", profile},
                                                   {"scan", scan_cmd}};

    std::vector<std::string> argv_vec;
    try {
        argv_vec = apply_config(args, subs);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    std::vector<const char*> argv;
    argv.push_back("discmodes");
    for (const std::string& a : argv_vec) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (windows->parsed()) return run_windows(wo, out);
        if (verify->parsed()) return run_verify(vo, out);
        if (norm->parsed()) return run_norm(no, out);
        if (profile->parsed()) return run_profile(po, out);
        if (scan_cmd->parsed()) return run_scan(so, out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace discmodes
