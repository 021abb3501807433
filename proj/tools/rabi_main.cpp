// rabi — command-line driver: identity verification, symbolic proofs,
// spectra, dynamics, coupling sweeps, canonical forms and matrix dumps.
//
// Exit codes: 0 success, 1 check/proof failures, 2 usage or validation error.
// Output is deterministic: no timestamps, fixed float formatting.

#include "rabi/dynamics.hpp"
#include "rabi/format.hpp"
#include "rabi/operators.hpp"
#include "rabi/spectra.hpp"
#include "rabi/sweep.hpp"
#include "rabi/symbolic.hpp"
#include "rabi/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct CommonOpts {
    rabi::ModelParams params;
    int n_max = 20;
    int margin = 2;
    double tol = 1e-12;
    std::string config_path;
    std::string out_path;

    CLI::Option* omega_opt = nullptr;
    CLI::Option* omega0_opt = nullptr;
    CLI::Option* g_opt = nullptr;
    CLI::Option* r_opt = nullptr;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    o.omega_opt = cmd->add_option("--omega", o.params.omega, "field-mode angular frequency");
    o.omega0_opt = cmd->add_option("--omega0", o.params.omega0, "atomic angular frequency");
    o.g_opt = cmd->add_option("--g", o.params.g, "coupling constant");
    o.r_opt = cmd->add_option("--r", o.params.r, "chirality parameter in [-1, 1]");
    cmd->add_option("--nmax", o.n_max, "Fock-space truncation level (default 20)");
    cmd->add_option("--margin", o.margin, "interior projection margin (default 2)");
    cmd->add_option("--tol", o.tol, "equality tolerance (default 1e-12)");
    cmd->add_option("--config", o.config_path, "JSON config with omega/omega0/g/r");
    cmd->add_option("--out", o.out_path, "output path (default stdout)");
}

// Computes 1-based line/column of a byte offset for parse diagnostics.
std::pair<int, int> line_column(const std::string& text, std::size_t offset) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

// Strict schema: exactly the keys omega, omega0, g, r, all numbers. Values
// from flags override values from the file.
void apply_config(CommonOpts& o) {
    if (o.config_path.empty()) return;
    std::ifstream in(o.config_path);
    if (!in) throw std::invalid_argument("config: cannot open '" + o.config_path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw std::invalid_argument("config: JSON parse error at line " +
                                    std::to_string(line) + ", column " +
                                    std::to_string(col));
    }
    if (!doc.is_object()) throw std::invalid_argument("config: top level must be an object");
    for (const auto& [key, value] : doc.items()) {
        if (key != "omega" && key != "omega0" && key != "g" && key != "r")
            throw std::invalid_argument("config: unknown key '" + key + "'");
        if (!value.is_number())
            throw std::invalid_argument("config: key '" + key + "' must be a number");
    }
    if (doc.contains("omega") && o.omega_opt->count() == 0)
        o.params.omega = doc["omega"].get<double>();
    if (doc.contains("omega0") && o.omega0_opt->count() == 0)
        o.params.omega0 = doc["omega0"].get<double>();
    if (doc.contains("g") && o.g_opt->count() == 0) o.params.g = doc["g"].get<double>();
    if (doc.contains("r") && o.r_opt->count() == 0) o.params.r = doc["r"].get<double>();
}

class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::invalid_argument("cannot open output path '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t end = text.find(sep, start);
        out.push_back(text.substr(start, end == std::string::npos ? end : end - start));
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return out;
}

rabi::StateVector parse_state(const rabi::Space& space, const std::string& state,
                              const std::string& amps) {
    if (!amps.empty()) {
        const std::vector<std::string> parts = split(amps, ';');
        if (static_cast<int>(parts.size()) != space.dim)
            throw std::invalid_argument("state amplitudes: expected " +
                                        std::to_string(space.dim) + " 're,im' pairs");
        rabi::Vector v(space.dim);
        for (std::size_t k = 0; k < parts.size(); ++k) {
            const std::vector<std::string> pair = split(parts[k], ',');
            if (pair.size() != 2)
                throw std::invalid_argument("state amplitudes: entry '" + parts[k] +
                                            "' is not 're,im'");
            v(static_cast<Eigen::Index>(k)) = rabi::cplx(std::stod(pair[0]), std::stod(pair[1]));
        }
        return rabi::make_state(space, std::move(v));
    }
    return rabi::basis_state_vector(space, rabi::parse_basis_state(state));
}

int run_verify(const CommonOpts& o, Output& out) {
    const auto reports = rabi::run_numeric_suite(o.params, o.n_max, o.margin, o.tol);
    out.stream() << rabi::report_json(reports, o.params).dump(2) << '\n';
    return rabi::all_pass(reports) ? 0 : 1;
}

int run_prove(Output& out) {
    const auto reports = rabi::run_symbolic_suite();
    bool ok = true;
    for (const auto& r : reports) {
        out.stream() << r.check_id << ": " << (r.pass ? "PROVED" : "FAILED") << " ("
                     << static_cast<long>(r.residual) << " terms)\n";
        ok = ok && r.pass;
    }
    return ok ? 0 : 1;
}

int run_spectrum(const CommonOpts& o, const std::string& model, Output& out) {
    const auto rep = rabi::spectrum_report(rabi::parse_model(model), o.params, o.n_max);
    rabi::write_spectrum_csv(out.stream(), rep.numeric);
    return 0;
}

int run_evolve(const CommonOpts& o, const std::string& model, const std::string& state,
               const std::string& amps, double t_max, double dt,
               const std::string& observables, Output& out) {
    const rabi::Space space = rabi::make_space(o.n_max);
    std::vector<rabi::Observable> obs;
    for (const std::string& name : split(observables, ','))
        obs.push_back(rabi::parse_observable(name));
    const rabi::StateVector psi0 = parse_state(space, state, amps);
    const rabi::Trajectory traj = rabi::conservation_trace(
        rabi::parse_model(model), obs, psi0, t_max, dt, o.params, o.n_max);
    rabi::write_trajectory_csv(out.stream(), traj);
    if (!traj.truncation_reliable)
        std::cerr << "note: leakage exceeded 1e-6; trajectory is truncation-unreliable\n";
    return 0;
}

int run_sweep(const CommonOpts& o, double g_from, double g_to, int steps, bool gap,
              Output& out) {
    const auto sweep = rabi::sweep_g(o.params, g_from, g_to, steps, o.n_max, o.margin, gap);
    rabi::write_sweep_csv(out.stream(), sweep, gap);
    return 0;
}

int run_canon(const std::string& expr_text, Output& out) {
    const rabi::sym::Expr e = rabi::sym::parse(expr_text);
    out.stream() << rabi::sym::normal_order(e).str() << '\n';
    return 0;
}

int run_dump(const CommonOpts& o, const std::string& label, double t, Output& out) {
    const rabi::Space s = rabi::make_space(o.n_max);
    const rabi::DerivedParams d = rabi::derive(o.params);
    rabi::Op op{s, "", rabi::Matrix()};
    if (label == "a") op = rabi::ladder(s, rabi::Ladder::a);
    else if (label == "ad") op = rabi::ladder(s, rabi::Ladder::a_dagger);
    else if (label == "sz") op = rabi::spin(s, rabi::SpinKind::sz);
    else if (label == "sp") op = rabi::spin(s, rabi::SpinKind::sp);
    else if (label == "sm") op = rabi::spin(s, rabi::SpinKind::sm);
    else if (label == "N") op = rabi::excitation_number(s, rabi::ExKind::N);
    else if (label == "Nbar") op = rabi::excitation_number(s, rabi::ExKind::Nbar);
    else if (label == "A") op = rabi::transition(s, d, rabi::TransKind::A);
    else if (label == "Abar") op = rabi::transition(s, d, rabi::TransKind::Abar);
    else if (label == "H") op = rabi::hamiltonian(s, o.params, rabi::HamForm::jc_1c);
    else if (label == "Hbar") op = rabi::hamiltonian(s, o.params, rabi::HamForm::ajc_1d);
    else if (label == "HR") op = rabi::hamiltonian(s, o.params, rabi::HamForm::rabi_r);
    else if (label == "Pi") op = rabi::parity(s);
    else if (label == "U0") op = rabi::free_evolution(s, o.params.omega, t, rabi::EvKind::U0);
    else if (label == "U0bar")
        op = rabi::free_evolution(s, o.params.omega, t, rabi::EvKind::U0bar);
    else
        throw std::invalid_argument(
            "dump: unknown operator label '" + label +
            "' (expected a, ad, sz, sp, sm, N, Nbar, A, Abar, H, Hbar, HR, Pi, U0, U0bar)");
    rabi::write_matrix_csv(out.stream(), op);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum Rabi model toolkit: dual numeric/symbolic operator identities, "
                 "spectra, dynamics and coupling sweeps"};
    app.require_subcommand(1);

    CommonOpts verify_o, prove_o, spectrum_o, evolve_o, sweep_o, dump_o;

    auto* verify_cmd = app.add_subcommand("verify", "run the numeric identity suite (JSON)");
    add_common(verify_cmd, verify_o);

    auto* prove_cmd = app.add_subcommand("prove", "run the exact symbolic proof suite");
    std::string prove_suite = "symbolic";
    prove_cmd->add_option("--suite", prove_suite, "proof suite (only 'symbolic' exists)")
        ->check(CLI::IsMember({"symbolic"}));
    prove_cmd->add_option("--out", prove_o.out_path, "output path (default stdout)");

    auto* spectrum_cmd = app.add_subcommand("spectrum", "eigenvalue spectrum (CSV)");
    add_common(spectrum_cmd, spectrum_o);
    std::string spectrum_model = "jc";
    spectrum_cmd->add_option("--model", spectrum_model, "jc, ajc or rabi")->required();

    auto* evolve_cmd = app.add_subcommand("evolve", "expectation-value trajectories (CSV)");
    add_common(evolve_cmd, evolve_o);
    std::string evolve_model = "jc", evolve_state = "0,g", evolve_amps, evolve_obs = "N";
    double t_max = 10.0, dt = 0.1;
    evolve_cmd->add_option("--model", evolve_model, "jc, ajc or rabi")->required();
    evolve_cmd->add_option("--state", evolve_state, "initial basis state \"n,sigma\"");
    evolve_cmd->add_option("--state-amps", evolve_amps,
                           "explicit amplitudes \"re,im;re,im;...\" (dim entries)");
    evolve_cmd->add_option("--tmax", t_max, "evolution horizon")->required();
    evolve_cmd->add_option("--dt", dt, "grid step")->required();
    evolve_cmd->add_option("--observables", evolve_obs,
                           "comma list from N,Nbar,A,Abar,parity,sz");

    auto* sweep_cmd = app.add_subcommand("sweep", "coupling sweep of the phase relation (CSV)");
    add_common(sweep_cmd, sweep_o);
    double g_from = 0.3, g_to = 0.7;
    int steps = 81;
    bool gap = false;
    sweep_cmd->add_option("--g-from", g_from, "sweep start")->required();
    sweep_cmd->add_option("--g-to", g_to, "sweep end")->required();
    sweep_cmd->add_option("--steps", steps, "grid points (>= 2)")->required();
    sweep_cmd->add_flag("--gap", gap, "also compute the lowest certified level spacing");

    auto* canon_cmd = app.add_subcommand("canon", "normal-ordered canonical form");
    std::string canon_expr, canon_out;
    canon_cmd->add_option("expr", canon_expr, "operator expression")->required();
    canon_cmd->add_option("--out", canon_out, "output path (default stdout)");

    auto* dump_cmd = app.add_subcommand("dump", "matrix elements of a named operator (CSV)");
    add_common(dump_cmd, dump_o);
    std::string dump_label;
    double dump_t = 1.0;
    dump_cmd->add_option("--op", dump_label, "operator label")->required();
    dump_cmd->add_option("--t", dump_t, "time argument for U0/U0bar (default 1.0)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*verify_cmd) {
            apply_config(verify_o);
            Output out(verify_o.out_path);
            return run_verify(verify_o, out);
        }
        if (*prove_cmd) {
            Output out(prove_o.out_path);
            return run_prove(out);
        }
        if (*spectrum_cmd) {
            apply_config(spectrum_o);
            Output out(spectrum_o.out_path);
            return run_spectrum(spectrum_o, spectrum_model, out);
        }
        if (*evolve_cmd) {
            apply_config(evolve_o);
            Output out(evolve_o.out_path);
            return run_evolve(evolve_o, evolve_model, evolve_state, evolve_amps, t_max, dt,
                              evolve_obs, out);
        }
        if (*sweep_cmd) {
            apply_config(sweep_o);
            Output out(sweep_o.out_path);
            return run_sweep(sweep_o, g_from, g_to, steps, gap, out);
        }
        if (*canon_cmd) {
            Output out(canon_out);
            return run_canon(canon_expr, out);
        }
        if (*dump_cmd) {
            apply_config(dump_o);
            Output out(dump_o.out_path);
            return run_dump(dump_o, dump_label, dump_t, out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
