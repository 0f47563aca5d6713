#include "dipgp/commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "dipgp/errors.hpp"
#include "dipgp/fock/density.hpp"
#include "dipgp/fock/report.hpp"
#include "dipgp/gp.hpp"
#include "dipgp/kernel.hpp"
#include "dipgp/spectral.hpp"
#include "dipgp/sweep.hpp"
#include "dipgp/version.hpp"

namespace dipgp {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string hex_hash(const RunConfig& cfg) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << cfg.hash();
    return os.str();
}

json provenance(const RunConfig& cfg, const std::string& command, double elapsed) {
    return json{{"command", command},
                {"artifact_version", version_string},
                {"config_hash", hex_hash(cfg)},
                {"elapsed_seconds", elapsed}};
}

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

void write_json(const fs::path& path, const json& j) {
    std::ofstream os(path);
    if (!os) throw UsageError("cannot open for writing: " + path.string());
    os << j.dump(2) << "\n";
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

KernelSpec kernel_from_config(const RunConfig& cfg) {
    if (cfg.kernel.omega == "dipolar")
        return KernelSpec::dipolar(cfg.kernel.axis, cfg.kernel.R);
    std::ifstream is(cfg.kernel.omega);
    if (!is) throw UsageError("kernel.omega: cannot open table file " + cfg.kernel.omega);
    int ntheta = 0, nphi = 0;
    if (!(is >> ntheta >> nphi))
        throw UsageError("kernel table: expected 'ntheta nphi' on the first line");
    std::vector<double> vals;
    double x;
    while (is >> x) vals.push_back(x);
    return KernelSpec::tabulated(ntheta, nphi, std::move(vals), cfg.kernel.R);
}

PotentialSpec potential_from_config(const RunConfig& cfg) {
    PotentialSpec pot;
    pot.w0_kind = (cfg.potential.w0 == "bump") ? PotentialSpec::W0Kind::bump
                                               : PotentialSpec::W0Kind::gaussian;
    pot.sigma = cfg.potential.sigma;
    pot.r0 = cfg.potential.r0;
    pot.center = cfg.potential.center;
    pot.a = cfg.potential.a;
    pot.b = cfg.potential.b;
    pot.R = cfg.kernel.R;
    pot.beta = cfg.potential.beta;
    pot.N = cfg.potential.N;
    pot.axis = normalized(cfg.kernel.axis);
    return pot;
}

InitialData initial_from_config(const RunConfig& cfg) {
    InitialData init;
    init.kind = (cfg.dynamics.init == "bump") ? InitialData::Kind::bump
                                              : InitialData::Kind::gaussian;
    init.sigma = cfg.dynamics.init_sigma;
    init.center = cfg.dynamics.init_center;
    return init;
}

} // namespace

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const DivergenceError*>(&e)) return 3;
    if (dynamic_cast<const AccuracyError*>(&e)) return 2;
    if (dynamic_cast<const UsageError*>(&e)) return 1;
    return 1;
}

// ---------------------------------------------------------------------------
// kernel-check
// ---------------------------------------------------------------------------

int cmd_kernel_check(const RunConfig& cfg, const CmdOptions& opts, std::ostream& out) {
    Stopwatch watch;
    fs::create_directories(opts.out_dir);
    const KernelSpec spec = kernel_from_config(cfg); // validation happens here

    json checks;
    bool pass = true;
    std::string failing;

    const double resid = spec.cancellation_residual();
    checks["cancellation_residual"] = resid;
    out << "cancellation residual            " << num(resid) << "  (tol 1e-10)\n";
    if (resid > 1e-10) { pass = false; failing = "cancellation"; }

    // (hyp_k_td): |FT(1_{|x|<=R}K)(k)| <= C R^2 |k|^2 on |k|R in (0, 0.1]
    {
        const auto dirs = fibonacci_directions(100);
        double cmax = 0.0;
        for (std::size_t i = 0; i < dirs.size(); ++i) {
            const double s = 0.001 + (0.1 - 0.001) * static_cast<double>(i) / (dirs.size() - 1);
            const Vec3 k = scaled(dirs[i], s / cfg.kernel.R);
            const double val = inner_truncated_transform(spec, k, cfg.kernel.R);
            cmax = std::max(cmax, std::abs(val) / (s * s));
        }
        checks["truncated_bound_constant"] = cmax;
        out << "truncated-kernel bound constant  " << num(cmax) << "  (tol 4)\n";
        if (cmax > 4.0 && pass) { pass = false; failing = "truncated_bound"; }
    }

    if (spec.kind() == KernelSpec::OmegaKind::dipolar) {
        // closed form against the quadrature at R|k| = 1e3, magic angle included
        auto dirs = fibonacci_directions(49);
        const double c_magic = 1.0 / std::sqrt(3.0);
        const Vec3 n = spec.axis();
        const Vec3 p = any_orthogonal(n);
        dirs.push_back(normalized({c_magic * n[0] + std::sqrt(1 - c_magic * c_magic) * p[0],
                                   c_magic * n[1] + std::sqrt(1 - c_magic * c_magic) * p[1],
                                   c_magic * n[2] + std::sqrt(1 - c_magic * c_magic) * p[2]}));
        double dmax = 0.0, magic_val = 0.0;
        for (std::size_t i = 0; i < dirs.size(); ++i) {
            const Vec3 k = scaled(dirs[i], 1e3 / cfg.kernel.R);
            const double quad = inner_truncated_transform(spec, k, cfg.kernel.R);
            const double closed = dipolar_full_closed(k, spec.axis());
            dmax = std::max(dmax, std::abs(quad - closed));
            if (i + 1 == dirs.size()) magic_val = quad;
        }
        checks["closed_vs_quadrature_max"] = dmax;
        checks["magic_angle_value"] = magic_val;
        out << "closed form vs quadrature        " << num(dmax) << "  (tol 1e-3, 50 directions)\n";
        out << "magic-angle multiplier           " << num(magic_val) << "  (tol 1e-3)\n";
        if ((dmax > 1e-3 || std::abs(magic_val) > 1e-3) && pass) {
            pass = false;
            failing = "closed_vs_quadrature";
        }
    }

    json summary{{"checks", checks},
                 {"pass", pass},
                 {"provenance", provenance(cfg, "kernel-check", watch.seconds())}};
    write_json(fs::path(opts.out_dir) / "kernel_check.json", summary);
    if (!pass) {
        out << "FAIL: " << failing << "\n";
        return 2;
    }
    out << "all kernel checks passed\n";
    return 0;
}

// ---------------------------------------------------------------------------
// gp-run
// ---------------------------------------------------------------------------

int cmd_gp_run(const RunConfig& cfg, const CmdOptions& opts, std::ostream& out) {
    Stopwatch watch;
    fs::create_directories(opts.out_dir);
    const Grid3 grid(cfg.grid.n, cfg.grid.L);
    const PotentialSpec pot = potential_from_config(cfg);
    pot.validate();

    const StabilityReport stab = stability_predicate(pot, grid);
    out << "stability: " << to_string(stab.classification) << " (min what = " << num(stab.min_w_hat)
        << ", a + b min Khat = " << num(stab.margin_a_vs_K) << ")\n";
    if (stab.classification == Stability::conditional && !opts.allow_conditional)
        throw UsageError("gp-run: conditional stability regime; pass --allow-conditional to "
                         "proceed");

    const GPEquation eq =
        (cfg.dynamics.equation == "scaled") ? GPEquation::scaled : GPEquation::limiting;
    GPOptions gpo;
    gpo.dealias = cfg.dynamics.dealias;
    gpo.include_mu = cfg.dynamics.include_mu;
    const GPSolver solver(grid, pot, eq, gpo);
    GPState st = solver.initial_state(initial_from_config(cfg));

    const fs::path csv_path = fs::path(opts.out_dir) / "gp_diagnostics.csv";
    std::ofstream csv(csv_path);
    if (!csv) throw UsageError("cannot open for writing: " + csv_path.string());
    csv << "t,mass,energy,h1,h2,h3,h4,mu\n";
    csv.precision(17);
    auto emit = [&](const GPDiag& d) {
        csv << d.t << "," << d.mass << "," << d.energy << "," << d.h1 << "," << d.h2 << ","
            << d.h3 << "," << d.h4 << "," << d.mu << "\n";
    };

    const GPDiag d0 = gp_diagnostics(solver, st);
    emit(d0);
    const long nsteps = static_cast<long>(std::llround(cfg.dynamics.t_final / cfg.dynamics.dt));
    std::string status = "ok";
    GPDiag dlast = d0;
    try {
        for (long s = 0; s < nsteps; ++s) {
            solver.step(st, cfg.dynamics.dt);
            if ((s + 1) % cfg.dynamics.diag_stride == 0 || s + 1 == nsteps) {
                dlast = gp_diagnostics(solver, st);
                emit(dlast);
            }
            if (cfg.dynamics.snapshot_stride > 0 && (s + 1) % cfg.dynamics.snapshot_stride == 0) {
                std::ostringstream name;
                name << "snapshot_" << std::setw(8) << std::setfill('0') << (s + 1) << ".bin";
                write_field((fs::path(opts.out_dir) / name.str()).string(), st.psi);
            }
        }
    } catch (const DivergenceError& e) {
        // keep partial outputs
        csv.flush();
        status = "diverged";
        json summary{{"status", status},
                     {"error", e.what()},
                     {"stability", to_string(stab.classification)},
                     {"provenance", provenance(cfg, "gp-run", watch.seconds())}};
        write_json(fs::path(opts.out_dir) / "gp_summary.json", summary);
        out << "DIVERGED: " << e.what() << "\n";
        return 3;
    }

    json summary{{"status", status},
                 {"stability", to_string(stab.classification)},
                 {"mass_drift", std::abs(dlast.mass - d0.mass)},
                 {"energy_drift_rel",
                  std::abs(dlast.energy - d0.energy) / std::max(1e-300, std::abs(d0.energy))},
                 {"steps", nsteps},
                 {"provenance", provenance(cfg, "gp-run", watch.seconds())}};
    write_json(fs::path(opts.out_dir) / "gp_summary.json", summary);
    out << "done: " << nsteps << " steps, mass drift "
        << num(std::abs(dlast.mass - d0.mass)) << ", relative energy drift "
        << num(std::abs(dlast.energy - d0.energy) / std::max(1e-300, std::abs(d0.energy)))
        << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// converge
// ---------------------------------------------------------------------------

int cmd_converge(const RunConfig& cfg, const CmdOptions& opts, std::ostream& out) {
    Stopwatch watch;
    fs::create_directories(opts.out_dir);

    SweepPlan plan;
    plan.beta = cfg.potential.beta;
    plan.Ns = cfg.sweep.Ns;
    plan.t_final = cfg.sweep.t_final;
    plan.dt = cfg.sweep.dt;
    plan.grid = Grid3(cfg.grid.n, cfg.grid.L);
    plan.pot = potential_from_config(cfg);
    plan.init = initial_from_config(cfg);
    plan.threads = opts.threads;
    plan.gp_options.dealias = cfg.dynamics.dealias;

    const auto rows = run_sweep(plan);

    const fs::path csv_path = fs::path(opts.out_dir) / "converge.csv";
    std::ofstream csv(csv_path);
    if (!csv) throw UsageError("cannot open for writing: " + csv_path.string());
    csv << "N,error_l2,error_density_l1,mass_drift,energy_drift\n";
    csv.precision(17);
    for (const auto& r : rows)
        csv << r.N << "," << r.error_l2 << "," << r.error_density_l1 << "," << r.mass_drift << ","
            << r.energy_drift << "\n";

    json summary;
    summary["provenance"] = provenance(cfg, "converge", 0.0);
    summary["plan"] = json{{"beta", plan.beta},     {"Ns", plan.Ns},
                           {"t_final", plan.t_final}, {"dt", plan.dt},
                           {"n", cfg.grid.n},       {"L", cfg.grid.L},
                           {"a", plan.pot.a},       {"b", plan.pot.b},
                           {"R", plan.pot.R},       {"w0", cfg.potential.w0}};
    int code = 0;
    try {
        const RateFit fit = fit_rate(rows);
        summary["slope"] = fit.slope;
        summary["intercept"] = fit.intercept;
        summary["residual"] = fit.residual;
        const double dev = std::abs(fit.slope + plan.beta);
        summary["slope_deviation"] = dev;
        summary["status"] = (dev <= cfg.sweep.slope_tol) ? "ok" : "slope_out_of_tolerance";
        out << "fitted slope " << num(fit.slope) << " (target " << num(-plan.beta) << " +- "
            << num(cfg.sweep.slope_tol) << "), residual " << num(fit.residual) << "\n";
        if (dev > cfg.sweep.slope_tol) code = 2;
    } catch (const AccuracyError& e) {
        summary["status"] = "inconclusive";
        summary["error"] = e.what();
        out << "INCONCLUSIVE: " << e.what() << "\n";
        code = 2;
    }
    summary["provenance"]["elapsed_seconds"] = watch.seconds();
    write_json(fs::path(opts.out_dir) / "converge_summary.json", summary);
    return code;
}

// ---------------------------------------------------------------------------
// fock
// ---------------------------------------------------------------------------

namespace {

struct StructuralResult {
    double unitarity;
    double generator_identity;
    double commutators;
};

StructuralResult fock_structural_suite(const RunConfig& cfg) {
    using namespace fock;
    const int m = cfg.fock.m;
    const long N = cfg.fock.N_list.front();
    const FockSpace space(m, static_cast<int>(N));
    Theorem1Params p;
    p.m = m;
    p.ell = cfg.fock.ell;
    p.coupling = cfg.fock.coupling;
    p.sigma_w = cfg.fock.sigma_w;
    p.beta = cfg.fock.beta;
    const ModeBasis basis = theorem1_basis(p, N);
    const DVec u = theorem1_initial_mode(p);

    StructuralResult res{};

    const ExcitationMap U(space, u, static_cast<int>(N));
    const SpMat Um = U.matrix();
    const SpMat PN = sector_projection(space, static_cast<int>(N)).matrix() -
                     sector_projection(space, static_cast<int>(N) - 1).matrix();
    res.unitarity = OperatorMatrix(space, SpMat(SpMat(Um.adjoint() * Um) - PN)).max_abs();

    const OperatorMatrix G = generator(space, basis, u, N);
    const OperatorMatrix UHU = conjugated_hamiltonian(space, basis, u, N);
    const OperatorMatrix Lam = frame_term(space, basis, u, N);
    const SpMat Pi = U.subspace_projector();
    const SpMat D = Pi * (G.matrix() - UHU.matrix() - Lam.matrix()) * Pi;
    res.generator_identity = OperatorMatrix(space, D).max_abs();

    const ErrorTerms R = build_error_terms(space, basis, u, N);
    const OperatorMatrix Nop = number_operator(space);
    auto comm = [&](const OperatorMatrix& A) { return A * Nop - Nop * A; };
    double cmax = 0.0;
    cmax = std::max(cmax, comm(R.R[0]).max_abs());
    cmax = std::max(cmax, (comm(R.R[1]) - R.R[1]).max_abs());
    cmax = std::max(cmax, (comm(R.R[2]) + cplx{2.0, 0.0} * R.R[2]).max_abs());
    cmax = std::max(cmax, (comm(R.R[3]) - R.R[3]).max_abs());
    cmax = std::max(cmax, comm(R.R[4]).max_abs());
    res.commutators = cmax;
    return res;
}

} // namespace

int cmd_fock(const RunConfig& cfg, const CmdOptions& opts, std::ostream& out) {
    using namespace fock;
    Stopwatch watch;
    fs::create_directories(opts.out_dir);

    // identity suite gates any propagation
    const StructuralResult structural = fock_structural_suite(cfg);
    out << "structural suite: unitarity " << num(structural.unitarity) << ", generator identity "
        << num(structural.generator_identity) << ", commutators " << num(structural.commutators)
        << "\n";
    if (structural.unitarity > 1e-10 || structural.generator_identity > 1e-10 ||
        structural.commutators > 1e-12)
        throw AccuracyError("fock: structural identity suite failed");

    Theorem1Params p;
    p.m = cfg.fock.m;
    p.ell = cfg.fock.ell;
    p.coupling = cfg.fock.coupling;
    p.sigma_w = cfg.fock.sigma_w;
    p.beta = cfg.fock.beta;
    p.N_list.assign(cfg.fock.N_list.begin(), cfg.fock.N_list.end());
    p.t_final = cfg.fock.t_final;
    p.dt = cfg.fock.dt;
    const auto rows = theorem1_report(p);

    const fs::path csv_path = fs::path(opts.out_dir) / "fock_report.csv";
    std::ofstream csv(csv_path);
    if (!csv) throw UsageError("cannot open for writing: " + csv_path.string());
    csv << "N,t,norm_error,trace_error,norm_drift,a_u_residual\n";
    csv.precision(17);
    for (const auto& r : rows) {
        csv << r.N << "," << r.t << "," << r.norm_error << "," << r.trace_error << ","
            << r.norm_drift << "," << r.a_u_residual << "\n";
        out << "N = " << r.N << ": norm error " << num(r.norm_error) << ", trace error "
            << num(r.trace_error) << "\n";
    }

    if (cfg.fock.dump_operators) {
        const long N = cfg.fock.N_list.front();
        const FockSpace space(cfg.fock.m, static_cast<int>(N));
        const ModeBasis basis = theorem1_basis(p, N);
        const DVec u = theorem1_initial_mode(p);
        build_hamiltonian(space, basis, N).write_coo(
            (fs::path(opts.out_dir) / "hamiltonian.coo").string());
        generator(space, basis, u, N).write_coo((fs::path(opts.out_dir) / "generator.coo").string());
    }

    json summary{{"status", "ok"},
                 {"structural",
                  json{{"unitarity", structural.unitarity},
                       {"generator_identity", structural.generator_identity},
                       {"commutators", structural.commutators}}},
                 {"provenance", provenance(cfg, "fock", watch.seconds())}};
    write_json(fs::path(opts.out_dir) / "fock_summary.json", summary);
    return 0;
}

} // namespace dipgp
