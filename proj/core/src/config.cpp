#include "dipgp/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "dipgp/errors.hpp"

namespace dipgp {

namespace {

using KV = std::map<std::string, std::map<std::string, std::string>>;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

KV tokenize(const std::string& text) {
    KV kv;
    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw UsageError("config line " + std::to_string(lineno) + ": malformed section");
            section = trim(line.substr(1, line.size() - 2));
            kv[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
        if (section.empty())
            throw UsageError("config line " + std::to_string(lineno) + ": key outside a section");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (kv[section].count(key))
            throw UsageError("config: duplicate key " + section + "." + key);
        kv[section][key] = val;
    }
    return kv;
}

// typed readers; every failure names section.key
double get_double(const std::string& sec, const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double out = 0;
    try {
        out = std::stod(v, &pos);
    } catch (...) {
        throw UsageError("config " + sec + "." + key + ": not a number: '" + v + "'");
    }
    if (pos != v.size()) throw UsageError("config " + sec + "." + key + ": trailing junk in '" + v + "'");
    return out;
}

long get_long(const std::string& sec, const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    long out = 0;
    try {
        out = std::stol(v, &pos);
    } catch (...) {
        throw UsageError("config " + sec + "." + key + ": not an integer: '" + v + "'");
    }
    if (pos != v.size()) throw UsageError("config " + sec + "." + key + ": trailing junk in '" + v + "'");
    return out;
}

bool get_bool(const std::string& sec, const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw UsageError("config " + sec + "." + key + ": expected true/false, got '" + v + "'");
}

Vec3 get_vec3(const std::string& sec, const std::string& key, const std::string& v) {
    std::istringstream is(v);
    Vec3 out{};
    if (!(is >> out[0] >> out[1] >> out[2]))
        throw UsageError("config " + sec + "." + key + ": expected three numbers");
    std::string rest;
    if (is >> rest) throw UsageError("config " + sec + "." + key + ": trailing junk");
    return out;
}

std::vector<long> get_longs(const std::string& sec, const std::string& key, const std::string& v) {
    std::istringstream is(v);
    std::vector<long> out;
    long x;
    while (is >> x) out.push_back(x);
    if (!is.eof()) throw UsageError("config " + sec + "." + key + ": expected integers");
    if (out.empty()) throw UsageError("config " + sec + "." + key + ": empty list");
    return out;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string fmt(const Vec3& v) { return fmt(v[0]) + " " + fmt(v[1]) + " " + fmt(v[2]); }

std::string fmt(const std::vector<long>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

} // namespace

RunConfig RunConfig::parse(const std::string& text) {
    RunConfig c; // defaults, then overrides
    KV kv = tokenize(text);

    auto take = [&kv](const std::string& sec) -> std::map<std::string, std::string> {
        auto it = kv.find(sec);
        if (it == kv.end()) return {};
        auto out = std::move(it->second);
        kv.erase(it);
        return out;
    };
    auto reject_leftover_keys = [](const std::string& sec, std::map<std::string, std::string>& m) {
        if (!m.empty()) throw UsageError("config: unknown key " + sec + "." + m.begin()->first);
    };
    auto pop = [](std::map<std::string, std::string>& m, const std::string& key,
                  std::string* out) {
        auto it = m.find(key);
        if (it == m.end()) return false;
        *out = it->second;
        m.erase(it);
        return true;
    };

    std::string v;
    {
        auto sec = take("grid");
        if (pop(sec, "n", &v)) c.grid.n = static_cast<int>(get_long("grid", "n", v));
        if (pop(sec, "L", &v)) c.grid.L = get_double("grid", "L", v);
        reject_leftover_keys("grid", sec);
    }
    {
        auto sec = take("kernel");
        if (pop(sec, "omega", &v)) c.kernel.omega = v;
        if (pop(sec, "axis", &v)) c.kernel.axis = get_vec3("kernel", "axis", v);
        if (pop(sec, "R", &v)) c.kernel.R = get_double("kernel", "R", v);
        reject_leftover_keys("kernel", sec);
    }
    {
        auto sec = take("potential");
        if (pop(sec, "w0", &v)) c.potential.w0 = v;
        if (pop(sec, "sigma", &v)) c.potential.sigma = get_double("potential", "sigma", v);
        if (pop(sec, "r0", &v)) c.potential.r0 = get_double("potential", "r0", v);
        if (pop(sec, "center", &v)) c.potential.center = get_vec3("potential", "center", v);
        if (pop(sec, "a", &v)) c.potential.a = get_double("potential", "a", v);
        if (pop(sec, "b", &v)) c.potential.b = get_double("potential", "b", v);
        if (pop(sec, "beta", &v)) c.potential.beta = get_double("potential", "beta", v);
        if (pop(sec, "N", &v)) c.potential.N = get_long("potential", "N", v);
        reject_leftover_keys("potential", sec);
    }
    {
        auto sec = take("dynamics");
        if (pop(sec, "equation", &v)) c.dynamics.equation = v;
        if (pop(sec, "dt", &v)) c.dynamics.dt = get_double("dynamics", "dt", v);
        if (pop(sec, "t_final", &v)) c.dynamics.t_final = get_double("dynamics", "t_final", v);
        if (pop(sec, "snapshot_stride", &v))
            c.dynamics.snapshot_stride = get_long("dynamics", "snapshot_stride", v);
        if (pop(sec, "diag_stride", &v)) c.dynamics.diag_stride = get_long("dynamics", "diag_stride", v);
        if (pop(sec, "dealias", &v)) c.dynamics.dealias = get_bool("dynamics", "dealias", v);
        if (pop(sec, "include_mu", &v)) c.dynamics.include_mu = get_bool("dynamics", "include_mu", v);
        if (pop(sec, "init", &v)) c.dynamics.init = v;
        if (pop(sec, "init_sigma", &v)) c.dynamics.init_sigma = get_double("dynamics", "init_sigma", v);
        if (pop(sec, "init_center", &v)) c.dynamics.init_center = get_vec3("dynamics", "init_center", v);
        reject_leftover_keys("dynamics", sec);
    }
    {
        auto sec = take("sweep");
        if (pop(sec, "Ns", &v)) c.sweep.Ns = get_longs("sweep", "Ns", v);
        if (pop(sec, "t_final", &v)) c.sweep.t_final = get_double("sweep", "t_final", v);
        if (pop(sec, "dt", &v)) c.sweep.dt = get_double("sweep", "dt", v);
        if (pop(sec, "slope_tol", &v)) c.sweep.slope_tol = get_double("sweep", "slope_tol", v);
        reject_leftover_keys("sweep", sec);
    }
    {
        auto sec = take("fock");
        if (pop(sec, "m", &v)) c.fock.m = static_cast<int>(get_long("fock", "m", v));
        if (pop(sec, "ell", &v)) c.fock.ell = get_double("fock", "ell", v);
        if (pop(sec, "N_list", &v)) c.fock.N_list = get_longs("fock", "N_list", v);
        if (pop(sec, "M", &v)) c.fock.M = static_cast<int>(get_long("fock", "M", v));
        if (pop(sec, "coupling", &v)) c.fock.coupling = get_double("fock", "coupling", v);
        if (pop(sec, "sigma_w", &v)) c.fock.sigma_w = get_double("fock", "sigma_w", v);
        if (pop(sec, "beta", &v)) c.fock.beta = get_double("fock", "beta", v);
        if (pop(sec, "dt", &v)) c.fock.dt = get_double("fock", "dt", v);
        if (pop(sec, "t_final", &v)) c.fock.t_final = get_double("fock", "t_final", v);
        if (pop(sec, "dump_operators", &v))
            c.fock.dump_operators = get_bool("fock", "dump_operators", v);
        reject_leftover_keys("fock", sec);
    }
    if (!kv.empty()) throw UsageError("config: unknown section [" + kv.begin()->first + "]");
    c.validate();
    return c;
}

RunConfig RunConfig::parse_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw UsageError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse(ss.str());
}

std::string RunConfig::print() const {
    std::ostringstream os;
    os << "[grid]\n"
       << "n = " << grid.n << "\n"
       << "L = " << fmt(grid.L) << "\n\n";
    os << "[kernel]\n"
       << "omega = " << kernel.omega << "\n"
       << "axis = " << fmt(kernel.axis) << "\n"
       << "R = " << fmt(kernel.R) << "\n\n";
    os << "[potential]\n"
       << "w0 = " << potential.w0 << "\n"
       << "sigma = " << fmt(potential.sigma) << "\n"
       << "r0 = " << fmt(potential.r0) << "\n"
       << "center = " << fmt(potential.center) << "\n"
       << "a = " << fmt(potential.a) << "\n"
       << "b = " << fmt(potential.b) << "\n"
       << "beta = " << fmt(potential.beta) << "\n"
       << "N = " << potential.N << "\n\n";
    os << "[dynamics]\n"
       << "equation = " << dynamics.equation << "\n"
       << "dt = " << fmt(dynamics.dt) << "\n"
       << "t_final = " << fmt(dynamics.t_final) << "\n"
       << "snapshot_stride = " << dynamics.snapshot_stride << "\n"
       << "diag_stride = " << dynamics.diag_stride << "\n"
       << "dealias = " << (dynamics.dealias ? "true" : "false") << "\n"
       << "include_mu = " << (dynamics.include_mu ? "true" : "false") << "\n"
       << "init = " << dynamics.init << "\n"
       << "init_sigma = " << fmt(dynamics.init_sigma) << "\n"
       << "init_center = " << fmt(dynamics.init_center) << "\n\n";
    os << "[sweep]\n"
       << "Ns = " << fmt(sweep.Ns) << "\n"
       << "t_final = " << fmt(sweep.t_final) << "\n"
       << "dt = " << fmt(sweep.dt) << "\n"
       << "slope_tol = " << fmt(sweep.slope_tol) << "\n\n";
    os << "[fock]\n"
       << "m = " << fock.m << "\n"
       << "ell = " << fmt(fock.ell) << "\n"
       << "N_list = " << fmt(fock.N_list) << "\n"
       << "M = " << fock.M << "\n"
       << "coupling = " << fmt(fock.coupling) << "\n"
       << "sigma_w = " << fmt(fock.sigma_w) << "\n"
       << "beta = " << fmt(fock.beta) << "\n"
       << "dt = " << fmt(fock.dt) << "\n"
       << "t_final = " << fmt(fock.t_final) << "\n"
       << "dump_operators = " << (fock.dump_operators ? "true" : "false") << "\n";
    return os.str();
}

std::uint64_t RunConfig::hash() const {
    const std::string s = print();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void RunConfig::validate() const {
    if (grid.n < 4 || grid.n % 2 != 0) throw UsageError("config grid.n: must be even and >= 4");
    if (!(grid.L > 0)) throw UsageError("config grid.L: must be positive");
    if (!(kernel.R > 0)) throw UsageError("config kernel.R: must be positive");
    if (norm(kernel.axis) < 1e-12) throw UsageError("config kernel.axis: must be nonzero");
    if (potential.w0 != "gaussian" && potential.w0 != "bump")
        throw UsageError("config potential.w0: expected gaussian or bump");
    if (!(potential.sigma > 0)) throw UsageError("config potential.sigma: must be positive");
    if (!(potential.r0 > 0)) throw UsageError("config potential.r0: must be positive");
    if (potential.b < 0) throw UsageError("config potential.b: must be >= 0");
    if (!(potential.beta > 0)) throw UsageError("config potential.beta: must be positive");
    if (potential.N < 2) throw UsageError("config potential.N: must be >= 2");
    if (dynamics.equation != "limiting" && dynamics.equation != "scaled")
        throw UsageError("config dynamics.equation: expected limiting or scaled");
    if (!(dynamics.dt > 0)) throw UsageError("config dynamics.dt: must be positive");
    if (!(dynamics.t_final > 0)) throw UsageError("config dynamics.t_final: must be positive");
    if (dynamics.snapshot_stride < 0) throw UsageError("config dynamics.snapshot_stride: must be >= 0");
    if (dynamics.diag_stride < 1) throw UsageError("config dynamics.diag_stride: must be >= 1");
    if (dynamics.init != "gaussian" && dynamics.init != "bump")
        throw UsageError("config dynamics.init: expected gaussian or bump");
    if (!(dynamics.init_sigma > 0)) throw UsageError("config dynamics.init_sigma: must be positive");
    if (sweep.Ns.size() < 2) throw UsageError("config sweep.Ns: need at least 2 entries");
    for (std::size_t i = 0; i + 1 < sweep.Ns.size(); ++i)
        if (sweep.Ns[i + 1] <= sweep.Ns[i])
            throw UsageError("config sweep.Ns: must be strictly increasing");
    if (sweep.Ns.front() < 2) throw UsageError("config sweep.Ns: entries must be >= 2");
    if (!(sweep.t_final > 0) || !(sweep.dt > 0))
        throw UsageError("config sweep: t_final and dt must be positive");
    if (!(sweep.slope_tol > 0)) throw UsageError("config sweep.slope_tol: must be positive");
    if (fock.m < 1 || fock.m > 8) throw UsageError("config fock.m: must be in [1, 8]");
    if (!(fock.ell > 0)) throw UsageError("config fock.ell: must be positive");
    for (long N : fock.N_list)
        if (N < 2 || N > 8) throw UsageError("config fock.N_list: entries must be in [2, 8]");
    if (fock.M < 0) throw UsageError("config fock.M: must be >= 0");
    if (!(fock.dt > 0) || !(fock.t_final > 0))
        throw UsageError("config fock: dt and t_final must be positive");
    if (fock.beta < 0) throw UsageError("config fock.beta: must be >= 0");
}

} // namespace dipgp
