#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "dipgp/vec3.hpp"

namespace dipgp {

/// Declarative run configuration: sectioned key-value text, parse-then-
/// validate, unknown sections or keys rejected. The canonical serialization
/// (print()) round-trips through parse() and is what gets hashed into run
/// provenance.
struct RunConfig {
    struct GridSec {
        int n = 64;
        double L = 16.0;
    } grid;

    struct KernelSec {
        std::string omega = "dipolar"; // "dipolar" or path to an Omega table file
        Vec3 axis = {0.0, 0.0, 1.0};
        double R = 0.25;
    } kernel;

    struct PotentialSec {
        std::string w0 = "gaussian"; // gaussian | bump
        double sigma = 0.5;
        double r0 = 1.0;
        Vec3 center = {0.0, 0.0, 0.0};
        double a = 1.0;
        double b = 0.0;
        double beta = 0.25;
        long N = 64;
    } potential;

    struct DynamicsSec {
        std::string equation = "limiting"; // limiting | scaled
        double dt = 1e-3;
        double t_final = 1.0;
        long snapshot_stride = 0; // 0 disables field snapshots
        long diag_stride = 10;
        bool dealias = false;
        bool include_mu = true;
        std::string init = "gaussian"; // gaussian | bump
        double init_sigma = 0.8;
        Vec3 init_center = {0.0, 0.0, 0.0};
    } dynamics;

    struct SweepSec {
        std::vector<long> Ns = {8, 16, 32, 64, 128, 256};
        double t_final = 0.5;
        double dt = 2.5e-3;
        double slope_tol = 0.15;
    } sweep;

    struct FockSec {
        int m = 4;
        double ell = 6.283185307179586;
        std::vector<long> N_list = {3, 4, 5, 6};
        int M = 3;
        double coupling = 0.2;
        double sigma_w = 0.5;
        double beta = 0.0;
        double dt = 2e-3;
        double t_final = 0.5;
        bool dump_operators = false;
    } fock;

    static RunConfig parse(const std::string& text);
    static RunConfig parse_file(const std::string& path);

    /// Canonical serialization; parse(print()) reproduces the config.
    std::string print() const;

    /// FNV-1a over the canonical serialization.
    std::uint64_t hash() const;

    /// Range checks on every physical parameter; throws UsageError.
    void validate() const;
};

} // namespace dipgp
