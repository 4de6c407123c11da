#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "../zaremba.hpp"

namespace zaremba::app {

using json = nlohmann::json;

enum class ProblemMode { Scattering, Bvp };

struct GuardSettings {
    bool enabled = true;
    ResonanceGuardConfig config;
};

struct GridSettings {
    GridSpec spec;
    std::string mode = "total";  // total | scattered | incident
};

struct RunConfig {
    // geometry
    std::string curve_kind = "kite";  // kite | disc | ellipse | trig
    double radius = 1.0;
    double semi_a = 1.0, semi_b = 0.5;
    std::vector<double> a1, b1, a2, b2;
    Curve curve;
    std::vector<Segment> segments;
    Partition partition;

    // discretization
    int n = 128;
    int fc_bandwidth = -1;
    double svd_cutoff = 1e-12;
    double weight_exponent = 4.0;
    std::optional<double> k_design;
    double panel_factor = 1.0;

    // problem
    ProblemMode mode = ProblemMode::Scattering;
    double k = 10.0;
    int gamma = -1;
    double alpha = 0.0;
    std::optional<Vec2> source;
    std::vector<Vec2> observables{{1.0, 2.0}};
    GuardSettings guard;
    std::vector<int> n_list{32, 64, 128, 256};
    EigenScanOptions eigs{2.0, 3.0, 21, 1e-9, 1e-3};

    // output
    bool density_csv = true;
    GridSettings grid;
    int eigenfunction_grid = 100;

    DiscretizationOptions discretization(int n_override = -1, double k_design_auto = 0.0) const;
    // Effective configuration with every default filled in.
    json echo(double k_design_resolved) const;
};

// Parses and validates a config document. Throws config_error on schema violations,
// including unknown keys.
RunConfig parse_config(const json& doc);
RunConfig load_config(const std::string& path);

}  // namespace zaremba::app
