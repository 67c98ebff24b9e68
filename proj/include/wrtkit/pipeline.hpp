#pragma once

#include <functional>
#include <iosfwd>

#include "wrtkit/kunyansky.hpp"
#include "wrtkit/metrics.hpp"
#include "wrtkit/noise.hpp"

namespace wrtkit {

enum class Method { chang2d, chang3d, kun2d, kun3d };

Method method_from_string(const std::string& s);
std::string method_name(Method m);

// Full experiment description; mirrors the sectioned key = value config file
// ([grids], [phantom], [noise], [method], [output]) with these defaults.
struct ExperimentConfig {
    int n = 129;
    int nphi = 128;
    int npsi = 128;
    std::vector<std::string> activities = {"f1", "f2"};
    std::vector<std::string> attenuations = {"a1", "a2"};
    std::vector<double> levels = {50.0, 500.0};
    std::vector<std::uint64_t> seeds = {1, 2, 3};
    std::vector<Method> methods = {Method::chang2d, Method::chang3d, Method::kun2d, Method::kun3d};
    int m = 1;
    int max_iter = 50;
    double tol = 1e-6;
    double mask_radius = kDefaultMaskRadius;
    double domain_radius = 0.90;
    std::string table_out = "table.txt";
    std::string rows_out = "table.csv";
};

// strict parser: unknown sections or keys are rejected
ExperimentConfig parse_experiment_config(std::istream& in);

// Reconstruction dispatch shared by the CLI, the table driver and the tests.
// 2D methods consume ray data, 3D methods reduced plane data.
VolumeGrid reconstruct(Method method, const RaySinogram* rays, const PlaneSinogram* planes,
                       const WeightFields& wf, const ExperimentConfig& cfg, SolveLog* log = nullptr);

// Runs the whole comparison: for every (activity, attenuation) the noiseless
// pipeline once per method, then per (level, seed) the noisy pipeline;
// eps compares the z = 0 slices of noisy vs noiseless reconstructions of the
// same method.
std::vector<ErrorRecord> run_table(const ExperimentConfig& cfg, std::ostream* progress = nullptr);

}  // namespace wrtkit
