#include "wrtkit/pipeline.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "wrtkit/io.hpp"
#include "wrtkit/phantoms.hpp"
#include "wrtkit/reduce.hpp"

namespace wrtkit {

Method method_from_string(const std::string& s) {
    if (s == "chang2d") return Method::chang2d;
    if (s == "chang3d") return Method::chang3d;
    if (s == "kun2d") return Method::kun2d;
    if (s == "kun3d") return Method::kun3d;
    throw DataError("unknown method '" + s + "'");
}

std::string method_name(Method m) {
    switch (m) {
        case Method::chang2d: return "chang2d";
        case Method::chang3d: return "chang3d";
        case Method::kun2d: return "kun2d";
        default: return "kun3d";
    }
}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

}  // namespace

ExperimentConfig parse_experiment_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string section, line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto b = line.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        line = line.substr(b);
        if (line[0] == '#' || line[0] == ';') continue;
        if (line[0] == '[') {
            auto e = line.find(']');
            if (e == std::string::npos) throw DataError("config: unterminated section header");
            section = line.substr(1, e - 1);
            if (section != "grids" && section != "phantom" && section != "noise" &&
                section != "method" && section != "output")
                throw DataError("config: unknown section [" + section + "]");
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DataError("config: expected key = value at line " + std::to_string(lineno));
        auto trim = [](std::string s) {
            auto bb = s.find_first_not_of(" \t");
            auto ee = s.find_last_not_of(" \t");
            return bb == std::string::npos ? std::string() : s.substr(bb, ee - bb + 1);
        };
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        auto toks = split_ws(val);
        if (section == "grids") {
            if (key == "n") cfg.n = std::stoi(val);
            else if (key == "nphi") cfg.nphi = std::stoi(val);
            else if (key == "npsi") cfg.npsi = std::stoi(val);
            else throw DataError("config: unknown key '" + key + "' in [grids]");
        } else if (section == "phantom") {
            if (key == "activities") cfg.activities = toks;
            else if (key == "attenuations") cfg.attenuations = toks;
            else throw DataError("config: unknown key '" + key + "' in [phantom]");
        } else if (section == "noise") {
            if (key == "levels") {
                cfg.levels.clear();
                for (auto& t : toks) cfg.levels.push_back(std::stod(t));
            } else if (key == "seeds") {
                cfg.seeds.clear();
                for (auto& t : toks) cfg.seeds.push_back(std::stoull(t));
            } else {
                throw DataError("config: unknown key '" + key + "' in [noise]");
            }
        } else if (section == "method") {
            if (key == "methods") {
                cfg.methods.clear();
                for (auto& t : toks) cfg.methods.push_back(method_from_string(t));
            } else if (key == "m") cfg.m = std::stoi(val);
            else if (key == "max_iter") cfg.max_iter = std::stoi(val);
            else if (key == "tol") cfg.tol = std::stod(val);
            else if (key == "mask_radius") cfg.mask_radius = std::stod(val);
            else if (key == "domain_radius") cfg.domain_radius = std::stod(val);
            else throw DataError("config: unknown key '" + key + "' in [method]");
        } else if (section == "output") {
            if (key == "table") cfg.table_out = val;
            else if (key == "rows") cfg.rows_out = val;
            else throw DataError("config: unknown key '" + key + "' in [output]");
        } else {
            throw DataError("config: key outside any section at line " + std::to_string(lineno));
        }
    }
    return cfg;
}

VolumeGrid reconstruct(Method method, const RaySinogram* rays, const PlaneSinogram* planes,
                       const WeightFields& wf, const ExperimentConfig& cfg, SolveLog* log) {
    KunyanskyConfig kc;
    kc.m = cfg.m;
    kc.max_iter = cfg.max_iter;
    kc.tol = cfg.tol;
    kc.domain_radius = cfg.domain_radius;
    switch (method) {
        case Method::chang2d:
            if (!rays) throw DataError("chang2d needs ray data");
            return slice_stack(*rays, wf, cfg.mask_radius);
        case Method::kun2d:
            if (!rays) throw DataError("kun2d needs ray data");
            return kunyansky_stack(*rays, wf, kc, log);
        case Method::chang3d:
            if (!planes) throw DataError("chang3d needs reduced plane data");
            return chang3d(*planes, wf, cfg.mask_radius);
        default:
            if (!planes) throw DataError("kun3d needs reduced plane data");
            return kunyansky3d(*planes, wf, kc, {}, {1.25, 2, 0}, log);
    }
}

namespace {

bool needs_rays(Method m) { return m == Method::chang2d || m == Method::kun2d; }
bool needs_planes(Method m) { return !needs_rays(m); }

}  // namespace

std::vector<ErrorRecord> run_table(const ExperimentConfig& cfg, std::ostream* progress) {
    std::vector<ErrorRecord> records;
    const CartesianGrid grid(cfg.n);
    const RayGrid rg(cfg.n, cfg.n, cfg.nphi);
    const PlaneGrid pg(cfg.n, cfg.nphi, cfg.npsi);
    const int iz0 = (cfg.n - 1) / 2;
    const bool any3d = std::any_of(cfg.methods.begin(), cfg.methods.end(), needs_planes);
    const int kmax = std::max(2 * cfg.m, 2);

    for (const auto& att_name : cfg.attenuations) {
        VolumeGrid atten = rasterize(load_phantom_arg(att_name), grid);
        WeightFields wf = attenuation_weight_fields(atten, cfg.nphi, kmax);
        WeightEvaluator w = WeightEvaluator::attenuated(atten);
        for (const auto& act_name : cfg.activities) {
            VolumeGrid act = rasterize(load_phantom_arg(act_name), grid);
            if (progress)
                *progress << "# projecting " << act_name << " / " << att_name << std::endl;
            RaySinogram sino = project_all(act, w, rg);
            PlaneSinogram reduced;
            if (any3d) reduced = reduce(sino, pg);

            std::map<Method, std::vector<double>> reference;
            for (Method m : cfg.methods) {
                if (progress)
                    *progress << "# noiseless " << method_name(m) << " " << act_name << "/"
                              << att_name << std::endl;
                VolumeGrid rec = reconstruct(m, &sino, any3d ? &reduced : nullptr, wf, cfg);
                reference[m] = volume_slice_z(rec, iz0);
            }

            for (double level : cfg.levels) {
                double c_n = calibrate(sino, level);
                for (std::uint64_t seed : cfg.seeds) {
                    CountSinogram counts = sample_counts(sino, c_n, seed);
                    RaySinogram est = normalize_counts(counts);
                    PlaneSinogram reduced_noisy;
                    if (any3d) reduced_noisy = reduce(est, pg);
                    for (Method m : cfg.methods) {
                        VolumeGrid rec =
                            reconstruct(m, &est, any3d ? &reduced_noisy : nullptr, wf, cfg);
                        ErrorRecord rec_row{act_name, att_name, level, method_name(m), seed,
                                            rel_error(volume_slice_z(rec, iz0), reference[m])};
                        records.push_back(rec_row);
                        if (progress)
                            *progress << "# eps " << act_name << " " << att_name << " n=" << level
                                      << " seed=" << seed << " " << method_name(m) << " = "
                                      << rec_row.eps << std::endl;
                    }
                }
            }
        }
    }
    return records;
}

}  // namespace wrtkit
