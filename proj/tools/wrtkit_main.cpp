// wrtkit: weighted ray/Radon transform toolkit for emission tomography
// simulation, rebinning of ray data to plane data, and approximate
// inversions in 2D and 3D.

#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "wrtkit/bench.hpp"
#include "wrtkit/io.hpp"
#include "wrtkit/pipeline.hpp"
#include "wrtkit/selftest.hpp"

using namespace wrtkit;

namespace {

RaySinogram load_ray_data(const std::string& path) {
    Container c = read_container(path);
    if (c.kind == "raysino") return raysino_from(c);
    if (c.kind == "counts") {
        CountSinogram counts = counts_from(c);
        if (counts.c_n <= 0) throw DataError("counts container has no stored C_n");
        return normalize_counts(counts);
    }
    throw DataError("expected raysino or counts data, got kind '" + c.kind + "'");
}

int parse_slice_arg(const std::string& arg, const CartesianGrid& g) {
    if (arg.rfind("z=", 0) != 0) throw DataError("--slice expects z=<value>");
    double z = std::stod(arg.substr(2));
    return g.nearest_index(z);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted ray/Radon transform toolkit"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "worker thread cap (default: WRTKIT_THREADS or all cores)");

    // phantom
    auto* cmd_phantom = app.add_subcommand("phantom", "rasterize a phantom onto the voxel grid");
    std::string ph_spec, ph_out, ph_dump;
    int ph_n = 129;
    cmd_phantom->add_option("--spec", ph_spec, "a1|a2|f1|f2 or a phantom spec file")->required();
    cmd_phantom->add_option("--n", ph_n, "grid points per axis");
    cmd_phantom->add_option("-o,--out", ph_out, "output volume container");
    cmd_phantom->add_option("--dump", ph_dump, "also write the spec in text form");

    // project
    auto* cmd_project = app.add_subcommand("project", "weighted ray transform of an activity volume");
    std::string pr_act, pr_att, pr_out;
    int pr_nz = 0, pr_ns = 0, pr_nphi = 128;
    cmd_project->add_option("--activity", pr_act)->required();
    cmd_project->add_option("--attenuation", pr_att, "attenuation volume (omit for W = 1)");
    cmd_project->add_option("--nz", pr_nz, "z levels (default: activity grid N)");
    cmd_project->add_option("--ns", pr_ns, "offsets (default: activity grid N)");
    cmd_project->add_option("--nphi", pr_nphi, "angles");
    cmd_project->add_option("-o,--out", pr_out)->required();

    // noise
    auto* cmd_noise = app.add_subcommand("noise", "Poisson photon counts from noiseless ray data");
    std::string no_in, no_out;
    double no_level = 50.0;
    std::uint64_t no_seed = 1;
    cmd_noise->add_option("--in", no_in)->required();
    cmd_noise->add_option("--n-level", no_level, "target maximal expected count")->required();
    cmd_noise->add_option("--seed", no_seed);
    cmd_noise->add_option("-o,--out", no_out)->required();

    // reduce
    auto* cmd_reduce = app.add_subcommand("reduce", "rebin ray data into plane data");
    std::string rd_in, rd_out;
    int rd_npsi = 0;
    cmd_reduce->add_option("--in", rd_in, "raysino or counts container")->required();
    cmd_reduce->add_option("--npsi", rd_npsi, "polar nodes (default: nphi)");
    cmd_reduce->add_option("-o,--out", rd_out)->required();

    // recon
    auto* cmd_recon = app.add_subcommand("recon", "approximate inversion of weighted data");
    std::string rc_method, rc_data, rc_att, rc_out;
    int rc_m = 1, rc_max_iter = 50;
    double rc_tol = 1e-6, rc_mask = kDefaultMaskRadius, rc_domain = 0.90;
    cmd_recon->add_option("--method", rc_method, "chang2d|chang3d|kun2d|kun3d")->required();
    cmd_recon->add_option("--data", rc_data, "raysino/counts (2d) or planesino (3d)")->required();
    cmd_recon->add_option("--attenuation", rc_att, "attenuation volume (omit for W = 1)");
    cmd_recon->add_option("--m", rc_m, "approximation order (kun methods)");
    cmd_recon->add_option("--max-iter", rc_max_iter);
    cmd_recon->add_option("--tol", rc_tol);
    cmd_recon->add_option("--mask-radius", rc_mask);
    cmd_recon->add_option("--domain-radius", rc_domain);
    cmd_recon->add_option("-o,--out", rc_out)->required();

    // invert-radon
    auto* cmd_inv = app.add_subcommand("invert-radon", "classical (W = 1) Radon inversion");
    std::string iv_in, iv_out;
    int iv_dim = 0, iv_n = 0;
    cmd_inv->add_option("--dim", iv_dim, "2 or 3")->required();
    cmd_inv->add_option("--in", iv_in, "slice/raysino (2) or planesino (3)")->required();
    cmd_inv->add_option("--n", iv_n, "output grid (default: ns of the data)");
    cmd_inv->add_option("-o,--out", iv_out)->required();

    // error
    auto* cmd_error = app.add_subcommand("error", "relative Frobenius error on a z slice");
    std::string er_noisy, er_ref, er_slice = "z=0";
    cmd_error->add_option("--noisy", er_noisy)->required();
    cmd_error->add_option("--reference", er_ref)->required();
    cmd_error->add_option("--slice", er_slice, "z=<value>");

    // table
    auto* cmd_table = app.add_subcommand("table", "full noise-robustness comparison run");
    std::string tb_config, tb_out;
    cmd_table->add_option("--config", tb_config, "sectioned key = value config file");
    cmd_table->add_option("-o,--out", tb_out, "table output (overrides config)");

    // export-slice
    auto* cmd_export = app.add_subcommand("export-slice", "write one volume section as 16-bit PGM");
    std::string ex_in, ex_out, ex_axis = "z";
    int ex_index = -1;
    cmd_export->add_option("--in", ex_in)->required();
    cmd_export->add_option("--axis", ex_axis, "x|y|z");
    cmd_export->add_option("--index", ex_index)->required();
    cmd_export->add_option("-o,--out", ex_out)->required();

    // selftest
    auto* cmd_selftest = app.add_subcommand("selftest", "run the built-in oracle suite");
    int st_n = 65;
    cmd_selftest->add_option("--n", st_n, "grid scale");

    // bench is a separate binary; keep the CLI surface to the pipeline

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (threads <= 0)
            if (const char* env = std::getenv("WRTKIT_THREADS")) threads = std::atoi(env);
        if (threads > 0) omp_set_num_threads(threads);

        if (*cmd_phantom) {
            PhantomSpec spec = load_phantom_arg(ph_spec);
            if (!ph_dump.empty()) {
                std::ofstream f(ph_dump);
                f << dump_phantom(spec);
            }
            if (!ph_out.empty()) {
                VolumeGrid vol = rasterize(spec, CartesianGrid(ph_n));
                write_container(ph_out, to_container(vol));
            }
            if (ph_out.empty() && ph_dump.empty())
                throw DataError("phantom: nothing to do, give -o and/or --dump");
        } else if (*cmd_project) {
            VolumeGrid act = volume_from(read_container(pr_act));
            WeightEvaluator w = WeightEvaluator::uniform();
            if (!pr_att.empty())
                w = WeightEvaluator::attenuated(volume_from(read_container(pr_att)));
            RayGrid rg(pr_nz > 0 ? pr_nz : act.grid.n, pr_ns > 0 ? pr_ns : act.grid.n, pr_nphi,
                       act.grid.r);
            write_container(pr_out, to_container(project_all(act, w, rg)));
        } else if (*cmd_noise) {
            RaySinogram sino = raysino_from(read_container(no_in));
            double c_n = calibrate(sino, no_level);
            CountSinogram counts = sample_counts(sino, c_n, no_seed);
            write_container(no_out, to_container(counts));
            std::cout << "C_n = " << c_n << "\n";
        } else if (*cmd_reduce) {
            RaySinogram sino = load_ray_data(rd_in);
            PlaneGrid pg(sino.grid.ns, sino.grid.nphi, rd_npsi > 0 ? rd_npsi : sino.grid.nphi,
                         sino.grid.r);
            write_container(rd_out, to_container(reduce(sino, pg)));
        } else if (*cmd_recon) {
            Method method = method_from_string(rc_method);
            ExperimentConfig cfg;
            cfg.m = rc_m;
            cfg.max_iter = rc_max_iter;
            cfg.tol = rc_tol;
            cfg.mask_radius = rc_mask;
            cfg.domain_radius = rc_domain;

            RaySinogram rays;
            PlaneSinogram planes;
            const RaySinogram* prays = nullptr;
            const PlaneSinogram* pplanes = nullptr;
            CartesianGrid grid;
            if (method == Method::chang2d || method == Method::kun2d) {
                rays = load_ray_data(rc_data);
                grid = CartesianGrid(rays.grid.ns, rays.grid.r);
                if (rays.grid.nz != grid.n)
                    throw DataError("2d methods need nz == ns so slices match the volume grid");
                prays = &rays;
                cfg.nphi = rays.grid.nphi;
            } else {
                planes = planesino_from(read_container(rc_data));
                grid = CartesianGrid(planes.grid.ns, planes.grid.r);
                pplanes = &planes;
                cfg.nphi = planes.grid.nphi;
                cfg.npsi = planes.grid.npsi;
            }
            cfg.n = grid.n;
            WeightFields wf =
                rc_att.empty()
                    ? uniform_weight_fields(grid, cfg.nphi, std::max(2, 2 * cfg.m))
                    : attenuation_weight_fields(volume_from(read_container(rc_att)), cfg.nphi,
                                                std::max(2, 2 * cfg.m));
            SolveLog log;
            VolumeGrid rec = reconstruct(method, prays, pplanes, wf, cfg, &log);
            if (method == Method::kun2d || method == Method::kun3d) {
                std::cerr << "sigma = " << log.sigma << "\n";
                for (std::size_t j = 0; j < log.update_norms.size(); ++j)
                    std::cerr << "iter " << j + 1 << " update " << log.update_norms[j]
                              << (j < log.ratios.size() ? " ratio " + std::to_string(log.ratios[j])
                                                        : "")
                              << "\n";
            }
            write_container(rc_out, to_container(rec));
        } else if (*cmd_inv) {
            Container c = read_container(iv_in);
            if (iv_dim == 2) {
                if (c.kind == "raysino") {
                    RaySinogram rays = raysino_from(c);
                    CartesianGrid grid(iv_n > 0 ? iv_n : rays.grid.ns, rays.grid.r);
                    if (rays.grid.nz == 1) {
                        SliceSinogram s(rays.grid.ns, rays.grid.nphi, rays.grid.r);
                        std::copy(rays.values.begin(), rays.values.end(), s.values.begin());
                        write_container(iv_out, to_container(radon2d_inverse(s, grid)));
                    } else {
                        WeightFields wf = uniform_weight_fields(grid, rays.grid.nphi, 1);
                        write_container(iv_out, to_container(slice_stack(rays, wf, grid.r)));
                    }
                } else {
                    throw DataError("invert-radon --dim 2 expects a raysino container");
                }
            } else if (iv_dim == 3) {
                PlaneSinogram planes = planesino_from(c);
                CartesianGrid grid(iv_n > 0 ? iv_n : planes.grid.ns, planes.grid.r);
                write_container(iv_out, to_container(radon3d_inverse(planes, grid)));
            } else {
                throw DataError("invert-radon: --dim must be 2 or 3");
            }
        } else if (*cmd_error) {
            VolumeGrid noisy = volume_from(read_container(er_noisy));
            VolumeGrid ref = volume_from(read_container(er_ref));
            int iz = parse_slice_arg(er_slice, ref.grid);
            double eps = rel_error(volume_slice_z(noisy, iz), volume_slice_z(ref, iz));
            std::cout << eps << "\n";
        } else if (*cmd_table) {
            ExperimentConfig cfg;
            if (!tb_config.empty()) {
                std::ifstream f(tb_config);
                if (!f) throw DataError("table: cannot open config " + tb_config);
                cfg = parse_experiment_config(f);
            }
            if (!tb_out.empty()) {
                cfg.table_out = tb_out;
                cfg.rows_out = tb_out + ".csv";
            }
            std::vector<ErrorRecord> records = run_table(cfg, &std::cerr);
            std::ofstream tf(cfg.table_out);
            tf << render_table(records);
            std::ofstream rf(cfg.rows_out);
            rf << render_rows(records);
            std::cout << render_table(records);
        } else if (*cmd_export) {
            VolumeGrid vol = volume_from(read_container(ex_in));
            const int n = vol.grid.n;
            if (ex_index < 0 || ex_index >= n) throw DataError("export-slice: index out of range");
            std::vector<double> img((std::size_t)n * n);
            for (int b = 0; b < n; ++b)
                for (int a = 0; a < n; ++a) {
                    double v;
                    if (ex_axis == "z") v = vol.at(a, b, ex_index);
                    else if (ex_axis == "y") v = vol.at(a, ex_index, b);
                    else if (ex_axis == "x") v = vol.at(ex_index, a, b);
                    else throw DataError("export-slice: axis must be x, y or z");
                    img[(std::size_t)a + (std::size_t)n * b] = v;
                }
            write_pgm16(ex_out, img.data(), n, n);
        } else if (*cmd_selftest) {
            return run_selftest(st_n, std::cout) ? 0 : 4;
        }
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
