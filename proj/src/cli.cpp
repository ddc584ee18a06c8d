#include "slantsurf/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "slantsurf/config.hpp"
#include "slantsurf/error.hpp"
#include "slantsurf/io.hpp"
#include "slantsurf/kernels.hpp"
#include "slantsurf/mesh.hpp"
#include "slantsurf/offsets.hpp"
#include "slantsurf/slant.hpp"
#include "slantsurf/verify.hpp"

namespace slantsurf {

namespace {

namespace fs = std::filesystem;

std::ofstream open_out(const fs::path& p) {
    std::ofstream os(p);
    if (!os) throw Error(Errc::InvalidArgument, "cannot write '" + p.string() + "'");
    return os;
}

struct DetectorLine {
    std::string name;
    bool ran = false;
    std::string error;
    DetectorResult result;
};

DetectorLine run_detector(const std::string& name,
                          DetectorResult (*fn)(std::span<const FrameSample>, double),
                          std::span<const FrameSample> frames, double tol) {
    DetectorLine line;
    line.name = name;
    try {
        line.result = fn(frames, tol);
        line.ran = true;
    } catch (const Error& e) {
        line.error = e.what();
    }
    return line;
}

void report_detector(std::ostream& os, const DetectorLine& d) {
    if (!d.ran) {
        write_kv(os, d.name, std::string("error ") + d.error);
        return;
    }
    const DetectorResult& r = d.result;
    std::string v = r.indeterminate ? "indeterminate" : (r.verdict ? "true" : "false");
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s (residual %.6g)", v.c_str(), r.residual);
    write_kv(os, d.name, std::string(buf));
    if (r.axis_valid) {
        write_kv(os, d.name + ".axis", format_axis(r.axis) + " " +
                                           causal_name(r.axis_character));
        write_kv(os, d.name + ".axis_constancy", r.axis_constancy);
        write_kv(os, d.name + ".inner_products",
                 "c_q=" + std::to_string(r.c_q) + " c_h=" + std::to_string(r.c_h) +
                     " c_a=" + std::to_string(r.c_a));
    }
    if (r.guarded_radical) write_kv(os, d.name + ".guarded_radical", "true");
    if (r.degenerate_axis) write_kv(os, d.name + ".degenerate_axis", "true");
}

int cmd_analyze(const std::string& in, const std::string& out_dir, double tol, int grid_n) {
    const Config cfg = Config::parse_file(in);
    const RuledSurfaceSpec spec = load_surface(cfg);

    fs::create_directories(out_dir);
    std::ofstream report = open_out(fs::path(out_dir) / "report.txt");

    const SurfaceClass cls = classify(spec);
    write_kv(report, "surface_class", surface_class_name(cls.tag));
    if (cls.tag == SurfaceClassTag::Degenerate) {
        // the reason string already carries the failure kind up front
        write_kv(report, "degenerate_reason", cls.reason);
        std::cerr << "error: " << cls.reason << "\n";
        return 1;
    }

    const DevelopabilityReport dev = developability(spec, std::max(tol, 1e-8));
    write_kv(report, "developable", dev.developable ? "true" : "false");
    write_kv(report, "max_abs_drall", dev.max_abs_drall);
    if (dev.cylindrical) write_kv(report, "cylindrical", "true");

    AnalysisGrid grid;
    grid.samples = grid_n;
    grid.tol.verdict = tol;
    const std::vector<FrameSample> frames = invariants(spec, grid);
    int flagged = 0;
    for (const FrameSample& f : frames) flagged += f.flagged ? 1 : 0;
    write_kv(report, "samples", static_cast<double>(frames.size()));
    write_kv(report, "flagged_samples", static_cast<double>(flagged));

    const DetectorLine dq = run_detector("q_slant", &q_slant_ratio_test, frames, tol);
    const DetectorLine ddq = run_detector("det_q", &det_q_test, frames, tol);
    const DetectorLine dda = run_detector("det_a", &det_a_test, frames, tol);
    const DetectorLine dode = run_detector("ode_q", &ode_q_test, frames, tol);
    const DetectorLine dh = run_detector("h_slant", &h_slant_test, frames, tol);
    const DetectorLine da = run_detector("a_slant", &a_slant_test, frames, tol);
    for (const DetectorLine* d : {&dq, &ddq, &dda, &dode, &dh, &da})
        report_detector(report, *d);

    std::ofstream csv = open_out(fs::path(out_dir) / "samples.csv");
    write_frames_csv(csv, frames, ddq.ran ? &ddq.result.series : nullptr,
                     dda.ran ? &dda.result.series : nullptr,
                     dh.ran ? &dh.result.series : nullptr);

    std::cout << "surface_class: " << surface_class_name(cls.tag) << "\n"
              << "developable: " << (dev.developable ? "true" : "false") << "\n"
              << "report: " << (fs::path(out_dir) / "report.txt").string() << "\n"
              << "samples: " << (fs::path(out_dir) / "samples.csv").string() << "\n";
    return 0;
}

int cmd_synthesize(const std::string& profile_path, const std::string& mode_flag,
                   const std::string& out_dir) {
    Config cfg = Config::parse_file(profile_path);
    ProfileJob job = load_profile(cfg);
    if (!mode_flag.empty()) {
        if (mode_flag == "developable") job.mode = ReconstructionMode::Developable;
        else if (mode_flag == "geodesic") job.mode = ReconstructionMode::GeodesicStriction;
        else if (mode_flag == "custom") job.mode = ReconstructionMode::Custom;
        else throw Error(Errc::InvalidArgument, "unknown mode '" + mode_flag + "'");
    }

    const SynthesizedSurface surf =
        synthesize(job.profile, job.mode, job.step,
                   job.mode == ReconstructionMode::Custom
                       ? std::optional<ModeCoeffs>(job.coeffs)
                       : std::nullopt);
    const std::vector<FrameSample> frames = surf.frames(512);

    fs::create_directories(out_dir);
    std::ofstream csv = open_out(fs::path(out_dir) / "frames.csv");
    write_frames_csv(csv, frames);

    std::ofstream report = open_out(fs::path(out_dir) / "report.txt");
    write_kv(report, "class", frame_class_name(job.profile.cls));
    write_kv(report, "max_gram_residual", surf.series.max_gram_residual);

    // round-trip residuals on the emitted surface
    AnalysisGrid grid;
    grid.samples = 128;
    double worst = 0.0;
    const std::vector<FrameSample> rec = invariants(surf.as_ruled_spec(), grid);
    for (const FrameSample& f : rec) {
        const double sref = std::min(job.profile.s_min + f.s, job.profile.s_max);
        worst = std::max(worst, std::fabs(f.k1 - job.profile.k1_jet(sref).value()));
        worst = std::max(worst, std::fabs(f.k2 - job.profile.k2_jet(sref).value()));
    }
    write_kv(report, "roundtrip_sup_error", worst);

    std::cout << "class: " << frame_class_name(job.profile.cls) << "\n"
              << "max_gram_residual: " << surf.series.max_gram_residual << "\n"
              << "roundtrip_sup_error: " << worst << "\n"
              << "frames: " << (fs::path(out_dir) / "frames.csv").string() << "\n";
    return 0;
}

int cmd_verify(std::uint64_t seed, int cases, double tol_scale) {
    SuiteOptions opt;
    opt.seed = seed;
    opt.cases = cases;
    opt.tol_scale = tol_scale;
    const std::vector<SuiteResult> results = run_all_suites(opt);
    bool all = true;
    for (const SuiteResult& r : results) {
        std::printf("%-34s %s  worst %.3e  (%d cases)%s%s\n", r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.worst, r.cases,
                    r.note.empty() ? "" : "  ", r.note.c_str());
        all = all && r.pass;
    }
    std::printf("verify: %s\n", all ? "PASS" : "FAIL");
    return all ? 0 : 1;
}

int cmd_export_mesh(const std::string& in, const std::string& vrange,
                    const std::string& grid, const std::string& out) {
    const Config cfg = Config::parse_file(in);
    const RuledSurfaceSpec spec = load_surface(cfg);

    const auto colon = vrange.find(':');
    if (colon == std::string::npos)
        throw Error(Errc::InvalidArgument, "--v-range expects '<a>:<b>'");
    const double v0 = std::stod(vrange.substr(0, colon));
    const double v1 = std::stod(vrange.substr(colon + 1));

    const auto cross = grid.find('x');
    if (cross == std::string::npos)
        throw Error(Errc::InvalidArgument, "--grid expects '<n>x<m>'");
    const int nu = std::stoi(grid.substr(0, cross));
    const int nv = std::stoi(grid.substr(cross + 1));

    const MeshBuffer mesh = triangulate_ruled(spec, nu, nv, v0, v1);
    std::ofstream os = open_out(out);
    write_mesh(mesh, os);
    std::cout << "vertices: " << mesh.vertices.size() << "\n"
              << "faces: " << mesh.faces.size() << "\n"
              << "mesh: " << out << "\n";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"non-null ruled surface analysis in Minkowski 3-space"};
    app.require_subcommand(1);

    std::string in, out, profile, mode, vrange = "-1:1", grid_s = "64x16";
    double tol = 1e-6, tol_scale = 1.0;
    int grid_n = 512, cases = 0;
    std::uint64_t seed = 20260808u;

    CLI::App* analyze = app.add_subcommand("analyze", "analyze a ruled surface");
    analyze->add_option("--in", in, "surface config")->required();
    analyze->add_option("--out", out, "output directory")->required();
    analyze->add_option("--tol", tol, "verdict tolerance");
    analyze->add_option("--grid", grid_n, "striction-line samples");

    CLI::App* synth = app.add_subcommand("synthesize", "build a surface from invariants");
    synth->add_option("--profile", profile, "profile config")->required();
    synth->add_option("--mode", mode, "developable|geodesic|custom");
    synth->add_option("--out", out, "output directory")->required();

    CLI::App* verify = app.add_subcommand("verify", "run the property suites");
    verify->add_option("--seed", seed, "suite seed");
    verify->add_option("--cases", cases, "cases per suite (0: defaults)");
    verify->add_option("--tol", tol_scale, "tolerance scale (sanity: 0 fails all)");

    CLI::App* mesh = app.add_subcommand("export-mesh", "triangulate to a polygon file");
    mesh->add_option("--in", in, "surface config")->required();
    mesh->add_option("--v-range", vrange, "ruling parameter range a:b");
    mesh->add_option("--grid", grid_s, "grid 'NxM'");
    mesh->add_option("--out", out, "output file")->required();

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            std::cout << app.help();
            return 0;
        }
        std::cerr << "error: ParseError: " << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(analyze)) return cmd_analyze(in, out, tol, grid_n);
        if (app.got_subcommand(synth)) return cmd_synthesize(profile, mode, out);
        if (app.got_subcommand(verify)) return cmd_verify(seed, cases, tol_scale);
        if (app.got_subcommand(mesh)) return cmd_export_mesh(in, vrange, grid_s, out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: InvalidArgument: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace slantsurf
