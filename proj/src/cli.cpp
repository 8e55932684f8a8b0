#include "cachemodel/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cachemodel/format.hpp"
#include "cachemodel/oracle.hpp"
#include "cachemodel/pipeline.hpp"
#include "cachemodel/profile_io.hpp"
#include "cachemodel/sweep.hpp"
#include "cachemodel/trace.hpp"

namespace cachemodel {

namespace {

struct GeometryArgs {
    std::string l1_size = "32k";
    std::uint32_t l1_assoc = 8;
    std::string l2_size = "1M";
    std::uint32_t l2_assoc = 16;
    std::uint32_t line = 64;

    CacheGeometry l1() const { return CacheGeometry::make(parse_size(l1_size), l1_assoc, line); }
    CacheGeometry l2() const { return CacheGeometry::make(parse_size(l2_size), l2_assoc, line); }
};

void add_l1_flags(CLI::App* cmd, GeometryArgs& g) {
    cmd->add_option("--l1-size", g.l1_size, "L1 size in bytes (suffix k/M allowed)");
    cmd->add_option("--l1-assoc", g.l1_assoc, "L1 associativity");
    cmd->add_option("--line", g.line, "cache line size in bytes");
}

void add_l2_flags(CLI::App* cmd, GeometryArgs& g) {
    cmd->add_option("--l2-size", g.l2_size, "L2 size in bytes (suffix k/M allowed)");
    cmd->add_option("--l2-assoc", g.l2_assoc, "L2 associativity");
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw IoError("cannot open " + path + " for writing");
    return file;
}

void write_sim_stats(const SimStats& stats, std::ostream& out) {
    out << "core,l1_accesses,l1_hits,l1_misses,coherence_misses,cold_misses\n";
    for (std::size_t c = 0; c < stats.cores.size(); ++c) {
        const auto& s = stats.cores[c];
        out << c << ',' << s.l1_accesses << ',' << s.l1_hits << ',' << s.l1_misses << ','
            << s.coherence_misses << ',' << s.cold_misses << '\n';
    }
    out << "l2,accesses,hits,misses,miss_rate\n";
    out << "l2," << stats.l2.accesses << ',' << stats.l2.hits << ',' << stats.l2.misses << ','
        << fmt6(stats.l2.miss_rate()) << '\n';
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(tok);
    return out;
}

int cmd_generate(const SyntheticSpec& spec, const std::string& out_path) {
    write_trace(generate(spec), std::filesystem::path(out_path));
    std::cout << "wrote " << out_path << '\n';
    return 0;
}

int cmd_profile(const std::string& trace_path, const GeometryArgs& geom, std::size_t cap,
                int threads, const std::string& out_prefix) {
    const Trace trace = read_trace(std::filesystem::path(trace_path));
    const auto profiles = profile_trace(trace, geom.l1(), cap, threads);
    for (const auto& p : profiles) {
        const std::string path = out_prefix + ".core" + std::to_string(p.core) + ".profile";
        write_profile(p, std::filesystem::path(path));
        std::cout << "wrote " << path << '\n';
    }
    return 0;
}

int cmd_model(const std::vector<std::string>& profile_paths, const GeometryArgs& geom,
              std::size_t merged_cap, const std::string& out_path) {
    std::vector<CoreProfile> profiles;
    profiles.reserve(profile_paths.size());
    for (const auto& path : profile_paths)
        profiles.push_back(read_profile(std::filesystem::path(path)));
    ModelOptions opt{geom.l2(), merged_cap};
    const ModelReport rep = run_model(profiles, opt);
    std::ofstream file;
    write_model_report(rep, open_out(file, out_path));
    return 0;
}

int cmd_simulate(const std::string& trace_path, const GeometryArgs& geom, bool capture,
                 std::size_t merged_cap, const std::string& out_prefix) {
    const Trace trace = read_trace(std::filesystem::path(trace_path));
    SimConfig cfg{geom.l1(), geom.l2(), true, capture};
    const SimStats stats = simulate(trace, cfg);
    if (out_prefix.empty()) {
        write_sim_stats(stats, std::cout);
        if (capture) write_histogram(profile_merged_l2(stats, merged_cap), std::cout);
    } else {
        const std::string stats_path = out_prefix + ".stats.csv";
        std::ofstream out(stats_path);
        if (!out) throw IoError("cannot open " + stats_path + " for writing");
        write_sim_stats(stats, out);
        std::cout << "wrote " << stats_path << '\n';
        if (capture) {
            const std::string hist_path = out_prefix + ".l2mrdh";
            write_histogram(profile_merged_l2(stats, merged_cap),
                            std::filesystem::path(hist_path));
            std::cout << "wrote " << hist_path << '\n';
        }
    }
    return 0;
}

int cmd_compare(const std::string& trace_path, const GeometryArgs& geom, std::size_t cap,
                std::size_t merged_cap, int threads, const std::string& out_path) {
    const Trace trace = read_trace(std::filesystem::path(trace_path));
    const CacheGeometry l1 = geom.l1();
    const CacheGeometry l2 = geom.l2();
    if (!merged_cap) merged_cap = 8 * cap;

    const auto profiles = profile_trace(trace, l1, cap, threads);
    const ModelReport rep = run_model(profiles, ModelOptions{l2, merged_cap});

    SimConfig cfg{l1, l2, true, true};
    const SimStats sim = simulate(trace, cfg);
    const Histogram1D truth_mrdh = profile_merged_l2(sim, merged_cap);
    const MissRateReport truth = miss_rate(truth_mrdh, l2);

    std::ofstream file;
    std::ostream& out = open_out(file, out_path);
    out << "comparison " << rep.label << '\n';
    out << "metric,model,oracle,abs_error\n";
    auto row = [&](const std::string& name, double model, double oracle) {
        out << name << ',' << fmt6(model) << ',' << fmt6(oracle) << ','
            << fmt6(std::abs(model - oracle)) << '\n';
    };
    row("l2_miss_rate_vs_sim", rep.full.miss_rate, sim.l2.miss_rate());
    row("l2_miss_rate_vs_capture", rep.full.miss_rate, truth.miss_rate);
    row("l2_miss_rate_insertion_only_vs_capture", rep.insertion_only.miss_rate,
        truth.miss_rate);
    out << "core,refined_misses,oracle_misses,normalized,baseline_misses,coherence_misses,"
           "oracle_coherence_misses\n";
    for (std::size_t c = 0; c < sim.cores.size(); ++c) {
        const double oracle_misses = static_cast<double>(sim.cores[c].l1_misses);
        double refined = oracle_misses, baseline = oracle_misses, coh = 0.0;
        if (c < rep.coherence.size()) {
            refined = rep.coherence[c].refined_l1_misses;
            baseline = rep.coherence[c].baseline_misses;
            coh = rep.coherence[c].miss_coherence;
        }
        const double normalized = oracle_misses > 0.0 ? refined / oracle_misses : 0.0;
        out << c << ',' << fmt6(refined) << ',' << fmt6(oracle_misses) << ','
            << fmt6(normalized) << ',' << fmt6(baseline) << ',' << fmt6(coh) << ','
            << sim.cores[c].coherence_misses << '\n';
    }
    return 0;
}

int cmd_sweep(const std::string& trace_path, const std::string& l1_sizes,
              const std::string& l1_assocs, const std::string& l2_sizes,
              const std::string& l2_assocs, const std::string& grid_file, std::uint32_t line,
              std::size_t cap, std::size_t merged_cap, int threads,
              const std::string& out_path) {
    const Trace trace = read_trace(std::filesystem::path(trace_path));
    SweepSpec spec;
    spec.cap = cap;
    spec.merged_cap = merged_cap;
    if (!grid_file.empty()) {
        std::ifstream in(grid_file);
        if (!in) throw IoError("cannot open grid file " + grid_file);
        std::string lineStr;
        std::size_t lineno = 0;
        while (std::getline(in, lineStr)) {
            ++lineno;
            if (lineStr.empty() || lineStr[0] == '#') continue;
            std::istringstream ss(lineStr);
            std::string s1, a1, s2, a2;
            if (!(ss >> s1 >> a1 >> s2 >> a2))
                throw ParseError(lineno, "expected '<l1-size> <l1-assoc> <l2-size> <l2-assoc>'");
            spec.grid.push_back(
                {CacheGeometry{parse_size(s1), static_cast<std::uint32_t>(std::stoul(a1)), line},
                 CacheGeometry{parse_size(s2), static_cast<std::uint32_t>(std::stoul(a2)),
                               line}});
        }
    } else {
        std::vector<std::uint64_t> s1, s2;
        std::vector<std::uint32_t> a1, a2;
        for (const auto& t : split_csv(l1_sizes)) s1.push_back(parse_size(t));
        for (const auto& t : split_csv(l2_sizes)) s2.push_back(parse_size(t));
        for (const auto& t : split_csv(l1_assocs)) a1.push_back(std::stoul(t));
        for (const auto& t : split_csv(l2_assocs)) a2.push_back(std::stoul(t));
        spec.grid = cross_grid(s1, a1, s2, a2, line);
    }
    const auto rows = run_sweep(trace, spec, threads);
    std::ofstream file;
    write_sweep_csv(rows, open_out(file, out_path));
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"trace-driven multi-core cache miss-rate modeling toolkit"};
    app.require_subcommand(1);

    // generate
    SyntheticSpec spec;
    std::string gen_out;
    std::string interleave = "roundrobin", pattern = "random";
    auto* gen = app.add_subcommand("generate", "generate a synthetic multi-core trace");
    gen->add_option("--cores", spec.core_count, "number of cores");
    gen->add_option("--records", spec.records_per_core, "records per core");
    gen->add_option("--private-lines", spec.private_footprint, "private lines per core");
    gen->add_option("--shared-lines", spec.shared_footprint, "lines shared by all cores");
    gen->add_option("--sharing", spec.sharing_fraction, "probability an access is shared");
    gen->add_option("--writes", spec.write_fraction, "probability an access is a write");
    gen->add_option("--interleave", interleave, "roundrobin|random");
    gen->add_option("--pattern", pattern, "random|loop");
    gen->add_option("--seed", spec.seed, "random seed");
    gen->add_option("--line", spec.line_size, "line size used for the address layout");
    gen->add_option("--out", gen_out, "output trace file")->required();

    // profile
    GeometryArgs prof_geom;
    std::string prof_trace, prof_out;
    std::size_t prof_cap = Histogram1D::kDefaultCap;
    int prof_threads = 0;
    auto* prof = app.add_subcommand("profile", "profile a trace into per-core metric files");
    prof->add_option("--trace", prof_trace, "input trace")->required();
    add_l1_flags(prof, prof_geom);
    prof->add_option("--cap", prof_cap, "distance cap");
    prof->add_option("--threads", prof_threads, "worker threads (0 = auto)");
    prof->add_option("--out", prof_out, "output file prefix")->required();

    // model
    GeometryArgs model_geom;
    std::vector<std::string> model_profiles;
    std::size_t model_merged_cap = 0;
    std::string model_out;
    auto* model = app.add_subcommand("model", "run the analytical model over profiles");
    model->add_option("profiles", model_profiles, "per-core profile files")->required();
    add_l2_flags(model, model_geom);
    model->add_option("--line", model_geom.line, "cache line size in bytes");
    model->add_option("--merged-cap", model_merged_cap, "merged histogram cap (0 = 8x cap)");
    model->add_option("--out", model_out, "report file (default stdout)");

    // simulate
    GeometryArgs sim_geom;
    std::string sim_trace, sim_out;
    bool sim_capture = false;
    std::size_t sim_merged_cap = 8 * Histogram1D::kDefaultCap;
    auto* sim = app.add_subcommand("simulate", "run the exact cache simulator");
    sim->add_option("--trace", sim_trace, "input trace")->required();
    add_l1_flags(sim, sim_geom);
    add_l2_flags(sim, sim_geom);
    sim->add_flag("--capture-l2", sim_capture, "capture the merged L2 stream and its histogram");
    sim->add_option("--merged-cap", sim_merged_cap, "captured histogram cap");
    sim->add_option("--out", sim_out, "output file prefix (default stdout)");

    // compare
    GeometryArgs cmp_geom;
    std::string cmp_trace, cmp_out;
    std::size_t cmp_cap = Histogram1D::kDefaultCap, cmp_merged_cap = 0;
    int cmp_threads = 0;
    auto* cmp = app.add_subcommand("compare", "model vs simulator on one trace");
    cmp->add_option("--trace", cmp_trace, "input trace")->required();
    add_l1_flags(cmp, cmp_geom);
    add_l2_flags(cmp, cmp_geom);
    cmp->add_option("--cap", cmp_cap, "distance cap");
    cmp->add_option("--merged-cap", cmp_merged_cap, "merged histogram cap (0 = 8x cap)");
    cmp->add_option("--threads", cmp_threads, "worker threads (0 = auto)");
    cmp->add_option("--out", cmp_out, "output file (default stdout)");

    // sweep
    std::string sweep_trace, sweep_out, sweep_grid_file;
    std::string sweep_l1_sizes, sweep_l1_assocs = "8", sweep_l2_sizes, sweep_l2_assocs = "16";
    std::uint32_t sweep_line = 64;
    std::size_t sweep_cap = Histogram1D::kDefaultCap, sweep_merged_cap = 0;
    int sweep_threads = 0;
    auto* sweep = app.add_subcommand("sweep", "model a grid of cache configurations");
    sweep->add_option("--trace", sweep_trace, "input trace")->required();
    sweep->add_option("--l1-sizes", sweep_l1_sizes, "comma-separated L1 sizes");
    sweep->add_option("--l1-assocs", sweep_l1_assocs, "comma-separated L1 associativities");
    sweep->add_option("--l2-sizes", sweep_l2_sizes, "comma-separated L2 sizes");
    sweep->add_option("--l2-assocs", sweep_l2_assocs, "comma-separated L2 associativities");
    sweep->add_option("--grid-file", sweep_grid_file,
                      "explicit grid: one '<l1> <a1> <l2> <a2>' per line");
    sweep->add_option("--line", sweep_line, "cache line size");
    sweep->add_option("--cap", sweep_cap, "distance cap");
    sweep->add_option("--merged-cap", sweep_merged_cap, "merged histogram cap (0 = 8x cap)");
    sweep->add_option("--threads", sweep_threads, "worker threads (0 = auto)");
    sweep->add_option("--out", sweep_out, "output CSV (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (gen->parsed()) {
            if (interleave == "roundrobin")
                spec.interleave = Interleave::RoundRobin;
            else if (interleave == "random")
                spec.interleave = Interleave::UniformRandom;
            else
                throw InvalidSpec("unknown interleave '" + interleave + "'");
            if (pattern == "random")
                spec.access_pattern = AccessPattern::UniformRandom;
            else if (pattern == "loop")
                spec.access_pattern = AccessPattern::SequentialLoop;
            else
                throw InvalidSpec("unknown pattern '" + pattern + "'");
            return cmd_generate(spec, gen_out);
        }
        if (prof->parsed()) return cmd_profile(prof_trace, prof_geom, prof_cap, prof_threads, prof_out);
        if (model->parsed()) return cmd_model(model_profiles, model_geom, model_merged_cap, model_out);
        if (sim->parsed()) return cmd_simulate(sim_trace, sim_geom, sim_capture, sim_merged_cap, sim_out);
        if (cmp->parsed())
            return cmd_compare(cmp_trace, cmp_geom, cmp_cap, cmp_merged_cap, cmp_threads, cmp_out);
        if (sweep->parsed())
            return cmd_sweep(sweep_trace, sweep_l1_sizes, sweep_l1_assocs, sweep_l2_sizes,
                             sweep_l2_assocs, sweep_grid_file, sweep_line, sweep_cap,
                             sweep_merged_cap, sweep_threads, sweep_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

int run_cli(const std::vector<std::string>& args) {
    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.push_back("cachemodel");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(argv_storage.size());
    for (const auto& s : argv_storage) argv.push_back(s.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace cachemodel
