// Command-line front end: mesh generation and validation, location and
// storage benchmarks, semi-Lagrangian runs, and CSV report merging.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sltrack/bench.hpp"
#include "sltrack/mesh_gen.hpp"
#include "sltrack/mesh_io.hpp"
#include "sltrack/sl.hpp"

namespace fs = std::filesystem;
using namespace sltrack;

namespace {

struct MeshFlags {
  std::string path;
  int m = 0;
  int n_points = 0;
  std::uint64_t seed = 1;

  void add(CLI::App* app) {
    app->add_option("--mesh", path, "Triangle .node/.ele prefix");
    app->add_option("--m", m, "Courant mesh with M cells per side");
    app->add_option("--n-points", n_points, "Random Delaunay mesh with this many samples");
    app->add_option("--seed", seed, "Seed for mesh sampling, start triangles and workloads");
  }

  MeshSource source() const {
    const int given = !path.empty() + (m > 0) + (n_points > 0);
    if (given != 1) throw ConfigError("give exactly one of --mesh, --m, --n-points");
    MeshSource s;
    s.seed = seed;
    if (!path.empty()) {
      s.kind = MeshSource::Kind::kFile;
      s.path = path;
    } else if (m > 0) {
      s.kind = MeshSource::Kind::kCourant;
      s.m = m;
    } else {
      s.kind = MeshSource::Kind::kRandom;
      s.n_points = n_points;
    }
    return s;
  }
};

fs::path default_output(const std::string& name) {
  if (const char* dir = std::getenv("SLTRACK_OUTPUT_DIR"); dir && *dir) return fs::path(dir) / name;
  return {};
}

void emit(const std::string& text, const std::string& csv, const std::string& fallback_name) {
  fs::path path = csv.empty() ? default_output(fallback_name) : fs::path(csv);
  if (path.empty()) {
    std::cout << text;
    return;
  }
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  std::cerr << "wrote " << path.string() << '\n';
}

std::vector<LocatorKind> parse_locators(const std::vector<std::string>& names) {
  std::vector<LocatorKind> kinds;
  for (const auto& name : names) {
    std::stringstream ss(name);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) kinds.push_back(parse_locator(item));
  }
  return kinds;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Point location and semi-Lagrangian advection on 2-D triangular meshes"};
  app.require_subcommand(1);

  // gen-mesh
  auto* gen = app.add_subcommand("gen-mesh", "Write a generated mesh as .node/.ele files");
  MeshFlags gen_mesh;
  std::string gen_out;
  gen->add_option("--m", gen_mesh.m, "Courant mesh with M cells per side");
  gen->add_option("--n-points", gen_mesh.n_points, "Random Delaunay mesh with this many samples");
  gen->add_option("--seed", gen_mesh.seed, "Sampling seed");
  gen->add_option("--csv,--out", gen_out, "Output prefix (writes <prefix>.node and <prefix>.ele)");

  // validate
  auto* val = app.add_subcommand("validate", "Check a .node/.ele mesh");
  std::string val_mesh;
  val->add_option("--mesh,mesh", val_mesh, "Mesh prefix")->required();

  // shared benchmark flags
  BenchConfig cfg;
  MeshFlags bench_mesh;
  std::vector<std::string> locator_names{"walk-b"};
  std::string workload_name;
  std::string time_level = "current";
  std::string csv;
  auto add_bench_flags = [&](CLI::App* sub) {
    bench_mesh.add(sub);
    sub->add_option("--locator", locator_names,
                    "quadtree, walk-a, walk-b, walk-c, structured (repeatable or comma-separated)");
    sub->add_option("--q", cfg.q, "Quadtree leaf capacity");
    sub->add_option("--c0", cfg.c0, "Spatial frequency of the rotating field");
    sub->add_option("--c1", cfg.c1, "Temporal frequency of the rotating field");
    sub->add_option("--courant", cfg.courant, "Courant number alpha (dt = alpha * dx)");
    sub->add_option("--t-final", cfg.t_final, "Final time");
    sub->add_option("--reps", cfg.reps, "Repetitions (timings are averaged)");
    sub->add_option("--threads", cfg.threads, "Worker threads for walk strategies A and B");
    sub->add_option("--time-level", time_level, "Velocity sample time for the feet: current or next")
        ->check(CLI::IsMember({"current", "next"}));
    sub->add_option("--csv", csv, "Output CSV path (default: stdout or $SLTRACK_OUTPUT_DIR)");
  };

  auto* bl = app.add_subcommand("bench-locate", "Point-location benchmark");
  add_bench_flags(bl);
  bl->add_option("--workload", workload_name, "characteristic-feet, random-points, fixed-distance");
  bl->add_option("--distance", cfg.distance, "Distance for the fixed-distance workload");

  auto* bs = app.add_subcommand("bench-storage", "Storage of quadtree vs walk over a mesh sweep");
  std::vector<int> sizes{1000, 4000, 16000, 64000};
  std::uint64_t storage_seed = 1;
  int storage_q = 7;
  std::string storage_csv;
  bs->add_option("--sizes", sizes, "Total node counts of the sweep meshes")->delimiter(',');
  bs->add_option("--seed", storage_seed, "Sampling seed");
  bs->add_option("--q", storage_q, "Quadtree leaf capacity");
  bs->add_option("--csv", storage_csv, "Output CSV path");

  auto* sl = app.add_subcommand("sl-run", "Semi-Lagrangian advection with a chosen locator");
  add_bench_flags(sl);
  int snapshot_every = 0;
  std::string snapshot_dir = "snapshots";
  sl->add_option("--snapshot-every", snapshot_every, "Write a node-value CSV every k steps");
  sl->add_option("--snapshot-dir", snapshot_dir, "Directory for snapshot CSVs");

  auto* rep = app.add_subcommand("report", "Merge CSV reports that share a header");
  std::vector<std::string> inputs;
  std::string report_csv;
  rep->add_option("inputs", inputs, "CSV files")->required();
  rep->add_option("--csv", report_csv, "Output CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const auto source = gen_mesh.source();
      if (source.kind == MeshSource::Kind::kFile) throw ConfigError("gen-mesh needs --m or --n-points");
      fs::path prefix = gen_out.empty() ? default_output("mesh") : fs::path(gen_out);
      if (prefix.empty()) throw ConfigError("gen-mesh needs --csv <prefix> or SLTRACK_OUTPUT_DIR");
      if (prefix.has_parent_path()) fs::create_directories(prefix.parent_path());
      const auto mesh = make_mesh(source);
      save_triangle_files(mesh, prefix);
      std::cerr << "wrote " << prefix.string() << ".{node,ele}: N=" << mesh.num_vertices()
                << " N_t=" << mesh.num_triangles() << '\n';
      return 0;
    }
    if (*val) {
      const auto mesh = load_triangle_files(val_mesh);
      const auto report = validate(mesh);
      std::cout << "N=" << mesh.num_vertices() << " N_t=" << mesh.num_triangles()
                << " dx=" << mesh.space_scale << '\n';
      if (report.ok()) {
        std::cout << "ok\n";
        return 0;
      }
      std::cout << report.to_string();
      return 1;
    }
    if (*bl || *sl) {
      cfg.mesh = bench_mesh.source();
      cfg.seed = bench_mesh.seed;
      cfg.locators = parse_locators(locator_names);
      cfg.time_level = time_level == "next" ? TimeLevel::kNext : TimeLevel::kCurrent;
      if (*bl) {
        if (!workload_name.empty())
          cfg.workload = parse_workload(workload_name);
        else if (bl->count("--distance"))
          cfg.workload = Workload::kFixedDistance;
        emit(bench_locate(cfg).to_csv(), csv, "bench-locate.csv");
        return 0;
      }
      if (cfg.c0 * cfg.courant >= 1.0 / make_mesh(cfg.mesh).space_scale)
        std::cerr << "warning: L_x * dt >= 1; characteristics of neighbouring nodes may cross\n";
      emit(bench_sl_profile(cfg).to_csv(), csv, "sl-run.csv");
      if (snapshot_every > 0) {
        const auto mesh = make_mesh(cfg.mesh);
        std::optional<StructuredGrid> grid;
        if (cfg.mesh.kind == MeshSource::Kind::kCourant) grid.emplace(cfg.mesh.m);
        SLOptions options;
        options.snapshot_every = snapshot_every;
        options.time_level = cfg.time_level;
        options.warnings = nullptr;
        fs::create_directories(snapshot_dir);
        for (auto kind : cfg.locators) {
          auto locator = make_locator(kind, mesh, cfg, grid ? &*grid : nullptr);
          const auto run = sl_advect(mesh, *locator, VectorField::rotating(cfg.c0, cfg.c1),
                                     sample_nodes(mesh, gaussian()), cfg.courant * mesh.space_scale,
                                     cfg.t_final, options);
          for (const auto& snap : run.snapshots) {
            const auto path = fs::path(snapshot_dir) /
                              (to_string(kind) + "_step" + std::to_string(snap.time_index) + ".csv");
            std::ofstream(path) << snapshot_csv(mesh, snap);
          }
          std::cerr << "wrote " << run.snapshots.size() << " snapshots for " << to_string(kind)
                    << " to " << snapshot_dir << '\n';
        }
      }
      return 0;
    }
    if (*bs) {
      emit(bench_storage(sizes, storage_seed, storage_q).to_csv(), storage_csv, "bench-storage.csv");
      return 0;
    }
    if (*rep) {
      std::vector<std::string> texts;
      for (const auto& p : inputs) texts.push_back(read_text(p));
      emit(merge_csv(texts), report_csv, "report.csv");
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
