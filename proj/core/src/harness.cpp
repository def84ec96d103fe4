#include "hextv/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hextv/errors.hpp"
#include "hextv/hexmap.hpp"

namespace hextv {

double l1_error(const DiscreteImage& truth, const DiscreteImage& restored) {
  require_same_grid(truth.grid(), restored.grid(), "l1_error");
  long long total = 0;
  for (std::size_t p = 0; p < truth.size(); ++p) total += std::abs(truth[p] - restored[p]);
  return static_cast<double>(total) / static_cast<double>(truth.size());
}

double correct_ratio(const DiscreteImage& truth, const DiscreteImage& restored) {
  require_same_grid(truth.grid(), restored.grid(), "correct_ratio");
  std::size_t hits = 0;
  for (std::size_t p = 0; p < truth.size(); ++p) hits += truth[p] == restored[p] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

DiscreteImage ground_truth(const ExperimentDescriptor& desc, LatticeKind lattice) {
  if (desc.image.rfind("file:", 0) == 0) {
    DiscreteImage img = read_image(desc.image.substr(5));
    if (img.grid().kind() != LatticeKind::Square) {
      throw std::invalid_argument("experiment images must be square-lattice PGM files");
    }
    if (lattice == LatticeKind::Square) return img;
    return square_to_hex(img, desc.hex_scale, hyperpixel_mask(56));
  }
  const double extent = desc.size - 1;
  const double d = lattice == LatticeKind::Square ? 1.0 : match_density(1.0, LatticeKind::Square, lattice);
  const GridPtr grid = build_grid({lattice, d, extent, extent});
  if (desc.image == "cosine") return radial_cosine(grid, desc.labels);
  if (desc.image == "shepplogan") return shepp_logan(grid, desc.labels);
  throw std::invalid_argument("unknown experiment image '" + desc.image + "'");
}

std::vector<SweepRow> run_experiment(const ExperimentDescriptor& desc) {
  struct Prepared {
    LatticeConfig config;
    DiscreteImage truth;
    WeightedEdgeSet edges;
  };
  std::vector<Prepared> prepared;
  for (const LatticeConfig& c : desc.configs) {
    DiscreteImage truth = ground_truth(desc, c.lattice);
    WeightedEdgeSet edges = solver_edges(truth.grid_ptr(), c.nu);
    prepared.push_back({c, std::move(truth), std::move(edges)});
  }

  const std::size_t per_config = desc.lambdas.size() * static_cast<std::size_t>(desc.seeds);
  const std::size_t jobs = prepared.size() * per_config;
  std::vector<SweepRow> rows(jobs);

  auto run_job = [&](std::size_t job) {
    const Prepared& prep = prepared[job / per_config];
    const std::size_t rest = job % per_config;
    const double lambda = desc.lambdas[rest / desc.seeds];
    const std::uint64_t seed = desc.seed_base + rest % desc.seeds;

    NoiseSpec noise = desc.noise;
    noise.seed = seed;
    const auto start = std::chrono::steady_clock::now();
    const DiscreteImage noisy = add_noise(prep.truth, noise);
    SolverConfig cfg;
    cfg.params = {lambda, desc.alpha};
    cfg.neighbourhood = prep.config.nu;
    const DiscreteImage restored = denoise(noisy, cfg, prep.edges);
    const auto stop = std::chrono::steady_clock::now();

    SweepRow& row = rows[job];
    row.lattice = prep.config.lattice;
    row.nu = prep.config.nu;
    row.lambda = lambda;
    row.seed = seed;
    row.l1_per_site = l1_error(prep.truth, restored);
    row.correct_ratio = correct_ratio(prep.truth, restored);
    row.energy = energy(restored, noisy, cfg.params, prep.edges);
    row.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  };

  const int workers = std::max(1, std::min<int>(desc.threads, static_cast<int>(jobs)));
  if (workers == 1) {
    for (std::size_t j = 0; j < jobs; ++j) run_job(j);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t j = next++; j < jobs; j = next++) {
        try {
          run_job(j);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = jobs;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

void write_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "lattice,nu,lambda,seed,l1_per_site,correct_ratio,energy,runtime_ms\n";
  out << std::setprecision(9);
  for (const SweepRow& r : rows) {
    out << to_string(r.lattice) << ',' << r.nu << ',' << r.lambda << ',' << r.seed << ','
        << r.l1_per_site << ',' << r.correct_ratio << ',' << r.energy << ',' << r.runtime_ms
        << '\n';
  }
  if (!out) throw IoError("failed to write CSV");
}

void write_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path);
  write_csv(rows, out);
}

namespace {

struct Band {
  double lambda;
  double mean;
  double sd;
};

std::map<std::string, std::vector<Band>> bands_by_config(const std::vector<SweepRow>& rows) {
  std::map<std::string, std::map<double, std::vector<double>>> grouped;
  for (const SweepRow& r : rows) {
    grouped[to_string(r.lattice) + " N" + std::to_string(r.nu)][r.lambda].push_back(r.l1_per_site);
  }
  std::map<std::string, std::vector<Band>> out;
  for (const auto& [name, per_lambda] : grouped) {
    for (const auto& [lambda, values] : per_lambda) {
      double mean = 0.0;
      for (double v : values) mean += v;
      mean /= static_cast<double>(values.size());
      double var = 0.0;
      for (double v : values) var += (v - mean) * (v - mean);
      const double sd = values.size() > 1 ? std::sqrt(var / static_cast<double>(values.size() - 1)) : 0.0;
      out[name].push_back({lambda, mean, sd});
    }
  }
  return out;
}

}  // namespace

void write_svg(const std::vector<SweepRow>& rows, std::ostream& out) {
  const auto series = bands_by_config(rows);
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& [name, bands] : series) {
    for (const Band& b : bands) {
      xmin = std::min(xmin, b.lambda);
      xmax = std::max(xmax, b.lambda);
      ymin = std::min(ymin, b.mean - b.sd);
      ymax = std::max(ymax, b.mean + b.sd);
    }
  }
  if (series.empty()) xmin = ymin = 0.0, xmax = ymax = 1.0;
  if (xmax <= xmin) xmax = xmin + 1.0;
  if (ymax <= ymin) ymax = ymin + 1.0;

  const double w = 640, h = 400, left = 60, right = 160, top = 20, bottom = 40;
  auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (w - left - right); };
  auto sy = [&](double y) { return h - bottom - (y - ymin) / (ymax - ymin) * (h - top - bottom); };
  static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

  out << std::setprecision(6);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << h - bottom << "\" x2=\"" << w - right << "\" y2=\""
      << h - bottom << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << h - bottom
      << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << left << "\" y=\"" << h - 8 << "\" font-size=\"12\">lambda " << xmin << " .. "
      << xmax << "</text>\n";
  out << "<text x=\"4\" y=\"" << top + 10 << "\" font-size=\"12\">L1/site " << ymin << " .. " << ymax
      << "</text>\n";

  std::size_t k = 0;
  for (const auto& [name, bands] : series) {
    const char* colour = colours[k % 5];
    out << "<polygon fill=\"" << colour << "\" fill-opacity=\"0.15\" stroke=\"none\" points=\"";
    for (const Band& b : bands) out << sx(b.lambda) << ',' << sy(b.mean + b.sd) << ' ';
    for (auto it = bands.rbegin(); it != bands.rend(); ++it) {
      out << sx(it->lambda) << ',' << sy(it->mean - it->sd) << ' ';
    }
    out << "\"/>\n<polyline fill=\"none\" stroke=\"" << colour << "\" points=\"";
    for (const Band& b : bands) out << sx(b.lambda) << ',' << sy(b.mean) << ' ';
    out << "\"/>\n";
    out << "<text x=\"" << w - right + 10 << "\" y=\"" << top + 16 * (k + 1) << "\" font-size=\"12\" fill=\""
        << colour << "\">" << name << "</text>\n";
    ++k;
  }
  out << "</svg>\n";
  if (!out) throw IoError("failed to write SVG");
}

void write_svg(const std::vector<SweepRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path);
  write_svg(rows, out);
}

std::vector<PathPoint> lambda_path(const DiscreteImage& f, const SolverConfig& cfg,
                                   const std::vector<double>& lambdas) {
  const WeightedEdgeSet edges = solver_edges(f.grid_ptr(), cfg.neighbourhood);
  std::vector<PathPoint> path;
  path.reserve(lambdas.size());
  for (double lambda : lambdas) {
    SolverConfig c = cfg;
    c.params.lambda = lambda;
    const DiscreteImage u = denoise(f, c, edges);
    path.push_back({lambda, discrete_tv(u, edges), fidelity(u, f, c.params.alpha)});
  }
  return path;
}

std::vector<std::pair<double, double>> detect_jump(const std::vector<PathPoint>& path, double threshold) {
  if (path.size() < 2) throw std::invalid_argument("detect_jump: need at least two lambda values");
  std::vector<std::pair<double, double>> jumps;
  for (std::size_t k = 1; k < path.size(); ++k) {
    if (path[k].lambda <= path[k - 1].lambda) {
      throw std::invalid_argument("detect_jump: lambda grid must be strictly increasing");
    }
    const double before = path[k - 1].tv;
    const double change = std::abs(path[k].tv - before);
    const bool jump = before > 0.0 ? change > threshold * before : path[k].tv > 0.0;
    if (jump) jumps.emplace_back(path[k - 1].lambda, path[k].lambda);
  }
  return jumps;
}

}  // namespace hextv
