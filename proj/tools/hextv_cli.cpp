// hextv: generate, corrupt, denoise, resample and evaluate square/hex images.
#include <chrono>
#include <cstdio>
#include <iostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "hextv/errors.hpp"
#include "hextv/harness.hpp"
#include "hextv/hexmap.hpp"
#include "hextv/image.hpp"
#include "hextv/solver.hpp"
#include "hextv/synth.hpp"

using namespace hextv;

namespace {

enum Exit { kOk = 0, kUsage = 1, kIo = 2, kNumeric = 3 };

struct GenArgs {
  std::string image = "shepplogan";
  std::string lattice = "square";
  int size = 64;
  int labels = 256;
  double scale = 7.5;
  std::string out;
};

struct NoiseArgs {
  std::string in, out, noise = "sp:0.6";
  std::uint64_t seed = 0;
};

struct DenoiseArgs {
  std::string in, out;
  double lambda = 1.0;
  int alpha = 1;
  int nu = 0;
  bool cold = false;
};

struct ConvertArgs {
  std::string in, out;
  double scale = 7.5;
  int mask = 56;
};

struct RenderArgs {
  std::string in, out;
  int mask = 56;
  int background = 0;
};

struct EvalArgs {
  std::string truth, restored;
  int nu = 0;
  double lambda = 1.0;
  int alpha = 1;
  std::string noisy;
};

struct SweepArgs {
  std::string descriptor, out, svg;
  int threads = 0;
};

int run_gen(const GenArgs& a) {
  ExperimentDescriptor desc;
  desc.image = a.image;
  desc.size = a.size;
  desc.labels = a.labels;
  desc.hex_scale = a.scale;
  if (a.size < 2) throw std::invalid_argument("gen: size must be at least 2");
  write_image(ground_truth(desc, parse_lattice_kind(a.lattice)), a.out);
  return kOk;
}

int run_noise(const NoiseArgs& a) {
  const DiscreteImage u = read_image(a.in);
  write_image(add_noise(u, parse_noise(a.noise, a.seed)), a.out);
  return kOk;
}

int run_denoise(const DenoiseArgs& a) {
  const DiscreteImage f = read_image(a.in);
  SolverConfig cfg;
  cfg.params = {a.lambda, a.alpha};
  cfg.neighbourhood = resolve_neighbourhood(f.grid().kind(), a.nu);
  cfg.reuse = !a.cold;
  const WeightedEdgeSet edges = solver_edges(f.grid_ptr(), cfg.neighbourhood);
  const auto t0 = std::chrono::steady_clock::now();
  const DenoiseReport report = denoise_report(f, cfg, edges);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  write_image(report.result, a.out);
  std::fprintf(stderr, "energy=%.9g levels=%d unique=%s runtime_ms=%.3f\n",
               energy(report.result, f, cfg.params, edges), report.levels_solved,
               report.all_unique() ? "yes" : "no", ms);
  return kOk;
}

int run_convert(const ConvertArgs& a) {
  const DiscreteImage img = read_image(a.in);
  const HyperpixelMask mask = hyperpixel_mask(a.mask);
  if (img.grid().kind() == LatticeKind::Square) {
    write_image(square_to_hex(img, a.scale, mask), a.out);
  } else {
    write_image(hex_to_square(img, a.scale, mask), a.out);
  }
  return kOk;
}

int run_render(const RenderArgs& a) {
  const DiscreteImage img = read_image(a.in);
  if (a.background < 0 || a.background >= img.labels()) {
    throw std::invalid_argument("render: background outside the label range");
  }
  const Raster raster = render_hex(img, hyperpixel_mask(a.mask), static_cast<Label>(a.background));
  write_image(raster_to_image(raster, img.labels()), a.out);
  return kOk;
}

int run_eval(const EvalArgs& a) {
  const DiscreteImage truth = read_image(a.truth);
  const DiscreteImage restored = read_image(a.restored);
  std::printf("l1_per_site=%.9g\ncorrect_ratio=%.9g\n", l1_error(truth, restored), correct_ratio(truth, restored));
  const int nu = resolve_neighbourhood(restored.grid().kind(), a.nu);
  const WeightedEdgeSet edges = solver_edges(restored.grid_ptr(), nu);
  std::printf("tv=%.9g\n", discrete_tv(restored, edges));
  if (!a.noisy.empty()) {
    const DiscreteImage f = read_image(a.noisy);
    std::printf("energy=%.9g\n", energy(restored, f, {a.lambda, a.alpha}, edges));
  }
  return kOk;
}

int run_sweep(const SweepArgs& a) {
  ExperimentDescriptor desc = read_descriptor(a.descriptor);
  if (!a.out.empty()) desc.out = a.out;
  if (!a.svg.empty()) desc.svg = a.svg;
  if (a.threads > 0) desc.threads = a.threads;
  const auto rows = run_experiment(desc);
  if (desc.out.empty() || desc.out == "-") {
    write_csv(rows, std::cout);
  } else {
    write_csv(rows, desc.out);
  }
  if (!desc.svg.empty()) write_svg(rows, desc.svg);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Total variation denoising on square and hexagonal lattices"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Sample a test image");
  g->add_option("--image", gen.image, "shepplogan, cosine or file:<pgm>")->capture_default_str();
  g->add_option("--lattice", gen.lattice, "square or hex")->check(CLI::IsMember({"square", "hex"}))->capture_default_str();
  g->add_option("--size", gen.size, "square side in sites")->capture_default_str();
  g->add_option("--labels", gen.labels, "grey levels")->check(CLI::Range(2, 65536))->capture_default_str();
  g->add_option("--scale", gen.scale, "hyperpixel scale for file images")->capture_default_str();
  g->add_option("-o,--out", gen.out, "output image")->required();

  NoiseArgs noise;
  auto* n = app.add_subcommand("noise", "Corrupt an image");
  n->add_option("-i,--in", noise.in)->required();
  n->add_option("--noise", noise.noise, "sp:<rho> or gauss:<sigma>")->capture_default_str();
  n->add_option("--seed", noise.seed)->capture_default_str();
  n->add_option("-o,--out", noise.out)->required();

  DenoiseArgs den;
  auto* d = app.add_subcommand("denoise", "Exact TV minimisation");
  d->add_option("-i,--in", den.in)->required();
  d->add_option("--lambda", den.lambda)->capture_default_str();
  d->add_option("--alpha", den.alpha)->check(CLI::IsMember({1, 2}))->capture_default_str();
  d->add_option("--nu", den.nu, "neighbourhood size, 0 for the lattice default")->capture_default_str();
  d->add_flag("--cold", den.cold, "solve every level from scratch");
  d->add_option("-o,--out", den.out)->required();

  ConvertArgs conv;
  auto* c = app.add_subcommand("convert", "Resample square <-> hex through hyperpixels");
  c->add_option("-i,--in", conv.in)->required();
  c->add_option("--scale", conv.scale)->capture_default_str();
  c->add_option("--mask", conv.mask, "hyperpixel size")->capture_default_str();
  c->add_option("-o,--out", conv.out)->required();

  RenderArgs ren;
  auto* r = app.add_subcommand("render", "Draw a hex image as a PGM raster");
  r->add_option("-i,--in", ren.in)->required();
  r->add_option("--mask", ren.mask)->capture_default_str();
  r->add_option("--background", ren.background)->capture_default_str();
  r->add_option("-o,--out", ren.out)->required();

  EvalArgs ev;
  auto* e = app.add_subcommand("eval", "Compare a restored image with the truth");
  e->add_option("--truth", ev.truth)->required();
  e->add_option("--restored", ev.restored)->required();
  e->add_option("--nu", ev.nu)->capture_default_str();
  e->add_option("--noisy", ev.noisy, "noisy input, adds the energy line");
  e->add_option("--lambda", ev.lambda)->capture_default_str();
  e->add_option("--alpha", ev.alpha)->check(CLI::IsMember({1, 2}))->capture_default_str();

  SweepArgs sw;
  auto* s = app.add_subcommand("sweep", "Run an experiment descriptor");
  s->add_option("descriptor", sw.descriptor)->required();
  s->add_option("-o,--out", sw.out, "CSV path, '-' for stdout");
  s->add_option("--svg", sw.svg);
  s->add_option("--threads", sw.threads)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*g) return run_gen(gen);
    if (*n) return run_noise(noise);
    if (*d) return run_denoise(den);
    if (*c) return run_convert(conv);
    if (*r) return run_render(ren);
    if (*e) return run_eval(ev);
    if (*s) return run_sweep(sw);
  } catch (const IoError& err) {
    std::fprintf(stderr, "hextv: %s\n", err.what());
    return kIo;
  } catch (const NumericalError& err) {
    std::fprintf(stderr, "hextv: %s\n", err.what());
    return kNumeric;
  } catch (const std::invalid_argument& err) {
    std::fprintf(stderr, "hextv: %s\n", err.what());
    return kUsage;
  } catch (const std::out_of_range& err) {
    std::fprintf(stderr, "hextv: %s\n", err.what());
    return kUsage;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "hextv: %s\n", err.what());
    return kNumeric;
  }
  return kUsage;
}
