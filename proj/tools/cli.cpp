#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "gauss2d/bench.hpp"
#include "gauss2d/blur.hpp"
#include "gauss2d/coord_rom.hpp"
#include "gauss2d/datapath.hpp"
#include "gauss2d/errors.hpp"
#include "gauss2d/file_util.hpp"
#include "gauss2d/generator.hpp"
#include "gauss2d/image.hpp"
#include "gauss2d/vectors.hpp"

namespace gauss2d::cli {
namespace {

namespace fs = std::filesystem;

struct GeometryFlags {
  std::vector<unsigned> sigmas;
  std::uint32_t rows = 256;
  std::uint32_t cols = 256;
  unsigned latency = 5;
};

void add_geometry(CLI::App* cmd, GeometryFlags& g, bool multi_sigma) {
  if (multi_sigma) {
    cmd->add_option("--sigma", g.sigmas, "Gaussian scale(s); default 16 64 128");
  }
  cmd->add_option("--rows", g.rows, "Kernel rows")->check(CLI::Range(1u, 65536u));
  cmd->add_option("--cols", g.cols, "Kernel columns")->check(CLI::Range(1u, 65536u));
  cmd->add_option("--latency", g.latency, "Multiplier pipeline latency")->check(CLI::Range(5u, 8u));
}

KernelSpec spec_from(const GeometryFlags& g) {
  KernelSpec spec;
  spec.rows = g.rows;
  spec.cols = g.cols;
  if (g.sigmas.empty()) {
    const auto ps = design_scales();
    spec.scales.assign(ps.begin(), ps.end());
  } else {
    for (const unsigned s : g.sigmas) spec.scales.push_back(ScaleShift::from_sigma(s));
  }
  spec.validate();
  return spec;
}

// "k.pgm" -> "k_s64.pgm" when several scales share one output flag.
fs::path per_scale_path(const fs::path& p, unsigned sigma, bool suffix) {
  if (!suffix) return p;
  fs::path out = p;
  out.replace_filename(p.stem().string() + "_s" + std::to_string(sigma) + p.extension().string());
  return out;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_file_atomic(path, text);
  }
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bit-accurate golden model of a pipelined 2D Gaussian surround function generator"};
  app.name("gauss2d");
  app.require_subcommand(0, 1);

  bool dump_rom = false;
  bool dump_explut = false;
  app.add_flag("--dump-rom", dump_rom, "Same as the rom-dump subcommand, to stdout");
  app.add_flag("--dump-explut", dump_explut, "Same as the explut-dump subcommand, to stdout");

  // kernel
  GeometryFlags kgeo;
  std::string k_out, k_csv;
  bool k_independent = false;
  auto* kernel = app.add_subcommand("kernel", "Generate kernel tiles; export PGM/CSV; print K_n");
  add_geometry(kernel, kgeo, true);
  kernel->add_option("--out", k_out, "PGM output (suffixed _s<sigma> when several scales)");
  kernel->add_option("--csv", k_csv, "CSV output (same suffix rule)");
  kernel->add_flag("--independent", k_independent, "One full datapath per scale instead of a shared front end");

  // rom-dump / explut-dump
  std::string rom_out, lut_out;
  auto* romcmd = app.add_subcommand("rom-dump", "Print the 256-word coordinate ROM");
  romcmd->add_option("--out", rom_out, "Write to file instead of stdout");
  auto* lutcmd = app.add_subcommand("explut-dump", "Print the exponent LUT as CSV");
  lutcmd->add_option("--out", lut_out, "Write to file instead of stdout");

  // blur
  std::string b_in, b_out, b_boundary = "replicate", b_mode = "separable";
  unsigned b_sigma = 16, b_threads = 0;
  bool b_no_norm = false;
  auto* blurcmd = app.add_subcommand("blur", "Blur a binary PGM/PPM with the surround function");
  blurcmd->add_option("--in", b_in, "Input P5/P6 image")->required();
  blurcmd->add_option("--out", b_out, "Output P5/P6 image")->required();
  blurcmd->add_option("--sigma", b_sigma, "Gaussian scale");
  blurcmd->add_option("--boundary", b_boundary, "replicate | reflect | zero")
      ->check(CLI::IsMember({"replicate", "reflect", "zero"}));
  blurcmd->add_option("--mode", b_mode, "separable | direct2d")->check(CLI::IsMember({"separable", "direct2d"}));
  blurcmd->add_flag("--no-normalize", b_no_norm, "Use unnormalised weights");
  blurcmd->add_option("--threads", b_threads, "Worker threads (0 = all cores)");

  // error-report
  GeometryFlags egeo;
  auto* errcmd = app.add_subcommand("error-report", "Compare the bit model with the double-precision reference");
  add_geometry(errcmd, egeo, true);

  // bench
  std::uint32_t w = 1600, h = 1200, ch = 3;
  unsigned bsigma = 16, bthreads = 0;
  std::uint64_t frames = 30, gen_frames = 20, seed = 1;
  std::string bmode = "separable", bboundary = "replicate";
  auto* benchcmd = app.add_subcommand("bench", "Measure blur frame rate and generator sample rate");
  benchcmd->add_option("--width", w, "Frame width")->check(CLI::Range(1u, 65535u));
  benchcmd->add_option("--height", h, "Frame height")->check(CLI::Range(1u, 65535u));
  benchcmd->add_option("--channels", ch, "1 or 3")->check(CLI::IsMember({1u, 3u}));
  benchcmd->add_option("--sigma", bsigma, "Gaussian scale");
  benchcmd->add_option("--frames", frames, "Timed blur frames");
  benchcmd->add_option("--generator-frames", gen_frames, "Timed 256x256 generator frames (0 skips)");
  benchcmd->add_option("--mode", bmode, "separable | direct2d")->check(CLI::IsMember({"separable", "direct2d"}));
  benchcmd->add_option("--boundary", bboundary, "replicate | reflect | zero")
      ->check(CLI::IsMember({"replicate", "reflect", "zero"}));
  benchcmd->add_option("--threads", bthreads, "Worker threads (0 = all cores)");
  benchcmd->add_option("--seed", seed, "Seed for the synthetic frame");

  // vectors
  GeometryFlags vgeo;
  std::string v_dir, v_format = "both";
  auto* veccmd = app.add_subcommand("vectors", "Export per-tick HDL test vectors with a hash manifest");
  add_geometry(veccmd, vgeo, true);
  veccmd->add_option("--out-dir", v_dir, "Existing output directory")->required();
  veccmd->add_option("--format", v_format, "hex | csv | both")->check(CLI::IsMember({"hex", "csv", "both"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "gauss2d: " << e.what() << "\n";
    return kUsage;
  }

  const auto subs = app.get_subcommands();
  const int requested = static_cast<int>(subs.size()) + int{dump_rom} + int{dump_explut};
  if (requested != 1) {
    err << "gauss2d: exactly one subcommand (or --dump-rom / --dump-explut) is required; see --help\n";
    return kUsage;
  }

  try {
    if (dump_rom || romcmd->parsed()) {
      emit(rom_dump(CoordRom{}), rom_out, out);
    } else if (dump_explut || lutcmd->parsed()) {
      emit(explut_csv(ExpLut::shared()), lut_out, out);
    } else if (kernel->parsed()) {
      const KernelSpec spec = spec_from(kgeo);
      GenOptions opts;
      opts.latencies = Latencies::with_mult(kgeo.latency);
      opts.shared_front_end = !k_independent;
      const MultiScaleResult res = generate_all_scales(spec, opts);
      const bool suffix = res.tiles.size() > 1;
      for (const KernelTile& t : res.tiles) {
        const NormConstant k = normalize(t);
        out << "sigma=" << t.scale.sigma() << " shift=" << t.scale.shift() << " k_raw=" << k.k_raw
            << " K_n=" << fmt("%.9e", 1.0 / static_cast<double>(k.k_raw))
            << " center=" << unsigned{t.at(0, 0).value} << "\n";
        if (!k_out.empty()) {
          Image img(t.cols, t.rows, 1);
          for (std::size_t i = 0; i < t.data.size(); ++i) img.data[i] = t.data[i].value;
          pnm::write(per_scale_path(k_out, t.scale.sigma(), suffix), img);
        }
        if (!k_csv.empty()) write_file_atomic(per_scale_path(k_csv, t.scale.sigma(), suffix), tile_csv(t));
      }
      out << "ticks=" << res.report.total_ticks << " fill_latency=" << res.report.fill_latency
          << " samples=" << res.report.samples
          << " throughput=" << fmt("%.6f", res.report.throughput_samples_per_tick()) << "\n";
    } else if (blurcmd->parsed()) {
      if (!fs::exists(b_in)) throw IoError("input file " + b_in + " does not exist");
      const Image img = pnm::read(b_in);
      ConvConfig cfg;
      cfg.sigma = b_sigma;
      cfg.boundary = parse_boundary(b_boundary);
      cfg.mode = parse_mode(b_mode);
      cfg.normalize = !b_no_norm;
      cfg.threads = b_threads;
      pnm::write(b_out, blur(img, cfg));
    } else if (errcmd->parsed()) {
      const KernelSpec spec = spec_from(egeo);
      GenOptions opts;
      opts.latencies = Latencies::with_mult(egeo.latency);
      const MultiScaleResult res = generate_all_scales(spec, opts);
      bool ok = true;
      for (const KernelTile& t : res.tiles) {
        const ErrorReport rep = error_report(t, oracle_tile(spec, t.scale.sigma()));
        out << "sigma=" << t.scale.sigma() << " max_abs=" << fmt("%.9f", rep.max_abs) << " ("
            << fmt("%.4f", rep.max_abs * 256) << " lsb) rmse=" << fmt("%.9f", rep.rmse) << " argmax=("
            << rep.argmax_x << "," << rep.argmax_y << ")";
        const auto ceiling = oracle_error_ceiling(t.scale.sigma());
        if (ceiling && spec.is_hardware_geometry()) {
          const bool within = rep.max_abs <= *ceiling + 1e-12;
          ok = ok && within;
          out << " bound=" << fmt("%.9f", *ceiling) << (within ? " ok" : " EXCEEDED");
        }
        out << "\n";
      }
      if (!ok) return kFailure;
    } else if (benchcmd->parsed()) {
      ConvConfig cfg;
      cfg.sigma = bsigma;
      cfg.mode = parse_mode(bmode);
      cfg.boundary = parse_boundary(bboundary);
      cfg.threads = bthreads;
      const BlurBenchResult b = benchmark_blur(w, h, ch, cfg, frames, seed);
      out << "blur " << w << "x" << h << "x" << ch << " sigma=" << bsigma << " mode=" << bmode
          << " frames=" << b.frames << " seconds=" << fmt("%.4f", b.seconds)
          << " fps=" << fmt("%.2f", b.frames_per_sec) << " samples_per_sec=" << fmt("%.4e", b.samples_per_sec)
          << " sha256=" << b.output_sha256 << "\n";
      if (gen_frames > 0) {
        const GeneratorBenchResult g = benchmark_generator(gen_frames);
        out << "generator frames=" << g.frames << " ticks=" << g.ticks << " samples=" << g.samples
            << " seconds=" << fmt("%.4f", g.seconds) << " samples_per_sec=" << fmt("%.4e", g.samples_per_sec)
            << "\n";
      }
    } else if (veccmd->parsed()) {
      const KernelSpec spec = spec_from(vgeo);
      GenOptions opts;
      opts.latencies = Latencies::with_mult(vgeo.latency);
      std::vector<VectorFormat> formats;
      if (v_format != "csv") formats.push_back(VectorFormat::Hex);
      if (v_format != "hex") formats.push_back(VectorFormat::Csv);
      const ExportSummary s = export_vectors(spec, opts, v_dir, formats);
      out << "records=" << s.records << "\n" << s.manifest;
    }
  } catch (const IoError& e) {
    err << "gauss2d: " << e.what() << "\n";
    return kIo;
  } catch (const ImageFormatError& e) {
    err << "gauss2d: " << e.what() << "\n";
    return kBadInput;
  } catch (const ConfigError& e) {
    err << "gauss2d: " << e.what() << "\n";
    return kConfig;
  } catch (const ContractError& e) {
    err << "gauss2d: " << e.what() << "\n";
    return kContract;
  } catch (const DegenerateKernelError& e) {
    err << "gauss2d: " << e.what() << "\n";
    return kContract;
  } catch (const std::exception& e) {
    err << "gauss2d: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}

}  // namespace gauss2d::cli
