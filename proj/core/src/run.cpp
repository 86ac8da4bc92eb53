#include "levelseg/run.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "levelseg/alpha_select.hpp"
#include "levelseg/image_io.hpp"
#include "levelseg/levelset.hpp"
#include "levelseg/phantom.hpp"
#include "levelseg/solver.hpp"

namespace levelseg {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

const std::vector<std::string> kEmitTokens = {"overlay", "mask",  "contour",
                                              "trace",   "sweep", "phantom"};

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

std::string hex32(std::uint32_t v) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%08x", v);
  return buf;
}

json stats_json(const RegionStats& s) {
  json j;
  j["c1"] = s.c1;
  j["c2"] = s.c2;
  j["n_inside"] = s.n_inside;
  j["n_outside"] = s.n_outside;
  j["inside_empty"] = s.inside_empty;
  j["outside_empty"] = s.outside_empty;
  return j;
}

json result_json(const SegmentationResult& r) {
  json j;
  j["stop_reason"] = to_string(r.stop_reason);
  j["iterations"] = r.iterations_run;
  j["dt_used"] = r.dt_used;
  j["dt_clamped"] = r.dt_clamped;
  j["energy_final"] = r.energy_trace.back().energy;
  j["region"] = stats_json(r.stats_final);
  j["contour_loops"] = r.contour.loops.size();
  return j;
}

class Emitter {
 public:
  explicit Emitter(fs::path dir) : dir_(std::move(dir)) {}

  std::string path(const std::string& name) const {
    return (dir_ / name).string();
  }

  template <typename Writer>
  void text(const std::string& name, Writer&& write) {
    std::ofstream out(path(name), std::ios::binary);
    if (!out) throw Error("cannot write '" + path(name) + "'");
    write(out);
    out.close();
    if (!out) throw Error("write failed for '" + path(name) + "'");
    add(name);
  }

  void add(const std::string& name) { names_.push_back(name); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  fs::path dir_;
  std::vector<std::string> names_;
};

void emit_result(Emitter& em, const std::vector<std::string>& emit,
                 const ScalarField& u0, const SegmentationResult& r) {
  if (contains(emit, "overlay")) {
    write_png(em.path("overlay.png"), render_overlay(u0, r.contour));
    em.add("overlay.png");
  }
  if (contains(emit, "mask")) {
    write_mask_pgm(em.path("mask.pgm"), r.mask);
    em.add("mask.pgm");
  }
  if (contains(emit, "contour")) {
    em.text("contour.csv",
            [&](std::ostream& out) { write_contour_csv(out, r.contour); });
  }
  if (contains(emit, "trace")) {
    em.text("trace.csv",
            [&](std::ostream& out) { write_trace_csv(out, r); });
  }
}

}  // namespace

std::vector<std::string> default_emit(const std::string& model) {
  std::vector<std::string> e = {"overlay", "mask", "contour", "trace"};
  if (model == "sweep") e.push_back("sweep");
  return e;
}

std::vector<std::string> validate(const RunConfig& c) {
  std::vector<std::string> v;
  const bool known_model = c.model == "geodesic" || c.model == "chan-vese" ||
                           c.model == "chan_vese" || c.model == "modified" ||
                           c.model == "sweep";
  if (c.model.empty()) {
    v.push_back("--model is required (geodesic|chan-vese|modified|sweep)");
  } else if (!known_model) {
    v.push_back("unknown model '" + c.model +
                "' (geodesic|chan-vese|modified|sweep)");
  }
  if (c.input.has_value() == c.phantom.has_value()) {
    v.push_back("exactly one of --input and --phantom must be given");
  }
  if (c.phantom && *c.phantom != "disk" && *c.phantom != "separated" &&
      *c.phantom != "embedded") {
    v.push_back("unknown phantom '" + *c.phantom +
                "' (disk|separated|embedded)");
  }
  if (c.seed && c.input) v.push_back("--seed only applies to --phantom");

  const bool chan_vese = c.model == "chan-vese" || c.model == "chan_vese";
  const bool uses_alpha = c.model == "modified" || c.model == "sweep";
  if (c.lambda && known_model && !chan_vese) {
    v.push_back("--lambda is only valid with --model chan-vese");
  }
  if (c.alpha && known_model && !uses_alpha) {
    v.push_back("--alpha is only valid with --model modified or sweep");
  }
  if (c.alphas && known_model && c.model != "sweep") {
    v.push_back("--alphas is only valid with --model sweep");
  }
  if (c.alphas) {
    const auto& a = *c.alphas;
    if (a.size() < 3) v.push_back("--alphas needs at least 3 values");
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (!(a[k] > 0.0 && a[k] <= 1.0)) {
        v.push_back("--alphas values must lie in (0, 1]");
        break;
      }
    }
    for (std::size_t k = 1; k < a.size(); ++k) {
      if (!(a[k] > a[k - 1])) {
        v.push_back("--alphas must be strictly increasing");
        break;
      }
    }
  }
  if (!(c.plateau_tol > 0.0)) v.push_back("--plateau-tol must be positive");
  if (c.dt && !(*c.dt > 0.0)) v.push_back("--dt must be positive");
  if (c.init) {
    try {
      parse_init_shape(*c.init);
    } catch (const Error& e) {
      v.push_back(e.what());
    }
  }
  for (const auto& token : c.emit) {
    if (!contains(kEmitTokens, token)) {
      v.push_back("unknown --emit token '" + token +
                  "' (overlay,mask,contour,trace,sweep,phantom)");
    }
  }
  if (contains(c.emit, "sweep") && known_model && c.model != "sweep") {
    v.push_back("--emit sweep requires --model sweep");
  }
  if (contains(c.emit, "phantom") && !c.phantom) {
    v.push_back("--emit phantom requires --phantom");
  }
  if (c.out_dir.empty()) v.push_back("--out must not be empty");

  for (auto& msg : evolve_params(c).violations()) v.push_back(std::move(msg));
  return v;
}

EvolveParams evolve_params(const RunConfig& c) {
  EvolveParams p;
  p.mu = gray_level_weight(c.mu);
  p.nu = gray_level_weight(c.nu);
  if (c.lambda) p.lambda = *c.lambda;
  if (c.alpha) p.alpha = *c.alpha;
  p.eps = c.eps;
  p.dt = c.dt.value_or(0.0);
  p.max_iters = c.max_iters;
  p.stop_tol = c.stop_tol;
  p.reinit_every = c.reinit_every;
  return p;
}

RunOutcome run(const RunConfig& config) {
  RunOutcome outcome;
  json summary;
  summary["model"] = config.model;
  if (config.input) summary["input"] = *config.input;
  if (config.phantom) summary["phantom"] = *config.phantom;

  const fs::path dir(config.out_dir.empty() ? "." : config.out_dir);
  Emitter em(dir);

  auto write_summary = [&] {
    json files = json::array();
    for (const auto& name : em.names()) {
      json f;
      f["name"] = name;
      f["crc32"] = hex32(file_crc32(em.path(name)));
      files.push_back(f);
    }
    summary["status"] = outcome.exit_code == kExitOk ? "ok" : "error";
    summary["exit_code"] = outcome.exit_code;
    summary["errors"] = outcome.errors;
    summary["warnings"] = outcome.warnings;
    summary["files"] = files;
    const std::string path = (dir / "run_summary.json").string();
    std::ofstream out(path, std::ios::binary);
    if (out) {
      out << summary.dump(2) << '\n';
      if (out) outcome.summary_path = path;
    }
    for (const auto& name : em.names()) outcome.files.push_back(em.path(name));
  };

  std::error_code ec;
  fs::create_directories(dir, ec);

  outcome.errors = validate(config);
  if (!outcome.errors.empty()) {
    outcome.exit_code = kExitConfigError;
    write_summary();
    return outcome;
  }

  const std::vector<std::string> emit =
      config.emit.empty() ? default_emit(config.model) : config.emit;
  const EvolveParams params = evolve_params(config);

  try {
    ScalarField u0;
    if (config.input) {
      LoadedImage img = read_image(*config.input);
      if (img.constant) {
        outcome.warnings.push_back("input image is constant; field is all zeros");
      }
      u0 = std::move(img.field);
    } else {
      const std::uint64_t seed =
          config.seed.value_or(default_seed(*config.phantom));
      summary["seed"] = seed;
      const Phantom ph = make_named_phantom(*config.phantom, seed);
      if (contains(emit, "phantom")) {
        for (const auto& path : export_phantom(ph, dir.string(), "phantom")) {
          em.add(fs::path(path).filename().string());
        }
      }
      u0 = normalize(ph.image);
    }

    const InitShape shape = config.init
                                ? parse_init_shape(*config.init)
                                : default_init_shape(u0.width(), u0.height());
    validate_init_shape(shape, u0.width(), u0.height());
    summary["init"] = to_string(shape);
    const ScalarField phi0 =
        signed_distance(shape, u0.width(), u0.height(), u0.spacing());

    json pj;
    pj["mu"] = config.mu;
    pj["nu"] = config.nu;
    pj["lambda"] = params.lambda;
    pj["alpha"] = params.alpha;
    pj["eps"] = params.eps;
    pj["max_iters"] = params.max_iters;
    pj["stop_tol"] = params.stop_tol;
    pj["reinit_every"] = params.reinit_every;
    summary["params"] = pj;

    if (config.model == "sweep") {
      SweepOptions opts;
      opts.plateau_tol = config.plateau_tol;
      opts.threads = config.threads;
      const auto& alphas = config.alphas ? *config.alphas : kDefaultSweepAlphas;
      AlphaSweepReport report = sweep_alpha(u0, phi0, params, alphas, opts);

      SegmentationResult chosen;
      auto it = std::find_if(
          report.entries.begin(), report.entries.end(),
          [&](const AlphaSweepEntry& e) { return e.alpha == report.chosen_alpha; });
      if (it != report.entries.end()) {
        chosen = report.runs[static_cast<std::size_t>(it - report.entries.begin())];
      } else {
        EvolveParams p = params;
        p.alpha = report.chosen_alpha;
        chosen = evolve(ModelKind::kModified, u0, phi0, p);
      }

      json sj;
      sj["chosen_alpha"] = report.chosen_alpha;
      sj["plateau_lo"] = report.plateau_lo;
      sj["plateau_hi"] = report.plateau_hi;
      sj["chosen_interpolated"] = report.chosen_interpolated;
      summary["sweep"] = sj;
      summary["result"] = result_json(chosen);

      if (contains(emit, "sweep")) {
        em.text("sweep.csv",
                [&](std::ostream& out) { write_sweep_csv(out, report); });
        em.text("sweep_summary.json", [&](std::ostream& out) {
          out << sweep_summary_json(report) << '\n';
        });
      }
      emit_result(em, emit, u0, chosen);
    } else {
      const ModelKind kind = parse_model_kind(config.model);
      const SegmentationResult r = evolve(kind, u0, phi0, params);
      if (r.dt_clamped) {
        outcome.warnings.push_back("--dt exceeds the stability bound; clamped");
      }
      summary["result"] = result_json(r);
      emit_result(em, emit, u0, r);
    }
  } catch (const EvolveError& e) {
    outcome.errors.push_back(e.what());
    outcome.exit_code = kExitRuntimeError;
  } catch (const std::exception& e) {
    outcome.errors.push_back(e.what());
    outcome.exit_code = kExitRuntimeError;
  }
  write_summary();
  return outcome;
}

}  // namespace levelseg
