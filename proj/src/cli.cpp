#include "vpd/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>

#include "vpd/cubical.hpp"
#include "vpd/dual.hpp"
#include "vpd/error.hpp"
#include "vpd/heat_kernel.hpp"
#include "vpd/io.hpp"
#include "vpd/rff.hpp"
#include "vpd/topo_loss.hpp"

namespace vpd::cli {

using io::json;

void emit_torus_slice(std::ostream& out, double t, const QuotientGraph& g, const SliceSpec& spec) {
  const std::size_t n = g.n_offdiag();
  std::vector<std::size_t> axes = spec.axes;
  if (axes.empty()) {
    if (n > 2) {
      throw TooHighDim("full torus grids need N <= 2, got N=" + std::to_string(n) +
                       "; choose one or two --axes");
    }
    for (std::size_t j = 0; j < n; ++j) axes.push_back(j);
  }
  if (axes.size() > 2) throw TooHighDim("a slice varies at most two coordinates");
  for (std::size_t j = 0; j < axes.size(); ++j) {
    if (axes[j] >= n) throw DimensionMismatch("slice axis " + std::to_string(axes[j]) + " >= N");
    for (std::size_t k = 0; k < j; ++k)
      if (axes[k] == axes[j]) throw InvalidArgument("slice axes must be distinct");
  }
  if (!spec.base.empty() && spec.base.size() != n) {
    throw DimensionMismatch("--base needs N=" + std::to_string(n) + " values");
  }
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("t must be finite and >= 0");
  if (spec.resolution < 2) throw InvalidArgument("slice resolution must be >= 2");
  const VirtualDiagram gamma = spec.gamma.dim() == 0 ? VirtualDiagram(n) : spec.gamma;
  if (gamma.dim() != n) throw DimensionMismatch("--gamma needs N=" + std::to_string(n) + " values");

  std::vector<double> theta = spec.base.empty() ? std::vector<double>(n, 0.0) : spec.base;
  const std::size_t res = spec.resolution;
  const std::size_t rows = axes.size() == 2 ? res * res : res;

  const auto flags = out.flags();
  const auto prec = out.precision();
  for (std::size_t a : axes) out << "theta_" << a << ',';
  out << "lambda,heat,re,im\n" << std::setprecision(17);
  for (std::size_t k = 0; k < rows; ++k) {
    std::size_t idx = k;
    for (std::size_t a : axes) {
      theta[a] = kTwoPi * static_cast<double>(idx % res) / static_cast<double>(res);
      idx /= res;
    }
    const TorusPoint p(theta);
    const double lambda = dirichlet_symbol(p, g);
    const double heat = std::exp(-t * lambda);
    const double s = pairing(gamma, p);
    for (std::size_t a : axes) out << p[a] << ',';
    out << lambda << ',' << heat << ',' << std::cos(s) * heat << ',' << std::sin(s) * heat << '\n';
  }
  out.flags(flags);
  out.precision(prec);
}

namespace {

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) throw ParseError("bad number '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<std::int64_t> parse_ints(const std::string& s) {
  std::vector<std::int64_t> out;
  for (double v : parse_doubles(s)) {
    if (v != std::floor(v)) throw ParseError("expected integers, got " + s);
    out.push_back(static_cast<std::int64_t>(v));
  }
  return out;
}

// Destination for command output: stdout unless --out is given.
class Sink {
 public:
  Sink(std::ostream& fallback, const std::string& path) : fallback_(fallback), path_(path) {}
  std::ostream& stream() { return path_.empty() ? fallback_ : buffer_; }
  void flush() {
    if (!path_.empty()) io::write_text_file(path_, buffer_.str());
  }

 private:
  std::ostream& fallback_;
  std::string path_;
  std::ostringstream buffer_;
};

struct Options {
  std::string out_path;
  // shared inputs
  std::string pair_path, u_path, v_path, a_path, b_path, fs_path, gamma_path, image_path;
  std::string diagrams_path, theta, axes, base, gamma_list, grid_spec, slice_gamma;
  double t = 1.0, demo_t = 10.0, tmin = 0.0, tmax = 10.0, noise = 0.05, cap = NAN, w_topo = 500.0;
  std::size_t grid = 64, mc = 0, steps = 21, R = 256, burn_in = 1000, thinning = 10;
  std::size_t cells = 512, mass_samples = 65536, resamples = 200, n_pairs = 100, trials = 100;
  std::size_t spectral_R = 4096, n_masks = 20, resolution = 64;
  int radius = 3;
  std::optional<std::uint64_t> seed;
  std::string mode = "grid_icdf";
  bool matching = false;
};

QuadratureSpec quadrature(const Options& o, const QuotientGraph& g, bool mc_given) {
  if (mc_given) {
    if (!o.seed) throw InvalidArgument("--mc needs --seed");
    return QuadratureSpec::monte_carlo(o.mc, *o.seed);
  }
  auto q = QuadratureSpec::tensor(o.grid);
  q.validate(g.n_offdiag());
  return q;
}

std::uint64_t require_seed(const Options& o, const char* cmd) {
  if (!o.seed) throw InvalidArgument(std::string(cmd) + " is stochastic and needs --seed");
  return *o.seed;
}

SamplerOptions sampler(const Options& o, const char* cmd) {
  SamplerOptions s;
  s.mode = parse_sampler_mode(o.mode);
  s.seed = require_seed(o, cmd);
  s.burn_in = o.burn_in;
  s.thinning = o.thinning;
  s.grid_cells = o.cells;
  s.mass_samples = o.mass_samples;
  return s;
}

QuotientGraph load_graph(const std::string& path) {
  return QuotientGraph::from_pair(io::metric_pair_from_json(io::read_json_file(path)));
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<VirtualDiagram> load_virtual_list(const std::string& path) {
  const json j = io::read_json_file(path);
  const json& arr = j.is_array() ? j : j.at("diagrams");
  std::vector<VirtualDiagram> out;
  for (const auto& e : arr) out.push_back(io::virtual_from_json(e));
  return out;
}

// --gammas "1,0;0,2" or the default k * e_{(k-1) mod N}, k = 1..10.
std::vector<VirtualDiagram> gamma_set(const std::string& spec, std::size_t n) {
  std::vector<VirtualDiagram> out;
  if (spec.empty()) {
    for (std::size_t k = 1; k <= 10; ++k) {
      VirtualDiagram v(n);
      v.coeffs[(k - 1) % n] = static_cast<std::int64_t>(k);
      out.push_back(v);
    }
    return out;
  }
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ';')) {
    VirtualDiagram v(parse_ints(part));
    if (v.dim() != n) throw DimensionMismatch("gamma '" + part + "' needs N=" + std::to_string(n));
    out.push_back(std::move(v));
  }
  return out;
}

json unbiased_to_json(const UnbiasedReport& rep) {
  json rows = json::array();
  for (const auto& r : rep.rows) {
    rows.push_back({{"gamma", r.gamma.coeffs},
                    {"exact", r.exact},
                    {"mean", r.mean},
                    {"std_error", r.std_error},
                    {"within_3se", r.within}});
  }
  return {{"rows", rows}, {"outside", rep.outside()}};
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heat kernels and random Fourier features on virtual persistence diagrams", "vpd"};
  app.require_subcommand(1);
  Options o;

  auto add_out = [&](CLI::App* s) { s->add_option("--out", o.out_path, "Write output to this file"); };
  auto add_seed = [&](CLI::App* s) { s->add_option("--seed", o.seed, "RNG seed"); };
  auto add_quad = [&](CLI::App* s) {
    auto* g = s->add_option("--grid", o.grid, "Tensor midpoint rule points per dimension (N <= 3)")
                  ->capture_default_str();
    auto* m = s->add_option("--mc", o.mc, "Monte Carlo samples instead of the tensor rule");
    m->excludes(g);
    add_seed(s);
    return m;
  };

  // pair
  auto* pair = app.add_subcommand("pair", "Metric pair tools");
  pair->require_subcommand(1);
  auto* pair_validate = pair->add_subcommand("validate", "Check a metric pair file");
  pair_validate->add_option("file", o.pair_path)->required();
  auto* pair_quotient = pair->add_subcommand("quotient", "Print the quotient metric on X/A");
  pair_quotient->add_option("file", o.pair_path)->required();
  add_out(pair_quotient);

  auto* w1 = app.add_subcommand("w1", "W1 distance between two diagrams");
  w1->add_option("pair", o.pair_path)->required();
  w1->add_option("a", o.a_path)->required();
  w1->add_option("b", o.b_path)->required();
  w1->add_flag("--matching", o.matching, "Print the optimal matching too");
  add_out(w1);

  auto* rho_cmd = app.add_subcommand("rho", "Lifted metric between two virtual diagrams");
  rho_cmd->add_option("pair", o.pair_path)->required();
  rho_cmd->add_option("u", o.u_path)->required();
  rho_cmd->add_option("v", o.v_path)->required();
  add_out(rho_cmd);

  auto* lambda_cmd = app.add_subcommand("lambda", "Dirichlet symbol and character bounds at theta");
  lambda_cmd->add_option("pair", o.pair_path)->required();
  lambda_cmd->add_option("--theta", o.theta, "Comma-separated angles")->required();
  add_out(lambda_cmd);

  // kernel
  auto* kernel = app.add_subcommand("kernel", "Heat kernel evaluation");
  kernel->require_subcommand(1);
  auto* k_eval = kernel->add_subcommand("eval", "k_t(u, v)");
  k_eval->add_option("--t", o.t)->required();
  k_eval->add_option("--pair", o.pair_path)->required();
  k_eval->add_option("--u", o.u_path)->required();
  k_eval->add_option("--v", o.v_path)->required();
  auto* k_eval_mc = add_quad(k_eval);
  add_out(k_eval);
  auto* k_gram = kernel->add_subcommand("gram", "Gram matrix of a list of virtual diagrams");
  k_gram->add_option("--t", o.t)->required();
  k_gram->add_option("--pair", o.pair_path)->required();
  k_gram->add_option("--diagrams", o.diagrams_path, "JSON list of {\"coeffs\": [...]}")->required();
  auto* k_gram_mc = add_quad(k_gram);
  add_out(k_gram);
  auto* k_curve = kernel->add_subcommand("lipcurve", "Heat integrals over a range of t (CSV)");
  k_curve->add_option("--pair", o.pair_path)->required();
  k_curve->add_option("--tmin", o.tmin)->capture_default_str();
  k_curve->add_option("--tmax", o.tmax)->capture_default_str();
  k_curve->add_option("--steps", o.steps)->capture_default_str();
  auto* k_curve_mc = add_quad(k_curve);
  add_out(k_curve);

  // rff
  auto* rff = app.add_subcommand("rff", "Random Fourier features");
  rff->require_subcommand(1);
  auto add_sampler = [&](CLI::App* s) {
    s->add_option("--pair", o.pair_path)->required();
    s->add_option("--t", o.t)->required();
    s->add_option("--R", o.R)->capture_default_str();
    s->add_option("--mode", o.mode, "grid_icdf | metropolis")->capture_default_str();
    s->add_option("--burn-in", o.burn_in)->capture_default_str();
    s->add_option("--thinning", o.thinning)->capture_default_str();
    s->add_option("--cells", o.cells, "grid_icdf cells per dimension")->capture_default_str();
    s->add_option("--mass-samples", o.mass_samples)->capture_default_str();
    add_seed(s);
    add_out(s);
  };
  auto* rff_sample = rff->add_subcommand("sample", "Draw frequencies from the heat law");
  add_sampler(rff_sample);
  auto* rff_features = rff->add_subcommand("features", "Feature vector of a virtual diagram");
  rff_features->add_option("--fs", o.fs_path)->required();
  rff_features->add_option("--v", o.v_path)->required();
  add_out(rff_features);
  auto* rff_unbiased = rff->add_subcommand("check-unbiased", "Resampled RFF kernel vs quadrature");
  add_sampler(rff_unbiased);
  rff_unbiased->add_option("--resamples", o.resamples)->capture_default_str();
  rff_unbiased->add_option("--gammas", o.gamma_list, "e.g. \"1;2;3\" or \"1,0;0,1\"");
  rff_unbiased->add_option("--grid", o.grid)->capture_default_str();
  auto* rff_lip = rff->add_subcommand("check-lip", "Per-draw Lipschitz bound and spectral constant");
  add_sampler(rff_lip);
  rff_lip->add_option("--pairs", o.n_pairs)->capture_default_str();
  rff_lip->add_option("--radius", o.radius)->capture_default_str();
  rff_lip->add_option("--trials", o.trials, "Spectral-constant trials (N <= 2, t > 0)")
      ->capture_default_str();
  rff_lip->add_option("--spectral-R", o.spectral_R)->capture_default_str();

  auto* cubical = app.add_subcommand("cubical", "Sublevel persistence of a CSV or PGM image");
  cubical->add_option("image", o.image_path)->required();
  add_out(cubical);

  auto* quantize = app.add_subcommand("quantize", "Snap a raw diagram onto a ground grid");
  quantize->add_option("diagram", o.a_path, "Output of `cubical`")->required();
  quantize->add_option("--grid-spec", o.grid_spec, "lo:hi:cells")->required();
  quantize->add_option("--cap", o.cap, "Death value for essential classes (default: max pixel)");
  std::string pair_out;
  quantize->add_option("--pair-out", pair_out, "Also write the ground metric pair here");
  add_out(quantize);

  // loss
  auto* loss = app.add_subcommand("loss", "Topological loss");
  loss->require_subcommand(1);
  auto* loss_exact = loss->add_subcommand("exact", "2 (k_t(0,0) - k_t(gamma,0)) by quadrature");
  loss_exact->add_option("--pair", o.pair_path)->required();
  loss_exact->add_option("--gamma", o.gamma_path)->required();
  loss_exact->add_option("--t", o.t)->required();
  auto* loss_exact_mc = add_quad(loss_exact);
  add_out(loss_exact);
  auto* loss_rff = loss->add_subcommand("rff", "Random-feature estimate of the loss");
  loss_rff->add_option("--fs", o.fs_path)->required();
  loss_rff->add_option("--gamma", o.gamma_path)->required();
  add_out(loss_rff);
  auto* loss_demo_cmd = loss->add_subcommand("demo", "Synthetic mask perturbation study (CSV)");
  loss_demo_cmd->add_option("--n", o.n_masks)->capture_default_str();
  loss_demo_cmd->add_option("--noise", o.noise)->capture_default_str();
  loss_demo_cmd->add_option("--t", o.demo_t)->capture_default_str();
  loss_demo_cmd->add_option("--R", o.R)->capture_default_str();
  loss_demo_cmd->add_option("--w-topo", o.w_topo)->capture_default_str();
  add_seed(loss_demo_cmd);
  add_out(loss_demo_cmd);

  auto* slice = app.add_subcommand("slice", "lambda, heat and character values on a torus slice");
  slice->add_option("--pair", o.pair_path)->required();
  slice->add_option("--t", o.t)->capture_default_str();
  slice->add_option("--res", o.resolution)->capture_default_str();
  slice->add_option("--axes", o.axes, "One or two axes, e.g. 0,1");
  slice->add_option("--base", o.base, "Values of all N coordinates; varying axes are overwritten");
  slice->add_option("--gamma", o.slice_gamma, "Character coefficients, e.g. 1,0");
  add_out(slice);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    Sink sink(out, o.out_path);
    std::ostream& os = sink.stream();

    if (*pair_validate) {
      const auto p = io::metric_pair_from_json(io::read_json_file(o.pair_path));
      os << "valid\n";
      (void)p;
    } else if (*pair_quotient) {
      const auto p = io::metric_pair_from_json(io::read_json_file(o.pair_path));
      os << dump({{"n_offdiag", p.n_offdiag()},
                  {"basepoint", p.n_offdiag()},
                  {"points", p.off_diagonal()},
                  {"matrix", io::matrix_to_json(quotient_metric_1(p))}});
    } else if (*w1) {
      const auto g = load_graph(o.pair_path);
      const auto a = io::diagram_from_json(io::read_json_file(o.a_path), g.n_offdiag());
      const auto b = io::diagram_from_json(io::read_json_file(o.b_path), g.n_offdiag());
      if (o.matching) {
        os << dump(io::matching_to_json(w1_matching(a, b, g)));
      } else {
        os << json(w1_distance(a, b, g)).dump() << "\n";
      }
    } else if (*rho_cmd) {
      const auto g = load_graph(o.pair_path);
      const auto u = io::virtual_from_json(io::read_json_file(o.u_path));
      const auto v = io::virtual_from_json(io::read_json_file(o.v_path));
      os << json(rho(u, v, g)).dump() << "\n";
    } else if (*lambda_cmd) {
      const auto g = load_graph(o.pair_path);
      const TorusPoint p(parse_doubles(o.theta));
      const auto b = char_lip_bounds(p, g);
      os << dump({{"theta", p.values()},
                  {"lambda", dirichlet_symbol(p, g)},
                  {"phase_lip", phase_lip(p, g)},
                  {"char_lip_lower", b.lower},
                  {"char_lip_upper", b.upper}});
    } else if (*k_eval) {
      const auto g = load_graph(o.pair_path);
      const auto q = quadrature(o, g, k_eval_mc->count() > 0);
      const auto u = io::virtual_from_json(io::read_json_file(o.u_path));
      const auto v = io::virtual_from_json(io::read_json_file(o.v_path));
      const auto k = kernel_eval(o.t, u, v, g, q);
      os << dump({{"t", o.t},
                  {"value", k.value},
                  {"imag", k.imag},
                  {"std_error", k.std_error},
                  {"quadrature", q.describe()}});
    } else if (*k_gram) {
      const auto g = load_graph(o.pair_path);
      const auto q = quadrature(o, g, k_gram_mc->count() > 0);
      const auto vs = load_virtual_list(o.diagrams_path);
      const auto gram = gram_matrix(o.t, vs, g, q);
      json rows = json::array();
      for (Eigen::Index i = 0; i < gram.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < gram.cols(); ++j) row.push_back(gram(i, j));
        rows.push_back(row);
      }
      os << dump({{"t", o.t},
                  {"gram", rows},
                  {"min_eigenvalue", min_eigenvalue(gram)},
                  {"trace", gram.trace()},
                  {"quadrature", q.describe()}});
    } else if (*k_curve) {
      const auto g = load_graph(o.pair_path);
      const auto q = quadrature(o, g, k_curve_mc->count() > 0);
      if (o.steps < 2 || !(o.tmax > o.tmin) || !(o.tmin >= 0.0)) {
        throw InvalidArgument("lipcurve needs steps >= 2 and 0 <= tmin < tmax");
      }
      os << "t,heat_mass,lip_prefactor,spectral_moment,lip_transform,geometric_bound\n"
         << std::setprecision(17);
      for (std::size_t s = 0; s < o.steps; ++s) {
        const double t = o.tmin + (o.tmax - o.tmin) * static_cast<double>(s) /
                                      static_cast<double>(o.steps - 1);
        const auto h = heat_profile(t, g, q);
        os << t << ',' << h.mass.value << ',' << h.lip_prefactor.value << ','
           << h.spectral_moment.value << ',' << h.lip_transform.value << ','
           << h.geometric_bound.value << '\n';
      }
    } else if (*rff_sample) {
      const auto g = load_graph(o.pair_path);
      const auto fs = sample_heat_law(o.t, g, o.R, sampler(o, "rff sample"));
      os << dump(io::frequency_sample_to_json(fs));
    } else if (*rff_features) {
      const auto fs = io::frequency_sample_from_json(io::read_json_file(o.fs_path));
      const auto v = io::virtual_from_json(io::read_json_file(o.v_path));
      const auto phi = feature_map(v, fs);
      double norm_sq = 0.0;
      for (double x : phi) norm_sq += x * x;
      os << dump({{"features", phi}, {"norm_sq", norm_sq}, {"mass_estimate", fs.mass_estimate}});
    } else if (*rff_unbiased) {
      const auto g = load_graph(o.pair_path);
      const auto gammas = gamma_set(o.gamma_list, g.n_offdiag());
      const auto rep = rff_unbiasedness_check(o.t, g, o.R, o.resamples, gammas,
                                              sampler(o, "rff check-unbiased"), o.grid);
      json j = unbiased_to_json(rep);
      j["t"] = o.t;
      j["R"] = o.R;
      j["resamples"] = o.resamples;
      os << dump(j);
    } else if (*rff_lip) {
      const auto g = load_graph(o.pair_path);
      const auto opts = sampler(o, "rff check-lip");
      const auto fs = sample_heat_law(o.t, g, o.R, opts);
      const auto rep = rff_lip_check(fs, g, o.n_pairs, o.radius, derive_seed(opts.seed, 0x70616972));
      json j = {{"t", o.t},
                {"R", o.R},
                {"bound", rep.bound},
                {"empirical_ratio_max", rep.empirical_ratio_max},
                {"pairs", rep.pairs_evaluated},
                {"violated", rep.empirical_ratio_max > rep.bound}};
      if (g.n_offdiag() <= 2 && o.t > 0.0 && o.trials > 0) {
        const auto s = rff_spectral_asymptotic_check(o.t, g, o.trials, o.spectral_R, opts);
        j["spectral"] = {{"R", s.R},
                         {"trials", s.trials},
                         {"passes", s.passes},
                         {"pass_rate", s.pass_rate()},
                         {"constant", s.constant},
                         {"slack", s.slack},
                         {"max_bound", s.max_bound},
                         {"spectral_moment", s.spectral_moment}};
      }
      os << dump(j);
    } else if (*cubical) {
      const auto img = read_image(o.image_path);
      json j = io::raw_diagram_to_json(cubical_diagrams(img));
      j["width"] = img.width;
      j["height"] = img.height;
      j["max_pixel"] = img.max_value();
      os << dump(j);
    } else if (*quantize) {
      const json raw = io::read_json_file(o.a_path);
      const auto parts = parse_doubles([&] {
        std::string s = o.grid_spec;
        std::replace(s.begin(), s.end(), ':', ',');
        return s;
      }());
      if (parts.size() != 3 || parts[2] < 2 || parts[2] != std::floor(parts[2])) {
        throw InvalidArgument("--grid-spec must be lo:hi:cells with integer cells >= 2");
      }
      const auto gg = GroundGrid::build(parts[0], parts[1], static_cast<std::size_t>(parts[2]));
      const double cap = std::isnan(o.cap) ? raw.value("max_pixel", parts[1]) : o.cap;
      const auto qd = quantize_to_ground(io::raw_diagram_from_json(raw), gg, cap);
      if (!pair_out.empty()) {
        const auto& p = gg.pair();
        std::vector<std::size_t> a(p.subset_a().begin(), p.subset_a().end());
        io::write_text_file(pair_out, dump({{"dist", p.dist().to_rows()}, {"A", a}}));
      }
      json reps = json::array();
      for (const auto& r : gg.representatives())
        reps.push_back({{"birth", r.birth}, {"death", r.death}, {"dim", r.dim}});
      json j = io::diagram_to_json(qd.diagram);
      j["n_offdiag"] = gg.graph().n_offdiag();
      j["max_displacement"] = qd.max_displacement;
      j["snapped_to_diagonal"] = qd.snapped_to_diagonal;
      j["death_cap"] = qd.death_cap;
      j["representatives"] = reps;
      os << dump(j);
    } else if (*loss_exact) {
      const auto g = load_graph(o.pair_path);
      const auto q = quadrature(o, g, loss_exact_mc->count() > 0);
      const auto gamma = io::virtual_from_json(io::read_json_file(o.gamma_path));
      os << dump({{"t", o.t}, {"loss", topo_loss_exact(gamma, o.t, g, q)}, {"quadrature", q.describe()}});
    } else if (*loss_rff) {
      const auto fs = io::frequency_sample_from_json(io::read_json_file(o.fs_path));
      const auto gamma = io::virtual_from_json(io::read_json_file(o.gamma_path));
      os << dump({{"t", fs.t}, {"R", fs.size()}, {"loss", topo_loss_rff(gamma, fs)}});
    } else if (*loss_demo_cmd) {
      LossDemoConfig cfg;
      cfg.seed = require_seed(o, "loss demo");
      cfg.n_masks = o.n_masks;
      cfg.noise_level = o.noise;
      cfg.t = o.demo_t;
      cfg.R = o.R;
      cfg.w_topo = o.w_topo;
      const auto res = loss_demo(cfg);
      write_loss_csv(os, res);
      err << "spearman(gamma_mass, loss_exact) = " << res.spearman_mass_vs_exact << "\n";
    } else if (*slice) {
      const auto g = load_graph(o.pair_path);
      SliceSpec spec;
      spec.resolution = o.resolution;
      if (!o.axes.empty())
        for (auto a : parse_ints(o.axes)) {
          if (a < 0) throw InvalidArgument("slice axes must be nonnegative");
          spec.axes.push_back(static_cast<std::size_t>(a));
        }
      if (!o.base.empty()) spec.base = parse_doubles(o.base);
      if (!o.slice_gamma.empty()) spec.gamma = VirtualDiagram(parse_ints(o.slice_gamma));
      emit_torus_slice(os, o.t, g, spec);
    }
    sink.flush();
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << "\n";
    return kNumeric;
  } catch (const json::exception& e) {
    err << "error: ParseError: " << e.what() << "\n";
    return kValidation;
  }
  return kOk;
}

}  // namespace vpd::cli
