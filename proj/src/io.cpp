#include "vpd/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "vpd/error.hpp"

namespace vpd::io {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << text;
}

namespace {

// Wraps json type errors so callers only ever see vpd errors.
template <class F>
auto parse_field(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

MetricPair metric_pair_from_json(const json& j) {
  auto [rows, a] = parse_field("metric pair", [&] {
    return std::make_pair(j.at("dist").get<std::vector<std::vector<double>>>(),
                          j.at("A").get<std::vector<std::size_t>>());
  });
  return MetricPair::build(DistanceMatrix::from_rows(rows), std::move(a));
}

json matrix_to_json(const DistanceMatrix& m) { return m.to_rows(); }

Diagram diagram_from_json(const json& j, std::size_t n_offdiag) {
  Diagram d(n_offdiag);
  const auto counts = parse_field("diagram", [&] {
    return j.at("counts").get<std::map<std::string, std::int64_t>>();
  });
  for (const auto& [key, m] : counts) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(key, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used != key.size() || key.empty()) throw ParseError("bad vertex key '" + key + "'");
    if (v >= n_offdiag) {
      throw GraphMismatch("vertex " + key + " is not an off-diagonal vertex (N=" +
                          std::to_string(n_offdiag) + ")");
    }
    if (m < 0) throw InvalidArgument("negative multiplicity at vertex " + key);
    d.counts[v] += m;
  }
  return d;
}

json diagram_to_json(const Diagram& d) {
  json counts = json::object();
  for (std::size_t v = 0; v < d.dim(); ++v)
    if (d.counts[v] != 0) counts[std::to_string(v)] = d.counts[v];
  return {{"counts", counts}};
}

VirtualDiagram virtual_from_json(const json& j) {
  return VirtualDiagram(
      parse_field("virtual diagram", [&] { return j.at("coeffs").get<std::vector<std::int64_t>>(); }));
}

json virtual_to_json(const VirtualDiagram& v) { return {{"coeffs", v.coeffs}}; }

json matching_to_json(const Matching& m) {
  json pairs = json::array();
  for (const auto& p : m.pairs) {
    pairs.push_back({{"source", p.source}, {"target", p.target}, {"multiplicity", p.multiplicity}});
  }
  return {{"total_cost", m.total_cost}, {"pairs", pairs}};
}

json raw_diagram_to_json(const RawDiagram& rd) {
  json pts = json::array();
  for (const auto& p : rd.points) {
    json death = p.essential() ? json("inf") : json(p.death);
    pts.push_back({{"birth", p.birth}, {"death", death}, {"dim", p.dim}});
  }
  return {{"points", pts}};
}

RawDiagram raw_diagram_from_json(const json& j) {
  return parse_field("raw diagram", [&] {
    RawDiagram rd;
    for (const auto& p : j.at("points")) {
      const auto& d = p.at("death");
      const double death = d.is_string() && d.get<std::string>() == "inf"
                               ? std::numeric_limits<double>::infinity()
                               : d.get<double>();
      rd.points.push_back({p.at("birth").get<double>(), death, p.at("dim").get<int>()});
    }
    return rd;
  });
}

json frequency_sample_to_json(const FrequencySample& fs) {
  json thetas = json::array();
  for (const auto& th : fs.thetas) thetas.push_back(th.values());
  const auto& m = fs.meta;
  return {{"dim", fs.dim},
          {"t", fs.t},
          {"R", fs.size()},
          {"mass_estimate", fs.mass_estimate},
          {"mass_std_error", fs.mass_std_error},
          {"sampler_meta",
           {{"mode", to_string(m.mode)},
            {"seed", m.seed},
            {"burn_in", m.burn_in},
            {"thinning", m.thinning},
            {"grid_cells", m.grid_cells},
            {"mass_samples", m.mass_samples},
            {"acceptance_rate", m.acceptance_rate},
            {"proposal_step", m.proposal_step}}},
          {"thetas", thetas}};
}

FrequencySample frequency_sample_from_json(const json& j) {
  auto fs = parse_field("frequency sample", [&] {
    FrequencySample fs;
    fs.dim = j.at("dim").get<std::size_t>();
    fs.t = j.at("t").get<double>();
    fs.mass_estimate = j.at("mass_estimate").get<double>();
    fs.mass_std_error = j.value("mass_std_error", 0.0);
    const auto& m = j.at("sampler_meta");
    fs.meta.mode = parse_sampler_mode(m.at("mode").get<std::string>());
    fs.meta.seed = m.at("seed").get<std::uint64_t>();
    fs.meta.burn_in = m.value("burn_in", std::size_t{0});
    fs.meta.thinning = m.value("thinning", std::size_t{0});
    fs.meta.grid_cells = m.value("grid_cells", std::size_t{0});
    fs.meta.mass_samples = m.value("mass_samples", std::size_t{0});
    fs.meta.acceptance_rate = m.value("acceptance_rate", 1.0);
    fs.meta.proposal_step = m.value("proposal_step", 0.0);
    for (const auto& th : j.at("thetas")) fs.thetas.emplace_back(th.get<std::vector<double>>());
    return fs;
  });
  if (fs.thetas.empty()) throw InvalidArgument("frequency sample has no frequencies");
  for (const auto& th : fs.thetas)
    if (th.dim() != fs.dim) throw DimensionMismatch("frequency has the wrong dimension");
  if (!(fs.mass_estimate > 0.0 && fs.mass_estimate <= 1.0)) {
    throw InvalidArgument("mass_estimate must lie in (0, 1]");
  }
  return fs;
}

}  // namespace vpd::io
