#include "risopt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "risopt/io_util.hpp"

namespace risopt {

namespace {

// Uniform double in [0, 1) from the top 53 bits of the generator output.
// Avoids std::uniform_real_distribution so streams are identical on every
// standard library.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct EffectiveElements {
  double la_nh, ca_pf, lb_nh, cb_pf, m_nh, r11, r22;
};

EffectiveElements elements_at(const OracleConfig& cfg, const GeometryParams& g) {
  return {
      cfg.la0 + cfg.la1 * (g.w1 + g.l3),
      cfg.ca0 + cfg.ca1 * (g.w2 * g.l1),
      cfg.lb0 + cfg.lb1 * g.w3,
      cfg.cb0 + cfg.cb1 * g.l2,
      cfg.m0 + cfg.m1 * std::sqrt(g.w1 * g.w3),
      cfg.r11_scale * (1.0 + g.w1 / 24.0),
      cfg.r22,
  };
}

void require_positive_elements(const EffectiveElements& e,
                               const GeometryParams& g) {
  std::ostringstream msg;
  if (!(e.la_nh > 0.0))
    msg << "effective La = " << e.la_nh << " nH";
  else if (!(e.ca_pf > 0.0))
    msg << "effective Ca = " << e.ca_pf << " pF";
  else if (!(e.lb_nh > 0.0))
    msg << "effective Lb = " << e.lb_nh << " nH";
  else if (!(e.cb_pf > 0.0))
    msg << "effective Cb = " << e.cb_pf << " pF";
  else if (!(e.m_nh > 0.0))
    msg << "effective M = " << e.m_nh << " nH";
  else if (!(e.r11 >= 0.0))
    msg << "effective r11 = " << e.r11 << " ohm";
  else if (!(e.r22 >= 0.0))
    msg << "r22 = " << e.r22 << " ohm";
  else
    return;
  msg << " is not physical at geometry (" << g.w1 << ", " << g.w2 << ", "
      << g.w3 << ", " << g.l1 << ", " << g.l2 << ", " << g.l3 << ")";
  throw domain_error(msg.str());
}

// Band membership with one-ulp-scale slack so grid endpoints computed in
// floating point do not get rejected.
bool in_band(const OracleConfig& cfg, double freq_ghz) {
  const double slack = 1e-9;
  return freq_ghz >= cfg.f_lo_ghz - slack && freq_ghz <= cfg.f_hi_ghz + slack;
}

const std::array<std::pair<const char*, double OracleConfig::*>, 17>
    kOracleKeys = {{
        {"la0", &OracleConfig::la0},
        {"la1", &OracleConfig::la1},
        {"ca0", &OracleConfig::ca0},
        {"ca1", &OracleConfig::ca1},
        {"r11_scale", &OracleConfig::r11_scale},
        {"lb0", &OracleConfig::lb0},
        {"lb1", &OracleConfig::lb1},
        {"cb0", &OracleConfig::cb0},
        {"cb1", &OracleConfig::cb1},
        {"r22", &OracleConfig::r22},
        {"m0", &OracleConfig::m0},
        {"m1", &OracleConfig::m1},
        {"f_lo_ghz", &OracleConfig::f_lo_ghz},
        {"f_hi_ghz", &OracleConfig::f_hi_ghz},
        {"er", &OracleConfig::er},
        {"tan_delta", &OracleConfig::tan_delta},
        {"thickness_mm", &OracleConfig::thickness_mm},
    }};

}  // namespace

void OracleConfig::validate(const GeometryBounds& bounds) const {
  bounds.validate();
  if (!(f_lo_ghz > 0.0) || !(f_hi_ghz >= f_lo_ghz))
    throw domain_error("oracle band must satisfy 0 < f_lo <= f_hi");
  // The effective elements are monotone in each geometry field (the sqrt
  // coupling is monotone in w1*w3), so checking the two box corners that
  // extremize each element is sufficient.
  const GeometryParams lo = GeometryParams::from_array(bounds.lo);
  const GeometryParams hi = GeometryParams::from_array(bounds.hi);
  require_positive_elements(elements_at(*this, lo), lo);
  require_positive_elements(elements_at(*this, hi), hi);
}

ImpedanceMatrix synth_impedance(const OracleConfig& cfg, const GeometryParams& g,
                                double freq_ghz, const GeometryBounds& bounds) {
  bounds.require_inside(g);
  if (!in_band(cfg, freq_ghz)) {
    std::ostringstream msg;
    msg << "frequency " << freq_ghz << " GHz outside oracle band ["
        << cfg.f_lo_ghz << ", " << cfg.f_hi_ghz << "] GHz";
    throw domain_error(msg.str());
  }
  const EffectiveElements e = elements_at(cfg, g);
  require_positive_elements(e, g);
  const double w = angular_frequency_rad_s(freq_ghz);
  const double x11 = w * e.la_nh * 1e-9 - 1.0 / (w * e.ca_pf * 1e-12);
  const double x22 = w * e.lb_nh * 1e-9 - 1.0 / (w * e.cb_pf * 1e-12);
  const double x12 = w * e.m_nh * 1e-9;
  return ImpedanceMatrix::reciprocal({e.r11, x11}, {0.0, x12}, {e.r22, x22},
                                     freq_ghz);
}

void FrequencyGrid::validate() const {
  if (n_freq < 1) throw domain_error("frequency grid needs n_freq >= 1");
  if (!(f_lo_ghz > 0.0)) throw domain_error("frequency grid needs f_lo > 0 GHz");
  if (!(f_hi_ghz >= f_lo_ghz))
    throw domain_error("frequency grid needs f_hi >= f_lo");
  if (n_freq == 1 && f_hi_ghz != f_lo_ghz)
    throw domain_error("a single-point frequency grid needs f_lo == f_hi");
}

double FrequencyGrid::point(int i) const {
  if (n_freq == 1) return f_lo_ghz;
  return f_lo_ghz + (f_hi_ghz - f_lo_ghz) * (static_cast<double>(i) /
                                             static_cast<double>(n_freq - 1));
}

void generate_dataset(const OracleConfig& cfg, int n_geometries,
                      const FrequencyGrid& grid, std::uint64_t seed,
                      const std::function<void(const DatasetRecord&)>& sink,
                      const GeometryBounds& bounds) {
  if (n_geometries < 1) throw domain_error("dataset needs n_geometries >= 1");
  grid.validate();
  cfg.validate(bounds);
  if (grid.f_lo_ghz < cfg.f_lo_ghz - 1e-9 || grid.f_hi_ghz > cfg.f_hi_ghz + 1e-9)
    throw domain_error("frequency grid leaves the oracle band");

  std::mt19937_64 rng(seed);
  for (int n = 0; n < n_geometries; ++n) {
    std::array<double, kGeometryDim> v{};
    for (std::size_t i = 0; i < kGeometryDim; ++i)
      v[i] = bounds.lo[i] + (bounds.hi[i] - bounds.lo[i]) * uniform01(rng);
    const GeometryParams g = GeometryParams::from_array(v);
    for (int fi = 0; fi < grid.n_freq; ++fi) {
      const double f = grid.point(fi);
      DatasetRecord rec;
      rec.geom = g;
      rec.freq_ghz = f;
      rec.z = synth_impedance(cfg, g, f, bounds).to_components();
      sink(rec);
    }
  }
}

std::vector<DatasetRecord> generate_dataset(const OracleConfig& cfg,
                                            int n_geometries,
                                            const FrequencyGrid& grid,
                                            std::uint64_t seed,
                                            const GeometryBounds& bounds) {
  std::vector<DatasetRecord> records;
  records.reserve(static_cast<std::size_t>(n_geometries) *
                  static_cast<std::size_t>(grid.n_freq));
  generate_dataset(
      cfg, n_geometries, grid, seed,
      [&records](const DatasetRecord& rec) { records.push_back(rec); }, bounds);
  return records;
}

OracleConfig oracle_config_from_json(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("oracle config is not valid JSON: ") + e.what(),
                      0);
  }
  if (!doc.is_object())
    throw parse_error("oracle config must be a flat JSON object", 0);
  OracleConfig cfg;
  for (const auto& [key, value] : doc.items()) {
    bool known = false;
    for (const auto& [name, member] : kOracleKeys) {
      if (key == name) {
        if (!value.is_number())
          throw parse_error("oracle config key '" + key + "' must be a number", 0);
        cfg.*member = value.get<double>();
        known = true;
        break;
      }
    }
    if (!known)
      throw parse_error("unknown oracle config key '" + key + "'", 0);
  }
  return cfg;
}

OracleConfig load_oracle_config(const std::string& path) {
  return oracle_config_from_json(read_text_file(path));
}

std::string oracle_config_to_json(const OracleConfig& cfg) {
  nlohmann::json doc;
  for (const auto& [name, member] : kOracleKeys) doc[name] = cfg.*member;
  return doc.dump(2) + "\n";
}

void write_dataset_line(std::ostream& out, const DatasetRecord& rec) {
  nlohmann::json line;
  line["geom"] = rec.geom.to_array();
  line["freq_ghz"] = rec.freq_ghz;
  line["z"] = rec.z;
  out << line.dump() << '\n';
}

std::vector<DatasetRecord> parse_dataset_jsonl(std::istream& in) {
  std::vector<DatasetRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      std::ostringstream msg;
      msg << "dataset line " << line_no << " is not valid JSON: " << e.what();
      throw parse_error(msg.str(), line_no);
    }
    const bool shape_ok = doc.is_object() && doc.contains("geom") &&
                          doc.contains("freq_ghz") && doc.contains("z") &&
                          doc["geom"].is_array() && doc["geom"].size() == 6 &&
                          doc["freq_ghz"].is_number() && doc["z"].is_array() &&
                          doc["z"].size() == 8;
    if (!shape_ok) {
      std::ostringstream msg;
      msg << "dataset line " << line_no
          << " must be {\"geom\": [6 numbers], \"freq_ghz\": number, "
             "\"z\": [8 numbers]}";
      throw parse_error(msg.str(), line_no);
    }
    DatasetRecord rec;
    std::array<double, kGeometryDim> g{};
    for (std::size_t i = 0; i < kGeometryDim; ++i) {
      if (!doc["geom"][i].is_number()) {
        std::ostringstream msg;
        msg << "dataset line " << line_no << " geom[" << i << "] is not a number";
        throw parse_error(msg.str(), line_no);
      }
      g[i] = doc["geom"][i].get<double>();
    }
    rec.geom = GeometryParams::from_array(g);
    rec.freq_ghz = doc["freq_ghz"].get<double>();
    for (std::size_t i = 0; i < 8; ++i) {
      if (!doc["z"][i].is_number()) {
        std::ostringstream msg;
        msg << "dataset line " << line_no << " z[" << i << "] is not a number";
        throw parse_error(msg.str(), line_no);
      }
      rec.z[i] = doc["z"][i].get<double>();
    }
    records.push_back(rec);
  }
  return records;
}

std::vector<DatasetRecord> read_dataset_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open dataset: " + path);
  return parse_dataset_jsonl(in);
}

}  // namespace risopt
