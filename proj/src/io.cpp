#include "accretive/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace accretive {

using nlohmann::json;

json matrix_to_json(const CMatrix& M, const std::string& label) {
  require_square_finite(M, "matrix_to_json");
  const Eigen::Index n = M.rows();
  json data = json::array();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      data.push_back({M(i, j).real(), M(i, j).imag()});
  json out;
  out["n"] = n;
  out["data"] = std::move(data);
  if (!label.empty()) out["label"] = label;
  return out;
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_object())
    raise(ErrorKind::ParseError, "matrix: expected a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer())
    raise(ErrorKind::ParseError, "matrix: field \"n\" must be an integer");
  const long long n = j["n"].get<long long>();
  if (n < 1 || n > 4096)
    raise(ErrorKind::ParseError, "matrix: dimension out of range");
  if (!j.contains("data") || !j["data"].is_array())
    raise(ErrorKind::ParseError, "matrix: field \"data\" must be an array");
  const auto& data = j["data"];
  if (static_cast<long long>(data.size()) != n * n)
    raise(ErrorKind::ParseError,
          "matrix: expected " + std::to_string(n * n) + " entries, got " +
              std::to_string(data.size()));
  CMatrix M(n, n);
  for (long long k = 0; k < n * n; ++k) {
    const auto& e = data[static_cast<size_t>(k)];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
        !e[1].is_number())
      raise(ErrorKind::ParseError,
            "matrix: entry " + std::to_string(k) + " must be [re, im]");
    const double re = e[0].get<double>();
    const double im = e[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im))
      raise(ErrorKind::ParseError,
            "matrix: entry " + std::to_string(k) + " is not finite");
    M(k / n, k % n) = Complex(re, im);
  }
  return M;
}

CMatrix parse_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    raise(ErrorKind::IOError, "cannot open '" + path + "' for reading");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    raise(ErrorKind::ParseError, std::string("'") + path + "': " + e.what());
  }
  return matrix_from_json(j);
}

void serialize_matrix(const CMatrix& M, const std::string& path,
                      const std::string& label) {
  std::ofstream out(path);
  if (!out)
    raise(ErrorKind::IOError, "cannot open '" + path + "' for writing");
  out << matrix_to_json(M, label).dump(2) << "\n";
  if (!out)
    raise(ErrorKind::IOError, "write to '" + path + "' failed");
}

namespace {

GaugeFunction gauge_from_json(const json& j, const char* key) {
  if (!j.is_object() || !j.contains("p"))
    raise(ErrorKind::InvalidSpec,
          std::string("metric: ") + key + " must be an object {\"p\": ...}");
  const auto& p = j["p"];
  if (p.is_string()) {
    if (p.get<std::string>() == "inf")
      return GaugeFunction::p_norm(std::numeric_limits<double>::infinity());
    raise(ErrorKind::InvalidSpec,
          std::string("metric: ") + key + ".p string form must be \"inf\"");
  }
  if (!p.is_number())
    raise(ErrorKind::InvalidSpec, std::string("metric: ") + key + ".p must be a number");
  const double pv = p.get<double>();
  if (!(pv >= 1.0))
    raise(ErrorKind::InvalidSpec, std::string("metric: ") + key + ".p must be >= 1");
  return GaugeFunction::p_norm(pv);
}

json gauge_to_json(const GaugeFunction& phi) {
  json out;
  if (phi.is_p_norm()) {
    if (std::isinf(phi.p()))
      out["p"] = "inf";
    else
      out["p"] = phi.p();
  } else {
    out["name"] = phi.name();
  }
  return out;
}

}  // namespace

json metric_to_json(const MetricConfig& cfg) {
  json out;
  out["phi1"] = gauge_to_json(cfg.phi1);
  out["phi2"] = gauge_to_json(cfg.phi2);
  if (cfg.psi.is_euclidean_sum())
    out["psi"] = "euclidean_sum";
  else if (!std::isnan(cfg.psi.q()))
    out["psi"] = json{{"q", cfg.psi.q()}};
  else
    out["psi"] = json{{"name", cfg.psi.name()}};
  return out;
}

MetricConfig metric_from_json(const json& j) {
  if (!j.is_object())
    raise(ErrorKind::InvalidSpec, "metric: expected a JSON object");
  MetricConfig cfg;
  if (j.contains("phi1")) cfg.phi1 = gauge_from_json(j["phi1"], "phi1");
  if (j.contains("phi2")) cfg.phi2 = gauge_from_json(j["phi2"], "phi2");
  if (j.contains("psi")) {
    const auto& p = j["psi"];
    if (p.is_string()) {
      if (p.get<std::string>() != "euclidean_sum")
        raise(ErrorKind::InvalidSpec,
              "metric: unknown psi \"" + p.get<std::string>() + "\"");
      cfg.psi = ProductFunction::euclidean_sum();
    } else if (p.is_object() && p.contains("q") && p["q"].is_number()) {
      const double q = p["q"].get<double>();
      if (!(q > 1.0))
        raise(ErrorKind::InvalidSpec, "metric: psi.q must be > 1");
      cfg.psi = ProductFunction::power_mean(q);
    } else {
      raise(ErrorKind::InvalidSpec,
            "metric: psi must be \"euclidean_sum\" or {\"q\": q}");
    }
  }
  return cfg;
}

MetricConfig parse_metric(const std::string& arg) {
  const size_t first = arg.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || arg == "default") return MetricConfig{};
  if (arg[first] == '{') {
    json j;
    try {
      j = json::parse(arg);
    } catch (const json::parse_error& e) {
      raise(ErrorKind::ParseError, std::string("metric: ") + e.what());
    }
    return metric_from_json(j);
  }
  std::ifstream in(arg);
  if (!in)
    raise(ErrorKind::IOError, "cannot open metric file '" + arg + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    raise(ErrorKind::ParseError, std::string("'") + arg + "': " + e.what());
  }
  return metric_from_json(j);
}

}  // namespace accretive
