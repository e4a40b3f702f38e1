#include "serialize.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "hamlag/error.hpp"

namespace hamlag::cli {

Json to_json(const params::SeedParameters& seed) {
  Json j;
  j["alpha"] = {seed.alpha[0], seed.alpha[1], seed.alpha[2]};
  j["a1"] = seed.a1;
  j["a2"] = seed.a2;
  j["c2_root_branch"] = std::string(params::to_string(seed.c2_root_branch));
  j["c2_sign"] = std::string(params::to_string(seed.c2_sign));
  return j;
}

Json to_json(const params::ResolvedConstants& k) {
  Json j;
  j["seed"] = to_json(k.seed);
  j["b"] = k.b;
  j["c"] = k.c;
  j["c1"] = k.c1;
  j["c2"] = k.c2;
  j["a"] = k.a;
  j["a3"] = k.a3;
  j["m"] = k.m.value();
  j["T"] = k.T;
  return j;
}

Json to_json(const verify::ResidualEntry& e) {
  Json j;
  j["check_name"] = e.name;
  j["max_abs_residual"] = e.max_abs_residual;
  j["grid"] = e.grid;
  j["tolerance"] = e.tolerance;
  j["pass"] = e.pass;
  j["informational"] = e.informational;
  return j;
}

Json to_json(const verify::ResidualReport& report) {
  Json checks = Json::array();
  for (const auto& e : report.entries) checks.push_back(to_json(e));
  Json j;
  j["pass"] = report.all_pass();
  j["checks"] = std::move(checks);
  return j;
}

namespace {

Json rational(const torus::RationalApprox& r) {
  Json j;
  j["p"] = r.fraction.p;
  j["q"] = r.fraction.q;
  j["error"] = r.error;
  return j;
}

}  // namespace

Json to_json(const torus::ClosureCertificate& c) {
  Json j;
  j["seed"] = to_json(c.seed);
  j["T"] = c.T;
  j["lambda1"] = c.lambda1;
  j["lambda2"] = c.lambda2;
  j["approx1"] = rational(c.approx1);
  j["approx2"] = rational(c.approx2);
  j["N"] = c.N;
  j["tau"] = c.tau;
  j["period_e1"] = {c.period_e1[0], c.period_e1[1]};
  j["nominal_e1_closure_error"] = c.nominal_e1_closure_error;
  j["y_period"] = c.y_period;
  j["period_e2"] = {c.period_e2[0], c.period_e2[1]};
  j["predicted_phase_error"] = c.predicted_phase_error;
  j["closure_error"] = c.closure_error;
  return j;
}

Json to_json(const std::vector<torus::ClosureCertificate>& certs) {
  Json list = Json::array();
  for (const auto& c : certs) list.push_back(to_json(c));
  Json j;
  j["count"] = certs.size();
  j["certificates"] = std::move(list);
  return j;
}

Json to_json(const oracle::OracleResult& r) {
  Json j;
  j["x0"] = r.x0;
  j["step"] = r.step;
  j["steps"] = r.steps;
  j["max_error"] = r.max_error;
  j["max_energy_drift"] = r.max_energy_drift;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_atomically(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::ConfigError, "cannot write '" + tmp + "'");
    out << contents;
    if (!out.flush()) throw Error(ErrorKind::ConfigError, "write failed for '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::ConfigError, "cannot rename onto '" + path + "': " + ec.message());
}

}  // namespace hamlag::cli
