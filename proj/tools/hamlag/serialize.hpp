#pragma once

// JSON records for resolved constants, residual reports, closure
// certificates and oracle runs. Field order is fixed, so dumping a parsed
// document reproduces it byte for byte.

#include <string>
#include <vector>

#include <json.hpp>

#include "hamlag/oracle.hpp"
#include "hamlag/params.hpp"
#include "hamlag/torus.hpp"
#include "hamlag/verify.hpp"

namespace hamlag::cli {

using Json = nlohmann::ordered_json;

Json to_json(const params::SeedParameters& seed);
Json to_json(const params::ResolvedConstants& k);
Json to_json(const verify::ResidualEntry& entry);
Json to_json(const verify::ResidualReport& report);
Json to_json(const torus::ClosureCertificate& cert);
Json to_json(const std::vector<torus::ClosureCertificate>& certs);
Json to_json(const oracle::OracleResult& result);

/// Two-space indented dump followed by a newline.
std::string dump(const Json& j);

/// %.17g-style decimal (round-trips every double), '.' separator regardless
/// of the global locale. Non-finite values print as nan/inf.
std::string format_number(double value);

/// Writes to `path + ".tmp"` and renames over `path`.
void write_atomically(const std::string& path, const std::string& contents);

}  // namespace hamlag::cli
