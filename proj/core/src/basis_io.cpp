#include "uebk/basis_io.hpp"

#include "uebk/error.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace uebk {

namespace {

using Json = nlohmann::ordered_json;

Json complex_array(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

[[noreturn]] void structure_error(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ParseError, where + ": " + what);
}

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) structure_error(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) structure_error(where, std::string("missing key '") + key + "'");
  return *it;
}

int as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) structure_error(where, "expected an integer");
  return j.get<int>();
}

double as_double(const Json& j, const std::string& where) {
  if (!j.is_number()) structure_error(where, "expected a number");
  return j.get<double>();
}

ComplexVector parse_complex_array(const Json& j, Eigen::Index expected, const std::string& where) {
  if (!j.is_array()) structure_error(where, "expected an array of [re, im] pairs");
  if (static_cast<Eigen::Index>(j.size()) != expected) {
    std::ostringstream why;
    why << "expected " << expected << " amplitudes, found " << j.size();
    structure_error(where, why.str());
  }
  ComplexVector v(expected);
  for (Eigen::Index i = 0; i < expected; ++i) {
    const Json& pair = j[static_cast<std::size_t>(i)];
    const std::string at = where + "[" + std::to_string(i) + "]";
    if (!pair.is_array() || pair.size() != 2) structure_error(at, "expected [re, im]");
    v(i) = Complex(as_double(pair[0], at), as_double(pair[1], at));
  }
  return v;
}

Json form_json(const SchmidtForm& f) {
  Json frames = Json::array();
  for (const auto& frame : f.frames) {
    Json cols = Json::array();
    for (Eigen::Index c = 0; c < frame.cols(); ++c) cols.push_back(complex_array(frame.col(c)));
    frames.push_back(std::move(cols));
  }
  Json out;
  out["coefficients"] = f.coefficients;
  out["frames"] = std::move(frames);
  return out;
}

SchmidtForm parse_form(const Json& j, const Dims& dims, const std::string& where) {
  SchmidtForm f;
  const Json& coeffs = field(j, "coefficients", where);
  if (!coeffs.is_array() || coeffs.empty()) structure_error(where, "coefficients must be a nonempty array");
  for (std::size_t i = 0; i < coeffs.size(); ++i) f.coefficients.push_back(as_double(coeffs[i], where));
  const Json& frames = field(j, "frames", where);
  if (!frames.is_array() || frames.size() != dims.size()) structure_error(where, "one frame per party expected");
  for (std::size_t s = 0; s < dims.size(); ++s) {
    const std::string at = where + ".frames[" + std::to_string(s) + "]";
    if (!frames[s].is_array() || frames[s].size() != f.coefficients.size()) {
      structure_error(at, "one column per coefficient expected");
    }
    ComplexMatrix frame(dims[s], static_cast<Eigen::Index>(f.coefficients.size()));
    for (std::size_t c = 0; c < frames[s].size(); ++c) {
      frame.col(static_cast<Eigen::Index>(c)) = parse_complex_array(frames[s][c], dims[s], at);
    }
    f.frames.push_back(std::move(frame));
  }
  return f;
}

}  // namespace

VerificationSummary VerificationSummary::from(const VerificationReport& report) {
  VerificationSummary s;
  s.orthonormality_residual = report.orthonormality_residual;
  s.members_ok = report.members_ok();
  s.verdict = std::string(to_string(report.unextendibility.kind));
  s.certificate = report.unextendibility.certificate;
  s.best_objective = report.unextendibility.best_objective;
  s.restarts = report.unextendibility.restarts;
  s.seed = report.unextendibility.seed;
  s.exit_code = report.exit_code();
  return s;
}

std::string serialize(const BasisCandidate& b, const std::optional<VerificationSummary>& verification) {
  Json j;
  j["format_version"] = kBasisFormatVersion;
  j["dims"] = b.dims;
  j["k"] = b.k;
  j["special"] = b.claimed_special;
  Json members = Json::array();
  for (const auto& m : b.members) members.push_back(complex_array(m.amplitudes()));
  j["members"] = std::move(members);
  j["provenance"] = Json::object();
  for (const auto& [key, value] : b.provenance) j["provenance"][key] = value;
  if (!b.forms.empty()) {
    Json forms = Json::array();
    for (const auto& f : b.forms) forms.push_back(f ? form_json(*f) : Json(nullptr));
    j["schmidt_forms"] = std::move(forms);
  }
  if (verification) {
    Json v;
    v["orthonormality_residual"] = verification->orthonormality_residual;
    v["members_ok"] = verification->members_ok;
    v["verdict"] = verification->verdict;
    v["certificate"] = verification->certificate;
    v["best_objective"] = verification->best_objective;
    v["restarts"] = verification->restarts;
    v["seed"] = verification->seed;
    v["exit_code"] = verification->exit_code;
    j["verification"] = std::move(v);
  }
  return j.dump(2) + "\n";
}

ParsedBasis parse(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::ostringstream why;
    why << "malformed JSON at byte " << e.byte << ": " << e.what();
    throw Error(ErrorKind::ParseError, why.str());
  }
  const int version = as_int(field(j, "format_version", "root"), "format_version");
  if (version != kBasisFormatVersion) {
    throw Error(ErrorKind::InvalidBasisFile, "unsupported format_version " + std::to_string(version));
  }

  ParsedBasis out;
  BasisCandidate& b = out.basis;
  const Json& dims = field(j, "dims", "root");
  if (!dims.is_array() || dims.empty()) structure_error("dims", "expected a nonempty integer array");
  for (std::size_t i = 0; i < dims.size(); ++i) b.dims.push_back(as_int(dims[i], "dims"));
  for (int d : b.dims) {
    if (d < 2) throw Error(ErrorKind::InvalidBasisFile, "party dimension below 2");
  }
  b.k = as_int(field(j, "k", "root"), "k");
  const Json& special = field(j, "special", "root");
  if (!special.is_boolean()) structure_error("special", "expected a boolean");
  b.claimed_special = special.get<bool>();

  const Eigen::Index total = total_dimension(b.dims);
  const Json& members = field(j, "members", "root");
  if (!members.is_array()) structure_error("members", "expected an array");
  for (std::size_t i = 0; i < members.size(); ++i) {
    const std::string where = "members[" + std::to_string(i) + "]";
    ComplexVector amps = parse_complex_array(members[i], total, where);
    try {
      b.members.emplace_back(b.dims, std::move(amps));
    } catch (const Error& e) {
      throw Error(ErrorKind::InvalidBasisFile, where + ": " + e.what());
    }
  }

  const Json& provenance = field(j, "provenance", "root");
  if (!provenance.is_object()) structure_error("provenance", "expected an object");
  for (const auto& [key, value] : provenance.items()) {
    if (!value.is_string()) structure_error("provenance." + key, "expected a string");
    b.provenance[key] = value.get<std::string>();
  }

  if (auto it = j.find("schmidt_forms"); it != j.end()) {
    if (!it->is_array() || it->size() != members.size()) structure_error("schmidt_forms", "one entry per member");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const Json& f = (*it)[i];
      if (f.is_null()) {
        b.forms.emplace_back(std::nullopt);
      } else {
        b.forms.emplace_back(parse_form(f, b.dims, "schmidt_forms[" + std::to_string(i) + "]"));
      }
    }
  }

  if (auto it = j.find("verification"); it != j.end()) {
    const Json& v = *it;
    VerificationSummary s;
    s.orthonormality_residual = as_double(field(v, "orthonormality_residual", "verification"), "verification");
    const Json& ok = field(v, "members_ok", "verification");
    if (!ok.is_boolean()) structure_error("verification.members_ok", "expected a boolean");
    s.members_ok = ok.get<bool>();
    const Json& verdict = field(v, "verdict", "verification");
    const Json& cert = field(v, "certificate", "verification");
    if (!verdict.is_string() || !cert.is_string()) structure_error("verification", "expected strings");
    s.verdict = verdict.get<std::string>();
    s.certificate = cert.get<std::string>();
    s.best_objective = as_double(field(v, "best_objective", "verification"), "verification");
    s.restarts = as_int(field(v, "restarts", "verification"), "verification");
    const Json& seed = field(v, "seed", "verification");
    if (!seed.is_number_unsigned() && !seed.is_number_integer()) structure_error("verification.seed", "expected an integer");
    s.seed = seed.get<std::uint64_t>();
    s.exit_code = as_int(field(v, "exit_code", "verification"), "verification");
    out.verification = s;
  }

  try {
    b.check_invariants();
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidBasisFile, e.what());
  }
  return out;
}

}  // namespace uebk
