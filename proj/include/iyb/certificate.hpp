#pragma once

// Certificates: self-contained JSON records of a structure (kind
// "module-structure") or of a complementing left ideal ("ideal-complement").
// The text form is canonical: keys sorted, no whitespace, one trailing newline.

#include <optional>
#include <string>

#include "iyb/structure.hpp"
#include "json.hpp"

namespace iyb {

inline constexpr const char* kCertificateFormat = "iyb-cert/1";

struct Provenance {
  std::string builder;
  nlohmann::json params = nlohmann::json::object();
  std::optional<u64> seed;
};

/// modulus = 0 records the exponent of M.
nlohmann::json structure_certificate(const IYBStructure& s, const Provenance& prov, u64 modulus = 0);
/// `action`, when given, is an action on G under which the ideal is stable.
nlohmann::json ideal_certificate(const GroupRing& r, const HowellBasis& ideal, const GroupAction* action,
                                 const Provenance& prov);

std::string canonical_text(const nlohmann::json& cert);
void write_certificate(const nlohmann::json& cert, const std::string& path);
/// Throws ParseError on unreadable or malformed JSON.
nlohmann::json read_certificate(const std::string& path);
nlohmann::json parse_certificate(const std::string& text);

struct CertificateCheck {
  std::string kind;
  Report report;
  std::optional<IYBStructure> structure;  // set when the payload could be rebuilt
  std::optional<TransversalReport> transversal;
};
/// Rebuilds everything from the certificate and runs the full verifier.
/// Malformed certificates throw ParseError; failed checks come back in report.
CertificateCheck verify_certificate(const nlohmann::json& cert, const VerifyOptions& opt = {});

}  // namespace iyb
