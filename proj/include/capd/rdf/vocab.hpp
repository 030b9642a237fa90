#pragma once

#include <string>
#include <string_view>

// Well-known namespaces and term IRIs used across the engine.
namespace capd::vocab {

inline constexpr std::string_view kBf   = "http://purl.org/ArtIAMAS/battlefield#";
inline constexpr std::string_view kSosa = "http://www.w3.org/ns/sosa/phenomenonTime#";
inline constexpr std::string_view kStix = "http://purl.org/cyber/stix/mitigates#";
inline constexpr std::string_view kRdf  = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kXsd  = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kOwl  = "http://www.w3.org/2002/07/owl#";

inline std::string bf(std::string_view local)   { return std::string(kBf) + std::string(local); }
inline std::string sosa(std::string_view local) { return std::string(kSosa) + std::string(local); }
inline std::string stix(std::string_view local) { return std::string(kStix) + std::string(local); }
inline std::string rdf(std::string_view local)  { return std::string(kRdf) + std::string(local); }
inline std::string rdfs(std::string_view local) { return std::string(kRdfs) + std::string(local); }
inline std::string xsd(std::string_view local)  { return std::string(kXsd) + std::string(local); }

inline const std::string kRdfType       = rdf("type");
inline const std::string kSubClassOf    = rdfs("subClassOf");
inline const std::string kDomain        = rdfs("domain");
inline const std::string kRange         = rdfs("range");
inline const std::string kRdfsClass     = rdfs("Class");
inline const std::string kRdfProperty   = rdf("Property");
inline const std::string kEquivalentProperty = std::string(kOwl) + "equivalentProperty";

inline const std::string kXsdString  = xsd("string");
inline const std::string kXsdInteger = xsd("integer");
inline const std::string kXsdDecimal = xsd("decimal");
inline const std::string kXsdDouble  = xsd("double");
inline const std::string kXsdBoolean = xsd("boolean");

}  // namespace capd::vocab
