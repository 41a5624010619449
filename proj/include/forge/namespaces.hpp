#pragma once

#include <map>
#include <string>
#include <string_view>

namespace forge::ns {

inline constexpr std::string_view kRdf =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kProv = "http://www.w3.org/ns/prov#";
inline constexpr std::string_view kDcterms = "http://purl.org/dc/terms/";

inline constexpr std::string_view kVstoi = "http://hadatac.org/ont/vstoi#";
inline constexpr std::string_view kHasco = "http://hadatac.org/ont/hasco#";
inline constexpr std::string_view kHacito = "http://hadatac.org/ont/hacito#";
inline constexpr std::string_view kQoe = "http://hadatac.org/ont/qoe#";
inline constexpr std::string_view kQoeM = "http://hadatac.org/ont/qoe-m#";
inline constexpr std::string_view kCcsv = "http://hadatac.org/ont/ccsv#";

// Namespace for nodes minted by ingestion and serialization (studies,
// deployments, datasets).
inline constexpr std::string_view kKg = "http://hadatac.org/kg/";

inline std::string iri(std::string_view ns, std::string_view local) {
  std::string out(ns);
  out += local;
  return out;
}

// Prefix label -> namespace for every vocabulary above.
const std::map<std::string, std::string>& standard_prefixes();

// Expands "prefix:local" using standard_prefixes(); absolute IRIs (containing
// "://") pass through unchanged. Throws UnknownPrefixError.
std::string expand(std::string_view name);

// Text after the last '#' or '/', e.g. "Bicycle-Share_Trip".
std::string local_name(std::string_view iri);

// Everything up to and including the last '#' or '/'.
std::string namespace_of(std::string_view iri);

}  // namespace forge::ns
