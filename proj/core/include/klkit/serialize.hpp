#pragma once

#include <string>
#include <vector>

#include "klkit/asymptotics.hpp"
#include "klkit/bounds.hpp"
#include "klkit/summability.hpp"

namespace klkit {

// JSON documents are emitted with sorted keys and two-space indentation;
// doubles use the shortest round-trip representation, so parsing an emitted
// document and re-serializing it reproduces it byte for byte.

std::string catalog_to_json(const std::vector<BoundDescriptor>& catalog);
std::vector<BoundDescriptor> catalog_from_json(const std::string& text);

std::string certificate_to_json(const BoundCertificate& c);
BoundCertificate certificate_from_json(const std::string& text);
std::string certificates_to_json(const std::vector<BoundCertificate>& cs);
std::vector<BoundCertificate> certificates_from_json(const std::string& text);

std::string expansion_reports_to_json(const std::vector<ExpansionReport>& reports);
std::vector<ExpansionReport> expansion_reports_from_json(const std::string& text);

std::string summability_report_to_json(const SummabilityReport& r);
SummabilityReport summability_report_from_json(const std::string& text);

/// Re-serializes any JSON document in the canonical form above.
std::string canonical_json(const std::string& text);

/// Shortest representation that parses back to the same double.
std::string format_double(double v);

/// RFC 4180 quoting: fields containing a comma, quote, CR or LF are quoted
/// and embedded quotes doubled.
std::string csv_escape(const std::string& field);
std::string csv_row(const std::vector<std::string>& fields);

std::vector<std::string> expansion_csv_header();
std::vector<std::string> expansion_csv_fields(const ExpansionReport& r);

}  // namespace klkit
