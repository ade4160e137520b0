#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latsep/instance.hpp"
#include "latsep/serialize.hpp"

namespace latsep {

/// One fixture: an instance plus the claims made about it. Each claim is an
/// object {"check": kind, ...parameters, "expect": value, "because": note}.
struct CatalogEntry {
  std::string id;
  std::string title;
  bool derived = false;  // found by the explorer rather than transcribed
  Json instance;
  std::vector<Json> claims;
};

struct ClaimResult {
  std::string entry;
  std::string check;
  Json expected;
  Json actual;
  bool passed = false;
  Json detail;  // witnesses and certificates backing `actual`
  std::string because;
};

struct CatalogReport {
  std::vector<std::string> entries;
  std::vector<ClaimResult> results;
  double seconds = 0;

  [[nodiscard]] bool all_passed() const;
  [[nodiscard]] std::size_t failures() const;
};

/// The fixture file compiled into the library.
const Json& builtin_catalog_json();

/// Throws ParseError on a malformed catalog.
std::vector<CatalogEntry> load_catalog(const Json& catalog);

/// True when `id` matches `pattern`; '*' matches any run of characters.
bool id_matches(const std::string& pattern, const std::string& id);

/// Runs every claim of every entry whose id matches. Throws UnknownEntry when
/// the pattern matches nothing. Claim errors count as failures, not throws.
CatalogReport run_catalog(const std::vector<CatalogEntry>& entries,
                          const std::optional<std::string>& pattern = std::nullopt);
CatalogReport run_catalog(const std::optional<std::string>& pattern = std::nullopt);

/// Runs a single claim against an already parsed instance.
ClaimResult run_claim(const std::string& entry, const Instance& instance, const Json& claim);

Json to_json(const ClaimResult& result);
Json to_json(const CatalogReport& report);

}  // namespace latsep
