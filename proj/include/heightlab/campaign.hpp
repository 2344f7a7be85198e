#pragma once

#include "heightlab/generators.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace heightlab {

// ------------------------------------------------------------------- bounds

/// delta*m(delta*m - 1)(delta*n + 1) / (delta*m + delta*n - 2); needs
/// delta*m >= 2 and m >= n >= 1.
Rat galg_bound(long delta, long m, long n);

/// (delta*n)^2 (delta*n - 1) / (2*delta*n - 3); needs 2*delta*n - 3 > 0.
Rat genth_bound(long delta, long n);

/// 2*binom(n + delta, delta) - 2.
Rat ruwang_bound(long delta, long n);

/// The named constants for a given (delta, m, n). Entries whose formulas
/// are outside their domain are omitted.
struct BoundTable {
    long delta, m, n;
    Rat roth;                 // 2
    Rat wirsing;              // 2 delta
    Rat stoll;                // 2 delta n  (also conjecture (b))
    Rat conj_a;               // 2 delta + n - 1
    Rat quad_plane;           // 8
    Rat quad_plane_lines;     // 15/2
    Rat excon_line_exception; // 6
    Rat ruwang;
    std::optional<Rat> galg;
    std::optional<Rat> genth;
};

BoundTable bound_table(long delta, long m, long n);

// ------------------------------------------------------------------ records

struct CampaignRecord {
    std::string family;
    Rat u;
    Int d;            // 0 = rational point
    std::string coords; // canonical exact coordinates, parseable
    Real h, m, ratio, defect_vs_target;
};

/// Serialize/parse one coordinate tuple: "(c0:c1:...)" with entries
/// "a" or "a+b*sqrt(d)" (a, b rational). Round-trips exactly.
std::string serialize_point(const ProjPoint& P);
ProjPoint parse_point(const std::string& text);
QuadElem parse_quad_elem(const std::string& text);

// ------------------------------------------------------------------- config

struct CampaignConfig {
    std::string family;  // exinf | excon | fibers | random
    int n = 2;           // exinf
    int delta = 1;       // exinf
    std::vector<std::array<Int, 2>> phi_zero, phi_inf; // fibers
    std::optional<std::vector<std::array<Rat, 3>>> arrangement; // lines override
    PlaceSetS S;
    long max_exp = 10;
    mpfr_prec_t precision = kDefaultPrec;
    Rat target = Rat(0);  // the constant c in max |m - c h|
    // random sampler
    std::uint64_t seed = 1;
    int samples = 100;
    long coord_bound = 50;
    Int field_d = 0;
};

/// Parses the JSON config; throws ConfigError with field diagnostics.
CampaignConfig parse_campaign_config(const std::string& json_text);
CampaignConfig load_campaign_config(const std::string& path);

/// Generator configurations in the shared JSON schema (arrangement as
/// integer coefficient triples).
std::string exinf_config_json(const ExinfConfig& cfg);
std::string excon_config_json(const ExconConfig& cfg);

struct CampaignSummary {
    std::string family;
    std::size_t points = 0;
    std::size_t errors = 0;
    Rat target;
    std::string max_ratio, min_ratio;
    std::string min_defect, max_defect;  // m - target*h
    std::string fitted_constant;         // max |m - target*h|
    std::string json; // full JSON text (includes the bound table row)
};

/// Runs the campaign: one CSV row per stream point (deterministic order)
/// plus a JSON summary. Per-point generator errors are logged to the
/// summary, never aborting the run.
CampaignSummary run_campaign(const CampaignConfig& cfg, std::ostream& csv);

/// File wrapper: writes <out_dir>/records.csv and <out_dir>/summary.json.
CampaignSummary run_campaign_files(const CampaignConfig& cfg, const std::string& out_dir);

/// Reload a CSV produced by run_campaign (timestamp comment line skipped).
std::vector<CampaignRecord> read_campaign_csv(std::istream& in);

// ------------------------------------------------------------------- verify

struct SuiteReport {
    std::string name;
    bool pass = false;
    std::string details;
};

/// suite in {product-formula, weil-sum, base-change, positions, conic-lemma,
/// sym2-identity, transfer-defect}.
SuiteReport verify_suite(const std::string& name, int samples = 0, std::uint64_t seed = 1,
                         mpfr_prec_t prec = kDefaultPrec);

std::vector<std::string> verify_suite_names();

} // namespace heightlab
