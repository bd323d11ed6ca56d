#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sdroots/curvature.hpp"
#include "sdroots/identities.hpp"
#include "sdroots/indicial.hpp"
#include "sdroots/oracle.hpp"

namespace sdroots {

inline constexpr int kSchemaVersion = 1;

class ReportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Flat, serializable view of one IndicialRoot.
struct RootRecord {
    double re = 0, im = 0;
    int case_tag = 0;
    std::string origin_kind;
    int j = 0;
    double eigenvalue = 0;
    std::string side;
    std::string solution_form;
    bool jordan = false;
    bool conformal_killing = false;
    long multiplicity = 0;
    bool descent_candidate = false;

    bool operator==(const RootRecord&) const = default;
    bool operator<(const RootRecord& o) const;
};

RootRecord to_record(const IndicialRoot& r);

using Window = std::pair<double, double>;

// Rows with a < Re λ < b (open window) when a window is given.
std::vector<RootRecord> catalog_records(const RootCatalog& cat, const std::optional<Window>& window = {});

std::string catalog_to_json(const RootCatalog& cat, const std::optional<Window>& window = {});
std::string catalog_to_csv(const RootCatalog& cat, const std::optional<Window>& window = {});

std::vector<RootRecord> records_from_json(const std::string& text);
std::vector<RootRecord> records_from_csv(const std::string& text);

// Doubles printed with 17 significant digits.
std::string format_double(double v);

std::string identity_report_json(const std::vector<IdentityResult>& results, int N, unsigned long long seed);
std::string fd_report_json(const std::vector<FdCase>& cases, const FdBatteryConfig& cfg);
std::string oracle_report_json(const std::vector<OracleCheck>& checks, const std::vector<PencilModeCheck>& pencil,
                               int j_max);
std::string gap_json(const CrossSectionSpec& cs, const GapReport& gap, const std::optional<WeightWindow>& window);
std::string h2plus_json(const CrossSectionSpec& cs, const H2PlusReport& r);

struct LensRow {
    int j = 0;
    long multiplicity = 0;
    long harmonic_dim = 0;
    double projector_trace = 0;
    double idempotency_residual = 0;
};
std::string lens_json(const LensAction& a, const std::vector<LensRow>& rows, bool case1_present);

}  // namespace sdroots
