#pragma once

#include <string>

#include "stlf/falsify/campaign.hpp"
#include "stlf/falsify/metrics.hpp"

namespace stlf::falsify {

/// Version of the JSON report layout.
inline constexpr int kReportSchemaVersion = 1;

// JSON writers. Key order is fixed, so equal values serialize to equal bytes.
// With `timing` false every wall-clock field is omitted.

std::string result_json(const FalsificationResult& r, bool timing = true);
std::string campaign_json(const CampaignReport& report, bool timing = true);
std::string metrics_json(const Metrics& m);

/// `task,optimizer,suc_fals,avg_time,avg_sims`, one row per cell, `-` for
/// averages of cells without successes.
std::string campaign_csv(const CampaignReport& report);

/// Fixed-width text table with the same columns as the CSV.
std::string summary_table(const CampaignReport& report);

}  // namespace stlf::falsify
