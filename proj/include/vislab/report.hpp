#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "vislab/experiments.hpp"

namespace vislab::report {

inline constexpr int kSchemaVersion = 1;

/// Column order of the discrepancy CSV.
inline constexpr std::string_view kRecordHeader =
    "kind,f,p,T,X,Y,X_floor,Y_floor,sum_abs_dev,bound_value,ratio,nontrivial,primes_used,"
    "skipped_primes,error";
inline constexpr std::string_view kZeroSetHeader = "f,X,Y,u,v";

/// Shortest round-trip decimal form.
std::string format_double(double v);

/// `# schema=1`, optional `# <comment>` lines, header, one row per record.
void write_records_csv(std::ostream& os, const std::vector<DiscrepancyRecord>& records,
                       const std::vector<std::string>& comments = {});
std::vector<DiscrepancyRecord> read_records_csv(std::istream& is);

void write_zero_set_csv(std::ostream& os, const ZeroSetReport& rep,
                        const std::vector<std::string>& comments = {});
ZeroSetReport read_zero_set_csv(std::istream& is);

std::string records_json(const std::vector<DiscrepancyRecord>& records);
std::vector<DiscrepancyRecord> records_from_json(const std::string& text);
std::string zero_set_json(const ZeroSetReport& rep);

/// Splits one CSV line; handles double-quoted fields with "" escapes.
std::vector<std::string> split_csv_line(std::string_view line);
std::string csv_quote(std::string_view field);

}  // namespace vislab::report
