#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace satrank {

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
// Writes to "<path>.tmp" then renames, so a failure mid-write never clobbers
// an existing file at `path`.
void write_file_atomic(const std::string& path, const std::string& content);

std::string hex_u64(std::uint64_t v);

// Seconds since the Unix epoch for "YYYY-MM-DD" or
// "YYYY-MM-DDTHH:MM:SS[.fff][Z|+hh:mm|-hh:mm]". Returns nullopt on anything
// else.
std::optional<std::int64_t> parse_iso8601(const std::string& ts);

// Days since 1970-01-01 for a civil date (proleptic Gregorian).
std::int64_t days_from_civil(int y, int m, int d);
void civil_from_days(std::int64_t z, int& y, int& m, int& d);
std::string format_date(std::int64_t epoch_day);

// Period bucketing at UTC midnight. period is "day", "week" (buckets start
// Monday) or "month"; returns the bucket start as "YYYY-MM-DD".
std::string period_start(std::int64_t epoch_seconds, const std::string& period);

// RFC-4180 style quoting, applied only when the field needs it.
std::string csv_escape(const std::string& field);

}  // namespace satrank
