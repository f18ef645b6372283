#include "satrank/util.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "satrank/error.hpp"

namespace satrank {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write file: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw DataError("write failed: " + path);
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  write_file(tmp, content);
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw DataError("rename failed: " + tmp + " -> " + path);
  }
}

std::string hex_u64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  unsigned yoe = static_cast<unsigned>(y - era * 400);
  unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                 static_cast<unsigned>(d) - 1u;
  unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
  z += 719468;
  std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  unsigned doe = static_cast<unsigned>(z - era * 146097);
  unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
  unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  y = static_cast<int>(yy + (m <= 2));
}

std::string format_date(std::int64_t epoch_day) {
  int y, m, d;
  civil_from_days(epoch_day, y, m, d);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, d);
  return buf;
}

std::optional<std::int64_t> parse_iso8601(const std::string& ts) {
  int y, mo, d, h = 0, mi = 0, s = 0;
  int off_sign = 0, off_h = 0, off_m = 0;
  const char* p = ts.c_str();
  auto digits = [&](int count, int& out) -> bool {
    out = 0;
    for (int i = 0; i < count; ++i) {
      if (*p < '0' || *p > '9') return false;
      out = out * 10 + (*p - '0');
      ++p;
    }
    return true;
  };
  if (!digits(4, y) || *p != '-') return std::nullopt;
  ++p;
  if (!digits(2, mo) || *p != '-') return std::nullopt;
  ++p;
  if (!digits(2, d)) return std::nullopt;
  if (*p == 'T' || *p == ' ') {
    ++p;
    if (!digits(2, h) || *p != ':') return std::nullopt;
    ++p;
    if (!digits(2, mi)) return std::nullopt;
    if (*p == ':') {
      ++p;
      if (!digits(2, s)) return std::nullopt;
      if (*p == '.') {  // fractional seconds ignored
        ++p;
        while (*p >= '0' && *p <= '9') ++p;
      }
    }
    if (*p == 'Z') {
      ++p;
    } else if (*p == '+' || *p == '-') {
      off_sign = *p == '+' ? 1 : -1;
      ++p;
      if (!digits(2, off_h)) return std::nullopt;
      if (*p == ':') ++p;
      if (*p >= '0' && *p <= '9' && !digits(2, off_m)) return std::nullopt;
    }
  }
  if (*p != '\0') return std::nullopt;
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || s > 60) return std::nullopt;
  std::int64_t secs = days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + s;
  secs -= off_sign * (off_h * 3600 + off_m * 60);
  return secs;
}

std::string period_start(std::int64_t epoch_seconds, const std::string& period) {
  std::int64_t day = epoch_seconds / 86400;
  if (epoch_seconds < 0 && epoch_seconds % 86400 != 0) --day;
  if (period == "day") return format_date(day);
  if (period == "week") {
    // 1970-01-01 was a Thursday; shift so weeks start on Monday.
    std::int64_t dow = ((day % 7) + 7 + 3) % 7;
    return format_date(day - dow);
  }
  if (period == "month") {
    int y, m, d;
    civil_from_days(day, y, m, d);
    return format_date(days_from_civil(y, m, 1));
  }
  throw UsageError("unknown period '" + period + "' (expected day, week or month)");
}

std::string csv_escape(const std::string& field) {
  bool needs = false;
  for (char c : field) {
    if (c == ',' || c == '"' || c == '\n' || c == '\r') {
      needs = true;
      break;
    }
  }
  if (!needs) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace satrank
