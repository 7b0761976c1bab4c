#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "distsel/errors.hpp"
#include "distsel/series.hpp"

// CSV ingestion. Two layouts are accepted:
//   long: station,year,month,precip_mm        (one observation per row)
//   wide: station,year,jan,feb,...,dec        (one year per row)
// UTF-8, LF or CRLF, header mandatory, plain decimal numbers only.

namespace distsel {

enum class CsvFormat { long_form, wide_form };

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      break;
    }
    out.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

// Strict numeric parse: plain decimals only, whole field must be consumed.
inline bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

inline bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

[[noreturn]] inline void bad_row(std::size_t line_no, const std::string& why) {
  raise(errc::malformed_row,
        "line " + std::to_string(line_no) + ": " + why);
}

inline std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace detail

inline std::vector<StationSeries> parse_station_csv(
    const std::filesystem::path& path, CsvFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    raise(errc::io_failure, "cannot open input file: " + path.string());
  }

  std::vector<std::string> names;           // first-appearance order
  std::map<std::string, std::size_t> index;
  std::vector<StationSeries> series;
  std::vector<std::set<std::pair<int, int>>> seen;  // (year, month) per station

  auto station_slot = [&](std::string_view name) -> std::size_t {
    const std::string key(name);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    const std::size_t slot = series.size();
    index.emplace(key, slot);
    names.push_back(key);
    series.push_back(StationSeries{key, {}});
    seen.emplace_back();
    return slot;
  };

  auto add_observation = [&](std::size_t slot, int year, int month,
                             double precip, std::size_t line_no) {
    if (precip < 0.0) {
      raise(errc::negative_precip,
            "line " + std::to_string(line_no) + ": negative precipitation " +
                std::to_string(precip));
    }
    if (!seen[slot].insert({year, month}).second) {
      raise(errc::duplicate_month,
            "line " + std::to_string(line_no) + ": duplicate (year, month) (" +
                std::to_string(year) + ", " + std::to_string(month) +
                ") for station " + series[slot].station);
    }
    series[slot].observations.push_back({year, month, precip});
  };

  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) {
    raise(errc::malformed_row, "empty file: " + path.string());
  }
  ++line_no;
  const auto header = detail::split_fields(line);
  if (format == CsvFormat::long_form) {
    const std::vector<std::string> want = {"station", "year", "month",
                                           "precip_mm"};
    if (header.size() != 4) detail::bad_row(line_no, "expected 4 header fields");
    for (std::size_t i = 0; i < 4; ++i) {
      if (detail::lower(header[i]) != want[i]) {
        detail::bad_row(line_no, "expected header station,year,month,precip_mm");
      }
    }
  } else {
    static const char* months[12] = {"jan", "feb", "mar", "apr", "may", "jun",
                                     "jul", "aug", "sep", "oct", "nov", "dec"};
    if (header.size() != 14) {
      detail::bad_row(line_no, "expected 14 header fields");
    }
    if (detail::lower(header[0]) != "station" ||
        detail::lower(header[1]) != "year") {
      detail::bad_row(line_no, "expected header station,year,jan,...,dec");
    }
    for (std::size_t i = 0; i < 12; ++i) {
      if (detail::lower(header[i + 2]) != months[i]) {
        detail::bad_row(line_no, "expected header station,year,jan,...,dec");
      }
    }
  }

  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view stripped = detail::trim(line);
    if (stripped.empty()) continue;
    const auto fields = detail::split_fields(line);
    if (format == CsvFormat::long_form) {
      if (fields.size() != 4) detail::bad_row(line_no, "expected 4 fields");
      if (fields[0].empty()) detail::bad_row(line_no, "empty station name");
      int year, month;
      double precip;
      if (!detail::parse_int(fields[1], year)) {
        detail::bad_row(line_no, "bad year field '" + std::string(fields[1]) + "'");
      }
      if (!detail::parse_int(fields[2], month) || month < 1 || month > 12) {
        detail::bad_row(line_no, "bad month field '" + std::string(fields[2]) + "'");
      }
      if (!detail::parse_double(fields[3], precip)) {
        detail::bad_row(line_no, "bad numeric field '" + std::string(fields[3]) + "'");
      }
      add_observation(station_slot(fields[0]), year, month, precip, line_no);
    } else {
      if (fields.size() != 14) detail::bad_row(line_no, "expected 14 fields");
      if (fields[0].empty()) detail::bad_row(line_no, "empty station name");
      int year;
      if (!detail::parse_int(fields[1], year)) {
        detail::bad_row(line_no, "bad year field '" + std::string(fields[1]) + "'");
      }
      const std::size_t slot = station_slot(fields[0]);
      for (int month = 1; month <= 12; ++month) {
        double precip;
        if (!detail::parse_double(fields[month + 1], precip)) {
          detail::bad_row(line_no, "bad numeric field '" +
                                       std::string(fields[month + 1]) + "'");
        }
        add_observation(slot, year, month, precip, line_no);
      }
    }
  }

  for (auto& s : series) {
    std::sort(s.observations.begin(), s.observations.end(),
              [](const Observation& a, const Observation& b) {
                return std::pair(a.year, a.month) < std::pair(b.year, b.month);
              });
  }
  return series;
}

}  // namespace distsel
