// Apache License, Version 2.0, refer to LICENSE.txt

#include "noise_sieve/ingest.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>

#include "noise_sieve/dataset_csv.hpp"
#include "noise_sieve/error.hpp"

namespace noise_sieve {

namespace {

using std::chrono::seconds;

constexpr std::int64_t kSecondsPerDay = 24 * 60 * 60;
constexpr std::array<const char*, 7> kFixedColumns{"date",     "time",         "call_type", "duration",
                                                   "location", "relationship", "call_id"};
// Indexed by std::chrono::weekday::c_encoding() (Sunday = 0).
constexpr std::array<const char*, 7> kDayNames{"Sun", "Mon", "Tue", "Wed", "Thu", "Fri", "Sat"};

template <typename Int>
bool parse_int(std::string_view text, Int& out) {
  if (text.empty()) return false;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::optional<std::chrono::year_month_day> parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0;
  unsigned m = 0, d = 0;
  if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), m) || !parse_int(text.substr(8, 2), d)) {
    return std::nullopt;
  }
  const std::chrono::year_month_day date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::optional<seconds> try_parse_clock(std::string_view text, bool allow_end_of_day) {
  if (text.size() != 5 && text.size() != 8) return std::nullopt;
  if (text[2] != ':' || (text.size() == 8 && text[5] != ':')) return std::nullopt;
  int h = 0, m = 0, s = 0;
  if (!parse_int(text.substr(0, 2), h) || !parse_int(text.substr(3, 2), m)) return std::nullopt;
  if (text.size() == 8 && !parse_int(text.substr(6, 2), s)) return std::nullopt;
  if (m > 59 || s > 59) return std::nullopt;
  if (h == 24 && m == 0 && s == 0 && allow_end_of_day) return seconds{kSecondsPerDay};
  if (h > 23) return std::nullopt;
  return seconds{h * 3600 + m * 60 + s};
}

}  // namespace

seconds parse_clock(std::string_view text, bool allow_end_of_day) {
  if (auto value = try_parse_clock(text, allow_end_of_day)) return *value;
  throw ConfigError("invalid time of day '" + std::string(text) + "'");
}

SegmentationConfig::SegmentationConfig(std::vector<TimeSegment> segments) : segments_(std::move(segments)) {
  if (segments_.empty()) throw ConfigError("segmentation needs at least one segment");
  std::set<std::string> names;
  for (const auto& segment : segments_) {
    if (segment.name.empty()) throw ConfigError("segment name must not be empty");
    if (!names.insert(segment.name).second) throw ConfigError("duplicate segment name '" + segment.name + "'");
    if (segment.start.count() < 0 || segment.end.count() > kSecondsPerDay || segment.start >= segment.end) {
      throw ConfigError("segment '" + segment.name + "' is not a non-empty interval within the day");
    }
  }
  std::vector<const TimeSegment*> by_start;
  for (const auto& segment : segments_) by_start.push_back(&segment);
  std::sort(by_start.begin(), by_start.end(), [](const auto* a, const auto* b) { return a->start < b->start; });
  seconds covered{0};
  for (const auto* segment : by_start) {
    if (segment->start < covered) throw ConfigError("segment '" + segment->name + "' overlaps another segment");
    if (segment->start > covered) throw ConfigError("segments leave a gap before '" + segment->name + "'");
    covered = segment->end;
  }
  if (covered.count() != kSecondsPerDay) throw ConfigError("segments do not reach 24:00");
}

SegmentationConfig SegmentationConfig::standard() {
  return SegmentationConfig({{"S1", seconds{8 * 3600}, seconds{16 * 3600}},
                             {"S2", seconds{16 * 3600}, seconds{24 * 3600}},
                             {"S3", seconds{0}, seconds{8 * 3600}}});
}

SegmentationConfig SegmentationConfig::from_json(const nlohmann::json& config) {
  std::vector<TimeSegment> segments;
  try {
    for (const auto& entry : config.at("segments")) {
      segments.push_back({entry.at("name").get<std::string>(), parse_clock(entry.at("start").get<std::string>()),
                          parse_clock(entry.at("end").get<std::string>(), true)});
    }
  } catch (const nlohmann::json::exception& error) {
    throw ConfigError(std::string("invalid segmentation config: ") + error.what());
  }
  return SegmentationConfig(std::move(segments));
}

SegmentationConfig SegmentationConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open segmentation config '" + path + "'");
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& error) {
    throw ConfigError(path + ": " + error.what());
  }
}

const TimeSegment& SegmentationConfig::segment_at(seconds time_of_day) const {
  for (const auto& segment : segments_) {
    if (time_of_day >= segment.start && time_of_day < segment.end) return segment;
  }
  throw std::out_of_range("time of day outside [00:00, 24:00)");
}

std::string to_string(BehaviorLabel label) {
  switch (label) {
    case BehaviorLabel::Accept:
      return "Accept";
    case BehaviorLabel::Reject:
      return "Reject";
    case BehaviorLabel::Missed:
      return "Missed";
    case BehaviorLabel::Outgoing:
      return "Outgoing";
  }
  return "";
}

std::string to_string(CallType type) {
  switch (type) {
    case CallType::incoming:
      return "incoming";
    case CallType::missed:
      return "missed";
    case CallType::outgoing:
      return "outgoing";
  }
  return "";
}

CallType call_type_from_string(std::string_view text) {
  if (text == "incoming") return CallType::incoming;
  if (text == "missed") return CallType::missed;
  if (text == "outgoing") return CallType::outgoing;
  throw InputError("unknown call type '" + std::string(text) + "'");
}

std::vector<CallRecord> parse_log(std::istream& in) {
  std::string line;
  std::size_t line_number = 1;
  if (!std::getline(in, line)) throw ParseError("missing header", line_number);
  const auto header = split_csv_line(line, line_number);
  if (header.size() < kFixedColumns.size() || !std::equal(kFixedColumns.begin(), kFixedColumns.end(), header.begin())) {
    throw ParseError(std::string("header must start with '") + kCallLogHeader + "'", line_number);
  }

  std::vector<CallRecord> records;
  while (std::getline(in, line)) {
    ++line_number;
    if (std::all_of(line.begin(), line.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r'; })) continue;
    const auto fields = split_csv_line(line, line_number);
    if (fields.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()),
                       line_number);
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (fields[i].empty()) throw ParseError("empty '" + header[i] + "' field", line_number);
    }

    CallRecord record;
    record.line = line_number;
    const auto date = parse_date(fields[0]);
    if (!date) throw ParseError("invalid date '" + fields[0] + "' (expected YYYY-MM-DD)", line_number);
    record.date = *date;
    const auto time = try_parse_clock(fields[1], false);
    if (!time || fields[1].size() != 8) {
      throw ParseError("invalid time '" + fields[1] + "' (expected HH:MM:SS)", line_number);
    }
    record.time_of_day = *time;
    if (fields[2] == "incoming") {
      record.call_type = CallType::incoming;
    } else if (fields[2] == "missed") {
      record.call_type = CallType::missed;
    } else if (fields[2] == "outgoing") {
      record.call_type = CallType::outgoing;
    } else {
      throw ParseError("unknown call_type '" + fields[2] + "'", line_number);
    }
    if (!parse_int(fields[3], record.duration)) {
      throw ParseError("duration '" + fields[3] + "' is not an integer", line_number);
    }
    if (record.duration < 0) throw ParseError("negative duration " + fields[3], line_number);
    if (record.call_type == CallType::missed && record.duration != 0) {
      throw ParseError("missed call with non-zero duration", line_number);
    }
    record.location = fields[4];
    record.relationship = fields[5];
    record.call_id = fields[6];
    for (std::size_t i = kFixedColumns.size(); i < fields.size(); ++i) record.extras.emplace_back(header[i], fields[i]);
    records.push_back(std::move(record));
  }
  return records;
}

std::vector<CallRecord> parse_log_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open call log '" + path + "'");
  try {
    return parse_log(in);
  } catch (const ParseError& error) {
    throw error.with_source(path);
  }
}

BehaviorLabel derive_behavior(const CallRecord& record) {
  switch (record.call_type) {
    case CallType::incoming:
      return record.duration > 0 ? BehaviorLabel::Accept : BehaviorLabel::Reject;
    case CallType::missed:
      return BehaviorLabel::Missed;
    case CallType::outgoing:
      return BehaviorLabel::Outgoing;
  }
  return BehaviorLabel::Reject;
}

std::string segment_time(const std::chrono::year_month_day& date, seconds time_of_day,
                         const SegmentationConfig& config) {
  const std::chrono::weekday day{std::chrono::sys_days{date}};
  return std::string(kDayNames[day.c_encoding()]) + "[" + config.segment_at(time_of_day).name + "]";
}

Dataset to_dataset(const std::vector<CallRecord>& records, const SegmentationConfig& config) {
  if (records.empty()) throw EmptyDatasetError("no call records to convert");

  std::vector<AttributeSpec> attributes{{"DayTime", std::nullopt}, {"Location", std::nullopt}};
  for (const auto& [name, value] : records.front().extras) attributes.push_back({name, std::nullopt});
  attributes.push_back({"Relationship", std::nullopt});

  std::set<BehaviorLabel> present;
  std::vector<RowInput> rows;
  rows.reserve(records.size());
  for (const auto& record : records) {
    if (record.extras.size() + 3 != attributes.size()) {
      throw SchemaError("record on line " + std::to_string(record.line) + " has a different set of extra columns");
    }
    std::vector<std::string> values{segment_time(record.date, record.time_of_day, config), record.location};
    for (const auto& [name, value] : record.extras) values.push_back(value);
    values.push_back(record.relationship);
    const auto behavior = derive_behavior(record);
    present.insert(behavior);
    rows.push_back({rows.size() + 1, std::move(values), to_string(behavior)});
  }

  std::vector<std::string> labels;
  for (auto label : present) labels.push_back(to_string(label));
  return validate_dataset(AttributeSchema(std::move(attributes), "Behavior", std::move(labels)), std::move(rows));
}

}  // namespace noise_sieve
