// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "noise_sieve/dataset.hpp"

namespace noise_sieve {

enum class CallType { incoming, missed, outgoing };

enum class BehaviorLabel { Accept, Reject, Missed, Outgoing };

struct CallRecord {
  std::chrono::year_month_day date;
  std::chrono::seconds time_of_day{0};  // naive local time
  CallType call_type = CallType::incoming;
  std::int64_t duration = 0;  // seconds
  std::string location;
  std::string relationship;
  std::string call_id;
  // Columns after the seven fixed ones, passed through as attributes.
  std::vector<std::pair<std::string, std::string>> extras;
  std::size_t line = 0;
};

struct TimeSegment {
  std::string name;
  std::chrono::seconds start{0};  // inclusive
  std::chrono::seconds end{0};    // exclusive; 24:00 allowed
};

/// Static day segmentation. Segments are half-open and together cover the
/// whole day exactly once.
class SegmentationConfig {
 public:
  /// Throws ConfigError on gaps, overlaps, empty or duplicate names.
  explicit SegmentationConfig(std::vector<TimeSegment> segments);

  /// S1 = [08:00, 16:00), S2 = [16:00, 24:00), S3 = [00:00, 08:00).
  static SegmentationConfig standard();
  /// {"segments": [{"name": "S1", "start": "08:00", "end": "16:00"}, ...]}
  static SegmentationConfig from_json(const nlohmann::json& config);
  static SegmentationConfig from_file(const std::string& path);

  const std::vector<TimeSegment>& segments() const { return segments_; }
  const TimeSegment& segment_at(std::chrono::seconds time_of_day) const;

 private:
  std::vector<TimeSegment> segments_;
};

inline constexpr const char* kCallLogHeader = "date,time,call_type,duration,location,relationship,call_id";

/// Parses a call-log CSV whose header starts with the seven columns of
/// kCallLogHeader (extra trailing columns are kept as extras). Throws
/// ParseError with the offending line number.
std::vector<CallRecord> parse_log(std::istream& in);
std::vector<CallRecord> parse_log_file(const std::string& path);

/// Incoming calls with a positive duration were accepted, with zero
/// duration rejected; missed and outgoing calls keep their type.
BehaviorLabel derive_behavior(const CallRecord& record);

/// "Fri[S1]"-style token for the weekday of `date` and the segment holding
/// `time_of_day`.
std::string segment_time(const std::chrono::year_month_day& date, std::chrono::seconds time_of_day,
                         const SegmentationConfig& config);

/// Attributes DayTime, Location, <extras...>, Relationship; class Behavior.
/// Rows get ids 1..N in record order. Throws EmptyDatasetError on no records.
Dataset to_dataset(const std::vector<CallRecord>& records, const SegmentationConfig& config);

std::string to_string(BehaviorLabel label);
std::string to_string(CallType type);
CallType call_type_from_string(std::string_view text);

// "HH:MM" or "HH:MM:SS"; 24:00 only when allow_end_of_day.
std::chrono::seconds parse_clock(std::string_view text, bool allow_end_of_day = false);

}  // namespace noise_sieve
