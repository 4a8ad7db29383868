#pragma once

// Cyclic cubic fields given as (conductor, class-group invariants) records.
// Class groups are read from a table, not computed.

#include <charconv>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "arithtop/arith.hpp"
#include "arithtop/error.hpp"
#include "arithtop/verdict.hpp"

namespace arithtop {

struct CubicRecord {
  std::size_t row = 0;  ///< 1-based line number in the source
  long long conductor = 0;
  std::vector<long long> invariants;
  std::optional<int> claimed_s;
};

struct CubicIssue {
  std::size_t row = 0;
  std::string message;
};

struct CubicTable {
  std::vector<CubicRecord> records;
  std::vector<CubicIssue> issues;
};

/// A product of distinct primes = 1 mod 3, times 9 at most once.
inline bool is_cyclic_cubic_conductor(long long f) {
  if (f <= 1) return false;
  if (f % 9 == 0) {
    f /= 9;
    if (f % 3 == 0) return false;
  } else if (f % 3 == 0) {
    return false;
  }
  return f == 1 || (is_squarefree(f) && [&] {
           for (long long q : prime_factors(f))
             if (q % 3 != 1) return false;
           return true;
         }());
}

inline int cubic_ramified_count(long long conductor) { return static_cast<int>(prime_factors(conductor).size()); }

inline std::size_t three_rank(const std::vector<long long>& invariants) {
  std::size_t r = 0;
  for (long long f : invariants)
    if (f % 3 == 0) ++r;
  return r;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto pos = s.find(sep);
    out.push_back(trim(s.substr(0, pos)));
    if (pos == std::string_view::npos) return out;
    s.remove_prefix(pos + 1);
  }
}

inline long long parse_integer(std::string_view text, const std::string& what) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw Error(ErrorKind::MalformedRecord, what + " '" + std::string(text) + "' is not an integer");
  return v;
}

}  // namespace detail

/// Validates conductor shape, the divisibility chain and any claimed s.
inline void validate_cubic_record(const CubicRecord& r) {
  if (!is_cyclic_cubic_conductor(r.conductor))
    throw Error(ErrorKind::MalformedRecord,
                "conductor " + std::to_string(r.conductor) + " is not a cyclic cubic conductor");
  for (std::size_t i = 0; i < r.invariants.size(); ++i) {
    if (r.invariants[i] < 2)
      throw Error(ErrorKind::MalformedRecord, "invariant factor " + std::to_string(r.invariants[i]) + " < 2");
    if (i > 0 && r.invariants[i] % r.invariants[i - 1] != 0)
      throw Error(ErrorKind::MalformedRecord, "invariant factors are not a divisibility chain");
  }
  if (r.claimed_s && *r.claimed_s != cubic_ramified_count(r.conductor))
    throw Error(ErrorKind::MalformedRecord, "claimed s = " + std::to_string(*r.claimed_s) + " but conductor " +
                                                std::to_string(r.conductor) + " has " +
                                                std::to_string(cubic_ramified_count(r.conductor)) +
                                                " prime divisors");
}

inline CubicRecord parse_cubic_row(std::string_view line, std::size_t row, bool with_s) {
  const auto fields = detail::split(line, ',');
  if (fields.size() != (with_s ? 3u : 2u))
    throw Error(ErrorKind::MalformedRecord, "expected " + std::to_string(with_s ? 3 : 2) + " fields, got " +
                                                std::to_string(fields.size()));
  CubicRecord r;
  r.row = row;
  r.conductor = detail::parse_integer(fields[0], "conductor");
  if (!fields[1].empty())
    for (auto part : detail::split(fields[1], ';')) r.invariants.push_back(detail::parse_integer(part, "invariant"));
  if (with_s && !fields[2].empty()) r.claimed_s = static_cast<int>(detail::parse_integer(fields[2], "s"));
  validate_cubic_record(r);
  return r;
}

/// Header `conductor,class_invariants` with an optional third column `s`.
/// Bad rows are collected as issues; a bad header throws ParseError.
inline CubicTable parse_cubic_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::ParseError, "line 1: missing header");
  const auto header = detail::split(detail::trim(line), ',');
  const bool plain = header.size() == 2 && header[0] == "conductor" && header[1] == "class_invariants";
  const bool with_s = header.size() == 3 && header[0] == "conductor" && header[1] == "class_invariants" &&
                      header[2] == "s";
  if (!plain && !with_s) throw Error(ErrorKind::ParseError, "line 1: unexpected header '" + line + "'");

  CubicTable table;
  for (std::size_t row = 2; std::getline(in, line); ++row) {
    if (detail::trim(line).empty()) continue;
    try {
      table.records.push_back(parse_cubic_row(line, row, with_s));
    } catch (const Error& e) {
      table.issues.push_back({row, e.what()});
    }
  }
  return table;
}

inline CubicTable parse_cubic_csv(const std::string& text) {
  std::istringstream in(text);
  return parse_cubic_csv(in);
}

/// 3-rank(Cl) >= s - 1, the rank consequence of Cl^{C_3} = (Z/3)^{s-1}.
inline TheoremVerdict cubic_rank_check(const CubicRecord& r) {
  return make_verdict("cubic_rank", static_cast<long long>(three_rank(r.invariants)), ">=",
                      cubic_ramified_count(r.conductor) - 1);
}

}  // namespace arithtop
