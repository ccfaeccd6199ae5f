#pragma once

#include "asz/exact.hpp"

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace asz::csv {

// 17 significant digits, enough to round-trip a double
std::string fmt(double x);
std::string fmt(std::int64_t x);
std::string fmt(std::uint64_t x);
inline std::string fmt(int x) { return fmt(static_cast<std::int64_t>(x)); }
inline std::string fmt(unsigned x) { return fmt(static_cast<std::uint64_t>(x)); }
inline std::string fmt(bool b) { return b ? "true" : "false"; }
inline std::string fmt(const std::string& s) { return s; }
inline std::string fmt(const char* s) { return s; }

// RFC 4180: quote fields holding a comma, quote or line break
std::string quote(const std::string& field);

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }

  void add(std::vector<std::string> row);
  template <class... T>
  void add_row(const T&... v) {
    add({fmt(v)...});
  }

  void write(std::ostream& os) const;
  std::string str() const;
  void save(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// records of an RFC 4180 document, header included
std::vector<std::vector<std::string>> parse(const std::string& text);

// inverse of ExactScaled::field for a given p
ExactScaled parse_exact(const std::string& field, std::uint32_t p);

}  // namespace asz::csv
