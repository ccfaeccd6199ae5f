#include "asz/csv.hpp"

#include "asz/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace asz::csv {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt(std::int64_t x) { return std::to_string(x); }
std::string fmt(std::uint64_t x) { return std::to_string(x); }

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void Table::add(std::vector<std::string> row) {
  if (row.size() != header_.size()) throw InvalidParameter("row width does not match the header");
  rows_.push_back(std::move(row));
}

void Table::write(std::ostream& os) const {
  auto line = [&os](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) os << ',';
      os << quote(r[i]);
    }
    os << "\r\n";
  };
  line(header_);
  for (const auto& r : rows_) line(r);
}

std::string Table::str() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

void Table::save(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  write(os);
}

std::vector<std::vector<std::string>> parse(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> rec;
  std::string cur;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      rec.push_back(std::move(cur));
      cur.clear();
      any = true;
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      rec.push_back(std::move(cur));
      cur.clear();
      out.push_back(std::move(rec));
      rec.clear();
      any = false;
    } else {
      cur += c;
      any = true;
    }
  }
  if (quoted) throw InvalidParameter("unterminated quoted field");
  if (any || !cur.empty()) {
    rec.push_back(std::move(cur));
    out.push_back(std::move(rec));
  }
  return out;
}

ExactScaled parse_exact(const std::string& field, std::uint32_t p) {
  auto bad = [&field]() { return InvalidParameter("malformed exact field: " + field); };
  if (field.rfind("num=[", 0) != 0) throw bad();
  auto close = field.find(']');
  if (close == std::string::npos) throw bad();
  std::vector<std::int64_t> nums;
  std::string body = field.substr(5, close - 5);
  std::stringstream ss(body);
  std::string tok;
  while (std::getline(ss, tok, ',')) nums.push_back(std::stoll(tok));
  auto den_pos = field.find(";den=", close);
  auto q_pos = field.find(";qpow=", close);
  if (den_pos != close + 1 || q_pos == std::string::npos) throw bad();
  std::int64_t den = std::stoll(field.substr(den_pos + 5, q_pos - den_pos - 5));
  int qpow = std::stoi(field.substr(q_pos + 6));
  if (den <= 0) throw bad();
  std::vector<Rational> coords;
  for (auto n : nums) coords.emplace_back(n, den);
  return {CycloElem(p, std::move(coords)), qpow};
}

}  // namespace asz::csv
