#include "voltgrid/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "voltgrid/common.hpp"

namespace voltgrid::csv {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  for (auto& cell : out) {
    const auto b = cell.find_first_not_of(" \t");
    const auto e = cell.find_last_not_of(" \t");
    cell = (b == std::string::npos) ? std::string() : cell.substr(b, e - b + 1);
  }
  return out;
}

}  // namespace

int Table::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

int Table::require_column(const std::string& name, const std::string& file) const {
  const int c = column(name);
  if (c < 0) throw std::runtime_error(file + ": missing column '" + name + "'");
  return c;
}

Table parse(const std::string& content, const std::string& file) {
  Table t;
  std::istringstream in(content);
  std::string line;
  bool first = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto cells = split_line(line);
    if (first) {
      t.header = std::move(cells);
      first = false;
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw std::runtime_error(file + ":" + std::to_string(lineno) +
                               ": expected " + std::to_string(t.header.size()) +
                               " cells, got " + std::to_string(cells.size()));
    }
    t.rows.push_back(std::move(cells));
  }
  if (first) throw std::runtime_error(file + ": empty CSV document");
  return t;
}

Table load(const std::string& path) { return parse(read_text_file(path), path); }

double to_double(const std::string& cell, const std::string& context) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(cell, &pos);
    if (pos != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error(context + ": not a number: '" + cell + "'");
  }
}

long to_long(const std::string& cell, const std::string& context) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(cell, &pos);
    if (pos != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error(context + ": not an integer: '" + cell + "'");
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

Writer::Writer(std::vector<std::string> header) : header_(std::move(header)) {}

void Writer::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != header_.size())
    throw std::runtime_error("csv row width mismatch");
  rows_.push_back(cells);
}

std::string Writer::str() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < header_.size(); ++i)
    out << header_[i] << (i + 1 == header_.size() ? "\n" : ",");
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << row[i] << (i + 1 == row.size() ? "\n" : ",");
  }
  return out.str();
}

void Writer::save(const std::string& path) const { write_text_file(path, str()); }

}  // namespace voltgrid::csv
