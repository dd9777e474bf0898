#pragma once

#include <string>
#include <vector>

namespace voltgrid::csv {

// Minimal CSV support for the project's numeric tables: one header row,
// comma separation, no quoting (none of our schemas need it).
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 when absent
  int require_column(const std::string& name, const std::string& file) const;
};

Table parse(const std::string& content, const std::string& file_for_errors);
Table load(const std::string& path);

double to_double(const std::string& cell, const std::string& context);
long to_long(const std::string& cell, const std::string& context);

// Fixed formatting so identical values always serialize identically.
std::string format_double(double v);

class Writer {
 public:
  explicit Writer(std::vector<std::string> header);
  void add_row(const std::vector<std::string>& cells);
  std::string str() const;
  void save(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace voltgrid::csv
