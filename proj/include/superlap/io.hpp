#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace superlap::io {

/// Minimal JSON value with insertion-ordered objects. Doubles are written
/// with 17 significant digits; non-finite doubles become null.
class Json {
 public:
  enum class Kind { null, boolean, integer, number, string, array, object };

  Json() = default;
  Json(bool value) : kind_(Kind::boolean), boolean_(value) {}
  Json(int value) : kind_(Kind::integer), integer_(value) {}
  Json(long value) : kind_(Kind::integer), integer_(value) {}
  Json(long long value) : kind_(Kind::integer), integer_(value) {}
  Json(unsigned long value) : kind_(Kind::integer), integer_(static_cast<long long>(value)) {}
  Json(unsigned long long value) : kind_(Kind::integer), integer_(static_cast<long long>(value)) {}
  Json(double value) : kind_(Kind::number), number_(value) {}
  Json(const char* value) : kind_(Kind::string), string_(value) {}
  Json(std::string value) : kind_(Kind::string), string_(std::move(value)) {}
  Json(const std::vector<double>& values);

  static Json array();
  static Json object();

  /// Appends to an array.
  Json& push(Json value);
  /// Sets a key of an object (replacing an existing key in place).
  Json& set(const std::string& key, Json value);

  Kind kind() const { return kind_; }
  std::string dump(int indent = 2) const;

 private:
  void write(std::string& out, int indent, int depth) const;

  Kind kind_ = Kind::null;
  bool boolean_ = false;
  long long integer_ = 0;
  double number_ = 0.0;
  std::string string_;
  std::vector<Json> items_;
  std::vector<std::pair<std::string, Json>> members_;
};

/// Comma-separated table with a header row and LF line endings.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  std::string str() const;
};

std::string cell(double value);
std::string cell(long long value);
std::string cell(std::size_t value);

/// Coordinate listing "row,col,value" of the nonzero entries.
std::string coo(const Eigen::MatrixXd& matrix);

/// Writes text exactly as given (binary mode, so LF stays LF).
void write_file(const std::filesystem::path& path, const std::string& text);
std::string read_file(const std::filesystem::path& path);

}  // namespace superlap::io
