#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bayesball {

// One validation finding. `code` is a stable machine-readable tag,
// `ids` names the offending nodes (or arc endpoints).
struct Finding {
  std::string code;
  std::string message;
  std::vector<std::string> ids;
};

// An operation referenced a node id that is not in the network.
class UnknownNodeError : public std::runtime_error {
 public:
  explicit UnknownNodeError(const std::string& id)
      : std::runtime_error("unknown node id: '" + id + "'"), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

// A document failed to parse at the JSON syntax level.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error("syntax error at line " + std::to_string(line) +
                           ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A document parsed as JSON but does not match the network schema.
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& what)
      : std::runtime_error("schema violation: " + what) {}
};

// A model failed structural validation; carries the report findings.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Finding> findings)
      : std::runtime_error(summarize(findings)), findings_(std::move(findings)) {}
  ValidationError(const std::string& code, const std::string& message,
                  std::vector<std::string> ids = {})
      : ValidationError(std::vector<Finding>{{code, message, std::move(ids)}}) {}
  const std::vector<Finding>& findings() const { return findings_; }

 private:
  static std::string summarize(const std::vector<Finding>& findings) {
    std::string text = "validation failed:";
    for (const auto& f : findings) text += "\n  [" + f.code + "] " + f.message;
    return text;
  }
  std::vector<Finding> findings_;
};

// The brute-force oracle refused a network above its size guard.
class SizeLimitError : public std::runtime_error {
 public:
  SizeLimitError(std::size_t node_count, std::size_t limit)
      : std::runtime_error("network has " + std::to_string(node_count) +
                           " nodes, oracle guard limit is " +
                           std::to_string(limit)),
        node_count_(node_count),
        limit_(limit) {}
  std::size_t node_count() const { return node_count_; }
  std::size_t limit() const { return limit_; }

 private:
  std::size_t node_count_;
  std::size_t limit_;
};

}  // namespace bayesball
