#pragma once

#include <stdexcept>
#include <string>

namespace splitdg {

// Root-finding failed to converge within the iteration budget.
class NonConvergence : public std::runtime_error {
public:
  NonConvergence(const std::string& what, int degree, int iterations)
      : std::runtime_error(what), degree_(degree), iterations_(iterations) {}
  int degree() const { return degree_; }
  int iterations() const { return iterations_; }

private:
  int degree_;
  int iterations_;
};

// A mapped element has J <= 0 at some quadrature node.
class NonPositiveJacobian : public std::runtime_error {
public:
  NonPositiveJacobian(const std::string& what, int element, int node)
      : std::runtime_error(what), element_(element), node_(node) {}
  int element() const { return element_; }
  int node() const { return node_; }

private:
  int element_;
  int node_;
};

// Config file could not be parsed.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

// Config parsed but a value is out of range or inconsistent.
class ValidationError : public std::runtime_error {
public:
  ValidationError(const std::string& what, std::string key)
      : std::runtime_error(what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

private:
  std::string key_;
};

}  // namespace splitdg
