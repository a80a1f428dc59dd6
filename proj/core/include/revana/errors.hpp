#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace revana {

// Base of all library errors. Two branches:
//   FileFormatError   -- the input file itself is broken (CLI exit code 3)
//   ValidationError   -- inputs are well-formed but violate a precondition
//                        (CLI exit code 2)
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FileFormatError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class FileNotFoundError : public FileFormatError {
 public:
  explicit FileNotFoundError(const std::string& path)
      : FileFormatError("file not found: " + path) {}
};

class MalformedRecordError : public FileFormatError {
 public:
  MalformedRecordError(std::size_t line, const std::string& reason)
      : FileFormatError("malformed record at line " + std::to_string(line) +
                        ": " + reason),
        line_(line),
        reason_(reason) {}

  std::size_t line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

class DuplicateReviewIdError : public FileFormatError {
 public:
  DuplicateReviewIdError(const std::string& review_id, std::size_t line)
      : FileFormatError("duplicate review_id \"" + review_id + "\" at line " +
                        std::to_string(line)),
        review_id_(review_id) {}

  const std::string& review_id() const { return review_id_; }

 private:
  std::string review_id_;
};

class UnlabeledCorpusError : public ValidationError {
 public:
  explicit UnlabeledCorpusError(const std::string& review_id)
      : ValidationError("corpus is not fully labeled; first unlabeled review: " +
                        review_id),
        review_id_(review_id) {}

  const std::string& review_id() const { return review_id_; }

 private:
  std::string review_id_;
};

class EmptyTrainingSetError : public ValidationError {
 public:
  EmptyTrainingSetError() : ValidationError("training set is empty") {}
};

class ZeroTotalCountError : public ValidationError {
 public:
  ZeroTotalCountError()
      : ValidationError("cannot normalize a distribution with total count 0") {
  }
  explicit ZeroTotalCountError(const std::string& word)
      : ValidationError("word \"" + word +
                        "\" has no occurrences in the requested class") {}
};

class EmptyKeywordSetError : public ValidationError {
 public:
  EmptyKeywordSetError(double alpha, double alpha_prime)
      : ValidationError("empty feature space: no keywords selected at alpha=" +
                        std::to_string(alpha) + ", alpha_prime=" +
                        std::to_string(alpha_prime)) {}
};

class SingleClassTrainingSetError : public ValidationError {
 public:
  SingleClassTrainingSetError()
      : ValidationError("training set contains a single class") {}
};

class DimensionMismatchError : public ValidationError {
 public:
  DimensionMismatchError(std::size_t expected, std::size_t got)
      : ValidationError("feature dimension mismatch: expected " +
                        std::to_string(expected) + ", got " +
                        std::to_string(got)) {}
};

class InsufficientSamplesPerClassError : public ValidationError {
 public:
  InsufficientSamplesPerClassError(int k, std::size_t have)
      : ValidationError("stratified " + std::to_string(k) +
                        "-fold CV needs at least " + std::to_string(k) +
                        " samples per class, smallest class has " +
                        std::to_string(have)) {}
};

class EmptyReviewError : public ValidationError {
 public:
  explicit EmptyReviewError(const std::string& review_id)
      : ValidationError("review \"" + review_id + "\" has no sentences"),
        review_id_(review_id) {}

  const std::string& review_id() const { return review_id_; }

 private:
  std::string review_id_;
};

class ConstantInputError : public ValidationError {
 public:
  explicit ConstantInputError(const std::string& which)
      : ValidationError("correlation undefined: " + which +
                        " has zero variance") {}
};

class DegenerateInputError : public ValidationError {
 public:
  explicit DegenerateInputError(const std::string& what)
      : ValidationError(what) {}
};

class InputTooLargeError : public ValidationError {
 public:
  InputTooLargeError(std::size_t n, std::size_t max_n)
      : ValidationError("exhaustive search limited to n <= " +
                        std::to_string(max_n) + ", got n = " +
                        std::to_string(n)) {}
};

}  // namespace revana
