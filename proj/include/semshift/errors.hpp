#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semshift {

// Error category, used by the CLI to pick exit codes:
// input -> 2, provider -> 3, internal -> 4.
enum class ErrorKind { Input, Provider, Internal };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ErrorKind::Input, what) {}
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what)
      : Error(ErrorKind::Internal, what) {}
};

struct EmptyCorpusError : InputError {
  EmptyCorpusError() : InputError("corpus yielded no sentences") {}
};

struct DuplicateDocIdError : InputError {
  explicit DuplicateDocIdError(const std::string& id)
      : InputError("duplicate doc_id: " + id) {}
};

struct InvalidWidthError : InputError {
  explicit InvalidWidthError(long m)
      : InputError("variant width must be >= 1, got " + std::to_string(m)) {}
};

struct ZeroVectorError : InputError {
  explicit ZeroVectorError(std::size_t row)
      : InputError("zero vector at row " + std::to_string(row)), row(row) {}
  std::size_t row;
};

struct DimensionMismatchError : InputError {
  DimensionMismatchError(std::size_t expected, std::size_t got)
      : InputError("dimension mismatch: expected " + std::to_string(expected) +
                   ", got " + std::to_string(got)) {}
};

struct NotNormalizedError : InputError {
  explicit NotNormalizedError(double norm)
      : InputError("vector norm " + std::to_string(norm) +
                   " deviates from 1 by more than 1e-4") {}
};

struct TooFewRowsError : InputError {
  explicit TooFewRowsError(std::size_t n)
      : InputError("need at least 2 rows, got " + std::to_string(n)) {}
};

struct EmptyInputError : InputError {
  EmptyInputError() : InputError("empty input") {}
};

struct LengthMismatchError : InputError {
  LengthMismatchError(std::size_t a, std::size_t b)
      : InputError("length mismatch: " + std::to_string(a) + " vs " +
                   std::to_string(b)) {}
};

struct DegenerateInputError : InputError {
  DegenerateInputError() : InputError("constant series has no rank order") {}
};

struct DegeneratePoolError : InputError {
  DegeneratePoolError() : InputError("pooled mean has near-zero norm") {}
};

struct OutOfDomainError : InputError {
  explicit OutOfDomainError(double radicand)
      : InputError("radicand " + std::to_string(radicand) + " is negative") {}
};

struct HopTooLargeError : InputError {
  HopTooLargeError(std::size_t hop, std::size_t width)
      : InputError("hop " + std::to_string(hop) +
                   " too large for variant width " + std::to_string(width)) {}
};

struct KTooLargeError : InputError {
  KTooLargeError(std::size_t k, std::size_t n)
      : InputError("k=" + std::to_string(k) + " exceeds corpus size " +
                   std::to_string(n)) {}
};

struct WindowTooLargeError : InputError {
  WindowTooLargeError(std::size_t w, std::size_t n)
      : InputError("window " + std::to_string(w) +
                   " must be smaller than sentence count " + std::to_string(n)) {}
};

struct EmptyChunkingError : InputError {
  EmptyChunkingError() : InputError("chunking has no chunks") {}
};

struct ParseError : InputError {
  ParseError(const std::string& path, std::size_t line, const std::string& why)
      : InputError(path + ":" + std::to_string(line) + ": " + why), line(line) {}
  std::size_t line;
};

struct MissKeyError : InputError {
  explicit MissKeyError(const std::string& texts)
      : InputError("texts not present in embedding store: " + texts) {}
};

struct ProviderError : Error {
  ProviderError(int status, const std::string& message)
      : Error(ErrorKind::Provider,
              "provider error (status " + std::to_string(status) + "): " + message),
        status(status) {}
  int status;
};

}  // namespace semshift
