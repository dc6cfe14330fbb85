#pragma once

#include <stdexcept>
#include <string>

namespace hyperirr {

/* Every precondition violation or internal failure in this library throws
 * hyperirr::Error.  The kind is machine-readable so callers (notably the CLI)
 * can map failures to exit codes without parsing message text. */
enum class ErrorKind {
  InvalidArgument,       // malformed or out-of-domain input
  NotCoprime,            // gcd precondition failed
  NotPrime,              // a prime was required
  NotPrimePower,         // q is not p^k
  SizeExceeded,          // input beyond a configured bound
  DivisionByZero,        // zero divisor / zero polynomial divisor
  FieldMismatch,         // operands from different fields
  ZeroElement,           // multiplicative-group op on the zero element
  Reducible,             // irreducibility precondition failed
  ZeroRoot,              // root-order requested for a polynomial with root 0
  HypothesisViolated,    // a stated hypothesis of the computed formula fails
  NonExistence,          // requested object provably does not exist
  NonIntegralFormula,    // closed form did not produce an integer (bug)
  InternalInconsistency, // two independent computations of one value disagree (bug)
  Singular,              // invertible matrix required
  ShapeMismatch,         // matrix/block dimensions incompatible
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

} // namespace hyperirr
