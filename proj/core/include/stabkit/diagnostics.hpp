#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace stabkit {

// Every validator reports the first failing law together with a minimal
// witness (object/morphism names), so CLI errors stay actionable.
enum class ErrorKind {
  // category validation
  MissingIdentity,
  NonAssociative,
  DanglingEndpoint,
  PartialComposeTable,
  DuplicateName,
  // enumeration / resources
  SizeCapExceeded,
  MismatchedEndpoints,
  // monoidal validation
  NonMonoidObjects,
  InterchangeFailure,
  UnitNotStrict,
  SymmetryFailure,
  NotSymmetric,
  // action validation
  UnitNotIdentity,
  MonoidIncompatible,
  TwoCellNotFunctorial,
  // equivariance
  TriangleFailure,
  UnitFailure,
  NaturalityFailure,
  NonInvertibleComponent,
  SideMismatch,
  // colimits / spectrification
  NoColimit,
  ActionNotCocontinuous,
  AdjunctionInvalid,
  NotStable,
  // localization oracle
  NotSaturated,
  // generic structural problems in raw input
  Malformed,
};

const char* to_string(ErrorKind kind);

class ValidationError : public std::runtime_error {
 public:
  ValidationError(ErrorKind kind, std::string witness)
      : std::runtime_error(std::string(to_string(kind)) + ": " + witness),
        kind_(kind),
        witness_(std::move(witness)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& witness() const { return witness_; }

 private:
  ErrorKind kind_;
  std::string witness_;
};

class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(std::uint64_t estimate, std::uint64_t cap)
      : std::runtime_error("SizeCapExceeded: estimated " + std::to_string(estimate) +
                           " candidate states exceeds cap " + std::to_string(cap)),
        estimate_(estimate),
        cap_(cap) {}

  std::uint64_t estimate() const { return estimate_; }
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t estimate_;
  std::uint64_t cap_;
};

}  // namespace stabkit
