#pragma once

#include <atomic>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace dgsp {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shape or dimension incompatibility (vector dims, matrix shapes, morphism chains).
struct DimensionError : Error {
  using Error::Error;
};

/// Value-domain violation: asymmetric matrix where symmetry is required,
/// invalid weights, non-constant kernel passed to a constant-only operation.
struct DomainError : Error {
  using Error::Error;
};

/// A table-backed kernel was evaluated at a base point it has no entry for.
struct KernelDomainError : DomainError {
  using DomainError::DomainError;
};

/// A mapping supplied to pushforward failed on a specific atom.
struct MappingError : Error {
  MappingError(std::size_t atom_index, const std::string& what)
      : Error("mapping failed at atom index " + std::to_string(atom_index) + ": " + what),
        atom_index(atom_index) {}
  std::size_t atom_index;
};

/// Materializing a measure would exceed the configured support cap.
struct SupportCapError : Error {
  using Error::Error;
};

/// Malformed input file or unknown schema.
struct ParseError : Error {
  using Error::Error;
};

/// Cap on the number of atoms any single materialized measure may hold.
/// Kernels multiply support sizes under composition; we refuse rather than
/// silently prune. Overridable via set_support_cap or DGSP_SUPPORT_CAP.
std::size_t support_cap();
void set_support_cap(std::size_t cap);

/// Absolute tolerance under which two atom payloads are merged into one.
double atom_merge_tolerance();
void set_atom_merge_tolerance(double tol);

}  // namespace dgsp
