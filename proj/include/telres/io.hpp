// io.hpp — State and unitary file serialization plus content digests.
//
// File format: a JSON object with "kind" ("pure" | "density" | "unitary"),
// a layout ("mode": "multiqubit" with "qubits_per_side", or "bipartite"
// with local dimension "d"), and "data" holding complex entries as [re, im]
// pairs (flat list for pure states, row-major nested rows for matrices).

#pragma once

#include <telres/state.hpp>
#include <telres/types.hpp>

#include <optional>
#include <string>

namespace telres {

// Exactly one of pure/density is populated.
struct LoadedState {
  std::optional<PureState> pure;
  std::optional<DensityMatrix> density;

  bool is_pure() const { return pure.has_value(); }
  const SubsystemLayout& layout() const {
    return pure ? pure->layout : density->layout;
  }
};

// Throws ParseError for unreadable/malformed files (syntax errors carry the
// line and column) and ValidationError when the data fails a state
// invariant; the message names the check and the residual.
LoadedState parse_state(const std::string& path);

void write_state(const std::string& path, const PureState& psi);
void write_state(const std::string& path, const DensityMatrix& rho);

// d x d unitary, checked to 1e-10.
ComplexMatrix parse_unitary(const std::string& path);
void write_unitary(const std::string& path, const ComplexMatrix& u);

// FNV-1a 64-bit digest of the raw file bytes, as 16 hex digits.
std::string file_digest(const std::string& path);

}  // namespace telres
