#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kle/bits.hpp"
#include "kle/permutation.hpp"
#include "kle/rng.hpp"

namespace kle::qsim {

using Amplitude = std::complex<double>;
using BasisIndex = std::uint64_t;

/**
 * Named-register qubit layout. The first-listed register occupies the least
 * significant qubits; registers are packed little-endian and the packing is
 * part of the observable behavior (basis indices are stable across runs).
 */
class RegisterLayout {
 public:
  struct Field {
    std::string name;
    int width = 0;
    int offset = 0;
  };

  RegisterLayout() = default;
  explicit RegisterLayout(std::vector<std::pair<std::string, int>> regs);

  int num_qubits() const { return total_; }
  const std::vector<Field>& fields() const { return fields_; }

  const Field& field(std::string_view name) const;
  bool has(std::string_view name) const;

  // Value of a named register inside a basis index.
  std::uint64_t extract(BasisIndex basis, const Field& f) const {
    return (basis >> f.offset) & ((std::uint64_t{1} << f.width) - 1);
  }
  std::uint64_t extract(BasisIndex basis, std::string_view name) const {
    return extract(basis, field(name));
  }

  // Basis index with the named register replaced by value.
  BasisIndex insert(BasisIndex basis, const Field& f, std::uint64_t value) const {
    std::uint64_t m = ((std::uint64_t{1} << f.width) - 1) << f.offset;
    return (basis & ~m) | ((value << f.offset) & m);
  }

 private:
  std::vector<Field> fields_;
  int total_ = 0;
};

/**
 * Dense statevector over a register layout, capped at 24 qubits. Gates are
 * applied in place with amplitude-stride loops. A state is mutated by one
 * logical thread at a time; it may be handed to another thread between
 * operations.
 */
class StateVector {
 public:
  // Starts in |0...0>.
  explicit StateVector(RegisterLayout layout);

  const RegisterLayout& layout() const { return layout_; }
  int num_qubits() const { return layout_.num_qubits(); }
  std::size_t dim() const { return amps_.size(); }

  std::span<const Amplitude> amplitudes() const { return amps_; }
  std::span<Amplitude> mutable_amplitudes() { return amps_; }

  // Single-qubit / few-qubit gates (global qubit indices).
  void apply_h(int qubit);
  void apply_x(int qubit);
  void apply_cnot(int control, int target);
  void apply_toffoli(int control_a, int control_b, int target);
  void apply_cz(int qubit_a, int qubit_b);

  // Hadamard transform over every qubit of a register.
  void apply_h_register(std::string_view reg);

  // |x> -> |P(x)> on a register whose width matches P.
  void apply_perm_oracle(const Permutation& p, std::string_view reg);

  // |x,y> -> |x, f(x) ^ y>; table has 2^(in width) entries of out-width bits.
  void apply_xor_oracle(std::span<const Word> table, std::string_view in_reg,
                        std::string_view out_reg);

  // Relabel basis states by an arbitrary bijection on [0, 2^N).
  void apply_basis_map(const std::function<BasisIndex(BasisIndex)>& f);

  // amp[b] *= -1 where pred(b).
  void apply_phase_flip(const std::function<bool(BasisIndex)>& pred);

  // Exact probability mass of basis states satisfying pred.
  double prob_of(const std::function<bool(BasisIndex)>& pred) const;

  // Exact probability that a register holds value.
  double prob_register_equals(std::string_view reg, std::uint64_t value) const;

  // Exact marginal distribution of a register (2^width entries).
  std::vector<double> register_distribution(std::string_view reg) const;

  // Computational-basis measurement of a register: samples an outcome from
  // the exact marginal and collapses the state.
  std::uint64_t measure_register(std::string_view reg, Rng& rng);

  double norm_squared() const;

 private:
  void check_qubit(int q) const;

  RegisterLayout layout_;
  std::vector<Amplitude> amps_;
};

}  // namespace kle::qsim
