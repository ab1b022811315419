#include "kle/qsim.hpp"

#include <cmath>
#include <stdexcept>

namespace kle::qsim {

RegisterLayout::RegisterLayout(std::vector<std::pair<std::string, int>> regs) {
  for (auto& [name, width] : regs) {
    if (width < 1) throw std::invalid_argument("register width must be >= 1");
    for (const auto& f : fields_) {
      if (f.name == name) throw std::invalid_argument("duplicate register name: " + name);
    }
    fields_.push_back(Field{name, width, total_});
    total_ += width;
  }
  if (total_ < 1 || total_ > 24) throw std::invalid_argument("layout must hold 1..24 qubits");
}

const RegisterLayout::Field& RegisterLayout::field(std::string_view name) const {
  for (const auto& f : fields_) {
    if (f.name == name) return f;
  }
  throw std::invalid_argument("no register named " + std::string(name));
}

bool RegisterLayout::has(std::string_view name) const {
  for (const auto& f : fields_) {
    if (f.name == name) return true;
  }
  return false;
}

StateVector::StateVector(RegisterLayout layout) : layout_(std::move(layout)) {
  amps_.assign(std::size_t{1} << layout_.num_qubits(), Amplitude{0.0, 0.0});
  amps_[0] = Amplitude{1.0, 0.0};
}

void StateVector::check_qubit(int q) const {
  if (q < 0 || q >= num_qubits()) throw std::invalid_argument("qubit index out of range");
}

void StateVector::apply_h(int qubit) {
  check_qubit(qubit);
  const std::size_t stride = std::size_t{1} << qubit;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t base = 0; base < amps_.size(); base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      Amplitude a0 = amps_[i];
      Amplitude a1 = amps_[i + stride];
      amps_[i] = (a0 + a1) * inv_sqrt2;
      amps_[i + stride] = (a0 - a1) * inv_sqrt2;
    }
  }
}

void StateVector::apply_x(int qubit) {
  check_qubit(qubit);
  const std::size_t stride = std::size_t{1} << qubit;
  for (std::size_t base = 0; base < amps_.size(); base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      std::swap(amps_[i], amps_[i + stride]);
    }
  }
}

void StateVector::apply_cnot(int control, int target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) throw std::invalid_argument("cnot control equals target");
  const BasisIndex c = BasisIndex{1} << control;
  const BasisIndex t = BasisIndex{1} << target;
  for (BasisIndex b = 0; b < amps_.size(); ++b) {
    if ((b & c) && !(b & t)) std::swap(amps_[b], amps_[b | t]);
  }
}

void StateVector::apply_toffoli(int control_a, int control_b, int target) {
  check_qubit(control_a);
  check_qubit(control_b);
  check_qubit(target);
  if (control_a == control_b || control_a == target || control_b == target) {
    throw std::invalid_argument("toffoli qubits must be distinct");
  }
  const BasisIndex ca = BasisIndex{1} << control_a;
  const BasisIndex cb = BasisIndex{1} << control_b;
  const BasisIndex t = BasisIndex{1} << target;
  for (BasisIndex b = 0; b < amps_.size(); ++b) {
    if ((b & ca) && (b & cb) && !(b & t)) std::swap(amps_[b], amps_[b | t]);
  }
}

void StateVector::apply_cz(int qubit_a, int qubit_b) {
  check_qubit(qubit_a);
  check_qubit(qubit_b);
  if (qubit_a == qubit_b) throw std::invalid_argument("cz qubits must be distinct");
  const BasisIndex a = BasisIndex{1} << qubit_a;
  const BasisIndex b2 = BasisIndex{1} << qubit_b;
  for (BasisIndex b = 0; b < amps_.size(); ++b) {
    if ((b & a) && (b & b2)) amps_[b] = -amps_[b];
  }
}

void StateVector::apply_h_register(std::string_view reg) {
  const auto& f = layout_.field(reg);
  for (int i = 0; i < f.width; ++i) apply_h(f.offset + i);
}

void StateVector::apply_perm_oracle(const Permutation& p, std::string_view reg) {
  const auto& f = layout_.field(reg);
  if (f.width != p.width()) throw std::invalid_argument("perm oracle width mismatch");
  apply_basis_map([&](BasisIndex b) {
    auto x = layout_.extract(b, f);
    return layout_.insert(b, f, p.fwd(static_cast<Word>(x)));
  });
}

void StateVector::apply_xor_oracle(std::span<const Word> table, std::string_view in_reg,
                                   std::string_view out_reg) {
  const auto& fx = layout_.field(in_reg);
  const auto& fy = layout_.field(out_reg);
  if (table.size() != (std::size_t{1} << fx.width)) {
    throw std::invalid_argument("xor oracle table size mismatch");
  }
  const std::uint64_t out_mask = (std::uint64_t{1} << fy.width) - 1;
  for (Word v : table) {
    if ((v & ~out_mask) != 0) throw std::invalid_argument("xor oracle value exceeds out width");
  }
  apply_basis_map([&](BasisIndex b) {
    auto x = layout_.extract(b, fx);
    auto y = layout_.extract(b, fy);
    return layout_.insert(b, fy, y ^ table[x]);
  });
}

void StateVector::apply_basis_map(const std::function<BasisIndex(BasisIndex)>& f) {
  std::vector<Amplitude> next(amps_.size(), Amplitude{0.0, 0.0});
  std::vector<bool> hit(amps_.size(), false);
  for (BasisIndex b = 0; b < amps_.size(); ++b) {
    BasisIndex t = f(b);
    if (t >= amps_.size() || hit[t]) throw std::invalid_argument("basis map is not a bijection");
    hit[t] = true;
    next[t] = amps_[b];
  }
  amps_ = std::move(next);
}

void StateVector::apply_phase_flip(const std::function<bool(BasisIndex)>& pred) {
  for (BasisIndex b = 0; b < amps_.size(); ++b) {
    if (pred(b)) amps_[b] = -amps_[b];
  }
}

double StateVector::prob_of(const std::function<bool(BasisIndex)>& pred) const {
  double p = 0.0;
  for (BasisIndex b = 0; b < amps_.size(); ++b) {
    if (pred(b)) p += std::norm(amps_[b]);
  }
  return p;
}

double StateVector::prob_register_equals(std::string_view reg, std::uint64_t value) const {
  const auto& f = layout_.field(reg);
  double p = 0.0;
  for (BasisIndex b = 0; b < amps_.size(); ++b) {
    if (layout_.extract(b, f) == value) p += std::norm(amps_[b]);
  }
  return p;
}

std::vector<double> StateVector::register_distribution(std::string_view reg) const {
  const auto& f = layout_.field(reg);
  std::vector<double> dist(std::size_t{1} << f.width, 0.0);
  for (BasisIndex b = 0; b < amps_.size(); ++b) {
    dist[layout_.extract(b, f)] += std::norm(amps_[b]);
  }
  return dist;
}

std::uint64_t StateVector::measure_register(std::string_view reg, Rng& rng) {
  const auto& f = layout_.field(reg);
  std::vector<double> dist = register_distribution(reg);
  double u = rng.next_double();
  std::uint64_t outcome = dist.size() - 1;
  double acc = 0.0;
  for (std::size_t v = 0; v < dist.size(); ++v) {
    acc += dist[v];
    if (u < acc) {
      outcome = v;
      break;
    }
  }
  // Collapse and renormalize.
  double keep = dist[outcome];
  if (keep <= 0.0) throw std::runtime_error("measured an outcome of zero probability");
  const double scale = 1.0 / std::sqrt(keep);
  for (BasisIndex b = 0; b < amps_.size(); ++b) {
    if (layout_.extract(b, f) == outcome) {
      amps_[b] *= scale;
    } else {
      amps_[b] = Amplitude{0.0, 0.0};
    }
  }
  return outcome;
}

double StateVector::norm_squared() const {
  double p = 0.0;
  for (const auto& a : amps_) p += std::norm(a);
  return p;
}

}  // namespace kle::qsim
