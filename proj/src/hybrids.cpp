#include "kle/hybrids.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace kle::hybrids {

namespace {

using qsim::BasisIndex;
using BasisMap = std::function<BasisIndex(BasisIndex)>;

constexpr const char* kGateNames[] = {"h", "x", "cnot", "toffoli", "cz"};

int gate_arity(GateKind g) {
  switch (g) {
    case GateKind::kH:
    case GateKind::kX:
      return 1;
    case GateKind::kCnot:
    case GateKind::kCz:
      return 2;
    case GateKind::kToffoli:
      return 3;
  }
  return 0;
}

GateKind gate_from_name(const std::string& s) {
  for (int i = 0; i < 5; ++i) {
    if (s == kGateNames[i]) return static_cast<GateKind>(i);
  }
  throw std::invalid_argument("unknown gate kind: " + s);
}

void validate_gate(const CircuitOp& op, int visible_qubits) {
  if (static_cast<int>(op.targets.size()) != gate_arity(op.gate)) {
    throw std::invalid_argument("gate target count mismatch");
  }
  for (std::size_t i = 0; i < op.targets.size(); ++i) {
    if (op.targets[i] < 0 || op.targets[i] >= visible_qubits) {
      throw std::invalid_argument("gate target outside the adversary-visible block");
    }
    for (std::size_t j = i + 1; j < op.targets.size(); ++j) {
      if (op.targets[i] == op.targets[j]) throw std::invalid_argument("gate targets must differ");
    }
  }
}

// Cached handles into a layout, plus the classical stand-ins for registers a
// particular hybrid keeps outside the statevector.
struct Ctx {
  HybridParams prm;
  int q = 0;  // ev calls (sizes I and Xv)

  const qsim::RegisterLayout* layout = nullptr;

  bool has_h = false, has_f = false, has_keys = false, has_i = false;
  qsim::RegisterLayout::Field w, k, x, y, h, f, k1, k2, i, xv;

  const std::vector<Word>* cl_h = nullptr;
  const std::vector<Word>* cl_f = nullptr;
  Word cl_k1 = 0, cl_k2 = 0;

  static Ctx make(const HybridParams& prm, int q, const qsim::RegisterLayout& layout) {
    Ctx c;
    c.prm = prm;
    c.q = q;
    c.layout = &layout;
    c.w = layout.field("W");
    c.k = layout.field("K");
    c.x = layout.field("X");
    c.y = layout.field("Y");
    c.has_h = layout.has("H");
    c.has_f = layout.has("F");
    c.has_keys = layout.has("K1");
    c.has_i = layout.has("I");
    if (c.has_h) c.h = layout.field("H");
    if (c.has_f) c.f = layout.field("F");
    if (c.has_keys) {
      c.k1 = layout.field("K1");
      c.k2 = layout.field("K2");
    }
    if (c.has_i) {
      c.i = layout.field("I");
      c.xv = layout.field("Xv");
    }
    return c;
  }

  std::uint64_t get(const qsim::RegisterLayout::Field& fld, BasisIndex b) const {
    return layout->extract(b, fld);
  }
  BasisIndex set(const qsim::RegisterLayout::Field& fld, BasisIndex b, std::uint64_t v) const {
    return layout->insert(b, fld, v);
  }

  // m-bit chunk `idx` of the H table register.
  std::uint64_t h_get(BasisIndex b, std::uint64_t idx) const {
    return (b >> (h.offset + idx * prm.m)) & ((std::uint64_t{1} << prm.m) - 1);
  }
  BasisIndex h_put(BasisIndex b, std::uint64_t idx, std::uint64_t v) const {
    const int sh = h.offset + static_cast<int>(idx) * prm.m;
    const BasisIndex mask = ((std::uint64_t{1} << prm.m) - 1) << sh;
    return (b & ~mask) | (v << sh);
  }
  std::uint64_t f_get(BasisIndex b, std::uint64_t idx) const {
    return (b >> (f.offset + idx * prm.m)) & ((std::uint64_t{1} << prm.m) - 1);
  }
  BasisIndex f_put(BasisIndex b, std::uint64_t idx, std::uint64_t v) const {
    const int sh = f.offset + static_cast<int>(idx) * prm.m;
    const BasisIndex mask = ((std::uint64_t{1} << prm.m) - 1) << sh;
    return (b & ~mask) | (v << sh);
  }

  std::uint64_t h_index(std::uint64_t key, std::uint64_t input) const {
    return (key << prm.n) | input;
  }

  // Recorded construction query in slot s (1-based).
  std::uint64_t slot_get(BasisIndex b, std::uint64_t s) const {
    return (b >> (xv.offset + (s - 1) * prm.n)) & ((std::uint64_t{1} << prm.n) - 1);
  }
  BasisIndex slot_xor(BasisIndex b, std::uint64_t s, std::uint64_t v) const {
    return b ^ (v << (xv.offset + (s - 1) * prm.n));
  }

  // Values H_{K1}(.) and K1/K2 resolve against the register when present and
  // the classical draw otherwise.
  std::uint64_t key1_of(BasisIndex b) const { return has_keys ? get(k1, b) : cl_k1; }
  std::uint64_t key2_of(BasisIndex b) const { return has_keys ? get(k2, b) : cl_k2; }
  std::uint64_t h_of(BasisIndex b, std::uint64_t idx) const {
    return has_h ? h_get(b, idx) : (*cl_h)[idx];
  }
  std::uint64_t f_of(BasisIndex b, std::uint64_t idx) const {
    return has_f ? f_get(b, idx) : (*cl_f)[idx];
  }

  // I <- I + 1 mod 2^|I|; Xv_I <- Xv_I ^ X. Returns the pre-call I.
  BasisIndex increment_and_record(BasisIndex b, std::uint64_t* i_pre_out) const {
    if (!has_i) {
      if (i_pre_out) *i_pre_out = 0;
      return b;
    }
    std::uint64_t i_pre = get(i, b);
    std::uint64_t i_new = (i_pre + 1) & ((std::uint64_t{1} << i.width) - 1);
    b = set(i, b, i_new);
    if (i_new >= 1 && i_new <= static_cast<std::uint64_t>(q)) {
      b = slot_xor(b, i_new, get(x, b));
    }
    if (i_pre_out) *i_pre_out = i_pre;
    return b;
  }

  bool in_recorded(BasisIndex b, std::uint64_t upto, std::uint64_t value) const {
    if (!has_i) return false;
    std::uint64_t limit = std::min<std::uint64_t>(upto, q);
    for (std::uint64_t s = 1; s <= limit; ++s) {
      if (slot_get(b, s) == value) return true;
    }
    return false;
  }
};

// --------------------------- oracle cores ---------------------------------

BasisMap make_ev(const Ctx& c) {
  // I++; record X; Y ^= F(X).
  return [c](BasisIndex b) {
    b = c.increment_and_record(b, nullptr);
    std::uint64_t xval = c.get(c.x, b);
    return c.set(c.y, b, c.get(c.y, b) ^ c.f_of(b, xval));
  };
}

BasisMap make_ro(const Ctx& c) {
  // Y ^= H_K(X).
  return [c](BasisIndex b) {
    std::uint64_t idx = c.h_index(c.get(c.k, b), c.get(c.x, b));
    return c.set(c.y, b, c.get(c.y, b) ^ c.h_of(b, idx));
  };
}

BasisMap make_fev(const Ctx& c) {
  // I++; record X; F(X) ^= Y.
  return [c](BasisIndex b) {
    b = c.increment_and_record(b, nullptr);
    std::uint64_t xval = c.get(c.x, b);
    return c.f_put(b, xval, c.f_get(b, xval) ^ c.get(c.y, b));
  };
}

BasisMap make_fro(const Ctx& c) {
  // H_K(X) ^= Y.
  return [c](BasisIndex b) {
    std::uint64_t idx = c.h_index(c.get(c.k, b), c.get(c.x, b));
    return c.h_put(b, idx, c.h_get(b, idx) ^ c.get(c.y, b));
  };
}

BasisMap make_ev_real(const Ctx& c) {
  // I++; record X; Y ^= H_{K1}(X ^ K2).
  return [c](BasisIndex b) {
    b = c.increment_and_record(b, nullptr);
    std::uint64_t idx = c.h_index(c.key1_of(b), c.get(c.x, b) ^ c.key2_of(b));
    return c.set(c.y, b, c.get(c.y, b) ^ c.h_of(b, idx));
  };
}

BasisMap make_fev_real(const Ctx& c) {
  // I++; record X; H_{K1}(X ^ K2) ^= Y.
  return [c](BasisIndex b) {
    b = c.increment_and_record(b, nullptr);
    std::uint64_t idx = c.h_index(c.key1_of(b), c.get(c.x, b) ^ c.key2_of(b));
    return c.h_put(b, idx, c.h_get(b, idx) ^ c.get(c.y, b));
  };
}

BasisMap make_fev_bad(const Ctx& c) {
  // The identical-until-bad Ev: a fresh input whose H entry (or, to stay a
  // permutation, F entry) is nonzero gets its F and H storage swapped before
  // Y lands in F(X).
  return [c](BasisIndex b) {
    std::uint64_t i_pre = 0;
    b = c.increment_and_record(b, &i_pre);
    std::uint64_t xval = c.get(c.x, b);
    bool fresh = !c.in_recorded(b, i_pre, xval);
    std::uint64_t hidx = c.h_index(c.key1_of(b), xval ^ c.key2_of(b));
    std::uint64_t hv = c.h_get(b, hidx);
    std::uint64_t fv = c.f_get(b, xval);
    if (fresh && (hv != 0 || fv != 0)) {
      b = c.f_put(b, xval, hv);
      b = c.h_put(b, hidx, fv);
    }
    return c.f_put(b, xval, c.f_get(b, xval) ^ c.get(c.y, b));
  };
}

BasisMap make_fro_bad(const Ctx& c) {
  // The identical-until-bad Ro: queries that alias a recorded construction
  // input land in F instead of H.
  return [c](BasisIndex b) {
    std::uint64_t kval = c.get(c.k, b);
    std::uint64_t xval = c.get(c.x, b);
    std::uint64_t shifted = xval ^ c.key2_of(b);
    bool bad = kval == c.key1_of(b) && c.in_recorded(b, c.get(c.i, b), shifted);
    if (bad) {
      return c.f_put(b, shifted, c.f_get(b, shifted) ^ c.get(c.y, b));
    }
    std::uint64_t idx = c.h_index(kval, xval);
    return c.h_put(b, idx, c.h_get(b, idx) ^ c.get(c.y, b));
  };
}

BasisMap make_swap_t(const Ctx& c) {
  // Swaps F(x) and H_{K1}(x ^ K2) for each distinct recorded x.
  return [c](BasisIndex b) {
    std::uint64_t limit = std::min<std::uint64_t>(c.get(c.i, b), c.q);
    std::uint64_t seen[24];
    std::size_t nseen = 0;
    for (std::uint64_t s = 1; s <= limit; ++s) {
      std::uint64_t xval = c.slot_get(b, s);
      bool dup = false;
      for (std::size_t t = 0; t < nseen; ++t) dup = dup || seen[t] == xval;
      if (dup) continue;
      seen[nseen++] = xval;
      std::uint64_t hidx = c.h_index(c.key1_of(b), xval ^ c.key2_of(b));
      std::uint64_t hv = c.h_get(b, hidx);
      std::uint64_t fv = c.f_get(b, xval);
      b = c.f_put(b, xval, hv);
      b = c.h_put(b, hidx, fv);
    }
    return b;
  };
}

BasisMap build_core(OracleKind kind, const Ctx& c) {
  switch (kind) {
    case OracleKind::kEv: return make_ev(c);
    case OracleKind::kRo: return make_ro(c);
    case OracleKind::kFEv: return make_fev(c);
    case OracleKind::kFRo: return make_fro(c);
    case OracleKind::kEvReal: return make_ev_real(c);
    case OracleKind::kFEvReal: return make_fev_real(c);
    case OracleKind::kFEvBad: return make_fev_bad(c);
    case OracleKind::kFRoBad: return make_fro_bad(c);
    case OracleKind::kSwapT: return make_swap_t(c);
  }
  throw std::logic_error("unreachable");
}

// --------------------------- game assembly --------------------------------

struct WrappedOracle {
  std::vector<std::string> h_regs;  // Hadamard sandwich around the core
  bool t_sandwich = false;
  BasisMap core;
};

struct GameSpec {
  std::vector<std::string> init_h;  // registers initialized to uniform superposition
  WrappedOracle ev;
  WrappedOracle ro;
  bool post_t = false;
  std::vector<std::string> post_h;
  BasisMap t_map;  // present when post_t or a t_sandwich is used
};

void apply_gate(qsim::StateVector& state, const CircuitOp& op) {
  switch (op.gate) {
    case GateKind::kH: state.apply_h(op.targets[0]); break;
    case GateKind::kX: state.apply_x(op.targets[0]); break;
    case GateKind::kCnot: state.apply_cnot(op.targets[0], op.targets[1]); break;
    case GateKind::kToffoli:
      state.apply_toffoli(op.targets[0], op.targets[1], op.targets[2]);
      break;
    case GateKind::kCz: state.apply_cz(op.targets[0], op.targets[1]); break;
  }
}

void apply_wrapped(qsim::StateVector& state, const WrappedOracle& o, const BasisMap& t_map) {
  for (const auto& r : o.h_regs) state.apply_h_register(r);
  if (o.t_sandwich) state.apply_basis_map(t_map);
  state.apply_basis_map(o.core);
  if (o.t_sandwich) state.apply_basis_map(t_map);
  for (const auto& r : o.h_regs) state.apply_h_register(r);
}

// Runs the game. stop_before_call in [1, p+q] halts right before that oracle
// call's core map, after the call's pre-wrappers, and hands the state back.
double run_game(const qsim::RegisterLayout& layout, const GameSpec& spec,
                const AdversaryCircuit& adv, int stop_before_call,
                qsim::StateVector* stopped_state, CircuitOp::Kind* stopped_kind) {
  const int visible = 1 + layout.field("K").width + layout.field("X").width +
                      layout.field("Y").width;
  qsim::StateVector state(layout);
  for (const auto& r : spec.init_h) state.apply_h_register(r);
  int call_index = 0;
  for (const auto& op : adv.ops) {
    if (op.kind == CircuitOp::Kind::kGate) {
      validate_gate(op, visible);
      apply_gate(state, op);
      continue;
    }
    const WrappedOracle& o = op.kind == CircuitOp::Kind::kCallEv ? spec.ev : spec.ro;
    ++call_index;
    if (call_index == stop_before_call) {
      for (const auto& r : o.h_regs) state.apply_h_register(r);
      if (o.t_sandwich) state.apply_basis_map(spec.t_map);
      *stopped_state = state;
      *stopped_kind = op.kind;
      return 0.0;
    }
    apply_wrapped(state, o, spec.t_map);
  }
  if (stop_before_call > 0) throw std::logic_error("stop index past the last oracle call");
  if (spec.post_t) state.apply_basis_map(spec.t_map);
  for (const auto& r : spec.post_h) state.apply_h_register(r);
  return state.prob_register_equals("W", 1);
}

// --------------------------- layouts ---------------------------------------

qsim::RegisterLayout make_layout(const HybridParams& prm, int q, bool with_h, bool with_f,
                                 bool with_keys) {
  std::vector<std::pair<std::string, int>> regs{
      {"W", 1}, {"K", prm.k}, {"X", prm.n}, {"Y", prm.m}};
  if (with_h) regs.emplace_back("H", (1 << (prm.k + prm.n)) * prm.m);
  if (with_f) regs.emplace_back("F", (1 << prm.n) * prm.m);
  if (with_keys) {
    regs.emplace_back("K1", prm.k);
    regs.emplace_back("K2", prm.n);
  }
  if (q >= 1) {
    regs.emplace_back("I", bits_for_count(q));
    regs.emplace_back("Xv", q * prm.n);
  }
  return qsim::RegisterLayout(std::move(regs));
}

// Averages the game probability over classical draws: exhaustive enumeration
// of the packed assignment when the joint space has at most 2^20 points,
// Monte Carlo with direct table draws otherwise.
double average_classical(int classical_bits, Rng& rng, std::uint64_t mc_trials,
                         const std::function<double(std::uint64_t)>& game_at_packed,
                         const std::function<double(Rng&)>& game_at_draw) {
  if (classical_bits <= 20) {
    double acc = 0.0;
    const std::uint64_t total = pow2(classical_bits);
    for (std::uint64_t a = 0; a < total; ++a) acc += game_at_packed(a);
    return acc / static_cast<double>(total);
  }
  double acc = 0.0;
  for (std::uint64_t t = 0; t < mc_trials; ++t) {
    Rng draw = rng.fork(t);
    acc += game_at_draw(draw);
  }
  return acc / static_cast<double>(mc_trials);
}

std::vector<Word> unpack_chunks(std::uint64_t packed, std::size_t count, int bits) {
  std::vector<Word> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = static_cast<Word>((packed >> (i * bits)) & (pow2(bits) - 1));
  }
  return out;
}

std::vector<Word> draw_chunks(Rng& rng, std::size_t count, int bits) {
  std::vector<Word> out(count);
  for (auto& v : out) v = static_cast<Word>(rng.next_below(pow2(bits)));
  return out;
}

}  // namespace

// --------------------------- public surface --------------------------------

int AdversaryCircuit::ev_calls() const {
  int n = 0;
  for (const auto& op : ops) n += op.kind == CircuitOp::Kind::kCallEv;
  return n;
}

int AdversaryCircuit::ro_calls() const {
  int n = 0;
  for (const auto& op : ops) n += op.kind == CircuitOp::Kind::kCallRo;
  return n;
}

std::string AdversaryCircuit::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& op : ops) {
    nlohmann::json j;
    switch (op.kind) {
      case CircuitOp::Kind::kGate:
        j["op"] = "gate";
        j["kind"] = kGateNames[static_cast<int>(op.gate)];
        j["targets"] = op.targets;
        break;
      case CircuitOp::Kind::kCallEv: j["op"] = "ev"; break;
      case CircuitOp::Kind::kCallRo: j["op"] = "ro"; break;
    }
    arr.push_back(std::move(j));
  }
  return arr.dump();
}

AdversaryCircuit AdversaryCircuit::from_json(const std::string& text) {
  nlohmann::json arr = nlohmann::json::parse(text);
  AdversaryCircuit c;
  for (const auto& j : arr) {
    std::string op = j.at("op").get<std::string>();
    if (op == "ev") {
      c.ops.push_back(CircuitOp::ev());
    } else if (op == "ro") {
      c.ops.push_back(CircuitOp::ro());
    } else if (op == "gate") {
      c.ops.push_back(CircuitOp::gate_op(gate_from_name(j.at("kind").get<std::string>()),
                                         j.at("targets").get<std::vector<int>>()));
    } else {
      throw std::invalid_argument("unknown circuit op: " + op);
    }
  }
  return c;
}

AdversaryCircuit random_circuit(int k, int n, int m, int ev_calls, int ro_calls, int gates,
                                Rng& rng) {
  const int visible = 1 + k + n + m;
  AdversaryCircuit c;
  for (int i = 0; i < ev_calls; ++i) c.ops.push_back(CircuitOp::ev());
  for (int i = 0; i < ro_calls; ++i) c.ops.push_back(CircuitOp::ro());
  for (int g = 0; g < gates; ++g) {
    // Hadamards dominate so oracle inputs are usually in superposition.
    static constexpr GateKind kPool[] = {GateKind::kH,  GateKind::kH,    GateKind::kH,
                                         GateKind::kX,  GateKind::kCnot, GateKind::kCnot,
                                         GateKind::kCz, GateKind::kToffoli};
    GateKind kind = kPool[rng.next_below(std::size(kPool))];
    if (gate_arity(kind) > visible) kind = GateKind::kH;
    std::vector<int> targets;
    while (static_cast<int>(targets.size()) < gate_arity(kind)) {
      int t = static_cast<int>(rng.next_below(visible));
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    c.ops.push_back(CircuitOp::gate_op(kind, std::move(targets)));
  }
  // Shuffle so the oracle calls sit at arbitrary positions.
  for (std::size_t i = c.ops.size(); i > 1; --i) {
    std::size_t j = rng.next_below(i);
    std::swap(c.ops[i - 1], c.ops[j]);
  }
  return c;
}

HybridId hybrid_from_name(const std::string& name) {
  static const std::pair<const char*, HybridId> table[] = {
      {"h0", HybridId::kH0}, {"h1", HybridId::kH1}, {"h2", HybridId::kH2},
      {"h3", HybridId::kH3}, {"h4", HybridId::kH4}, {"h5", HybridId::kH5},
      {"h6", HybridId::kH6}, {"h7", HybridId::kH7}, {"h8", HybridId::kH8},
      {"h9", HybridId::kH9}, {"t3", HybridId::kT3}, {"t4", HybridId::kT4}};
  for (const auto& [s, id] : table) {
    if (name == s) return id;
  }
  throw std::invalid_argument("unknown hybrid: " + name);
}

std::string hybrid_name(HybridId id) {
  static const char* names[] = {"h0", "h1", "h2", "h3", "h4", "h5",
                                "h6", "h7", "h8", "h9", "t3", "t4"};
  return names[static_cast<int>(id)];
}

OracleKind oracle_from_name(const std::string& name) {
  static const std::pair<const char*, OracleKind> table[] = {
      {"Ev", OracleKind::kEv},         {"Ro", OracleKind::kRo},
      {"FEv", OracleKind::kFEv},       {"FRo", OracleKind::kFRo},
      {"EvReal", OracleKind::kEvReal}, {"FEvReal", OracleKind::kFEvReal},
      {"FEv'", OracleKind::kFEvBad},   {"FRo'", OracleKind::kFRoBad},
      {"T", OracleKind::kSwapT}};
  for (const auto& [s, id] : table) {
    if (name == s) return id;
  }
  throw std::invalid_argument("unknown oracle: " + name);
}

qsim::RegisterLayout full_layout(const HybridParams& params, int ev_calls) {
  return make_layout(params, std::max(ev_calls, 1), true, true, true);
}

std::function<qsim::BasisIndex(qsim::BasisIndex)> build_oracle(
    OracleKind kind, const HybridParams& params, const qsim::RegisterLayout& layout) {
  int q = layout.has("Xv") ? layout.field("Xv").width / params.n : 0;
  Ctx c = Ctx::make(params, q, layout);
  return build_core(kind, c);
}

double run_hybrid(HybridId id, const AdversaryCircuit& adv, const HybridParams& params, Rng& rng,
                  std::uint64_t mc_trials) {
  const int q = adv.ev_calls();
  const int p = adv.ro_calls();
  (void)p;
  const HybridParams& prm = params;
  const int hbits = (1 << (prm.k + prm.n)) * prm.m;
  const int fbits = (1 << prm.n) * prm.m;

  auto quantum_game = [&](bool with_h, bool with_f, bool with_keys,
                          const std::function<GameSpec(const Ctx&)>& build) {
    qsim::RegisterLayout layout = make_layout(prm, q, with_h, with_f, with_keys);
    Ctx c = Ctx::make(prm, q, layout);
    GameSpec spec = build(c);
    return run_game(layout, spec, adv, 0, nullptr, nullptr);
  };

  switch (id) {
    case HybridId::kH0: {
      // Classical H and F; plain oracles.
      qsim::RegisterLayout layout = make_layout(prm, q, false, false, false);
      auto game_with = [&](const std::vector<Word>& ht, const std::vector<Word>& ft) {
        Ctx c = Ctx::make(prm, q, layout);
        c.cl_h = &ht;
        c.cl_f = &ft;
        GameSpec spec;
        spec.ev.core = make_ev(c);
        spec.ro.core = make_ro(c);
        return run_game(layout, spec, adv, 0, nullptr, nullptr);
      };
      return average_classical(
          hbits + fbits, rng, mc_trials,
          [&](std::uint64_t a) {
            return game_with(unpack_chunks(a, pow2(prm.k + prm.n), prm.m),
                             unpack_chunks(a >> hbits, pow2(prm.n), prm.m));
          },
          [&](Rng& draw) {
            return game_with(draw_chunks(draw, pow2(prm.k + prm.n), prm.m),
                             draw_chunks(draw, pow2(prm.n), prm.m));
          });
    }
    case HybridId::kH1:
      return quantum_game(true, true, false, [&](const Ctx& c) {
        GameSpec spec;
        spec.init_h = {"H", "F"};
        spec.ev.core = make_ev(c);
        spec.ro.core = make_ro(c);
        return spec;
      });
    case HybridId::kH2:
      return quantum_game(true, true, false, [&](const Ctx& c) {
        GameSpec spec;
        spec.init_h = {"H", "F"};
        spec.ev = WrappedOracle{{"Y", "F"}, false, make_fev(c)};
        spec.ro = WrappedOracle{{"Y", "H"}, false, make_fro(c)};
        return spec;
      });
    case HybridId::kH3:
      return quantum_game(true, true, false, [&](const Ctx& c) {
        GameSpec spec;
        spec.ev = WrappedOracle{{"Y"}, false, make_fev(c)};
        spec.ro = WrappedOracle{{"Y"}, false, make_fro(c)};
        spec.post_h = {"H", "F"};
        return spec;
      });
    case HybridId::kH9: {
      qsim::RegisterLayout layout = make_layout(prm, q, false, false, false);
      auto game_with = [&](const std::vector<Word>& ht, Word key1, Word key2) {
        Ctx c = Ctx::make(prm, q, layout);
        c.cl_h = &ht;
        c.cl_k1 = key1;
        c.cl_k2 = key2;
        GameSpec spec;
        spec.ev.core = make_ev_real(c);
        spec.ro.core = make_ro(c);
        return run_game(layout, spec, adv, 0, nullptr, nullptr);
      };
      return average_classical(
          hbits + prm.k + prm.n, rng, mc_trials,
          [&](std::uint64_t a) {
            return game_with(unpack_chunks(a, pow2(prm.k + prm.n), prm.m),
                             static_cast<Word>((a >> hbits) & (pow2(prm.k) - 1)),
                             static_cast<Word>((a >> (hbits + prm.k)) & (pow2(prm.n) - 1)));
          },
          [&](Rng& draw) {
            auto ht = draw_chunks(draw, pow2(prm.k + prm.n), prm.m);
            Word key1 = static_cast<Word>(draw.next_below(pow2(prm.k)));
            Word key2 = static_cast<Word>(draw.next_below(pow2(prm.n)));
            return game_with(ht, key1, key2);
          });
    }
    case HybridId::kH8:
      return quantum_game(true, false, true, [&](const Ctx& c) {
        GameSpec spec;
        spec.init_h = {"H", "K1", "K2"};
        spec.ev.core = make_ev_real(c);
        spec.ro.core = make_ro(c);
        return spec;
      });
    case HybridId::kH7:
      return quantum_game(true, false, true, [&](const Ctx& c) {
        GameSpec spec;
        spec.init_h = {"H", "K1", "K2"};
        spec.ev = WrappedOracle{{"Y", "H"}, false, make_fev_real(c)};
        spec.ro = WrappedOracle{{"Y", "H"}, false, make_fro(c)};
        return spec;
      });
    case HybridId::kH6:
      return quantum_game(true, false, true, [&](const Ctx& c) {
        GameSpec spec;
        spec.init_h = {"K1", "K2"};
        spec.ev = WrappedOracle{{"Y"}, false, make_fev_real(c)};
        spec.ro = WrappedOracle{{"Y"}, false, make_fro(c)};
        spec.post_h = {"H"};
        return spec;
      });
    case HybridId::kH5:
      return quantum_game(true, true, true, [&](const Ctx& c) {
        GameSpec spec;
        spec.init_h = {"K1", "K2"};
        spec.t_map = make_swap_t(c);
        spec.ev = WrappedOracle{{"Y"}, true, make_fev_real(c)};
        spec.ro = WrappedOracle{{"Y"}, true, make_fro(c)};
        spec.post_t = true;
        spec.post_h = {"H"};
        return spec;
      });
    case HybridId::kH4:
      return quantum_game(true, true, true, [&](const Ctx& c) {
        GameSpec spec;
        spec.init_h = {"K1", "K2"};
        spec.t_map = make_swap_t(c);
        spec.ev = WrappedOracle{{"Y"}, false, make_fev_bad(c)};
        spec.ro = WrappedOracle{{"Y"}, false, make_fro_bad(c)};
        spec.post_t = true;
        spec.post_h = {"H"};
        return spec;
      });
    case HybridId::kT3:
      return quantum_game(true, true, true, [&](const Ctx& c) {
        GameSpec spec;
        spec.init_h = {"K1", "K2"};
        spec.ev = WrappedOracle{{"Y"}, false, make_fev(c)};
        spec.ro = WrappedOracle{{"Y"}, false, make_fro(c)};
        return spec;
      });
    case HybridId::kT4:
      return quantum_game(true, true, true, [&](const Ctx& c) {
        GameSpec spec;
        spec.init_h = {"K1", "K2"};
        spec.ev = WrappedOracle{{"Y"}, false, make_fev_bad(c)};
        spec.ro = WrappedOracle{{"Y"}, false, make_fro_bad(c)};
        return spec;
      });
  }
  throw std::logic_error("unreachable");
}

namespace {

ClaimResult run_claim(const std::vector<HybridId>& ids, const AdversaryCircuit& adv,
                      const HybridParams& params) {
  ClaimResult r;
  Rng rng(0, 0);
  for (HybridId id : ids) r.probs.push_back(run_hybrid(id, adv, params, rng));
  for (std::size_t i = 0; i < r.probs.size(); ++i) {
    for (std::size_t j = i + 1; j < r.probs.size(); ++j) {
      r.max_deviation = std::max(r.max_deviation, std::fabs(r.probs[i] - r.probs[j]));
    }
  }
  return r;
}

}  // namespace

ClaimResult check_claim1(const AdversaryCircuit& adv, const HybridParams& params) {
  return run_claim({HybridId::kH0, HybridId::kH1, HybridId::kH2, HybridId::kH3}, adv, params);
}

ClaimResult check_claim2(const AdversaryCircuit& adv, const HybridParams& params) {
  return run_claim(
      {HybridId::kH4, HybridId::kH5, HybridId::kH6, HybridId::kH7, HybridId::kH8, HybridId::kH9},
      adv, params);
}

std::vector<double> guess_game_masses(const AdversaryCircuit& adv, const HybridParams& params) {
  const int q = adv.ev_calls();
  const int p = adv.ro_calls();
  const int total = p + q;
  if (total == 0) return {};

  qsim::RegisterLayout layout = make_layout(params, q, true, true, true);
  Ctx c = Ctx::make(params, q, layout);
  GameSpec spec;
  spec.init_h = {"K1", "K2"};
  spec.ev = WrappedOracle{{"Y"}, false, make_fev(c)};
  spec.ro = WrappedOracle{{"Y"}, false, make_fro(c)};

  std::vector<double> masses;
  for (int j = 1; j <= total; ++j) {
    qsim::StateVector state(layout);
    CircuitOp::Kind kind = CircuitOp::Kind::kCallEv;
    run_game(layout, spec, adv, j, &state, &kind);
    std::function<bool(BasisIndex)> bad;
    if (kind == CircuitOp::Kind::kCallEv) {
      bad = [&c](BasisIndex b) {
        std::uint64_t xval = c.get(c.x, b);
        if (c.in_recorded(b, c.get(c.i, b), xval)) return false;
        std::uint64_t hidx = c.h_index(c.key1_of(b), xval ^ c.key2_of(b));
        return c.h_get(b, hidx) != 0 || c.f_get(b, xval) != 0;
      };
    } else {
      bad = [&c](BasisIndex b) {
        if (c.get(c.k, b) != c.key1_of(b)) return false;
        std::uint64_t shifted = c.get(c.x, b) ^ c.key2_of(b);
        return c.in_recorded(b, c.get(c.i, b), shifted);
      };
    }
    masses.push_back(state.prob_of(bad));
  }
  return masses;
}

double run_quantum_guess_game(const AdversaryCircuit& adv, const HybridParams& params) {
  std::vector<double> masses = guess_game_masses(adv, params);
  if (masses.empty()) return 0.0;
  double acc = 0.0;
  for (double m : masses) acc += m;
  return acc / static_cast<double>(masses.size());
}

Claim3Result check_claim3(const AdversaryCircuit& adv, const HybridParams& params) {
  Claim3Result r;
  Rng rng(0, 0);
  r.prob_t3 = run_hybrid(HybridId::kT3, adv, params, rng);
  r.prob_t4 = run_hybrid(HybridId::kT4, adv, params, rng);
  r.delta = std::fabs(r.prob_t3 - r.prob_t4);
  const double p = adv.ro_calls();
  const double q = adv.ev_calls();
  r.bound = 2.0 * (p + q) * std::sqrt(2.0 * p * q / std::exp2(params.k + params.n));
  r.guess = run_quantum_guess_game(adv, params);
  r.o2h_bound = 2.0 * (p + q) * std::sqrt(r.guess);
  return r;
}

}  // namespace kle::hybrids
