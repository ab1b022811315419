// Heavier hybrid-game checks: an exhaustive sweep over a structured family
// of micro circuits, and one spot check on the widest register layout.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "kle/hybrids.hpp"

using namespace kle;
using namespace kle::hybrids;

TEST_CASE("exhaustive micro-circuit sweep keeps every claim inside tolerance") {
  // Circuits of the form [g1?, call, g2?, call, H(Y), CNOT(Y -> W)] with the
  // two oracle calls in either order and g's drawn from every 1- and 2-qubit
  // gate on the visible block.
  std::vector<CircuitOp> gates;
  for (int q = 0; q < 4; ++q) gates.push_back(CircuitOp::gate_op(GateKind::kH, {q}));
  for (int q = 0; q < 4; ++q) gates.push_back(CircuitOp::gate_op(GateKind::kX, {q}));
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      if (a != b) gates.push_back(CircuitOp::gate_op(GateKind::kCnot, {a, b}));
    }
  }
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) gates.push_back(CircuitOp::gate_op(GateKind::kCz, {a, b}));
  }
  const int n_gates = static_cast<int>(gates.size());

  const HybridParams prm{1, 1, 1};
  double worst1 = 0.0, worst2 = 0.0;
  bool claim3_ok = true;
  long circuits = 0;
  for (int order = 0; order < 2; ++order) {
    for (int g1 = -1; g1 < n_gates; ++g1) {
      for (int g2 = -1; g2 < n_gates; ++g2) {
        AdversaryCircuit c;
        if (g1 >= 0) c.ops.push_back(gates[g1]);
        c.ops.push_back(order == 0 ? CircuitOp::ev() : CircuitOp::ro());
        if (g2 >= 0) c.ops.push_back(gates[g2]);
        c.ops.push_back(order == 0 ? CircuitOp::ro() : CircuitOp::ev());
        c.ops.push_back(CircuitOp::gate_op(GateKind::kH, {3}));
        c.ops.push_back(CircuitOp::gate_op(GateKind::kCnot, {3, 0}));
        worst1 = std::max(worst1, check_claim1(c, prm).max_deviation);
        worst2 = std::max(worst2, check_claim2(c, prm).max_deviation);
        auto r3 = check_claim3(c, prm);
        claim3_ok = claim3_ok && r3.delta <= std::min(1.0, r3.bound) + 1e-9 &&
                    r3.delta <= r3.o2h_bound + 1e-9;
        ++circuits;
      }
    }
  }
  CHECK(circuits == 1458);
  CHECK(worst1 <= 1e-9);
  CHECK(worst2 <= 1e-9);
  CHECK(claim3_ok);
}

TEST_CASE("claims hold on the widest layout (k=1, n=2, m=1)") {
  HybridParams prm{1, 2, 1};
  // visible: W=0, K=1, X=2..3, Y=4
  AdversaryCircuit c;
  c.ops.push_back(CircuitOp::gate_op(GateKind::kH, {2}));
  c.ops.push_back(CircuitOp::gate_op(GateKind::kH, {3}));
  c.ops.push_back(CircuitOp::ev());
  c.ops.push_back(CircuitOp::gate_op(GateKind::kH, {1}));
  c.ops.push_back(CircuitOp::ro());
  c.ops.push_back(CircuitOp::gate_op(GateKind::kH, {4}));
  c.ops.push_back(CircuitOp::gate_op(GateKind::kCnot, {4, 0}));
  CHECK(check_claim1(c, prm).max_deviation <= 1e-9);
  CHECK(check_claim2(c, prm).max_deviation <= 1e-9);
  auto r3 = check_claim3(c, prm);
  CHECK(r3.delta <= r3.o2h_bound + 1e-9);
  // One ro call on a uniform key register after one recorded ev query:
  // the bad-set mass is q / 2^(k+n) at the ro index, zero at the ev index.
  auto masses = guess_game_masses(c, prm);
  REQUIRE(masses.size() == 2);
  CHECK(masses[0] == doctest::Approx(0.0));
  CHECK(masses[1] == doctest::Approx(1.0 / 8.0));
}
