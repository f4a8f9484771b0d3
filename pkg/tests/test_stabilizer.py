"""Tableau arithmetic, measurement rewrites, and the dense oracle."""

import random

import numpy as np
import pytest

from circlekit.errors import BoundExceeded, InvalidVertexError, PreconditionError
from circlekit.graphs import LabeledGraph, delete_vertex, local_complement, pivot
from circlekit.stabilizer import (
    PauliOperator,
    StabilizerTableau,
    apply_hadamards,
    conjugate_pauli_by_hadamards,
    correction_gate,
    graph_state_tableau,
    is_stabilized,
    lc_equivalent,
    measure_pauli,
    pauli_from_string,
    pauli_to_string,
    statevector_oracle,
    tableau_from_generators,
)
from oracles import (
    GATES,
    all_graphs,
    apply_corrections,
    graph_state_vector,
    project_plus_and_slice,
    proportional,
)


def path_graph(*labels):
    return LabeledGraph(labels, list(zip(labels, labels[1:])))


# -- Pauli operators ----------------------------------------------------------


def test_pauli_sign_validation():
    with pytest.raises(PreconditionError):
        PauliOperator(("a",), 1, 0, sign=2)


def test_pauli_support_validation():
    with pytest.raises(PreconditionError):
        PauliOperator(("a",), 2, 0, 1)


def test_pauli_commutation():
    x = pauli_from_string("+X", ("a",))
    z = pauli_from_string("+Z", ("a",))
    assert not x.commutes_with(z)
    xx = pauli_from_string("+XX", ("a", "b"))
    zz = pauli_from_string("+ZZ", ("a", "b"))
    assert xx.commutes_with(zz)


def test_pauli_string_round_trip():
    for text in ("+XZIZ", "-IYXZ", "+IIII", "-X"):
        p = pauli_from_string(text, tuple(range(len(text) - 1)))
        assert pauli_to_string(p) == text


def test_pauli_string_errors():
    with pytest.raises(PreconditionError):
        pauli_from_string("XZ", ("a", "b", "c"))
    with pytest.raises(PreconditionError):
        pauli_from_string("+XQ", ("a", "b"))


# -- tableaux -----------------------------------------------------------------


def test_graph_state_tableau_k2():
    t = graph_state_tableau(LabeledGraph((1, 2), [(1, 2)]))
    assert t.to_strings() == ["+XZ", "+ZX"]


def test_graph_state_tableau_star():
    g = LabeledGraph("c123", [("c", "1"), ("c", "2"), ("c", "3")])
    t = graph_state_tableau(g)
    # labels sort to (1, 2, 3, c)
    assert t.to_strings() == ["+XIIZ", "+IXIZ", "+IIXZ", "+ZZZX"]


def test_graph_state_tableau_edgeless():
    t = graph_state_tableau(LabeledGraph(range(3)))
    assert t.to_strings() == ["+XII", "+IXI", "+IIX"]


def test_tableau_rejects_anticommuting_rows():
    with pytest.raises(PreconditionError):
        StabilizerTableau(("a",), [(1, 0, 1), (0, 1, 1)])


def test_tableau_rejects_dependent_rows():
    with pytest.raises(PreconditionError):
        StabilizerTableau(("a", "b"), [(3, 0, 1), (1, 0, 1), (2, 0, 1)])


def test_tableau_from_generators_consistent_redundancy():
    qubits = (1, 2)
    gens = [
        pauli_from_string("+XZ", qubits),
        pauli_from_string("+ZX", qubits),
        pauli_from_string("+YY", qubits),  # XZ·ZX = -YY? no: equals +YY
    ]
    t = tableau_from_generators(qubits, gens)
    assert t.n == 2
    assert is_stabilized(t, gens[2])


def test_tableau_from_generators_rejects_minus_i():
    qubits = (1, 2)
    gens = [
        pauli_from_string("+XZ", qubits),
        pauli_from_string("+ZX", qubits),
        pauli_from_string("-YY", qubits),
    ]
    with pytest.raises(PreconditionError):
        tableau_from_generators(qubits, gens)


def test_canonical_rows_equal_for_equal_groups():
    qubits = (1, 2)
    t1 = graph_state_tableau(LabeledGraph(qubits, [(1, 2)]))
    t2 = tableau_from_generators(
        qubits,
        [pauli_from_string("+YY", qubits), pauli_from_string("+ZX", qubits)],
    )
    assert t1.canonical_rows() == t2.canonical_rows()
    t3 = graph_state_tableau(LabeledGraph(qubits))
    assert t1.canonical_rows() != t3.canonical_rows()


# -- Hadamard conjugation -----------------------------------------------------


def test_hadamard_empty_set_is_identity():
    t = graph_state_tableau(path_graph(1, 2, 3))
    assert apply_hadamards(t, ()) == t


def test_hadamard_swaps_x_and_z():
    t = graph_state_tableau(LabeledGraph((1,)))
    assert apply_hadamards(t, {1}).to_strings() == ["+Z"]


def test_hadamard_flips_y_sign():
    t = tableau_from_generators((1,), [pauli_from_string("+Y", (1,))])
    assert apply_hadamards(t, {1}).to_strings() == ["-Y"]


def test_hadamard_involution():
    rng = random.Random(3)
    for g in all_graphs(4):
        sub = frozenset(v for v in g.labels if rng.random() < 0.5)
        t = graph_state_tableau(g)
        assert apply_hadamards(apply_hadamards(t, sub), sub) == t


def test_hadamard_unknown_qubit():
    t = graph_state_tableau(LabeledGraph((1,)))
    with pytest.raises(InvalidVertexError):
        apply_hadamards(t, {9})
    with pytest.raises(InvalidVertexError):
        conjugate_pauli_by_hadamards(pauli_from_string("+X", (1,)), {9})


# -- membership ---------------------------------------------------------------


def test_rows_are_stabilized():
    for g in (path_graph(1, 2, 3), LabeledGraph("abc", [("a", "b")])):
        t = graph_state_tableau(g)
        for i in range(t.n):
            assert is_stabilized(t, t.row_operator(i))


def test_negated_row_is_not_stabilized():
    t = graph_state_tableau(path_graph(1, 2))
    row = t.row_operator(0)
    neg = PauliOperator(row.qubits, row.x, row.z, -row.sign)
    assert not is_stabilized(t, neg)


def test_products_of_rows_are_stabilized():
    g = path_graph(1, 2, 3)
    t = graph_state_tableau(g)
    # X1 Z2 · Z1 X2 Z3 = +Y Y Z
    assert is_stabilized(t, pauli_from_string("+YYZ", (1, 2, 3)))
    assert not is_stabilized(t, pauli_from_string("-YYZ", (1, 2, 3)))
    # operators outside the group
    assert not is_stabilized(t, pauli_from_string("+XXX", (1, 2, 3)))


# -- LC equivalence -----------------------------------------------------------


def test_lc_equivalent_reflexive():
    g = path_graph(1, 2, 3)
    assert lc_equivalent(g, g)


def test_lc_equivalent_triangle_path():
    k3 = LabeledGraph((1, 2, 3), [(1, 2), (2, 3), (1, 3)])
    assert lc_equivalent(k3, path_graph(1, 2, 3))
    assert lc_equivalent(k3, local_complement(k3, 2))


def test_lc_equivalent_distinguishes_connectivity():
    k3 = LabeledGraph((1, 2, 3), [(1, 2), (2, 3), (1, 3)])
    split = LabeledGraph((1, 2, 3), [(1, 2)])
    assert not lc_equivalent(k3, split)


def test_lc_equivalent_requires_same_vertices():
    with pytest.raises(PreconditionError):
        lc_equivalent(LabeledGraph((1, 2)), LabeledGraph((1, 3)))


# -- measurements -------------------------------------------------------------


def test_measure_z_on_k2():
    g = LabeledGraph((1, 2), [(1, 2)])
    h, corr = measure_pauli(g, 1, "Z")
    assert h == LabeledGraph((2,))
    assert corr == ()


def test_measure_y_on_star_center():
    g = path_graph(2, 1, 3)  # star with center 1
    h, corr = measure_pauli(g, 1, "Y")
    assert h == LabeledGraph((2, 3), [(2, 3)])
    assert corr == (("S", 2), ("S", 3))


def test_measure_x_on_path_end():
    g = path_graph(1, 2, 3)
    h, corr = measure_pauli(g, 1, "X")
    # pivot on (1,2) then delete 1 leaves 2 and 3 disconnected; the
    # square-root-of-iY correction on the partner carries the entanglement
    assert h == LabeledGraph((2, 3))
    assert corr == (("sqrt_plus_iY", 2),)


def test_measure_x_isolated():
    g = LabeledGraph((1, 2), [])
    h, corr = measure_pauli(g, 1, "X")
    assert h == LabeledGraph((2,))
    assert corr == ()


def test_measure_errors():
    g = path_graph(1, 2)
    with pytest.raises(InvalidVertexError):
        measure_pauli(g, 9, "Z")
    with pytest.raises(PreconditionError):
        measure_pauli(g, 1, "W")


def test_measurement_matches_statevector_oracle():
    for n in range(1, 5):
        for g in all_graphs(n):
            for v in g.labels:
                for basis in ("X", "Y", "Z"):
                    _check_measurement(g, v, basis)


def test_measurement_oracle_sampled_n5():
    rng = random.Random(19)
    pairs = [(i, j) for i in range(5) for j in range(i + 1, 5)]
    for _ in range(40):
        edges = [e for e in pairs if rng.random() < 0.5]
        g = LabeledGraph(range(5), edges)
        v = rng.randrange(5)
        basis = rng.choice(("X", "Y", "Z"))
        _check_measurement(g, v, basis)


def _check_measurement(g, v, basis):
    psi = graph_state_vector(g)
    got = project_plus_and_slice(psi, g.index(v), GATES[basis])
    h, corr = measure_pauli(g, v, basis)
    want = graph_state_vector(h) if h.n else [1.0]
    want = apply_corrections(want, h.labels, corr)
    assert proportional(got, want), (g.edges(), v, basis)


def test_x_measurement_partner_choice_is_lc_irrelevant():
    # any admissible partner would do: results for different partners agree
    # up to LC equivalence
    g = LabeledGraph(range(4), [(0, 1), (0, 2), (0, 3), (1, 2)])
    h_default, _ = measure_pauli(g, 0, "X")
    for b in (2, 3):
        alt = delete_vertex(pivot(g, 0, b), 0)
        assert lc_equivalent(h_default, alt)


# -- dense oracle -------------------------------------------------------------


def test_statevector_k1():
    v = statevector_oracle(LabeledGraph((0,)))
    assert np.allclose(v, np.array([1, 1]) / np.sqrt(2))


def test_statevector_k2():
    v = statevector_oracle(LabeledGraph((0, 1), [(0, 1)]))
    assert np.allclose(v, np.array([1, 1, 1, -1]) / 2)


def test_statevector_bound():
    with pytest.raises(BoundExceeded):
        statevector_oracle(LabeledGraph(range(7)))


def test_statevector_amplitudes_are_uniform_magnitude():
    for g in all_graphs(3):
        v = statevector_oracle(g)
        assert np.allclose(np.abs(v), 2 ** -1.5)


def test_statevector_is_fixed_by_tableau_rows():
    for n in range(1, 5):
        for g in all_graphs(n):
            tab = graph_state_tableau(g)
            vec = list(statevector_oracle(g))
            for i in range(tab.n):
                op = tab.row_operator(i)
                out = list(vec)
                for qi, q in enumerate(tab.qubits):
                    xb = op.x >> qi & 1
                    zb = op.z >> qi & 1
                    name = "IXZY"[xb + 2 * zb]
                    if name != "I":
                        from oracles import apply_single

                        out = apply_single(out, qi, GATES[name])
                if op.sign < 0:
                    out = [-a for a in out]
                assert np.allclose(out, vec), (g.edges(), i)


# -- correction gates ---------------------------------------------------------


def test_correction_gate_unknown():
    with pytest.raises(PreconditionError):
        correction_gate("T")


def test_correction_gates_unitary():
    for name in ("H", "S", "Sdg", "sqrt_plus_iY", "sqrt_minus_iY", "X", "Y", "Z"):
        m = correction_gate(name)
        assert np.allclose(m @ m.conj().T, np.eye(2)), name


def test_sqrt_iy_gates_square_correctly():
    y = correction_gate("Y")
    plus = correction_gate("sqrt_plus_iY")
    minus = correction_gate("sqrt_minus_iY")
    assert np.allclose(plus @ plus, 1j * y)
    assert np.allclose(minus @ minus, -1j * y)
    assert np.allclose(plus @ minus, np.eye(2))
