import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from chordcycles import (
    CyclicMinorModel,
    Graph,
    PreconditionError,
    ValidationError,
    generate,
    grid_block_partition,
    k3_model,
    k4_model,
    k5_model,
    k6_from_bipartite,
    kll_prime_graph,
    kll_prime_model,
    verify_model,
)
from chordcycles.oracle import first_hamiltonian_cycle

from helpers import complete, cyc, figure_eight, icosahedron, petersen, prism


class TestVerifyModel:
    def k3_on_c3(self):
        g = cyc(3)
        return CyclicMinorModel(
            host=g,
            host_cycle=(0, 1, 2),
            arcs=((0,), (1,), (2,)),
            target=complete(3),
            target_cycle=(0, 1, 2),
            target_name="K3",
        )

    def test_accepts_identity_triangle(self):
        assert verify_model(self.k3_on_c3())

    def test_missing_target_edge_fails(self):
        # C4 split into 4 singleton arcs misses both diagonals of K4.
        g = cyc(4)
        m = CyclicMinorModel(
            host=g,
            host_cycle=(0, 1, 2, 3),
            arcs=((0,), (1,), (2,), (3,)),
            target=complete(4),
            target_cycle=(0, 1, 2, 3),
            target_name="K4",
        )
        assert not verify_model(m)

    def test_arcs_must_tile_cycle(self):
        base = self.k3_on_c3()
        m = CyclicMinorModel(
            host=base.host,
            host_cycle=(0, 1, 2),
            arcs=((0,), (2,), (1,)),
            target=base.target,
            target_cycle=(0, 1, 2),
            target_name="K3",
        )
        with pytest.raises(ValidationError):
            verify_model(m)

    def test_empty_arc_rejected(self):
        base = self.k3_on_c3()
        m = CyclicMinorModel(
            host=base.host,
            host_cycle=(0, 1, 2),
            arcs=((0,), (1, 2), ()),
            target=base.target,
            target_cycle=(0, 1, 2),
            target_name="K3",
        )
        with pytest.raises(ValidationError):
            verify_model(m)

    def test_target_cycle_must_be_hamiltonian(self):
        base = self.k3_on_c3()
        m = CyclicMinorModel(
            host=base.host,
            host_cycle=(0, 1, 2),
            arcs=((0,), (1,), (2,)),
            target=complete(3),
            target_cycle=(0, 1),
            target_name="K3",
        )
        with pytest.raises(ValidationError):
            verify_model(m)

    def test_surplus_host_edges_harmless(self):
        g = complete(5)
        m = CyclicMinorModel(
            host=g,
            host_cycle=(0, 1, 2, 3, 4),
            arcs=((0,), (1,), (2, 3, 4)),
            target=complete(3),
            target_cycle=(0, 1, 2),
            target_name="K3",
        )
        assert verify_model(m)


class TestK3Model:
    def test_triangle(self):
        m = k3_model(cyc(3))
        assert m.arcs == ((0,), (1,), (2,))
        assert verify_model(m)

    def test_c9_balanced_arcs(self):
        m = k3_model(cyc(9))
        assert m.arcs == ((0, 1, 2), (3, 4, 5), (6, 7, 8))

    def test_petersen(self):
        m = k3_model(petersen())
        assert m.host_cycle == (0, 1, 2, 3, 4)
        assert m.arcs == ((0, 1), (2, 3), (4,))

    def test_degree_precondition(self):
        tree = Graph(4, [(0, 1), (1, 2), (1, 3)])
        with pytest.raises(PreconditionError):
            k3_model(tree)

    def test_random_min_degree_two_hosts(self):
        for seed in range(40):
            rng = random.Random(seed)
            n = rng.randint(3, 12)
            g = generate("random_min_degree", {"n": n, "min_degree": 2}, seed=seed)
            assert verify_model(k3_model(g))


class TestK4Model:
    def test_k4_itself(self):
        m = k4_model(complete(4), (0, 1, 2, 3))
        assert m.arcs == ((0,), (1,), (2,), (3,))
        assert verify_model(m)

    def test_prism(self):
        m = k4_model(prism(), (0, 1, 4, 3, 5, 2))
        assert m.host_cycle == (2, 0, 1, 4, 3, 5)
        assert m.arcs == ((2,), (0,), (1,), (4, 3, 5))

    def test_chordless_cycle_rejected(self):
        with pytest.raises(PreconditionError):
            k4_model(cyc(5), tuple(range(5)))

    def test_degree_precondition(self):
        g = cyc(4)
        with pytest.raises(PreconditionError):
            k4_model(g, (0, 1, 2, 3))

    def test_dense_random_hosts(self):
        for seed in range(25):
            g = generate("random_min_degree", {"n": 9, "min_degree": 4}, seed=seed)
            cycle = first_hamiltonian_cycle(g)
            if cycle is None:
                continue
            assert verify_model(k4_model(g, cycle))


class TestK5Model:
    def test_k7(self):
        m = k5_model(complete(7), tuple(range(7)))
        assert m.host_cycle == (3, 4, 5, 6, 0, 1, 2)
        assert m.arcs == ((3,), (4, 5, 6), (0,), (1,), (2,))
        assert verify_model(m)

    def test_k8(self):
        m = k5_model(complete(8), tuple(range(8)))
        assert m.host_cycle == (4, 5, 6, 7, 0, 1, 2, 3)
        assert m.arcs == ((4,), (5, 6, 7), (0, 1), (2,), (3,))
        assert verify_model(m)

    def test_icosahedron_too_sparse(self):
        g = icosahedron()
        cycle = first_hamiltonian_cycle(g)
        with pytest.raises(PreconditionError) as exc:
            k5_model(g, cycle)
        assert "30 < 36" in str(exc.value)

    def test_dense_random_hosts(self):
        hits = 0
        for seed in range(30):
            g = generate("random_min_degree", {"n": 10, "min_degree": 6}, seed=seed)
            if g.edge_count < 3 * g.n:
                continue
            cycle = first_hamiltonian_cycle(g)
            if cycle is None:
                continue
            assert verify_model(k5_model(g, cycle))
            hits += 1
        assert hits >= 10


class TestGridPartition:
    @staticmethod
    def brute_exists(matrix, a):
        # Every block of the product partition must contain a 1, the
        # diagonal ones included.
        m = len(matrix)
        if a > m:
            return False
        for rows in itertools.combinations(range(1, m), a - 1):
            for cols in itertools.combinations(range(1, m), a - 1):
                rcuts = (0,) + rows + (m,)
                ccuts = (0,) + cols + (m,)
                ok = True
                for i in range(a):
                    for j in range(a):
                        if not any(
                            matrix[r][c]
                            for r in range(rcuts[i], rcuts[i + 1])
                            for c in range(ccuts[j], ccuts[j + 1])
                        ):
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    return True
        return False

    def test_all_ones(self):
        matrix = [[1] * 4 for _ in range(4)]
        out = grid_block_partition(matrix, 2)
        assert out.exact
        assert out.partition.row_cuts == (0, 1, 4)
        assert out.partition.col_cuts == (0, 1, 4)

    def test_identity_has_no_two_partition(self):
        matrix = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
        out = grid_block_partition(matrix, 2)
        assert out.exact
        assert out.partition is None
        assert not self.brute_exists(matrix, 2)

    def test_zeros(self):
        out = grid_block_partition([[0] * 3 for _ in range(3)], 2)
        assert out.partition is None and out.exact

    def test_one_block(self):
        out = grid_block_partition([[0, 1], [0, 0]], 1)
        assert out.partition is not None

    def test_validation(self):
        with pytest.raises(ValidationError):
            grid_block_partition([[1, 0]], 1)
        with pytest.raises(ValidationError):
            grid_block_partition([[1]], 0)
        with pytest.raises(ValidationError):
            grid_block_partition([[1]], 2)

    @settings(max_examples=120, deadline=None)
    @given(
        st.integers(min_value=1, max_value=7),
        st.integers(min_value=1, max_value=3),
        st.integers(min_value=0, max_value=2**31 - 1),
    )
    def test_exact_search_matches_brute_force(self, m, a, seed):
        rng = random.Random(seed)
        matrix = [[rng.randint(0, 1) for _ in range(m)] for _ in range(m)]
        if a > m:
            with pytest.raises(ValidationError):
                grid_block_partition(matrix, a)
            return
        out = grid_block_partition(matrix, a)
        assert out.exact
        assert (out.partition is not None) == self.brute_exists(matrix, a)
        if out.partition is not None:
            rcuts, ccuts = out.partition.row_cuts, out.partition.col_cuts
            for i in range(a):
                for j in range(a):
                    assert any(
                        matrix[r][c]
                        for r in range(rcuts[i], rcuts[i + 1])
                        for c in range(ccuts[j], ccuts[j + 1])
                    )


class TestKllPrime:
    def test_target_graph_shape(self):
        g, cycle = kll_prime_graph(3)
        assert g.n == 6
        assert cycle == (0, 1, 2, 3, 4, 5)
        # Complete bipartite part plus a path inside each side.
        assert g.has_edge(0, 3) and g.has_edge(2, 5)
        assert g.has_edge(0, 1) and g.has_edge(4, 5)
        assert not g.has_edge(0, 2)

    def test_k8_l2(self):
        m = kll_prime_model(complete(8), tuple(range(8)), 2)
        assert m.arcs == ((0,), (1,), (2, 3, 4), (5, 6, 7))
        assert verify_model(m)

    def test_bipartite_host(self):
        host = generate("complete_bipartite", {"a": 6, "b": 6})
        cycle = (0, 6, 1, 7, 2, 8, 3, 9, 4, 10, 5, 11)
        m = kll_prime_model(host, cycle, 2)
        assert m.arcs == ((0,), (6,), (1, 7, 2, 8), (3, 9, 4, 10, 5, 11))
        assert verify_model(m)

    def test_sparse_cycle_degenerates_to_k2(self):
        m = kll_prime_model(cyc(10), tuple(range(10)), 1)
        assert m is not None
        assert m.arcs == ((0,), (1, 2, 3, 4, 5, 6, 7, 8, 9))
        assert verify_model(m)

    def test_not_found_is_none(self):
        assert kll_prime_model(figure_eight(), tuple(range(15)), 4) is None

    def test_ell_validation(self):
        with pytest.raises(ValidationError):
            kll_prime_model(complete(8), tuple(range(8)), 0)


class TestK6FromBipartite:
    def test_k12(self):
        m = k6_from_bipartite(complete(12), tuple(range(12)))
        assert m.host_cycle == (11, 0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10)
        assert m.arcs == ((11, 0), (1,), (2,), (3, 4, 5, 6, 7, 8), (9,), (10,))
        assert verify_model(m)

    def test_figure_eight_honest_not_found(self):
        assert k6_from_bipartite(figure_eight(), tuple(range(15))) is None


class TestFigureEight:
    def test_manual_k6_model_verifies(self):
        g = figure_eight()
        cycle = (11, 12, 13, 14, 0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10)
        m = CyclicMinorModel(
            host=g,
            host_cycle=cycle,
            arcs=(
                (11, 12, 13, 14, 0),
                (1,),
                (2,),
                (3, 4, 5, 6, 7, 8),
                (9,),
                (10,),
            ),
            target=complete(6),
            target_cycle=(0, 1, 2, 3, 4, 5),
            target_name="K6",
        )
        assert verify_model(m)

    def test_no_k7_over_any_arc_split(self):
        """Every 7-arc split of the fixed 15-cycle misses some K7 pair."""
        g = figure_eight()
        k7 = complete(7)
        target_cycle = tuple(range(7))
        base = tuple(range(15))
        found = 0
        for cuts in itertools.combinations(range(15), 7):
            start = cuts[0]
            cycle = base[start:] + base[:start]
            offsets = [c - start for c in cuts] + [15]
            arcs = tuple(
                cycle[offsets[i]:offsets[i + 1]] for i in range(7)
            )
            m = CyclicMinorModel(
                host=g,
                host_cycle=cycle,
                arcs=arcs,
                target=k7,
                target_cycle=target_cycle,
                target_name="K7",
            )
            if verify_model(m):
                found += 1
        assert found == 0
