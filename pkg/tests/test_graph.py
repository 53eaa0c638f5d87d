import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import golden
from graph_mpinv.linalg import VERTEX, RationalMatrix
from graph_mpinv.generators import random_odd_unicyclic, random_tree
from graph_mpinv.graph import (
    DisconnectedGraphError,
    DuplicateEdgeError,
    EndpointRangeError,
    GraphFormatError,
    Kind,
    SelfLoopError,
    WrongClassError,
    build_graph,
    classify,
    component,
    distances_from,
    edge_edge_distance,
    find_cycle,
    incidence_matrix,
    parity_matrix,
    parse_graph,
    split_tree_at_edge,
    vertex_edge_distance,
)

trees = st.builds(random_tree, st.integers(2, 12), st.integers(0, 2**64 - 1))


@st.composite
def unicyclics(draw):
    n = draw(st.integers(3, 12))
    c = draw(st.sampled_from([x for x in (3, 5, 7, 9, 11) if x <= n]))
    return random_odd_unicyclic(n, c, draw(st.integers(0, 2**64 - 1)))


class TestBuild:
    def test_worked_tree(self, tree7):
        assert tree7.n == 7
        assert tree7.edges == ((2, 5), (1, 7), (1, 2), (4, 5), (3, 6), (1, 3))

    def test_endpoints_normalized(self):
        assert build_graph(2, [(2, 1)]).edges == ((1, 2),)

    @pytest.mark.parametrize(
        "n, edges, error",
        [
            (3, [(1, 2), (1, 2)], DuplicateEdgeError),
            (3, [(1, 2), (2, 1)], DuplicateEdgeError),
            (3, [(2, 2)], SelfLoopError),
            (3, [(1, 4)], EndpointRangeError),
            (3, [(0, 1)], EndpointRangeError),
        ],
    )
    def test_invalid_edges(self, n, edges, error):
        with pytest.raises(error) as exc:
            build_graph(n, edges)
        assert exc.value.edge_index == len(edges)
        assert f"e{len(edges)}" in str(exc.value)


class TestClassify:
    def test_examples(self, tree7, uni7):
        assert classify(tree7).kind is Kind.TREE
        assert classify(uni7).kind is Kind.ODD_UNICYCLIC
        c4 = classify(build_graph(4, [(1, 2), (2, 3), (3, 4), (1, 4)]))
        assert c4.kind is Kind.UNSUPPORTED and c4.detail == "even cycle"

    def test_other_unsupported(self):
        assert classify(build_graph(4, [(1, 2), (3, 4)])).detail == "disconnected"
        k4 = build_graph(4, [(a, b) for a in range(1, 5) for b in range(a + 1, 5)])
        assert classify(k4).detail == "m > n"

    def test_single_vertex_is_a_tree(self):
        assert classify(build_graph(1, [])).kind is Kind.TREE


class TestDistances:
    def test_worked_tree_from_7(self, tree7):
        # hand BFS: 7-1, then 2 and 3, then 5 and 6, then 4
        assert distances_from(tree7, 7) == (1, 2, 2, 4, 3, 3, 0)

    def test_path(self):
        assert distances_from(build_graph(3, [(1, 2), (2, 3)]), 1) == (0, 1, 2)

    def test_disconnected(self):
        g = build_graph(3, [(1, 2)])
        with pytest.raises(DisconnectedGraphError) as exc:
            distances_from(g, 1)
        assert exc.value.unreachable == 3

    def test_vertex_edge(self, tree7, uni7):
        assert vertex_edge_distance(tree7, 4, 1) == 1
        assert vertex_edge_distance(tree7, 2, 1) == 0
        assert vertex_edge_distance(uni7, 7, 4) == 2

    def test_edge_edge(self, tree7):
        assert edge_edge_distance(tree7, 3, 3) == 0
        assert edge_edge_distance(tree7, 5, 1) == 2
        assert edge_edge_distance(tree7, 1, 5) == 2
        assert edge_edge_distance(tree7, 2, 3) == 0  # share vertex 1

    @settings(max_examples=40)
    @given(st.one_of(trees, unicyclics()))
    def test_triangle_inequality_and_zero_diagonal(self, g):
        d = g.dist
        for i in range(1, g.n + 1):
            assert distances_from(g, i)[i - 1] == 0
            for j in range(1, g.n + 1):
                assert d[i][j] == d[j][i]
                for k in range(1, g.n + 1):
                    assert d[i][j] <= d[i][k] + d[k][j]

    @settings(max_examples=30)
    @given(st.one_of(trees, unicyclics()))
    def test_edge_edge_symmetric(self, g):
        for a in range(1, g.m + 1):
            for b in range(1, g.m + 1):
                dab = edge_edge_distance(g, a, b)
                assert dab == edge_edge_distance(g, b, a)
                shares = bool(set(g.edge(a)) & set(g.edge(b)))
                assert (dab == 0) == shares


class TestSplit:
    def test_worked_tree(self, tree7):
        head, tail = split_tree_at_edge(tree7, 1)
        assert head == {4, 5} and tail == {1, 2, 3, 6, 7}

    def test_star_pendant(self):
        star = build_graph(4, [(1, 2), (1, 3), (1, 4)])
        assert split_tree_at_edge(star, 1) == ({2}, {1, 3, 4})

    def test_rejects_non_tree(self, uni7):
        with pytest.raises(WrongClassError):
            split_tree_at_edge(uni7, 1)

    @settings(max_examples=40)
    @given(trees)
    def test_partition_and_reconnect(self, t):
        everything = set(range(1, t.n + 1))
        for k in range(1, t.m + 1):
            head, tail = split_tree_at_edge(t, k)
            lo, hi = t.edge(k)
            assert hi in head and lo in tail
            assert head | tail == everything and not head & tail
            assert len(head) + len(tail) == t.n
            # adding e back joins the two sides
            assert component(t, lo) == everything


class TestCycle:
    def test_worked_unicyclic(self, uni7):
        cd = find_cycle(uni7)
        assert cd.cycle_vertices == (1, 3, 6)
        assert cd.cycle_edges == {4, 5, 7}
        p = cd.projection[7]
        assert (p.i_star, p.dist_to_cycle, set(p.path_edges)) == (1, 2, {3, 1})

    def test_triangle(self):
        cd = find_cycle(build_graph(3, [(1, 2), (1, 3), (2, 3)]))
        assert cd.cycle_vertices == (1, 2, 3)
        for v, p in cd.projection.items():
            assert p.i_star == v and p.dist_to_cycle == 0 and p.path_edges == ()

    def test_canonical_direction(self):
        # 5-cycle 2-4-1-5-3-2: start at 1, move toward neighbour 4 (smaller of 4, 5)
        g = build_graph(5, [(2, 4), (4, 1), (1, 5), (5, 3), (3, 2)])
        assert find_cycle(g).cycle_vertices == (1, 4, 2, 3, 5)

    def test_wrong_class(self, tree7):
        with pytest.raises(WrongClassError):
            find_cycle(tree7)

    @settings(max_examples=40)
    @given(unicyclics())
    def test_cycle_invariants(self, u):
        cd = find_cycle(u)
        assert len(cd.cycle_vertices) % 2 == 1 and len(cd.cycle_vertices) >= 3
        assert len(cd.cycle_edges) == len(cd.cycle_vertices)
        on = set(cd.cycle_vertices)
        for v, p in cd.projection.items():
            assert (p.i_star == v) == (v in on) == (p.dist_to_cycle == 0)
            assert not set(p.path_edges) & cd.cycle_edges
            assert p.dist_to_cycle == len(p.path_edges) == u.d(v, p.i_star)
            assert p.dist_to_cycle == min(u.d(v, c) for c in on)
        everything = set(range(1, u.n + 1))
        for k in range(1, u.m + 1):
            rest = [e for j, e in enumerate(u.edges, start=1) if j != k]
            g = build_graph(u.n, rest)
            if k in cd.cycle_edges:
                assert classify(g).kind is Kind.TREE
            else:
                assert not g.is_connected
                lo, hi = u.edge(k)
                assert component(u, lo, (k,)) != everything


class TestMatrices:
    def test_incidence_examples(self, tree7, uni7):
        assert incidence_matrix(tree7) == golden.TREE_M
        assert incidence_matrix(uni7) == golden.UNI_M

    @given(st.one_of(trees, unicyclics()))
    def test_columns_sum_to_two(self, g):
        m = incidence_matrix(g)
        assert all(sum(col) == 2 for col in m.T)

    def test_parity_examples(self, tree7):
        p = parity_matrix(tree7)
        # MM+ = I - P/7, so P = 7 (I - MM+)
        assert p == (RationalMatrix.identity(7, VERTEX) - golden.TREE_MM_PLUS).scale(7)
        assert parity_matrix(build_graph(2, [(1, 2)])).tolist() == [[1, -1], [-1, 1]]

    @given(st.one_of(trees, unicyclics()))
    def test_parity_symmetric_unit_diagonal(self, g):
        p = parity_matrix(g)
        assert p.is_symmetric() and all(p[i, i] == 1 for i in range(g.n))


class TestTextFormat:
    def test_round_trip(self, tree7):
        g, mapping = parse_graph(tree7.to_text())
        assert g == tree7 and mapping is None

    def test_comments_and_blank_lines(self):
        g, _ = parse_graph("# header\n3 2\n\n1 2\n# mid\n2 3\n")
        assert g.edges == ((1, 2), (2, 3))

    def test_relabels_arbitrary_labels(self):
        g, mapping = parse_graph("3 2\na b\nb c\n")
        assert mapping == {"a": 1, "b": 2, "c": 3}
        assert g.edges == ((1, 2), (2, 3))
        g, mapping = parse_graph("3 2\n10 20\n20 30\n")
        assert mapping == {"10": 1, "20": 2, "30": 3}

    @pytest.mark.parametrize(
        "text, line",
        [
            ("", 1),
            ("3\n", 1),
            ("3 2\n1 2\n", 3),
            ("3 1\n1 2 3\n", 2),
            ("3 2\n1 2\n1 2\n", 3),
            ("x y\n", 1),
        ],
    )
    def test_errors_name_the_line(self, text, line):
        with pytest.raises(GraphFormatError) as exc:
            parse_graph(text)
        assert exc.value.lineno == line
