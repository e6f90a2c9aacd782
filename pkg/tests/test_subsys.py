import pytest

from goodfilt.charring import weyl_dimension
from goodfilt.rootsys import RootSystemError, build_root_system
from goodfilt.subsys import (
    branch_decompose,
    embedding_from_roots,
    enumerate_subsystems,
    find_subsystem,
    identity_embedding,
    involution_centralizer_test,
    maximal_rank_subsystems,
    restrict_weight,
    type_key,
    type_string,
)
from goodfilt.verifier import fundamental

# Single node removals from the extended diagram; marks of the removed node in brackets.
MAXIMAL = {
    "G2": {"A2": [3], "A1xA1": [2]},
    "F4": {"C3xA1": [2], "A2xA2": [3], "A3xA1": [4], "B4": [2]},
    "E6": {"A5xA1": [2, 2, 2], "A2xA2xA2": [3]},
    "E7": {"D6xA1": [2, 2], "A7": [2], "A5xA2": [3, 3], "A3xA3xA1": [4]},
    "E8": {"D8": [2], "A8": [3], "A7xA1": [4], "A5xA2xA1": [6], "A4xA4": [5], "D5xA3": [4],
           "E6xA2": [3], "E7xA1": [2]},
}


@pytest.mark.parametrize("host", sorted(MAXIMAL))
def test_maximal_rank_lists(host):
    rs = build_root_system(host)
    got = {}
    for e in maximal_rank_subsystems(rs):
        got.setdefault(e.sub_type, []).append(e.marks_removed[0])
        assert e.pairing_matrix == e.sub.cartan
        assert len(e.root_set) == 2 * len(e.sub.positive_roots)
        assert involution_centralizer_test(e) == (e.marks_removed == (2,))
    assert {k: sorted(v) for k, v in got.items()} == MAXIMAL[host]


def test_non_involution_types():
    # maximal-rank subsystems that do not centralize an involution
    rows = {h: sorted({e.sub_type for e in maximal_rank_subsystems(build_root_system(h))
                       if not involution_centralizer_test(e)}) for h in MAXIMAL}
    assert rows == {
        "G2": ["A2"], "F4": ["A2xA2", "A3xA1"], "E6": ["A2xA2xA2"], "E7": ["A3xA3xA1", "A5xA2"],
        "E8": ["A4xA4", "A5xA2xA1", "A7xA1", "A8", "D5xA3", "E6xA2"],
    }


def test_enumeration_keeps_torus_and_drops_full():
    rs = build_root_system("G2")
    types = sorted(e.sub_type for e in enumerate_subsystems(rs))
    assert types == ["A1", "A1", "A1", "A1xA1", "A2", "T"]
    full = frozenset(rs.positive_roots) | frozenset(tuple(-x for x in r) for r in rs.positive_roots)
    assert all(e.root_set != full for e in enumerate_subsystems(rs))


def test_depth_two_reaches_more():
    rs = build_root_system("F4")
    one = {e.key for e in enumerate_subsystems(rs, 1)}
    two = {e.key for e in enumerate_subsystems(rs, 2)}
    assert one < two


def test_type_helpers():
    assert type_key("A1xA7") == type_key("A7xA1")
    assert type_string([]) == "T"
    with pytest.raises(RootSystemError):
        find_subsystem(build_root_system("G2"), "B2")


def test_g2_branch_to_a2():
    emb = find_subsystem(build_root_system("G2"), "A2")
    d = branch_decompose(emb, (1, 0))
    assert set(d.terms) == {(0, 0), (1, 0), (0, 1)}
    assert d.dimension == 7


@pytest.mark.parametrize("host,sub", [("F4", "A2xA2"), ("E6", "A2xA2xA2"), ("E7", "A5xA2"), ("E8", "A4xA4")])
def test_branch_preserves_dimension(host, sub):
    rs = build_root_system(host)
    emb = find_subsystem(rs, sub)
    for i in (1, rs.rank):
        lam = fundamental(rs.rank, i)
        d = branch_decompose(emb, lam)
        assert d.nonnegative
        assert d.dimension == weyl_dimension(rs, lam)


def test_identity_embedding_branches_trivially():
    rs = build_root_system("B3")
    emb = identity_embedding(rs)
    assert branch_decompose(emb, (0, 1, 1)).terms == {(0, 1, 1): 1}
    assert restrict_weight(emb, (2, 0, 1)) == (2, 0, 1)


def test_embedding_from_roots():
    rs = build_root_system("B2")
    # long roots alpha_1 and alpha_1 + 2 alpha_2 give A1xA1
    emb = embedding_from_roots(rs, [(1, 0), (1, 2)])
    assert emb.sub_type == "A1xA1"
    d = branch_decompose(emb, (0, 1))
    assert d.terms == {(1, 0): 1, (0, 1): 1}
