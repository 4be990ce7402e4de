import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torsion6.gl2group import (
    CeilingExceeded,
    FiniteMatrixGroup,
    are_conjugate,
    borel,
    closure_quotient,
    conjugate_into,
    det_surjective,
    from_matrix_group,
    gl2,
    group_closure,
    in_standard_form,
    is_generalized_s3_type,
    label_group,
    label_registry,
    lifts_of,
    orbit,
    reduction,
    stabilizer,
    subgroups_up_to_conjugacy,
    verify_label,
)
from torsion6.gl2group import matrix as mx
from torsion6.gl2group.abstract import cyclic, dihedral, quaternion, symmetric
from torsion6.gl2group.subgroups import all_subgroups_bruteforce


def _classes(G, subgroups, within=None):
    n = G.modulus
    conj = sorted((within or G).elements)
    seen = set()
    for S in subgroups:
        seen.add(min(tuple(sorted(mx.conj(t, g, n) for g in S)) for t in conj))
    return seen


def test_group_orders():
    assert [gl2(n).order for n in (2, 3, 4, 5, 7, 9)] == [6, 48, 96, 480, 2016, 3888]
    assert borel(5).order == 80


@pytest.mark.parametrize("p", [2, 3])
def test_subgroups_vs_exhaustive(p):
    G = gl2(p)
    brute = all_subgroups_bruteforce(G)
    # independent check of the brute-force set: closure of every pair of elements is present
    for a, b in itertools.combinations(sorted(G.elements), 2):
        assert FiniteMatrixGroup(p, [a, b]).elements in brute
    assert len(_classes(G, brute)) == len(subgroups_up_to_conjugacy(G))


def test_known_class_counts():
    assert len(subgroups_up_to_conjugacy(gl2(3))) == 16
    assert len(subgroups_up_to_conjugacy(gl2(4))) == 62


def test_conjugating_post_pass():
    B = borel(5)
    under_b = subgroups_up_to_conjugacy(B, require_det_surjective=True)
    under_gl = subgroups_up_to_conjugacy(B, require_det_surjective=True, conjugating=gl2(5))
    assert (len(under_b), len(under_gl)) == (14, 11)
    brute = [S for S in all_subgroups_bruteforce(B) if det_surjective(FiniteMatrixGroup(5, sorted(S)))]
    assert len(_classes(B, brute, gl2(5))) == 11


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([4, 5, 6, 8, 9]), st.data())
def test_orbit_stabilizer(n, data):
    G = gl2(n)
    gens = data.draw(st.lists(st.sampled_from(sorted(G.elements)), min_size=1, max_size=2))
    H = group_closure(gens, n)
    v = (data.draw(st.integers(0, n - 1)), data.draw(st.integers(0, n - 1)))
    assert len(orbit(H, v)) * stabilizer(H, v).order == H.order


def test_ceiling():
    with pytest.raises(CeilingExceeded):
        gl2(25).materialize(ceiling=1000)


@pytest.mark.parametrize("name", sorted(label_registry()))
def test_labels(name):
    assert verify_label(label_registry()[name])


def test_label_orders_and_forms():
    assert label_group("3Cs.1.1").order == 2
    assert label_group("3B.1.1").order == 6
    assert label_group("3Nn").order == 16  # normalizer of the nonsplit Cartan
    G = label_group("3Ns")
    assert in_standard_form((0, 1, 1, 0), "normalizer-split", 3)
    H = G.conjugate((1, 1, 0, 1))
    t = are_conjugate(H, G)
    assert t is not None
    assert conjugate_into(label_group("3B.1.1").conjugate((0, 1, 1, 0)), "borel") is not None
    with pytest.raises(KeyError):
        label_group("3X")


def test_lifts_vs_brute_force():
    # det-surjective subgroups of GL2(Z/4) reducing to 2B, by exhaustive search
    H = label_group("2B")
    brute = [
        S for S in all_subgroups_bruteforce(gl2(4))
        if reduction(FiniteMatrixGroup(4, sorted(S)), 2).elements == H.elements
        and det_surjective(FiniteMatrixGroup(4, sorted(S)))
    ]
    fams = lifts_of(H)
    lifted = [G for f in fams for G in f.groups]
    assert all(reduction(G, 2).elements == H.elements and det_surjective(G) for G in lifted)
    # every brute-force group is conjugate (in the kernel-extended sense, here all of GL2(Z/4)) to one listed
    classes = _classes(gl2(4), brute)
    listed = _classes(gl2(4), [G.elements for G in lifted])
    assert classes == listed


def test_abstract_identification():
    assert cyclic(6).identify() == "C6"
    assert symmetric(3).identify() == "S3"
    assert dihedral(6).identify() == "D6"
    assert from_matrix_group(gl2(2)).identify() == "S3"
    assert from_matrix_group(gl2(3)).order == 48


def test_s3_type():
    assert is_generalized_s3_type(symmetric(3))
    assert is_generalized_s3_type(dihedral(6))
    assert is_generalized_s3_type(cyclic(6))
    assert not is_generalized_s3_type(cyclic(4))
    assert not is_generalized_s3_type(quaternion())
    assert not is_generalized_s3_type(symmetric(4))


def test_closure_quotient_3b():
    Q = closure_quotient(label_group("3B.1.1"), (0, 1))
    assert Q.identify() == "S3"
