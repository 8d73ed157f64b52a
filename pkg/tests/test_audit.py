import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from luequiv import audit as au
from luequiv import bipartite as bp
from luequiv.errors import ParseError, SchemaError, ValidationError
from luequiv.sampling import random_state, random_unitary, rng_from

from conftest import DATA, GOLDEN


def load(name):
    return au.parse_document((DATA / name).read_bytes())


def test_parse_pair_fixture():
    doc = load("pair.json")
    assert doc.dims == (2, 2) and len(doc) == 2
    assert doc.names == ("psi1", "psi2")
    np.testing.assert_allclose(doc.get("psi1").amplitudes, [math.sqrt(0.8), 0, 0, math.sqrt(0.2)])


def test_parse_renormalize_flag():
    doc = load("product_and_bell.json")
    assert abs(doc.get("phi_plus").norm() - 1) < 1e-15


@pytest.mark.parametrize("text, error", [
    ('{"dims": [2, 2], "states": []}', SchemaError),
    ('{"dims": [2, 2]}', SchemaError),
    ('{"dims": [2, 2], "states": [{"name": "x", "amplitudes": [[1, 0]]}], "extra": 1}', SchemaError),
    ('{"dims": [2], "states": [{"name": "x", "amplitudes": [[1, 0]]}]}', SchemaError),
    ('{"dims": [2, 2], "states": [{"name": "x", "amplitudes": [[1, 0, 0]]}]}', SchemaError),
    ('{"dims": [2, 2], "states": [{"name": "x", "amplitudes": [["1", 0]]}]}', SchemaError),
    ('{"dims": [2, 2], "states": [', ParseError),
    ('not json', ParseError),
])
def test_parse_errors(text, error):
    with pytest.raises(error):
        au.parse_document(text)


def test_parse_error_has_position():
    with pytest.raises(ParseError, match="line 2 column"):
        au.parse_document('{"dims": [2, 2],\n "states": ]}')


def test_parse_wrong_length_names_state():
    text = json.dumps({"dims": [2, 2], "states": [
        {"name": "good", "amplitudes": [[1, 0], [0, 0], [0, 0], [0, 0]]},
        {"name": "short_one", "amplitudes": [[1, 0], [0, 0]]}]})
    with pytest.raises(ValidationError, match="short_one"):
        au.parse_document(text)


def test_parse_unnormalized_and_duplicates():
    unnorm = {"dims": [1, 2], "states": [{"name": "s", "amplitudes": [[1, 0], [1, 0]]}]}
    with pytest.raises(ValidationError, match="norm"):
        au.parse_document(json.dumps(unnorm))
    dup = {"dims": [1, 1], "states": [{"name": "s", "amplitudes": [[1, 0]]}] * 2}
    with pytest.raises(ValidationError, match="duplicate"):
        au.parse_document(json.dumps(dup))


def test_unknown_state_name():
    with pytest.raises(ValidationError):
        load("pair.json").get("nope")


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), da=st.integers(1, 4), db=st.integers(1, 4), n=st.integers(1, 5))
def test_serialize_round_trip(seed, da, db, n):
    rng = rng_from(seed)
    states = tuple(random_state(rng, da, db) for _ in range(n))
    doc = au.StateSetDocument((da, db), tuple(f"s{i}" for i in range(n)), states)
    back = au.parse_document(au.serialize_document(doc))
    assert back.dims == doc.dims and back.names == doc.names
    for x, y in zip(back.states, doc.states):
        assert np.max(np.abs(x.amplitudes - y.amplitudes)) <= 1e-15


def test_audit_paper_pair():
    rep = au.audit(load("pair.json"))
    assert rep.classification == "BOPEE-partial"
    p = rep.pair("psi1", "psi2")
    assert p.two_sided and not p.one_sided_a and not p.one_sided_b
    assert abs(p.max_overlap_a - 0.8) < 1e-9 and abs(p.max_overlap_b - 0.8) < 1e-9


def test_audit_bell_states():
    rep = au.audit(load("bell.json"))
    assert rep.classification == "BOPEE-maximal"
    assert all(p.one_sided_a and p.one_sided_b and p.two_sided for p in rep.pairs)
    assert len(rep.pairs) == 16


def test_audit_product_and_bell_non_orthogonal():
    rep = au.audit(load("product_and_bell.json"))
    assert abs(rep.max_offdiag_overlap - 1 / math.sqrt(2)) < 1e-12
    assert rep.classification == "non-orthogonal"
    assert not rep.equally_entangled


def test_audit_orthogonal_unequal():
    doc = au.StateSetDocument((2, 2), ("a", "b"), (bp.basis_state(2, 2, 0, 0),
                              bp.make_state(2, 2, [0, 1, 1, 0], renormalize=True)))
    assert au.audit(doc).classification == "orthogonal-unequal-entanglement"


def test_audit_flags_entropy_equal_spectrum_different():
    # Two 3x3 spectra with equal entropy but different multisets, found by bisection.
    def ent(p):
        p = np.asarray(p)
        return -np.sum(p * np.log2(p))
    target = ent([0.5, 0.25, 0.25])
    lo, hi = 0.4, 0.8
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        p = [mid, (1 - mid) * 0.6, (1 - mid) * 0.4]
        lo, hi = (mid, hi) if ent(p) > target else (lo, mid)
    p2 = [mid, (1 - mid) * 0.6, (1 - mid) * 0.4]
    assert abs(ent(p2) - target) < 1e-12
    s1 = bp.StateVector.from_coefficients(np.diag(np.sqrt([0.5, 0.25, 0.25])))
    s2 = bp.StateVector.from_coefficients(np.diag(np.sqrt(p2))[[1, 2, 0]])
    rep = au.audit(au.StateSetDocument((3, 3), ("x", "y"), (s1, s2)))
    assert not rep.equally_entangled
    assert rep.entropy_equal_spectrum_different


def test_audit_diagonal_entries():
    rep = au.audit(load("pair.json"))
    for name in rep.names:
        p = rep.pair(name, name)
        assert p.one_sided_a and p.one_sided_b and p.two_sided
        assert p.max_overlap_a == 1.0 and p.max_overlap_b == 1.0


def test_audit_permutation_covariance(rng):
    phi = bp.max_entangled(3)
    states = [phi.apply_local(a=random_unitary(rng, 3)) for _ in range(4)] + [random_state(rng, 3, 3)]
    doc = au.StateSetDocument((3, 3), tuple("abcde"), tuple(states))
    base = au.audit(doc)
    perm = [3, 0, 4, 2, 1]
    other = au.audit(doc.permuted(perm))
    assert other.classification == base.classification
    for p in base.pairs:
        q = other.pair(p.source, p.target)
        assert (p.one_sided_a, p.one_sided_b, p.two_sided) == (q.one_sided_a, q.one_sided_b, q.two_sided)
        assert abs(p.max_overlap_a - q.max_overlap_a) < 1e-12


@pytest.mark.parametrize("fixture, golden", [("pair.json", "audit_pair.json"), ("bell.json", "audit_bell.json")])
def test_audit_json_golden(fixture, golden):
    report = au.audit(load(fixture)).to_dict()
    expected = json.loads((GOLDEN / golden).read_text())
    assert report == expected
    # stable across repeated runs
    assert au.audit(load(fixture)).to_json() == au.audit(load(fixture)).to_json()
