import copy
import json

import pytest

from goodfilt.charring import Decomposition, exterior_power_decompose, tensor_decompose
from goodfilt.primes import PrimeConditionSet as P
from goodfilt.rootsys import build_root_system
from goodfilt.sl2data import find_orbit
from goodfilt.subsys import find_subsystem
from goodfilt.verifier import (
    E7_REFERENCE_CHAIN,
    Certificate,
    Construction,
    KnownGoodSet,
    ReplayError,
    compose_chain,
    exceptional_protocol,
    fundamental,
    replay,
    sl2_orbit_report,
    subsystem_prime_report,
    vdk_certify,
    weight_name,
)

E7 = build_root_system("E7")
W = {i: fundamental(7, i) for i in range(1, 8)}


def plus(a, b):
    return tuple(x + y for x, y in zip(a, b))


@pytest.fixture(scope="module")
def e7_search():
    return exceptional_protocol("E7")


def test_weight_names():
    assert weight_name((0, 0, 0)) == "0"
    assert weight_name((1, 0, 2)) == "w1+2w3"


def test_known_set_union():
    k = KnownGoodSet(E7)
    assert k[(0,) * 7] == P.all()
    assert W[3] not in k
    assert k.add(W[3], P.all_geq(5))
    assert k.add(W[3], P.finite([3]))
    assert not k.add(W[3], P.finite([5]))
    assert k[W[3]] == P.all_geq(3)


def test_vdk_single_step():
    known = KnownGoodSet(E7)
    known.add(W[1], P.all())
    known.add(W[7], P.all())
    sup = tensor_decompose(E7, W[1], W[7])
    cond = vdk_certify(E7, W[2], sup, known)
    # w1 + w7 sits above w2 and is linked to it at 7 only
    assert cond == P.excluding([7])
    with pytest.raises(ValueError):
        vdk_certify(E7, W[3], sup, known)


def test_vdk_trivial_support():
    known = KnownGoodSet(E7)
    assert vdk_certify(E7, W[6], Decomposition(E7, {W[6]: 1}), known) == P.all()


def test_reference_chain(tmp_path):
    cert, res = exceptional_protocol("E7", constructions=E7_REFERENCE_CHAIN)
    assert res == P.excluding([2, 5, 7])
    assert {s.construction for s in cert.steps} == set(E7_REFERENCE_CHAIN)
    assert replay(cert) == res
    f = tmp_path / "cert.json"
    f.write_text(cert.dumps())
    assert replay(json.loads(f.read_text())) == res


def test_search_contains_reference_constructions(e7_search):
    cert, res = e7_search
    used = {s.construction for s in cert.steps}
    assert set(E7_REFERENCE_CHAIN) <= used
    assert P.excluding([2, 5, 7]).issubset(res)


def test_w5_after_w1_plus_w7(e7_search):
    cert, _ = e7_search
    targets = [s.target for s in cert.steps]
    assert targets.index(plus(W[1], W[7])) < targets.index(W[5])


def test_replay_detects_tampering(e7_search):
    cert, _ = e7_search
    data = copy.deepcopy(cert.to_json())
    data["steps"][0]["condition"] = P.all().to_json()
    with pytest.raises(ReplayError):
        replay(data)
    data = copy.deepcopy(cert.to_json())
    data["steps"][1]["support"]["terms"][0]["mult"] += 1
    with pytest.raises(ReplayError):
        replay(data)


def test_certificate_is_deterministic(e7_search):
    again, _ = exceptional_protocol("E7")
    assert again.dumps() == e7_search[0].dumps()


def test_transcript_mentions_every_step(e7_search):
    cert, res = e7_search
    text = cert.transcript()
    assert text.count("Step ") == len(cert.steps)
    assert str(res) in text.splitlines()[-1]


def test_construction_json():
    c = Construction("ext2", (W[2],))
    assert Construction.from_json(c.to_json()) == c
    assert c.dimension(E7) == 912 * 911 // 2
    assert c.support(E7) == exterior_power_decompose(2, E7, W[2])


def test_g2_needs_no_steps():
    cert, res = exceptional_protocol("G2")
    assert cert.steps == [] and res == P.all()


def test_subsystem_report_g2():
    rs = build_root_system("G2")
    rep = subsystem_prime_report(rs, find_subsystem(rs, "A2"))
    assert rep.condition == P.excluding([3])
    assert rep.alcove_prime == 5
    assert rep.accepted_below == [2]
    assert json.loads(json.dumps(rep.to_json()))["condition_text"] == "p != 3"


def test_subsystem_report_convention_matters():
    rs = build_root_system("G2")
    rep = subsystem_prime_report(rs, find_subsystem(rs, "A2"), convention="minus_rho")
    assert rep.condition == P.all()


def test_sl2_report_readings():
    orbit = find_orbit("E7", "E7(a5)")
    a = sl2_orbit_report(E7, orbit)
    b = sl2_orbit_report(E7, orbit, reading="vanish_from_2p")
    assert a.existence == P.all_geq(5)
    assert b.existence == P.all_geq(7)
    assert a.condition.issubset(a.good_primes)
    with pytest.raises(ValueError):
        sl2_orbit_report(E7, orbit, reading="other")


def test_compose_chain():
    assert compose_chain(P.all_geq(5), P.excluding([7])) == P.excluding([2, 3, 7])
